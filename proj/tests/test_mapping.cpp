#include <doctest.h>

#include <stdexcept>

#include "cimforge/mapping.hpp"
#include "cimforge/rng.hpp"

using namespace cimforge;

TEST_CASE("tiling anchors") {
    CHECK(tile_conv(3, 11, 96).cores() == 2);
    CHECK(tile_conv(256, 3, 512).cores() == 18);
    CHECK(tile_conv(1, 1, 1).cores() == 1);
    CHECK(tile_fc(256, 256).cores() == 1);
    CHECK(tile_fc(4096, 4096).cores() == 256);
    CHECK(tile_fc(1, 10).cores() == 1);
}

TEST_CASE("core count never decreases when a dimension grows") {
    Rng rng(99);
    for (int i = 0; i < 500; ++i) {
        const int c_in = 1 + static_cast<int>(rng.next_below(512));
        const int k = 1 + static_cast<int>(rng.next_below(7));
        const int c_out = 1 + static_cast<int>(rng.next_below(1024));
        const auto base = tile_conv(c_in, k, c_out);
        CHECK(tile_conv(c_in + 1, k, c_out).cores() >= base.cores());
        CHECK(tile_conv(c_in, k + 1, c_out).cores() >= base.cores());
        CHECK(tile_conv(c_in, k, c_out + 1).cores() >= base.cores());
    }
}

TEST_CASE("exact at core-size multiples") {
    CHECK(tile_fc(512, 768).r == 2);
    CHECK(tile_fc(512, 768).c == 3);
    CHECK(tile_conv(64, 2, 512).cores() == 1 * 2);  // 64*4 = 256 rows exactly
}

TEST_CASE("network mapping totals and adder flags") {
    std::vector<LayerDesc> lenet;
    LayerDesc c1;
    c1.kind = LayerDesc::Kind::kConv;
    c1.name = "conv1";
    c1.c_in = 1;
    c1.kernel = 5;
    c1.c_out = 6;
    LayerDesc c2 = c1;
    c2.name = "conv2";
    c2.c_in = 6;
    c2.kernel = 5;
    c2.c_out = 16;
    LayerDesc f1;
    f1.kind = LayerDesc::Kind::kFc;
    f1.name = "fc1";
    f1.fc_m = 400;
    f1.fc_n = 120;
    LayerDesc f2 = f1;
    f2.name = "fc2";
    f2.fc_m = 120;
    f2.fc_n = 84;
    LayerDesc f3 = f1;
    f3.name = "fc3";
    f3.fc_m = 84;
    f3.fc_n = 10;
    lenet = {c1, c2, f1, f2, f3};

    const MappingReport rep = map_network(lenet);
    // conv1: ceil(25/256)*ceil(6/256) = 1; conv2: ceil(150/256)*1 = 1;
    // fc1: ceil(400/256)*1 = 2; fc2: 1; fc3: 1
    CHECK(rep.total_cores == 1 + 1 + 2 + 1 + 1);
    CHECK(rep.layers[2].needs_adder_tree);        // fc1 spans two row tiles
    CHECK_FALSE(rep.layers[0].needs_adder_tree);

    LayerDesc alex1;
    alex1.kind = LayerDesc::Kind::kConv;
    alex1.name = "conv1";
    alex1.c_in = 3;
    alex1.kernel = 11;
    alex1.c_out = 96;
    const MappingReport single = map_network({alex1});
    CHECK(single.total_cores == 2);
    CHECK(single.layers[0].needs_adder_tree);

    CHECK_THROWS_AS(map_network({}), std::invalid_argument);
}

TEST_CASE("layer list ingestion") {
    const std::string good = R"([
      {"kind": "conv", "name": "c1", "c_in": 3, "k": 11, "c_out": 96},
      {"kind": "fc", "name": "f1", "m": 4096, "n": 4096}
    ])";
    const auto layers = layers_from_json(good);
    REQUIRE(layers.size() == 2);
    CHECK(layers[0].kernel == 11);
    CHECK(layers[1].fc_n == 4096);
    const MappingReport rep = map_network(layers);
    CHECK(rep.total_cores == 2 + 256);
    CHECK(rep.to_json().find("\"total_cores\"") != std::string::npos);
    CHECK(rep.to_csv().find("c1,conv") != std::string::npos);

    CHECK_THROWS_AS(layers_from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(layers_from_json(R"([{"kind": "conv", "c_in": 3}])"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(layers_from_json(R"([{"kind": "pool", "name": "p"}])"),
                         doctest::Contains("record 0"), std::invalid_argument);
}
