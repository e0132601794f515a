#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "cimforge/crossbar.hpp"
#include "cimforge/mac.hpp"
#include "cimforge/oracle.hpp"
#include "cimforge/rng.hpp"

using namespace cimforge;

namespace {

std::vector<std::vector<std::int32_t>> random_matrix(int rows, int cols, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<std::int32_t>> w(rows, std::vector<std::int32_t>(cols));
    for (auto& row : w) {
        for (auto& v : row) v = static_cast<std::int32_t>(rng.next_below(511)) - 255;
    }
    return w;
}

}  // namespace

TEST_CASE("programming weight 123 places the expected LRS cells") {
    const DeviceParams dp = DeviceParams::reference(1);
    const double g_l = 1.0 / dp.r_l_ohms;
    const double g_h = 1.0 / dp.r_h_ohms;
    const auto core = program_core({{123}}, 8, dp, WeightScheme::kMcsd);
    for (int b = 0; b < 8; ++b) {
        const double gp = core.conductance(0, 0, b, Polarity::kPositive);
        const double gn = core.conductance(0, 0, b, Polarity::kNegative);
        CHECK(gp == (b == 7 ? g_l : g_h));
        CHECK(gn == ((b == 0 || b == 2) ? g_l : g_h));
        CHECK_FALSE((gp == g_l && gn == g_l));  // pair never both low
    }
}

TEST_CASE("weight zero leaves all sixteen cells in HRS") {
    const DeviceParams dp = DeviceParams::reference(1);
    const auto core = program_core({{0}}, 8, dp, WeightScheme::kMcsd);
    CHECK(core.lrs_count(std::sqrt((1.0 / dp.r_h_ohms) * (1.0 / dp.r_l_ohms))) == 0);
}

TEST_CASE("LRS count of a full core equals the codec nonzero-digit total") {
    const DeviceParams dp = DeviceParams::reference(256);
    const auto weights = random_matrix(256, 256, 11);
    for (WeightScheme scheme :
         {WeightScheme::kNaiveDifferential, WeightScheme::kCsd, WeightScheme::kMcsd}) {
        const auto core = program_core(weights, 8, dp, scheme);
        std::int64_t expect = 0;
        for (const auto& row : weights) {
            for (std::int32_t w : row) {
                expect += sd_digit_stats(encode_weight(w, 8, scheme)).nonzero;
            }
        }
        CHECK(core.lrs_count(std::sqrt((1.0 / dp.r_h_ohms) * (1.0 / dp.r_l_ohms))) == expect);
    }
}

TEST_CASE("programming is invertible") {
    const DeviceParams dp = DeviceParams::reference(32);
    const auto weights = random_matrix(32, 8, 23);
    for (WeightScheme scheme :
         {WeightScheme::kNaiveDifferential, WeightScheme::kCsd, WeightScheme::kMcsd}) {
        CHECK(read_back(program_core(weights, 8, dp, scheme), dp) == weights);
    }
}

TEST_CASE("variation: identity, determinism and clamping") {
    DeviceParams dp = DeviceParams::reference(8);
    const auto weights = random_matrix(8, 8, 37);
    const auto core = program_core(weights, 8, dp, WeightScheme::kMcsd);

    dp.sigma_r = 0.0;
    const auto same = apply_variation(core, dp);
    for (int r = 0; r < 8; ++r) {
        for (int b = 0; b < 8; ++b) {
            CHECK(same.conductance(r, 3, b, Polarity::kPositive) ==
                  core.conductance(r, 3, b, Polarity::kPositive));
        }
    }

    dp.sigma_r = 0.1;
    dp.seed = 7;
    const auto v1 = apply_variation(core, dp);
    const auto v2 = apply_variation(core, dp);
    dp.seed = 8;
    const auto v3 = apply_variation(core, dp);
    bool any_diff = false;
    for (int r = 0; r < 8; ++r) {
        for (int b = 0; b < 8; ++b) {
            const double a = v1.conductance(r, 5, b, Polarity::kNegative);
            CHECK(a == v2.conductance(r, 5, b, Polarity::kNegative));
            if (a != v3.conductance(r, 5, b, Polarity::kNegative)) any_diff = true;
        }
    }
    CHECK(any_diff);

    dp.sigma_r = 5.0;  // extreme spread exercises the clamp
    const auto clamped = apply_variation(core, dp);
    const double g_min = 1.0 / (dp.r_h_ohms * 10.0);
    const double g_max = 10.0 / dp.r_l_ohms;
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            for (int b = 0; b < 8; ++b) {
                const double g = clamped.conductance(r, c, b, Polarity::kPositive);
                CHECK(g >= g_min);
                CHECK(g <= g_max);
            }
        }
    }
}

TEST_CASE("variation error over repeated trials stays in the measured band") {
    DeviceParams dp = DeviceParams::reference(1);
    dp.sigma_r = 0.1;
    const auto core = program_core({{123}}, 8, dp, WeightScheme::kMcsd);
    double total_rel = 0.0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        dp.seed = 1000 + static_cast<std::uint64_t>(t);
        const auto varied = apply_variation(core, dp);
        const auto traces = run_mac(varied, {125}, dp, {.record_phases = false});
        const double est = rescale_to_dot(traces[0].v_out, dp);
        total_rel += std::abs(est - 15375.0) / 15375.0;
    }
    const double mean_rel = total_rel / trials;
    CHECK(mean_rel > 0.05);
    CHECK(mean_rel < 0.13);
}

TEST_CASE("capacity and shape errors") {
    const DeviceParams dp = DeviceParams::reference(1);
    std::vector<std::vector<std::int32_t>> too_tall(257, std::vector<std::int32_t>(1, 1));
    CHECK_THROWS_AS(program_core(too_tall, 8, dp, WeightScheme::kMcsd), std::invalid_argument);
    std::vector<std::vector<std::int32_t>> ragged = {{1, 2}, {3}};
    CHECK_THROWS_AS(program_core(ragged, 8, dp, WeightScheme::kMcsd), std::invalid_argument);
    CHECK_THROWS_AS(program_core({{300}}, 8, dp, WeightScheme::kMcsd), std::invalid_argument);
}
