#include "cimforge/mapping.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace cimforge {

namespace {

int ceil_div(std::int64_t a, std::int64_t b) {
    return static_cast<int>((a + b - 1) / b);
}

void check_positive(std::int64_t v, const char* what) {
    if (v < 1) {
        throw std::invalid_argument(std::string("mapping: ") + what + " must be >= 1");
    }
}

}  // namespace

TileResult tile_conv(int c_in, int kernel, int c_out, int core_rows, int core_cols) {
    check_positive(c_in, "C_in");
    check_positive(kernel, "kernel size");
    check_positive(c_out, "C_out");
    check_positive(core_rows, "core rows");
    check_positive(core_cols, "core cols");
    const std::int64_t flat_rows = static_cast<std::int64_t>(c_in) * kernel * kernel;
    return {ceil_div(flat_rows, core_rows), ceil_div(c_out, core_cols)};
}

TileResult tile_fc(int m, int n, int core_rows, int core_cols) {
    check_positive(m, "M");
    check_positive(n, "N");
    check_positive(core_rows, "core rows");
    check_positive(core_cols, "core cols");
    return {ceil_div(m, core_rows), ceil_div(n, core_cols)};
}

MappingReport map_network(const std::vector<LayerDesc>& layers, int core_rows, int core_cols) {
    if (layers.empty()) {
        throw std::invalid_argument("mapping: layer list is empty");
    }
    MappingReport report;
    for (const LayerDesc& layer : layers) {
        LayerMapping lm;
        lm.layer = layer;
        if (layer.kind == LayerDesc::Kind::kConv) {
            lm.matrix_rows = static_cast<std::int64_t>(layer.c_in) * layer.kernel * layer.kernel;
            lm.matrix_cols = layer.c_out;
            lm.tiles = tile_conv(layer.c_in, layer.kernel, layer.c_out, core_rows, core_cols);
        } else {
            lm.matrix_rows = layer.fc_m;
            lm.matrix_cols = layer.fc_n;
            lm.tiles = tile_fc(layer.fc_m, layer.fc_n, core_rows, core_cols);
        }
        lm.needs_adder_tree = lm.tiles.r > 1;
        report.total_cores += lm.tiles.cores();
        report.layers.push_back(std::move(lm));
    }
    return report;
}

std::vector<LayerDesc> layers_from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("mapping: network file is not valid JSON: ") +
                                    e.what());
    }
    if (!doc.is_array()) {
        throw std::invalid_argument("mapping: network file must be a JSON array of layers");
    }
    std::vector<LayerDesc> layers;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const nlohmann::json& rec = doc[i];
        const std::string where = "record " + std::to_string(i);
        if (!rec.is_object() || !rec.contains("kind")) {
            throw std::invalid_argument("mapping: " + where + " needs a 'kind' field");
        }
        LayerDesc layer;
        layer.name = rec.value("name", "layer" + std::to_string(i));
        const std::string kind = rec["kind"].get<std::string>();
        try {
            if (kind == "conv") {
                layer.kind = LayerDesc::Kind::kConv;
                layer.c_in = rec.at("c_in").get<int>();
                layer.kernel = rec.at("k").get<int>();
                layer.c_out = rec.at("c_out").get<int>();
            } else if (kind == "fc") {
                layer.kind = LayerDesc::Kind::kFc;
                layer.fc_m = rec.at("m").get<int>();
                layer.fc_n = rec.at("n").get<int>();
            } else {
                throw std::invalid_argument("mapping: " + where + " ('" + layer.name +
                                            "') has unknown kind '" + kind + "'");
            }
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument("mapping: " + where + " ('" + layer.name +
                                        "') is missing a dimension: " + e.what());
        }
        layer.act_h = rec.value("act_h", 0);
        layer.act_w = rec.value("act_w", 0);
        layers.push_back(std::move(layer));
    }
    return layers;
}

std::string MappingReport::to_json() const {
    nlohmann::json j;
    nlohmann::json arr = nlohmann::json::array();
    for (const LayerMapping& lm : layers) {
        nlohmann::json row = {{"name", lm.layer.name},
                              {"kind", lm.layer.kind == LayerDesc::Kind::kConv ? "conv" : "fc"},
                              {"matrix_rows", lm.matrix_rows},
                              {"matrix_cols", lm.matrix_cols},
                              {"tile_rows", lm.tiles.r},
                              {"tile_cols", lm.tiles.c},
                              {"cores", lm.tiles.cores()},
                              {"needs_adder_tree", lm.needs_adder_tree}};
        if (lm.layer.act_h > 0 && lm.layer.act_w > 0) {
            row["act_h"] = lm.layer.act_h;  // workload sizing, passed through
            row["act_w"] = lm.layer.act_w;
        }
        arr.push_back(std::move(row));
    }
    j["layers"] = std::move(arr);
    j["total_cores"] = total_cores;
    return j.dump(2);
}

std::string MappingReport::to_csv() const {
    std::string out = "name,kind,matrix_rows,matrix_cols,tile_rows,tile_cols,cores,adder_tree\n";
    for (const LayerMapping& lm : layers) {
        out += lm.layer.name + "," +
               (lm.layer.kind == LayerDesc::Kind::kConv ? "conv" : "fc") + "," +
               std::to_string(lm.matrix_rows) + "," + std::to_string(lm.matrix_cols) + "," +
               std::to_string(lm.tiles.r) + "," + std::to_string(lm.tiles.c) + "," +
               std::to_string(lm.tiles.cores()) + "," + (lm.needs_adder_tree ? "1" : "0") + "\n";
    }
    out += "total,,,,,," + std::to_string(total_cores) + ",\n";
    return out;
}

}  // namespace cimforge
