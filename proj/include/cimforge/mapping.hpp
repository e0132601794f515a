// Tiling of convolution kernels and FC matrices onto fixed-size cores.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cimforge {

struct LayerDesc {
    enum class Kind { kConv, kFc };
    Kind kind = Kind::kConv;
    std::string name;
    // conv: C_in * k * k * C_out kernel
    int c_in = 0;
    int kernel = 0;
    int c_out = 0;
    // fc: M inputs x N outputs
    int fc_m = 0;
    int fc_n = 0;
    // activation dims, carried through for workload sizing
    int act_h = 0;
    int act_w = 0;
};

struct TileResult {
    int r = 0;  // row tiles
    int c = 0;  // column tiles
    std::int64_t cores() const { return static_cast<std::int64_t>(r) * c; }
};

// Logical core capacity: 256x256 signed weights on the 256x512 physical
// differential array.
constexpr int kCoreRows = 256;
constexpr int kCoreCols = 256;

TileResult tile_conv(int c_in, int kernel, int c_out, int core_rows = kCoreRows,
                     int core_cols = kCoreCols);
// Rows take the input dimension M, columns the output dimension N.
TileResult tile_fc(int m, int n, int core_rows = kCoreRows, int core_cols = kCoreCols);

struct LayerMapping {
    LayerDesc layer;
    std::int64_t matrix_rows = 0;
    std::int64_t matrix_cols = 0;
    TileResult tiles;
    bool needs_adder_tree = false;  // row tiling > 1, partial sums cross cores
};

struct MappingReport {
    std::vector<LayerMapping> layers;
    std::int64_t total_cores = 0;

    std::string to_json() const;
    std::string to_csv() const;
};

MappingReport map_network(const std::vector<LayerDesc>& layers, int core_rows = kCoreRows,
                          int core_cols = kCoreCols);

// Layer list ingestion; throws std::invalid_argument naming the offending
// record on schema errors.
std::vector<LayerDesc> layers_from_json(const std::string& json_text);

}  // namespace cimforge
