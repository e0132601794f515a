// Differential 1R1T crossbar: programs signed weights into conductance
// pairs and optionally perturbs them with per-cell lognormal variation.
#pragma once

#include <cstdint>
#include <vector>

#include "cimforge/csd.hpp"
#include "cimforge/device.hpp"

namespace cimforge {

enum class WeightScheme {
    kNaiveDifferential,
    kCsd,
    kMcsd,
};

enum class Polarity { kPositive, kNegative };

// rows x cols array of differential cell pairs. Each logical weight
// occupies weight_bits() positions, two cells per position. Cores are
// immutable once programmed; variation produces a new core.
class CrossbarCore {
public:
    static constexpr int kMaxRows = 256;
    static constexpr int kMaxCols = 256;  // logical columns (512 physical cell columns)

    CrossbarCore(int rows, int cols, int weight_bits, double hrs_conductance);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int weight_bits() const { return weight_bits_; }

    double conductance(int row, int col, int bit, Polarity pol) const {
        return cells_[index(row, col, bit, pol)];
    }
    void set_conductance(int row, int col, int bit, Polarity pol, double g) {
        cells_[index(row, col, bit, pol)] = g;
    }

    // Number of cells in the low-resistance state.
    std::int64_t lrs_count(double g_threshold) const;

private:
    std::size_t index(int row, int col, int bit, Polarity pol) const;

    int rows_;
    int cols_;
    int weight_bits_;
    std::vector<double> cells_;  // conductance in siemens
};

// Encode every weight with the chosen scheme and program the cell pairs:
// digit +1 -> positive cell LRS, -1 -> negative cell LRS, 0 -> both HRS.
// weights is row-major [rows][cols]. Throws on capacity or range errors.
CrossbarCore program_core(const std::vector<std::vector<std::int32_t>>& weights,
                          int weight_bits, const DeviceParams& params, WeightScheme scheme);

// Multiply every cell resistance by an independent lognormal factor with
// median 1 and log-space sigma params.sigma_r, keyed on (seed, row, col,
// bit, polarity). Resistances are clamped one decade beyond the nominal
// corners. sigma_r = 0 returns the core unchanged.
CrossbarCore apply_variation(const CrossbarCore& core, const DeviceParams& params);

// Recover the signed weight matrix from programmed conductances
// (exact for unvaried cores).
std::vector<std::vector<std::int32_t>> read_back(const CrossbarCore& core,
                                                 const DeviceParams& params);

// The per-scheme digits a weight is programmed with.
DifferentialWeight encode_weight(std::int32_t w, int bits, WeightScheme scheme);

}  // namespace cimforge
