#include "cimforge/crossbar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cimforge/rng.hpp"

namespace cimforge {

CrossbarCore::CrossbarCore(int rows, int cols, int weight_bits, double hrs_conductance)
    : rows_(rows), cols_(cols), weight_bits_(weight_bits) {
    if (rows < 1 || rows > kMaxRows || cols < 1 || cols > kMaxCols) {
        throw std::invalid_argument("crossbar: dimensions exceed core capacity");
    }
    if (weight_bits < 1 || weight_bits > 16) {
        throw std::invalid_argument("crossbar: weight bit count out of range");
    }
    cells_.assign(static_cast<std::size_t>(rows) * cols * weight_bits * 2, hrs_conductance);
}

std::size_t CrossbarCore::index(int row, int col, int bit, Polarity pol) const {
    const std::size_t p = pol == Polarity::kPositive ? 0 : 1;
    return (((static_cast<std::size_t>(row) * cols_ + col) * weight_bits_ + bit) << 1) | p;
}

std::int64_t CrossbarCore::lrs_count(double g_threshold) const {
    std::int64_t n = 0;
    for (double g : cells_) {
        if (g >= g_threshold) ++n;
    }
    return n;
}

DifferentialWeight encode_weight(std::int32_t w, int bits, WeightScheme scheme) {
    switch (scheme) {
        case WeightScheme::kNaiveDifferential:
            return to_differential_naive(w, bits);
        case WeightScheme::kCsd:
            return encode_csd(w, bits);
        case WeightScheme::kMcsd:
            return encode_mcsd(w, bits);
    }
    throw std::invalid_argument("crossbar: unknown weight scheme");
}

CrossbarCore program_core(const std::vector<std::vector<std::int32_t>>& weights,
                          int weight_bits, const DeviceParams& params, WeightScheme scheme) {
    params.validate();
    if (weights.empty() || weights.front().empty()) {
        throw std::invalid_argument("crossbar: weight matrix is empty");
    }
    const int rows = static_cast<int>(weights.size());
    const int cols = static_cast<int>(weights.front().size());
    // CSD may carry the extra top digit; give the core the extra bit line.
    const int cell_bits = scheme == WeightScheme::kCsd ? weight_bits + 1 : weight_bits;

    const double g_h = 1.0 / params.r_h_ohms;
    const double g_l = 1.0 / params.r_l_ohms;
    CrossbarCore core(rows, cols, cell_bits, g_h);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(weights[r].size()) != cols) {
            throw std::invalid_argument("crossbar: ragged weight matrix");
        }
        for (int c = 0; c < cols; ++c) {
            const DifferentialWeight dw = encode_weight(weights[r][c], weight_bits, scheme);
            for (std::size_t b = 0; b < dw.size(); ++b) {
                const int d = dw.digit_value(b);
                if (d > 0) {
                    core.set_conductance(r, c, static_cast<int>(b), Polarity::kPositive, g_l);
                } else if (d < 0) {
                    core.set_conductance(r, c, static_cast<int>(b), Polarity::kNegative, g_l);
                }
            }
        }
    }
    return core;
}

CrossbarCore apply_variation(const CrossbarCore& core, const DeviceParams& params) {
    if (params.sigma_r < 0.0) {
        throw std::invalid_argument("crossbar: sigma_r must be nonnegative");
    }
    if (params.sigma_r == 0.0) return core;

    CrossbarCore out = core;
    const double r_min = params.r_l_ohms / 10.0;
    const double r_max = params.r_h_ohms * 10.0;
    for (int r = 0; r < core.rows(); ++r) {
        for (int c = 0; c < core.cols(); ++c) {
            for (int b = 0; b < core.weight_bits(); ++b) {
                for (Polarity pol : {Polarity::kPositive, Polarity::kNegative}) {
                    const std::uint64_t key =
                        (static_cast<std::uint64_t>(r) << 34) ^
                        (static_cast<std::uint64_t>(c) << 21) ^
                        (static_cast<std::uint64_t>(b) << 1) ^
                        (pol == Polarity::kNegative ? 1u : 0u);
                    const double z = hashed_normal(params.seed, key);
                    double res = 1.0 / core.conductance(r, c, b, pol);
                    res *= std::exp(params.sigma_r * z);
                    res = std::clamp(res, r_min, r_max);
                    out.set_conductance(r, c, b, pol, 1.0 / res);
                }
            }
        }
    }
    return out;
}

std::vector<std::vector<std::int32_t>> read_back(const CrossbarCore& core,
                                                 const DeviceParams& params) {
    // Threshold at the geometric mean of the nominal corner conductances.
    const double g_mid = std::sqrt((1.0 / params.r_h_ohms) * (1.0 / params.r_l_ohms));
    std::vector<std::vector<std::int32_t>> weights(
        static_cast<std::size_t>(core.rows()),
        std::vector<std::int32_t>(static_cast<std::size_t>(core.cols()), 0));
    for (int r = 0; r < core.rows(); ++r) {
        for (int c = 0; c < core.cols(); ++c) {
            std::int64_t w = 0;
            for (int b = 0; b < core.weight_bits(); ++b) {
                const bool p = core.conductance(r, c, b, Polarity::kPositive) > g_mid;
                const bool n = core.conductance(r, c, b, Polarity::kNegative) > g_mid;
                w += (static_cast<std::int64_t>(p) - static_cast<std::int64_t>(n)) << b;
            }
            weights[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                static_cast<std::int32_t>(w);
        }
    }
    return weights;
}

}  // namespace cimforge
