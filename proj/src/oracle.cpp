#include "cimforge/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cimforge/rng.hpp"

namespace cimforge {

std::int64_t exact_mac(const std::vector<std::uint32_t>& x, const std::vector<std::int32_t>& w) {
    if (x.size() != w.size()) {
        throw std::invalid_argument("oracle: vector length mismatch");
    }
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += static_cast<std::int64_t>(x[i]) * w[i];
    }
    return acc;
}

namespace {

// One pass over all 5^m words fills the table for every value at once.
std::vector<int> min_digit_table(int bits) {
    const int m = (bits + 1) / 2;
    const std::int64_t mod = std::int64_t{1} << bits;
    std::int64_t total = 1;
    for (int i = 0; i < m; ++i) total *= 5;

    std::vector<int> best(static_cast<std::size_t>(mod), m + 1);
    for (std::int64_t idx = 0; idx < total; ++idx) {
        std::int64_t rem = idx;
        std::int64_t value = 0;
        std::int64_t scale = 1;
        int nnz = 0;
        for (int d = 0; d < m; ++d) {
            const int digit = static_cast<int>(rem % 5) - 2;
            rem /= 5;
            value += scale * digit;
            scale *= 4;
            if (digit != 0) ++nnz;
        }
        std::int64_t folded = value % mod;
        if (folded < 0) folded += mod;
        best[static_cast<std::size_t>(folded)] = std::min(best[static_cast<std::size_t>(folded)], nnz);
    }
    return best;
}

}  // namespace

int min_nonzero_digits_rd4(std::uint32_t x, int bits) {
    if (bits < 1 || bits > 16) {
        throw std::invalid_argument("oracle: bits must be in [1, 16]");
    }
    if (bits < 32 && (x >> bits) != 0) {
        throw std::invalid_argument("oracle: value does not fit in the given bit width");
    }
    if (bits == 8) {
        static const std::vector<int> cached = min_digit_table(8);
        return cached[x];
    }
    return min_digit_table(bits)[x];
}

namespace {

// Shapes calibrated at 8 bits so synthetic densities sit inside the
// target bands; other widths scale proportionally. Weights follow the
// symmetric int8 convention (clip at +-(2^(bits-1) - 1)); inputs are
// rectified pre-activations with a small negative mean, quantized to the
// full unsigned range with saturation at the top code.
constexpr double kWeightSigma8 = 93.0;
constexpr double kInputSigma8 = 300.0;
constexpr double kInputMeanShift = -0.2;  // mean, in units of sigma

double width_scale(int bits) { return std::ldexp(1.0, bits - 8); }

void check_synth_args(std::size_t count, int bits) {
    if (count == 0) {
        throw std::invalid_argument("oracle: tensor count must be positive");
    }
    if (bits < 2 || bits > 16) {
        throw std::invalid_argument("oracle: bits must be in [2, 16]");
    }
}

}  // namespace

std::vector<std::int32_t> synth_weights(std::size_t count, int bits, std::uint64_t seed) {
    check_synth_args(count, bits);
    const double sigma = kWeightSigma8 * width_scale(bits);
    const double limit = static_cast<double>((1u << (bits - 1)) - 1);
    Rng rng(seed ^ 0x5eedb00c);
    std::vector<std::int32_t> out(count);
    for (auto& w : out) {
        const double v = std::round(rng.next_normal() * sigma);
        w = static_cast<std::int32_t>(std::clamp(v, -limit, limit));
    }
    return out;
}

std::vector<std::uint32_t> synth_inputs(std::size_t count, int bits, std::uint64_t seed) {
    check_synth_args(count, bits);
    const double sigma = kInputSigma8 * width_scale(bits);
    const double limit = static_cast<double>((1u << bits) - 1);
    Rng rng(seed ^ 0xac71a7e5);
    std::vector<std::uint32_t> out(count);
    for (auto& x : out) {
        // Negative pre-activations rectify to zero, the rest quantize with
        // saturation at the top code.
        const double v = std::round(rng.next_normal() * sigma + kInputMeanShift * sigma);
        x = static_cast<std::uint32_t>(std::clamp(v, 0.0, limit));
    }
    return out;
}

}  // namespace cimforge
