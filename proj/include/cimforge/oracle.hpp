// Independent ground-truth engines for tests and acceptance checks: exact
// integer MACs, brute-force minimal-digit search, and workload synthesis.
#pragma once

#include <cstdint>
#include <vector>

namespace cimforge {

// sum(x_i * w_i) in exact integer arithmetic.
std::int64_t exact_mac(const std::vector<std::uint32_t>& x, const std::vector<std::int32_t>& w);

// Minimal nonzero-digit count over every radix-4 signed-digit word of
// length ceil(bits/2) that decodes (mod 2^bits) to x. 5^4 = 625 candidate
// words per 8-bit value.
int min_nonzero_digits_rd4(std::uint32_t x, int bits);

enum class TensorKind {
    kWeightsNormal,    // quantized zero-mean normal, clamped to +-(2^bits - 1)
    kInputsHalfNormal, // ReLU'd quantized normal, clamped to [0, 2^bits - 1]
};

// Deterministic synthetic tensors shaped like trained-network data. The
// spreads are fixed so the binary one-bit densities land in the 40-50%
// (weights) and 20-30% (inputs) bands at 8 bits.
std::vector<std::int32_t> synth_weights(std::size_t count, int bits, std::uint64_t seed);
std::vector<std::uint32_t> synth_inputs(std::size_t count, int bits, std::uint64_t seed);

}  // namespace cimforge
