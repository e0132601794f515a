// Differential weight representation and signed-digit weight recoding.
//
// A weight w is stored as a positive and a negative bit plane,
// w = w_p - w_n, one 1R1T cell pair per digit position. The planes never
// both carry a 1 at the same position, so each position is a signed digit
// in {-1,0,1}. Canonical CSD minimises nonzero digits but can need one
// digit more than the source width; the modified form (M-CSD) tolerates
// "11" pairs and protects the run containing the MSB so that the result
// never outgrows the n-digit word.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cimforge {

// One signed binary digit. Construction outside {-1,0,1} throws.
class SdDigit {
public:
    constexpr SdDigit() = default;
    explicit SdDigit(int v);
    constexpr int value() const { return value_; }
    friend bool operator==(SdDigit a, SdDigit b) { return a.value_ == b.value_; }

private:
    std::int8_t value_ = 0;
};

// Signed-digit word, LSB-first. The positive/negative plane views are
// derived from the digits, so b_i * c_i = 0 holds by construction.
class DifferentialWeight {
public:
    explicit DifferentialWeight(std::vector<SdDigit> digits_lsb_first);

    const std::vector<SdDigit>& digits() const { return digits_; }
    std::size_t size() const { return digits_.size(); }
    int digit_value(std::size_t i) const { return digits_[i].value(); }

    std::uint32_t wp_mask() const;  // b_i bits
    std::uint32_t wn_mask() const;  // c_i bits
    std::string wp_string() const;  // MSB-first, e.g. "00001001"
    std::string wn_string() const;

    friend bool operator==(const DifferentialWeight& a, const DifferentialWeight& b) {
        return a.digits_ == b.digits_;
    }

private:
    std::vector<SdDigit> digits_;
};

// Uniform-sign encoding: the binary magnitude bits of |v|, all given the
// sign of v. This is the form the M-CSD pass consumes.
DifferentialWeight to_differential_naive(std::int32_t v, int bits);

// Canonical CSD (no two adjacent nonzero digits, minimal nonzero count).
// The output may carry bits+1 digits; values above the n-digit CSD
// ceiling need the extra position.
DifferentialWeight encode_csd(std::int32_t v, int bits);

// CSD recoding of the two's-complement word v mod 2^bits, i.e. of the bit
// pattern a non-differential n-bit array would store. Nonnegative values
// match encode_csd; negatives pick up the wrap digit at position n.
// Decodes to v modulo 2^bits.
DifferentialWeight encode_csd_twos_complement(std::int32_t v, int bits);

// M-CSD: scan the naive differential digits LSB-to-MSB, rewriting
// 11011 -> 111(0)(-1) in the low triplet and runs of three or more equal
// nonzero digits into 10...0(-1) (sign-mirrored for negatives). The scan
// stops below the string containing the MSB, though a run replacement may
// write one digit into that region. Never emits more than bits digits.
DifferentialWeight encode_mcsd(std::int32_t v, int bits);

// sum(2^i * (b_i - c_i))
std::int32_t decode_differential(const DifferentialWeight& dw);

struct SdDigitStats {
    int nonzero = 0;
    int positive = 0;
    int negative = 0;
};

SdDigitStats sd_digit_stats(const DifferentialWeight& dw);

}  // namespace cimforge
