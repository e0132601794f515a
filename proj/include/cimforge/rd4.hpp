// Radix-4 booth and modified radix-4 (M-RD4) input recoding.
//
// Unsigned n-bit activations are recoded into ceil(n/2) signed digits in
// {-2,-1,0,1,2}. The modified code rewrites the bit patterns 0100 -> 0011
// and 1011 -> 1100 in the working register before each digit is formed,
// which trims nonzero digits without changing the encoded value.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cimforge {

// One radix-4 signed digit. Construction outside {-2..2} throws.
class Rd4Digit {
public:
    constexpr Rd4Digit() = default;
    explicit Rd4Digit(int v);
    constexpr int value() const { return value_; }
    friend bool operator==(Rd4Digit a, Rd4Digit b) { return a.value_ == b.value_; }

private:
    std::int8_t value_ = 0;
};

// Radix-4 digit word, LSB-first, with the source bit width attached.
// The word always has ceil(src_bits/2) digits. An n-bit datapath is a
// mod-2^n machine, so words whose source had the top bit set carry the
// two's-complement reading; decode() folds that back into [0, 2^n).
class Rd4Word {
public:
    Rd4Word(std::vector<Rd4Digit> digits_lsb_first, int src_bits);

    const std::vector<Rd4Digit>& digits() const { return digits_; }
    int src_bits() const { return src_bits_; }
    std::size_t size() const { return digits_.size(); }
    int digit_value(std::size_t i) const { return digits_[i].value(); }

    // Signed polynomial value sum(d_j * 4^j), before the mod-2^n fold.
    std::int64_t signed_value() const;

    // MSB-first display, negative digits in parens: "111(-2)".
    std::string to_string() const;

    friend bool operator==(const Rd4Word& a, const Rd4Word& b) {
        return a.src_bits_ == b.src_bits_ && a.digits_ == b.digits_;
    }

private:
    std::vector<Rd4Digit> digits_;
    int src_bits_;
};

// Plain radix-4 booth recoding of an unsigned value: append a 0 below the
// LSB, zero-extend to an even bit count, then map overlapping bit triplets
// to digits -2*t[i+2] + t[i+1] + t[i] from LSB to MSB.
Rd4Word encode_radix4(std::uint32_t x, int bits);

// M-RD4 recoding: as encode_radix4, but each step first inspects the
// four-bit window t[i+3..i] and rewrites 0100 -> 0011 or 1011 -> 1100 in
// the working register. Rewritten bits persist into later (overlapping)
// windows; the lookahead bit above the register top reads 0.
Rd4Word encode_mrd4(std::uint32_t x, int bits);

// Inverse of both encoders: sum(d_j * 4^j) folded into [0, 2^src_bits).
std::uint32_t decode_rd4(const Rd4Word& w);

// One clock of the recoder datapath: counter selects, MUX outputs,
// converter bits, overlap register and one-hot digit lines.
struct RecoderClock {
    bool s_a = false, s_b = false;           // quaternary counter bits
    bool a3 = false, a2 = false, a1 = false, a0 = false;  // MUX block output
    bool f = false, g = false;               // converter pattern detectors
    bool t2 = false, t1 = false, t0 = false; // converter output
    bool q = false;                          // overlap register entering this clock
    bool z2 = false, zm2 = false, z1 = false, zm1 = false; // one-hot encoder lines
};

struct RecoderTrace {
    std::vector<RecoderClock> clocks;
};

// Clocked emulation of the 8-bit M-RD4 recoder circuit (MUX, converter,
// encoder blocks). Widths other than 8 are rejected; the returned word
// always equals encode_mrd4(x, 8).
std::pair<Rd4Word, RecoderTrace> emulate_recoder_circuit(std::uint32_t x, int bits = 8);

struct Rd4DigitStats {
    int nonzero = 0;
    std::array<int, 5> histogram{};  // index = digit value + 2
};

Rd4DigitStats rd4_digit_stats(const Rd4Word& w);

}  // namespace cimforge
