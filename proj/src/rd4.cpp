#include "cimforge/rd4.hpp"

#include <stdexcept>

namespace cimforge {

namespace {

void check_range(std::uint32_t x, int bits) {
    if (bits < 1 || bits > 30) {
        throw std::invalid_argument("rd4: bit width must be in [1, 30]");
    }
    if (bits < 32 && (x >> bits) != 0) {
        throw std::invalid_argument("rd4: value does not fit in the given bit width");
    }
}

}  // namespace

Rd4Digit::Rd4Digit(int v) : value_(static_cast<std::int8_t>(v)) {
    if (v < -2 || v > 2) {
        throw std::invalid_argument("Rd4Digit: digit outside {-2..2}");
    }
}

Rd4Word::Rd4Word(std::vector<Rd4Digit> digits_lsb_first, int src_bits)
    : digits_(std::move(digits_lsb_first)), src_bits_(src_bits) {
    const std::size_t expect = static_cast<std::size_t>((src_bits + 1) / 2);
    if (src_bits < 1 || digits_.size() != expect) {
        throw std::invalid_argument("Rd4Word: digit count must be ceil(src_bits/2)");
    }
}

std::int64_t Rd4Word::signed_value() const {
    std::int64_t v = 0;
    std::int64_t scale = 1;
    for (const Rd4Digit& d : digits_) {
        v += scale * d.value();
        scale *= 4;
    }
    return v;
}

std::string Rd4Word::to_string() const {
    std::string s;
    for (std::size_t i = digits_.size(); i-- > 0;) {
        int d = digits_[i].value();
        if (d < 0) {
            s += "(" + std::to_string(d) + ")";
        } else {
            s += std::to_string(d);
        }
    }
    return s;
}

Rd4Word encode_radix4(std::uint32_t x, int bits) {
    check_range(x, bits);
    const int nb = bits + (bits & 1);  // working width, even
    // t[0] is the appended zero below the LSB; t[k] = x bit k-1.
    const std::uint64_t t = static_cast<std::uint64_t>(x) << 1;
    std::vector<Rd4Digit> digits;
    digits.reserve(static_cast<std::size_t>(nb / 2));
    for (int i = 0; i + 2 <= nb; i += 2) {
        const int t0 = static_cast<int>((t >> i) & 1);
        const int t1 = static_cast<int>((t >> (i + 1)) & 1);
        const int t2 = static_cast<int>((t >> (i + 2)) & 1);
        digits.emplace_back(-2 * t2 + t1 + t0);
    }
    return Rd4Word(std::move(digits), bits);
}

Rd4Word encode_mrd4(std::uint32_t x, int bits) {
    check_range(x, bits);
    const int nb = bits + (bits & 1);
    std::uint64_t t = static_cast<std::uint64_t>(x) << 1;
    std::vector<Rd4Digit> digits;
    digits.reserve(static_cast<std::size_t>(nb / 2));
    for (int i = 0; i + 2 <= nb; i += 2) {
        // Window t[i+3..i]; bits above the register top read 0.
        const std::uint64_t quad = (t >> i) & 0xF;
        if (quad == 0b0100) {
            t = (t & ~(std::uint64_t{0xF} << i)) | (std::uint64_t{0b0011} << i);
        } else if (quad == 0b1011) {
            t = (t & ~(std::uint64_t{0xF} << i)) | (std::uint64_t{0b1100} << i);
        }
        const int t0 = static_cast<int>((t >> i) & 1);
        const int t1 = static_cast<int>((t >> (i + 1)) & 1);
        const int t2 = static_cast<int>((t >> (i + 2)) & 1);
        digits.emplace_back(-2 * t2 + t1 + t0);
    }
    return Rd4Word(std::move(digits), bits);
}

std::uint32_t decode_rd4(const Rd4Word& w) {
    const std::uint64_t mod = std::uint64_t{1} << w.src_bits();
    std::int64_t v = w.signed_value() % static_cast<std::int64_t>(mod);
    if (v < 0) v += static_cast<std::int64_t>(mod);
    return static_cast<std::uint32_t>(v);
}

std::pair<Rd4Word, RecoderTrace> emulate_recoder_circuit(std::uint32_t x, int bits) {
    if (bits != 8) {
        throw std::invalid_argument("recoder circuit: datapath is fixed at 8 bits");
    }
    check_range(x, bits);

    RecoderTrace trace;
    std::vector<Rd4Digit> digits;
    bool q = false;  // overlap register, reset low
    for (int j = 0; j < 4; ++j) {
        RecoderClock ck;
        ck.s_a = (j >> 1) & 1;
        ck.s_b = j & 1;
        auto xbit = [&](int k) { return k < 8 && (((x >> k) & 1u) != 0); };
        ck.a3 = xbit(2 * j + 2);  // grounded on the last clock
        ck.a2 = xbit(2 * j + 1);
        ck.a1 = xbit(2 * j);
        ck.a0 = q;
        ck.q = q;

        ck.f = !ck.a3 && ck.a2 && !ck.a1 && !ck.a0;
        ck.g = ck.a3 && !ck.a2 && ck.a1 && ck.a0;
        ck.t2 = ck.g || (!ck.f && ck.a2);
        ck.t1 = ck.f || (!ck.g && ck.a1);
        ck.t0 = ck.f || (!ck.g && ck.a0);

        ck.z2 = !ck.t2 && ck.t1 && ck.t0;
        ck.zm2 = ck.t2 && !ck.t1 && !ck.t0;
        ck.z1 = !ck.t2 && (ck.t1 != ck.t0);
        ck.zm1 = ck.t2 && (ck.t1 != ck.t0);

        int d = 0;
        if (ck.z2) d = 2;
        else if (ck.zm2) d = -2;
        else if (ck.z1) d = 1;
        else if (ck.zm1) d = -1;
        digits.emplace_back(d);

        q = ck.t2;
        trace.clocks.push_back(ck);
    }
    return {Rd4Word(std::move(digits), bits), std::move(trace)};
}

Rd4DigitStats rd4_digit_stats(const Rd4Word& w) {
    Rd4DigitStats s;
    for (const Rd4Digit& d : w.digits()) {
        s.histogram[static_cast<std::size_t>(d.value() + 2)]++;
        if (d.value() != 0) s.nonzero++;
    }
    return s;
}

}  // namespace cimforge
