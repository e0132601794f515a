#include <doctest.h>

#include <stdexcept>

#include <vector>

#include "cimforge/oracle.hpp"
#include "cimforge/rd4.hpp"

using namespace cimforge;

namespace {

Rd4Word word_msb(std::vector<int> msb_first, int bits) {
    std::vector<Rd4Digit> digits;
    for (auto it = msb_first.rbegin(); it != msb_first.rend(); ++it) {
        digits.emplace_back(*it);
    }
    return Rd4Word(std::move(digits), bits);
}

}  // namespace

TEST_CASE("radix-4 encoding anchors") {
    CHECK(encode_radix4(0b01010010, 8).to_string() == "111(-2)");
    CHECK(encode_radix4(0b01111111, 8).to_string() == "200(-1)");
    CHECK(encode_radix4(0, 8).to_string() == "0000");
    CHECK(encode_radix4(0b01010010, 8) == word_msb({1, 1, 1, -2}, 8));
}

TEST_CASE("M-RD4 encoding anchors") {
    CHECK(encode_mrd4(0b01010010, 8).to_string() == "1102");
    CHECK(encode_mrd4(0b01111101, 8) == word_msb({2, 0, -1, 1}, 8));
    // no 0100/1011 window fires, so this equals the plain radix-4 code
    CHECK(encode_mrd4(0b01111111, 8) == encode_radix4(0b01111111, 8));
}

TEST_CASE("decoding is polynomial evaluation mod 2^n") {
    CHECK(decode_rd4(word_msb({1, 1, 0, 2}, 8)) == 82);
    CHECK(decode_rd4(word_msb({2, 0, -1, 1}, 8)) == 125);
    CHECK(decode_rd4(word_msb({0, 0, 0, 0}, 8)) == 0);
}

TEST_CASE("round-trip is exact for every 8-bit value") {
    for (std::uint32_t x = 0; x < 256; ++x) {
        CHECK(decode_rd4(encode_radix4(x, 8)) == x);
        CHECK(decode_rd4(encode_mrd4(x, 8)) == x);
    }
}

TEST_CASE("M-RD4 never has more nonzero digits than radix-4") {
    for (std::uint32_t x = 0; x < 256; ++x) {
        CHECK(rd4_digit_stats(encode_mrd4(x, 8)).nonzero <=
              rd4_digit_stats(encode_radix4(x, 8)).nonzero);
    }
}

TEST_CASE("digit count is ceil(n/2) for widths 1..16") {
    for (int bits = 1; bits <= 16; ++bits) {
        const std::uint32_t x = (1u << (bits - 1)) | 1u;
        CHECK(encode_radix4(x, bits).size() == static_cast<std::size_t>((bits + 1) / 2));
        CHECK(encode_mrd4(x, bits).size() == static_cast<std::size_t>((bits + 1) / 2));
        CHECK(decode_rd4(encode_mrd4(x, bits)) == x);
    }
}

TEST_CASE("recoder circuit walkthrough for 01010010") {
    auto [word, trace] = emulate_recoder_circuit(0b01010010, 8);
    CHECK(word.to_string() == "1102");
    REQUIRE(trace.clocks.size() == 4);

    // clock 1: MUX gives x2x1x0 = 010 with a0 seeded low, the converter
    // detects 0100 (F high) and rewrites to t = 011, digit 2
    const RecoderClock& c1 = trace.clocks[0];
    CHECK((!c1.a3 && c1.a2 && !c1.a1 && !c1.a0));
    CHECK(c1.f);
    CHECK_FALSE(c1.g);
    CHECK((!c1.t2 && c1.t1 && c1.t0));
    CHECK(c1.z2);

    // clock 2: a = x4x3x2Q = 1000, passes through as t = 000, all lines low
    const RecoderClock& c2 = trace.clocks[1];
    CHECK((c2.a3 && !c2.a2 && !c2.a1 && !c2.a0));
    CHECK_FALSE(c2.f);
    CHECK_FALSE(c2.g);
    CHECK((!c2.z2 && !c2.zm2 && !c2.z1 && !c2.zm1));

    // clocks 3 and 4: t = 010 both times, Z1 asserted
    CHECK((!trace.clocks[2].t2 && trace.clocks[2].t1 && !trace.clocks[2].t0));
    CHECK(trace.clocks[2].z1);
    CHECK(trace.clocks[3].z1);

    // quaternary counter sequence; the last clock grounds a3
    CHECK((trace.clocks[2].s_a && !trace.clocks[2].s_b));
    CHECK((trace.clocks[3].s_a && trace.clocks[3].s_b));
    CHECK_FALSE(trace.clocks[3].a3);
}

TEST_CASE("overlap register carries the rewritten bit between clocks") {
    auto [word, trace] = emulate_recoder_circuit(0b00001011, 8);
    CHECK(decode_rd4(word) == 11);
    // clock 1 leaves t2 = 1, so clock 2 must see it on a0
    CHECK(trace.clocks[0].t2);
    CHECK(trace.clocks[1].q);
    CHECK(trace.clocks[1].a0);
}

TEST_CASE("recoder circuit matches the algorithm for every input") {
    for (std::uint32_t x = 0; x < 256; ++x) {
        auto [word, trace] = emulate_recoder_circuit(x, 8);
        CHECK(word == encode_mrd4(x, 8));
        for (const RecoderClock& ck : trace.clocks) {
            const int hot = static_cast<int>(ck.z2) + static_cast<int>(ck.zm2) +
                            static_cast<int>(ck.z1) + static_cast<int>(ck.zm1);
            CHECK(hot <= 1);
        }
    }
}

TEST_CASE("zero input keeps every output line low") {
    auto [word, trace] = emulate_recoder_circuit(0, 8);
    CHECK(decode_rd4(word) == 0);
    for (const RecoderClock& ck : trace.clocks) {
        CHECK_FALSE(ck.z2);
        CHECK_FALSE(ck.zm2);
        CHECK_FALSE(ck.z1);
        CHECK_FALSE(ck.zm1);
    }
}

TEST_CASE("digit stats") {
    const Rd4Word w = word_msb({1, 1, 0, 2}, 8);
    const Rd4DigitStats s = rd4_digit_stats(w);
    CHECK(s.nonzero == 3);
    CHECK(s.histogram[2 + 2] == 1);   // one digit of value 2
    CHECK(s.histogram[0 + 2] == 1);   // one zero
    CHECK(s.histogram[1 + 2] == 2);
    CHECK(rd4_digit_stats(word_msb({2, 0, -1, 1}, 8)).nonzero == 3);
    CHECK(rd4_digit_stats(word_msb({0, 0, 0, 0}, 8)).nonzero == 0);
}

TEST_CASE("rejects out-of-range values and unsupported circuit widths") {
    CHECK_THROWS_AS(encode_radix4(256, 8), std::invalid_argument);
    CHECK_THROWS_AS(encode_mrd4(1u << 12, 12), std::invalid_argument);
    CHECK_THROWS_AS(emulate_recoder_circuit(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(Rd4Digit(3), std::invalid_argument);
}

TEST_CASE("M-RD4 hits the brute-force minimum on spot values") {
    CHECK(min_nonzero_digits_rd4(82, 8) == 3);
    CHECK(min_nonzero_digits_rd4(0, 8) == 0);
    for (std::uint32_t x : {1u, 8u, 10u, 127u, 255u}) {
        CHECK(rd4_digit_stats(encode_mrd4(x, 8)).nonzero >= min_nonzero_digits_rd4(x, 8));
    }
}
