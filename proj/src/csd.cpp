#include "cimforge/csd.hpp"

#include <cstdlib>
#include <stdexcept>

namespace cimforge {

namespace {

void check_magnitude(std::int32_t v, int bits) {
    if (bits < 1 || bits > 30) {
        throw std::invalid_argument("csd: bit width must be in [1, 30]");
    }
    const std::int64_t limit = (std::int64_t{1} << bits) - 1;
    if (std::abs(static_cast<std::int64_t>(v)) > limit) {
        throw std::invalid_argument("csd: |value| exceeds 2^bits - 1");
    }
}

// Non-adjacent form of v, LSB-first; the canonical CSD digits.
std::vector<SdDigit> naf_digits(std::int64_t v) {
    std::vector<SdDigit> digits;
    while (v != 0) {
        if (v & 1) {
            const int d = 2 - static_cast<int>(v & 3);  // +1 or -1
            digits.emplace_back(d);
            v -= d;
        } else {
            digits.emplace_back(0);
        }
        v >>= 1;
    }
    return digits;
}

}  // namespace

SdDigit::SdDigit(int v) : value_(static_cast<std::int8_t>(v)) {
    if (v < -1 || v > 1) {
        throw std::invalid_argument("SdDigit: digit outside {-1,0,1}");
    }
}

DifferentialWeight::DifferentialWeight(std::vector<SdDigit> digits_lsb_first)
    : digits_(std::move(digits_lsb_first)) {
    if (digits_.empty() || digits_.size() > 31) {
        throw std::invalid_argument("DifferentialWeight: digit count must be in [1, 31]");
    }
}

std::uint32_t DifferentialWeight::wp_mask() const {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (digits_[i].value() > 0) m |= (1u << i);
    }
    return m;
}

std::uint32_t DifferentialWeight::wn_mask() const {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (digits_[i].value() < 0) m |= (1u << i);
    }
    return m;
}

namespace {
std::string mask_string(std::uint32_t mask, std::size_t n) {
    std::string s;
    for (std::size_t i = n; i-- > 0;) {
        s += ((mask >> i) & 1u) ? '1' : '0';
    }
    return s;
}
}  // namespace

std::string DifferentialWeight::wp_string() const { return mask_string(wp_mask(), size()); }
std::string DifferentialWeight::wn_string() const { return mask_string(wn_mask(), size()); }

DifferentialWeight to_differential_naive(std::int32_t v, int bits) {
    check_magnitude(v, bits);
    const std::uint32_t mag = static_cast<std::uint32_t>(v < 0 ? -static_cast<std::int64_t>(v) : v);
    const int sign = v < 0 ? -1 : 1;
    std::vector<SdDigit> digits(static_cast<std::size_t>(bits));
    for (int i = 0; i < bits; ++i) {
        if ((mag >> i) & 1u) digits[static_cast<std::size_t>(i)] = SdDigit(sign);
    }
    return DifferentialWeight(std::move(digits));
}

DifferentialWeight encode_csd(std::int32_t v, int bits) {
    check_magnitude(v, bits);
    std::vector<SdDigit> digits = naf_digits(v);
    digits.resize(static_cast<std::size_t>(bits) + 1);  // canonical form may need one extra digit
    return DifferentialWeight(std::move(digits));
}

DifferentialWeight encode_csd_twos_complement(std::int32_t v, int bits) {
    check_magnitude(v, bits);
    const std::int64_t mod = std::int64_t{1} << bits;
    std::int64_t word = static_cast<std::int64_t>(v) % mod;
    if (word < 0) word += mod;
    std::vector<SdDigit> digits = naf_digits(word);
    digits.resize(static_cast<std::size_t>(bits) + 1);
    return DifferentialWeight(std::move(digits));
}

DifferentialWeight encode_mcsd(std::int32_t v, int bits) {
    check_magnitude(v, bits);
    std::vector<SdDigit> dw = to_differential_naive(v, bits).digits();
    const int n = bits;
    auto at = [&](int k) -> int {
        return (k >= 0 && k < n) ? dw[static_cast<std::size_t>(k)].value() : 0;
    };
    auto put = [&](int k, int d) {
        if (k >= 0 && k < n) dw[static_cast<std::size_t>(k)] = SdDigit(d);
    };

    // Find the protected bound: walk down from the MSB through the string
    // that contains it. The scan below never starts at or above i.
    int i = n - 1;
    bool flag = false;
    while (i > 0 && !flag) {
        if (at(i) == 0) flag = true;
        --i;
    }

    int j = 0;
    while (j < i) {
        const int s0 = at(j), s1 = at(j + 1), s2 = at(j + 2), s3 = at(j + 3), s4 = at(j + 4);
        bool pair_pattern = false;
        for (int sgn : {1, -1}) {
            if (s4 == sgn && s3 == sgn && s2 == 0 && s1 == sgn && s0 == sgn) {
                // 11011: the low pair becomes 10(-1), merging into the pair
                // above so the next window sees a fresh run of three.
                put(j + 2, sgn);
                put(j + 1, 0);
                put(j, -sgn);
                j += 2;
                pair_pattern = true;
                break;
            }
        }
        if (pair_pattern) continue;

        bool run_pattern = false;
        for (int sgn : {1, -1}) {
            if (s2 == sgn && s1 == sgn && s0 == sgn) {
                // Run of >= 3 equal digits: replace with 1 0...0 -1.
                // The run may extend into the protected region; its top
                // write lands on the zero that bounds the run.
                int k = j + 2;
                while (at(k) == sgn) ++k;
                put(k, sgn);
                for (int t = j + 1; t < k; ++t) put(t, 0);
                put(j, -sgn);
                j = k;
                run_pattern = true;
                break;
            }
        }
        if (run_pattern) continue;
        ++j;
    }
    return DifferentialWeight(std::move(dw));
}

std::int32_t decode_differential(const DifferentialWeight& dw) {
    std::int64_t v = 0;
    for (std::size_t i = 0; i < dw.size(); ++i) {
        v += static_cast<std::int64_t>(dw.digit_value(i)) << i;
    }
    return static_cast<std::int32_t>(v);
}

SdDigitStats sd_digit_stats(const DifferentialWeight& dw) {
    SdDigitStats s;
    for (const SdDigit& d : dw.digits()) {
        if (d.value() > 0) {
            s.positive++;
            s.nonzero++;
        } else if (d.value() < 0) {
            s.negative++;
            s.nonzero++;
        }
    }
    return s;
}

}  // namespace cimforge
