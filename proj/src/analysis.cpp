#include "cimforge/analysis.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cimforge/csd.hpp"
#include "cimforge/rd4.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace cimforge {

namespace {

constexpr int kRowsPerConversion = 256;

int popcount_u32(std::uint32_t v) { return std::popcount(v); }

struct PairCounts {
    int in_nnz = 0;
    int in_len = 0;
    int w_nnz = 0;
    int w_len = 0;
};

// Phases of one word conversion: the binary baseline spends three phases
// per input bit (two integrations, one redistribution), the booth pipeline
// six per digit. All rows of a column share the conversion.
int phases_per_word(Scheme scheme, int bits) {
    const int m = (bits + 1) / 2;
    return scheme == Scheme::kBinary ? 3 * bits : 6 * m;
}

PairCounts count_pair(std::uint32_t x, std::int32_t w, Scheme scheme, int bits) {
    PairCounts c;
    const int m = (bits + 1) / 2;
    switch (scheme) {
        case Scheme::kBinary:
            c.in_nnz = popcount_u32(x);
            c.in_len = bits;
            break;
        case Scheme::kRadix4Binary:
            c.in_nnz = rd4_digit_stats(encode_radix4(x, bits)).nonzero;
            c.in_len = m;
            break;
        case Scheme::kMrd4Binary:
        case Scheme::kMrd4Csd:
        case Scheme::kMrd4Mcsd:
            c.in_nnz = rd4_digit_stats(encode_mrd4(x, bits)).nonzero;
            c.in_len = m;
            break;
    }
    switch (scheme) {
        case Scheme::kBinary:
        case Scheme::kRadix4Binary:
        case Scheme::kMrd4Binary:
            c.w_nnz = sd_digit_stats(to_differential_naive(w, bits)).nonzero;
            c.w_len = bits;
            break;
        case Scheme::kMrd4Csd:
            c.w_nnz = sd_digit_stats(encode_csd_twos_complement(w, bits)).nonzero;
            c.w_len = bits + 1;
            break;
        case Scheme::kMrd4Mcsd:
            c.w_nnz = sd_digit_stats(encode_mcsd(w, bits)).nonzero;
            c.w_len = bits;
            break;
    }
    return c;
}

OpStats count_range(const std::vector<std::uint32_t>& inputs,
                    const std::vector<std::int32_t>& weights, Scheme scheme, int bits,
                    std::size_t begin, std::size_t end) {
    OpStats s;
    s.scheme = scheme;
    for (std::size_t i = begin; i < end; ++i) {
        const PairCounts c = count_pair(inputs[i], weights[i], scheme, bits);
        s.pairs += 1;
        s.active_events += static_cast<std::int64_t>(c.in_nnz) * c.w_nnz;
        s.total_positions += static_cast<std::int64_t>(c.in_len) * c.w_len;
        s.baseline_positions += static_cast<std::int64_t>(bits) * bits;
        if (inputs[i] != 0) s.input_words += 1;
    }
    return s;
}

void check_shapes(const std::vector<std::uint32_t>& inputs,
                  const std::vector<std::int32_t>& weights, int bits) {
    if (inputs.size() != weights.size()) {
        throw std::invalid_argument("analysis: input/weight tensors must pair up");
    }
    if (bits < 2 || bits > 16) {
        throw std::invalid_argument("analysis: bits must be in [2, 16]");
    }
}

}  // namespace

const std::vector<Scheme>& scheme_ladder() {
    static const std::vector<Scheme> ladder = {Scheme::kBinary, Scheme::kRadix4Binary,
                                               Scheme::kMrd4Binary, Scheme::kMrd4Csd,
                                               Scheme::kMrd4Mcsd};
    return ladder;
}

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::kBinary: return "binary";
        case Scheme::kRadix4Binary: return "radix4-in/binary-w";
        case Scheme::kMrd4Binary: return "mrd4-in/binary-w";
        case Scheme::kMrd4Csd: return "mrd4-in/csd-w";
        case Scheme::kMrd4Mcsd: return "mrd4-in/mcsd-w";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    for (Scheme s : scheme_ladder()) {
        if (scheme_name(s) == name) return s;
    }
    throw std::invalid_argument("analysis: unknown scheme '" + name + "'");
}

OpStats& OpStats::merge(const OpStats& other) {
    if (other.scheme != scheme) {
        throw std::invalid_argument("analysis: cannot merge stats across schemes");
    }
    pairs += other.pairs;
    total_positions += other.total_positions;
    baseline_positions += other.baseline_positions;
    active_events += other.active_events;
    phase_count += other.phase_count;
    adc_conversions += other.adc_conversions;
    input_words += other.input_words;
    return *this;
}

OpStats count_events_serial(const std::vector<std::uint32_t>& inputs,
                            const std::vector<std::int32_t>& weights, Scheme scheme, int bits) {
    check_shapes(inputs, weights, bits);
    OpStats s = count_range(inputs, weights, scheme, bits, 0, inputs.size());
    s.adc_conversions = (s.pairs + kRowsPerConversion - 1) / kRowsPerConversion;
    s.phase_count = s.adc_conversions * phases_per_word(scheme, bits);
    return s;
}

OpStats count_events(const std::vector<std::uint32_t>& inputs,
                     const std::vector<std::int32_t>& weights, Scheme scheme, int bits) {
    check_shapes(inputs, weights, bits);
    OpStats s;
    s.scheme = scheme;
#if defined(_OPENMP)
    const std::size_t n = inputs.size();
#pragma omp parallel
    {
        const int tid = omp_get_thread_num();
        const int nthreads = omp_get_num_threads();
        const std::size_t chunk = (n + nthreads - 1) / nthreads;
        const std::size_t begin = std::min(n, chunk * static_cast<std::size_t>(tid));
        const std::size_t end = std::min(n, begin + chunk);
        OpStats local = count_range(inputs, weights, scheme, bits, begin, end);
#pragma omp critical
        s.merge(local);
    }
#else
    s = count_range(inputs, weights, scheme, bits, 0, inputs.size());
#endif
    s.adc_conversions = (s.pairs + kRowsPerConversion - 1) / kRowsPerConversion;
    s.phase_count = s.adc_conversions * phases_per_word(scheme, bits);
    return s;
}

double ratio_one_one(const OpStats& stats) {
    if (stats.total_positions <= 0) {
        throw std::invalid_argument("analysis: ratio needs a nonempty workload");
    }
    return static_cast<double>(stats.active_events) /
           static_cast<double>(stats.total_positions);
}

void EnergyParams::validate() const {
    if (e_event_joules < 0 || e_phase_joules < 0 || e_adc_joules < 0 || e_recode_joules < 0) {
        throw std::invalid_argument("energy: constants must be nonnegative");
    }
}

double estimate_energy(const OpStats& stats, const EnergyParams& ep) {
    ep.validate();
    const std::int64_t recoded = stats.scheme == Scheme::kBinary ? 0 : stats.input_words;
    return ep.e_event_joules * static_cast<double>(stats.active_events) +
           ep.e_phase_joules * static_cast<double>(stats.phase_count) +
           ep.e_adc_joules * static_cast<double>(stats.adc_conversions) +
           ep.e_recode_joules * static_cast<double>(recoded);
}

const std::vector<ThroughputEntry>& default_throughput_table() {
    static const std::vector<ThroughputEntry> table = {
        {3, 1, 1524.0}, {2, 2, 1092.2}, {3, 2, 1092.2}, {4, 4, 546.1}, {8, 8, 121.4},
    };
    return table;
}

double estimate_throughput(int rows, int cols, int in_bits, int w_bits,
                           const std::vector<ThroughputEntry>& table) {
    if (rows < 0 || cols < 0) {
        throw std::invalid_argument("throughput: dimensions must be nonnegative");
    }
    if (rows == 0 || cols == 0) return 0.0;
    for (const ThroughputEntry& e : table) {
        if (e.in_bits == in_bits && e.w_bits == w_bits) {
            return e.gops_256x512 * (static_cast<double>(rows) * cols) / (256.0 * 512.0);
        }
    }
    throw std::invalid_argument("throughput: no calibration for fixed-" +
                                std::to_string(in_bits) + "/fixed-" + std::to_string(w_bits));
}

ComparisonReport compare_schemes(const std::vector<std::uint32_t>& inputs,
                                 const std::vector<std::int32_t>& weights, int bits,
                                 const EnergyParams& ep, bool parallel) {
    ComparisonReport report;
    double binary_energy = 0.0;
    for (Scheme s : scheme_ladder()) {
        SchemeReport row;
        row.stats = parallel ? count_events(inputs, weights, s, bits)
                             : count_events_serial(inputs, weights, s, bits);
        row.ratio = row.stats.baseline_ratio();
        row.energy_joules = estimate_energy(row.stats, ep);
        if (s == Scheme::kBinary) binary_energy = row.energy_joules;
        row.saving_pct =
            binary_energy > 0.0 ? 100.0 * (1.0 - row.energy_joules / binary_energy) : 0.0;
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string ComparisonReport::to_csv() const {
    std::string out = "scheme,ratio,events,phases,energy_j,saving_pct\n";
    char line[256];
    for (const SchemeReport& r : rows) {
        std::snprintf(line, sizeof(line), "%s,%.6f,%lld,%lld,%.6e,%.2f\n",
                      scheme_name(r.stats.scheme).c_str(), r.ratio,
                      static_cast<long long>(r.stats.active_events),
                      static_cast<long long>(r.stats.phase_count), r.energy_joules, r.saving_pct);
        out += line;
    }
    return out;
}

std::string ComparisonReport::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const SchemeReport& r : rows) {
        j.push_back({{"scheme", scheme_name(r.stats.scheme)},
                     {"ratio", r.ratio},
                     {"ratio_scheme_normalized", ratio_one_one(r.stats)},
                     {"events", r.stats.active_events},
                     {"total_positions", r.stats.total_positions},
                     {"phases", r.stats.phase_count},
                     {"adc_conversions", r.stats.adc_conversions},
                     {"energy_j", r.energy_joules},
                     {"saving_pct", r.saving_pct}});
    }
    return j.dump(2);
}

}  // namespace cimforge
