// Activity counting and relative energy / throughput estimation across
// input/weight code combinations.
//
// An active event is a nonzero input digit meeting a nonzero weight digit
// (one low-resistance cell driven). Two normalizations are reported:
//   * ratio_one_one(stats): events over the scheme's own digit-position
//     pairs (booth words have ceil(n/2) input digits).
//   * OpStats::baseline_ratio(): events over the n x n digit-position
//     slots of the binary baseline, which is the figure the code-ladder
//     comparisons use. The two coincide for the binary scheme.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cimforge {

enum class Scheme {
    kBinary,        // binary input bits, naive differential weights
    kRadix4Binary,  // radix-4 input, naive differential weights
    kMrd4Binary,    // M-RD4 input, naive differential weights
    kMrd4Csd,       // M-RD4 input, CSD-recoded stored words
    kMrd4Mcsd,      // M-RD4 input, M-CSD weights
};

const std::vector<Scheme>& scheme_ladder();
std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct OpStats {
    Scheme scheme = Scheme::kBinary;
    std::int64_t pairs = 0;
    std::int64_t total_positions = 0;     // scheme digit-position pairs
    std::int64_t baseline_positions = 0;  // n*n slots per pair
    std::int64_t active_events = 0;
    std::int64_t phase_count = 0;
    std::int64_t adc_conversions = 0;
    std::int64_t input_words = 0;  // nonzero input words recoded

    double baseline_ratio() const {
        return baseline_positions > 0
                   ? static_cast<double>(active_events) / static_cast<double>(baseline_positions)
                   : 0.0;
    }

    OpStats& merge(const OpStats& other);
};

// Count activity for pairwise products (inputs[i], weights[i]). The
// parallel flavor partitions pairs across OpenMP threads; counters are
// integers, so merged results equal the serial ones exactly.
OpStats count_events(const std::vector<std::uint32_t>& inputs,
                     const std::vector<std::int32_t>& weights, Scheme scheme, int bits);
OpStats count_events_serial(const std::vector<std::uint32_t>& inputs,
                            const std::vector<std::int32_t>& weights, Scheme scheme, int bits);

// active_events / total_positions
double ratio_one_one(const OpStats& stats);

// Per-count energy constants, joules. The defaults are calibrated so a
// fully loaded 256x512 core running the synthetic reference workload
// matches the characterized 2.00 mW at 16.7 MHz core figure, with the binary-coded rung
// landing near the 3.61 mW baseline; only relative comparisons are
// meaningful.
struct EnergyParams {
    double e_event_joules = 2.2556e-15;
    double e_phase_joules = 9.662e-14;
    double e_adc_joules = 8.44e-15;
    double e_recode_joules = 5.0e-15;

    void validate() const;
};

double estimate_energy(const OpStats& stats, const EnergyParams& ep);

// Per-precision throughput at the 256x512 reference array; other
// geometries scale by rows*cols. ops = 2 * rows * cols per conversion.
struct ThroughputEntry {
    int in_bits = 0;
    int w_bits = 0;
    double gops_256x512 = 0.0;
};

const std::vector<ThroughputEntry>& default_throughput_table();

double estimate_throughput(int rows, int cols, int in_bits, int w_bits,
                           const std::vector<ThroughputEntry>& table = default_throughput_table());

struct SchemeReport {
    OpStats stats;
    double ratio = 0.0;  // baseline-normalized activity ratio
    double energy_joules = 0.0;
    double saving_pct = 0.0;  // energy saving relative to the binary rung
};

struct ComparisonReport {
    std::vector<SchemeReport> rows;  // fixed ladder order

    std::string to_csv() const;
    std::string to_json() const;
};

ComparisonReport compare_schemes(const std::vector<std::uint32_t>& inputs,
                                 const std::vector<std::int32_t>& weights, int bits,
                                 const EnergyParams& ep, bool parallel = true);

}  // namespace cimforge
