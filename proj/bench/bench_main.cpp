// Timing comparison of the serial reference kernels against the
// OpenMP-parallel ones, with a cross-check that both produce identical
// results.
#include <chrono>
#include <cstdio>
#include <vector>

#include "cimforge/analysis.hpp"
#include "cimforge/crossbar.hpp"
#include "cimforge/mac.hpp"
#include "cimforge/oracle.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

using namespace cimforge;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void bench_counting(std::size_t pairs) {
    const auto xs = synth_inputs(pairs, 8, 1);
    const auto ws = synth_weights(pairs, 8, 2);

    auto t0 = Clock::now();
    std::int64_t serial_events = 0;
    for (Scheme s : scheme_ladder()) {
        serial_events += count_events_serial(xs, ws, s, 8).active_events;
    }
    const double t_serial = seconds_since(t0);

    t0 = Clock::now();
    std::int64_t parallel_events = 0;
    for (Scheme s : scheme_ladder()) {
        parallel_events += count_events(xs, ws, s, 8).active_events;
    }
    const double t_parallel = seconds_since(t0);

    const bool match = serial_events == parallel_events;
    std::printf("count_events  %9zu pairs   serial %7.3f s   parallel %7.3f s   x%.2f  %s\n",
                pairs, t_serial, t_parallel, t_serial / t_parallel,
                match ? "match" : "MISMATCH");
}

void bench_mac(int rows, int cols, int reps) {
    const DeviceParams dp = DeviceParams::reference(rows);
    const auto ws = synth_weights(static_cast<std::size_t>(rows) * cols, 8, 3);
    std::vector<std::vector<std::int32_t>> w(rows, std::vector<std::int32_t>(cols));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) w[r][c] = ws[static_cast<std::size_t>(r) * cols + c];
    }
    const auto core = program_core(w, 8, dp, WeightScheme::kMcsd);

    auto run_reps = [&](bool parallel) {
        double volt_sum = 0.0;
        for (int rep = 0; rep < reps; ++rep) {
            auto xs = synth_inputs(static_cast<std::size_t>(rows), 8,
                                   4 + static_cast<std::uint64_t>(rep));
            for (auto& x : xs) x &= 127;
            const auto traces =
                run_mac(core, xs, dp, {.parallel = parallel, .record_phases = false});
            for (const auto& t : traces) volt_sum += t.v_out;
        }
        return volt_sum;
    };

    run_reps(false);  // warmup
    auto t0 = Clock::now();
    const double serial_sum = run_reps(false);
    const double t_serial = seconds_since(t0);

    t0 = Clock::now();
    const double parallel_sum = run_reps(true);
    const double t_parallel = seconds_since(t0);

    std::printf(
        "run_mac       %4dx%-4d x%-4d    serial %7.3f s   parallel %7.3f s   x%.2f  %s\n", rows,
        cols, reps, t_serial, t_parallel, t_serial / t_parallel,
        serial_sum == parallel_sum ? "match" : "MISMATCH");
}

}  // namespace

int main() {
#if defined(_OPENMP)
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; parallel paths fall back to serial\n");
#endif
    bench_counting(2000000);
    bench_mac(256, 256, 100);
    return 0;
}
