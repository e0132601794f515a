// Phase-level simulation of the differential integrate / charge-redistribute
// MAC pipeline with an ideal SAR quantizer, plus the closed-form oracle.
//
// Each M-RD4 input digit costs six phases: integrate magnitude-1 rows into
// the positive circuit, then into the negative circuit, redistribute onto
// the sampling caps, and repeat for the magnitude-2 rows. Redistribution
// halves the distance to the integrator voltage, so the second (magnitude-2)
// integration of a digit carries twice the weight of the first and every
// later digit carries four times the weight of the one before it.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cimforge/crossbar.hpp"
#include "cimforge/device.hpp"
#include "cimforge/rd4.hpp"

namespace cimforge {

enum class PhaseKind { kIntegratePositive, kIntegrateNegative, kRedistribute };

struct SwitchState {
    bool s1 = false, s2 = false, s3 = false, s4 = false, s5 = false;
    bool sp = false, sn = false;
};

struct PhaseSpec {
    PhaseKind kind;
    int digit_index = 0;
    int magnitude = 0;  // 1 or 2 for integrations, 0 for redistribution
    SwitchState switches;
};

// The fixed per-word schedule: 4 integration + 2 redistribution phases per
// digit, digits consumed LSB-first.
std::vector<PhaseSpec> phase_schedule(int digit_count);

// A row driven during one integration phase and the input sign routing it:
// sign +1 feeds the phase's circuit through the weight plane matching the
// circuit polarity, sign -1 through the opposite plane.
struct ActiveRow {
    int row = 0;
    int sign = 1;
};

// Per-column, per-bit-line integration drops of one phase, plus saturation
// marks for drops that would cross ground.
struct PhaseDrops {
    int cols = 0;
    int bits = 0;
    std::vector<double> drop;  // [col * bits + bit], volts
    std::vector<std::uint8_t> saturated_col;

    double at(int col, int bit) const { return drop[static_cast<std::size_t>(col) * bits + bit]; }
};

// Column-parallel execution changes only the work split, never the
// per-cell accumulation order, so results are identical either way.
PhaseDrops integrate_phase(const CrossbarCore& core, const std::vector<ActiveRow>& active,
                           Polarity polarity, const DeviceParams& params, bool parallel = false);

// One charge-redistribution step: the integrator ladder (combined voltage
// v_comb) and the sampling cap share charge, C_S = C_f giving the 1/2 mix.
double redistribute_step(double v_comb, double v_sample_old, const DeviceParams& params,
                         double* charge_residual = nullptr);

// Combined ladder voltage: bit line j enters with weight 2^(j - bits).
double combine_bit_lines(const std::vector<double>& line_voltages, double vdd);

struct PhaseRecord {
    PhaseSpec spec;
    // Integration phases: line voltages of the integrated circuit after the
    // phase. Redistributions: sampling-cap voltages.
    std::vector<double> line_voltages;
    double v_comb = 0.0;
    double v_p = 0.0;
    double v_n = 0.0;
};

struct MacTrace {
    std::vector<PhaseRecord> phases;
    std::vector<double> v_p_steps;  // sampling voltages after each redistribution
    std::vector<double> v_n_steps;
    double v_out = 0.0;
    std::int32_t adc_code = 0;
    bool saturated = false;
    double max_charge_residual = 0.0;

    std::string to_json() const;
};

enum class InputEncoding { kMrd4, kRadix4 };

struct MacOptions {
    int input_bits = 8;
    InputEncoding encoding = InputEncoding::kMrd4;
    bool parallel = false;       // OpenMP across columns
    bool record_phases = true;   // keep per-phase records in the trace
};

// Run the full pipeline for every column of the core. inputs.size() must
// equal core.rows(). Inputs at or above 2^(input_bits-1) wrap to their
// two's-complement reading, exactly as the recoder hardware treats them.
std::vector<MacTrace> run_mac(const CrossbarCore& core, const std::vector<std::uint32_t>& inputs,
                              const DeviceParams& params, const MacOptions& opts = {});

// Closed-form ideal output, delta_v_cell * sum(x_i w_i) / (4^m * 2^n) with
// m = ceil(input_bits / 2) and n = weight_bits; no leakage, no parasitics.
double ideal_mac_voltage(const std::vector<std::uint32_t>& inputs,
                         const std::vector<std::int32_t>& weights, const DeviceParams& params,
                         int input_bits = 8, int weight_bits = 8);

enum class AdcRounding { kFloor, kSymmetric };

// code = floor(v / lsb) clamped to the signed adc_bits range; symmetric
// mode truncates toward zero instead so code(-v) = -code(v).
std::int32_t adc_quantize(double v_out, const DeviceParams& params,
                          AdcRounding rounding = AdcRounding::kFloor);

// Rescale a measured output voltage back to dot-product units.
double rescale_to_dot(double v_out, const DeviceParams& params, int input_bits = 8,
                      int weight_bits = 8);

}  // namespace cimforge
