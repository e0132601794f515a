// Analog model constants for the differential 1R1T core.
#pragma once

#include <cstdint>

namespace cimforge {

// All values in SI units. delta_v_cell() is the integration drop one LRS
// cell produces in one phase, V_B * T_int / (C_f * R_L); the reference
// calibration pins it to 254.6 mV on a single-row core and scales C_f with
// the row count so that a fully active column can never drive an
// integrator below ground.
struct DeviceParams {
    double r_h_ohms = 1e10;
    double r_l_ohms = 1e7;
    double c_f_farads = 5.891594657502e-15;
    double c_s_farads = 5.891594657502e-15;
    double v_b_volts = 1.0;
    double t_int_seconds = 15e-9;
    double vdd_volts = 1.0;
    int adc_bits = 8;
    double adc_lsb_volts = 0.0;  // 0 = derive as delta_v_cell / 2^adc_bits
    double sigma_r = 0.0;        // lognormal spread of cell resistances
    std::uint64_t seed = 1;
    double redistribution_loss = 1.0;  // per-step charge transfer efficiency

    double delta_v_cell() const { return v_b_volts * t_int_seconds / (c_f_farads * r_l_ohms); }
    double adc_lsb() const;

    // Throws std::invalid_argument on inconsistent values
    // (needs R_H > R_L > 0, C_f > 0, delta_v_cell < Vdd, ...).
    void validate() const;

    // Reference calibration for a core with the given row count.
    static DeviceParams reference(int rows = 1);
};

}  // namespace cimforge
