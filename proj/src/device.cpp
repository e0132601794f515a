#include "cimforge/device.hpp"

#include <cmath>
#include <stdexcept>

namespace cimforge {

namespace {
constexpr double kReferenceCellDrop = 0.2546;  // volts, single-row calibration
}

double DeviceParams::adc_lsb() const {
    if (adc_lsb_volts > 0.0) return adc_lsb_volts;
    return delta_v_cell() / static_cast<double>(1 << adc_bits);
}

void DeviceParams::validate() const {
    if (!(r_h_ohms > r_l_ohms) || !(r_l_ohms > 0.0)) {
        throw std::invalid_argument("device: need R_H > R_L > 0");
    }
    if (!(c_f_farads > 0.0) || !(c_s_farads > 0.0)) {
        throw std::invalid_argument("device: capacitances must be positive");
    }
    if (!(t_int_seconds > 0.0) || !(v_b_volts > 0.0) || !(vdd_volts > 0.0)) {
        throw std::invalid_argument("device: V_B, T_int and Vdd must be positive");
    }
    if (adc_bits < 1 || adc_bits > 24) {
        throw std::invalid_argument("device: adc_bits must be in [1, 24]");
    }
    if (sigma_r < 0.0) {
        throw std::invalid_argument("device: sigma_r must be nonnegative");
    }
    if (redistribution_loss <= 0.0 || redistribution_loss > 1.0) {
        throw std::invalid_argument("device: redistribution_loss must be in (0, 1]");
    }
    if (!(delta_v_cell() < vdd_volts)) {
        throw std::invalid_argument("device: single-cell drop must stay below Vdd");
    }
}

DeviceParams DeviceParams::reference(int rows) {
    if (rows < 1) {
        throw std::invalid_argument("device: row count must be positive");
    }
    DeviceParams p;
    // Size the integration caps so `rows` concurrent LRS cells on one bit
    // line swing exactly the single-row reference drop.
    p.c_f_farads = static_cast<double>(rows) * p.v_b_volts * p.t_int_seconds /
                   (p.r_l_ohms * kReferenceCellDrop);
    p.c_s_farads = p.c_f_farads;
    return p;
}

}  // namespace cimforge
