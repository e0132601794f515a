#include "cimforge/mac.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace cimforge {

namespace {

SwitchState integrate_switches(Polarity pol) {
    SwitchState s;
    s.s1 = true;  // input applied
    s.sp = pol == Polarity::kPositive;
    s.sn = pol == Polarity::kNegative;
    return s;
}

SwitchState redistribute_switches() {
    SwitchState s;
    s.s4 = true;
    s.s5 = true;
    return s;
}

}  // namespace

std::vector<PhaseSpec> phase_schedule(int digit_count) {
    if (digit_count < 1) {
        throw std::invalid_argument("mac: schedule needs at least one digit");
    }
    std::vector<PhaseSpec> phases;
    phases.reserve(static_cast<std::size_t>(digit_count) * 6);
    for (int d = 0; d < digit_count; ++d) {
        for (int mag : {1, 2}) {
            phases.push_back({PhaseKind::kIntegratePositive, d, mag,
                              integrate_switches(Polarity::kPositive)});
            phases.push_back({PhaseKind::kIntegrateNegative, d, mag,
                              integrate_switches(Polarity::kNegative)});
            phases.push_back({PhaseKind::kRedistribute, d, 0, redistribute_switches()});
        }
    }
    return phases;
}

PhaseDrops integrate_phase(const CrossbarCore& core, const std::vector<ActiveRow>& active,
                           Polarity polarity, const DeviceParams& params, bool parallel) {
    const double k = params.v_b_volts * params.t_int_seconds / params.c_f_farads;
    PhaseDrops out;
    out.cols = core.cols();
    out.bits = core.weight_bits();
    out.drop.assign(static_cast<std::size_t>(out.cols) * out.bits, 0.0);
    out.saturated_col.assign(static_cast<std::size_t>(out.cols), 0);

    for (const ActiveRow& ar : active) {
        if (ar.row < 0 || ar.row >= core.rows()) {
            throw std::invalid_argument("mac: active row index out of range");
        }
    }

    auto column_drops = [&](int c) {
        for (const ActiveRow& ar : active) {
            // A +1 row reaches this circuit through the like-signed weight
            // plane, a -1 row through the opposite one.
            const bool like = (ar.sign > 0) == (polarity == Polarity::kPositive);
            const Polarity plane = like ? Polarity::kPositive : Polarity::kNegative;
            for (int b = 0; b < out.bits; ++b) {
                out.drop[static_cast<std::size_t>(c) * out.bits + b] +=
                    k * core.conductance(ar.row, c, b, plane);
            }
        }
        for (int b = 0; b < out.bits; ++b) {
            double& d = out.drop[static_cast<std::size_t>(c) * out.bits + b];
            if (d > params.vdd_volts) {
                d = params.vdd_volts;  // integrator pinned at ground
                out.saturated_col[static_cast<std::size_t>(c)] = 1;
            }
        }
    };

    if (parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
        for (int c = 0; c < out.cols; ++c) column_drops(c);
    } else {
        for (int c = 0; c < out.cols; ++c) column_drops(c);
    }
    return out;
}

double combine_bit_lines(const std::vector<double>& line_voltages, double vdd) {
    const int bits = static_cast<int>(line_voltages.size());
    double delta = 0.0;
    for (int j = 0; j < bits; ++j) {
        delta += std::ldexp(vdd - line_voltages[static_cast<std::size_t>(j)], j - bits);
    }
    return vdd - delta;
}

double redistribute_step(double v_comb, double v_sample_old, const DeviceParams& params,
                         double* charge_residual) {
    // Charge sharing between the ladder (effective C_f) and C_S.
    const double cf = params.c_f_farads;
    const double cs = params.c_s_farads;
    const double v_shared = (cf * v_comb + cs * v_sample_old) / (cf + cs);
    if (charge_residual != nullptr) {
        const double before = cf * v_comb + cs * v_sample_old;
        const double after = (cf + cs) * v_shared;
        *charge_residual = std::abs(before - after) / (std::abs(before) + 1e-300);
    }
    if (params.redistribution_loss >= 1.0) return v_shared;
    return params.vdd_volts -
           params.redistribution_loss * (params.vdd_volts - v_shared);
}

namespace {

struct DigitPlan {
    std::vector<ActiveRow> mag1;
    std::vector<ActiveRow> mag2;
};

std::vector<DigitPlan> plan_digits(const std::vector<std::uint32_t>& inputs,
                                   const MacOptions& opts) {
    std::vector<Rd4Word> words;
    words.reserve(inputs.size());
    for (std::uint32_t x : inputs) {
        words.push_back(opts.encoding == InputEncoding::kMrd4 ? encode_mrd4(x, opts.input_bits)
                                                              : encode_radix4(x, opts.input_bits));
    }
    const std::size_t m = words.front().size();
    std::vector<DigitPlan> plans(m);
    for (std::size_t d = 0; d < m; ++d) {
        for (std::size_t r = 0; r < words.size(); ++r) {
            const int z = words[r].digit_value(d);
            if (z == 0) continue;
            ActiveRow ar{static_cast<int>(r), z > 0 ? 1 : -1};
            if (z == 2 || z == -2) {
                plans[d].mag2.push_back(ar);
            } else {
                plans[d].mag1.push_back(ar);
            }
        }
    }
    return plans;
}

}  // namespace

std::vector<MacTrace> run_mac(const CrossbarCore& core, const std::vector<std::uint32_t>& inputs,
                              const DeviceParams& params, const MacOptions& opts) {
    params.validate();
    if (static_cast<int>(inputs.size()) != core.rows()) {
        throw std::invalid_argument("mac: input length must equal core row count");
    }
    const std::vector<DigitPlan> plans = plan_digits(inputs, opts);
    const int m = static_cast<int>(plans.size());
    const std::vector<PhaseSpec> schedule = phase_schedule(m);
    const double vdd = params.vdd_volts;
    const int bits = core.weight_bits();

    // Precompute the per-phase drops once; every column shares them. The
    // integration phases are independent of each other, so they form the
    // parallel grain.
    std::vector<PhaseDrops> drops(schedule.size());
    std::vector<int> integration_indices;
    for (std::size_t pi = 0; pi < schedule.size(); ++pi) {
        if (schedule[pi].kind != PhaseKind::kRedistribute) {
            integration_indices.push_back(static_cast<int>(pi));
        }
    }
    auto compute_drops = [&](int pi) {
        const PhaseSpec& ph = schedule[static_cast<std::size_t>(pi)];
        const DigitPlan& plan = plans[static_cast<std::size_t>(ph.digit_index)];
        const std::vector<ActiveRow>& active = ph.magnitude == 1 ? plan.mag1 : plan.mag2;
        const Polarity pol = ph.kind == PhaseKind::kIntegratePositive ? Polarity::kPositive
                                                                      : Polarity::kNegative;
        drops[static_cast<std::size_t>(pi)] = integrate_phase(core, active, pol, params);
    };
    if (opts.parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 1)
#endif
        for (std::size_t i = 0; i < integration_indices.size(); ++i) {
            compute_drops(integration_indices[i]);
        }
    } else {
        for (int pi : integration_indices) compute_drops(pi);
    }

    std::vector<MacTrace> traces(static_cast<std::size_t>(core.cols()));
    auto simulate_column = [&](int c) {
        MacTrace& tr = traces[static_cast<std::size_t>(c)];
        std::vector<double> line_p(static_cast<std::size_t>(bits), vdd);
        std::vector<double> line_n(static_cast<std::size_t>(bits), vdd);
        double v_p = vdd;  // sampling caps reset to Vdd
        double v_n = vdd;
        for (std::size_t pi = 0; pi < schedule.size(); ++pi) {
            const PhaseSpec& ph = schedule[pi];
            PhaseRecord rec;
            rec.spec = ph;
            if (ph.kind == PhaseKind::kRedistribute) {
                double res_p = 0.0, res_n = 0.0;
                const double comb_p = combine_bit_lines(line_p, vdd);
                const double comb_n = combine_bit_lines(line_n, vdd);
                v_p = redistribute_step(comb_p, v_p, params, &res_p);
                v_n = redistribute_step(comb_n, v_n, params, &res_n);
                tr.max_charge_residual = std::max({tr.max_charge_residual, res_p, res_n});
                tr.v_p_steps.push_back(v_p);
                tr.v_n_steps.push_back(v_n);
                rec.v_comb = comb_p;
                if (opts.record_phases) rec.line_voltages = {v_p, v_n};
            } else {
                const PhaseDrops& dr = drops[pi];
                std::vector<double>& line =
                    ph.kind == PhaseKind::kIntegratePositive ? line_p : line_n;
                if (dr.saturated_col[static_cast<std::size_t>(c)]) tr.saturated = true;
                for (int b = 0; b < bits; ++b) {
                    line[static_cast<std::size_t>(b)] = vdd - dr.at(c, b);  // reset then integrate
                }
                rec.v_comb = combine_bit_lines(line, vdd);
                if (opts.record_phases) rec.line_voltages = line;
            }
            rec.v_p = v_p;
            rec.v_n = v_n;
            if (opts.record_phases) tr.phases.push_back(std::move(rec));
        }
        tr.v_out = (vdd - v_p) - (vdd - v_n);
        tr.adc_code = adc_quantize(tr.v_out, params);
    };

    if (opts.parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
        for (int c = 0; c < core.cols(); ++c) simulate_column(c);
    } else {
        for (int c = 0; c < core.cols(); ++c) simulate_column(c);
    }
    return traces;
}

double ideal_mac_voltage(const std::vector<std::uint32_t>& inputs,
                         const std::vector<std::int32_t>& weights, const DeviceParams& params,
                         int input_bits, int weight_bits) {
    if (inputs.size() != weights.size()) {
        throw std::invalid_argument("mac: input/weight length mismatch");
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        dot += static_cast<double>(inputs[i]) * static_cast<double>(weights[i]);
    }
    const int m = (input_bits + 1) / 2;
    return params.delta_v_cell() * dot / std::ldexp(1.0, 2 * m + weight_bits);
}

std::int32_t adc_quantize(double v_out, const DeviceParams& params, AdcRounding rounding) {
    const double lsb = params.adc_lsb();
    double q = v_out / lsb;
    double code = rounding == AdcRounding::kFloor ? std::floor(q) : std::trunc(q);
    const double lo = -std::ldexp(1.0, params.adc_bits - 1);
    const double hi = std::ldexp(1.0, params.adc_bits - 1) - 1.0;
    if (code < lo) code = lo;
    if (code > hi) code = hi;
    return static_cast<std::int32_t>(code);
}

double rescale_to_dot(double v_out, const DeviceParams& params, int input_bits, int weight_bits) {
    const int m = (input_bits + 1) / 2;
    return v_out * std::ldexp(1.0, 2 * m + weight_bits) / params.delta_v_cell();
}

std::string MacTrace::to_json() const {
    nlohmann::json j;
    j["v_out_volts"] = v_out;
    j["adc_code"] = adc_code;
    j["saturated"] = saturated;
    j["max_charge_residual"] = max_charge_residual;
    j["v_p_steps_volts"] = v_p_steps;
    j["v_n_steps_volts"] = v_n_steps;
    nlohmann::json phases_json = nlohmann::json::array();
    for (const PhaseRecord& rec : phases) {
        nlohmann::json p;
        switch (rec.spec.kind) {
            case PhaseKind::kIntegratePositive: p["phase"] = "integrate_positive"; break;
            case PhaseKind::kIntegrateNegative: p["phase"] = "integrate_negative"; break;
            case PhaseKind::kRedistribute: p["phase"] = "redistribute"; break;
        }
        p["digit"] = rec.spec.digit_index;
        if (rec.spec.magnitude != 0) p["magnitude"] = rec.spec.magnitude;
        p["switches"] = {{"s1", rec.spec.switches.s1}, {"s2", rec.spec.switches.s2},
                         {"s3", rec.spec.switches.s3}, {"s4", rec.spec.switches.s4},
                         {"s5", rec.spec.switches.s5}, {"sp", rec.spec.switches.sp},
                         {"sn", rec.spec.switches.sn}};
        p["voltages_volts"] = rec.line_voltages;
        p["v_comb_volts"] = rec.v_comb;
        p["v_p_volts"] = rec.v_p;
        p["v_n_volts"] = rec.v_n;
        phases_json.push_back(std::move(p));
    }
    j["phases"] = std::move(phases_json);
    return j.dump(2);
}

}  // namespace cimforge
