#include "cimforge/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace cimforge {

std::string SimConfig::to_json() const {
    nlohmann::json j;
    j["rows"] = rows;
    j["device"] = {
        {"r_h_ohms", device.r_h_ohms},
        {"r_l_ohms", device.r_l_ohms},
        {"c_f_farads", device.c_f_farads},
        {"c_s_farads", device.c_s_farads},
        {"v_b_volts", device.v_b_volts},
        {"t_int_seconds", device.t_int_seconds},
        {"vdd_volts", device.vdd_volts},
        {"adc_bits", device.adc_bits},
        {"adc_lsb_volts", device.adc_lsb_volts},
        {"sigma_r", device.sigma_r},
        {"seed", device.seed},
        {"redistribution_loss", device.redistribution_loss},
        {"delta_v_cell_volts", device.delta_v_cell()},  // derived, informational
    };
    j["energy"] = {
        {"e_event_joules", energy.e_event_joules},
        {"e_phase_joules", energy.e_phase_joules},
        {"e_adc_joules", energy.e_adc_joules},
        {"e_recode_joules", energy.e_recode_joules},
    };
    nlohmann::json table = nlohmann::json::array();
    for (const ThroughputEntry& e : throughput) {
        table.push_back(
            {{"in_bits", e.in_bits}, {"w_bits", e.w_bits}, {"gops_256x512", e.gops_256x512}});
    }
    j["throughput"] = std::move(table);
    return j.dump(2);
}

SimConfig SimConfig::from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config: not valid JSON: ") + e.what());
    }
    SimConfig cfg;
    try {
        cfg.rows = j.value("rows", 1);
        cfg.device = DeviceParams::reference(cfg.rows);
        if (j.contains("device")) {
            const nlohmann::json& d = j["device"];
            cfg.device.r_h_ohms = d.value("r_h_ohms", cfg.device.r_h_ohms);
            cfg.device.r_l_ohms = d.value("r_l_ohms", cfg.device.r_l_ohms);
            cfg.device.c_f_farads = d.value("c_f_farads", cfg.device.c_f_farads);
            cfg.device.c_s_farads = d.value("c_s_farads", cfg.device.c_f_farads);
            cfg.device.v_b_volts = d.value("v_b_volts", cfg.device.v_b_volts);
            cfg.device.t_int_seconds = d.value("t_int_seconds", cfg.device.t_int_seconds);
            cfg.device.vdd_volts = d.value("vdd_volts", cfg.device.vdd_volts);
            cfg.device.adc_bits = d.value("adc_bits", cfg.device.adc_bits);
            cfg.device.adc_lsb_volts = d.value("adc_lsb_volts", cfg.device.adc_lsb_volts);
            cfg.device.sigma_r = d.value("sigma_r", cfg.device.sigma_r);
            cfg.device.seed = d.value("seed", cfg.device.seed);
            cfg.device.redistribution_loss =
                d.value("redistribution_loss", cfg.device.redistribution_loss);
        }
        if (j.contains("energy")) {
            const nlohmann::json& e = j["energy"];
            cfg.energy.e_event_joules = e.value("e_event_joules", cfg.energy.e_event_joules);
            cfg.energy.e_phase_joules = e.value("e_phase_joules", cfg.energy.e_phase_joules);
            cfg.energy.e_adc_joules = e.value("e_adc_joules", cfg.energy.e_adc_joules);
            cfg.energy.e_recode_joules = e.value("e_recode_joules", cfg.energy.e_recode_joules);
        }
        if (j.contains("throughput")) {
            cfg.throughput.clear();
            for (const nlohmann::json& row : j["throughput"]) {
                cfg.throughput.push_back({row.at("in_bits").get<int>(),
                                          row.at("w_bits").get<int>(),
                                          row.at("gops_256x512").get<double>()});
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config: bad field: ") + e.what());
    }
    cfg.device.validate();
    cfg.energy.validate();
    return cfg;
}

SimConfig SimConfig::load(const std::string& path) {
    std::string effective = path;
    if (effective.empty()) {
        if (const char* env = std::getenv("CIM_FORGE_CONFIG")) effective = env;
    }
    if (effective.empty()) return SimConfig{};
    std::ifstream in(effective);
    if (!in) {
        throw std::invalid_argument("config: cannot open '" + effective + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

}  // namespace cimforge
