// Simulator configuration: device constants, energy constants and the
// throughput calibration table, with JSON round-trip.
#pragma once

#include <string>

#include "cimforge/analysis.hpp"
#include "cimforge/device.hpp"

namespace cimforge {

struct SimConfig {
    int rows = 1;  // row count the device constants are sized for
    DeviceParams device = DeviceParams::reference(1);
    EnergyParams energy;
    std::vector<ThroughputEntry> throughput = default_throughput_table();

    std::string to_json() const;
    static SimConfig from_json(const std::string& json_text);

    // Reads the file if path is nonempty, else $CIM_FORGE_CONFIG if set,
    // else returns defaults.
    static SimConfig load(const std::string& path);
};

}  // namespace cimforge
