// cimforge command line: encode values, trace MACs, run code-ladder sweeps
// and map networks onto cores.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cimforge/analysis.hpp"
#include "cimforge/config.hpp"
#include "cimforge/crossbar.hpp"
#include "cimforge/csd.hpp"
#include "cimforge/mac.hpp"
#include "cimforge/mapping.hpp"
#include "cimforge/oracle.hpp"
#include "cimforge/rd4.hpp"
#include "cimforge/tensor_io.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot write '" + path + "'");
    }
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_encode(std::int64_t value, int bits, const std::string& scheme) {
    using namespace cimforge;
    bool round_trip = false;
    int nnz = 0;
    std::string rendered;
    if (scheme == "rd4" || scheme == "mrd4") {
        if (value < 0 || value >= (std::int64_t{1} << bits)) {
            throw std::invalid_argument("value out of range for an unsigned " +
                                        std::to_string(bits) + "-bit input");
        }
        const std::uint32_t x = static_cast<std::uint32_t>(value);
        const Rd4Word w = scheme == "rd4" ? encode_radix4(x, bits) : encode_mrd4(x, bits);
        rendered = w.to_string();
        nnz = rd4_digit_stats(w).nonzero;
        round_trip = decode_rd4(w) == x;
    } else if (scheme == "csd" || scheme == "mcsd" || scheme == "diff") {
        const std::int32_t v = static_cast<std::int32_t>(value);
        const DifferentialWeight w = scheme == "csd"    ? encode_csd(v, bits)
                                     : scheme == "mcsd" ? encode_mcsd(v, bits)
                                                        : to_differential_naive(v, bits);
        rendered = "w_p=" + w.wp_string() + " w_n=" + w.wn_string();
        nnz = sd_digit_stats(w).nonzero;
        round_trip = decode_differential(w) == v;
    } else {
        throw CLI::ValidationError("--scheme", "unknown scheme '" + scheme + "'");
    }
    std::printf("%s\n", rendered.c_str());
    std::printf("nnz=%d round-trip=%s\n", nnz, round_trip ? "ok" : "MISMATCH");
    return round_trip ? kExitOk : kExitCheckFailed;
}

int cmd_mac(std::int64_t input, std::int64_t weight, const cimforge::SimConfig& cfg,
            double sigma_r, bool seed_set, std::uint64_t seed, const std::string& out_path) {
    using namespace cimforge;
    if (input < 0 || input > 255) {
        throw std::invalid_argument("--input must be an unsigned 8-bit value");
    }
    if (weight < -255 || weight > 255) {
        throw std::invalid_argument("--weight must fit 8-bit magnitude");
    }
    DeviceParams dp = cfg.device;
    if (sigma_r >= 0.0) dp.sigma_r = sigma_r;
    if (seed_set) dp.seed = seed;

    auto core = program_core({{static_cast<std::int32_t>(weight)}}, 8, dp, WeightScheme::kMcsd);
    if (dp.sigma_r > 0.0) core = apply_variation(core, dp);
    const auto traces = run_mac(core, {static_cast<std::uint32_t>(input)}, dp);
    const MacTrace& t = traces[0];

    const double ideal = ideal_mac_voltage({static_cast<std::uint32_t>(input)},
                                           {static_cast<std::int32_t>(weight)}, dp);
    const std::int64_t exact = exact_mac({static_cast<std::uint32_t>(input)},
                                         {static_cast<std::int32_t>(weight)});
    const double rel_err = ideal != 0.0 ? (t.v_out - ideal) / ideal : 0.0;
    std::printf("v_out       = %.6f mV\n", t.v_out * 1e3);
    std::printf("adc_code    = %d\n", t.adc_code);
    std::printf("exact_mac   = %lld (ideal %.6f mV)\n", static_cast<long long>(exact),
                ideal * 1e3);
    std::printf("rel_error   = %.5f%%\n", rel_err * 100.0);
    std::printf("saturated   = %s\n", t.saturated ? "yes" : "no");
    if (!out_path.empty()) {
        write_file(out_path, t.to_json());
        std::printf("trace written to %s\n", out_path.c_str());
    }
    return t.saturated ? kExitCheckFailed : kExitOk;
}

int cmd_sweep(std::size_t pairs, std::uint64_t seed, int bits, const std::string& out_path,
              const std::string& format, int threads, const std::vector<std::int64_t>& xs_flag,
              const std::vector<std::int64_t>& ws_flag, const std::string& inputs_file,
              const std::string& weights_file, const cimforge::SimConfig& cfg) {
    using namespace cimforge;
#if defined(_OPENMP)
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
    std::vector<std::uint32_t> xs;
    std::vector<std::int32_t> ws;
    if (!xs_flag.empty() || !ws_flag.empty()) {
        if (xs_flag.size() != ws_flag.size()) {
            throw std::invalid_argument("--x and --w must be given the same number of times");
        }
        for (std::size_t i = 0; i < xs_flag.size(); ++i) {
            xs.push_back(static_cast<std::uint32_t>(xs_flag[i]));
            ws.push_back(static_cast<std::int32_t>(ws_flag[i]));
        }
    } else if (!inputs_file.empty() || !weights_file.empty()) {
        if (inputs_file.empty() || weights_file.empty()) {
            throw std::invalid_argument("--inputs-file and --weights-file go together");
        }
        xs = tensor_from_json(read_file(inputs_file)).as_uint8();
        const auto w8 = tensor_from_json(read_file(weights_file)).as_int8();
        ws.assign(w8.begin(), w8.end());
        if (xs.size() != ws.size()) {
            throw std::invalid_argument("input and weight tensors must have equal length");
        }
    } else {
        xs = synth_inputs(pairs, bits, seed);
        ws = synth_weights(pairs, bits, seed + 1);
    }

    const ComparisonReport rep = compare_schemes(xs, ws, bits, cfg.energy);
    const std::string text = format == "json" ? rep.to_json() : rep.to_csv();
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        write_file(out_path, text);
        std::printf("report written to %s (%zu pairs)\n", out_path.c_str(), xs.size());
    }
    return kExitOk;
}

int cmd_map(const std::string& net_path, const std::string& out_path, const std::string& format) {
    using namespace cimforge;
    const auto layers = layers_from_json(read_file(net_path));
    const MappingReport rep = map_network(layers);
    const std::string text = format == "json" ? rep.to_json() : rep.to_csv();
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        if (format != "json") std::printf("total cores: %lld\n",
                                          static_cast<long long>(rep.total_cores));
    } else {
        write_file(out_path, text);
        std::printf("report written to %s\n", out_path.c_str());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"behavioral simulator for a booth-encoded differential in-memory MAC core"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (or $CIM_FORGE_CONFIG)");

    // encode
    auto* encode = app.add_subcommand("encode", "recode a value and count nonzero digits");
    std::int64_t value = 0;
    int bits = 8;
    std::string scheme = "mrd4";
    encode->add_option("value", value, "value to encode")->required();
    encode->add_option("--bits", bits, "source bit width")->check(CLI::Range(1, 16));
    encode->add_option("--scheme", scheme, "rd4|mrd4|csd|mcsd|diff");

    // mac
    auto* mac = app.add_subcommand("mac", "trace one multiply-accumulate");
    std::int64_t input = 125;
    std::int64_t weight = 123;
    double sigma_r = -1.0;
    std::uint64_t seed = 0;
    std::string out_path;
    mac->add_option("--input", input, "unsigned activation (128..255 wrap to the signed reading)");
    mac->add_option("--weight", weight, "signed weight");
    mac->add_option("--sigma-r", sigma_r, "device variation spread");
    mac->add_option("--seed", seed, "variation seed");
    mac->add_option("--out", out_path, "trace JSON path");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "compare code schemes over a workload");
    std::size_t pairs = 100000;
    std::uint64_t sweep_seed = 1;
    int sweep_bits = 8;
    std::string sweep_out;
    std::string format = "csv";
    int threads = 0;
    std::vector<std::int64_t> xs_flag, ws_flag;
    std::string inputs_file, weights_file;
    sweep->add_option("--pairs", pairs, "synthetic pair count");
    sweep->add_option("--seed", sweep_seed, "synthesis seed");
    sweep->add_option("--bits", sweep_bits, "data width")->check(CLI::Range(2, 16));
    sweep->add_option("--out", sweep_out, "report path");
    sweep->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--threads", threads, "worker threads (0 = default)");
    sweep->add_option("--x", xs_flag, "explicit input value (repeatable)");
    sweep->add_option("--w", ws_flag, "explicit weight value (repeatable)");
    sweep->add_option("--inputs-file", inputs_file, "input tensor manifest");
    sweep->add_option("--weights-file", weights_file, "weight tensor manifest");

    // map
    auto* map_cmd = app.add_subcommand("map", "tile a network onto cores");
    std::string net_path, map_out, map_format = "csv";
    map_cmd->add_option("--net", net_path, "layer list JSON")->required();
    map_cmd->add_option("--out", map_out, "report path");
    map_cmd->add_option("--format", map_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    // config
    auto* config_cmd = app.add_subcommand("config", "inspect configuration");
    bool dump = false;
    config_cmd->add_flag("--dump", dump, "print the effective config JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const cimforge::SimConfig cfg = cimforge::SimConfig::load(config_path);
        if (encode->parsed()) return cmd_encode(value, bits, scheme);
        if (mac->parsed()) {
            return cmd_mac(input, weight, cfg, sigma_r, mac->count("--seed") > 0, seed, out_path);
        }
        if (sweep->parsed()) {
            return cmd_sweep(pairs, sweep_seed, sweep_bits, sweep_out, format, threads, xs_flag,
                             ws_flag, inputs_file, weights_file, cfg);
        }
        if (map_cmd->parsed()) return cmd_map(net_path, map_out, map_format);
        if (config_cmd->parsed()) {
            std::fputs((cfg.to_json() + "\n").c_str(), stdout);
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCheckFailed;
    }
    return kExitUsage;
}
