// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator
// Command line front end; talks to the simulator exclusively through the
// C API in sra.h. Exit codes: 0 success, 1 usage/validation error,
// 2 runtime failure.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sra.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

int exit_code_for(sra_status status) {
    switch (status) {
        case SRA_OK:
            return kExitOk;
        case SRA_ERROR_INVALID_ARGUMENT:
        case SRA_ERROR_PARSE:
        case SRA_ERROR_DOMAIN:
            return kExitValidation;
        default:
            return kExitRuntime;
    }
}

int report(sra_status status, const std::string& context) {
    if (status == SRA_OK) return kExitOk;
    std::cerr << "error: " << context << ": " << sra_status_message(status);
    const std::string detail = sra_last_error();
    if (!detail.empty()) std::cerr << " (" << detail << ")";
    std::cerr << "\n";
    return exit_code_for(status);
}

// Bad config input is a validation failure regardless of the status kind.
int report_config_error(sra_status status, const std::string& context) {
    report(status, context);
    return kExitValidation;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size())
            throw std::invalid_argument("not a number: '" + item + "'");
        values.push_back(v);
    }
    if (values.empty()) throw std::invalid_argument("empty list");
    return values;
}

// Single values broadcast to all tentacles.
std::vector<double> broadcast(std::vector<double> values, int tentacles) {
    if (static_cast<int>(values.size()) == 1)
        values.assign(tentacles, values[0]);
    if (static_cast<int>(values.size()) != tentacles)
        throw std::invalid_argument("expected 1 or " +
                                    std::to_string(tentacles) + " values");
    return values;
}

struct ConfigHandle {
    sra_config* ptr = nullptr;
    ~ConfigHandle() { sra_config_free(ptr); }
};

int run_validate(const std::string& config_path) {
    ConfigHandle config;
    const sra_status status =
        sra_config_parse_file(config_path.c_str(), &config.ptr);
    if (status != SRA_OK)
        return report_config_error(status, "validating " + config_path);
    std::cout << config_path << ": ok\n";
    return kExitOk;
}

int run_sweep_command(const std::string& config_path, bool has_seed,
                      std::uint64_t seed, const std::string& out_dir) {
    ConfigHandle config;
    sra_status status = sra_config_parse_file(config_path.c_str(), &config.ptr);
    if (status != SRA_OK)
        return report_config_error(status, "loading " + config_path);
    if (has_seed) sra_config_set_base_seed(config.ptr, seed);

    std::string out_path = sra_config_output_path(config.ptr);
    if (!out_dir.empty()) {
        const size_t slash = out_path.find_last_of('/');
        const std::string base =
            slash == std::string::npos ? out_path : out_path.substr(slash + 1);
        out_path = out_dir + "/" + base;
    }

    sra_sweep_result* result = nullptr;
    status = sra_sweep_run(config.ptr, &result);
    if (status != SRA_OK) return report(status, "running sweep");

    status = sra_sweep_write_csv(result, out_path.c_str());
    if (status != SRA_OK) {
        sra_sweep_result_free(result);
        return report(status, "writing " + out_path);
    }

    for (size_t i = 0; i < sra_sweep_row_count(result); ++i) {
        sra_sweep_row row;
        sra_sweep_row_get(result, i, &row);
        std::printf("%-7s %s=%-8g mean=%-10.4f std=%-9.4f n=%d failures=%d\n",
                    row.architecture, row.sweep_axis, row.sweep_value,
                    row.mean_rate, row.std_rate, row.realizations,
                    row.failures);
    }
    std::cout << "wrote " << out_path << "\n";
    sra_sweep_result_free(result);
    return kExitOk;
}

int run_trace_command(const std::string& config_path, std::uint64_t realization,
                      const std::string& out_path) {
    ConfigHandle config;
    sra_status status = sra_config_parse_file(config_path.c_str(), &config.ptr);
    if (status != SRA_OK)
        return report_config_error(status, "loading " + config_path);

    sra_trace* trace = nullptr;
    status = sra_trace_run(config.ptr, realization, &trace);
    if (status != SRA_OK) return report(status, "running optimizer");

    status = sra_trace_write_csv(trace, out_path.c_str());
    if (status != SRA_OK) {
        sra_trace_free(trace);
        return report(status, "writing " + out_path);
    }
    std::cout << "final sum rate " << sra_trace_final_rate(trace) << " bit/s/Hz, "
              << sra_trace_row_count(trace) << " trace rows, wrote " << out_path
              << "\n";
    sra_trace_free(trace);
    return kExitOk;
}

int run_geometry_command(const sra_array_params& params,
                         const std::string& amplitudes_text,
                         const std::string& freqs_text,
                         const std::string& out_path) {
    std::vector<double> amplitudes, freqs;
    try {
        amplitudes = broadcast(parse_list(amplitudes_text), params.tentacles);
        freqs = broadcast(parse_list(freqs_text), params.tentacles);
    } catch (const std::exception& e) {
        std::cerr << "error: bad deformation list: " << e.what() << "\n";
        return kExitValidation;
    }

    sra_layout* layout = nullptr;
    sra_status status = sra_layout_compute(&params, amplitudes.data(),
                                           freqs.data(), &layout);
    if (status != SRA_OK) return report(status, "computing layout");

    status = sra_layout_write_csv(layout, out_path.c_str());
    if (status != SRA_OK) {
        sra_layout_free(layout);
        return report(status, "writing " + out_path);
    }
    std::cout << "wrote " << sra_layout_element_count(layout)
              << " element positions to " << out_path << "\n";
    sra_layout_free(layout);
    return kExitOk;
}

int run_channel_command(const std::string& config_path,
                        std::uint64_t realization,
                        const std::string& amplitudes_text,
                        const std::string& freqs_text,
                        const std::string& out_path) {
    ConfigHandle config;
    sra_status status = sra_config_parse_file(config_path.c_str(), &config.ptr);
    if (status != SRA_OK)
        return report_config_error(status, "loading " + config_path);

    std::vector<double> amplitudes, freqs;
    const double* amp_ptr = nullptr;
    const double* freq_ptr = nullptr;
    if (!amplitudes_text.empty() || !freqs_text.empty()) {
        if (amplitudes_text.empty() || freqs_text.empty()) {
            std::cerr << "error: --A and --v must be given together\n";
            return kExitValidation;
        }
        try {
            amplitudes = parse_list(amplitudes_text);
            freqs = parse_list(freqs_text);
        } catch (const std::exception& e) {
            std::cerr << "error: bad deformation list: " << e.what() << "\n";
            return kExitValidation;
        }
        amp_ptr = amplitudes.data();
        freq_ptr = freqs.data();
    }

    sra_channel* channel = nullptr;
    status = sra_channel_compute(config.ptr, realization, amp_ptr, freq_ptr,
                                 &channel);
    if (status != SRA_OK) return report(status, "computing channel");

    status = sra_channel_write_csv(channel, out_path.c_str());
    if (status != SRA_OK) {
        sra_channel_free(channel);
        return report(status, "writing " + out_path);
    }
    int users = 0, elements = 0;
    sra_channel_dims(channel, &users, &elements);
    std::cout << "wrote " << users << "x" << elements << " channel matrix to "
              << out_path << "\n";
    sra_channel_free(channel);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deformable tentacle antenna array simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(sra_version()));

    std::string config_path;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::string out_dir;
    auto* run = app.add_subcommand("run", "execute the configured sweep");
    run->add_option("--config", config_path, "experiment config (JSON)")
        ->required();
    run->add_option("--seed", seed, "override the base seed")
        ->each([&](const std::string&) { has_seed = true; });
    run->add_option("--out", out_dir, "directory receiving the output CSV");

    std::string trace_config;
    std::uint64_t trace_realization = 0;
    std::string trace_out = "trace.csv";
    auto* trace = app.add_subcommand(
        "trace", "dump the optimizer trace of one realization");
    trace->add_option("--config", trace_config, "experiment config (JSON)")
        ->required();
    trace->add_option("--realization", trace_realization, "realization index")
        ->required();
    trace->add_option("--out", trace_out, "output CSV path");

    sra_array_params params{8, 4, 0.0, 0.2, 5.0, 0.2498273816666667, 0.0};
    std::string amplitudes_text, freqs_text;
    std::string geometry_out = "layout.csv";
    auto* geometry =
        app.add_subcommand("geometry", "dump element positions as CSV");
    geometry->add_option("--A", amplitudes_text,
                         "per-tentacle amplitudes, comma separated")
        ->required();
    geometry->add_option("--v", freqs_text,
                         "per-tentacle spatial frequencies, comma separated")
        ->required();
    geometry->add_option("--tentacles", params.tentacles, "tentacle count");
    geometry->add_option("--elements", params.elements_per_tentacle,
                         "elements per tentacle");
    geometry->add_option("--arc-length", params.arc_length,
                         "tentacle arc length [m] (0 = elements*wavelength/2)");
    geometry->add_option("--amplitude-max", params.amplitude_max,
                         "amplitude bound [m]");
    geometry->add_option("--freq-max", params.spatial_freq_max,
                         "spatial frequency bound [1/m]");
    geometry->add_option("--wavelength", params.wavelength, "wavelength [m]");
    geometry->add_option("--phase", params.phase, "oscillation phase [rad]");
    geometry->add_option("--out", geometry_out, "output CSV path");

    std::string channel_config;
    std::uint64_t channel_realization = 0;
    std::string channel_amplitudes, channel_freqs;
    std::string channel_out = "channel.csv";
    auto* channel = app.add_subcommand(
        "channel", "dump one realization's channel matrix as CSV");
    channel->add_option("--config", channel_config, "experiment config (JSON)")
        ->required();
    channel->add_option("--realization", channel_realization,
                        "realization index");
    channel->add_option("--A", channel_amplitudes,
                        "per-tentacle amplitudes (default: undeformed)");
    channel->add_option("--v", channel_freqs,
                        "per-tentacle spatial frequencies");
    channel->add_option("--out", channel_out, "output CSV path");

    std::string validate_config;
    auto* validate =
        app.add_subcommand("validate", "check a config file and exit");
    validate->add_option("--config", validate_config, "experiment config (JSON)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    if (run->parsed())
        return run_sweep_command(config_path, has_seed, seed, out_dir);
    if (trace->parsed())
        return run_trace_command(trace_config, trace_realization, trace_out);
    if (geometry->parsed())
        return run_geometry_command(params, amplitudes_text, freqs_text,
                                    geometry_out);
    if (channel->parsed())
        return run_channel_command(channel_config, channel_realization,
                                   channel_amplitudes, channel_freqs,
                                   channel_out);
    if (validate->parsed()) return run_validate(validate_config);
    return kExitValidation;
}
