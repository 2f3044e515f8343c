// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator
// C API shim: exceptions from the core are mapped to status codes, with the
// detail message kept per thread.

#include "sra.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "sra/config.hpp"
#include "sra/experiment.hpp"

namespace {

thread_local std::string g_last_error;

void clear_error() { g_last_error.clear(); }

sra_status fail(sra_status status, const char* what) {
    g_last_error = what ? what : "";
    return status;
}

// Runs fn() and maps thrown exceptions onto status codes.
template <typename Fn>
sra_status guarded(Fn&& fn) {
    clear_error();
    try {
        return fn();
    } catch (const sra::config_error& e) {
        return fail(SRA_ERROR_PARSE, e.what());
    } catch (const sra::rank_deficient_error& e) {
        return fail(SRA_ERROR_RANK_DEFICIENT, e.what());
    } catch (const std::domain_error& e) {
        return fail(SRA_ERROR_DOMAIN, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(SRA_ERROR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc& e) {
        return fail(SRA_ERROR_INTERNAL, e.what());
    } catch (const std::exception& e) {
        return fail(SRA_ERROR_INTERNAL, e.what());
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

struct sra_config {
    sra::ExperimentConfig cfg;
};

struct sra_sweep_result {
    sra::SweepResult result;
    std::vector<std::string> arch_names;  // backing storage for row pointers
    std::vector<std::string> axis_names;
};

struct sra_trace {
    sra::ScaResult result;
};

struct sra_layout {
    sra::ArrayLayout layout;
};

struct sra_channel {
    sra::ChannelMatrix H;
};

extern "C" {

const char* sra_version(void) { return "0.1.0"; }

const char* sra_status_message(sra_status status) {
    switch (status) {
        case SRA_OK: return "ok";
        case SRA_ERROR_INVALID_ARGUMENT: return "invalid argument";
        case SRA_ERROR_PARSE: return "configuration parse or validation error";
        case SRA_ERROR_DOMAIN: return "model input outside its domain";
        case SRA_ERROR_IO: return "input/output error";
        case SRA_ERROR_RANK_DEFICIENT: return "channel draw is rank deficient";
        case SRA_ERROR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* sra_last_error(void) { return g_last_error.c_str(); }

const char* sra_default_config(void) {
    static const std::string text = sra::default_config_json();
    return text.c_str();
}

sra_status sra_config_parse_file(const char* path, sra_config** out) {
    if (!path || !out) return fail(SRA_ERROR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&]() {
        std::ifstream probe(path);
        if (!probe)
            return fail(SRA_ERROR_IO,
                        ("cannot open config file: " + std::string(path)).c_str());
        auto handle = new sra_config{sra::load_config(path)};
        *out = handle;
        return SRA_OK;
    });
}

sra_status sra_config_parse_string(const char* json_text, sra_config** out) {
    if (!json_text || !out)
        return fail(SRA_ERROR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&]() {
        auto handle = new sra_config{sra::parse_config(json_text)};
        *out = handle;
        return SRA_OK;
    });
}

sra_status sra_config_set_base_seed(sra_config* config, uint64_t seed) {
    if (!config) return fail(SRA_ERROR_INVALID_ARGUMENT, "null config");
    clear_error();
    config->cfg.base_seed = seed;
    return SRA_OK;
}

sra_status sra_config_set_output_path(sra_config* config, const char* path) {
    if (!config || !path || !*path)
        return fail(SRA_ERROR_INVALID_ARGUMENT, "null config or empty path");
    clear_error();
    config->cfg.output_path = path;
    return SRA_OK;
}

const char* sra_config_output_path(const sra_config* config) {
    return config ? config->cfg.output_path.c_str() : "";
}

void sra_config_free(sra_config* config) { delete config; }

sra_status sra_sweep_run(const sra_config* config, sra_sweep_result** out) {
    if (!config || !out) return fail(SRA_ERROR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&]() {
        auto handle = new sra_sweep_result;
        handle->result = sra::run_sweep(config->cfg);
        for (const sra::SweepRow& row : handle->result.rows) {
            handle->arch_names.push_back(sra::to_string(row.architecture));
            handle->axis_names.push_back(sra::to_string(row.sweep_axis));
        }
        *out = handle;
        return SRA_OK;
    });
}

size_t sra_sweep_row_count(const sra_sweep_result* result) {
    return result ? result->result.rows.size() : 0;
}

sra_status sra_sweep_row_get(const sra_sweep_result* result, size_t index,
                             sra_sweep_row* out) {
    if (!result || !out) return fail(SRA_ERROR_INVALID_ARGUMENT, "null argument");
    if (index >= result->result.rows.size())
        return fail(SRA_ERROR_INVALID_ARGUMENT, "row index out of range");
    clear_error();
    const sra::SweepRow& row = result->result.rows[index];
    out->architecture = result->arch_names[index].c_str();
    out->sweep_axis = result->axis_names[index].c_str();
    out->sweep_value = row.sweep_value;
    out->mean_rate = row.mean_rate;
    out->std_rate = row.std_rate;
    out->realizations = row.realization_count;
    out->failures = row.failures;
    return SRA_OK;
}

sra_status sra_sweep_write_csv(const sra_sweep_result* result,
                               const char* path) {
    if (!result || !path)
        return fail(SRA_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() {
        try {
            sra::emit_csv(result->result, path);
        } catch (const std::runtime_error& e) {
            return fail(SRA_ERROR_IO, e.what());
        }
        return SRA_OK;
    });
}

void sra_sweep_result_free(sra_sweep_result* result) { delete result; }

sra_status sra_trace_run(const sra_config* config, uint64_t realization,
                         sra_trace** out) {
    if (!config || !out) return fail(SRA_ERROR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&]() {
        auto handle = new sra_trace{sra::run_trace(config->cfg, realization)};
        *out = handle;
        return SRA_OK;
    });
}

size_t sra_trace_row_count(const sra_trace* trace) {
    return trace ? trace->result.trace.entries.size() : 0;
}

sra_status sra_trace_row_get(const sra_trace* trace, size_t index,
                             sra_trace_row* out) {
    if (!trace || !out) return fail(SRA_ERROR_INVALID_ARGUMENT, "null argument");
    if (index >= trace->result.trace.entries.size())
        return fail(SRA_ERROR_INVALID_ARGUMENT, "row index out of range");
    clear_error();
    const sra::ScaTraceEntry& e = trace->result.trace.entries[index];
    out->iteration = e.iteration;
    out->sum_rate = e.sum_rate;
    out->grad_norm = e.grad_norm;
    out->step_norm = e.step_norm;
    out->accepted = e.accepted ? 1 : 0;
    return SRA_OK;
}

double sra_trace_final_rate(const sra_trace* trace) {
    return trace ? trace->result.sum_rate : 0.0;
}

sra_status sra_trace_write_csv(const sra_trace* trace, const char* path) {
    if (!trace || !path) return fail(SRA_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() {
        try {
            sra::emit_trace_csv(trace->result.trace, path);
        } catch (const std::runtime_error& e) {
            return fail(SRA_ERROR_IO, e.what());
        }
        return SRA_OK;
    });
}

void sra_trace_free(sra_trace* trace) { delete trace; }

sra_status sra_layout_compute(const sra_array_params* params,
                              const double* amplitudes,
                              const double* spatial_freqs, sra_layout** out) {
    if (!params || !amplitudes || !spatial_freqs || !out)
        return fail(SRA_ERROR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&]() {
        sra::ArrayConstants consts;
        consts.tentacles = params->tentacles;
        consts.elements_per_tentacle = params->elements_per_tentacle;
        consts.arc_length = params->arc_length;
        consts.amplitude_max = params->amplitude_max;
        consts.spatial_freq_max = params->spatial_freq_max;
        consts.wavelength = params->wavelength;
        consts.phase = params->phase;
        consts.validate();
        sra::DeformationState state;
        state.amplitudes = Eigen::Map<const Eigen::VectorXd>(
            amplitudes, params->tentacles);
        state.spatial_freqs = Eigen::Map<const Eigen::VectorXd>(
            spatial_freqs, params->tentacles);
        auto handle = new sra_layout{sra::element_positions(state, consts)};
        *out = handle;
        return SRA_OK;
    });
}

size_t sra_layout_element_count(const sra_layout* layout) {
    return layout ? layout->layout.positions.size() : 0;
}

sra_status sra_layout_positions(const sra_layout* layout, double* xyz) {
    if (!layout || !xyz) return fail(SRA_ERROR_INVALID_ARGUMENT, "null argument");
    clear_error();
    for (size_t e = 0; e < layout->layout.positions.size(); ++e) {
        xyz[3 * e + 0] = layout->layout.positions[e].x();
        xyz[3 * e + 1] = layout->layout.positions[e].y();
        xyz[3 * e + 2] = layout->layout.positions[e].z();
    }
    return SRA_OK;
}

sra_status sra_layout_write_csv(const sra_layout* layout, const char* path) {
    if (!layout || !path) return fail(SRA_ERROR_INVALID_ARGUMENT, "null argument");
    clear_error();
    std::ofstream out(path, std::ios::binary);
    if (!out)
        return fail(SRA_ERROR_IO,
                    ("cannot open output file: " + std::string(path)).c_str());
    out << "m,n,x,y,z\n";
    const int per = layout->layout.elements_per_tentacle;
    for (size_t e = 0; e < layout->layout.positions.size(); ++e) {
        const auto& p = layout->layout.positions[e];
        out << (e / per + 1) << ',' << (e % per + 1) << ','
            << format_double(p.x()) << ',' << format_double(p.y()) << ','
            << format_double(p.z()) << '\n';
    }
    if (!out)
        return fail(SRA_ERROR_IO, ("write failed: " + std::string(path)).c_str());
    return SRA_OK;
}

void sra_layout_free(sra_layout* layout) { delete layout; }

sra_status sra_channel_compute(const sra_config* config, uint64_t realization,
                               const double* amplitudes,
                               const double* spatial_freqs, sra_channel** out) {
    if (!config || !out) return fail(SRA_ERROR_INVALID_ARGUMENT, "null argument");
    if ((amplitudes == nullptr) != (spatial_freqs == nullptr))
        return fail(SRA_ERROR_INVALID_ARGUMENT,
                    "amplitudes and spatial_freqs must be given together");
    *out = nullptr;
    return guarded([&]() {
        sra::DeformationState state;  // empty selects the undeformed array
        if (amplitudes) {
            const int m = config->cfg.array.tentacles;
            state.amplitudes = Eigen::Map<const Eigen::VectorXd>(amplitudes, m);
            state.spatial_freqs =
                Eigen::Map<const Eigen::VectorXd>(spatial_freqs, m);
        }
        auto handle = new sra_channel{
            sra::channel_for_realization(config->cfg, realization, state)};
        *out = handle;
        return SRA_OK;
    });
}

sra_status sra_channel_dims(const sra_channel* channel, int* users,
                            int* elements) {
    if (!channel || !users || !elements)
        return fail(SRA_ERROR_INVALID_ARGUMENT, "null argument");
    clear_error();
    *users = static_cast<int>(channel->H.rows());
    *elements = static_cast<int>(channel->H.cols());
    return SRA_OK;
}

sra_status sra_channel_entry(const sra_channel* channel, int user, int element,
                             double* re, double* im) {
    if (!channel || !re || !im)
        return fail(SRA_ERROR_INVALID_ARGUMENT, "null argument");
    if (user < 1 || user > channel->H.rows() || element < 1 ||
        element > channel->H.cols())
        return fail(SRA_ERROR_INVALID_ARGUMENT, "index out of range");
    clear_error();
    const std::complex<double> v = channel->H(user - 1, element - 1);
    *re = v.real();
    *im = v.imag();
    return SRA_OK;
}

sra_status sra_channel_write_csv(const sra_channel* channel, const char* path) {
    if (!channel || !path)
        return fail(SRA_ERROR_INVALID_ARGUMENT, "null argument");
    clear_error();
    std::ofstream out(path, std::ios::binary);
    if (!out)
        return fail(SRA_ERROR_IO,
                    ("cannot open output file: " + std::string(path)).c_str());
    out << "k,element,re,im\n";
    for (Eigen::Index k = 0; k < channel->H.rows(); ++k)
        for (Eigen::Index e = 0; e < channel->H.cols(); ++e)
            out << (k + 1) << ',' << (e + 1) << ','
                << format_double(channel->H(k, e).real()) << ','
                << format_double(channel->H(k, e).imag()) << '\n';
    if (!out)
        return fail(SRA_ERROR_IO, ("write failed: " + std::string(path)).c_str());
    return SRA_OK;
}

void sra_channel_free(sra_channel* channel) { delete channel; }

}  // extern "C"
