// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator

#include "sra/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace sra {

namespace {

using nlohmann::json;

constexpr double kSpeedOfLight = 299792458.0;  // [m/s]

void require_known_keys(const json& obj, const std::string& scope,
                        const std::set<std::string>& allowed) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key()))
            throw config_error("unknown key '" + item.key() + "' in " + scope);
    }
}

template <typename T>
T get_or(const json& obj, const std::string& key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw config_error("key '" + key + "' has the wrong type");
    }
}

SweepAxis parse_axis(const std::string& name) {
    if (name == "snr") return SweepAxis::snr;
    if (name == "users") return SweepAxis::users;
    if (name == "directivity") return SweepAxis::directivity;
    throw config_error("unknown sweep axis '" + name + "'");
}

Architecture parse_architecture(const std::string& name) {
    if (name == "fixed") return Architecture::fixed;
    if (name == "sra") return Architecture::sra;
    if (name == "ccaa2d") return Architecture::ccaa2d;
    if (name == "ccaa3d") return Architecture::ccaa3d;
    throw config_error("unknown architecture '" + name + "'");
}

ScaInit parse_init(const std::string& name) {
    if (name == "midpoint") return ScaInit::midpoint;
    if (name == "random") return ScaInit::random;
    throw config_error("unknown sca initialization '" + name + "'");
}

}  // namespace

std::string to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::snr: return "snr";
        case SweepAxis::users: return "users";
        case SweepAxis::directivity: return "directivity";
    }
    return "?";
}

std::string to_string(Architecture arch) {
    switch (arch) {
        case Architecture::fixed: return "fixed";
        case Architecture::sra: return "sra";
        case Architecture::ccaa2d: return "ccaa2d";
        case Architecture::ccaa3d: return "ccaa3d";
    }
    return "?";
}

double ExperimentConfig::power_budget_for(double snr_db_value) const {
    return noise_power * std::pow(10.0, snr_db_value / 10.0);
}

void ExperimentConfig::validate() const {
    try {
        array.validate();
        channel.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
    if (noise_power <= 0.0) throw config_error("noise_power must be positive");
    if (realizations < 1) throw config_error("realizations must be >= 1");
    if (sweep_values.empty()) throw config_error("sweep values must be non-empty");
    if (architectures.empty())
        throw config_error("architectures must be non-empty");
    if (sca_starts < 1) throw config_error("sca starts must be >= 1");
    if (sca.max_iterations < 1)
        throw config_error("sca max_iterations must be >= 1");
    if (sca.tolerance <= 0.0) throw config_error("sca tolerance must be positive");
    if (sca.trust_shrink <= 0.0 || sca.trust_shrink >= 1.0)
        throw config_error("sca trust_shrink must lie in (0, 1)");
    if (sca.trust_min <= 0.0) throw config_error("sca trust_min must be positive");
    if (baseline.max_iterations < 1)
        throw config_error("baseline max_iterations must be >= 1");
    if (baseline.tolerance <= 0.0)
        throw config_error("baseline tolerance must be positive");
    if (output_path.empty()) throw config_error("output path must be non-empty");

    const int elements = array.total_elements();
    for (double v : sweep_values) {
        switch (sweep_axis) {
            case SweepAxis::snr:
                if (!std::isfinite(v)) throw config_error("snr values must be finite");
                break;
            case SweepAxis::users:
                if (v < 1.0 || v != std::floor(v))
                    throw config_error("user counts must be positive integers");
                if (static_cast<int>(v) > elements)
                    throw config_error("user count exceeds element count");
                break;
            case SweepAxis::directivity:
                if (v < 1.0) throw config_error("directivity values must be >= 1");
                break;
        }
    }
    if (sweep_axis != SweepAxis::users && channel.users > elements)
        throw config_error("users exceed element count");

    // The baseline spacing floor must fit N elements on a ray.
    const double spacing = baseline.min_spacing > 0.0 ? baseline.min_spacing
                                                      : array.wavelength / 2.0;
    if ((array.elements_per_tentacle - 1) * spacing >
        array.effective_arc_length())
        throw config_error("baseline spacing floor does not fit the ray length");
}

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw config_error("config root must be an object");
    require_known_keys(root, "config",
                       {"array", "channel", "noise_power", "snr_db", "sweep",
                        "architectures", "realizations", "seed", "output",
                        "sca", "baseline"});

    ExperimentConfig cfg;

    if (root.contains("array")) {
        const json& a = root.at("array");
        require_known_keys(a, "array",
                           {"tentacles", "elements_per_tentacle", "arc_length",
                            "amplitude_max", "spatial_freq_max", "phase"});
        cfg.array.tentacles = get_or(a, "tentacles", cfg.array.tentacles);
        cfg.array.elements_per_tentacle =
            get_or(a, "elements_per_tentacle", cfg.array.elements_per_tentacle);
        cfg.array.arc_length = get_or(a, "arc_length", cfg.array.arc_length);
        cfg.array.amplitude_max =
            get_or(a, "amplitude_max", cfg.array.amplitude_max);
        cfg.array.spatial_freq_max =
            get_or(a, "spatial_freq_max", cfg.array.spatial_freq_max);
        cfg.array.phase = get_or(a, "phase", cfg.array.phase);
    }

    if (root.contains("channel")) {
        const json& c = root.at("channel");
        require_known_keys(c, "channel",
                           {"users", "clusters", "paths_per_cluster",
                            "directivity", "carrier_frequency_hz"});
        cfg.channel.users = get_or(c, "users", cfg.channel.users);
        cfg.channel.clusters = get_or(c, "clusters", cfg.channel.clusters);
        cfg.channel.paths_per_cluster =
            get_or(c, "paths_per_cluster", cfg.channel.paths_per_cluster);
        if (c.contains("directivity")) {
            const json& d = c.at("directivity");
            if (d.is_string()) {
                if (d.get<std::string>() != "omni")
                    throw config_error("directivity must be a number or \"omni\"");
                cfg.channel.directivity.omnidirectional = true;
            } else if (d.is_number()) {
                cfg.channel.directivity.omnidirectional = false;
                cfg.channel.directivity.kappa = d.get<double>();
            } else {
                throw config_error("directivity must be a number or \"omni\"");
            }
        }
        const double fc = get_or(c, "carrier_frequency_hz", 1.2e9);
        if (fc <= 0.0) throw config_error("carrier frequency must be positive");
        cfg.channel.wavelength = kSpeedOfLight / fc;
    }
    cfg.array.wavelength = cfg.channel.wavelength;

    cfg.noise_power = get_or(root, "noise_power", cfg.noise_power);
    cfg.snr_db = get_or(root, "snr_db", cfg.snr_db);

    if (root.contains("sweep")) {
        const json& s = root.at("sweep");
        require_known_keys(s, "sweep", {"axis", "values"});
        cfg.sweep_axis = parse_axis(get_or<std::string>(s, "axis", "snr"));
        if (s.contains("values")) {
            cfg.sweep_values = s.at("values").get<std::vector<double>>();
        }
    }

    if (root.contains("architectures")) {
        cfg.architectures.clear();
        for (const auto& name :
             root.at("architectures").get<std::vector<std::string>>())
            cfg.architectures.push_back(parse_architecture(name));
    }

    cfg.realizations = get_or(root, "realizations", cfg.realizations);
    cfg.base_seed = get_or<std::uint64_t>(root, "seed", cfg.base_seed);
    cfg.output_path = get_or<std::string>(root, "output", cfg.output_path);

    if (root.contains("sca")) {
        const json& s = root.at("sca");
        require_known_keys(s, "sca",
                           {"max_iterations", "tolerance", "initialization",
                            "starts", "trust_amplitude", "trust_freq",
                            "trust_shrink", "trust_min", "refresh_precoder",
                            "planar_gradient"});
        cfg.sca.max_iterations = get_or(s, "max_iterations", cfg.sca.max_iterations);
        cfg.sca.tolerance = get_or(s, "tolerance", cfg.sca.tolerance);
        cfg.sca.init =
            parse_init(get_or<std::string>(s, "initialization", "midpoint"));
        cfg.sca_starts = get_or(s, "starts", cfg.sca_starts);
        cfg.sca.trust_amplitude =
            get_or(s, "trust_amplitude", cfg.sca.trust_amplitude);
        cfg.sca.trust_freq = get_or(s, "trust_freq", cfg.sca.trust_freq);
        cfg.sca.trust_shrink = get_or(s, "trust_shrink", cfg.sca.trust_shrink);
        cfg.sca.trust_min = get_or(s, "trust_min", cfg.sca.trust_min);
        cfg.sca.refresh_precoder =
            get_or(s, "refresh_precoder", cfg.sca.refresh_precoder);
        cfg.sca.planar_gradient =
            get_or(s, "planar_gradient", cfg.sca.planar_gradient);
    }

    if (root.contains("baseline")) {
        const json& b = root.at("baseline");
        require_known_keys(b, "baseline",
                           {"max_iterations", "tolerance", "min_step",
                            "min_spacing"});
        cfg.baseline.max_iterations =
            get_or(b, "max_iterations", cfg.baseline.max_iterations);
        cfg.baseline.tolerance = get_or(b, "tolerance", cfg.baseline.tolerance);
        cfg.baseline.min_step = get_or(b, "min_step", cfg.baseline.min_step);
        cfg.baseline.min_spacing =
            get_or(b, "min_spacing", cfg.baseline.min_spacing);
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string default_config_json() {
    return R"({
  "array": {
    "tentacles": 8,
    "elements_per_tentacle": 4,
    "amplitude_max": 0.2,
    "spatial_freq_max": 5.0,
    "phase": 0.0
  },
  "channel": {
    "users": 2,
    "clusters": 3,
    "paths_per_cluster": 10,
    "directivity": 2.0,
    "carrier_frequency_hz": 1.2e9
  },
  "noise_power": 1.0,
  "snr_db": 20.0,
  "sweep": { "axis": "snr", "values": [0, 10, 20, 30] },
  "architectures": ["fixed", "sra", "ccaa2d", "ccaa3d"],
  "realizations": 50,
  "seed": 1,
  "output": "results.csv",
  "sca": { "max_iterations": 20, "tolerance": 1e-4, "initialization": "midpoint", "starts": 1 },
  "baseline": { "max_iterations": 30, "tolerance": 1e-4 }
})";
}

}  // namespace sra
