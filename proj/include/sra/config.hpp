// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator
// Experiment configuration: JSON schema, validation and defaults.

#ifndef SRA_CONFIG_HPP
#define SRA_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sra/baselines.hpp"
#include "sra/channel.hpp"
#include "sra/geometry.hpp"
#include "sra/sca.hpp"

namespace sra {

enum class SweepAxis { snr, users, directivity };
enum class Architecture { fixed, sra, ccaa2d, ccaa3d };

std::string to_string(SweepAxis axis);
std::string to_string(Architecture arch);

// Raised on malformed or invalid configuration input.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    ArrayConstants array;
    ChannelConfig channel;   // channel.seed is ignored; seeds derive per realization
    double noise_power = 1.0;
    double snr_db = 20.0;    // operating SNR when the sweep axis is not snr
    SweepAxis sweep_axis = SweepAxis::snr;
    std::vector<double> sweep_values{0.0, 10.0, 20.0, 30.0};
    std::vector<Architecture> architectures{Architecture::fixed,
                                            Architecture::sra};
    int realizations = 50;
    std::uint64_t base_seed = 1;
    std::string output_path = "results.csv";
    ScaSettings sca;
    int sca_starts = 1;
    BaselineSettings baseline;

    double power_budget_for(double snr_db_value) const;
    void validate() const;  // throws config_error
};

// Strict parser: unknown keys, wrong types and out-of-range values are
// config_error. Missing keys fall back to the defaults above.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// The parseable JSON for the default configuration, used by `validate` smoke
// tests and as a starting point for experiment files.
std::string default_config_json();

}  // namespace sra

#endif  // SRA_CONFIG_HPP
