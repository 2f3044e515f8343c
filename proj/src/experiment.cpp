// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator

#include "sra/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

#include "sra/baselines.hpp"
#include "sra/gradient.hpp"
#include "sra/rng.hpp"

namespace sra {

namespace {

// Keeps multistart initialization draws out of the per-user path substreams.
constexpr std::uint64_t kInitDomain = 0x5CA5CA5CA5CA5CA5ULL;

struct PointSetup {
    ChannelConfig channel;  // seed filled per realization
    double power_budget = 0.0;
};

PointSetup setup_for_value(const ExperimentConfig& config, double value) {
    PointSetup setup;
    setup.channel = config.channel;
    switch (config.sweep_axis) {
        case SweepAxis::snr:
            setup.power_budget = config.power_budget_for(value);
            break;
        case SweepAxis::users:
            setup.channel.users = static_cast<int>(value);
            setup.power_budget = config.power_budget_for(config.snr_db);
            break;
        case SweepAxis::directivity:
            setup.channel.directivity.omnidirectional = false;
            setup.channel.directivity.kappa = value;
            setup.power_budget = config.power_budget_for(config.snr_db);
            break;
    }
    return setup;
}

bool wants(const ExperimentConfig& config, Architecture arch) {
    for (Architecture a : config.architectures)
        if (a == arch) return true;
    return false;
}

struct RealizationRates {
    bool failed = false;
    bool resampled = false;
    std::uint64_t failed_seed = 0;
    std::string failure_reason;
    // Indexed by Architecture enum value; NaN when not evaluated.
    double rate[4] = {NAN, NAN, NAN, NAN};
};

// 3D warm start derived from the deformable-array solution: planar radius
// and height of every element, pushed into the offset feasible set.
ElementOffsets3D offsets_from_state(const DeformationState& state,
                                    const ArrayConstants& consts) {
    const ArrayLayout layout = element_positions(state, consts);
    ElementOffsets3D offsets;
    offsets.tentacles = consts.tentacles;
    offsets.elements_per_tentacle = consts.elements_per_tentacle;
    offsets.radial.resize(consts.total_elements());
    offsets.vertical.resize(consts.total_elements());
    for (int e = 0; e < consts.total_elements(); ++e) {
        offsets.radial[e] = layout.positions[e].head<2>().norm();
        offsets.vertical[e] = layout.positions[e].z();
    }
    return offsets;
}

RealizationRates evaluate_once(const ExperimentConfig& config,
                               const PointSetup& setup,
                               std::uint64_t seed) {
    ChannelConfig channel = setup.channel;
    channel.seed = seed;
    const PathSet paths = draw_paths(channel);
    const double power = setup.power_budget;
    const double noise = config.noise_power;

    const bool need_sra = wants(config, Architecture::sra) ||
                          wants(config, Architecture::ccaa3d);
    const bool need_2d = wants(config, Architecture::ccaa2d) ||
                         wants(config, Architecture::ccaa3d);

    RealizationRates out;
    if (wants(config, Architecture::fixed))
        out.rate[static_cast<int>(Architecture::fixed)] =
            fixed_ccaa_rate(paths, config.array, channel, power, noise).sum_rate;

    std::optional<ScaResult> sra_result;
    if (need_sra) {
        ScaSettings settings = config.sca;
        settings.init_seed = mix_seed(seed ^ kInitDomain);
        sra_result = run_sca_multistart(paths, config.array, channel, power,
                                        noise, settings, config.sca_starts);
        if (wants(config, Architecture::sra))
            out.rate[static_cast<int>(Architecture::sra)] = sra_result->sum_rate;
    }

    std::optional<std::pair<ElementOffsets2D, RateReport>> ccaa2d_result;
    if (need_2d) {
        ccaa2d_result = optimize_2d_ccaa(paths, config.array, channel, power,
                                         noise, config.baseline);
        if (wants(config, Architecture::ccaa2d))
            out.rate[static_cast<int>(Architecture::ccaa2d)] =
                ccaa2d_result->second.sum_rate;
    }

    if (wants(config, Architecture::ccaa3d)) {
        // Warm starts: the 2D solution with flat elements, and the deformable
        // array's solution projected into the per-element feasible set.
        ElementOffsets3D from_2d;
        from_2d.tentacles = config.array.tentacles;
        from_2d.elements_per_tentacle = config.array.elements_per_tentacle;
        from_2d.radial = ccaa2d_result->first.radial;
        from_2d.vertical = Eigen::VectorXd::Zero(config.array.total_elements());

        auto best = optimize_3d_ccaa(paths, config.array, channel, power, noise,
                                     config.baseline, from_2d);
        auto from_sra = optimize_3d_ccaa(
            paths, config.array, channel, power, noise, config.baseline,
            offsets_from_state(sra_result->state, config.array));
        if (from_sra.second.sum_rate > best.second.sum_rate)
            best = std::move(from_sra);
        out.rate[static_cast<int>(Architecture::ccaa3d)] = best.second.sum_rate;
    }
    return out;
}

RealizationRates evaluate_realization(const ExperimentConfig& config,
                                      const PointSetup& setup,
                                      int realization) {
    const std::uint64_t seed =
        config.base_seed ^ static_cast<std::uint64_t>(realization);
    try {
        return evaluate_once(config, setup, seed);
    } catch (const rank_deficient_error&) {
        // One resample from a derived seed, then give up.
        const std::uint64_t retry_seed = mix_seed(seed);
        try {
            RealizationRates out = evaluate_once(config, setup, retry_seed);
            out.resampled = true;
            return out;
        } catch (const rank_deficient_error& e) {
            RealizationRates out;
            out.failed = true;
            out.failed_seed = retry_seed;
            out.failure_reason = e.what();
            return out;
        }
    }
}

}  // namespace

int worker_count() {
    if (const char* env = std::getenv("SRA_WORKERS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<int>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int count, const std::function<void(int)>& fn) {
    const int workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

SweepResult run_sweep(const ExperimentConfig& config) {
    config.validate();
    const int values = static_cast<int>(config.sweep_values.size());
    const int reals = config.realizations;

    std::vector<std::vector<RealizationRates>> outcomes(values);
    for (auto& v : outcomes) v.resize(reals);

    parallel_for(values * reals, [&](int task) {
        const int vi = task / reals;
        const int r = task % reals;
        const PointSetup setup =
            setup_for_value(config, config.sweep_values[vi]);
        outcomes[vi][r] = evaluate_realization(config, setup, r);
    });

    SweepResult result;
    result.sweep_axis = config.sweep_axis;
    for (Architecture arch : config.architectures) {
        for (int vi = 0; vi < values; ++vi) {
            SweepRow row;
            row.architecture = arch;
            row.sweep_axis = config.sweep_axis;
            row.sweep_value = config.sweep_values[vi];
            double sum = 0.0;
            int n = 0;
            for (int r = 0; r < reals; ++r) {
                const RealizationRates& o = outcomes[vi][r];
                if (o.failed) continue;
                sum += o.rate[static_cast<int>(arch)];
                ++n;
            }
            row.realization_count = n;
            row.mean_rate = n > 0 ? sum / n : 0.0;
            double ss = 0.0;
            for (int r = 0; r < reals; ++r) {
                const RealizationRates& o = outcomes[vi][r];
                if (o.failed) continue;
                const double d = o.rate[static_cast<int>(arch)] - row.mean_rate;
                ss += d * d;
            }
            row.std_rate = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
            row.failures = reals - n;
            result.rows.push_back(row);
        }
    }
    for (int vi = 0; vi < values; ++vi) {
        for (int r = 0; r < reals; ++r) {
            const RealizationRates& o = outcomes[vi][r];
            if (o.resampled) ++result.resamples;
            if (o.failed)
                result.failures.push_back({config.sweep_values[vi], r,
                                           o.failed_seed, o.failure_reason});
        }
    }
    for (const FailureRecord& f : result.failures)
        std::cerr << "realization " << f.realization << " at sweep value "
                  << f.sweep_value << " failed (seed " << f.seed
                  << "): " << f.reason << "\n";
    return result;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void emit_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << "architecture,sweep_axis,sweep_value,mean_rate,std_rate,n,failures\n";
    for (const SweepRow& row : result.rows) {
        out << to_string(row.architecture) << ',' << to_string(row.sweep_axis)
            << ',' << format_double(row.sweep_value) << ','
            << format_double(row.mean_rate) << ','
            << format_double(row.std_rate) << ',' << row.realization_count
            << ',' << row.failures << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

ScaResult run_trace(const ExperimentConfig& config, std::uint64_t realization) {
    config.validate();
    ChannelConfig channel = config.channel;
    channel.seed = config.base_seed ^ realization;
    const PathSet paths = draw_paths(channel);
    ScaSettings settings = config.sca;
    settings.init_seed = mix_seed(channel.seed ^ kInitDomain);
    return run_sca(paths, config.array, channel,
                   config.power_budget_for(config.snr_db), config.noise_power,
                   settings);
}

void emit_trace_csv(const ScaTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << "iteration,sum_rate,grad_norm,step_norm,accepted\n";
    for (const ScaTraceEntry& e : trace.entries) {
        out << e.iteration << ',' << format_double(e.sum_rate) << ','
            << format_double(e.grad_norm) << ',' << format_double(e.step_norm)
            << ',' << (e.accepted ? 1 : 0) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

ChannelMatrix channel_for_realization(const ExperimentConfig& config,
                                      std::uint64_t realization,
                                      const DeformationState& state) {
    config.validate();
    ChannelConfig channel = config.channel;
    channel.seed = config.base_seed ^ realization;
    const PathSet paths = draw_paths(channel);
    DeformationState s = state;
    if (s.amplitudes.size() == 0)
        s = DeformationState::zero(config.array.tentacles);
    const ArrayLayout layout = element_positions(s, config.array);
    return assemble_channel(layout, paths, channel);
}

}  // namespace sra
