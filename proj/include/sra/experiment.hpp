// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator
// Seeded Monte-Carlo sweep driver. Every architecture within one realization
// is evaluated on the identical path draw, so per-point comparisons are
// paired; results are merged in realization order and are therefore
// independent of the worker schedule.

#ifndef SRA_EXPERIMENT_HPP
#define SRA_EXPERIMENT_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sra/config.hpp"
#include "sra/sca.hpp"

namespace sra {

struct SweepRow {
    Architecture architecture;
    SweepAxis sweep_axis;
    double sweep_value = 0.0;
    double mean_rate = 0.0;
    double std_rate = 0.0;   // sample standard deviation over successes
    int realization_count = 0;
    int failures = 0;
};

struct FailureRecord {
    double sweep_value = 0.0;
    int realization = 0;
    std::uint64_t seed = 0;      // seed of the failed draw
    std::string reason;
};

struct SweepResult {
    SweepAxis sweep_axis;
    std::vector<SweepRow> rows;       // architectures in config order, values in order
    std::vector<FailureRecord> failures;
    int resamples = 0;                // rank-deficient draws replaced by a retry
};

// Runs the configured sweep. A rank-deficient channel draw is resampled once
// from a derived seed; a second failure marks the realization failed for all
// architectures of that sweep point (never silently retried again).
SweepResult run_sweep(const ExperimentConfig& config);

// CSV with header architecture,sweep_axis,sweep_value,mean_rate,std_rate,n,failures
// and floats printed to 6 significant digits. Throws std::runtime_error with
// the path in the message on I/O failure.
void emit_csv(const SweepResult& result, const std::string& path);

// Single-realization SCA run at the config's scalar operating point
// (channel.users, configured directivity, snr_db); used by the trace dump.
ScaResult run_trace(const ExperimentConfig& config, std::uint64_t realization);

// Trace CSV: iteration,sum_rate,grad_norm,step_norm,accepted.
void emit_trace_csv(const ScaTrace& trace, const std::string& path);

// Channel matrix for one realization of the config at a given deformation
// (zero state when amplitudes/freqs are empty); used by the debug dump.
ChannelMatrix channel_for_realization(const ExperimentConfig& config,
                                      std::uint64_t realization,
                                      const DeformationState& state);

// Runs fn(i) for i in [0, count) on min(count, worker_count()) threads.
// Results must be written to disjoint slots so the merge is deterministic.
void parallel_for(int count, const std::function<void(int)>& fn);

// Worker count: SRA_WORKERS when set (>= 1), else hardware concurrency.
int worker_count();

}  // namespace sra

#endif  // SRA_EXPERIMENT_HPP
