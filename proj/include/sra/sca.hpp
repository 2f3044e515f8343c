// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator
// Successive convex approximation over the deformation parameters: linear
// surrogate of the sum rate, exact per-tentacle subproblem solves by vertex
// enumeration, and a trust region that guarantees monotone ascent of the
// true objective.

#ifndef SRA_SCA_HPP
#define SRA_SCA_HPP

#include <cstdint>
#include <vector>

#include "sra/channel.hpp"
#include "sra/geometry.hpp"
#include "sra/precoding.hpp"

namespace sra {

enum class ScaInit { midpoint, random, provided };

struct ScaSettings {
    int max_iterations = 20;
    double tolerance = 1e-4;       // stop when the accepted rate gain drops below
    double trust_amplitude = -1.0; // initial box radius for A; <=0 -> A_max/4
    double trust_freq = -1.0;      // initial box radius for v; <=0 -> v_max/4
    double trust_shrink = 0.5;
    double trust_min = 1e-6;
    ScaInit init = ScaInit::midpoint;
    DeformationState initial_state;   // used when init == provided
    std::uint64_t init_seed = 0;      // used when init == random
    bool refresh_precoder = true;     // recompute ZF each outer iteration
    // Augment the search direction with the planar-footprint motion du/dA,
    // du/dv. The z-only direction stalls at points that are not stationary
    // for the true objective; disable to reproduce that behavior.
    bool planar_gradient = true;
};

struct ScaTraceEntry {
    int iteration = 0;        // outer iteration index, 0 = initial point
    DeformationState state;   // candidate evaluated at this step
    double sum_rate = 0.0;    // true objective at the candidate
    double predicted_rate = 0.0;  // linear surrogate value for the candidate
    double grad_norm = 0.0;
    double step_norm = 0.0;
    double trust_amplitude = 0.0;
    double trust_freq = 0.0;
    bool accepted = false;
};

struct ScaTrace {
    std::vector<ScaTraceEntry> entries;
};

struct ScaResult {
    DeformationState state;
    double sum_rate = 0.0;
    ScaTrace trace;
};

// Exact maximizer of g_a * A + g_v * v over one tentacle's polygon
//   [0, A_max] x [0, v_max]
//   /\ |A*v_i + A_i*v - A_i*v_i| <= 1      (linearized product bound)
//   /\ |A - A_i| <= trust_A, |v - v_i| <= trust_v,
// by enumerating the polygon's vertices; ties keep the current point.
Eigen::Vector2d solve_tentacle_polygon(double grad_a, double grad_v,
                                       double current_a, double current_v,
                                       const ArrayConstants& consts,
                                       double trust_amplitude,
                                       double trust_freq);

// Per-tentacle polygon solves for all tentacles, followed by a projection
// onto the true bound |A*v| <= 1 (v is scaled down), so the returned state
// is always feasible.
DeformationState solve_subproblem(const Eigen::VectorXd& grad,
                                  const DeformationState& current,
                                  const ArrayConstants& consts,
                                  double trust_amplitude, double trust_freq);

// Surrogate value R_current + <grad, candidate - current> over packed states.
double linearized_objective(const Eigen::VectorXd& grad,
                            const DeformationState& candidate,
                            const DeformationState& current, double r_current);

// One SCA run. Accepted iterations strictly improve the true sum rate; on a
// rejected candidate the trust region shrinks and the subproblem is re-solved.
// The returned state is never worse than the zero-deformation state on the
// same path set.
ScaResult run_sca(const PathSet& paths, const ArrayConstants& consts,
                  const ChannelConfig& config, double power_budget,
                  double noise_power, const ScaSettings& settings);

// Best of `starts` runs: the configured initialization first, then random
// feasible starts drawn from substreams of settings.init_seed.
ScaResult run_sca_multistart(const PathSet& paths, const ArrayConstants& consts,
                             const ChannelConfig& config, double power_budget,
                             double noise_power, const ScaSettings& settings,
                             int starts);

}  // namespace sra

#endif  // SRA_SCA_HPP
