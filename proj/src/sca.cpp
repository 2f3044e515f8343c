// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator

#include "sra/sca.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sra/gradient.hpp"
#include "sra/rng.hpp"

namespace sra {

namespace {

struct HalfPlane {
    double a, b, c;  // a*A + b*v <= c
};

bool satisfies(const std::vector<HalfPlane>& planes, double A, double v,
               double tol) {
    for (const HalfPlane& h : planes)
        if (h.a * A + h.b * v > h.c + tol) return false;
    return true;
}

}  // namespace

Eigen::Vector2d solve_tentacle_polygon(double grad_a, double grad_v,
                                       double current_a, double current_v,
                                       const ArrayConstants& consts,
                                       double trust_amplitude,
                                       double trust_freq) {
    if (trust_amplitude <= 0.0 || trust_freq <= 0.0)
        throw std::invalid_argument("trust radii must be positive");
    constexpr double kFeasTol = 1e-9;

    const double Ai = current_a;
    const double vi = current_v;
    const double a_lo = std::max(0.0, Ai - trust_amplitude);
    const double a_hi = std::min(consts.amplitude_max, Ai + trust_amplitude);
    const double v_lo = std::max(0.0, vi - trust_freq);
    const double v_hi = std::min(consts.spatial_freq_max, vi + trust_freq);

    const std::vector<HalfPlane> planes{
        {-1.0, 0.0, -a_lo}, {1.0, 0.0, a_hi},
        {0.0, -1.0, -v_lo}, {0.0, 1.0, v_hi},
        {vi, Ai, 1.0 + Ai * vi},
        {-vi, -Ai, 1.0 - Ai * vi},
    };

    // Candidate vertices: the current point plus all pairwise intersections
    // of the bounding half-planes.
    std::vector<Eigen::Vector2d> candidates{{Ai, vi}};
    for (size_t i = 0; i < planes.size(); ++i) {
        for (size_t j = i + 1; j < planes.size(); ++j) {
            const double det =
                planes[i].a * planes[j].b - planes[j].a * planes[i].b;
            if (std::abs(det) < 1e-14) continue;
            const double A =
                (planes[i].c * planes[j].b - planes[j].c * planes[i].b) / det;
            const double v =
                (planes[i].a * planes[j].c - planes[j].a * planes[i].c) / det;
            candidates.emplace_back(A, v);
        }
    }

    double best_val = grad_a * Ai + grad_v * vi;
    Eigen::Vector2d best{Ai, vi};
    bool any_feasible = false;
    for (const Eigen::Vector2d& cand : candidates) {
        if (!satisfies(planes, cand.x(), cand.y(), kFeasTol)) continue;
        any_feasible = true;
        const double val = grad_a * cand.x() + grad_v * cand.y();
        // Strict improvement required, so a zero gradient keeps the current
        // point.
        if (val > best_val + 1e-12 * (1.0 + std::abs(best_val))) {
            best_val = val;
            best = cand;
        }
    }
    if (!any_feasible)
        throw std::logic_error("subproblem vertex enumeration found no feasible point");

    // Intersection roundoff may stick out of the box by an epsilon.
    best.x() = std::clamp(best.x(), a_lo, a_hi);
    best.y() = std::clamp(best.y(), v_lo, v_hi);
    return best;
}

DeformationState solve_subproblem(const Eigen::VectorXd& grad,
                                  const DeformationState& current,
                                  const ArrayConstants& consts,
                                  double trust_amplitude, double trust_freq) {
    const int M = consts.tentacles;
    if (grad.size() != 2 * M)
        throw std::invalid_argument("gradient must have length 2M");

    DeformationState next = current;
    for (int m = 0; m < M; ++m) {
        const Eigen::Vector2d vertex = solve_tentacle_polygon(
            grad[m], grad[M + m], current.amplitudes[m],
            current.spatial_freqs[m], consts, trust_amplitude, trust_freq);
        double A = vertex.x();
        double v = vertex.y();
        // The linearized product bound does not imply the true one; scale v
        // back so the geometry stays real-valued.
        v = cap_freq_to_product(A, v);
        next.amplitudes[m] = A;
        next.spatial_freqs[m] = v;
    }
    return next;
}

double linearized_objective(const Eigen::VectorXd& grad,
                            const DeformationState& candidate,
                            const DeformationState& current, double r_current) {
    return r_current + grad.dot(candidate.packed() - current.packed());
}

namespace {

DeformationState initial_state(const ArrayConstants& consts,
                               const ScaSettings& settings) {
    const int M = consts.tentacles;
    DeformationState state;
    switch (settings.init) {
        case ScaInit::midpoint:
            state.amplitudes =
                Eigen::VectorXd::Constant(M, consts.amplitude_max / 2.0);
            state.spatial_freqs =
                Eigen::VectorXd::Constant(M, consts.spatial_freq_max / 2.0);
            break;
        case ScaInit::random: {
            Rng rng(settings.init_seed);
            state.amplitudes.resize(M);
            state.spatial_freqs.resize(M);
            for (int m = 0; m < M; ++m) {
                state.amplitudes[m] = rng.uniform(0.0, consts.amplitude_max);
                state.spatial_freqs[m] = rng.uniform(0.0, consts.spatial_freq_max);
            }
            break;
        }
        case ScaInit::provided:
            state = settings.initial_state;
            break;
    }
    // Project onto the product bound so any start is feasible.
    for (int m = 0; m < M; ++m)
        state.spatial_freqs[m] =
            cap_freq_to_product(state.amplitudes[m], state.spatial_freqs[m]);
    state.validate(consts);
    return state;
}

struct PipelineEval {
    ChannelMatrix H;
    PrecodeResult precode;
    double rate = 0.0;
    ArrayLayout layout;
};

PipelineEval evaluate(const DeformationState& state, const PathSet& paths,
                      const ArrayConstants& consts, const ChannelConfig& config,
                      double power_budget, double noise_power,
                      const PrecodeResult* fixed_precoder) {
    PipelineEval eval;
    eval.layout = element_positions(state, consts);
    eval.H = assemble_channel(eval.layout, paths, config);
    eval.precode =
        fixed_precoder ? *fixed_precoder : zf_precoder(eval.H, power_budget);
    eval.rate = sinr(eval.H, eval.precode, noise_power).sum_rate;
    return eval;
}

}  // namespace

ScaResult run_sca(const PathSet& paths, const ArrayConstants& consts,
                  const ChannelConfig& config, double power_budget,
                  double noise_power, const ScaSettings& settings) {
    consts.validate();
    const double trust_a0 = settings.trust_amplitude > 0.0
                                ? settings.trust_amplitude
                                : consts.amplitude_max / 4.0;
    const double trust_v0 = settings.trust_freq > 0.0
                                ? settings.trust_freq
                                : consts.spatial_freq_max / 4.0;

    DeformationState state = initial_state(consts, settings);

    PrecodeResult held_precoder;
    const PrecodeResult* fixed = nullptr;
    if (!settings.refresh_precoder) {
        // Ablation mode: ZF computed once at the start and reused throughout.
        PipelineEval init_eval = evaluate(state, paths, consts, config,
                                          power_budget, noise_power, nullptr);
        held_precoder = init_eval.precode;
        fixed = &held_precoder;
    }

    PipelineEval current = evaluate(state, paths, consts, config, power_budget,
                                    noise_power, fixed);

    ScaResult result;
    result.state = state;
    result.sum_rate = current.rate;

    ScaTraceEntry first;
    first.iteration = 0;
    first.state = state;
    first.sum_rate = current.rate;
    first.predicted_rate = current.rate;
    first.trust_amplitude = trust_a0;
    first.trust_freq = trust_v0;
    first.accepted = true;
    result.trace.entries.push_back(first);

    for (int it = 1; it <= settings.max_iterations; ++it) {
        const Eigen::VectorXd g_bar =
            grad_sum_rate_wrt_z(current.layout, paths, config, current.H,
                                current.precode, noise_power);
        Eigen::VectorXd grad = grad_sum_rate_wrt_params(state, consts, g_bar);
        if (settings.planar_gradient) {
            // Footprint chain rule: dR/du for each element times du/d(A, v).
            const Eigen::VectorXd g_radial = grad_sum_rate_wrt_radial(
                current.layout, paths, config, current.H, current.precode,
                noise_power);
            const auto planar = planar_jacobian(state, consts);
            const int N = consts.elements_per_tentacle;
            for (int m = 0; m < consts.tentacles; ++m) {
                const Eigen::Vector2d g =
                    planar[m].transpose() *
                    g_radial.segment(static_cast<Eigen::Index>(m) * N, N);
                grad[m] += g[0];
                grad[consts.tentacles + m] += g[1];
            }
        }
        const double grad_norm = grad.norm();

        double trust_a = trust_a0;
        double trust_v = trust_v0;
        bool accepted = false;
        double improvement = 0.0;

        while (true) {
            const DeformationState candidate =
                solve_subproblem(grad, state, consts, trust_a, trust_v);
            const double step_norm =
                (candidate.packed() - state.packed()).norm();

            ScaTraceEntry entry;
            entry.iteration = it;
            entry.state = candidate;
            entry.predicted_rate =
                linearized_objective(grad, candidate, state, current.rate);
            entry.grad_norm = grad_norm;
            entry.step_norm = step_norm;
            entry.trust_amplitude = trust_a;
            entry.trust_freq = trust_v;

            if (step_norm == 0.0) {
                // Subproblem cannot move (stationary surrogate); stop here.
                entry.sum_rate = current.rate;
                entry.accepted = false;
                result.trace.entries.push_back(entry);
                break;
            }

            PipelineEval cand_eval = evaluate(candidate, paths, consts, config,
                                              power_budget, noise_power, fixed);
            entry.sum_rate = cand_eval.rate;
            entry.accepted = cand_eval.rate > current.rate;
            result.trace.entries.push_back(entry);

            if (entry.accepted) {
                improvement = cand_eval.rate - current.rate;
                state = candidate;
                current = std::move(cand_eval);
                accepted = true;
                break;
            }
            trust_a *= settings.trust_shrink;
            trust_v *= settings.trust_shrink;
            if (trust_a < settings.trust_min && trust_v < settings.trust_min)
                break;
        }

        if (!accepted) break;
        if (current.rate > result.sum_rate) {
            result.state = state;
            result.sum_rate = current.rate;
        }
        if (improvement < settings.tolerance) break;
    }

    // Never return anything worse than the undeformed array.
    const DeformationState zero = DeformationState::zero(consts.tentacles);
    PipelineEval zero_eval =
        evaluate(zero, paths, consts, config, power_budget, noise_power, fixed);
    if (zero_eval.rate > result.sum_rate) {
        result.state = zero;
        result.sum_rate = zero_eval.rate;
    }
    return result;
}

ScaResult run_sca_multistart(const PathSet& paths, const ArrayConstants& consts,
                             const ChannelConfig& config, double power_budget,
                             double noise_power, const ScaSettings& settings,
                             int starts) {
    if (starts < 1) throw std::invalid_argument("starts must be >= 1");
    ScaResult best = run_sca(paths, consts, config, power_budget, noise_power,
                             settings);
    for (int j = 1; j < starts; ++j) {
        ScaSettings alt = settings;
        if (j == 1) {
            // Strongest-deformation corner; optima concentrate there because
            // it maximizes the vertical phase range.
            alt.init = ScaInit::provided;
            const double a = consts.amplitude_max;
            const double v =
                cap_freq_to_product(a, consts.spatial_freq_max);
            alt.initial_state.amplitudes =
                Eigen::VectorXd::Constant(consts.tentacles, a);
            alt.initial_state.spatial_freqs =
                Eigen::VectorXd::Constant(consts.tentacles, v);
        } else {
            alt.init = ScaInit::random;
            alt.init_seed =
                substream_seed(settings.init_seed, static_cast<std::uint64_t>(j));
        }
        ScaResult run = run_sca(paths, consts, config, power_budget, noise_power, alt);
        if (run.sum_rate > best.sum_rate) best = std::move(run);
    }
    return best;
}

}  // namespace sra
