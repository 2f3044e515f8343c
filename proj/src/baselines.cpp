// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator

#include "sra/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sra/gradient.hpp"

namespace sra {

namespace {

double spacing_or_default(const ArrayConstants& consts, double min_spacing) {
    return min_spacing > 0.0 ? min_spacing : consts.wavelength / 2.0;
}

// Isotonic regression (pool adjacent violators): least-squares monotone
// non-decreasing fit.
Eigen::VectorXd isotonic(const Eigen::VectorXd& y) {
    const int n = static_cast<int>(y.size());
    std::vector<double> level(n), weight(n);
    std::vector<int> count(n);
    int blocks = 0;
    for (int i = 0; i < n; ++i) {
        level[blocks] = y[i];
        weight[blocks] = 1.0;
        count[blocks] = 1;
        ++blocks;
        while (blocks > 1 && level[blocks - 2] > level[blocks - 1]) {
            const double w = weight[blocks - 2] + weight[blocks - 1];
            level[blocks - 2] =
                (weight[blocks - 2] * level[blocks - 2] +
                 weight[blocks - 1] * level[blocks - 1]) / w;
            weight[blocks - 2] = w;
            count[blocks - 2] += count[blocks - 1];
            --blocks;
        }
    }
    Eigen::VectorXd out(n);
    int idx = 0;
    for (int b = 0; b < blocks; ++b)
        for (int j = 0; j < count[b]; ++j) out[idx++] = level[b];
    return out;
}

// Projection of one ray's radii onto {0 <= r_1, r_{n+1} - r_n >= s,
// r_N <= L}. In shifted coordinates t_n = r_n - (n-1)s this is isotonic
// regression followed by clamping to the common box [0, L - (N-1)s].
void project_ray(Eigen::Ref<Eigen::VectorXd> radial, double spacing, double L) {
    const int n = static_cast<int>(radial.size());
    const double top = L - (n - 1) * spacing;
    if (top < 0.0)
        throw std::invalid_argument("spacing floor does not fit the ray length");
    Eigen::VectorXd t(n);
    for (int i = 0; i < n; ++i) t[i] = radial[i] - i * spacing;
    t = isotonic(t);
    for (int i = 0; i < n; ++i)
        radial[i] = std::clamp(t[i], 0.0, top) + i * spacing;
}

ArrayLayout layout_from_positions(int tentacles, int elements,
                                  const ArrayConstants& consts,
                                  const Eigen::VectorXd& radial,
                                  const Eigen::VectorXd* vertical) {
    ArrayLayout layout;
    layout.tentacles = tentacles;
    layout.elements_per_tentacle = elements;
    layout.positions.resize(static_cast<size_t>(tentacles) * elements);
    const double L = consts.effective_arc_length();
    layout.arc_positions.resize(elements);
    for (int n = 0; n < elements; ++n)
        layout.arc_positions[n] = (static_cast<double>(n + 1) / elements) * L;
    for (int m = 0; m < tentacles; ++m) {
        const double theta = 2.0 * std::numbers::pi * (m + 1) / tentacles;
        for (int n = 0; n < elements; ++n) {
            const int e = m * elements + n;
            const double z = vertical ? (*vertical)[e] : 0.0;
            layout.positions[e] = Eigen::Vector3d(radial[e] * std::cos(theta),
                                                  radial[e] * std::sin(theta), z);
        }
    }
    return layout;
}

struct AscentEval {
    ChannelMatrix H;
    PrecodeResult precode;
    double rate = 0.0;
};

AscentEval evaluate_layout(const ArrayLayout& layout, const PathSet& paths,
                           const ChannelConfig& config, double power_budget,
                           double noise_power) {
    AscentEval eval;
    eval.H = assemble_channel(layout, paths, config);
    eval.precode = zf_precoder(eval.H, power_budget);
    eval.rate = sinr(eval.H, eval.precode, noise_power).sum_rate;
    return eval;
}

}  // namespace

ArrayLayout layout_from_offsets(const ElementOffsets2D& offsets,
                                const ArrayConstants& consts) {
    return layout_from_positions(offsets.tentacles, offsets.elements_per_tentacle,
                                 consts, offsets.radial, nullptr);
}

ArrayLayout layout_from_offsets(const ElementOffsets3D& offsets,
                                const ArrayConstants& consts) {
    return layout_from_positions(offsets.tentacles, offsets.elements_per_tentacle,
                                 consts, offsets.radial, &offsets.vertical);
}

ElementOffsets2D nominal_offsets(const ArrayConstants& consts) {
    consts.validate();
    ElementOffsets2D offsets;
    offsets.tentacles = consts.tentacles;
    offsets.elements_per_tentacle = consts.elements_per_tentacle;
    offsets.radial.resize(consts.total_elements());
    const double L = consts.effective_arc_length();
    for (int m = 0; m < consts.tentacles; ++m)
        for (int n = 0; n < consts.elements_per_tentacle; ++n)
            offsets.radial[m * consts.elements_per_tentacle + n] =
                (static_cast<double>(n + 1) / consts.elements_per_tentacle) * L;
    return offsets;
}

ElementOffsets2D project_offsets(const ElementOffsets2D& offsets,
                                 const ArrayConstants& consts,
                                 double min_spacing) {
    ElementOffsets2D out = offsets;
    const double s = spacing_or_default(consts, min_spacing);
    const double L = consts.effective_arc_length();
    for (int m = 0; m < out.tentacles; ++m)
        project_ray(out.radial.segment(
                        static_cast<Eigen::Index>(m) * out.elements_per_tentacle,
                        out.elements_per_tentacle),
                    s, L);
    return out;
}

ElementOffsets3D project_offsets(const ElementOffsets3D& offsets,
                                 const ArrayConstants& consts,
                                 double min_spacing) {
    ElementOffsets3D out = offsets;
    const double s = spacing_or_default(consts, min_spacing);
    const double L = consts.effective_arc_length();
    for (int m = 0; m < out.tentacles; ++m)
        project_ray(out.radial.segment(
                        static_cast<Eigen::Index>(m) * out.elements_per_tentacle,
                        out.elements_per_tentacle),
                    s, L);
    out.vertical = out.vertical.cwiseMax(-consts.amplitude_max)
                       .cwiseMin(consts.amplitude_max);
    return out;
}

RateReport fixed_ccaa_rate(const PathSet& paths, const ArrayConstants& consts,
                           const ChannelConfig& config, double power_budget,
                           double noise_power) {
    return sum_rate(DeformationState::zero(consts.tentacles), paths, consts,
                    config, power_budget, noise_power);
}

namespace {

// Shared projected-ascent engine over (radial, vertical) coordinates. A zero
// z_bound freezes the vertical coordinates at zero, which is exactly the 2D
// optimizer.
std::pair<ElementOffsets3D, RateReport> ascent(
    const PathSet& paths, const ArrayConstants& consts,
    const ChannelConfig& config, double power_budget, double noise_power,
    const BaselineSettings& settings, const ElementOffsets3D& initial,
    double z_bound) {
    consts.validate();
    const double spacing = spacing_or_default(consts, settings.min_spacing);
    const int elements = consts.total_elements();
    if (initial.radial.size() != elements ||
        initial.vertical.size() != elements)
        throw std::invalid_argument("initial offsets have wrong dimension");

    auto project = [&](ElementOffsets3D x) {
        x = project_offsets(x, consts, spacing);
        x.vertical = x.vertical.cwiseMax(-z_bound).cwiseMin(z_bound);
        return x;
    };

    ElementOffsets3D x = project(initial);
    ArrayLayout layout = layout_from_offsets(x, consts);
    AscentEval current =
        evaluate_layout(layout, paths, config, power_budget, noise_power);

    double step = 0.0;  // set from the first gradient
    for (int it = 0; it < settings.max_iterations; ++it) {
        const Eigen::VectorXd grad_r = grad_sum_rate_wrt_radial(
            layout, paths, config, current.H, current.precode, noise_power);
        const Eigen::VectorXd grad_z =
            z_bound > 0.0
                ? grad_sum_rate_wrt_z(layout, paths, config, current.H,
                                      current.precode, noise_power)
                : Eigen::VectorXd::Zero(elements);
        const double grad_inf =
            std::max(grad_r.lpNorm<Eigen::Infinity>(),
                     grad_z.lpNorm<Eigen::Infinity>());
        if (grad_inf == 0.0) break;

        // First trial step moves the largest coordinate a quarter spacing;
        // the accepted scale carries over and may grow.
        if (step == 0.0) step = (spacing / 4.0) / grad_inf;

        bool accepted = false;
        double improvement = 0.0;
        while (step * grad_inf >= settings.min_step) {
            ElementOffsets3D candidate = x;
            candidate.radial += step * grad_r;
            candidate.vertical += step * grad_z;
            candidate = project(candidate);
            ArrayLayout cand_layout = layout_from_offsets(candidate, consts);
            AscentEval cand_eval = evaluate_layout(cand_layout, paths, config,
                                                   power_budget, noise_power);
            if (cand_eval.rate > current.rate) {
                improvement = cand_eval.rate - current.rate;
                x = std::move(candidate);
                layout = std::move(cand_layout);
                current = std::move(cand_eval);
                accepted = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        if (improvement < settings.tolerance) break;
    }

    RateReport report = sinr(current.H, current.precode, noise_power);
    return {std::move(x), std::move(report)};
}

}  // namespace

std::pair<ElementOffsets2D, RateReport> optimize_2d_ccaa(
    const PathSet& paths, const ArrayConstants& consts,
    const ChannelConfig& config, double power_budget, double noise_power,
    const BaselineSettings& settings, const ElementOffsets2D& initial) {
    ElementOffsets3D init3;
    init3.tentacles = initial.tentacles;
    init3.elements_per_tentacle = initial.elements_per_tentacle;
    init3.radial = initial.radial;
    init3.vertical = Eigen::VectorXd::Zero(initial.radial.size());
    auto [offsets, report] = ascent(paths, consts, config, power_budget,
                                    noise_power, settings, init3, 0.0);
    ElementOffsets2D out;
    out.tentacles = offsets.tentacles;
    out.elements_per_tentacle = offsets.elements_per_tentacle;
    out.radial = offsets.radial;
    return {std::move(out), std::move(report)};
}

std::pair<ElementOffsets2D, RateReport> optimize_2d_ccaa(
    const PathSet& paths, const ArrayConstants& consts,
    const ChannelConfig& config, double power_budget, double noise_power,
    const BaselineSettings& settings) {
    return optimize_2d_ccaa(paths, consts, config, power_budget, noise_power,
                            settings, nominal_offsets(consts));
}

std::pair<ElementOffsets3D, RateReport> optimize_3d_ccaa(
    const PathSet& paths, const ArrayConstants& consts,
    const ChannelConfig& config, double power_budget, double noise_power,
    const BaselineSettings& settings, const ElementOffsets3D& initial,
    double z_bound) {
    const double bound = z_bound < 0.0 ? consts.amplitude_max : z_bound;
    return ascent(paths, consts, config, power_budget, noise_power, settings,
                  initial, bound);
}

}  // namespace sra
