// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator
// Comparison architectures: the undeformed array, per-element radial
// repositioning in the plane (2D), and per-element radial + vertical
// repositioning (3D, an upper-bound construction).

#ifndef SRA_BASELINES_HPP
#define SRA_BASELINES_HPP

#include <Eigen/Dense>

#include "sra/channel.hpp"
#include "sra/geometry.hpp"
#include "sra/precoding.hpp"

namespace sra {

// Per-element radial positions along each tentacle's ray (z = 0). Feasible
// when every radius lies in [0, L_max] and consecutive elements on a ray are
// at least `min_spacing` apart in the ray coordinate.
struct ElementOffsets2D {
    int tentacles = 0;
    int elements_per_tentacle = 0;
    Eigen::VectorXd radial;  // size M*N, ArrayLayout element ordering
};

// 2D offsets plus a per-element vertical coordinate bounded by the same
// amplitude budget as the deformable array, for comparability.
struct ElementOffsets3D {
    int tentacles = 0;
    int elements_per_tentacle = 0;
    Eigen::VectorXd radial;
    Eigen::VectorXd vertical;  // |z| <= amplitude_max
};

struct BaselineSettings {
    int max_iterations = 30;
    double tolerance = 1e-4;   // stop when the accepted rate gain drops below
    double min_step = 1e-10;   // line-search floor on the step scale
    double min_spacing = -1.0; // ray spacing floor; <= 0 means wavelength/2
};

// Element positions with ray azimuths 2*pi*m/M.
ArrayLayout layout_from_offsets(const ElementOffsets2D& offsets,
                                const ArrayConstants& consts);
ArrayLayout layout_from_offsets(const ElementOffsets3D& offsets,
                                const ArrayConstants& consts);

// Undeformed positions r_{m,n} = l_n, z = 0.
ElementOffsets2D nominal_offsets(const ArrayConstants& consts);

// Euclidean projection onto the feasible offset set: per-ray isotonic
// regression with the spacing floor, box bounds, and (3D) vertical clamping.
ElementOffsets2D project_offsets(const ElementOffsets2D& offsets,
                                 const ArrayConstants& consts,
                                 double min_spacing);
ElementOffsets3D project_offsets(const ElementOffsets3D& offsets,
                                 const ArrayConstants& consts,
                                 double min_spacing);

// Sum rate of the undeformed array; identical to evaluating the deformable
// array at the all-zeros state.
RateReport fixed_ccaa_rate(const PathSet& paths, const ArrayConstants& consts,
                           const ChannelConfig& config, double power_budget,
                           double noise_power);

// Projected gradient ascent over radial positions, starting from `initial`
// (nominal when omitted). Accepted steps strictly improve the sum rate.
std::pair<ElementOffsets2D, RateReport> optimize_2d_ccaa(
    const PathSet& paths, const ArrayConstants& consts,
    const ChannelConfig& config, double power_budget, double noise_power,
    const BaselineSettings& settings);
std::pair<ElementOffsets2D, RateReport> optimize_2d_ccaa(
    const PathSet& paths, const ArrayConstants& consts,
    const ChannelConfig& config, double power_budget, double noise_power,
    const BaselineSettings& settings, const ElementOffsets2D& initial);

// As optimize_2d_ccaa with the per-element vertical coordinates appended to
// the ascent variables. `z_bound` overrides the vertical range; a zero bound
// reproduces the 2D optimizer exactly.
std::pair<ElementOffsets3D, RateReport> optimize_3d_ccaa(
    const PathSet& paths, const ArrayConstants& consts,
    const ChannelConfig& config, double power_budget, double noise_power,
    const BaselineSettings& settings, const ElementOffsets3D& initial,
    double z_bound = -1.0);  // < 0 means consts.amplitude_max

}  // namespace sra

#endif  // SRA_BASELINES_HPP
