// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator
// Analytic sum-rate gradients. The precoder is treated as a constant and the
// planar coordinates are held fixed, which matches the optimizer's surrogate
// model; the true objective is always re-evaluated with the full pipeline.

#ifndef SRA_GRADIENT_HPP
#define SRA_GRADIENT_HPP

#include <Eigen/Dense>
#include <vector>

#include "sra/channel.hpp"
#include "sra/geometry.hpp"
#include "sra/precoding.hpp"

namespace sra {

// d sum_rate / d z_e for every element e, with W frozen. Each path term of
// h_k picks up the factor -j * (2*pi/lambda) * cos(elevation) when its
// element moves along z, and only entry e of h_k depends on z_e.
Eigen::VectorXd grad_sum_rate_wrt_z(const ArrayLayout& layout,
                                    const PathSet& paths,
                                    const ChannelConfig& config,
                                    const ChannelMatrix& H,
                                    const PrecodeResult& precode,
                                    double noise_power);

// d sum_rate / d r_e for movement along each element's tentacle ray in the
// xy-plane (azimuth theta_m); the per-path factor becomes
// -j * (2*pi/lambda) * sin(elevation) * cos(azimuth - theta_m).
Eigen::VectorXd grad_sum_rate_wrt_radial(const ArrayLayout& layout,
                                         const PathSet& paths,
                                         const ChannelConfig& config,
                                         const ChannelMatrix& H,
                                         const PrecodeResult& precode,
                                         double noise_power);

// Per-tentacle Jacobian blocks of the map (A_m, v_m) -> z_{m,n}:
//   row n of block m = [ sin(phase + v_m l_n), A_m l_n cos(phase + v_m l_n) ].
// The full MN x 2M Jacobian is block diagonal in these.
std::vector<Eigen::MatrixX2d> jacobian(const DeformationState& state,
                                       const ArrayConstants& consts);

// Per-tentacle Jacobian blocks of the planar contraction u_m(l_n) with
// respect to (A_m, v_m), by quadrature of the analytic integrand
// derivatives. Unbounded only at |A*v| = 1 (clamped); used to augment the
// optimizer's search direction with the footprint motion that the
// z-only gradient ignores.
std::vector<Eigen::MatrixX2d> planar_jacobian(const DeformationState& state,
                                              const ArrayConstants& consts,
                                              double quad_tol = 1e-8);

// grad over [A_1..A_M, v_1..v_M]: J^T * g_bar using the block structure,
// never materializing the sparse Jacobian.
Eigen::VectorXd grad_sum_rate_wrt_params(const DeformationState& state,
                                         const ArrayConstants& consts,
                                         const Eigen::VectorXd& g_bar);

}  // namespace sra

#endif  // SRA_GRADIENT_HPP
