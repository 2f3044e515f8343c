// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator

#include "sra/gradient.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "quadrature.hpp"

namespace sra {

namespace {

// Chain rule core shared by the z and radial gradients. `direction_factor`
// is the real factor multiplying -j * 2*pi/lambda in the phase derivative of
// one path at one tentacle.
template <typename DirectionFactor>
Eigen::VectorXd grad_elementwise(const ArrayLayout& layout,
                                 const PathSet& paths,
                                 const ChannelConfig& config,
                                 const ChannelMatrix& H,
                                 const PrecodeResult& precode,
                                 double noise_power,
                                 const DirectionFactor& direction_factor) {
    config.validate();
    if (noise_power <= 0.0)
        throw std::invalid_argument("noise power must be positive");
    const int users = config.users;
    const int elements = layout.total_elements();
    if (H.rows() != users || H.cols() != elements ||
        precode.W.rows() != elements || precode.W.cols() != users)
        throw std::invalid_argument("gradient inputs have inconsistent dimensions");

    const Eigen::MatrixXcd cross = H * precode.W;  // cross(k,i) = h_k^H w_i
    Eigen::MatrixXd power = cross.cwiseAbs2();     // S_ki

    const double scale =
        std::sqrt(static_cast<double>(elements) / config.paths_per_user());
    const double wavenumber = 2.0 * std::numbers::pi / config.wavelength;
    const int per_tentacle = layout.elements_per_tentacle;

    Eigen::VectorXd grad = Eigen::VectorXd::Zero(elements);
    Eigen::VectorXcd d(elements);       // d h_k[e] / d coordinate_e
    Eigen::VectorXcd combined(elements);

    for (int k = 0; k < users; ++k) {
        const double interference =
            power.row(k).sum() - power(k, k);
        const double denom = interference + noise_power;
        const double gamma = power(k, k) / denom;

        // d gamma_k / d S_ki weights.
        Eigen::VectorXd q(users);
        for (int i = 0; i < users; ++i)
            q[i] = (i == k) ? 1.0 / denom : -power(k, k) / (denom * denom);

        // combined[e] = sum_i q_i * cross(k,i) * conj(W(e,i)).
        Eigen::VectorXcd coeff(users);
        for (int i = 0; i < users; ++i) coeff[i] = q[i] * cross(k, i);
        combined = precode.W.conjugate() * coeff;

        d.setZero();
        for (int c = 1; c <= paths.clusters; ++c) {
            for (int p = 1; p <= paths.paths_per_cluster; ++p) {
                const Path& path = paths.at(k + 1, c, p);
                const double amp = std::sqrt(
                    element_gain(path.elevation, path.azimuth, config.directivity));
                if (amp == 0.0) continue;
                const std::complex<double> weight = path.gain * amp;
                const double sin_el = std::sin(path.elevation);
                const Eigen::Vector3d wave =
                    -wavenumber * Eigen::Vector3d(sin_el * std::cos(path.azimuth),
                                                  sin_el * std::sin(path.azimuth),
                                                  std::cos(path.elevation));
                for (int e = 0; e < elements; ++e) {
                    const int tentacle = e / per_tentacle + 1;
                    const double factor = direction_factor(path, tentacle);
                    if (factor == 0.0) continue;
                    const double phase = wave.dot(layout.positions[e]);
                    const std::complex<double> term =
                        weight * std::complex<double>(std::cos(phase), std::sin(phase));
                    // -j * wavenumber * factor * path term
                    d[e] += std::complex<double>(0.0, -wavenumber * factor) * term;
                }
            }
        }
        d *= scale;

        const double outer = 1.0 / (std::numbers::ln2 * (1.0 + gamma));
        for (int e = 0; e < elements; ++e)
            grad[e] += outer * 2.0 * std::real(d[e] * combined[e]);
    }
    return grad;
}

}  // namespace

Eigen::VectorXd grad_sum_rate_wrt_z(const ArrayLayout& layout,
                                    const PathSet& paths,
                                    const ChannelConfig& config,
                                    const ChannelMatrix& H,
                                    const PrecodeResult& precode,
                                    double noise_power) {
    return grad_elementwise(layout, paths, config, H, precode, noise_power,
                            [](const Path& path, int) {
                                return std::cos(path.elevation);
                            });
}

Eigen::VectorXd grad_sum_rate_wrt_radial(const ArrayLayout& layout,
                                         const PathSet& paths,
                                         const ChannelConfig& config,
                                         const ChannelMatrix& H,
                                         const PrecodeResult& precode,
                                         double noise_power) {
    const int tentacles = layout.tentacles;
    return grad_elementwise(
        layout, paths, config, H, precode, noise_power,
        [tentacles](const Path& path, int tentacle) {
            const double theta =
                2.0 * std::numbers::pi * tentacle / tentacles;
            return std::sin(path.elevation) * std::cos(path.azimuth - theta);
        });
}

std::vector<Eigen::MatrixX2d> jacobian(const DeformationState& state,
                                       const ArrayConstants& consts) {
    consts.validate();
    const int M = consts.tentacles;
    const int N = consts.elements_per_tentacle;
    const double L = consts.effective_arc_length();
    if (state.amplitudes.size() != M || state.spatial_freqs.size() != M)
        throw std::invalid_argument("state does not match array constants");

    std::vector<Eigen::MatrixX2d> blocks(M);
    for (int m = 0; m < M; ++m) {
        Eigen::MatrixX2d block(N, 2);
        for (int n = 0; n < N; ++n) {
            const double l = (static_cast<double>(n + 1) / N) * L;
            const double arg = consts.phase + state.spatial_freqs[m] * l;
            block(n, 0) = std::sin(arg);
            block(n, 1) = state.amplitudes[m] * l * std::cos(arg);
        }
        blocks[m] = block;
    }
    return blocks;
}

std::vector<Eigen::MatrixX2d> planar_jacobian(const DeformationState& state,
                                              const ArrayConstants& consts,
                                              double quad_tol) {
    consts.validate();
    const int M = consts.tentacles;
    const int N = consts.elements_per_tentacle;
    const double L = consts.effective_arc_length();
    if (state.amplitudes.size() != M || state.spatial_freqs.size() != M)
        throw std::invalid_argument("state does not match array constants");

    std::vector<Eigen::MatrixX2d> blocks(M);
    for (int m = 0; m < M; ++m) {
        Eigen::MatrixX2d block = Eigen::MatrixX2d::Zero(N, 2);
        const double A = state.amplitudes[m];
        const double v = state.spatial_freqs[m];
        if (A * v != 0.0) {
            // d/dA sqrt(1 - (A v c)^2) = -A v^2 c^2 / sqrt(...),
            // d/dv sqrt(1 - (A v c)^2) = -A^2 (v c^2 - v^2 s c sin) / sqrt(...),
            // with c = cos(v s + phase). The 1/sqrt singularity at |A v| = 1
            // is integrable; the root is floored for the boundary case.
            auto du_dA = [&](double s) {
                const double c = std::cos(v * s + consts.phase);
                const double root = std::sqrt(
                    std::max(1.0 - A * A * v * v * c * c, 1e-12));
                return -A * v * v * c * c / root;
            };
            auto du_dv = [&](double s) {
                const double c = std::cos(v * s + consts.phase);
                const double sn = std::sin(v * s + consts.phase);
                const double root = std::sqrt(
                    std::max(1.0 - A * A * v * v * c * c, 1e-12));
                return -A * A * (v * c * c - v * v * s * c * sn) / root;
            };
            double acc_a = 0.0, acc_v = 0.0, prev = 0.0;
            for (int n = 0; n < N; ++n) {
                const double l = (static_cast<double>(n + 1) / N) * L;
                acc_a += detail::adaptive_gauss_kronrod(du_dA, prev, l,
                                                        quad_tol / N);
                acc_v += detail::adaptive_gauss_kronrod(du_dv, prev, l,
                                                        quad_tol / N);
                block(n, 0) = acc_a;
                block(n, 1) = acc_v;
                prev = l;
            }
        }
        blocks[m] = block;
    }
    return blocks;
}

Eigen::VectorXd grad_sum_rate_wrt_params(const DeformationState& state,
                                         const ArrayConstants& consts,
                                         const Eigen::VectorXd& g_bar) {
    const int M = consts.tentacles;
    const int N = consts.elements_per_tentacle;
    if (g_bar.size() != static_cast<Eigen::Index>(M) * N)
        throw std::invalid_argument("g_bar does not match array dimensions");

    const std::vector<Eigen::MatrixX2d> blocks = jacobian(state, consts);
    Eigen::VectorXd grad(2 * M);
    for (int m = 0; m < M; ++m) {
        const Eigen::Vector2d g =
            blocks[m].transpose() * g_bar.segment(static_cast<Eigen::Index>(m) * N, N);
        grad[m] = g[0];      // d/dA_m
        grad[M + m] = g[1];  // d/dv_m
    }
    return grad;
}

}  // namespace sra
