// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator

#include "oracles.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace oracle {

namespace {

double simpson_panel(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_recurse(const std::function<double(double)>& f, double a,
                       double fa, double b, double fb, double m, double fm,
                       double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_panel(a, m, fa, flm, fm);
    const double right = simpson_panel(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_recurse(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
           simpson_recurse(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = simpson_panel(a, b, fa, fm, fb);
    return simpson_recurse(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

double projected_length(double amplitude, double spatial_freq, double ell,
                        double phase, double tol) {
    if (std::abs(amplitude * spatial_freq) > 1.0)
        throw std::domain_error("|A*v| > 1");
    auto f = [&](double s) {
        const double c =
            amplitude * spatial_freq * std::cos(spatial_freq * s + phase);
        return std::sqrt(std::max(0.0, 1.0 - c * c));
    };
    return adaptive_simpson(f, 0.0, ell, tol);
}

Eigen::MatrixXcd channel_matrix(const std::vector<Eigen::Vector3d>& positions,
                                const sra::PathSet& paths,
                                const sra::ChannelConfig& config) {
    const int elements = static_cast<int>(positions.size());
    const int users = paths.users;
    const double scale = std::sqrt(static_cast<double>(elements) /
                                   (paths.clusters * paths.paths_per_cluster));
    Eigen::MatrixXcd H(users, elements);
    for (int k = 1; k <= users; ++k) {
        for (int e = 0; e < elements; ++e) {
            std::complex<double> h = 0.0;
            for (int c = 1; c <= paths.clusters; ++c) {
                for (int p = 1; p <= paths.paths_per_cluster; ++p) {
                    const sra::Path& path = paths.at(k, c, p);
                    double gain = 1.0;
                    if (!config.directivity.omnidirectional) {
                        if (path.elevation < 0.0 ||
                            path.elevation > std::numbers::pi / 2.0)
                            gain = 0.0;
                        else
                            gain = 2.0 * (config.directivity.kappa + 1.0) *
                                   std::pow(std::cos(path.elevation),
                                            config.directivity.kappa);
                    }
                    const double phase =
                        -(2.0 * std::numbers::pi / config.wavelength) *
                        (positions[e].x() * std::sin(path.elevation) *
                             std::cos(path.azimuth) +
                         positions[e].y() * std::sin(path.elevation) *
                             std::sin(path.azimuth) +
                         positions[e].z() * std::cos(path.elevation));
                    h += path.gain * std::sqrt(gain) *
                         std::complex<double>(std::cos(phase), std::sin(phase));
                }
            }
            H(k - 1, e) = std::conj(scale * h);
        }
    }
    return H;
}

Eigen::VectorXd sinr(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& W,
                     double noise_power) {
    const int users = static_cast<int>(H.rows());
    Eigen::VectorXd out(users);
    for (int k = 0; k < users; ++k) {
        double signal = 0.0;
        double interference = 0.0;
        for (int i = 0; i < users; ++i) {
            std::complex<double> dot = 0.0;
            for (int e = 0; e < H.cols(); ++e) dot += H(k, e) * W(e, i);
            if (i == k)
                signal = std::norm(dot);
            else
                interference += std::norm(dot);
        }
        out[k] = signal / (interference + noise_power);
    }
    return out;
}

double sum_rate_for(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& W,
                    double noise_power) {
    const Eigen::VectorXd gammas = sinr(H, W, noise_power);
    double rate = 0.0;
    for (int k = 0; k < gammas.size(); ++k) rate += std::log2(1.0 + gammas[k]);
    return rate;
}

Eigen::MatrixXcd inverse(const Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    Eigen::MatrixXcd work = a;
    Eigen::MatrixXcd inv = Eigen::MatrixXcd::Identity(n, n);
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;
        if (std::abs(work(pivot, col)) == 0.0)
            throw std::runtime_error("singular matrix in oracle inverse");
        work.row(col).swap(work.row(pivot));
        inv.row(col).swap(inv.row(pivot));
        const std::complex<double> d = work(col, col);
        work.row(col) /= d;
        inv.row(col) /= d;
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const std::complex<double> factor = work(r, col);
            work.row(r) -= factor * work.row(col);
            inv.row(r) -= factor * inv.row(col);
        }
    }
    return inv;
}

double sum_rate(const sra::DeformationState& state,
                const sra::ArrayConstants& consts, const sra::PathSet& paths,
                const sra::ChannelConfig& config, double power_budget,
                double noise_power) {
    const int M = consts.tentacles;
    const int N = consts.elements_per_tentacle;
    const double L = consts.effective_arc_length();
    std::vector<Eigen::Vector3d> positions(static_cast<size_t>(M) * N);
    for (int m = 0; m < M; ++m) {
        const double theta = 2.0 * std::numbers::pi * (m + 1) / M;
        for (int n = 0; n < N; ++n) {
            const double l = (static_cast<double>(n + 1) / N) * L;
            const double u = projected_length(state.amplitudes[m],
                                              state.spatial_freqs[m], l,
                                              consts.phase, 1e-12);
            positions[static_cast<size_t>(m) * N + n] = Eigen::Vector3d(
                u * std::cos(theta), u * std::sin(theta),
                state.amplitudes[m] *
                    std::sin(consts.phase + state.spatial_freqs[m] * l));
        }
    }
    const Eigen::MatrixXcd H = channel_matrix(positions, paths, config);
    const Eigen::MatrixXcd gram = H * H.adjoint();
    const Eigen::MatrixXcd F = H.adjoint() * inverse(gram);
    const double alpha = std::sqrt(power_budget / F.squaredNorm());
    return sum_rate_for(H, alpha * F, noise_power);
}

double rate_frozen(const std::vector<Eigen::Vector3d>& positions,
                   const sra::PathSet& paths, const sra::ChannelConfig& config,
                   const Eigen::MatrixXcd& W, double noise_power) {
    return sum_rate_for(channel_matrix(positions, paths, config), W,
                        noise_power);
}

Eigen::VectorXd fd_grad_z(const std::vector<Eigen::Vector3d>& positions,
                          const sra::PathSet& paths,
                          const sra::ChannelConfig& config,
                          const Eigen::MatrixXcd& W, double noise_power,
                          double step) {
    Eigen::VectorXd grad(positions.size());
    std::vector<Eigen::Vector3d> work = positions;
    for (size_t e = 0; e < positions.size(); ++e) {
        work[e].z() = positions[e].z() + step;
        const double up = rate_frozen(work, paths, config, W, noise_power);
        work[e].z() = positions[e].z() - step;
        const double down = rate_frozen(work, paths, config, W, noise_power);
        work[e].z() = positions[e].z();
        grad[e] = (up - down) / (2.0 * step);
    }
    return grad;
}

Eigen::VectorXd fd_grad_radial(const std::vector<Eigen::Vector3d>& positions,
                               const sra::PathSet& paths,
                               const sra::ChannelConfig& config,
                               const Eigen::MatrixXcd& W, double noise_power,
                               double step, int tentacles, int per_tentacle) {
    Eigen::VectorXd grad(positions.size());
    std::vector<Eigen::Vector3d> work = positions;
    for (size_t e = 0; e < positions.size(); ++e) {
        const int m = static_cast<int>(e) / per_tentacle + 1;
        const double theta = 2.0 * std::numbers::pi * m / tentacles;
        const Eigen::Vector3d dir(std::cos(theta), std::sin(theta), 0.0);
        work[e] = positions[e] + step * dir;
        const double up = rate_frozen(work, paths, config, W, noise_power);
        work[e] = positions[e] - step * dir;
        const double down = rate_frozen(work, paths, config, W, noise_power);
        work[e] = positions[e];
        grad[e] = (up - down) / (2.0 * step);
    }
    return grad;
}

}  // namespace oracle
