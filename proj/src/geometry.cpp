// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator

#include "sra/geometry.hpp"

#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sra {

namespace {

using detail::adaptive_gauss_kronrod;
using detail::gauss_kronrod_panel;

double contraction_integrand(double amplitude, double spatial_freq,
                             double phase, double s) {
    const double c = amplitude * spatial_freq *
                     std::cos(spatial_freq * s + phase);
    const double one_minus = 1.0 - c * c;
    return one_minus > 0.0 ? std::sqrt(one_minus) : 0.0;
}

}  // namespace

void ArrayConstants::validate() const {
    if (tentacles < 1) throw std::invalid_argument("tentacles must be >= 1");
    if (elements_per_tentacle < 1)
        throw std::invalid_argument("elements_per_tentacle must be >= 1");
    if (effective_arc_length() <= 0.0)
        throw std::invalid_argument("arc_length must be positive");
    if (amplitude_max < 0.0)
        throw std::invalid_argument("amplitude_max must be >= 0");
    if (spatial_freq_max < 0.0)
        throw std::invalid_argument("spatial_freq_max must be >= 0");
    if (wavelength <= 0.0)
        throw std::invalid_argument("wavelength must be positive");
    if (!std::isfinite(phase)) throw std::invalid_argument("phase must be finite");
}

DeformationState DeformationState::zero(int tentacles) {
    DeformationState s;
    s.amplitudes = Eigen::VectorXd::Zero(tentacles);
    s.spatial_freqs = Eigen::VectorXd::Zero(tentacles);
    return s;
}

Eigen::VectorXd DeformationState::packed() const {
    Eigen::VectorXd z(amplitudes.size() + spatial_freqs.size());
    z << amplitudes, spatial_freqs;
    return z;
}

DeformationState DeformationState::unpack(const Eigen::VectorXd& zbar) {
    if (zbar.size() % 2 != 0)
        throw std::invalid_argument("packed state must have even length");
    const Eigen::Index m = zbar.size() / 2;
    DeformationState s;
    s.amplitudes = zbar.head(m);
    s.spatial_freqs = zbar.tail(m);
    return s;
}

bool DeformationState::feasible(const ArrayConstants& consts, double tol) const {
    if (amplitudes.size() != consts.tentacles ||
        spatial_freqs.size() != consts.tentacles)
        return false;
    for (int m = 0; m < consts.tentacles; ++m) {
        const double a = amplitudes[m];
        const double v = spatial_freqs[m];
        if (a < -tol || a > consts.amplitude_max + tol) return false;
        if (v < -tol || v > consts.spatial_freq_max + tol) return false;
        if (std::abs(a * v) > 1.0 + tol) return false;
    }
    return true;
}

void DeformationState::validate(const ArrayConstants& consts) const {
    if (amplitudes.size() != consts.tentacles ||
        spatial_freqs.size() != consts.tentacles)
        throw std::domain_error("deformation state has wrong dimension");
    for (int m = 0; m < consts.tentacles; ++m) {
        const double a = amplitudes[m];
        const double v = spatial_freqs[m];
        if (a < 0.0 || a > consts.amplitude_max)
            throw std::domain_error("amplitude " + std::to_string(m + 1) +
                                    " outside [0, amplitude_max]");
        if (v < 0.0 || v > consts.spatial_freq_max)
            throw std::domain_error("spatial frequency " + std::to_string(m + 1) +
                                    " outside [0, spatial_freq_max]");
        if (std::abs(a * v) > 1.0)
            throw std::domain_error("amplitude * spatial frequency exceeds 1 on tentacle " +
                                    std::to_string(m + 1));
    }
}

double cap_freq_to_product(double amplitude, double freq) {
    if (amplitude * freq <= 1.0) return freq;
    freq = 1.0 / amplitude;
    while (amplitude * freq > 1.0) freq = std::nextafter(freq, 0.0);
    return freq;
}

double projected_length(double amplitude, double spatial_freq, double ell,
                        double phase, double tol) {
    if (ell < 0.0) throw std::domain_error("arc position must be >= 0");
    if (tol <= 0.0) throw std::domain_error("quadrature tolerance must be > 0");
    const double av = amplitude * spatial_freq;
    if (std::abs(av) > 1.0)
        throw std::domain_error("contraction integrand undefined: |A*v| > 1");
    if (av == 0.0 || ell == 0.0) return ell;  // no vertical slope anywhere
    auto f = [&](double s) {
        return contraction_integrand(amplitude, spatial_freq, phase, s);
    };
    const double u = adaptive_gauss_kronrod(f, 0.0, ell, tol);
    return std::min(u, ell);  // integrand <= 1, so u <= l up to roundoff
}

ArrayLayout element_positions(const DeformationState& state,
                              const ArrayConstants& consts,
                              double quad_tol) {
    consts.validate();
    state.validate(consts);
    const int M = consts.tentacles;
    const int N = consts.elements_per_tentacle;
    const double L = consts.effective_arc_length();

    ArrayLayout layout;
    layout.tentacles = M;
    layout.elements_per_tentacle = N;
    layout.positions.resize(static_cast<size_t>(M) * N);
    layout.arc_positions.resize(N);
    for (int n = 0; n < N; ++n)
        layout.arc_positions[n] = (static_cast<double>(n + 1) / N) * L;

    for (int m = 0; m < M; ++m) {
        const double theta = 2.0 * std::numbers::pi * (m + 1) / M;
        const double A = state.amplitudes[m];
        const double v = state.spatial_freqs[m];
        // Incremental quadrature: u(l_n) = u(l_{n-1}) + integral over the gap.
        double u = 0.0;
        double prev_l = 0.0;
        auto f = [&](double s) {
            return contraction_integrand(A, v, consts.phase, s);
        };
        for (int n = 0; n < N; ++n) {
            const double l = layout.arc_positions[n];
            if (A * v == 0.0) {
                u = l;
            } else {
                u += adaptive_gauss_kronrod(f, prev_l, l, quad_tol / N);
                u = std::min(u, l);
            }
            prev_l = l;
            layout.positions[static_cast<size_t>(m) * N + n] =
                Eigen::Vector3d(u * std::cos(theta), u * std::sin(theta),
                                A * std::sin(consts.phase + v * l));
        }
    }
    return layout;
}

double verify_arc_length(const DeformationState& state, int tentacle,
                         const ArrayConstants& consts, int samples) {
    consts.validate();
    state.validate(consts);
    if (tentacle < 1 || tentacle > consts.tentacles)
        throw std::domain_error("tentacle index out of range");
    if (samples < 10) throw std::domain_error("samples must be >= 10");

    const double L = consts.effective_arc_length();
    const double A = state.amplitudes[tentacle - 1];
    const double v = state.spatial_freqs[tentacle - 1];
    auto f = [&](double s) {
        return contraction_integrand(A, v, consts.phase, s);
    };

    double length = 0.0;
    double u_prev = 0.0;
    double z_prev = A * std::sin(consts.phase);
    for (int i = 1; i <= samples; ++i) {
        const double l0 = L * (i - 1) / samples;
        const double l1 = L * i / samples;
        const double u = (A * v == 0.0)
                             ? l1
                             : u_prev + gauss_kronrod_panel(f, l0, l1).integral;
        const double z = A * std::sin(consts.phase + v * l1);
        length += std::hypot(u - u_prev, z - z_prev);
        u_prev = u;
        z_prev = z;
    }
    return length;
}

}  // namespace sra
