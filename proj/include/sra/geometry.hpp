// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator
// Tentacle geometry: sinusoidal vertical deformation with fixed arc length,
// planar contraction integral, and discrete element positions.

#ifndef SRA_GEOMETRY_HPP
#define SRA_GEOMETRY_HPP

#include <Eigen/Dense>
#include <vector>

namespace sra {

// Structural constants of the array. The deformation of tentacle m is
// z(l) = A_m * sin(phase + v_m * l) along a curve of fixed arc length
// `arc_length`; elements sit at arc positions l_n = (n/N) * arc_length.
struct ArrayConstants {
    int tentacles = 8;               // M
    int elements_per_tentacle = 4;   // N
    double arc_length = 0.0;         // L_max [m]; <= 0 means N * wavelength / 2
    double amplitude_max = 0.2;      // A_max [m]
    double spatial_freq_max = 5.0;   // v_max [1/m]
    double wavelength = 0.2498273816666667;  // lambda [m] (c / 1.2 GHz)
    double phase = 0.0;              // fixed oscillation phase [rad]

    int total_elements() const { return tentacles * elements_per_tentacle; }
    double effective_arc_length() const {
        return arc_length > 0.0 ? arc_length
                                : elements_per_tentacle * wavelength / 2.0;
    }
    // Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

// Per-tentacle deformation parameters, the 2M optimization variables.
// Feasible iff 0 <= A_m <= A_max, 0 <= v_m <= v_max and |A_m * v_m| <= 1
// (the last keeps the contraction integrand real).
struct DeformationState {
    Eigen::VectorXd amplitudes;     // A_m [m]
    Eigen::VectorXd spatial_freqs;  // v_m [1/m]

    static DeformationState zero(int tentacles);
    // Flat vector [A_1..A_M, v_1..v_M].
    Eigen::VectorXd packed() const;
    static DeformationState unpack(const Eigen::VectorXd& zbar);
    bool feasible(const ArrayConstants& consts, double tol = 1e-12) const;
    // Throws std::domain_error when infeasible.
    void validate(const ArrayConstants& consts) const;
};

// Discrete element positions; element (m, n) lives at flat index
// (m-1)*N + (n-1) for 1-based m, n.
struct ArrayLayout {
    int tentacles = 0;
    int elements_per_tentacle = 0;
    std::vector<Eigen::Vector3d> positions;  // size M*N
    Eigen::VectorXd arc_positions;           // l_n = (n/N) * L_max, size N

    int total_elements() const { return tentacles * elements_per_tentacle; }
    int flat_index(int m, int n) const {  // 1-based tentacle / element
        return (m - 1) * elements_per_tentacle + (n - 1);
    }
};

// Largest spatial frequency not above `freq` with amplitude * freq <= 1
// under floating-point rounding; identity when the pair is already feasible.
double cap_freq_to_product(double amplitude, double freq);

// Planar length of the arc [0, l] after vertical deformation:
//   u(l) = \int_0^l sqrt(1 - (A v cos(v s + phase))^2) ds.
// Computed with an adaptive Gauss-Kronrod rule to absolute error <= tol;
// u(l) <= l always and u(l) = l exactly when A*v = 0.
// Throws std::domain_error if |A*v| > 1 or l < 0.
double projected_length(double amplitude, double spatial_freq, double ell,
                        double phase = 0.0, double tol = 1e-10);

// Positions of all M*N elements for a feasible deformation state.
// Tentacle m points at azimuth theta_m = 2*pi*m/M; element (m, n) is at
//   ( u_m(l_n) cos(theta_m), u_m(l_n) sin(theta_m),
//     A_m sin(phase + v_m l_n) ).
ArrayLayout element_positions(const DeformationState& state,
                              const ArrayConstants& consts,
                              double quad_tol = 1e-10);

// Numerically re-measures the length of tentacle m by summing chords of the
// computed curve over `samples` subdivisions. A correct deformation model
// returns effective_arc_length() up to discretization error. Test utility.
double verify_arc_length(const DeformationState& state, int tentacle,
                         const ArrayConstants& consts, int samples = 10000);

}  // namespace sra

#endif  // SRA_GEOMETRY_HPP
