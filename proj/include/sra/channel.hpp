// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator
// Geometric multipath channel: per-user cluster/path draws, element steering
// phases, directional element pattern, and channel matrix assembly.

#ifndef SRA_CHANNEL_HPP
#define SRA_CHANNEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "sra/geometry.hpp"

namespace sra {

// Element power pattern. Directional elements follow the z-oriented cosine
// pattern Q * cos(elevation)^kappa with Q = 2 * (kappa + 1); omnidirectional
// elements have unit gain.
struct Directivity {
    bool omnidirectional = false;
    double kappa = 2.0;  // sharpness, >= 1 when directional
};

struct ChannelConfig {
    int users = 2;             // K
    int clusters = 3;          // N_c
    int paths_per_cluster = 10;  // N_p
    Directivity directivity;
    double wavelength = 0.2498273816666667;  // [m]
    std::uint64_t seed = 0;

    int paths_per_user() const { return clusters * paths_per_cluster; }
    void validate() const;  // throws std::invalid_argument
};

// One scattering path: complex gain ~ CN(0,1), elevation in [0, pi/2),
// azimuth in [0, 2*pi).
struct Path {
    std::complex<double> gain;
    double elevation;
    double azimuth;
};

// All K * N_c * N_p paths; path (k, c, p) lives at
// ((k-1)*N_c + (c-1))*N_p + (p-1) for 1-based indices.
struct PathSet {
    int users = 0;
    int clusters = 0;
    int paths_per_cluster = 0;
    std::vector<Path> paths;

    const Path& at(int user, int cluster, int path) const {  // 1-based
        return paths[(static_cast<size_t>(user - 1) * clusters + (cluster - 1)) *
                         paths_per_cluster +
                     (path - 1)];
    }
};

// K x (M*N) channel matrix whose k-th row is the conjugate transpose of the
// k-th user's channel vector h_k; element ordering matches ArrayLayout.
using ChannelMatrix = Eigen::MatrixXcd;

// Draws the full path set for `config.seed`. User k consumes the substream
// substream_seed(seed, k), so draws are stable when users are appended.
// Per path, the draw order is gain (one normal pair), elevation, azimuth.
PathSet draw_paths(const ChannelConfig& config);

// Steering phase of one element for a plane wave from (elevation, azimuth):
//   exp(-j * 2*pi/lambda * (x sin(el) cos(az) + y sin(el) sin(az) + z cos(el))).
// Unit modulus by construction.
std::complex<double> steering_entry(const Eigen::Vector3d& position,
                                    double elevation, double azimuth,
                                    double wavelength);

// Element power gain Q_E for a path direction; callers apply sqrt(Q_E) per
// element. Azimuth does not enter the cosine pattern but is part of the
// pattern's domain.
double element_gain(double elevation, double azimuth,
                    const Directivity& directivity);

// h_k = sqrt(MN / (N_c N_p)) * sum_{c,p} gain * (steering .* sqrt(Q_E));
// rows of the result hold h_k^H.
ChannelMatrix assemble_channel(const ArrayLayout& layout, const PathSet& paths,
                               const ChannelConfig& config);

}  // namespace sra

#endif  // SRA_CHANNEL_HPP
