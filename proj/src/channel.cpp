// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator

#include "sra/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sra/rng.hpp"

namespace sra {

void ChannelConfig::validate() const {
    if (users < 1) throw std::invalid_argument("users must be >= 1");
    if (clusters < 1) throw std::invalid_argument("clusters must be >= 1");
    if (paths_per_cluster < 1)
        throw std::invalid_argument("paths_per_cluster must be >= 1");
    if (!directivity.omnidirectional && directivity.kappa < 1.0)
        throw std::invalid_argument("directivity kappa must be >= 1");
    if (wavelength <= 0.0)
        throw std::invalid_argument("wavelength must be positive");
}

PathSet draw_paths(const ChannelConfig& config) {
    config.validate();
    PathSet set;
    set.users = config.users;
    set.clusters = config.clusters;
    set.paths_per_cluster = config.paths_per_cluster;
    set.paths.resize(static_cast<size_t>(config.users) * config.paths_per_user());

    for (int k = 0; k < config.users; ++k) {
        Rng rng(substream_seed(config.seed, static_cast<std::uint64_t>(k)));
        for (int i = 0; i < config.paths_per_user(); ++i) {
            Path& path = set.paths[static_cast<size_t>(k) * config.paths_per_user() + i];
            path.gain = rng.standard_complex_gaussian();
            path.elevation = rng.uniform(0.0, std::numbers::pi / 2.0);
            path.azimuth = rng.uniform(0.0, 2.0 * std::numbers::pi);
        }
    }
    return set;
}

std::complex<double> steering_entry(const Eigen::Vector3d& position,
                                    double elevation, double azimuth,
                                    double wavelength) {
    if (wavelength <= 0.0)
        throw std::invalid_argument("wavelength must be positive");
    const double sin_el = std::sin(elevation);
    const double phase = -(2.0 * std::numbers::pi / wavelength) *
                         (position.x() * sin_el * std::cos(azimuth) +
                          position.y() * sin_el * std::sin(azimuth) +
                          position.z() * std::cos(elevation));
    return {std::cos(phase), std::sin(phase)};
}

double element_gain(double elevation, double azimuth,
                    const Directivity& directivity) {
    (void)azimuth;  // cosine pattern is rotationally symmetric about z
    if (directivity.omnidirectional) return 1.0;
    if (elevation < 0.0 || elevation > std::numbers::pi / 2.0) return 0.0;
    const double q = 2.0 * (directivity.kappa + 1.0);
    return q * std::pow(std::cos(elevation), directivity.kappa);
}

ChannelMatrix assemble_channel(const ArrayLayout& layout, const PathSet& paths,
                               const ChannelConfig& config) {
    config.validate();
    const int elements = layout.total_elements();
    if (paths.users != config.users || paths.clusters != config.clusters ||
        paths.paths_per_cluster != config.paths_per_cluster)
        throw std::invalid_argument("path set does not match channel config");
    if (static_cast<int>(layout.positions.size()) != elements)
        throw std::invalid_argument("layout positions inconsistent with dimensions");

    const double scale =
        std::sqrt(static_cast<double>(elements) / config.paths_per_user());
    ChannelMatrix H(config.users, elements);

    const double wavenumber = 2.0 * std::numbers::pi / config.wavelength;
    Eigen::VectorXcd h(elements);
    for (int k = 1; k <= config.users; ++k) {
        h.setZero();
        for (int c = 1; c <= config.clusters; ++c) {
            for (int p = 1; p <= config.paths_per_cluster; ++p) {
                const Path& path = paths.at(k, c, p);
                const double amp = std::sqrt(
                    element_gain(path.elevation, path.azimuth, config.directivity));
                if (amp == 0.0) continue;
                const std::complex<double> weight = path.gain * amp;
                const Eigen::Vector3d wave =
                    -wavenumber *
                    Eigen::Vector3d(std::sin(path.elevation) * std::cos(path.azimuth),
                                    std::sin(path.elevation) * std::sin(path.azimuth),
                                    std::cos(path.elevation));
                for (int e = 0; e < elements; ++e) {
                    const double phase = wave.dot(layout.positions[e]);
                    h[e] += weight * std::complex<double>(std::cos(phase),
                                                          std::sin(phase));
                }
            }
        }
        H.row(k - 1) = (scale * h).adjoint();
    }
    return H;
}

}  // namespace sra
