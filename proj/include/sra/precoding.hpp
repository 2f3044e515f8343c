// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator
// Zero-forcing precoder with sum-power normalization, per-user SINR and the
// network sum rate.

#ifndef SRA_PRECODING_HPP
#define SRA_PRECODING_HPP

#include <Eigen/Dense>
#include <stdexcept>

#include "sra/channel.hpp"
#include "sra/geometry.hpp"

namespace sra {

// Raised when the K x K Gram matrix H H^H of a channel draw is numerically
// singular; callers typically resample the realization.
class rank_deficient_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// W = alpha * F with F the right pseudoinverse of H, so H W = alpha * I and
// trace(W^H W) equals the power budget exactly.
struct PrecodeResult {
    Eigen::MatrixXcd W;  // (M*N) x K
    double alpha = 0.0;
    double power_budget = 0.0;
};

struct RateReport {
    Eigen::VectorXd sinr;   // gamma_k
    Eigen::VectorXd rates;  // log2(1 + gamma_k) [bit/s/Hz]
    double sum_rate = 0.0;
};

// Zero-forcing precoder respecting trace(W^H W) = power_budget.
// F = H^H (H H^H)^{-1} via Cholesky of the Gram matrix, with an eigenvalue
// condition check (rank_deficient_error when cond > 1/rcond_threshold).
PrecodeResult zf_precoder(const ChannelMatrix& H, double power_budget,
                          double rcond_threshold = 1e-12);

// General SINR/rate evaluation; does not assume zero interference, so it is
// valid for any precoding matrix of matching shape.
RateReport sinr(const ChannelMatrix& H, const PrecodeResult& precode,
                double noise_power);

// Canonical objective: geometry -> channel -> ZF -> rates for one state.
RateReport sum_rate(const DeformationState& state, const PathSet& paths,
                    const ArrayConstants& consts, const ChannelConfig& config,
                    double power_budget, double noise_power);

}  // namespace sra

#endif  // SRA_PRECODING_HPP
