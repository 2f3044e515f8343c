// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator

#include "sra/precoding.hpp"

#include <cmath>

namespace sra {

PrecodeResult zf_precoder(const ChannelMatrix& H, double power_budget,
                          double rcond_threshold) {
    const Eigen::Index users = H.rows();
    const Eigen::Index elements = H.cols();
    if (users < 1) throw std::invalid_argument("channel matrix has no rows");
    if (users > elements)
        throw std::invalid_argument("zero forcing needs K <= M*N");
    if (power_budget <= 0.0)
        throw std::invalid_argument("power budget must be positive");

    const Eigen::MatrixXcd gram = H * H.adjoint();  // K x K Hermitian PSD

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    const double lambda_min = eig.eigenvalues().minCoeff();
    const double lambda_max = eig.eigenvalues().maxCoeff();
    if (!(lambda_min > 0.0) || lambda_min <= lambda_max * rcond_threshold)
        throw rank_deficient_error("channel draw is rank deficient (Gram rcond below threshold)");

    Eigen::LLT<Eigen::MatrixXcd> llt(gram);
    if (llt.info() != Eigen::Success)
        throw rank_deficient_error("Cholesky factorization of Gram matrix failed");

    // F = H^H * gram^{-1}; solve gram * X = H, then F = X^H.
    const Eigen::MatrixXcd F = llt.solve(H).adjoint();

    PrecodeResult result;
    result.power_budget = power_budget;
    result.alpha = std::sqrt(power_budget / F.squaredNorm());
    result.W = result.alpha * F;
    return result;
}

RateReport sinr(const ChannelMatrix& H, const PrecodeResult& precode,
                double noise_power) {
    if (noise_power <= 0.0)
        throw std::invalid_argument("noise power must be positive");
    if (precode.W.rows() != H.cols() || precode.W.cols() != H.rows())
        throw std::invalid_argument("precoder and channel dimensions disagree");

    const Eigen::Index users = H.rows();
    const Eigen::MatrixXcd cross = H * precode.W;  // cross(k,i) = h_k^H w_i

    RateReport report;
    report.sinr.resize(users);
    report.rates.resize(users);
    for (Eigen::Index k = 0; k < users; ++k) {
        double interference = 0.0;
        for (Eigen::Index i = 0; i < users; ++i)
            if (i != k) interference += std::norm(cross(k, i));
        report.sinr[k] = std::norm(cross(k, k)) / (interference + noise_power);
        report.rates[k] = std::log2(1.0 + report.sinr[k]);
    }
    report.sum_rate = report.rates.sum();
    return report;
}

RateReport sum_rate(const DeformationState& state, const PathSet& paths,
                    const ArrayConstants& consts, const ChannelConfig& config,
                    double power_budget, double noise_power) {
    const ArrayLayout layout = element_positions(state, consts);
    const ChannelMatrix H = assemble_channel(layout, paths, config);
    const PrecodeResult precode = zf_precoder(H, power_budget);
    return sinr(H, precode, noise_power);
}

}  // namespace sra
