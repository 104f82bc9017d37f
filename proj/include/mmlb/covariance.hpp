#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mmlb/report.hpp"

namespace mmlb {

/// Smallest integer exceeding 2 sum_{j>=1} j^{-alpha-1} + 1 (sum truncated
/// at 10^6 terms). With this value the base matrix is strictly diagonally
/// dominant, hence positive definite.
double default_cov_delta(double alpha);

/// Banded covariance family on p coordinates: a_ii = 1,
/// a_ij = 1 / (delta |i-j|^{alpha+1}). Member tau in {0,1}^k scales row r < k
/// of the upper-right k x (p-k) block (and the mirrored column) by tau_r.
struct CovFamily {
    unsigned p = 0;
    unsigned k = 0;
    double alpha = 1.0;
    double delta = 1.0;
    Eigen::MatrixXd base;

    /// A(tau); throws std::invalid_argument when the result is not positive
    /// definite.
    Eigen::MatrixXd materialize(std::span<const int> tau) const;
    /// sum_{i=k}^{2k-1} 1 / (delta i^{alpha+1}), the smallest possible row sum
    /// of the first k columns of the scaled block.
    double harmonic_tail() const;
};

bool is_positive_definite(const Eigen::MatrixXd& m);

/// Requires 2k <= p, alpha > 0, delta >= 1; delta defaults to
/// default_cov_delta(alpha). Throws std::invalid_argument when the base
/// matrix is not positive definite.
CovFamily build_cov_family(unsigned p, unsigned k, double alpha, std::optional<double> delta = std::nullopt);

struct SpectralSeparation {
    double achieved = 0.0;
    double guaranteed = 0.0;
    unsigned hamming = 0;
};

/// achieved = ||A(tau) - A(tau')|| (spectral norm, symmetric eigen-solver);
/// guaranteed = harmonic_tail * sqrt(hamming / k). Requires tau != tau'.
SpectralSeparation spectral_separation(const CovFamily& fam, std::span<const int> tau,
                                       std::span<const int> tau_prime);

/// KL(N(0, sigma0)^n || N(0, sigma1)^n). Throws std::invalid_argument for
/// non-square, mismatched or non positive definite input.
double gaussian_kl(const Eigen::MatrixXd& sigma0, const Eigen::MatrixXd& sigma1, unsigned n = 1);

struct KlFrobenius {
    std::vector<int> tau_prime;
    double exact_kl = 0.0;
    double frobenius_sq = 0.0;
    double tail_bound = 0.0;
    /// C with exact_kl <= C * frobenius_sq, from
    /// x - log(1+x) <= x^2 / (2 min(1, 1+x)):
    /// C = 1 / (4 lmin(A(tau'))^2 min(1, lmin(A(tau)) / lmax(A(tau')))).
    double kl_constant = 0.0;
};

/// Compares A(tau) with A(tau'), tau' being tau with its first m-1
/// coordinates set to zero (1 <= m < k). Returns the single-sample KL, the
/// squared Frobenius distance and the tail sum
/// 2 sum_{r<m-1} sum_{j<p-k} a_{r,k+j}^2 (0-based), which bounds it.
KlFrobenius kl_frobenius_check(const CovFamily& fam, std::span<const int> tau, unsigned m);

struct CovmatConstants {
    /// k = ceil(4 delta_report n^{1/(2 alpha+1)}).
    double delta_report = 2.0;
    /// k - m = ceil(km_scale n^{1/(2 alpha+1)}) unless k_minus_m is given.
    double km_scale = 0.5;
    std::optional<unsigned> k_minus_m;
    std::optional<double> delta_a;
    std::uint64_t seed = 0;
};

/// Fano lower bound for spectral-norm covariance estimation over the banded
/// class: eta = harmonic_tail sqrt(min_hamming / k) separates the code
/// members, J_KL <= (k-m+1) log 2 + n max_tau KL(A(tau) || A(tau')), and the
/// bound is (eta/2) max(0, 1 - (log 2 + J_KL) / log |W|). Throws
/// std::invalid_argument when p < 2k or k - m is not in [1, k-1].
BoundReport covmat_bound_assembly(unsigned n, unsigned p, double alpha, const CovmatConstants& constants = {});

}  // namespace mmlb
