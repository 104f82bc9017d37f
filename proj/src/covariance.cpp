#include "mmlb/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mmlb/codes.hpp"
#include "mmlb/kernels.hpp"

namespace mmlb {

double default_cov_delta(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("default_cov_delta: alpha must be positive");
    std::vector<double> terms(1'000'000);
    for (std::size_t j = 0; j < terms.size(); ++j) terms[j] = std::pow(static_cast<double>(j + 1), -alpha - 1.0);
    // Add the small terms first.
    double sum = 0.0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) sum += *it;
    return std::floor(2.0 * sum + 1.0) + 1.0;
}

bool is_positive_definite(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    if (!m.isApprox(m.transpose(), 1e-12)) return false;
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    return llt.info() == Eigen::Success;
}

namespace {

void check_tau(const CovFamily& fam, std::span<const int> tau) {
    if (tau.size() != fam.k)
        throw std::invalid_argument("covariance family: tau must have length k = " + std::to_string(fam.k));
    for (int t : tau)
        if (t != 0 && t != 1) throw std::invalid_argument("covariance family: tau entries must be 0 or 1");
}

Eigen::MatrixXd materialize_unchecked(const CovFamily& fam, std::span<const int> tau) {
    Eigen::MatrixXd a = fam.base;
    for (unsigned r = 0; r < fam.k; ++r) {
        if (tau[r]) continue;
        for (unsigned c = fam.k; c < fam.p; ++c) {
            a(r, c) = 0.0;
            a(c, r) = 0.0;
        }
    }
    return a;
}

}  // namespace

Eigen::MatrixXd CovFamily::materialize(std::span<const int> tau) const {
    check_tau(*this, tau);
    Eigen::MatrixXd a = materialize_unchecked(*this, tau);
    if (!is_positive_definite(a))
        throw std::invalid_argument("covariance family: A(tau) is not positive definite; increase delta");
    return a;
}

double CovFamily::harmonic_tail() const {
    double s = 0.0;
    for (unsigned i = k; i <= 2 * k - 1; ++i) s += 1.0 / (delta * std::pow(static_cast<double>(i), alpha + 1.0));
    return s;
}

CovFamily build_cov_family(unsigned p, unsigned k, double alpha, std::optional<double> delta) {
    if (k == 0 || 2 * k > p) throw std::invalid_argument("build_cov_family: need 1 <= k and 2k <= p");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("build_cov_family: alpha must be positive");
    CovFamily fam;
    fam.p = p;
    fam.k = k;
    fam.alpha = alpha;
    fam.delta = delta ? *delta : default_cov_delta(alpha);
    if (!(fam.delta >= 1.0) || !std::isfinite(fam.delta))
        throw std::invalid_argument("build_cov_family: delta must be at least 1");
    fam.base.resize(p, p);
    for (unsigned i = 0; i < p; ++i)
        for (unsigned j = 0; j < p; ++j) {
            const double gap = std::abs(static_cast<double>(i) - static_cast<double>(j));
            fam.base(i, j) = i == j ? 1.0 : 1.0 / (fam.delta * std::pow(gap, alpha + 1.0));
        }
    if (!is_positive_definite(fam.base))
        throw std::invalid_argument("build_cov_family: base matrix is not positive definite; delta is too small");
    return fam;
}

SpectralSeparation spectral_separation(const CovFamily& fam, std::span<const int> tau,
                                       std::span<const int> tau_prime) {
    check_tau(fam, tau);
    check_tau(fam, tau_prime);
    SpectralSeparation out;
    for (unsigned r = 0; r < fam.k; ++r) out.hamming += tau[r] != tau_prime[r] ? 1U : 0U;
    if (out.hamming == 0) throw std::invalid_argument("spectral_separation: tau and tau' must differ");
    const Eigen::MatrixXd diff = materialize_unchecked(fam, tau) - materialize_unchecked(fam, tau_prime);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(diff, Eigen::EigenvaluesOnly);
    out.achieved = eig.eigenvalues().cwiseAbs().maxCoeff();
    out.guaranteed = fam.harmonic_tail() * std::sqrt(static_cast<double>(out.hamming) / fam.k);
    return out;
}

double gaussian_kl(const Eigen::MatrixXd& sigma0, const Eigen::MatrixXd& sigma1, unsigned n) {
    if (sigma0.rows() != sigma0.cols() || sigma1.rows() != sigma1.cols() || sigma0.rows() != sigma1.rows())
        throw std::invalid_argument("gaussian_kl: covariances must be square and of the same order");
    if (!is_positive_definite(sigma0) || !is_positive_definite(sigma1))
        throw std::invalid_argument("gaussian_kl: covariances must be symmetric positive definite");
    const Eigen::LLT<Eigen::MatrixXd> l0(sigma0);
    const Eigen::LLT<Eigen::MatrixXd> l1(sigma1);
    const double trace = l1.solve(sigma0).trace();
    const Eigen::MatrixXd m0 = l0.matrixL();
    const Eigen::MatrixXd m1 = l1.matrixL();
    const double logdet0 = 2.0 * m0.diagonal().array().log().sum();
    const double logdet1 = 2.0 * m1.diagonal().array().log().sum();
    const double p = static_cast<double>(sigma0.rows());
    // KL is non-negative; a negative value is cancellation error.
    return std::max(0.0, static_cast<double>(n) * (trace - p + logdet1 - logdet0) / 2.0);
}

KlFrobenius kl_frobenius_check(const CovFamily& fam, std::span<const int> tau, unsigned m) {
    check_tau(fam, tau);
    if (m < 1 || m >= fam.k) throw std::invalid_argument("kl_frobenius_check: need 1 <= m < k");
    KlFrobenius out;
    out.tau_prime.assign(tau.begin(), tau.end());
    std::fill(out.tau_prime.begin(), out.tau_prime.begin() + (m - 1), 0);
    const Eigen::MatrixXd a = fam.materialize(tau);
    const Eigen::MatrixXd b = fam.materialize(out.tau_prime);
    out.exact_kl = gaussian_kl(a, b);
    out.frobenius_sq = (a - b).squaredNorm();
    for (unsigned r = 0; r + 1 < m; ++r)
        for (unsigned c = fam.k; c < fam.p; ++c) out.tail_bound += 2.0 * fam.base(r, c) * fam.base(r, c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(a, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(b, Eigen::EigenvaluesOnly);
    const double lmin_b = eb.eigenvalues().minCoeff();
    const double lmax_b = eb.eigenvalues().maxCoeff();
    const double lmin_a = ea.eigenvalues().minCoeff();
    out.kl_constant = 1.0 / (4.0 * lmin_b * lmin_b * std::min(1.0, lmin_a / lmax_b));
    return out;
}

BoundReport covmat_bound_assembly(unsigned n, unsigned p, double alpha, const CovmatConstants& constants) {
    if (n < 1) throw std::invalid_argument("covmat_bound_assembly: n must be at least 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("covmat_bound_assembly: alpha must be positive");
    if (!(constants.delta_report > 0.0) || !(constants.km_scale > 0.0))
        throw std::invalid_argument("covmat_bound_assembly: delta_report and km_scale must be positive");
    const double rate = std::pow(static_cast<double>(n), 1.0 / (2.0 * alpha + 1.0));
    const unsigned k = static_cast<unsigned>(std::ceil(4.0 * constants.delta_report * rate));
    const unsigned km = constants.k_minus_m ? *constants.k_minus_m
                                            : static_cast<unsigned>(std::ceil(constants.km_scale * rate));
    if (p < 2 * k)
        throw std::invalid_argument("covmat_bound_assembly: p = " + std::to_string(p) + " is too small; need p >= 2k = " +
                                    std::to_string(2 * k));
    if (km < 1 || km >= k)
        throw std::invalid_argument("covmat_bound_assembly: k - m must lie in [1, k-1], got " + std::to_string(km));
    const unsigned m = k - km;

    const CovFamily fam = build_cov_family(p, k, alpha, constants.delta_a);
    const BinaryCode code = vg_code(k, constants.seed);
    const unsigned min_hamming = code.min_distance();

    const std::vector<double> kls = kernels::parallel::evaluate(code.size(), [&](std::size_t i) {
        const std::vector<int> tau = code.unpack(i);
        return kl_frobenius_check(fam, tau, m).exact_kl;
    });
    const std::size_t worst = static_cast<std::size_t>(std::max_element(kls.begin(), kls.end()) - kls.begin());
    const KlFrobenius worst_check = kl_frobenius_check(fam, code.unpack(worst), m);

    const double eta = fam.harmonic_tail() * std::sqrt(static_cast<double>(min_hamming) / k);
    const double log_candidates = (km + 1) * std::log(2.0);
    const double jkl = log_candidates + static_cast<double>(n) * kls[worst];
    const double log_w = std::log(static_cast<double>(code.size()));
    const double raw = (eta / 2.0) * (1.0 - (std::log(2.0) + jkl) / log_w);

    BoundReport r;
    r.family = "covmat_fano";
    r.vacuous = !(raw > 0.0);
    r.value = r.vacuous ? 0.0 : raw;
    r.inputs["n"] = n;
    r.inputs["p"] = p;
    r.inputs["alpha"] = num(alpha);
    r.inputs["delta_a"] = num(fam.delta);
    r.inputs["delta_report"] = num(constants.delta_report);
    r.inputs["km_scale"] = num(constants.km_scale);
    r.inputs["seed"] = constants.seed;
    r.intermediates["k"] = k;
    r.intermediates["m"] = m;
    r.intermediates["k_minus_m"] = km;
    r.intermediates["code_size"] = code.size();
    r.intermediates["log_code_size"] = num(log_w);
    r.intermediates["min_hamming"] = min_hamming;
    r.intermediates["harmonic_tail"] = num(fam.harmonic_tail());
    r.intermediates["separation"] = num(eta);
    r.intermediates["log_candidate_count"] = num(log_candidates);
    r.intermediates["max_single_sample_kl"] = num(kls[worst]);
    r.intermediates["worst_frobenius_sq"] = num(worst_check.frobenius_sq);
    r.intermediates["worst_tail_bound"] = num(worst_check.tail_bound);
    r.intermediates["kl_constant"] = num(worst_check.kl_constant);
    r.intermediates["jf_kl_upper"] = num(jkl);
    r.intermediates["raw"] = num(raw);
    r.witnesses["worst_tau"] = code.unpack(worst);
    r.witnesses["worst_tau_prime"] = worst_check.tau_prime;
    return r;
}

}  // namespace mmlb
