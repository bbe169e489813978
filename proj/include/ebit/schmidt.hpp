#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ebit/errors.hpp"
#include "ebit/numeric.hpp"
#include "ebit/states.hpp"

// Schmidt decomposition and the ordered-Schmidt-coefficient (OSC) algebra.
// The OSC of a pure state — its squared Schmidt coefficients sorted
// descending — is the complete invariant for everything the conversion
// module decides, so it gets a first-class value type here.

namespace ebit {

// --- SchmidtVector ------------------------------------------------------------

// Probability vector sorted descending. Construction sorts and checks
// normalization (sum within 1e-9 of 1), then renormalizes exactly so that
// downstream prefix/tail sums close to machine precision.
class SchmidtVector {
  public:
    explicit SchmidtVector(std::vector<double> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) fail(errc::invariant_violation, "SchmidtVector: empty");
        for (double x : c_)
            if (!(x >= 0.0) || x > 1.0 + tol::norm)
                fail(errc::invariant_violation,
                     "SchmidtVector: coefficient outside [0, 1]: " + std::to_string(x));
        std::sort(c_.begin(), c_.end(), std::greater<>());
        double s = compensated_sum(c_);
        if (std::abs(s - 1.0) > tol::norm)
            fail(errc::invariant_violation,
                 "SchmidtVector: sum deviates from 1 by " + std::to_string(std::abs(s - 1.0)));
        for (double& x : c_) x /= s;
    }

    const std::vector<double>& coeffs() const { return c_; }
    int size() const { return int(c_.size()); }
    double operator[](int i) const { return c_[size_t(i)]; }

    // Count of coefficients above the rank cutoff (1e-12).
    int rank() const {
        return int(std::count_if(c_.begin(), c_.end(), [](double x) { return x > tol::rank_eps; }));
    }

    // Coefficients with trailing zeros dropped.
    std::vector<double> support() const {
        std::vector<double> out;
        for (double x : c_)
            if (x > tol::rank_eps) out.push_back(x);
        return out;
    }

    bool operator==(const SchmidtVector&) const = default;

  private:
    std::vector<double> c_;
};

// Entropy of entanglement of an OSC, in bits.
inline double entropy_of(const SchmidtVector& x) { return shannon_entropy(x.coeffs()); }

// --- Decomposition of a pure state --------------------------------------------

struct SchmidtDecomposition {
    SchmidtVector schmidt;  // squared singular values, descending
    Matrix basis_a;         // d_A x r, orthonormal columns
    Matrix basis_b;         // d_B x r, orthonormal columns
    // Reconstruction: psi = sum_k sqrt(schmidt[k]) * basis_a.col(k) (x) basis_b.col(k).
};

// SVD of the coefficient matrix; coefficients are the squared singular values.
// C = U diag(sigma) V^dagger means psi = sum_k sigma_k u_k (x) conj(v_k).
inline SchmidtDecomposition schmidt_decompose(const PureState& psi) {
    Matrix c = psi.coefficient_matrix();
    auto pack = [](const auto& svd) {
        const auto& sv = svd.singularValues(); // descending
        std::vector<double> lam(static_cast<size_t>(sv.size()));
        for (int k = 0; k < sv.size(); ++k) lam[size_t(k)] = sv(k) * sv(k);
        return SchmidtDecomposition{SchmidtVector(std::move(lam)), svd.matrixU(),
                                    svd.matrixV().conjugate()};
    };
    if (std::min(c.rows(), c.cols()) >= 32) {
        Eigen::BDCSVD<Matrix> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
        return pack(svd);
    }
    Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return pack(svd);
}

inline SchmidtVector osc(const PureState& psi) { return schmidt_decompose(psi).schmidt; }

inline double entropy_of(const PureState& psi) { return entropy_of(osc(psi)); }

// Pure state with the given OSC embedded on the diagonal |kk> of a
// min-dims bipartite space; handy for tests and CLI fixtures.
inline PureState pure_from_schmidt(const SchmidtVector& x) {
    int d = x.size();
    Vector v = Vector::Zero(d * d);
    for (int k = 0; k < d; ++k) v(k * d + k) = std::sqrt(x[k]);
    return PureState(std::move(v), {d, d});
}

// --- OSC algebra ----------------------------------------------------------------

// OSC of the tensor product: all pairwise products, re-sorted.
inline SchmidtVector tensor_osc(const SchmidtVector& x, const SchmidtVector& y) {
    std::vector<double> out;
    out.reserve(size_t(x.size()) * size_t(y.size()));
    for (double a : x.coeffs())
        for (double b : y.coeffs()) out.push_back(a * b);
    return SchmidtVector(std::move(out));
}

// --- Rank-2 powers in the log domain ---------------------------------------------

// Exact statistics of the n-fold power of a rank-2 OSC (a, 1-a).
// The 2^n product coefficients collapse to n+1 groups: value a^k (1-a)^(n-k)
// with multiplicity C(n, k). Everything is held in log2 domain, which stays
// finite and accurate out to n ~ 1e4 — far beyond what an explicit expansion
// (2^n entries) could represent. The group mass C(n,k) a^k (1-a)^(n-k) is the
// binomial pmf, which is why distillation statistics reuse this type.
class Rank2Power {
  public:
    Rank2Power(double alpha1, int n) : a1_(alpha1), n_(n) {
        if (n < 1) fail(errc::out_of_range, "Rank2Power: n must be >= 1");
        if (n > 10000) fail(errc::cap_exceeded, "Rank2Power: n capped at 1e4");
        if (!(alpha1 > 0.0 && alpha1 < 1.0))
            fail(errc::out_of_range, "Rank2Power: alpha1 must lie in (0, 1)");
        log2_a1_ = std::log2(a1_);
        log2_a2_ = std::log2(1.0 - a1_);
    }

    int n() const { return n_; }
    double alpha1() const { return a1_; }

    // k counts the larger-branch factors, k = 0..n.
    double log2_coeff(int k) const { return k * log2_a1_ + (n_ - k) * log2_a2_; }
    double log2_multiplicity(int k) const { return log2_binomial(n_, k); }

    // Binomial pmf value C(n,k) a^k (1-a)^(n-k); always representable even
    // when coefficient and multiplicity separately under/overflow.
    double mass(int k) const { return std::exp2(log2_multiplicity(k) + log2_coeff(k)); }

    // Compensated total of all group masses; equals 1 up to ~1e-12 at n = 1e4.
    double total_mass() const {
        std::vector<double> m(size_t(n_) + 1);
        for (int k = 0; k <= n_; ++k) m[size_t(k)] = mass(k);
        return compensated_sum(m);
    }

    // Entropy of the full 2^n-entry OSC in bits: -sum_k mass_k * log2(coeff_k).
    // Equals n * H(a) by additivity; computed from the groups as a cross-check.
    double entropy() const {
        std::vector<double> terms(size_t(n_) + 1);
        for (int k = 0; k <= n_; ++k) terms[size_t(k)] = -mass(k) * log2_coeff(k);
        return compensated_sum(terms);
    }

    // Explicit expansion; only possible while 2^n fits the enumeration cap.
    SchmidtVector expand(std::int64_t cap) const {
        if (n_ >= 63 || (std::int64_t(1) << n_) > cap)
            fail(errc::cap_exceeded,
                 "Rank2Power: 2^n exceeds the enumeration cap; use the grouped "
                 "statistics (mass/total_mass/entropy) or a smaller n");
        std::vector<double> out;
        out.reserve(size_t(1) << n_);
        // Coefficients are monotone in k; emit larger-branch-heavy groups first
        // when a >= 1/2, the reverse otherwise (the constructor re-sorts anyway).
        for (int step = 0; step <= n_; ++step) {
            int k = a1_ >= 0.5 ? n_ - step : step;
            double v = std::exp2(log2_coeff(k));
            double count = std::round(std::exp2(log2_multiplicity(k)));
            out.insert(out.end(), size_t(count), v);
        }
        return SchmidtVector(std::move(out));
    }

  private:
    double a1_, log2_a1_, log2_a2_;
    int n_;
};

inline constexpr std::int64_t kPowerOscCap = std::int64_t(1) << 22;

// OSC of the n-fold tensor power. Output size is rank^n, so the explicit
// result is capped (default 2^22 entries). Rank-2 inputs go through the
// combinatorial log-domain form; larger n than the cap allows is available
// via Rank2Power without expansion.
inline SchmidtVector power_osc(const SchmidtVector& x, int n,
                               std::int64_t cap = kPowerOscCap) {
    if (n < 1) fail(errc::out_of_range, "power_osc: n must be >= 1");
    if (n == 1) return x;
    std::vector<double> sup = x.support();
    int r = int(sup.size());
    if (r == 1) return SchmidtVector({1.0});
    if (r == 2) return Rank2Power(sup[0], n).expand(cap);
    double log2_size = n * std::log2(double(r));
    if (log2_size > std::log2(double(cap)) + 1e-9)
        fail(errc::cap_exceeded, "power_osc: rank^n = " + std::to_string(r) + "^" +
                                     std::to_string(n) + " exceeds the enumeration cap");
    SchmidtVector base(sup);
    SchmidtVector acc = base;
    for (int i = 1; i < n; ++i) acc = tensor_osc(acc, base);
    return acc;
}

} // namespace ebit
