#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ebit/errors.hpp"
#include "ebit/numeric.hpp"
#include "ebit/schmidt.hpp"
#include "ebit/states.hpp"

// Operational protocols on n copies of the rank-2 state
// sqrt(a)|00> + sqrt(1-a)|11>, a = alpha^2: measurement-based distillation
// into maximally entangled states, the typical-subspace bookkeeping behind
// it, asymptotic dilution cost, and single-pair teleportation.

namespace ebit {

// --- Distillation --------------------------------------------------------------

struct DistillationReport {
    int n = 0;
    double alpha_sq = 0.0;
    std::vector<double> p;           // p[k] = C(n,k) a^k (1-a)^(n-k), k = 0..n
    double expected_yield_bits = 0;  // sum_k p_k log2 C(n,k)
    double entropy_bound = 0;        // n H(a): the asymptotic ceiling
};

inline void require_alpha_sq(double a) {
    if (!(a > 0.0 && a < 1.0))
        fail(errc::out_of_range, "alpha_sq must lie strictly inside (0, 1)");
}

// Measuring the number of |00> factors across n copies leaves a maximally
// entangled state of rank C(n,k) with probability p_k; the expected yield in
// bits is sum_k p_k log2 C(n,k), always below the entropy ceiling n H(a).
// The pmf is evaluated in the log domain, stable out to n = 1e4.
inline DistillationReport distill_statistics(double alpha_sq, int n) {
    require_alpha_sq(alpha_sq);
    if (n < 1) fail(errc::out_of_range, "distill_statistics: n must be >= 1");
    Rank2Power pw(alpha_sq, n);
    DistillationReport rep;
    rep.n = n;
    rep.alpha_sq = alpha_sq;
    rep.p.resize(size_t(n) + 1);
    std::vector<double> yield_terms(size_t(n) + 1);
    for (int k = 0; k <= n; ++k) {
        rep.p[size_t(k)] = pw.mass(k);
        yield_terms[size_t(k)] = rep.p[size_t(k)] * log2_binomial(n, k);
    }
    rep.expected_yield_bits = compensated_sum(yield_terms);
    rep.entropy_bound = n * binary_entropy(alpha_sq);
    return rep;
}

// Monte-Carlo yields: draws k ~ p_k per shot, returns log2 C(n,k) per shot.
// Shot i uses substream (seed, i), so the sequence is seed-reproducible.
inline std::vector<double> distill_sample(double alpha_sq, int n, int shots,
                                          std::uint64_t seed = 0) {
    if (shots < 0) fail(errc::out_of_range, "distill_sample: shots must be >= 0");
    DistillationReport rep = distill_statistics(alpha_sq, n);
    std::vector<double> out;
    out.reserve(size_t(shots));
    for (int shot = 0; shot < shots; ++shot) {
        auto rng = seeded_rng(seed, 0xD15713ULL + std::uint64_t(shot));
        double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        double acc = 0.0;
        int drawn = n;
        for (int k = 0; k <= n; ++k) {
            acc += rep.p[size_t(k)];
            if (u <= acc) {
                drawn = k;
                break;
            }
        }
        out.push_back(log2_binomial(n, drawn));
    }
    return out;
}

// --- Typical subspace ------------------------------------------------------------

struct TypicalSetReport {
    int n = 0;
    double alpha_sq = 0.0;
    double delta = 0.0;
    int k_lo = 0, k_hi = 0;        // window [n(a - delta), n(a + delta)] clamped to [0, n]
    double mass = 0.0;             // probability the measured k lands inside
    double epsilon = 0.0;          // 1 - mass
    double size_log2 = 0.0;        // log2 of the number of typical sequences
    double delta_induced = 0.0;    // entropy wobble over the window + counting slack
    double lower_bound_log2 = 0.0; // log2(1 - eps) + n (H - delta_induced)
    double upper_bound_log2 = 0.0; // n (H + delta_induced)
    bool within_bounds = false;
};

// Counting window uses c = 1: k in [n(a - delta), n(a + delta)]. The size
// bracket is checked against an induced deviation
//   delta' = max_{k in window} |H(k/n) - H(a)| + log2(n+1)/n,
// the entropy wobble the window actually admits plus the polynomial factor.
inline TypicalSetReport typical_set_report(double alpha_sq, int n, double delta) {
    require_alpha_sq(alpha_sq);
    if (n < 1) fail(errc::out_of_range, "typical_set_report: n must be >= 1");
    if (delta <= 0.0) fail(errc::out_of_range, "typical_set_report: delta must be > 0");
    TypicalSetReport rep;
    rep.n = n;
    rep.alpha_sq = alpha_sq;
    rep.delta = delta;
    rep.k_lo = std::clamp(int(std::floor(n * (alpha_sq - delta))), 0, n);
    rep.k_hi = std::clamp(int(std::ceil(n * (alpha_sq + delta))), 0, n);

    Rank2Power pw(alpha_sq, n);
    std::vector<double> in_window;
    for (int k = rep.k_lo; k <= rep.k_hi; ++k) in_window.push_back(pw.mass(k));
    rep.mass = std::min(compensated_sum(in_window), 1.0);
    rep.epsilon = std::max(1.0 - rep.mass, 0.0);

    // log2 sum_{window} C(n,k) via log-sum-exp.
    double peak = -1e300;
    for (int k = rep.k_lo; k <= rep.k_hi; ++k) peak = std::max(peak, log2_binomial(n, k));
    double acc = 0.0;
    for (int k = rep.k_lo; k <= rep.k_hi; ++k) acc += std::exp2(log2_binomial(n, k) - peak);
    rep.size_log2 = peak + std::log2(acc);

    double h = binary_entropy(alpha_sq);
    double wobble = 0.0;
    for (int k = rep.k_lo; k <= rep.k_hi; ++k)
        wobble = std::max(wobble, std::abs(binary_entropy(double(k) / n) - h));
    rep.delta_induced = wobble + std::log2(double(n) + 1.0) / n;
    rep.lower_bound_log2 =
        std::log2(std::max(1.0 - rep.epsilon, 1e-300)) + n * (h - rep.delta_induced);
    rep.upper_bound_log2 = n * (h + rep.delta_induced);
    rep.within_bounds =
        rep.size_log2 >= rep.lower_bound_log2 - 1e-9 && rep.size_log2 <= rep.upper_bound_log2 + 1e-9;
    return rep;
}

// --- Post-measurement states ---------------------------------------------------------

struct SkVerification {
    int n = 0, k = 0;
    std::int64_t expected_rank = 0; // C(n, k)
    int rank = 0;
    double entropy = 0.0;           // should equal log2 C(n, k)
    double coeff_spread = 0.0;      // max - min over the support
    bool ok = false;
};

// Builds the post-measurement state |S_k>: the uniform superposition of all
// C(n,k) strings with k |00>-pairs, as an explicit 2^n x 2^n statevector, and
// verifies via full Schmidt analysis that it is maximally entangled of rank
// C(n,k). The state itself is independent of alpha_sq (the measurement
// erases the bias); the parameter is validated for interface symmetry with
// the other protocol calls. Capped at n = 12 (statevector size 4^n).
inline SkVerification verify_sk_maximally_entangled(double alpha_sq, int n, int k) {
    require_alpha_sq(alpha_sq);
    if (n < 1 || n > 12)
        fail(errc::cap_exceeded, "verify_sk_maximally_entangled: n limited to [1, 12]");
    if (k < 0 || k > n) fail(errc::out_of_range, "verify_sk_maximally_entangled: k outside [0, n]");
    SkVerification rep;
    rep.n = n;
    rep.k = k;
    rep.expected_rank = std::int64_t(std::round(std::exp2(log2_binomial(n, k))));
    int dim = 1 << n;
    double amp = 1.0 / std::sqrt(double(rep.expected_rank));
    Vector v = Vector::Zero(std::int64_t(dim) * dim);
    for (int s = 0; s < dim; ++s)
        if (std::popcount(unsigned(s)) == n - k) // bits set on the |11> factors
            v(std::int64_t(s) * dim + s) = amp;
    SchmidtVector x = osc(PureState(std::move(v), {dim, dim}));
    rep.rank = x.rank();
    rep.entropy = entropy_of(x);
    std::vector<double> sup = x.support();
    rep.coeff_spread = sup.front() - sup.back();
    rep.ok = rep.rank == rep.expected_rank && rep.coeff_spread <= 1e-12 &&
             std::abs(rep.entropy - log2_binomial(n, k)) <= 1e-9;
    return rep;
}

// --- Dilution ---------------------------------------------------------------------------

// Expected singlet cost of preparing n copies by teleporting the binomial
// post-measurement states: sum_k p_k log2 C(n,k). This is the same sum as
// the distillation yield — the two protocols are each other's mirror, and
// both approach n H(alpha_sq) per the entropy ceiling.
inline double dilution_cost(double alpha_sq, int n) {
    return distill_statistics(alpha_sq, n).expected_yield_bits;
}

// --- Teleportation -----------------------------------------------------------------------

struct TeleportOutcome {
    Bell outcome = Bell::psi_minus;
    double probability = 0.0;
    Vector bob_state;        // normalized post-measurement state, before correction
    std::string correction;  // Pauli applied to Bob's qubit, e.g. "sigma_x"
    double fidelity = 0.0;   // |<phi|corrected>|^2
};

// Teleports phi = alpha|0> + beta|1> through a shared singlet: Bell
// measurement on (A', A), conditional Pauli correction on B. All four
// outcomes are returned; each occurs with probability exactly 1/4 and ends
// at unit fidelity after its correction.
inline std::vector<TeleportOutcome> teleport(cplx alpha, cplx beta) {
    double norm2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm2 - 1.0) > tol::norm)
        fail(errc::invariant_violation, "teleport: |alpha|^2 + |beta|^2 must equal 1");

    // Joint state on (A', A, B), index a'*4 + a*2 + b.
    const double r = 1.0 / std::numbers::sqrt2;
    Vector joint = Vector::Zero(8);
    auto phi_amp = [&](int i) { return i == 0 ? alpha : beta; };
    for (int ap = 0; ap < 2; ++ap) {
        joint(ap * 4 + 0 * 2 + 1) += phi_amp(ap) * r;  // |01> singlet branch
        joint(ap * 4 + 1 * 2 + 0) -= phi_amp(ap) * r;  // |10> singlet branch
    }

    Eigen::Matrix2cd eye = Eigen::Matrix2cd::Identity(), sx, sz;
    sx << 0, 1, 1, 0;
    sz << 1, 0, 0, -1;
    struct Branch {
        Bell which;
        std::string correction;
        Eigen::Matrix2cd op;
    };
    // Collecting the Bell expansion of phi (x) Psi^-:
    //   Phi^+ branch carries (-beta, alpha) -> needs sigma_z sigma_x,
    //   Phi^- branch carries ( beta, alpha) -> needs sigma_x,
    //   Psi^+ branch carries (-alpha, beta) -> needs sigma_z,
    //   Psi^- branch carries -phi           -> identity (global phase).
    const Branch branches[] = {
        {Bell::psi_minus, "identity", eye},
        {Bell::phi_plus, "sigma_z_sigma_x", sz * sx},
        {Bell::phi_minus, "sigma_x", sx},
        {Bell::psi_plus, "sigma_z", sz},
    };

    std::vector<TeleportOutcome> out;
    for (const Branch& br : branches) {
        const Vector bell = bell_state(br.which).amplitudes(); // on (A', A)
        Vector bob = Vector::Zero(2);
        for (int b = 0; b < 2; ++b)
            for (int ap = 0; ap < 2; ++ap)
                for (int a = 0; a < 2; ++a)
                    bob(b) += std::conj(bell(ap * 2 + a)) * joint(ap * 4 + a * 2 + b);
        TeleportOutcome o;
        o.outcome = br.which;
        o.correction = br.correction;
        o.probability = bob.squaredNorm();
        o.bob_state = bob / bob.norm();
        Vector corrected = br.op * o.bob_state;
        Vector target(2);
        target << alpha, beta;
        o.fidelity = std::norm(target.dot(corrected));
        out.push_back(std::move(o));
    }
    return out;
}

// One measurement shot: returns the outcome drawn from the branch
// probabilities under substream (seed, shot).
inline TeleportOutcome teleport_sample(cplx alpha, cplx beta, std::uint64_t seed = 0,
                                       std::uint64_t shot = 0) {
    std::vector<TeleportOutcome> all = teleport(alpha, beta);
    auto rng = seeded_rng(seed, 0x7E1E0000ULL + shot);
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double acc = 0.0;
    for (TeleportOutcome& o : all) {
        acc += o.probability;
        if (u <= acc) return std::move(o);
    }
    return std::move(all.back());
}

} // namespace ebit
