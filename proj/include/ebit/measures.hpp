#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ebit/errors.hpp"
#include "ebit/numeric.hpp"
#include "ebit/sampling.hpp"
#include "ebit/schmidt.hpp"
#include "ebit/states.hpp"

// Entanglement measures. Pure states get the closed form (entropy of the
// reduced state); mixed states get numerical upper estimates: a convex-roof
// optimizer for the entanglement of formation and a separable-state search
// for the relative entropy of entanglement. Both are seeded random-restart
// descent — deterministic under a fixed seed, monotone within a restart.

namespace ebit {

struct OptimizerOptions {
    int restarts = 32;
    int iterations = 500;
    double tol = 1e-7;
    std::uint64_t seed = 0;
};

enum class MeasureMethod { closed_form, convex_roof, relative_entropy_opt };

struct MeasureResult {
    double value = 0.0;
    MeasureMethod method = MeasureMethod::closed_form;
    int iterations = 0;  // total descent steps across restarts
    bool converged = true;
    // Value of the structured starting candidate (eigen-ensemble average for
    // the convex roof, dephased-diagonal separable state for the relative
    // entropy); the optimizer can only improve on it.
    std::optional<double> upper_witness;
};

// --- Entropy of entanglement (pure states) -----------------------------------

inline MeasureResult entropy_of_entanglement(const PureState& psi) {
    return {entropy_of(psi), MeasureMethod::closed_form, 0, true, std::nullopt};
}

// Density-matrix inputs must be pure within tol (tr rho^2 >= 1 - 1e-9);
// genuinely mixed inputs belong to eof_mixed and are rejected with a hint.
inline MeasureResult entropy_of_entanglement(const DensityMatrix& rho) {
    if (!rho.is_pure())
        fail(errc::not_pure, "entropy_of_entanglement: input is mixed (purity " +
                                 std::to_string(rho.purity()) + "); use eof_mixed");
    return entropy_of_entanglement(rho.principal_pure());
}

// --- Entanglement of formation (convex roof) -----------------------------------

namespace detail {

// Average entanglement of the ensemble induced by an m x r isometry V on the
// subnormalized eigenvectors E (columns sqrt(q_i) e_i): psi_tilde_j = E V^T row j.
inline double ensemble_average_entropy(const Matrix& e_cols, const Matrix& v, Dims dims) {
    double total = 0.0;
    for (int j = 0; j < v.rows(); ++j) {
        Vector psi = Vector::Zero(e_cols.rows());
        for (int i = 0; i < v.cols(); ++i) psi += v(j, i) * e_cols.col(i);
        double p = psi.squaredNorm();
        if (p < 1e-15) continue;
        total += p * entropy_of(PureState(psi / std::sqrt(p), dims));
    }
    return total;
}

inline Matrix reorthonormalize(const Matrix& m) {
    Eigen::HouseholderQR<Matrix> qr(m);
    return qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
}

} // namespace detail

// Convex-roof upper estimate of the entanglement of formation:
//   min over decompositions rho = sum_j p_j |psi_j><psi_j| of sum_j p_j E(psi_j).
// Decompositions are parameterized by isometries V (m x r, m = r^2) acting on
// the eigen-ensemble; descent is adaptive random perturbation with re-QR.
// Rank-1 inputs short-circuit to the exact pure value. Capped at 4 x 4.
inline MeasureResult eof_mixed(const DensityMatrix& rho, const OptimizerOptions& opt = {}) {
    Dims dims = rho.dims();
    if (dims.a > 4 || dims.b > 4)
        fail(errc::cap_exceeded, "eof_mixed: dimensions capped at 4 x 4");

    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    std::vector<int> keep;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > tol::rank_eps) keep.push_back(i);
    int r = int(keep.size());
    Matrix e_cols(dims.total(), r);
    for (int i = 0; i < r; ++i)
        e_cols.col(i) = std::sqrt(es.eigenvalues()(keep[size_t(i)])) *
                        es.eigenvectors().col(keep[size_t(i)]);

    if (r == 1) {
        // Pure state: every decomposition is the state itself.
        double value = entropy_of(PureState(e_cols.col(0) / e_cols.col(0).norm(), dims));
        return {value, MeasureMethod::convex_roof, 0, true, value};
    }

    int m = r * r;
    Matrix eye_start = Matrix::Identity(m, r); // identity isometry = eigen-ensemble
    double eigen_value = detail::ensemble_average_entropy(e_cols, eye_start, dims);

    double best = eigen_value;
    int steps = 0;
    bool converged = false;
    for (int restart = 0; restart < std::max(1, opt.restarts); ++restart) {
        auto rng = seeded_rng(opt.seed, 0xE0F00000ULL + std::uint64_t(restart));
        Matrix v = restart == 0 ? eye_start : haar_isometry(rng, m, r);
        double cur = detail::ensemble_average_entropy(e_cols, v, dims);
        double sigma = 0.3;
        for (int it = 0; it < opt.iterations; ++it, ++steps) {
            Matrix g(m, r);
            std::normal_distribution<double> gd(0.0, 1.0);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < r; ++j) g(i, j) = cplx(gd(rng), gd(rng));
            Matrix cand = detail::reorthonormalize(v + sigma * g);
            double val = detail::ensemble_average_entropy(e_cols, cand, dims);
            if (val < cur) {
                v = cand;
                cur = val;
                sigma = std::min(sigma * 1.2, 1.0);
            } else {
                sigma *= 0.85;
            }
            if (sigma < opt.tol) {
                converged = true;
                break;
            }
        }
        best = std::min(best, cur);
    }
    return {best, MeasureMethod::convex_roof, steps, converged, eigen_value};
}

// --- Relative entropy of entanglement ---------------------------------------------

namespace detail {

// -Tr rho log2 sigma, +inf (as 1e30) when supp(rho) leaves supp(sigma).
inline double cross_entropy_bits(const Matrix& rho, const Matrix& sigma) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
    const auto& s = es.eigenvalues();
    const Matrix& w = es.eigenvectors();
    double out = 0.0;
    for (int i = 0; i < s.size(); ++i) {
        double weight = (w.col(i).adjoint() * rho * w.col(i))(0, 0).real();
        if (s(i) <= 1e-15) {
            if (weight > 1e-12) return 1e30;
            continue;
        }
        out -= weight * std::log2(s(i));
    }
    return out;
}

struct ProductAtom {
    Vector a, b;     // normalized local kets
    Vector joint;    // a (x) b
};

inline ProductAtom make_atom(Vector a, Vector b, Dims dims) {
    a /= a.norm();
    b /= b.norm();
    Vector joint(dims.total());
    for (int i = 0; i < dims.a; ++i)
        for (int j = 0; j < dims.b; ++j) joint(i * dims.b + j) = a(i) * b(j);
    return {std::move(a), std::move(b), std::move(joint)};
}

inline Matrix mix_atoms(const std::vector<ProductAtom>& atoms, const std::vector<double>& w) {
    Matrix sigma = Matrix::Zero(atoms.front().joint.size(), atoms.front().joint.size());
    for (size_t t = 0; t < atoms.size(); ++t)
        sigma += w[t] * (atoms[t].joint * atoms[t].joint.adjoint());
    return sigma;
}

// Exponentiated-gradient descent on the mixture weights; the objective
// f(w) = -Tr rho log2 sigma(w) is convex in w, and the gradient comes from
// the Frechet derivative of the matrix log via divided differences.
inline double optimize_weights(const Matrix& rho, const std::vector<ProductAtom>& atoms,
                               std::vector<double>& w, int iters) {
    const size_t nt = atoms.size();
    double f = cross_entropy_bits(rho, mix_atoms(atoms, w));
    double eta = 1.0;
    for (int it = 0; it < iters; ++it) {
        Matrix sigma = mix_atoms(atoms, w);
        Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
        const auto& s = es.eigenvalues();
        const Matrix& wv = es.eigenvectors();
        int n = int(s.size());
        Matrix r_rot = wv.adjoint() * rho * wv;
        // Divided differences of ln on sigma's spectrum (floored for stability).
        Eigen::MatrixXd ell(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double si = std::max(s(i), 1e-14), sj = std::max(s(j), 1e-14);
                ell(i, j) = std::abs(si - sj) < 1e-14 * std::max(si, sj)
                                ? 1.0 / si
                                : (std::log(si) - std::log(sj)) / (si - sj);
            }
        std::vector<double> grad(nt, 0.0);
        for (size_t t = 0; t < nt; ++t) {
            Vector y = wv.adjoint() * atoms[t].joint;
            cplx acc = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    acc += r_rot(j, i) * ell(i, j) * y(i) * std::conj(y(j));
            grad[t] = -acc.real() / std::numbers::ln2;
        }
        // Backtracking multiplicative update.
        double gmax = 0.0;
        for (double g : grad) gmax = std::max(gmax, std::abs(g));
        if (gmax < 1e-15) break;
        bool accepted = false;
        for (int bt = 0; bt < 20 && !accepted; ++bt) {
            std::vector<double> cand(nt);
            double z = 0.0;
            for (size_t t = 0; t < nt; ++t) z += (cand[t] = w[t] * std::exp(-eta * grad[t] / gmax));
            for (double& c : cand) c /= z;
            double fc = cross_entropy_bits(rho, mix_atoms(atoms, cand));
            if (fc <= f) {
                w = std::move(cand);
                f = fc;
                eta = std::min(eta * 1.3, 50.0);
                accepted = true;
            } else {
                eta *= 0.5;
            }
        }
        if (!accepted) break;
    }
    return f;
}

} // namespace detail

// Upper estimate of the relative entropy of entanglement:
//   min over separable sigma of S(rho || sigma),
// with sigma a convex mixture of `separable_terms` product pure states. Each
// restart seeds a fresh atom dictionary (computational-basis products, local
// eigenbasis products, Schmidt-pair products of rho's eigenvectors, mutually
// unbiased product bases, Haar products), optimizes the mixture weights by
// exponentiated gradient (convex subproblem), then refines atom kets by
// accepted random perturbation. Capped at 3 x 3.
inline MeasureResult relative_entropy_of_entanglement(const DensityMatrix& rho,
                                                      const OptimizerOptions& opt = {},
                                                      int separable_terms = 64) {
    Dims dims = rho.dims();
    if (dims.a > 3 || dims.b > 3)
        fail(errc::cap_exceeded, "relative_entropy_of_entanglement: dimensions capped at 3 x 3");
    if (separable_terms < dims.total())
        fail(errc::out_of_range,
             "relative_entropy_of_entanglement: need at least d_A*d_B product terms");

    const Matrix& rm = rho.matrix();
    double neg_entropy = 0.0; // Tr rho log2 rho
    for (double lam : rho.eigenvalues()) neg_entropy += xlog2x(lam);

    // Structured atoms shared by every restart.
    std::vector<detail::ProductAtom> structured;
    auto basis = [](int n, int k) {
        Vector v = Vector::Zero(n);
        v(k) = 1.0;
        return v;
    };
    for (int i = 0; i < dims.a; ++i)
        for (int j = 0; j < dims.b; ++j)
            structured.push_back(detail::make_atom(basis(dims.a, i), basis(dims.b, j), dims));
    // Products of the local reduced eigenbases.
    Eigen::SelfAdjointEigenSolver<Matrix> ea(partial_trace(rho, Subsystem::B).matrix());
    Eigen::SelfAdjointEigenSolver<Matrix> eb(partial_trace(rho, Subsystem::A).matrix());
    for (int i = 0; i < dims.a; ++i)
        for (int j = 0; j < dims.b; ++j)
            structured.push_back(detail::make_atom(ea.eigenvectors().col(i),
                                                   eb.eigenvectors().col(j), dims));
    // Every Schmidt-pair product of each significant eigenvector of rho. For
    // a (numerically) pure rho this puts the exact Schmidt-basis dephasing
    // ensemble — the known optimum — inside the dictionary, so the convex
    // weight optimization alone can reach it.
    Eigen::SelfAdjointEigenSolver<Matrix> er(rm);
    for (int i = 0; i < er.eigenvalues().size(); ++i) {
        if (er.eigenvalues()(i) < 1e-9) continue;
        PureState evec(er.eigenvectors().col(i), dims);
        auto dec = schmidt_decompose(evec);
        for (int k = 0; k < dec.schmidt.size(); ++k) {
            if (dec.schmidt[k] < 1e-12) break; // coefficients descend; the rest are null
            structured.push_back(detail::make_atom(dec.basis_a.col(k), dec.basis_b.col(k), dims));
        }
    }
    // Mutually unbiased product bases (Fourier and phase-twisted Fourier on
    // each side). Bell-diagonal and isotropic mixtures have separable
    // decompositions supported exactly on such products — e.g. an equal
    // mixture of two Bell states is a two-term mixture of twisted-basis
    // products — which random ket perturbation is unlikely to stumble on.
    auto phased_fourier = [](int d, int twist) {
        Matrix f(d, d);
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                f(j, k) = std::polar(1.0 / std::sqrt(double(d)),
                                     M_PI * (2.0 * j * k + twist * double(j) * j) / d);
        return f;
    };
    const std::vector<Matrix> unbiased_a = {Matrix::Identity(dims.a, dims.a),
                                            phased_fourier(dims.a, 0), phased_fourier(dims.a, 1)};
    const std::vector<Matrix> unbiased_b = {Matrix::Identity(dims.b, dims.b),
                                            phased_fourier(dims.b, 0), phased_fourier(dims.b, 1)};
    for (size_t ba = 0; ba < unbiased_a.size(); ++ba)
        for (size_t bb = 0; bb < unbiased_b.size(); ++bb) {
            if (ba == 0 && bb == 0) continue; // computational products already present
            for (int i = 0; i < dims.a; ++i)
                for (int j = 0; j < dims.b; ++j)
                    structured.push_back(
                        detail::make_atom(unbiased_a[ba].col(i), unbiased_b[bb].col(j), dims));
        }

    // Dephasing rho in the computational product basis is always separable;
    // its divergence is the structured starting value.
    double dephased = 0.0;
    {
        Matrix diag = Matrix::Zero(dims.total(), dims.total());
        for (int k = 0; k < dims.total(); ++k) diag(k, k) = std::max(rm(k, k).real(), 1e-300);
        dephased = neg_entropy + detail::cross_entropy_bits(rm, diag);
    }

    double best = dephased;
    int steps = 0;
    bool converged = false;
    for (int restart = 0; restart < std::max(1, opt.restarts); ++restart) {
        auto rng = seeded_rng(opt.seed, 0x0ee00000ULL + std::uint64_t(restart));
        std::vector<detail::ProductAtom> atoms = structured;
        while (int(atoms.size()) < separable_terms)
            atoms.push_back(detail::make_atom(haar_ket(rng, dims.a), haar_ket(rng, dims.b), dims));
        if (int(atoms.size()) > separable_terms) atoms.resize(size_t(separable_terms));

        std::vector<double> w(atoms.size(), 1.0 / double(atoms.size()));
        double f = detail::optimize_weights(rm, atoms, w, 120);
        // Alternate ket perturbation with short weight re-optimizations.
        double sigma_step = 0.4;
        std::uniform_int_distribution<size_t> pick(0, atoms.size() - 1);
        for (int it = 0; it < opt.iterations; ++it, ++steps) {
            size_t t = pick(rng);
            detail::ProductAtom saved = atoms[t];
            atoms[t] = detail::make_atom(
                saved.a + sigma_step * gaussian_complex_vector(rng, dims.a),
                saved.b + sigma_step * gaussian_complex_vector(rng, dims.b), dims);
            std::vector<double> wc = w;
            double fc = detail::optimize_weights(rm, atoms, wc, 25);
            if (fc < f - 1e-15) {
                f = fc;
                w = std::move(wc);
                sigma_step = std::min(sigma_step * 1.1, 1.0);
            } else {
                atoms[t] = std::move(saved);
                sigma_step = std::max(sigma_step * 0.9, 1e-3);
            }
            if (f + neg_entropy < opt.tol) break; // already at zero divergence
        }
        f = detail::optimize_weights(rm, atoms, w, 200);
        double value = neg_entropy + f;
        if (value < best) best = value;
        if (best < opt.tol) {
            converged = true;
            break;
        }
    }
    best = std::max(best, 0.0);
    if (!converged) converged = best <= dephased + 1e-12;
    return {best, MeasureMethod::relative_entropy_opt, steps, converged, dephased};
}

// --- Rates, first law, temperature ---------------------------------------------------

struct PureRates {
    double distillable = 0.0; // E_D
    double cost = 0.0;        // E_C
};

// For pure states distillation and dilution are asymptotically reversible:
// both rates equal the entropy of entanglement.
inline PureRates pure_rates(const PureState& psi) {
    double e = entropy_of(psi);
    return {e, e};
}

inline PureRates pure_rates(const SchmidtVector& x) {
    double e = entropy_of(x);
    return {e, e};
}

// Any genuine entanglement measure is pinched between the two rates.
inline bool sandwich_check(double e, double e_d, double e_c, double tol = 1e-9) {
    return e >= e_d - tol && e <= e_c + tol;
}

// Bound entanglement per the first law: the irrecoverable part E_C - E_D.
inline double first_law_bound_entanglement(double e_c, double e_d) {
    if (e_d < 0.0 || e_c < e_d - 1e-12)
        fail(errc::out_of_range, "first_law_bound_entanglement: requires E_C >= E_D >= 0");
    return e_c - e_d;
}

// Entanglement temperature T_e = (E_C - E_D) / S_e for S_e > 0.
inline double entanglement_temperature(double e_c, double e_d, double s_e) {
    if (s_e <= 0.0)
        fail(errc::non_positive_entropy, "entanglement_temperature: requires S_e > 0");
    return first_law_bound_entanglement(e_c, e_d) / s_e;
}

} // namespace ebit
