#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "ebit/errors.hpp"
#include "ebit/numeric.hpp"

// Bipartite state types and the operations that act on raw amplitudes or
// density matrices. Everything downstream (Schmidt analysis, conversion
// verdicts, measures) is built on these.
//
// Index convention: the joint ket |i_A, i_B> lives at flat index
// i_A * d_B + i_B, i.e. amplitudes are stored row-major over (A, B).

namespace ebit {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct Dims {
    int a = 0;
    int b = 0;
    int total() const { return a * b; }
    bool operator==(const Dims&) const = default;
};

enum class Subsystem { A, B };

namespace tol {
// Validation tolerances shared by the state types and their parsers.
inline constexpr double norm = 1e-9;       // |norm - 1| for pure states, |tr - 1| for mixed
inline constexpr double hermitian = 1e-10; // entrywise |rho - rho^dagger|
inline constexpr double psd = 1e-9;        // eigenvalue floor: lambda_min >= -psd
inline constexpr double purity = 1e-9;     // tr(rho^2) >= 1 - purity counts as pure
inline constexpr double kraus = 1e-8;      // completeness-relation slack
inline constexpr double rank_eps = 1e-12;  // coefficients below this do not count toward rank
} // namespace tol

// --- PureState -------------------------------------------------------------

class PureState {
  public:
    PureState(Vector amplitudes, Dims dims) : amps_(std::move(amplitudes)), dims_(dims) {
        if (dims_.a < 1 || dims_.b < 1)
            fail(errc::dimension_mismatch, "PureState: dims must be positive");
        if (amps_.size() != dims_.total())
            fail(errc::dimension_mismatch, "PureState: amplitude count != d_A * d_B");
        double n2 = amps_.squaredNorm();
        if (std::abs(n2 - 1.0) > tol::norm)
            fail(errc::invariant_violation, "PureState: squared norm deviates from 1 by " +
                                                std::to_string(std::abs(n2 - 1.0)));
    }

    const Vector& amplitudes() const { return amps_; }
    Dims dims() const { return dims_; }
    cplx amp(int ia, int ib) const { return amps_(ia * dims_.b + ib); }

    // Amplitudes reshaped to the d_A x d_B coefficient matrix C with
    // C(i, j) = <i_A, j_B | psi>; Schmidt analysis runs an SVD of this.
    Matrix coefficient_matrix() const {
        Matrix c(dims_.a, dims_.b);
        for (int i = 0; i < dims_.a; ++i)
            for (int j = 0; j < dims_.b; ++j) c(i, j) = amps_(i * dims_.b + j);
        return c;
    }

  private:
    Vector amps_;
    Dims dims_;
};

// --- DensityMatrix ----------------------------------------------------------

class DensityMatrix {
  public:
    DensityMatrix(Matrix rho, Dims dims) : rho_(std::move(rho)), dims_(dims) {
        validate(false);
    }

    // Trace <= 1 variant for un-normalized Kraus-term outputs; the weight of
    // each term stays recoverable as its trace.
    static DensityMatrix subnormalized(Matrix rho, Dims dims) {
        DensityMatrix out(std::move(rho), dims, private_tag{});
        out.validate(true);
        return out;
    }

    const Matrix& matrix() const { return rho_; }
    Dims dims() const { return dims_; }
    double trace() const { return rho_.trace().real(); }
    bool is_subnormalized() const { return subnormalized_; }

    double purity() const { return (rho_ * rho_).trace().real(); }
    bool is_pure() const { return purity() >= 1.0 - tol::purity; }

    // Eigenvalues clipped to [0, 1]; ascending order (Eigen's convention).
    std::vector<double> eigenvalues() const {
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
        std::vector<double> out(es.eigenvalues().data(),
                                es.eigenvalues().data() + es.eigenvalues().size());
        for (double& x : out) x = std::clamp(x, 0.0, 1.0);
        return out;
    }

    // Dominant eigenvector as a PureState; requires purity within tolerance.
    PureState principal_pure() const {
        if (!is_pure())
            fail(errc::not_pure, "principal_pure: tr(rho^2) = " + std::to_string(purity()) +
                                     " < 1 - 1e-9; use a mixed-state measure instead");
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho_);
        int top = int(es.eigenvalues().size()) - 1; // ascending order
        Vector v = es.eigenvectors().col(top);
        v /= v.norm();
        return PureState(v, dims_);
    }

  private:
    struct private_tag {};
    DensityMatrix(Matrix rho, Dims dims, private_tag) : rho_(std::move(rho)), dims_(dims) {}

    void validate(bool allow_subnormalized) {
        subnormalized_ = allow_subnormalized;
        if (dims_.a < 1 || dims_.b < 1)
            fail(errc::dimension_mismatch, "DensityMatrix: dims must be positive");
        if (rho_.rows() != rho_.cols() || rho_.rows() != dims_.total())
            fail(errc::dimension_mismatch, "DensityMatrix: shape != (d_A*d_B) x (d_A*d_B)");
        double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
        if (herm > tol::hermitian)
            fail(errc::invariant_violation,
                 "DensityMatrix: hermiticity violated by " + std::to_string(herm));
        double tr = rho_.trace().real();
        if (allow_subnormalized ? tr > 1.0 + tol::norm : std::abs(tr - 1.0) > tol::norm)
            fail(errc::invariant_violation,
                 "DensityMatrix: trace " + std::to_string(tr) + " violates normalization");
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
        double lam_min = es.eigenvalues().minCoeff();
        if (lam_min < -tol::psd)
            fail(errc::invariant_violation,
                 "DensityMatrix: negative eigenvalue " + std::to_string(lam_min));
    }

    Matrix rho_;
    Dims dims_;
    bool subnormalized_ = false;
};

inline DensityMatrix projector(const PureState& psi) {
    return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), psi.dims());
}

// --- Constructors for the standard states -----------------------------------

enum class Bell { psi_minus, psi_plus, phi_plus, phi_minus };

// The four Bell states on 2x2; psi_minus is the singlet (|01> - |10>)/sqrt(2).
inline PureState bell_state(Bell which) {
    Vector v = Vector::Zero(4);
    const double r = 1.0 / std::numbers::sqrt2;
    switch (which) {
        case Bell::psi_minus: v(1) = r;  v(2) = -r; break;
        case Bell::psi_plus:  v(1) = r;  v(2) = r;  break;
        case Bell::phi_plus:  v(0) = r;  v(3) = r;  break;
        case Bell::phi_minus: v(0) = r;  v(3) = -r; break;
    }
    return PureState(std::move(v), {2, 2});
}

// |Psi_d^+> = 1/sqrt(d) * sum_i |ii>; d = 1 degenerates to the product |00>.
inline PureState max_entangled(int d) {
    if (d < 1) fail(errc::out_of_range, "max_entangled: d must be >= 1");
    Vector v = Vector::Zero(d * d);
    for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(double(d));
    return PureState(std::move(v), {d, d});
}

// Normalized projector onto the antisymmetric subspace of C^d x C^d:
// rho = (I - P) / (d(d-1)) with P the swap operator sum_ij |ij><ji|.
// Its partial transpose has minimum eigenvalue -1/d, so it is NPT for all d.
inline DensityMatrix werner_antisym(int d) {
    if (d < 2) fail(errc::out_of_range, "werner_antisym: d must be >= 2");
    Matrix swap = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1.0;
    Matrix rho = (Matrix::Identity(d * d, d * d) - swap) / double(d * (d - 1));
    return DensityMatrix(std::move(rho), {d, d});
}

// --- Composition and reduction ----------------------------------------------

// Tensor product of pure states. The composite is bipartite again:
// A-side = A1 (x) A2, B-side = B1 (x) B2, so the flat index is
// ((a1*a2size + a2) * bTotal + (b1*b2size + b2)).
inline PureState tensor(const PureState& x, const PureState& y) {
    Dims dx = x.dims(), dy = y.dims();
    Dims d{dx.a * dy.a, dx.b * dy.b};
    Vector out(d.total());
    for (int a1 = 0; a1 < dx.a; ++a1)
        for (int a2 = 0; a2 < dy.a; ++a2)
            for (int b1 = 0; b1 < dx.b; ++b1)
                for (int b2 = 0; b2 < dy.b; ++b2)
                    out((a1 * dy.a + a2) * d.b + (b1 * dy.b + b2)) = x.amp(a1, b1) * y.amp(a2, b2);
    return PureState(std::move(out), d);
}

inline DensityMatrix tensor(const DensityMatrix& x, const DensityMatrix& y) {
    Dims dx = x.dims(), dy = y.dims();
    Dims d{dx.a * dy.a, dx.b * dy.b};
    int n = d.total();
    Matrix out(n, n);
    auto flat = [&](int a1, int a2, int b1, int b2) {
        return (a1 * dy.a + a2) * d.b + (b1 * dy.b + b2);
    };
    for (int a1 = 0; a1 < dx.a; ++a1)
        for (int b1 = 0; b1 < dx.b; ++b1)
            for (int a1p = 0; a1p < dx.a; ++a1p)
                for (int b1p = 0; b1p < dx.b; ++b1p) {
                    cplx lhs = x.matrix()(a1 * dx.b + b1, a1p * dx.b + b1p);
                    for (int a2 = 0; a2 < dy.a; ++a2)
                        for (int b2 = 0; b2 < dy.b; ++b2)
                            for (int a2p = 0; a2p < dy.a; ++a2p)
                                for (int b2p = 0; b2p < dy.b; ++b2p)
                                    out(flat(a1, a2, b1, b2), flat(a1p, a2p, b1p, b2p)) =
                                        lhs * y.matrix()(a2 * dy.b + b2, a2p * dy.b + b2p);
                }
    bool sub = x.is_subnormalized() || y.is_subnormalized();
    return sub ? DensityMatrix::subnormalized(std::move(out), d)
               : DensityMatrix(std::move(out), d);
}

// Reduced state on the kept subsystem. partial_trace(rho, Subsystem::B)
// returns rho_A = tr_B rho, a d_A x d_A matrix with dims (d_A, 1).
inline DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem traced_out) {
    Dims d = rho.dims();
    const Matrix& m = rho.matrix();
    if (traced_out == Subsystem::B) {
        Matrix out = Matrix::Zero(d.a, d.a);
        for (int i = 0; i < d.a; ++i)
            for (int j = 0; j < d.a; ++j)
                for (int k = 0; k < d.b; ++k) out(i, j) += m(i * d.b + k, j * d.b + k);
        return rho.is_subnormalized() ? DensityMatrix::subnormalized(std::move(out), {d.a, 1})
                                      : DensityMatrix(std::move(out), {d.a, 1});
    }
    Matrix out = Matrix::Zero(d.b, d.b);
    for (int i = 0; i < d.b; ++i)
        for (int j = 0; j < d.b; ++j)
            for (int k = 0; k < d.a; ++k) out(i, j) += m(k * d.b + i, k * d.b + j);
    return rho.is_subnormalized() ? DensityMatrix::subnormalized(std::move(out), {d.b, 1})
                                  : DensityMatrix(std::move(out), {d.b, 1});
}

inline DensityMatrix reduced_state(const PureState& psi, Subsystem keep) {
    // For a pure state the reduction is C C^dagger (keep A) or C^T C* (keep B),
    // avoiding the d^2 x d^2 projector.
    Matrix c = psi.coefficient_matrix();
    if (keep == Subsystem::A) return DensityMatrix(c * c.adjoint(), {psi.dims().a, 1});
    return DensityMatrix(c.transpose() * c.conjugate(), {psi.dims().b, 1});
}

// Von Neumann entropy in bits.
inline double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double lam : rho.eigenvalues()) s -= xlog2x(lam);
    return s;
}

// --- Norms, fidelity, channels ----------------------------------------------

// Trace norm ||M||_1 = sum of singular values; requires a square matrix.
inline double trace_norm(const Matrix& m) {
    if (m.rows() != m.cols()) fail(errc::dimension_mismatch, "trace_norm: matrix not square");
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().sum();
}

inline double fidelity(const PureState& x, const PureState& y) {
    if (!(x.dims() == y.dims())) fail(errc::dimension_mismatch, "fidelity: dims differ");
    return std::norm(x.amplitudes().dot(y.amplitudes()));
}

// Kraus representation of a channel; trace-preserving iff sum E_i^dag E_i = I.
// Non-trace-preserving sets are accepted when the deficit I - sum E^dag E is PSD
// (a sub-channel, e.g. a single measurement branch).
class KrausChannel {
  public:
    KrausChannel(std::vector<Matrix> ops, Dims in_dims) : ops_(std::move(ops)), dims_(in_dims) {
        if (ops_.empty()) fail(errc::invariant_violation, "KrausChannel: empty operator list");
        int n = dims_.total();
        for (const Matrix& e : ops_)
            if (e.cols() != n)
                fail(errc::dimension_mismatch, "KrausChannel: operator column count != dim");
        int rows = int(ops_.front().rows());
        for (const Matrix& e : ops_)
            if (e.rows() != rows)
                fail(errc::dimension_mismatch, "KrausChannel: inconsistent operator row counts");
        Matrix comp = Matrix::Zero(n, n);
        for (const Matrix& e : ops_) comp += e.adjoint() * e;
        double dev = (comp - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
        trace_preserving_ = dev <= tol::kraus;
        if (!trace_preserving_) {
            Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix::Identity(n, n) - comp,
                                                     Eigen::EigenvaluesOnly);
            if (es.eigenvalues().minCoeff() < -tol::kraus)
                fail(errc::invariant_violation,
                     "KrausChannel: sum E^dag E exceeds identity; not a (sub)channel");
        }
    }

    const std::vector<Matrix>& operators() const { return ops_; }
    Dims input_dims() const { return dims_; }
    bool trace_preserving() const { return trace_preserving_; }

  private:
    std::vector<Matrix> ops_;
    Dims dims_;
    bool trace_preserving_ = false;
};

// Output dims must be supplied when the Kraus operators change dimension;
// square operators keep the input dims.
inline DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho,
                                   Dims out_dims = {0, 0}) {
    if (!(ch.input_dims() == rho.dims()))
        fail(errc::dimension_mismatch, "apply_channel: channel and state dims differ");
    int rows = int(ch.operators().front().rows());
    Matrix out = Matrix::Zero(rows, rows);
    for (const Matrix& e : ch.operators()) out += e * rho.matrix() * e.adjoint();
    Dims d = out_dims.total() > 0 ? out_dims : rho.dims();
    if (d.total() != rows) fail(errc::dimension_mismatch, "apply_channel: bad output dims");
    return ch.trace_preserving() && !rho.is_subnormalized()
               ? DensityMatrix(std::move(out), d)
               : DensityMatrix::subnormalized(std::move(out), d);
}

} // namespace ebit
