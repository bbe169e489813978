#pragma once

#include <string>
#include <vector>

#include "ebit/errors.hpp"
#include "ebit/states.hpp"

// Positive-partial-transpose test and what it certifies. Transposing one
// subsystem preserves the spectrum of separable states; a negative eigenvalue
// therefore witnesses entanglement, and PPT states are never distillable.

namespace ebit {

// Partial transpose over subsystem A (default) or B:
//   (rho^{T_A})_{(mu m),(nu n)} = rho_{(nu m),(mu n)}.
// The result is Hermitian with trace 1 but need not be positive, so it is
// returned as a raw matrix rather than a DensityMatrix.
inline Matrix partial_transpose(const DensityMatrix& rho, Subsystem which = Subsystem::A) {
    Dims d = rho.dims();
    const Matrix& m = rho.matrix();
    Matrix out(d.total(), d.total());
    for (int mu = 0; mu < d.a; ++mu)
        for (int mm = 0; mm < d.b; ++mm)
            for (int nu = 0; nu < d.a; ++nu)
                for (int nn = 0; nn < d.b; ++nn) {
                    int row = mu * d.b + mm, col = nu * d.b + nn;
                    out(row, col) = which == Subsystem::A ? m(nu * d.b + mm, mu * d.b + nn)
                                                          : m(mu * d.b + nn, nu * d.b + mm);
                }
    return out;
}

enum class Separability { separable, entangled, undetermined };
enum class Distillability { not_distillable, npt_candidate };

struct PptReport {
    double min_pt_eigenvalue = 0.0;
    bool is_ppt = false;
    bool boundary = false; // |min eigenvalue| within 1e-9 of zero
    Separability separability = Separability::undetermined;
    Distillability distillability = Distillability::npt_candidate;
};

// PPT is necessary for separability in every dimension and sufficient only on
// 2x2 and 2x3 systems, where the report can say "separable" outright. PPT
// states are not distillable; NPT states are flagged as candidates only,
// since NPT alone does not certify distillability beyond those small systems.
inline PptReport ppt_report(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(partial_transpose(rho, Subsystem::A),
                                             Eigen::EigenvaluesOnly);
    PptReport rep;
    rep.min_pt_eigenvalue = es.eigenvalues().minCoeff();
    rep.is_ppt = rep.min_pt_eigenvalue >= -tol::psd;
    rep.boundary = std::abs(rep.min_pt_eigenvalue) <= tol::psd;
    Dims d = rho.dims();
    bool small = (d.a == 2 && d.b == 2) || (d.a == 2 && d.b == 3) || (d.a == 3 && d.b == 2);
    if (!rep.is_ppt)
        rep.separability = Separability::entangled;
    else
        rep.separability = small ? Separability::separable : Separability::undetermined;
    rep.distillability =
        rep.is_ppt ? Distillability::not_distillable : Distillability::npt_candidate;
    return rep;
}

// A channel Lambda preserves PPT-ness when Lambda(sigma^T)^T stays positive
// for PPT inputs; both one-sided transposes are checked. Probes the given
// samples and reports the first violation, if any.
struct PptPreservingReport {
    bool preserving = true;
    int failing_sample = -1;      // index into the sample list
    double min_pt_eigenvalue = 0.0;  // most negative eigenvalue seen at the failure
};

inline PptPreservingReport is_ppt_preserving_on(const KrausChannel& ch,
                                                const std::vector<DensityMatrix>& samples) {
    if (!ch.trace_preserving())
        fail(errc::not_trace_preserving, "is_ppt_preserving_on: channel is not trace-preserving");
    PptPreservingReport rep;
    for (size_t i = 0; i < samples.size(); ++i) {
        const DensityMatrix& sigma = samples[i];
        if (!ppt_report(sigma).is_ppt) continue; // only PPT inputs constrain the map
        for (Subsystem side : {Subsystem::A, Subsystem::B}) {
            Matrix transposed = partial_transpose(sigma, side);
            // sigma^{T} is again a valid state for PPT sigma.
            DensityMatrix in(transposed, sigma.dims());
            DensityMatrix out = apply_channel(ch, in);
            Matrix back = partial_transpose(out, side);
            Eigen::SelfAdjointEigenSolver<Matrix> es(back, Eigen::EigenvaluesOnly);
            double lam = es.eigenvalues().minCoeff();
            if (lam < -tol::psd) {
                rep.preserving = false;
                rep.failing_sample = int(i);
                rep.min_pt_eigenvalue = lam;
                return rep;
            }
        }
    }
    return rep;
}

} // namespace ebit
