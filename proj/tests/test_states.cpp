#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "ebit/sampling.hpp"
#include "ebit/states.hpp"

using namespace ebit;

namespace {
const double kR = 1.0 / std::numbers::sqrt2;
}

TEST_CASE("pure state constructor enforces its invariants") {
    Vector good(4);
    good << 1.0, 0.0, 0.0, 0.0;
    REQUIRE_NOTHROW(PureState(good, {2, 2}));

    SECTION("length must equal d_A * d_B") {
        Vector v(3);
        v << 1.0, 0.0, 0.0;
        REQUIRE_THROWS_MATCHES(PureState(v, {2, 2}), Error,
                               Catch::Matchers::MessageMatches(
                                   Catch::Matchers::ContainsSubstring("d_A * d_B")));
    }
    SECTION("norm must be 1") {
        Vector v(4);
        v << 1.0, 0.5, 0.0, 0.0;
        try {
            PureState p(v, {2, 2});
            FAIL("norm violation not detected");
        } catch (const Error& e) {
            CHECK(e.code() == errc::invariant_violation);
            CHECK(std::string(e.what()).find("norm") != std::string::npos);
        }
    }
    SECTION("dimensions must be positive") {
        REQUIRE_THROWS_AS(PureState(good, {0, 4}), Error);
        REQUIRE_THROWS_AS(PureState(good, {-2, -2}), Error);
    }
}

TEST_CASE("bell states are the textbook amplitude patterns") {
    // Singlet (|01> - |10>)/sqrt(2): amplitudes (0, r, -r, 0) in flat order.
    PureState s = bell_state(Bell::psi_minus);
    CHECK(std::abs(s.amplitudes()(0)) < 1e-15);
    CHECK(std::abs(s.amplitudes()(1) - cplx(kR, 0)) < 1e-12);
    CHECK(std::abs(s.amplitudes()(2) - cplx(-kR, 0)) < 1e-12);
    CHECK(std::abs(s.amplitudes()(3)) < 1e-15);

    // The four Bell states form an orthonormal set.
    const Bell all[] = {Bell::psi_minus, Bell::psi_plus, Bell::phi_plus, Bell::phi_minus};
    for (Bell x : all)
        for (Bell y : all) {
            cplx ip = bell_state(x).amplitudes().dot(bell_state(y).amplitudes());
            CHECK(std::abs(ip - (x == y ? 1.0 : 0.0)) < 1e-12);
        }
}

TEST_CASE("reduced states of known pure states") {
    SECTION("singlet reduces to the maximally mixed qubit on both sides") {
        for (Subsystem side : {Subsystem::A, Subsystem::B}) {
            DensityMatrix red = reduced_state(bell_state(Bell::psi_minus), side);
            CHECK((red.matrix() - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    SECTION("maximally entangled d=3 reduces to I/3") {
        DensityMatrix red = reduced_state(max_entangled(3), Subsystem::A);
        CHECK((red.matrix() - Matrix::Identity(3, 3) / 3.0).cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("biased two-term state reduces to diag(0.8, 0.2)") {
        Vector v(4);
        v << std::sqrt(0.8), 0.0, 0.0, std::sqrt(0.2);
        DensityMatrix red = reduced_state(PureState(v, {2, 2}), Subsystem::A);
        CHECK(std::abs(red.matrix()(0, 0).real() - 0.8) < 1e-12);
        CHECK(std::abs(red.matrix()(1, 1).real() - 0.2) < 1e-12);
        CHECK(std::abs(red.matrix()(0, 1)) < 1e-12);
    }
}

TEST_CASE("tensor product uses the composite index (a1 a2, b1 b2)") {
    // Psi2+ (x) Psi2+ has amplitude 1/2 exactly on the four composite
    // diagonal pairs (a1 = b1, a2 = b2) and zero elsewhere.
    PureState prod = tensor(max_entangled(2), max_entangled(2));
    REQUIRE(prod.dims().a == 4);
    REQUIRE(prod.dims().b == 4);
    int nonzero = 0;
    for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
            for (int b1 = 0; b1 < 2; ++b1)
                for (int b2 = 0; b2 < 2; ++b2) {
                    cplx amp = prod.amp(a1 * 2 + a2, b1 * 2 + b2);
                    if (a1 == b1 && a2 == b2) {
                        CHECK(std::abs(amp - cplx(0.5, 0)) < 1e-12);
                        ++nonzero;
                    } else {
                        CHECK(std::abs(amp) < 1e-15);
                    }
                }
    CHECK(nonzero == 4);
}

TEST_CASE("partial trace splits product density matrices") {
    auto rng = seeded_rng(11, 0);
    DensityMatrix a = projector(haar_pure(rng, {2, 2}));
    DensityMatrix b = projector(haar_pure(rng, {2, 2}));
    // Interpreting tensor(a, b) as (A1 A2 | B1 B2), tracing out B leaves
    // rho_A1A2 = tr_B1 a  (x)  tr_B2 b.
    DensityMatrix ab = tensor(a, b);
    Matrix expect =
        Matrix::Zero(4, 4);
    Matrix ta = partial_trace(a, Subsystem::B).matrix();
    Matrix tb = partial_trace(b, Subsystem::B).matrix();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) expect(i * 2 + k, j * 2 + l) = ta(i, j) * tb(k, l);
    Matrix got = partial_trace(ab, Subsystem::B).matrix();
    CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("antisymmetric werner state") {
    SECTION("d = 2 is exactly the singlet projector") {
        DensityMatrix w = werner_antisym(2);
        DensityMatrix s = projector(bell_state(Bell::psi_minus));
        CHECK((w.matrix() - s.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("trace one and positive semidefinite for d up to 6") {
        for (int d = 2; d <= 6; ++d) {
            DensityMatrix w = werner_antisym(d); // constructor re-validates
            CHECK(std::abs(w.matrix().trace().real() - 1.0) < 1e-10);
            // Supported on the antisymmetric subspace: symmetric vectors are
            // annihilated, e.g. |00>.
            Vector sym = Vector::Zero(d * d);
            sym(0) = 1.0;
            CHECK((w.matrix() * sym).norm() < 1e-12);
        }
    }
}

TEST_CASE("entropy, purity, fidelity, trace norm") {
    DensityMatrix mm22 = DensityMatrix(Matrix::Identity(4, 4) / 4.0, {2, 2});
    CHECK(std::abs(von_neumann_entropy(mm22) - 2.0) < 1e-12);
    CHECK(std::abs(mm22.purity() - 0.25) < 1e-12);
    CHECK(!mm22.is_pure());

    DensityMatrix s = projector(bell_state(Bell::psi_minus));
    CHECK(std::abs(von_neumann_entropy(s)) < 1e-9);
    CHECK(s.is_pure());
    CHECK(std::abs(fidelity(bell_state(Bell::psi_minus), bell_state(Bell::psi_minus)) - 1.0) <
          1e-12);
    CHECK(std::abs(fidelity(bell_state(Bell::psi_minus), bell_state(Bell::phi_plus))) <
          1e-12); // orthogonal pure states

    // trace norm of diag(1/2, -1/2, 0, 0) is 1: hand oracle for |rho - sigma|_1.
    Matrix diff = Matrix::Zero(4, 4);
    diff(0, 0) = 0.5;
    diff(1, 1) = -0.5;
    CHECK(std::abs(trace_norm(diff) - 1.0) < 1e-12);
}

TEST_CASE("principal_pure guards against silently flattening mixed states") {
    DensityMatrix mm = DensityMatrix(Matrix::Identity(4, 4) / 4.0, {2, 2});
    try {
        mm.principal_pure();
        FAIL("mixed state accepted as pure");
    } catch (const Error& e) {
        CHECK(e.code() == errc::not_pure);
        CHECK(std::string(e.what()).find("mixed") != std::string::npos);
    }
    DensityMatrix s = projector(bell_state(Bell::psi_minus));
    PureState back = s.principal_pure();
    CHECK(std::abs(std::abs(back.amplitudes().dot(bell_state(Bell::psi_minus).amplitudes())) - 1.0) <
          1e-9);
}

TEST_CASE("kraus channels validate completeness and apply correctly") {
    SECTION("completeness violations are rejected") {
        // Sub-channels (sum E^dag E below identity) are allowed; exceeding the
        // identity is not.
        std::vector<Matrix> ks = {1.5 * Matrix::Identity(4, 4)};
        REQUIRE_THROWS_AS(KrausChannel(ks, {2, 2}), Error);
        std::vector<Matrix> sub = {0.5 * Matrix::Identity(4, 4)};
        CHECK(!KrausChannel(sub, {2, 2}).trace_preserving());
    }
    SECTION("fully depolarizing Bob's qubit of a singlet yields I/4") {
        // Local Kraus set {I(x)P_ij / ...}: the d=2 depolarizing channel via
        // the four operators (1/2) sigma_k on B.
        Eigen::Matrix2cd sx, sy, sz, id;
        id.setIdentity();
        sx << 0, 1, 1, 0;
        sy << 0, cplx(0, -1), cplx(0, 1), 0;
        sz << 1, 0, 0, -1;
        std::vector<Matrix> ks;
        for (const auto& p : {id, sx, sy, sz}) {
            Matrix k = Matrix::Zero(4, 4);
            for (int i = 0; i < 2; ++i)
                for (int bi = 0; bi < 2; ++bi)
                    for (int bj = 0; bj < 2; ++bj) k(i * 2 + bi, i * 2 + bj) = 0.5 * p(bi, bj);
            ks.push_back(k);
        }
        KrausChannel ch(ks, {2, 2});
        CHECK(ch.trace_preserving());
        DensityMatrix out = apply_channel(ch, projector(bell_state(Bell::psi_minus)));
        CHECK((out.matrix() - Matrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("non-trace-preserving branch gives a subnormalized output") {
        // Keep only the |0><0| measurement branch on B.
        Matrix k = Matrix::Zero(4, 4);
        k(0, 0) = 1.0;
        k(2, 2) = 1.0;
        KrausChannel ch({k}, {2, 2});
        CHECK(!ch.trace_preserving());
        DensityMatrix out = apply_channel(ch, projector(bell_state(Bell::psi_minus)));
        CHECK(std::abs(out.matrix().trace().real() - 0.5) < 1e-12);
    }
}

TEST_CASE("density matrix constructor enforces trace, hermiticity, positivity") {
    Matrix m = Matrix::Identity(4, 4) / 4.0;
    REQUIRE_NOTHROW(DensityMatrix(m, {2, 2}));

    Matrix bad_trace = Matrix::Identity(4, 4);
    REQUIRE_THROWS_MATCHES(
        DensityMatrix(bad_trace, {2, 2}), Error,
        Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("trace")));

    Matrix not_herm = m;
    not_herm(0, 1) = cplx(0.1, 0.0); // no matching (1,0) entry
    REQUIRE_THROWS_MATCHES(
        DensityMatrix(not_herm, {2, 2}), Error,
        Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("hermit")));

    Matrix neg = Matrix::Zero(4, 4);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    REQUIRE_THROWS_MATCHES(
        DensityMatrix(neg, {2, 2}), Error,
        Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("negative eigenvalue")));
}
