#include "oracles.hpp"

#include "painleve/linalg.hpp"
#include "painleve/sampling.hpp"
#include "painleve/types.hpp"

#include <doctest.h>

using namespace painleve;

TEST_SUITE("core_types") {

TEST_CASE("coupling rejects non-positive values") {
    CHECK_THROWS_AS(Coupling(0.0), Error);
    CHECK_THROWS_AS(Coupling(-1.0), Error);
    CHECK(Coupling(0.5).value() == 0.5);
}

TEST_CASE("moment map matches an entrywise commutator") {
    Sampler s(1);
    for (int n = 1; n <= 5; ++n) {
        const MatrixPhasePoint pt{s.complex_matrix(n, 1.0), s.complex_matrix(n, 1.0), 0.0};
        CHECK(oracle::max_abs(moment_map(pt) - oracle::commutator(pt.p, pt.q)) < 1e-13);
    }
}

TEST_CASE("level set target is i g (Id - 1 1^T)") {
    const Mat t = level_set_target(3, Coupling(2.0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::abs(t(i, j) - (i == j ? Cplx(0) : Cplx(0, -2.0))) < 1e-15);
    CHECK(std::abs(t.trace()) < 1e-15);
}

TEST_CASE("validate catches shape errors") {
    MatrixPhasePoint pt{Mat::Zero(2, 2), Mat::Zero(3, 3), 0.0};
    CHECK_THROWS_AS(pt.validate(), Error);
    try {
        pt.validate();
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}

TEST_CASE("system spec requires tau when frozen") {
    SystemSpec sp;
    sp.kind = SystemKind::P_I;
    sp.autonomous = true;
    CHECK_THROWS_AS(sp.validate(), Error);
    sp.params.tau = 1.0;
    CHECK_NOTHROW(sp.validate());
    CHECK(sp.time(5.0) == 1.0);
}

TEST_CASE("system kind names round trip") {
    for (SystemKind k : {SystemKind::P_I, SystemKind::P_II, SystemKind::P_II_poly, SystemKind::P_IV,
                         SystemKind::HarmOsc, SystemKind::Free})
        CHECK(system_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(system_kind_from_string("P_III"), Error);
}

TEST_CASE("symplectic pairing is antisymmetric and bilinear") {
    Sampler s(2);
    const TangentPair u = s.tangent(3), w = s.tangent(3), v = s.tangent(3);
    CHECK(std::abs(symplectic_pairing(u, w) + symplectic_pairing(w, u)) < 1e-13);
    CHECK(std::abs(symplectic_pairing(u, u)) < 1e-13);
    const TangentPair uv{u.dq + 2.0 * v.dq, u.dp + 2.0 * v.dp};
    CHECK(std::abs(symplectic_pairing(uv, w) - symplectic_pairing(u, w) - 2.0 * symplectic_pairing(v, w)) < 1e-12);
}

TEST_CASE("Faddeev-LeVerrier agrees with the product over roots") {
    Sampler s(3);
    for (int n = 1; n <= 6; ++n) {
        const Mat a = s.complex_matrix(n, 1.0);
        Eigen::ComplexEigenSolver<Mat> es(a);
        const Vec c1 = char_poly_faddeev(a);
        const Vec c2 = poly_from_roots(es.eigenvalues());
        CHECK((c1 - c2).cwiseAbs().maxCoeff() < 1e-11);
        CHECK(std::abs(c1(n) - (n % 2 ? -1.0 : 1.0) * a.determinant()) < 1e-11);
    }
}

TEST_CASE("sampler is reproducible and honours the gap") {
    Sampler a(9), b(9);
    const Vec x = a.separated(6, 0.3), y = b.separated(6, 0.3);
    CHECK(x == y);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < i; ++j) CHECK(std::abs(x(i) - x(j)) >= 0.3);
}

}
