#include "oracles.hpp"

#include "painleve/dynamics.hpp"
#include "painleve/lax.hpp"
#include "painleve/sampling.hpp"

#include <doctest.h>

using namespace painleve;

namespace {

Sampler::PointShape small_shape() {
    Sampler::PointShape sh;
    sh.min_gap = 0.48;
    sh.pos_re = 0.8;
    sh.pos_im = 0.1;
    sh.mom_re = 0.2;
    sh.mom_im = 0.05;
    return sh;
}

Sampler::PointShape moderate_shape() {
    Sampler::PointShape sh;
    sh.min_gap = 0.8;
    sh.pos_re = 1.5;
    sh.pos_im = 0.3;
    sh.mom_re = 0.5;
    sh.mom_im = 0.2;
    return sh;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("RK4 is fourth order on the harmonic oscillator") {
    SystemSpec sp;
    sp.kind = SystemKind::HarmOsc;
    sp.params.omega = 1.0;
    MatrixPhasePoint pt{Mat::Constant(1, 1, 1.0), Mat::Zero(1, 1), 0.0};
    auto err = [&](double h) {
        const auto tr = integrate(sp, pt, 0.0, 1.0, h);
        return std::abs(tr.back().q(0, 0) - std::cos(1.0));
    };
    const double ratio = err(0.02) / err(0.01);
    CHECK(ratio > 14.0);
    CHECK(ratio < 18.0);
}

TEST_CASE("integration lands exactly on t1 and RK4 runs backwards") {
    SystemSpec sp;
    Sampler s(50);
    const ReducedPoint x = s.reduced_point(3, 1.0, Slice::Q_DIAG, 0.0, moderate_shape());
    const auto fwd = integrate(sp, x, 0.0, 0.37, 0.01);
    CHECK(fwd.completed());
    CHECK(fwd.times.back() == doctest::Approx(0.37).epsilon(1e-14));
    const ReducedPoint back =
        rk4_advance(fwd.back(), -0.37, 37, [&](const ReducedPoint& y) { return reduced_vector_field(sp, y); });
    CHECK(permuted_deviation(back, x) < 1e-9);
    CHECK_THROWS_AS(integrate(sp, x, 0.37, 0.0, 0.01), Error);
}

TEST_CASE("autonomous flows conserve the spectral curve") {
    Sampler s(51);
    for (const SystemKind k : {SystemKind::P_I, SystemKind::P_II}) {
        SystemSpec sp;
        sp.kind = k;
        sp.autonomous = true;
        sp.params.tau = 1.0;
        sp.params.theta = 0.3;
        const ReducedPoint x = s.reduced_point(3, 0.25, Slice::Q_DIAG, 0.0, small_shape());
        const auto tr = integrate(sp, s.generic_level_set_point(x, 0.1), 0.0, 1.0, 1e-3);
        REQUIRE(tr.completed());
        const InvariantReport rep = monitor_invariants(sp, tr, {Cplx(1.0, 0.0), Cplx(0.0, 2.0)}, Coupling(0.25));
        CHECK(rep.conservation_asserted);
        CHECK(rep.max_coefficient_drift < 1e-6);
        CHECK(rep.max_moment_map_deviation < 1e-8);
        CHECK(rep.max_energy_drift < 1e-8);
    }
}

TEST_CASE("non-autonomous flows report but do not assert conservation") {
    Sampler s(52);
    SystemSpec sp;
    sp.kind = SystemKind::P_II;
    const ReducedPoint x = s.reduced_point(2, 0.25, Slice::Q_DIAG, 0.0, small_shape());
    const auto tr = integrate(sp, embed(x), 0.0, 0.5, 1e-3);
    const InvariantReport rep = monitor_invariants(sp, tr, {Cplx(1.0, 0.0)}, Coupling(0.25));
    CHECK_FALSE(rep.conservation_asserted);
    CHECK(rep.max_moment_map_deviation < 1e-8);
}

TEST_CASE("matrix flow commutes with reduction") {
    Sampler s(53);
    struct Case {
        SystemKind kind;
        int n;
        double dt;
    };
    for (const Case c : {Case{SystemKind::Free, 3, 1.0}, Case{SystemKind::P_IV, 2, 0.3}, Case{SystemKind::P_II, 2, 0.3},
                         Case{SystemKind::HarmOsc, 3, 0.5}}) {
        CAPTURE(to_string(c.kind));
        SystemSpec sp;
        sp.kind = c.kind;
        sp.params.theta = 0.2;
        sp.params.theta0 = 0.1;
        sp.params.theta1 = -0.3;
        const ReducedPoint x = s.reduced_point(c.n, 1.0, Slice::Q_DIAG, 0.0, moderate_shape());
        CHECK(equivariance_check(sp, x, c.dt, 1e-3) < 1e-6);
    }
}

TEST_CASE("free reduced flow keeps the eigenvalues of p") {
    Sampler s(54);
    SystemSpec sp;
    // Wider gaps than the equivariance data: close encounters cost RK4 accuracy at h = 1e-3.
    Sampler::PointShape sh = moderate_shape();
    sh.min_gap = 1.0;
    sh.pos_re = 2.5;
    const ReducedPoint x = s.reduced_point(4, 1.0, Slice::Q_DIAG, 0.0, sh);
    const auto tr = integrate(sp, x, 0.0, 1.0, 1e-3);
    const Vec e0 = eigenvalues(embed(x).p);
    double worst = 0.0;
    for (const auto& st : tr.states) {
        const Vec e = eigenvalues(embed(st).p);
        const auto perm = match_permutation(e0, e);
        for (Eigen::Index i = 0; i < 4; ++i) worst = std::max(worst, std::abs(e0(i) - e(perm[static_cast<std::size_t>(i)])));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("blow-up terminates with a partial trajectory") {
    SystemSpec sp;
    sp.kind = SystemKind::P_II;
    sp.autonomous = true;
    sp.params.tau = 1.0;
    ReducedPoint x;
    x.positions = Vec::Constant(1, 3.0);
    x.momenta = Vec::Constant(1, 10.0);
    const auto tr = integrate(sp, x, 0.0, 2.0, 1e-3);
    CHECK(tr.status == Termination::Overflow);
    CHECK(tr.times.back() < 2.0);
    CHECK_THROWS_AS(require_completed(tr), Error);
}

}
