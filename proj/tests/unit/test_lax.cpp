#include "oracles.hpp"

#include "painleve/lax.hpp"
#include "painleve/linalg.hpp"
#include "painleve/sampling.hpp"

#include <doctest.h>

#include <numbers>

using namespace painleve;

namespace {

SystemSpec spec_of(SystemKind k, bool frozen) {
    SystemSpec sp;
    sp.kind = k;
    sp.params.theta = Cplx(0.3, 0.1);
    sp.params.theta0 = Cplx(0.2, -0.1);
    sp.params.theta1 = Cplx(-0.4, 0.05);
    sp.params.omega = 2.0;
    if (frozen) {
        sp.autonomous = true;
        sp.params.tau = 1.0;
    }
    return sp;
}

}  // namespace

TEST_SUITE("lax") {

TEST_CASE("char poly from eigenvalues matches Faddeev-LeVerrier") {
    Sampler s(40);
    for (const SystemKind k : {SystemKind::P_I, SystemKind::P_II, SystemKind::P_IV, SystemKind::HarmOsc}) {
        const ReducedPoint x = s.reduced_point(3, 1.0, Slice::Q_DIAG, 0.5);
        const Mat L = reduced_lax(spec_of(k, true), x, Cplx(0.8, 0.6)).L;
        const Vec a = char_poly(L), b = char_poly_faddeev_leverrier(L);
        CHECK(coeff_deviation(a, b, std::max(1.0, eigenvalues(L).cwiseAbs().maxCoeff())) < 1e-10);
    }
}

TEST_CASE("spectral curves agree across unreduced, reduced and dual points") {
    Sampler s(41);
    const auto grid = default_lambda_grid();
    CHECK(grid.size() == 20);
    for (const SystemKind k : {SystemKind::P_I, SystemKind::P_II, SystemKind::P_IV, SystemKind::HarmOsc,
                               SystemKind::P_II_poly, SystemKind::Free})
        for (int n = 2; n <= 4; ++n) {
            CAPTURE(to_string(k));
            CAPTURE(n);
            const SystemSpec sp = spec_of(k, k != SystemKind::HarmOsc && k != SystemKind::Free);
            const ReducedPoint x = s.reduced_point(n, 1.0, Slice::Q_DIAG, 1.0);
            const MatrixPhasePoint pt = s.generic_level_set_point(x);
            CHECK(spectral_match(sp, pt, x, grid, 1e-8).ok);
            CHECK(spectral_match(sp, x, dual_of(x), grid, 1e-8).ok);
            // Independent points are a negative control.
            CHECK_FALSE(spectral_match(sp, x, s.reduced_point(n, 1.0, Slice::Q_DIAG, 1.0), grid, 1e-8).ok);
        }
}

TEST_CASE("pole at lambda = 0 is reported") {
    Sampler s(42);
    const ReducedPoint x = s.reduced_point(2, 1.0, Slice::Q_DIAG);
    for (const SystemKind k : {SystemKind::P_II, SystemKind::P_IV}) {
        try {
            reduced_lax(spec_of(k, false), x, 0.0);
            FAIL("expected PoleAtLambda");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::PoleAtLambda);
        }
    }
}

TEST_CASE("zero-curvature residual is fourth order in h along the flow") {
    Sampler s(43);
    for (const SystemKind k : {SystemKind::P_I, SystemKind::P_II, SystemKind::P_II_poly, SystemKind::P_IV,
                               SystemKind::HarmOsc}) {
        CAPTURE(to_string(k));
        const SystemSpec sp = spec_of(k, false);
        const ReducedPoint x = s.reduced_point(2, 1.0, Slice::Q_DIAG, 0.3);
        const MatrixPhasePoint pt = s.generic_level_set_point(x);
        const Cplx lam(0.7, 0.4);
        const double ratio = zero_curvature_residual(sp, pt, lam, 1e-2) / zero_curvature_residual(sp, pt, lam, 5e-3);
        CHECK(ratio > 12.0);
        CHECK(ratio < 20.0);
        const double rratio =
            reduced_zero_curvature_residual(sp, x, lam, 1e-2) / reduced_zero_curvature_residual(sp, x, lam, 5e-3);
        CHECK(rratio > 12.0);
        CHECK(rratio < 20.0);
        ZeroCurvatureOptions pert;
        pert.eom_perturbation = 1e-3;
        CHECK(zero_curvature_residual(sp, pt, lam, 1e-3, pert) > 1e-4);
        CHECK(reduced_zero_curvature_residual(sp, x, lam, 1e-3, pert) > 1e-4);
    }
}

TEST_CASE("the P_IV pair as printed is not compatible with the flow") {
    Sampler s(44);
    const SystemSpec sp = spec_of(SystemKind::P_IV, false);
    const MatrixPhasePoint pt = s.generic_level_set_point(s.reduced_point(2, 1.0, Slice::Q_DIAG, 0.3));
    ZeroCurvatureOptions printed;
    printed.variant = LaxVariant::AsPrinted;
    CHECK(zero_curvature_residual(sp, pt, Cplx(0.7, 0.4), 1e-3, printed) > 1e-2);
    CHECK(zero_curvature_residual(sp, pt, Cplx(0.7, 0.4), 1e-3) < 1e-8);
}

TEST_CASE("gauge term makes the reduced pair a Lax pair for the particle flow") {
    Sampler s(45);
    const SystemSpec sp = spec_of(SystemKind::HarmOsc, false);
    const ReducedPoint x = s.reduced_point(3, 1.0, Slice::Q_DIAG);
    CHECK(reduced_zero_curvature_residual(sp, x, Cplx(0.5, 0.5), 1e-3) < 1e-7);
    // F maps the all-ones vector to a multiple of itself: C 1 = 1 is kept along the flow.
    const Vec r = gauge_F(sp, x).rowwise().sum();
    CHECK((r - Vec::Constant(r.size(), r(0))).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Laurent extraction recovers a known polynomial") {
    std::vector<Cplx> samples;
    const int m = 8;
    const double r = 0.5;
    for (int k = 0; k < m; ++k) {
        const Cplx lam = std::polar(r, 2.0 * std::numbers::pi * k / m);
        samples.push_back(2.0 / lam + 3.0 + Cplx(0, 1) * lam * lam);
    }
    const auto c = laurent_coefficients(samples, r, -1);
    CHECK(std::abs(c[0] - 2.0) < 1e-12);
    CHECK(std::abs(c[1] - 3.0) < 1e-12);
    CHECK(std::abs(c[2]) < 1e-12);
    CHECK(std::abs(c[3] - kI) < 1e-12);
}

}
