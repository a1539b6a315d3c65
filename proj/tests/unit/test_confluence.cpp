#include "oracles.hpp"

#include "painleve/confluence.hpp"
#include "painleve/sampling.hpp"

#include <doctest.h>

using namespace painleve;

TEST_SUITE("confluence") {

TEST_CASE("canonical shift and the confluence maps are symplectic") {
    Sampler s(60);
    const MatrixPhasePoint pt{s.complex_matrix(2, 0.7), s.complex_matrix(2, 0.7), 0.2};
    const TangentPair u = s.tangent(2), w = s.tangent(2);
    CHECK(symplectic_defect(canonical_shift, pt, u, w) < 1e-9);
    const ConfluenceParams cp{0.3, 0.4, false};
    CHECK(symplectic_defect([&](const MatrixPhasePoint& x) { return conf_map(x, cp).point; }, pt, u, w) < 1e-7);
    CHECK(symplectic_defect([&](const MatrixPhasePoint& x) { return conf_map_linear(x, cp).point; }, pt, u, w) < 1e-7);
    const MatrixPhasePoint back = canonical_unshift(canonical_shift(pt));
    CHECK(oracle::max_abs(back.p - pt.p) < 1e-14);
}

TEST_CASE("confluence images stay on the level set") {
    Sampler s(61);
    const ReducedPoint x = s.reduced_point(3, 1.0, Slice::Q_DIAG, 0.1);
    const MatrixPhasePoint pt = s.generic_level_set_point(x);
    for (const double eps : default_eps_sweep()) {
        const ConfluenceImage im = conf_map(pt, ConfluenceParams{eps, 0.3, false});
        CHECK(on_level_set(im.point, Coupling(1.0), 1.0).deviation < 1e-8);
    }
}

TEST_CASE("residual shrinks like eps^2, matrix and reduced levels") {
    Sampler s(62);
    for (const ConfluenceKind kind : {ConfluenceKind::Conf, ConfluenceKind::Conf1}) {
        CAPTURE(to_string(kind));
        const ReducedPoint x = s.reduced_point(2, 1.0, Slice::Q_DIAG, 0.2);
        const MatrixPhasePoint pt = s.generic_level_set_point(x);
        const Cplx theta(0.3, 0.1);
        double prev_m = 0.0, prev_r = 0.0;
        for (const double eps : {0.1, 0.05, 0.025}) {
            const ConfluenceParams cp{eps, theta, false};
            const double m = confluence_residual(pt, cp, kind);
            const double r = reduced_confluence_residual(x, cp, kind);
            if (prev_m > 0.0) {
                CHECK(prev_m / m > 3.5);
                CHECK(prev_m / m < 4.5);
                CHECK(prev_r / r > 3.5);
                CHECK(prev_r / r < 4.5);
            }
            prev_m = m;
            prev_r = r;
        }
    }
}

TEST_CASE("extended and double evaluations agree where double is accurate") {
    Sampler s(66);
    const MatrixPhasePoint pt = s.generic_level_set_point(s.reduced_point(2, 1.0, Slice::Q_DIAG, 0.2));
    for (const ConfluenceKind kind : {ConfluenceKind::Conf, ConfluenceKind::Conf1}) {
        const ConfluenceParams cp{0.2, 0.3, false};
        CHECK(std::abs(confluence_residual(pt, cp, kind) - confluence_residual_double(pt, cp, kind)) < 1e-6);
    }
}

TEST_CASE("reduced residual equals the matrix residual at the slice representative") {
    Sampler s(67);
    const ReducedPoint x = s.reduced_point(3, 1.0, Slice::Q_DIAG, 0.2);
    for (const ConfluenceKind kind : {ConfluenceKind::Conf, ConfluenceKind::Conf1})
        for (const double eps : default_eps_sweep()) {
            const ConfluenceParams cp{eps, Cplx(0.3, 0.1), false};
            const double a = confluence_residual(embed(x), cp, kind);
            CHECK(std::abs(a - reduced_confluence_residual(x, cp, kind)) < 1e-6 * std::max(1.0, a));
        }
}

TEST_CASE("the printed theta assignment does not converge") {
    Sampler s(63);
    const MatrixPhasePoint pt = embed(s.reduced_point(2, 1.0, Slice::Q_DIAG, 0.2));
    const double a = confluence_residual(pt, ConfluenceParams{0.1, 0.3, true}, ConfluenceKind::Conf);
    const double b = confluence_residual(pt, ConfluenceParams{0.05, 0.3, true}, ConfluenceKind::Conf);
    CHECK(b > a);
}

TEST_CASE("rescaled interaction tends to the P_II interaction") {
    Sampler s(64);
    const ReducedPoint x = s.reduced_point(3, 1.0, Slice::Q_DIAG);
    const double e1 = interaction_limit_error(x, 0.1);
    const double e2 = interaction_limit_error(x, 0.05);
    CHECK(e2 < e1);
    CHECK(interaction_limit_error(x, 0.0125) < 1e-2);
}

TEST_CASE("dual breakdown separates conf from conf1") {
    Sampler s(65);
    const ReducedPoint x = s.reduced_point(2, 1.0, Slice::P_DIAG, 0.2);
    const BreakdownReport a = dual_confluence_breakdown(x, ConfluenceParams{0.1, 0.3, false}, ConfluenceKind::Conf);
    const BreakdownReport b = dual_confluence_breakdown(x, ConfluenceParams{0.1, 0.3, false}, ConfluenceKind::Conf1);
    CHECK(a.particle_map_deviation > 1e-3);
    CHECK(a.eigenbasis_misalignment > 1e-3);
    CHECK(b.particle_map_deviation < 1e-8);
    CHECK(b.eigenbasis_misalignment < 1e-8);
    CHECK_THROWS_AS(dual_confluence_breakdown(s.reduced_point(2, 1.0, Slice::Q_DIAG), ConfluenceParams{},
                                              ConfluenceKind::Conf),
                    Error);
}

TEST_CASE("eps must be positive") {
    const MatrixPhasePoint pt{Mat::Identity(2, 2), Mat::Zero(2, 2), 0.0};
    CHECK_THROWS_AS(conf_map(pt, ConfluenceParams{0.0, 0.0, false}), Error);
    CHECK_THROWS_AS(conf_map(pt, ConfluenceParams{-0.1, 0.0, false}), Error);
}

}
