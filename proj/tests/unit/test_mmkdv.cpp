#include "oracles.hpp"

#include "painleve/mmkdv.hpp"
#include "painleve/sampling.hpp"

#include <doctest.h>

using namespace painleve;

TEST_SUITE("mmkdv") {

TEST_CASE("calibration is unique and annihilates the scalar residuals") {
    const Calibration cal = calibrate_conventions(1);
    CHECK(cal.travelling_solutions == 1);
    CHECK(cal.self_similar_solutions == 1);
    CHECK(cal.travelling_max_residual < 1e-12);
    CHECK(cal.self_similar_max_residual < 1e-12);
    CHECK(cal.travelling.s_comm == CommTerm::U_UXX);
}

TEST_CASE("calibration does not depend on the seed") {
    const Calibration a = calibrate_conventions(1), b = calibrate_conventions(99);
    CHECK(a.travelling.s_cubic == b.travelling.s_cubic);
    CHECK(a.travelling.s_z == b.travelling.s_z);
    CHECK(a.self_similar.s_cubic == b.self_similar.s_cubic);
    CHECK(a.self_similar.s_z == b.self_similar.s_z);
    CHECK(a.self_similar.s_linear == b.self_similar.s_linear);
}

TEST_CASE("mmkdv right-hand side on scalars") {
    // Commutators vanish; u_t = u_xxx + s_cubic 6 u^2 u_x.
    ConventionSwitch sw;
    sw.s_cubic = -1;
    const Mat u = Mat::Constant(1, 1, 2.0), ux = Mat::Constant(1, 1, 3.0), uxx = Mat::Constant(1, 1, 5.0),
              uxxx = Mat::Constant(1, 1, 7.0);
    CHECK(std::abs(mmkdv_rhs(u, ux, uxx, uxxx, sw)(0, 0) - Cplx(7.0 - 72.0)) < 1e-13);
}

TEST_CASE("wrong closure sign is detected") {
    const Calibration cal = calibrate_conventions(2);
    Sampler s(70);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const Mat v = Mat::Constant(1, 1, s.complex(1.0, 0.5));
        const Mat p = Mat::Constant(1, 1, s.complex(1.0, 0.5));
        worst = std::max(worst, tw_residual(v, p, 0.7, s.complex(1.0, 0.5), cal.travelling, -1));
    }
    CHECK(worst > 1e-3);
}

TEST_CASE("deformation check identifies omega with the self-similar variable") {
    const Calibration cal = calibrate_conventions(3);
    Sampler s(71);
    std::vector<ScalarSample> samples;
    for (int k = 0; k < 100; ++k) {
        ScalarSample x;
        x.v = Mat::Constant(1, 1, s.complex(1.0, 0.5));
        x.p = Mat::Constant(1, 1, s.complex(1.0, 0.5));
        x.z = s.uniform(-2.0, 2.0);
        x.theta = s.complex(1.0, 0.5);
        samples.push_back(x);
    }
    const DeformationReport r = deformation_check(cal, samples, 1e-10);
    CHECK(r.ok);
    CHECK(r.samples == 100);
    CHECK(r.max_deviation < 1e-10);
    CHECK(r.min_control_deviation > 1e-6);
    samples.front().v = Mat::Identity(2, 2);
    CHECK_THROWS_AS(deformation_check(cal, samples), Error);
}

TEST_CASE("matrix travelling-wave residual vanishes on commuting data") {
    const Calibration cal = calibrate_conventions(4);
    Sampler s(72);
    for (int k = 0; k < 10; ++k) {
        const Mat X = s.complex_matrix(2, 1.0);
        const Mat v = s.complex(1.0, 0.5) * Mat::Identity(2, 2) + X;
        const Mat p = s.complex(1.0, 0.5) * X * X - X;
        CHECK(tw_residual(v, p, 0.9, s.complex(1.0, 0.5), cal.travelling) < 1e-10);
    }
}

TEST_CASE("matrix travelling-wave residual is generically nonzero") {
    const Calibration cal = calibrate_conventions(5);
    Sampler s(73);
    const Mat v = s.complex_matrix(2, 1.0), p = s.complex_matrix(2, 1.0);
    CHECK(tw_residual(v, p, 0.9, 0.2, cal.travelling) > 1e-6);
}

}
