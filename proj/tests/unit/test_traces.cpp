#include "oracles.hpp"

#include "painleve/sampling.hpp"
#include "painleve/traces.hpp"

#include <doctest.h>

using namespace painleve;

namespace {

CalogeroMatrixSpec worked() {
    CalogeroMatrixSpec s;
    s.diag = Vec(2);
    s.diag << 1.0, 2.0;
    s.denom = Vec(2);
    s.denom << 1.0, 0.0;
    s.g = 1.0;
    return s;
}

Cplx direct_power_trace(const Mat& q, int l) {
    Mat r = Mat::Identity(q.rows(), q.cols());
    for (int k = 0; k < l; ++k) r = oracle::multiply(r, q);
    return r.trace();
}

}  // namespace

TEST_SUITE("traces") {

TEST_CASE("assemble builds [[1, i], [-i, 2]] for the worked input") {
    const Mat q = assemble(worked());
    CHECK(q(0, 0) == Cplx(1.0));
    CHECK(q(1, 1) == Cplx(2.0));
    CHECK(q(0, 1) == kI);
    CHECK(q(1, 0) == -kI);
}

TEST_CASE("worked n = 2 values reproduce exactly") {
    CHECK(tr_q3_closed(worked()) == Cplx(18.0));
    CHECK(trace_power_oracle(worked(), 3) == Cplx(18.0));
    CHECK(tr_q4_closed(worked()) == Cplx(47.0));
    CHECK(trace_power_oracle(worked(), 4) == Cplx(47.0));
    CalogeroMatrixSpec zero = worked();
    zero.diag.setZero();
    CHECK(std::abs(trace_power_oracle(zero, 3)) < 1e-15);
}

TEST_CASE("trace oracle matches a triple-loop power") {
    Sampler s(30);
    for (int n = 1; n <= 6; ++n) {
        const CalogeroMatrixSpec cs{s.complex_vector(n, 1.0, 0.5), s.separated(n, 0.3), 1.3};
        for (int l = 1; l <= 6; ++l)
            CHECK(oracle::rel(trace_power_oracle(cs, l), direct_power_trace(assemble(cs), l)) < 1e-11);
    }
}

TEST_CASE("closed forms match brute force up to n = 8") {
    Sampler s(31);
    for (int n = 1; n <= 8; ++n)
        for (int k = 0; k < 10; ++k) {
            const CalogeroMatrixSpec cs{s.complex_vector(n, 1.0, 0.5), s.separated(n, 0.3), s.uniform(0.5, 2.0)};
            CHECK(oracle::rel(tr_q3_closed(cs), trace_power_oracle(cs, 3)) < 1e-10);
            CHECK(oracle::rel(tr_q4_closed(cs), trace_power_oracle(cs, 4)) < 1e-10);
        }
}

TEST_CASE("the three 4-cycles of Tr A^4 cancel") {
    Sampler s(32);
    for (int n = 4; n <= 8; ++n) {
        const Vec x = s.separated(n, 0.3);
        const TraceA4Parts parts = trace_a4_parts(x);
        CHECK(std::abs(parts.quadruples) < 1e-10 * std::max(1.0, std::abs(parts.total())));
        Mat a = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) a(i, j) = kI / (x(i) - x(j));
        CHECK(oracle::rel(parts.total(), direct_power_trace(a, 4)) < 1e-10);
    }
}

TEST_CASE("Tr Q^l is even in g") {
    Sampler s(33);
    for (int l = 1; l <= 12; ++l) {
        CAPTURE(l);
        const CalogeroMatrixSpec cs{s.complex_vector(4, 1.0, 0.5), s.separated(4, 0.3), 1.0};
        const EvennessReport e = evenness_check(cs, l, {0.5, 1.0, 2.0});
        CHECK(e.ok);
        CHECK(e.max_pair_deviation < 1e-11);
        CHECK(e.odd_to_even_ratio < 1e-11);
        CHECK(e.coefficients.size() == static_cast<std::size_t>(l + 1));
    }
}

TEST_CASE("evenness fit recovers the g^2 coefficient of Tr Q^2") {
    // Tr Q^2 = sum q_i^2 + 2 g^2 sum_{i<j} 1/(p_i - p_j)^2.
    const CalogeroMatrixSpec cs = worked();
    const EvennessReport e = evenness_check(cs, 2, {1.0});
    CHECK(std::abs(e.coefficients[0] - Cplx(5.0)) < 1e-12);
    CHECK(std::abs(e.coefficients[2] - Cplx(2.0)) < 1e-12);
}

TEST_CASE("coincident denominators are rejected") {
    CalogeroMatrixSpec cs = worked();
    cs.denom(1) = cs.denom(0);
    CHECK_THROWS_AS(tr_q3_closed(cs), Error);
}

}
