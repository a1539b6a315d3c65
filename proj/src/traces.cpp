#include "painleve/traces.hpp"

#include "painleve/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace painleve {

TraceA4Parts trace_a4_parts(const Vec& I) {
    const Eigen::Index n = I.size();
    auto d = [&](Eigen::Index a, Eigen::Index b) { return I(a) - I(b); };
    auto sq = [](Cplx z) { return z * z; };
    TraceA4Parts r{0.0, 0.0, 0.0};
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = a + 1; b < n; ++b) {
            r.pairs += 2.0 / (sq(d(a, b)) * sq(d(a, b)));
            for (Eigen::Index c = b + 1; c < n; ++c) {
                r.triples += 4.0 * (1.0 / (sq(d(a, b)) * sq(d(a, c))) + 1.0 / (sq(d(b, a)) * sq(d(b, c))) +
                                    1.0 / (sq(d(c, a)) * sq(d(c, b))));
                for (Eigen::Index e = c + 1; e < n; ++e) {
                    r.quadruples += 8.0 * (1.0 / (d(a, b) * d(b, c) * d(c, e) * d(e, a)) +
                                           1.0 / (d(a, b) * d(b, e) * d(e, c) * d(c, a)) +
                                           1.0 / (d(a, c) * d(c, b) * d(b, e) * d(e, a)));
                }
            }
        }
    return r;
}

namespace {

Mat assemble_with(const CalogeroMatrixSpec& s, Cplx g) {
    const Eigen::Index n = s.diag.size();
    if (s.denom.size() != n || n < 1) throw Error(ErrorCode::DimensionMismatch, "assemble: diag/denom size");
    require_distinct(s.denom, "assemble");
    Mat Q(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) Q(i, j) = i == j ? s.diag(i) : kI * g / (s.denom(i) - s.denom(j));
    return Q;
}

Cplx trace_power(const Mat& Q, int l) {
    if (l < 1) throw Error(ErrorCode::InvalidArgument, "trace power needs l >= 1");
    Mat P = Q;
    for (int k = 1; k < l; ++k) P = (P * Q).eval();
    return P.trace();
}

}  // namespace

Mat assemble(const CalogeroMatrixSpec& s) { return assemble_with(s, s.g); }

Cplx trace_power_oracle(const CalogeroMatrixSpec& s, int l) { return trace_power(assemble(s), l); }

Cplx tr_q3_closed(const CalogeroMatrixSpec& s) {
    const Vec& q = s.diag;
    const Vec& d = s.denom;
    require_distinct(d, "tr_q3_closed");
    Cplx r = 0.0;
    for (Eigen::Index i = 0; i < q.size(); ++i) {
        r += q(i) * q(i) * q(i);
        for (Eigen::Index j = i + 1; j < q.size(); ++j) {
            const Cplx dd = d(i) - d(j);
            r += 3.0 * s.g * s.g * (q(i) + q(j)) / (dd * dd);
        }
    }
    return r;
}

TrQ4Parts tr_q4_parts(const CalogeroMatrixSpec& s) {
    const Vec& q = s.diag;
    const Vec& d = s.denom;
    require_distinct(d, "tr_q4_closed");
    const double g2 = s.g * s.g;
    TrQ4Parts r{0.0, 0.0, 0.0, 0.0, 0.0};
    Cplx d2a2 = 0.0, dada = 0.0;
    for (Eigen::Index i = 0; i < q.size(); ++i) {
        r.d4 += q(i) * q(i) * q(i) * q(i);
        for (Eigen::Index j = i + 1; j < q.size(); ++j) {
            const Cplx dd = d(i) - d(j);
            d2a2 += (q(i) * q(i) + q(j) * q(j)) / (dd * dd);
            dada += 2.0 * q(i) * q(j) / (dd * dd);
        }
    }
    r.g2_block = 2.0 * g2 * (2.0 * d2a2 + dada);
    const TraceA4Parts a4 = trace_a4_parts(d);
    r.a4_pairs = g2 * g2 * a4.pairs;
    r.a4_triples = g2 * g2 * a4.triples;
    r.a4_quadruples = g2 * g2 * a4.quadruples;
    return r;
}

Cplx tr_q4_closed(const CalogeroMatrixSpec& s) { return tr_q4_parts(s).total(); }

EvennessReport evenness_check(const CalogeroMatrixSpec& s, int l, const std::vector<double>& g_values, double radius) {
    if (l < 1 || l > 12) throw Error(ErrorCode::InvalidArgument, "evenness_check: 1 <= l <= 12");
    EvennessReport r;
    r.l = l;
    for (double g : g_values) {
        const Cplx plus = trace_power(assemble_with(s, g), l);
        const Cplx minus = trace_power(assemble_with(s, -g), l);
        r.max_pair_deviation = std::max(r.max_pair_deviation, std::abs(plus - minus) / std::max(1e-300, std::abs(plus)));
    }
    const int m = l + 1;
    std::vector<Cplx> samples(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
        samples[static_cast<std::size_t>(k)] =
            trace_power(assemble_with(s, std::polar(radius, 2.0 * std::numbers::pi * k / m)), l);
    r.coefficients.resize(static_cast<std::size_t>(m));
    double even = 0.0, odd = 0.0;
    for (int j = 0; j < m; ++j) {
        Cplx c = 0.0;
        for (int k = 0; k < m; ++k)
            c += samples[static_cast<std::size_t>(k)] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / m);
        c /= static_cast<double>(m) * std::pow(radius, j);
        r.coefficients[static_cast<std::size_t>(j)] = c;
        (j % 2 == 0 ? even : odd) = std::max(j % 2 == 0 ? even : odd, std::abs(c));
    }
    r.odd_to_even_ratio = odd / std::max(1e-300, even);
    r.ok = r.max_pair_deviation < 1e-11 && r.odd_to_even_ratio < 1e-9;
    return r;
}

}  // namespace painleve
