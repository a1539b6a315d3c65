#include "painleve/lax.hpp"

#include "painleve/dynamics.hpp"
#include "painleve/hamiltonians.hpp"
#include "painleve/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace painleve {

Mat BlockMat::dense() const {
    const Eigen::Index n = b11.rows();
    Mat d(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            d(2 * i, 2 * j) = b11(i, j);
            d(2 * i, 2 * j + 1) = b12(i, j);
            d(2 * i + 1, 2 * j) = b21(i, j);
            d(2 * i + 1, 2 * j + 1) = b22(i, j);
        }
    return d;
}

bool is_isospectral(const SystemSpec& spec) {
    return spec.autonomous || spec.kind == SystemKind::HarmOsc || spec.kind == SystemKind::Free;
}

namespace {

struct Pair {
    BlockMat A, B;
};

Pair p2_pair(const Mat& q, const Mat& p, double t, Cplx theta, Cplx lam) {
    const Eigen::Index n = q.rows();
    const Mat id = Mat::Identity(n, n);
    const Mat d = kI * (0.5 * lam * lam * id + q * q + 0.5 * t * id);
    Pair r;
    r.A = {d, lam * q - kI * p - (theta / lam) * id, lam * q + kI * p - (theta / lam) * id, -d};
    r.B = {0.5 * kI * lam * id, q, q, -0.5 * kI * lam * id};
    return r;
}

Pair build_pair(const SystemSpec& spec, const MatrixPhasePoint& pt, Cplx lam, LaxVariant variant) {
    const Mat& q = pt.q;
    const Mat& p = pt.p;
    const Eigen::Index n = pt.dim();
    const Mat id = Mat::Identity(n, n);
    const Mat zero = Mat::Zero(n, n);
    const double t = spec.time(pt.t);
    const auto& pr = spec.params;
    const bool needs_nonzero = spec.kind == SystemKind::P_II || spec.kind == SystemKind::P_II_poly ||
                               spec.kind == SystemKind::P_IV;
    if (needs_nonzero && std::abs(lam) == 0.0) throw Error(ErrorCode::PoleAtLambda, "lax pair has a pole at lambda = 0");

    switch (spec.kind) {
        case SystemKind::Free: return {{p, zero, zero, -p}, {zero, zero, zero, zero}};
        case SystemKind::HarmOsc: {
            const double w = pr.omega;
            return {{p, w * q, w * q, -p}, {zero, -0.5 * w * id, 0.5 * w * id, zero}};
        }
        case SystemKind::P_I:
            return {{p, lam * id - q, lam * lam * id + lam * q + q * q + 0.5 * t * id, -p},
                    {zero, 0.5 * id, 0.5 * lam * id + q, zero}};
        case SystemKind::P_II: return p2_pair(q, p, t, pr.theta, lam);
        case SystemKind::P_II_poly: {
            // P = p - q^2 - t/2 turns the flow into P_II in (q, P), with theta shifted by the t-dependence.
            const Mat P = p - q * q - 0.5 * t * id;
            const Cplx th = spec.autonomous ? pr.theta : pr.theta - 0.5;
            return p2_pair(q, P, t, th, lam);
        }
        case SystemKind::P_IV: {
            const Mat qp = q * p;
            const Mat pq = p * q;
            const Cplx s01 = pr.theta0 + pr.theta1;
            Pair r;
            const Mat a11 = (variant == LaxVariant::Corrected ? -1.0 : 1.0) * pq / lam;
            r.A = {a11, qp + s01 * id - (p * q * p + pr.theta0 * p) / lam, id + q / lam,
                   (t - lam) * id + (qp + pr.theta0 * id) / lam};
            if (variant == LaxVariant::Corrected)
                r.B = {zero, -(qp + s01 * id), -id, (lam - t) * id - q};
            else
                r.B = {0.5 * kI * lam * id, q, q, -0.5 * kI * lam * id};
            return r;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "lax_pair: unknown kind");
}

}  // namespace

LaxSample lax_pair(const SystemSpec& spec, const MatrixPhasePoint& pt, Cplx lambda, LaxVariant variant) {
    pt.validate();
    const Pair pr = build_pair(spec, pt, lambda, variant);
    return {lambda, pr.A.dense(), pr.B.dense()};
}

LaxSample reduced_lax(const SystemSpec& spec, const ReducedPoint& x, Cplx lambda, LaxVariant variant) {
    return lax_pair(spec, embed(x), lambda, variant);
}

Mat gauge_F(const SystemSpec& spec, const ReducedPoint& x) {
    const MatrixPhasePoint pt = embed(x);
    const Eigen::Index n = x.dim();
    const TangentPair v = matrix_vector_field(spec, pt);
    const Mat& rhs = x.slice == Slice::Q_DIAG ? v.dq : v.dp;
    const Mat D = x.positions.asDiagonal();
    const Mat c = commutator(rhs, D);
    Mat F = Mat::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j) {
                const Cplx d = x.positions(i) - x.positions(j);
                F(i, j) = c(i, j) / (d * d);
            }
    const Cplx off_total = F.sum();
    for (Eigen::Index j = 0; j < n; ++j) F(j, j) = -F.row(j).sum() + off_total / static_cast<double>(n);
    return F;
}

Mat reduced_M(const SystemSpec& spec, const ReducedPoint& x, Cplx lambda, LaxVariant variant) {
    const Mat F = gauge_F(spec, x);
    Mat M = *reduced_lax(spec, x, lambda, variant).M;
    const Mat zero = Mat::Zero(F.rows(), F.cols());
    M -= BlockMat{F, zero, zero, F}.dense();
    return M;
}

namespace {

template <class Fn>
Mat richardson_derivative(Fn&& f, double h) {
    const Mat d1 = (f(h) - f(-h)) / (2.0 * h);
    const Mat d2 = (f(0.5 * h) - f(-0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

double zero_curvature_residual(const SystemSpec& spec, const MatrixPhasePoint& pt, Cplx lambda, double h,
                               ZeroCurvatureOptions opt) {
    if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "zero_curvature_residual: h must be positive");
    const Eigen::Index n = pt.dim();
    auto field = [&](const MatrixPhasePoint& s) {
        TangentPair v = matrix_vector_field(spec, s);
        if (opt.eom_perturbation != 0.0) v.dp += opt.eom_perturbation * Mat::Identity(n, n);
        return v;
    };
    auto A_at = [&](double dt) {
        const MatrixPhasePoint s = dt == 0.0 ? pt : rk4_advance(pt, dt, opt.substeps, field);
        return lax_pair(spec, s, lambda, opt.variant).L;
    };
    const LaxSample base = lax_pair(spec, pt, lambda, opt.variant);
    const Mat At = richardson_derivative(A_at, h);
    Mat R = At + commutator(base.L, *base.M);
    if (!is_isospectral(spec)) {
        auto B_at = [&](double dl) { return *lax_pair(spec, pt, lambda + dl, opt.variant).M; };
        R -= richardson_derivative(B_at, h);
    }
    return max_norm(R);
}

double reduced_zero_curvature_residual(const SystemSpec& spec, const ReducedPoint& x, Cplx lambda, double h,
                                       ZeroCurvatureOptions opt) {
    if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "reduced_zero_curvature_residual: h must be positive");
    auto field = [&](const ReducedPoint& s) {
        ReducedVelocity v = reduced_vector_field(spec, s);
        // p' + eps Id lands on y on Q_DIAG and on the eigenvalues I on P_DIAG.
        if (opt.eom_perturbation != 0.0)
            (s.slice == Slice::Q_DIAG ? v.momenta : v.positions).array() += opt.eom_perturbation;
        return v;
    };
    auto L_at = [&](double dt) {
        const ReducedPoint s = dt == 0.0 ? x : rk4_advance(x, dt, opt.substeps, field);
        return reduced_lax(spec, s, lambda, opt.variant).L;
    };
    const Mat L0 = reduced_lax(spec, x, lambda, opt.variant).L;
    const Mat M0 = reduced_M(spec, x, lambda, opt.variant);
    Mat R = richardson_derivative(L_at, h) + commutator(L0, M0);
    if (!is_isospectral(spec)) {
        auto M_at = [&](double dl) { return reduced_M(spec, x, lambda + dl, opt.variant); };
        R -= richardson_derivative(M_at, h);
    }
    return max_norm(R);
}

Vec eigenvalues(const Mat& L) {
    Eigen::ComplexEigenSolver<Mat> es(L, false);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::NonConvergedEigensolve, "char_poly: eigensolve failed");
    return es.eigenvalues();
}

Vec char_poly(const Mat& L) {
    if (L.rows() != L.cols()) throw Error(ErrorCode::DimensionMismatch, "char_poly: square matrix required");
    return poly_from_roots(eigenvalues(L));
}

Vec char_poly_faddeev_leverrier(const Mat& L) {
    if (L.rows() != L.cols()) throw Error(ErrorCode::DimensionMismatch, "char_poly: square matrix required");
    return char_poly_faddeev(L);
}

double coeff_deviation(const Vec& a, const Vec& b, double rho) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "coeff_deviation: lengths differ");
    double dev = 0.0;
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        const double scale = std::max({std::abs(a(k)), std::abs(b(k)), std::pow(rho, static_cast<double>(k))});
        dev = std::max(dev, std::abs(a(k) - b(k)) / scale);
    }
    return dev;
}

namespace {

Mat build_L(const SystemSpec& spec, const LaxSource& src, Cplx lambda, LaxVariant variant) {
    if (const auto* pt = std::get_if<MatrixPhasePoint>(&src)) return lax_pair(spec, *pt, lambda, variant).L;
    return reduced_lax(spec, std::get<ReducedPoint>(src), lambda, variant).L;
}

}  // namespace

SpectralSample spectral_sample(const SystemSpec& spec, const LaxSource& src, Cplx lambda, LaxVariant variant) {
    return {lambda, char_poly(build_L(spec, src, lambda, variant))};
}

SpectralMatch spectral_match(const SystemSpec& spec, const LaxSource& a, const LaxSource& b,
                             const std::vector<Cplx>& grid, double tol, LaxVariant variant) {
    double worst = 0.0;
    for (const Cplx lam : grid) {
        const Vec ea = eigenvalues(build_L(spec, a, lam, variant));
        const Vec eb = eigenvalues(build_L(spec, b, lam, variant));
        if (ea.size() != eb.size()) throw Error(ErrorCode::DimensionMismatch, "spectral_match: sizes differ");
        const double rho = std::max({1.0, ea.cwiseAbs().maxCoeff(), eb.cwiseAbs().maxCoeff()});
        worst = std::max(worst, coeff_deviation(poly_from_roots(ea), poly_from_roots(eb), rho));
    }
    return {worst < tol, worst};
}

std::vector<Cplx> default_lambda_grid() {
    std::vector<Cplx> g;
    const double two_pi = 2.0 * std::numbers::pi;
    for (int k = 0; k < 10; ++k) g.push_back(std::polar(0.5, two_pi * (k + 0.3) / 10.0));
    for (int k = 0; k < 10; ++k) g.push_back(std::polar(2.0, two_pi * (k + 0.7) / 10.0));
    return g;
}

std::vector<Cplx> laurent_coefficients(const std::vector<Cplx>& samples, double r, int min_power) {
    const int m = static_cast<int>(samples.size());
    std::vector<Cplx> c(static_cast<std::size_t>(m));
    const double two_pi = 2.0 * std::numbers::pi;
    for (int j = 0; j < m; ++j) {
        const int power = min_power + j;
        Cplx s = 0.0;
        for (int k = 0; k < m; ++k) s += samples[static_cast<std::size_t>(k)] * std::polar(1.0, -two_pi * power * k / m);
        c[static_cast<std::size_t>(j)] = s / (static_cast<double>(m) * std::pow(r, power));
    }
    return c;
}

}  // namespace painleve
