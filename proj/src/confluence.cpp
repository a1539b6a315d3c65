#include "painleve/confluence.hpp"

#include "painleve/hamiltonians.hpp"
#include "painleve/linalg.hpp"

#include <cmath>

namespace painleve {

const char* to_string(ConfluenceKind k) { return k == ConfluenceKind::Conf ? "conf" : "conf1"; }

SystemSpec ConfluenceImage::spec() const {
    SystemSpec s;
    s.kind = SystemKind::P_IV;
    s.params.theta0 = theta0;
    s.params.theta1 = theta1;
    return s;
}

namespace {

void check_eps(const ConfluenceParams& cp) {
    if (!(cp.eps > 0.0) || !std::isfinite(cp.eps)) throw Error(ErrorCode::InvalidArgument, "confluence: eps must be > 0");
}

ConfluenceImage map_linear_core(const Mat& q, const Mat& ptilde, double t, const ConfluenceParams& cp) {
    check_eps(cp);
    const double e = cp.eps;
    const double e2 = e * e;
    const double e6 = e2 * e2 * e2;
    const Eigen::Index n = q.rows();
    ConfluenceImage im;
    im.point.q = -(0.5 * Mat::Identity(n, n) + e2 * q) / (e2 * e);
    im.point.p = -e * ptilde;
    im.point.t = (1.0 - e2 * e2 * t) / (e2 * e);
    im.theta0 = -1.0 / (4.0 * e6);
    im.theta1 = cp.printed_assignment ? -cp.theta : cp.theta + 1.0 / (4.0 * e6);
    return im;
}

SystemSpec target_spec(const ConfluenceParams& cp, ConfluenceKind kind) {
    SystemSpec s;
    s.kind = kind == ConfluenceKind::Conf ? SystemKind::P_II : SystemKind::P_II_poly;
    s.params.theta = cp.theta;
    return s;
}

Cplx shift_constant(const ConfluenceParams& cp, Eigen::Index n) {
    return static_cast<double>(n) * cp.theta / (2.0 * cp.eps * cp.eps);
}

// Residuals are evaluated in long double. The image energy carries terms of order eps^-8 that cancel
// against the shift, which leaves double precision with about 1e-3 absolute accuracy at eps = 0.025.
using CL = std::complex<long double>;
using MatL = Eigen::Matrix<CL, Eigen::Dynamic, Eigen::Dynamic>;
using VecL = Eigen::Matrix<CL, Eigen::Dynamic, 1>;

CL widen(Cplx z) { return {z.real(), z.imag()}; }
MatL widen(const Mat& m) { return m.unaryExpr([](Cplx z) { return widen(z); }); }
VecL widen(const Vec& v) { return v.unaryExpr([](Cplx z) { return widen(z); }); }

struct ExtendedImage {
    MatL q, p;
    long double t;
    CL theta0, theta1;
};

ExtendedImage extended_image(const MatL& q, const MatL& ptilde, long double t, const ConfluenceParams& cp) {
    const long double e = cp.eps;
    const long double e2 = e * e;
    const long double e6 = e2 * e2 * e2;
    const Eigen::Index n = q.rows();
    ExtendedImage im;
    im.q = -(MatL::Identity(n, n) * CL(0.5L) + q * CL(e2)) / CL(e2 * e);
    im.p = ptilde * CL(-e);
    im.t = (1.0L - e2 * e2 * t) / (e2 * e);
    im.theta0 = CL(-1.0L / (4.0L * e6));
    im.theta1 = cp.printed_assignment ? -widen(cp.theta) : widen(cp.theta) + CL(1.0L / (4.0L * e6));
    return im;
}

CL target_energy(const MatL& q, const MatL& p, long double t, CL theta, ConfluenceKind kind) {
    const Eigen::Index n = q.rows();
    const MatL id = MatL::Identity(n, n);
    if (kind == ConfluenceKind::Conf) {
        const MatL s = q * q + id * CL(0.5L * t);
        return (p * p * CL(0.5L) - s * s * CL(0.5L)).trace() - theta * q.trace();
    }
    return (p * (p - q * q * CL(2.0L) - id * CL(t)) * CL(0.5L)).trace() - theta * q.trace();
}

CL p4_energy(const ExtendedImage& im) {
    const Eigen::Index n = im.q.rows();
    const MatL id = MatL::Identity(n, n);
    return (im.p * im.q * (im.p - im.q - id * CL(im.t))).trace() + im.theta0 * im.p.trace() -
           (im.theta0 + im.theta1) * im.q.trace();
}

double extended_residual(CL h_target, CL h4, const ConfluenceParams& cp, Eigen::Index n) {
    const long double e = cp.eps;
    const CL shift = CL(static_cast<long double>(n)) * widen(cp.theta) / CL(2.0L * e * e);
    return static_cast<double>(std::abs(h_target - (CL(-e) * h4 + shift)));
}

}  // namespace

MatrixPhasePoint canonical_shift(const MatrixPhasePoint& pt) {
    pt.validate();
    const Eigen::Index n = pt.dim();
    return {pt.q, pt.p + pt.q * pt.q + 0.5 * pt.t * Mat::Identity(n, n), pt.t};
}

MatrixPhasePoint canonical_unshift(const MatrixPhasePoint& pt) {
    pt.validate();
    const Eigen::Index n = pt.dim();
    return {pt.q, pt.p - pt.q * pt.q - 0.5 * pt.t * Mat::Identity(n, n), pt.t};
}

ConfluenceImage conf_map(const MatrixPhasePoint& pt, const ConfluenceParams& cp) {
    const MatrixPhasePoint s = canonical_shift(pt);
    return map_linear_core(s.q, s.p, s.t, cp);
}

ConfluenceImage conf_map_linear(const MatrixPhasePoint& pt, const ConfluenceParams& cp) {
    pt.validate();
    return map_linear_core(pt.q, pt.p, pt.t, cp);
}

double confluence_residual(const MatrixPhasePoint& pt, const ConfluenceParams& cp, ConfluenceKind kind) {
    pt.validate();
    check_eps(cp);
    const Eigen::Index n = pt.dim();
    const MatL q = widen(pt.q);
    const MatL p = widen(pt.p);
    const long double t = pt.t;
    const MatL ptilde = kind == ConfluenceKind::Conf ? MatL(p + q * q + MatL::Identity(n, n) * CL(0.5L * t)) : p;
    const ExtendedImage im = extended_image(q, ptilde, t, cp);
    return extended_residual(target_energy(q, p, t, widen(cp.theta), kind), p4_energy(im), cp, n);
}

double confluence_residual_double(const MatrixPhasePoint& pt, const ConfluenceParams& cp, ConfluenceKind kind) {
    const ConfluenceImage im = kind == ConfluenceKind::Conf ? conf_map(pt, cp) : conf_map_linear(pt, cp);
    const Cplx h_target = matrix_hamiltonian(target_spec(cp, kind), pt);
    const Cplx h4 = matrix_hamiltonian(im.spec(), im.point);
    return std::abs(h_target - (-cp.eps * h4 + shift_constant(cp, pt.dim())));
}

double reduced_confluence_residual(const ReducedPoint& x, const ConfluenceParams& cp, ConfluenceKind kind) {
    if (x.slice != Slice::Q_DIAG) throw Error(ErrorCode::InvalidArgument, "reduced confluence runs on Q_DIAG");
    check_eps(cp);
    require_distinct(x.positions, "reduced_confluence_residual");
    const Eigen::Index n = x.dim();
    const VecL q = widen(x.positions);
    const VecL y = widen(x.momenta);
    const long double t = x.t;
    const long double g2 = x.g.value() * x.g.value();
    const CL theta = widen(cp.theta);
    const VecL ytilde = kind == ConfluenceKind::Conf ? VecL(y + q.cwiseProduct(q) + VecL::Constant(n, CL(0.5L * t))) : y;

    // The particle map is the matrix map restricted to diagonal q and p-tilde.
    const ExtendedImage im = extended_image(MatL(q.asDiagonal()), MatL(ytilde.asDiagonal()), t, cp);
    const VecL q4 = im.q.diagonal();
    const VecL y4 = im.p.diagonal();

    CL h_target = 0.0L, h4 = 0.0L;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (kind == ConfluenceKind::Conf) {
            const CL s = q(i) * q(i) + CL(0.5L * t);
            h_target += CL(0.5L) * y(i) * y(i) - CL(0.5L) * s * s - theta * q(i);
        } else {
            h_target += CL(0.5L) * y(i) * y(i) - y(i) * q(i) * q(i) - CL(0.5L * t) * y(i) - theta * q(i);
        }
        h4 += q4(i) * y4(i) * y4(i) - y4(i) * q4(i) * q4(i) - CL(im.t) * q4(i) * y4(i) + im.theta0 * y4(i) -
              (im.theta0 + im.theta1) * q4(i);
    }
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const CL d = q(i) - q(j);
            const CL d4 = q4(i) - q4(j);
            h_target += CL(g2) / (d * d);
            h4 += CL(g2) * (q4(i) + q4(j)) / (d4 * d4);
        }
    return extended_residual(h_target, h4, cp, n);
}

double interaction_limit_error(const ReducedPoint& x, double eps) {
    const Eigen::Index n = x.dim();
    const double g2 = x.g.value() * x.g.value();
    const Vec& q = x.positions;
    const Vec q4 = -(Vec::Constant(n, 0.5) + eps * eps * q) / (eps * eps * eps);
    Cplx lhs = 0.0, rhs = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const Cplx d4 = q4(i) - q4(j);
            const Cplx d = q(i) - q(j);
            lhs += -eps * g2 * (q4(i) + q4(j)) / (d4 * d4);
            rhs += g2 / (d * d);
        }
    return std::abs(lhs - rhs) / std::max(1e-300, std::abs(rhs));
}

BreakdownReport dual_confluence_breakdown(const ReducedPoint& x, const ConfluenceParams& cp, ConfluenceKind kind) {
    if (x.slice != Slice::P_DIAG) throw Error(ErrorCode::InvalidArgument, "dual confluence breakdown needs a P_DIAG point");
    const MatrixPhasePoint pt = embed(x);
    const ConfluenceImage im = kind == ConfluenceKind::Conf ? conf_map(pt, cp) : conf_map_linear(pt, cp);

    BreakdownReport r{kind, cp.eps, 0.0, 0.0, {}, {}};
    r.reduced_image = reduce(im.point, Slice::P_DIAG, x.g, 1e-7);

    // Particle-wise map on (I, phi): I plays p, phi plays q.
    const double e = cp.eps;
    const Eigen::Index n = x.dim();
    r.particle_image = x;
    r.particle_image.t = im.point.t;
    const Vec& I = x.positions;
    const Vec& f = x.momenta;
    const Vec ptilde = kind == ConfluenceKind::Conf ? Vec(I + f.cwiseProduct(f) + Vec::Constant(n, 0.5 * x.t)) : I;
    r.particle_image.positions = -e * ptilde;
    r.particle_image.momenta = -(Vec::Constant(n, 0.5) + e * e * f) / (e * e * e);

    r.particle_map_deviation = permuted_deviation(r.reduced_image, r.particle_image);
    // p of the source is diagonal, so its eigenbasis is the identity.
    r.eigenbasis_misalignment = max_norm(off_diagonal(im.point.p)) / std::max(1e-300, max_norm(im.point.p));
    return r;
}

TangentPair pushforward(const PhaseMap& f, const MatrixPhasePoint& pt, const TangentPair& u, double step) {
    auto at = [&](double s) { return f({pt.q + s * u.dq, pt.p + s * u.dp, pt.t}); };
    auto diff = [&](double s) {
        const MatrixPhasePoint a = at(s), b = at(-s);
        return TangentPair{(a.q - b.q) / (2.0 * s), (a.p - b.p) / (2.0 * s)};
    };
    const TangentPair d1 = diff(step), d2 = diff(0.5 * step);
    return {(4.0 * d2.dq - d1.dq) / 3.0, (4.0 * d2.dp - d1.dp) / 3.0};
}

double symplectic_defect(const PhaseMap& f, const MatrixPhasePoint& pt, const TangentPair& u, const TangentPair& w,
                         double step) {
    const TangentPair ju = pushforward(f, pt, u, step);
    const TangentPair jw = pushforward(f, pt, w, step);
    return std::abs(symplectic_pairing(ju, jw) - symplectic_pairing(u, w));
}

std::vector<double> default_eps_sweep() { return {0.1, 0.05, 0.025, 0.0125}; }

}  // namespace painleve
