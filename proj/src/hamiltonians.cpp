#include "painleve/hamiltonians.hpp"

#include "painleve/linalg.hpp"
#include "painleve/traces.hpp"

#include <cmath>

namespace painleve {

namespace {

void check_shape(const MatrixPhasePoint& pt) {
    if (pt.q.rows() != pt.q.cols() || pt.p.rows() != pt.p.cols() || pt.q.rows() != pt.p.rows())
        throw Error(ErrorCode::DimensionMismatch, "phase point: q and p differ in shape");
}

void check_reduced(const ReducedPoint& x) {
    if (x.dim() < 1 || x.momenta.size() != x.dim())
        throw Error(ErrorCode::DimensionMismatch, "reduced point: positions/momenta size");
    require_distinct(x.positions, "reduced point");
}

// sum over i<j of f(i, j)
template <class F>
Cplx pair_sum(Eigen::Index n, F&& f) {
    Cplx s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) s += f(i, j);
    return s;
}

}  // namespace

Cplx matrix_hamiltonian(const SystemSpec& spec, const MatrixPhasePoint& pt) {
    check_shape(pt);
    const Mat& q = pt.q;
    const Mat& p = pt.p;
    const Eigen::Index n = pt.dim();
    const Mat id = Mat::Identity(n, n);
    const double t = spec.time(pt.t);
    const auto& pr = spec.params;
    switch (spec.kind) {
        case SystemKind::Free: return 0.5 * (p * p).trace();
        case SystemKind::HarmOsc: return 0.5 * (p * p).trace() + 0.5 * pr.omega * pr.omega * (q * q).trace();
        case SystemKind::P_I: return (0.5 * p * p - 0.5 * q * q * q - 0.25 * t * q).trace();
        case SystemKind::P_II: {
            const Mat s = q * q + 0.5 * t * id;
            return (0.5 * p * p - 0.5 * s * s - pr.theta * q).trace();
        }
        case SystemKind::P_II_poly: return (0.5 * p * (p - 2.0 * q * q - t * id) - pr.theta * q).trace();
        case SystemKind::P_IV:
            return (p * q * (p - q - t * id) + pr.theta0 * p - (pr.theta0 + pr.theta1) * q).trace();
    }
    throw Error(ErrorCode::InvalidArgument, "matrix_hamiltonian: unknown kind");
}

TangentPair matrix_vector_field(const SystemSpec& spec, const MatrixPhasePoint& pt) {
    check_shape(pt);
    const Mat& q = pt.q;
    const Mat& p = pt.p;
    const Eigen::Index n = pt.dim();
    const Mat id = Mat::Identity(n, n);
    const double t = spec.time(pt.t);
    const auto& pr = spec.params;
    switch (spec.kind) {
        case SystemKind::Free: return {p, Mat::Zero(n, n)};
        case SystemKind::HarmOsc: return {p, -pr.omega * pr.omega * q};
        case SystemKind::P_I: return {p, 1.5 * q * q + 0.25 * t * id};
        case SystemKind::P_II: return {p, 2.0 * q * q * q + t * q + pr.theta * id};
        case SystemKind::P_II_poly: return {p - q * q - 0.5 * t * id, anticommutator(p, q) + pr.theta * id};
        case SystemKind::P_IV: {
            const Mat pq = anticommutator(p, q);
            return {pq - q * q - t * q + pr.theta0 * id, pq - p * p + t * p + (pr.theta0 + pr.theta1) * id};
        }
    }
    throw Error(ErrorCode::InvalidArgument, "matrix_vector_field: unknown kind");
}

Cplx reduced_hamiltonian(const SystemSpec& spec, const ReducedPoint& x) {
    check_reduced(x);
    return matrix_hamiltonian(spec, embed(x));
}

namespace {

// d/dI_m Tr A^4 with A_ij = i/(I_i - I_j).
Vec trace_a4_gradient(const Vec& I) {
    const Eigen::Index n = I.size();
    Mat A = Mat::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j) A(i, j) = kI / (I(i) - I(j));
    const Mat A3 = A * A * A;
    Vec gr = Vec::Zero(n);
    for (Eigen::Index m = 0; m < n; ++m) {
        Cplx s = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == m) continue;
            const Cplx d2 = (I(m) - I(j)) * (I(m) - I(j));
            s += A3(j, m) * (-kI / d2) + A3(m, j) * (kI / d2);
        }
        gr(m) = 4.0 * s;
    }
    return gr;
}

Cplx closed_q_slice(const SystemSpec& spec, const ReducedPoint& x) {
    const Vec& q = x.positions;
    const Vec& p = x.momenta;
    const Eigen::Index n = x.dim();
    const double g2 = x.g.value() * x.g.value();
    const double t = spec.time(x.t);
    const auto& pr = spec.params;
    auto inv_sq = [&](Eigen::Index i, Eigen::Index j) { return 1.0 / ((q(i) - q(j)) * (q(i) - q(j))); };
    const Cplx calogero = g2 * pair_sum(n, inv_sq);
    Cplx h = 0.0;
    switch (spec.kind) {
        case SystemKind::Free:
            for (Eigen::Index i = 0; i < n; ++i) h += 0.5 * p(i) * p(i);
            return h + calogero;
        case SystemKind::HarmOsc:
            for (Eigen::Index i = 0; i < n; ++i) h += 0.5 * p(i) * p(i) + 0.5 * pr.omega * pr.omega * q(i) * q(i);
            return h + calogero;
        case SystemKind::P_I:
            for (Eigen::Index i = 0; i < n; ++i) h += 0.5 * p(i) * p(i) - 0.5 * q(i) * q(i) * q(i) - 0.25 * t * q(i);
            return h + calogero;
        case SystemKind::P_II:
            for (Eigen::Index i = 0; i < n; ++i) {
                const Cplx s = q(i) * q(i) + 0.5 * t;
                h += 0.5 * p(i) * p(i) - 0.5 * s * s - pr.theta * q(i);
            }
            return h + calogero;
        case SystemKind::P_II_poly:
            for (Eigen::Index i = 0; i < n; ++i)
                h += 0.5 * p(i) * p(i) - p(i) * q(i) * q(i) - 0.5 * t * p(i) - pr.theta * q(i);
            return h + calogero;
        case SystemKind::P_IV:
            for (Eigen::Index i = 0; i < n; ++i)
                h += q(i) * p(i) * p(i) - p(i) * q(i) * q(i) - t * q(i) * p(i) + pr.theta0 * p(i) -
                     (pr.theta0 + pr.theta1) * q(i);
            return h + g2 * pair_sum(n, [&](auto i, auto j) { return (q(i) + q(j)) * inv_sq(i, j); });
    }
    throw Error(ErrorCode::InvalidArgument, "closed form: unknown kind");
}

Cplx closed_p_slice(const SystemSpec& spec, const ReducedPoint& x, ClosedFormOptions opt) {
    const Vec& I = x.positions;
    const Vec& f = x.momenta;
    const Eigen::Index n = x.dim();
    const double g = x.g.value();
    const double g2 = g * g;
    const double t = spec.time(x.t);
    const auto& pr = spec.params;
    auto inv_sq = [&](Eigen::Index i, Eigen::Index j) { return 1.0 / ((I(i) - I(j)) * (I(i) - I(j))); };
    Cplx h = 0.0;
    switch (spec.kind) {
        case SystemKind::Free:
            for (Eigen::Index i = 0; i < n; ++i) h += 0.5 * I(i) * I(i);
            return h;
        case SystemKind::HarmOsc: {
            const double w2 = pr.omega * pr.omega;
            for (Eigen::Index i = 0; i < n; ++i) h += 0.5 * I(i) * I(i) + 0.5 * w2 * f(i) * f(i);
            return h + w2 * g2 * pair_sum(n, inv_sq);
        }
        case SystemKind::P_I:
            for (Eigen::Index i = 0; i < n; ++i) h += 0.5 * I(i) * I(i) - 0.5 * f(i) * f(i) * f(i) - 0.25 * t * f(i);
            return h - 1.5 * g2 * pair_sum(n, [&](auto i, auto j) { return (f(i) + f(j)) * inv_sq(i, j); });
        case SystemKind::P_II: {
            for (Eigen::Index i = 0; i < n; ++i) {
                const Cplx f2 = f(i) * f(i);
                h += 0.5 * I(i) * I(i) - 0.5 * f2 * f2 - 0.5 * t * f2 - pr.theta * f(i);
            }
            h -= static_cast<double>(n) * t * t / 8.0;
            h -= 2.0 * g2 * pair_sum(n, [&](auto i, auto j) {
                return (f(i) * f(i) + f(i) * f(j) + f(j) * f(j) + 0.5 * t) * inv_sq(i, j);
            });
            const auto a4 = trace_a4_parts(I);
            const Cplx t4 = a4.pairs + a4.triples + (opt.include_quadruple ? a4.quadruples : Cplx(0.0));
            return h - 0.5 * g2 * g2 * t4;
        }
        case SystemKind::P_II_poly:
            for (Eigen::Index i = 0; i < n; ++i)
                h += 0.5 * I(i) * I(i) - I(i) * f(i) * f(i) - 0.5 * t * I(i) - pr.theta * f(i);
            return h - g2 * pair_sum(n, [&](auto i, auto j) { return (I(i) + I(j)) * inv_sq(i, j); });
        case SystemKind::P_IV:
            for (Eigen::Index i = 0; i < n; ++i)
                h += f(i) * I(i) * I(i) - I(i) * f(i) * f(i) - t * f(i) * I(i) + pr.theta0 * I(i) -
                     (pr.theta0 + pr.theta1) * f(i);
            return h - g2 * pair_sum(n, [&](auto i, auto j) { return (I(i) + I(j)) * inv_sq(i, j); });
    }
    throw Error(ErrorCode::InvalidArgument, "closed form: unknown kind");
}

}  // namespace

Cplx reduced_hamiltonian_closed(const SystemSpec& spec, const ReducedPoint& x, ClosedFormOptions opt) {
    check_reduced(x);
    return x.slice == Slice::Q_DIAG ? closed_q_slice(spec, x) : closed_p_slice(spec, x, opt);
}

ReducedVelocity reduced_vector_field(const SystemSpec& spec, const ReducedPoint& x) {
    check_reduced(x);
    const Vec& a = x.positions;
    const Vec& b = x.momenta;
    const Eigen::Index n = x.dim();
    const double g2 = x.g.value() * x.g.value();
    const double t = spec.time(x.t);
    const auto& pr = spec.params;
    const double w2 = pr.omega * pr.omega;
    ReducedVelocity v{Vec::Zero(n), Vec::Zero(n)};

    // Interaction sums over j != i.
    auto sum_j = [&](Eigen::Index i, auto&& f) {
        Cplx s = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) s += f(j, a(i) - a(j));
        return s;
    };
    auto d_inv_sq = [&](Eigen::Index i) {  // d/da_i sum_{k<l} 1/(a_k - a_l)^2
        return sum_j(i, [](Eigen::Index, Cplx d) { return -2.0 / (d * d * d); });
    };
    auto d_sum_over_sq = [&](Eigen::Index i) {  // d/da_i sum_{k<l} (a_k + a_l)/(a_k - a_l)^2
        return sum_j(i, [&](Eigen::Index j, Cplx d) { return 1.0 / (d * d) - 2.0 * (a(i) + a(j)) / (d * d * d); });
    };

    if (x.slice == Slice::Q_DIAG) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const Cplx q = a(i), p = b(i);
            Cplx dHdp = p, dHdq = 0.0;
            switch (spec.kind) {
                case SystemKind::Free: break;
                case SystemKind::HarmOsc: dHdq = w2 * q; break;
                case SystemKind::P_I: dHdq = -1.5 * q * q - 0.25 * t; break;
                case SystemKind::P_II: dHdq = -2.0 * q * (q * q + 0.5 * t) - pr.theta; break;
                case SystemKind::P_II_poly:
                    dHdp = p - q * q - 0.5 * t;
                    dHdq = -2.0 * q * p - pr.theta;
                    break;
                case SystemKind::P_IV:
                    dHdp = 2.0 * q * p - q * q - t * q + pr.theta0;
                    dHdq = p * p - 2.0 * q * p - t * p - (pr.theta0 + pr.theta1);
                    break;
            }
            dHdq += g2 * (spec.kind == SystemKind::P_IV ? d_sum_over_sq(i) : d_inv_sq(i));
            v.positions(i) = dHdp;
            v.momenta(i) = -dHdq;
        }
        return v;
    }

    // P_DIAG: positions I, momenta phi; I' = -dH/dphi, phi' = dH/dI.
    const Vec t4grad = spec.kind == SystemKind::P_II ? trace_a4_gradient(a) : Vec();
    for (Eigen::Index i = 0; i < n; ++i) {
        const Cplx I = a(i), f = b(i);
        Cplx dHdI = I, dHdf = 0.0;
        switch (spec.kind) {
            case SystemKind::Free: break;
            case SystemKind::HarmOsc:
                dHdf = w2 * f;
                dHdI += w2 * g2 * d_inv_sq(i);
                break;
            case SystemKind::P_I:
                dHdf = -1.5 * f * f - 0.25 * t - 1.5 * g2 * sum_j(i, [](Eigen::Index, Cplx d) { return 1.0 / (d * d); });
                dHdI += 3.0 * g2 * sum_j(i, [&](Eigen::Index j, Cplx d) { return (f + b(j)) / (d * d * d); });
                break;
            case SystemKind::P_II:
                dHdf = -2.0 * f * f * f - t * f - pr.theta -
                       2.0 * g2 * sum_j(i, [&](Eigen::Index j, Cplx d) { return (2.0 * f + b(j)) / (d * d); });
                dHdI += 4.0 * g2 * sum_j(i, [&](Eigen::Index j, Cplx d) {
                            return (f * f + f * b(j) + b(j) * b(j) + 0.5 * t) / (d * d * d);
                        }) -
                        0.5 * g2 * g2 * t4grad(i);
                break;
            case SystemKind::P_II_poly:
                dHdI = I - f * f - 0.5 * t - g2 * d_sum_over_sq(i);
                dHdf = -2.0 * I * f - pr.theta;
                break;
            case SystemKind::P_IV:
                dHdI = 2.0 * f * I - f * f - t * f + pr.theta0 - g2 * d_sum_over_sq(i);
                dHdf = I * I - 2.0 * I * f - t * I - (pr.theta0 + pr.theta1);
                break;
        }
        v.positions(i) = -dHdf;
        v.momenta(i) = dHdI;
    }
    return v;
}

P4Involution p4_involution(const ReducedPoint& x, Cplx theta0, Cplx theta1) {
    ReducedPoint y = x;
    y.positions = -x.positions;
    y.momenta = -x.momenta;
    y.slice = opposite(x.slice);
    return {std::move(y), theta0 + theta1, -theta1};
}

std::pair<Cplx, Cplx> p4_relabeling_as_printed(Cplx theta0, Cplx theta1) { return {theta1, theta0 - theta1}; }

ReducedPoint harmosc_selfduality(const ReducedPoint& x, double omega) {
    if (omega == 0.0 || !std::isfinite(omega))
        throw Error(ErrorCode::InvalidArgument, "harmosc_selfduality: omega must be finite and nonzero");
    ReducedPoint y = x;
    y.slice = opposite(x.slice);
    if (x.slice == Slice::Q_DIAG) {
        y.positions = omega * x.positions;
        y.momenta = -x.momenta / omega;
    } else {
        y.positions = -x.positions / omega;
        y.momenta = omega * x.momenta;
    }
    return y;
}

}  // namespace painleve
