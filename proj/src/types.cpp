#include "painleve/types.hpp"

#include "painleve/linalg.hpp"

#include <cmath>

namespace painleve {

const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
        case ErrorCode::ZeroColumnSum: return "ZeroColumnSum";
        case ErrorCode::NonConvergedEigensolve: return "NonConvergedEigensolve";
        case ErrorCode::NotOnLevelSet: return "NotOnLevelSet";
        case ErrorCode::OffDiagonalMismatch: return "OffDiagonalMismatch";
        case ErrorCode::ParticleCollision: return "ParticleCollision";
        case ErrorCode::PoleAtLambda: return "PoleAtLambda";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::NonScalarInput: return "NonScalarInput";
        case ErrorCode::ConfigParse: return "ConfigParse";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

const char* to_string(SystemKind k) {
    switch (k) {
        case SystemKind::P_I: return "P_I";
        case SystemKind::P_II: return "P_II";
        case SystemKind::P_II_poly: return "P_II_poly";
        case SystemKind::P_IV: return "P_IV";
        case SystemKind::HarmOsc: return "HarmOsc";
        case SystemKind::Free: return "Free";
    }
    return "Unknown";
}

SystemKind system_kind_from_string(const std::string& s) {
    for (auto k : {SystemKind::P_I, SystemKind::P_II, SystemKind::P_II_poly, SystemKind::P_IV,
                   SystemKind::HarmOsc, SystemKind::Free}) {
        if (s == to_string(k)) return k;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown system kind '" + s + "'");
}

void MatrixPhasePoint::validate() const {
    if (q.rows() != q.cols() || p.rows() != p.cols() || q.rows() != p.rows() || q.rows() < 1)
        throw Error(ErrorCode::DimensionMismatch, "q and p must be square of equal size n >= 1");
    if (!q.allFinite() || !p.allFinite() || !std::isfinite(t))
        throw Error(ErrorCode::InvalidArgument, "non-finite entry in phase point");
}

static bool finite(Cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void SystemSpec::validate() const {
    const auto& pr = params;
    if (autonomous && !pr.tau) throw Error(ErrorCode::InvalidArgument, "autonomous spec requires tau");
    if (autonomous && !std::isfinite(*pr.tau)) throw Error(ErrorCode::InvalidArgument, "tau must be finite");
    switch (kind) {
        case SystemKind::P_II:
        case SystemKind::P_II_poly:
            if (!finite(pr.theta)) throw Error(ErrorCode::InvalidArgument, "theta must be finite");
            break;
        case SystemKind::P_IV:
            if (!finite(pr.theta0) || !finite(pr.theta1))
                throw Error(ErrorCode::InvalidArgument, "theta0/theta1 must be finite");
            break;
        case SystemKind::HarmOsc:
            if (!std::isfinite(pr.omega)) throw Error(ErrorCode::InvalidArgument, "omega must be finite");
            break;
        default: break;
    }
}

Coupling::Coupling(double g) : g_(g) {
    if (!(g > 0.0) || !std::isfinite(g)) throw Error(ErrorCode::InvalidArgument, "coupling g must be finite and > 0");
}

Mat moment_map(const MatrixPhasePoint& pt) {
    if (pt.q.rows() != pt.p.rows() || pt.q.cols() != pt.p.cols() || pt.q.rows() != pt.q.cols())
        throw Error(ErrorCode::DimensionMismatch, "moment_map: q and p differ in shape");
    return commutator(pt.p, pt.q);
}

Mat level_set_target(Eigen::Index n, Coupling g) {
    Mat m = Mat::Constant(n, n, -kI * g.value());
    m.diagonal().setZero();
    return m;
}

LevelSetCheck on_level_set(const MatrixPhasePoint& pt, Coupling g, double tol) {
    const double dev = max_norm(moment_map(pt) - level_set_target(pt.dim(), g));
    return {dev < tol, dev};
}

Cplx symplectic_pairing(const TangentPair& u, const TangentPair& w) {
    const auto n = u.dq.rows();
    if (u.dp.rows() != n || w.dq.rows() != n || w.dp.rows() != n || u.dq.cols() != n || w.dq.cols() != n ||
        u.dp.cols() != n || w.dp.cols() != n)
        throw Error(ErrorCode::DimensionMismatch, "symplectic_pairing: tangent shapes differ");
    return (u.dp * w.dq).trace() - (w.dp * u.dq).trace();
}

}  // namespace painleve
