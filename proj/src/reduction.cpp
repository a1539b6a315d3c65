#include "painleve/reduction.hpp"

#include "painleve/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace painleve {

const char* to_string(Slice s) { return s == Slice::Q_DIAG ? "Q_DIAG" : "P_DIAG"; }

double collision_threshold(const Vec& positions) {
    const double m = positions.size() ? positions.cwiseAbs().maxCoeff() : 0.0;
    return 1e-9 * (1.0 + m);
}

double min_gap(const Vec& positions) {
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < positions.size(); ++i)
        for (Eigen::Index j = i + 1; j < positions.size(); ++j) gap = std::min(gap, std::abs(positions(i) - positions(j)));
    return gap;
}

void require_distinct(const Vec& positions, const char* where) {
    if (!positions.allFinite()) throw Error(ErrorCode::Overflow, std::string(where) + ": non-finite position");
    if (min_gap(positions) <= collision_threshold(positions))
        throw Error(ErrorCode::ParticleCollision, std::string(where) + ": positions closer than collision threshold");
}

Mat slice_kernel(const Vec& x, double g, Slice s) {
    const Eigen::Index n = x.size();
    const Cplx c = (s == Slice::Q_DIAG ? kI : -kI) * g;
    Mat k = Mat::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j) k(i, j) = c / (x(i) - x(j));
    return k;
}

namespace {

bool lex_less(Cplx a, Cplx b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); }

}  // namespace

Diagonalizer normalized_diagonalizer(const Mat& A, double tol) {
    const Eigen::Index n = A.rows();
    if (A.cols() != n || n < 1) throw Error(ErrorCode::DimensionMismatch, "normalized_diagonalizer: square input required");
    if (!A.allFinite()) throw Error(ErrorCode::Overflow, "normalized_diagonalizer: non-finite input");

    Eigen::ComplexEigenSolver<Mat> es(A, true);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::NonConvergedEigensolve, "complex Schur iteration failed");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    const Vec& ev = es.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return lex_less(ev(a), ev(b)); });

    Diagonalizer d;
    d.eigenvalues.resize(n);
    d.C.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        d.eigenvalues(k) = ev(order[static_cast<std::size_t>(k)]);
        d.C.col(k) = es.eigenvectors().col(order[static_cast<std::size_t>(k)]);
    }
    if (min_gap(d.eigenvalues) <= collision_threshold(d.eigenvalues))
        throw Error(ErrorCode::DegenerateSpectrum, "eigenvalues closer than degeneracy threshold");

    for (Eigen::Index k = 0; k < n; ++k) {
        const Cplx s = d.C.col(k).sum();
        if (std::abs(s) < 1e-10 * d.C.col(k).norm())
            throw Error(ErrorCode::ZeroColumnSum, "eigenvector with vanishing entry sum");
        d.C.col(k) /= s;
    }

    Eigen::FullPivLU<Mat> lu(d.C);
    if (!lu.isInvertible()) throw Error(ErrorCode::DegenerateSpectrum, "eigenvector matrix is singular");
    const Mat Ci = lu.inverse();
    const Mat D = Ci * A * d.C;
    Mat diag = Mat::Zero(n, n);
    diag.diagonal() = d.eigenvalues;
    const double scale = std::max(1.0, max_norm(A));
    d.residual = max_norm(D - diag);

    Mat r1 = Mat::Identity(n, n) - Mat::Ones(n, n);
    d.rank_one_residual = max_norm(Ci * r1 * d.C - r1);
    d.row_sum_residual = max_norm(d.C * Vec::Ones(n) - Vec::Ones(n));

    if (d.residual >= tol * scale)
        throw Error(ErrorCode::DegenerateSpectrum, "eigenbasis too ill-conditioned to diagonalize within tolerance");
    return d;
}

ReducedPoint reduce(const MatrixPhasePoint& pt, Slice slice, Coupling g, double tol) {
    pt.validate();
    const Eigen::Index n = pt.dim();
    const double scale = std::max({1.0, max_norm(pt.q), max_norm(pt.p)});
    const auto ls = on_level_set(pt, g, tol * scale * scale);
    if (!ls.ok)
        throw Error(ErrorCode::NotOnLevelSet, "reduce: moment map deviates by " + std::to_string(ls.deviation));

    ReducedPoint x;
    x.g = g;
    x.t = pt.t;
    x.slice = slice;
    const Mat& A = slice == Slice::Q_DIAG ? pt.q : pt.p;
    const Mat& B = slice == Slice::Q_DIAG ? pt.p : pt.q;
    if (n == 1) {
        x.positions = A.diagonal();
        x.momenta = B.diagonal();
        return x;
    }

    const Diagonalizer d = normalized_diagonalizer(A, tol);
    const Mat Bt = d.C.fullPivLu().solve(B * d.C);
    x.positions = d.eigenvalues;
    x.momenta = Bt.diagonal();
    const Mat expected = slice_kernel(x.positions, g.value(), slice);
    const double off = max_norm(off_diagonal(Bt) - expected);
    if (off >= tol * std::max(1.0, max_norm(Bt)))
        throw Error(ErrorCode::OffDiagonalMismatch,
                    "reduce: off-diagonal structure deviates by " + std::to_string(off));
    return x;
}

MatrixPhasePoint embed(const ReducedPoint& x) {
    const Eigen::Index n = x.dim();
    if (n < 1 || x.momenta.size() != n) throw Error(ErrorCode::DimensionMismatch, "embed: positions/momenta size");
    require_distinct(x.positions, "embed");
    Mat diag_pos = x.positions.asDiagonal();
    Mat other = slice_kernel(x.positions, x.g.value(), x.slice);
    other.diagonal() = x.momenta;
    MatrixPhasePoint pt;
    pt.t = x.t;
    if (x.slice == Slice::Q_DIAG) {
        pt.q = std::move(diag_pos);
        pt.p = std::move(other);
    } else {
        pt.p = std::move(diag_pos);
        pt.q = std::move(other);
    }
    return pt;
}

ReducedPoint dual_of(const ReducedPoint& x, double tol) {
    const MatrixPhasePoint pt = embed(x);
    try {
        ReducedPoint y = reduce(pt, opposite(x.slice), x.g, tol);
        require_distinct(y.positions, "dual_of");
        return y;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DegenerateSpectrum)
            throw Error(ErrorCode::ParticleCollision, std::string("dual_of: dual positions collide (") + e.what() + ")");
        throw;
    }
}

std::vector<Eigen::Index> match_permutation(const Vec& a, const Vec& b) {
    const Eigen::Index n = a.size();
    if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "match_permutation: sizes differ");
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index best = -1;
        double bd = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < n; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            const double dd = std::abs(a(i) - b(j));
            if (dd < bd) bd = dd, best = j;
        }
        perm[static_cast<std::size_t>(i)] = best;
        used[static_cast<std::size_t>(best)] = true;
    }
    return perm;
}

double permuted_deviation(const ReducedPoint& a, const ReducedPoint& b) {
    if (a.slice != b.slice) throw Error(ErrorCode::InvalidArgument, "permuted_deviation: slices differ");
    const auto perm = match_permutation(a.positions, b.positions);
    double dev = 0.0;
    for (Eigen::Index i = 0; i < a.dim(); ++i) {
        const auto j = perm[static_cast<std::size_t>(i)];
        dev = std::max({dev, std::abs(a.positions(i) - b.positions(j)), std::abs(a.momenta(i) - b.momenta(j))});
    }
    return dev;
}

}  // namespace painleve
