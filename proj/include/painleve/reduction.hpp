#pragma once

#include "painleve/types.hpp"

#include <vector>

namespace painleve {

enum class Slice { Q_DIAG, P_DIAG };

const char* to_string(Slice s);
inline Slice opposite(Slice s) { return s == Slice::Q_DIAG ? Slice::P_DIAG : Slice::Q_DIAG; }

// On P_DIAG the positions are the eigenvalues I_i of p and the momenta the diagonal phi_i of q.
struct ReducedPoint {
    Vec positions;
    Vec momenta;
    Coupling g{1.0};
    double t = 0.0;
    Slice slice = Slice::Q_DIAG;

    Eigen::Index dim() const { return positions.size(); }
};

struct Diagonalizer {
    Mat C;
    Vec eigenvalues;
    double residual = 0.0;
    double rank_one_residual = 0.0;
    double row_sum_residual = 0.0;  // max |C 1 - 1|; a consequence of the level set, not imposed
};

double collision_threshold(const Vec& positions);
double min_gap(const Vec& positions);
void require_distinct(const Vec& positions, const char* where);

// Off-diagonal kernel of the slice: +i g/(x_i - x_j) on Q_DIAG, -i g/(x_i - x_j) on P_DIAG.
Mat slice_kernel(const Vec& positions, double g, Slice s);

Diagonalizer normalized_diagonalizer(const Mat& A, double tol = 1e-8);

ReducedPoint reduce(const MatrixPhasePoint& pt, Slice slice, Coupling g, double tol = 1e-8);
MatrixPhasePoint embed(const ReducedPoint& x);
ReducedPoint dual_of(const ReducedPoint& x, double tol = 1e-8);

// Greedy nearest-position assignment: perm[i] is the index in b matched to a[i].
std::vector<Eigen::Index> match_permutation(const Vec& a, const Vec& b);
// Max entrywise distance of positions and momenta after permutation matching.
double permuted_deviation(const ReducedPoint& a, const ReducedPoint& b);

}  // namespace painleve
