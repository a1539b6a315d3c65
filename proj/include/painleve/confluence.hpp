#pragma once

#include "painleve/reduction.hpp"
#include "painleve/types.hpp"

#include <functional>
#include <vector>

namespace painleve {

struct ConfluenceParams {
    double eps = 0.1;
    Cplx theta{0.0};
    // theta1 = -theta instead of theta + 1/(4 eps^6); kept to exhibit the failing assignment.
    bool printed_assignment = false;
};

enum class ConfluenceKind { Conf, Conf1 };
const char* to_string(ConfluenceKind k);

struct ConfluenceImage {
    MatrixPhasePoint point;  // P_IV point, time already mapped
    Cplx theta0;
    Cplx theta1;

    SystemSpec spec() const;  // non-autonomous P_IV with the mapped parameters
};

// P_II -> P_IV. p^(IV) = -eps (p + q^2 + t/2), q^(IV) = -eps^-3 (1/2 + eps^2 q), t^(IV) = eps^-3 (1 - eps^4 t).
ConfluenceImage conf_map(const MatrixPhasePoint& pt, const ConfluenceParams& cp);
// P_II_poly -> P_IV; linear in both q and p.
ConfluenceImage conf_map_linear(const MatrixPhasePoint& pt, const ConfluenceParams& cp);

MatrixPhasePoint canonical_shift(const MatrixPhasePoint& pt);
MatrixPhasePoint canonical_unshift(const MatrixPhasePoint& pt);

// |H_target - (-eps H^(IV)(image) + n theta / (2 eps^2))|, with H_target = P_II (Conf) or P_II_poly (Conf1).
// Evaluated in long double.
double confluence_residual(const MatrixPhasePoint& pt, const ConfluenceParams& cp, ConfluenceKind kind);
// The same residual evaluated in double; loses accuracy like eps^-8 times the unit roundoff.
double confluence_residual_double(const MatrixPhasePoint& pt, const ConfluenceParams& cp, ConfluenceKind kind);
// Same on Q_DIAG particles, mapping each particle by the scalar formula and using the closed forms.
double reduced_confluence_residual(const ReducedPoint& x, const ConfluenceParams& cp, ConfluenceKind kind);

// Relative error of -eps g^2 sum (q4_i + q4_j)/(q4_i - q4_j)^2 against g^2 sum 1/(q_i - q_j)^2.
double interaction_limit_error(const ReducedPoint& x, double eps);

struct BreakdownReport {
    ConfluenceKind kind;
    double eps;
    // Naive particle-wise dual map versus reduction of the confluence image on P_DIAG.
    double particle_map_deviation;
    // Off-diagonal part of p^(IV) in the eigenbasis of the source p, relative to max |p^(IV)|.
    double eigenbasis_misalignment;
    ReducedPoint reduced_image;
    ReducedPoint particle_image;
};

BreakdownReport dual_confluence_breakdown(const ReducedPoint& x, const ConfluenceParams& cp, ConfluenceKind kind);

using PhaseMap = std::function<MatrixPhasePoint(const MatrixPhasePoint&)>;

// Central-difference Jacobian action with one Richardson step.
TangentPair pushforward(const PhaseMap& f, const MatrixPhasePoint& pt, const TangentPair& u, double step = 1e-3);
// |omega(Ju, Jw) - omega(u, w)|.
double symplectic_defect(const PhaseMap& f, const MatrixPhasePoint& pt, const TangentPair& u, const TangentPair& w,
                         double step = 1e-3);

std::vector<double> default_eps_sweep();

}  // namespace painleve
