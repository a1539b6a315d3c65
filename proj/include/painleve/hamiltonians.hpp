#pragma once

#include "painleve/reduction.hpp"
#include "painleve/types.hpp"

#include <utility>

namespace painleve {

Cplx matrix_hamiltonian(const SystemSpec& spec, const MatrixPhasePoint& pt);

// Equations of motion: q' = grad_p H, p' = -grad_q H under the pairing Tr(dp . grad_p H).
TangentPair matrix_vector_field(const SystemSpec& spec, const MatrixPhasePoint& pt);

// Normative reduced energy: the matrix Hamiltonian at embed(x).
Cplx reduced_hamiltonian(const SystemSpec& spec, const ReducedPoint& x);

struct ClosedFormOptions {
    bool include_quadruple = true;  // 4-index part of Tr A^4 in the dual P_II energy
};

// Particle-level formula per (kind, slice); must agree with reduced_hamiltonian.
Cplx reduced_hamiltonian_closed(const SystemSpec& spec, const ReducedPoint& x, ClosedFormOptions opt = {});

struct ReducedVelocity {
    Vec positions;
    Vec momenta;
};

// Q_DIAG: (dH/dy, -dH/dx). P_DIAG: (-dH/dphi, dH/dI), since I is p-like there.
ReducedVelocity reduced_vector_field(const SystemSpec& spec, const ReducedPoint& x);

struct P4Involution {
    ReducedPoint point;
    Cplx theta0;
    Cplx theta1;
};

// Anti-symplectic self-duality of the P_IV reduced/dual pair. (x, y) on one slice goes to
// (-x, -y) on the other, with (theta0, theta1) -> (theta0 + theta1, -theta1).
P4Involution p4_involution(const ReducedPoint& x, Cplx theta0, Cplx theta1);
// Relabeling as stated in the literature: theta0 -> theta1, theta1 -> theta0 - theta1.
std::pair<Cplx, Cplx> p4_relabeling_as_printed(Cplx theta0, Cplx theta1);

// Q_DIAG (q, p) -> P_DIAG (omega q, -p/omega); P_DIAG (I, phi) -> Q_DIAG (-I/omega, omega phi).
ReducedPoint harmosc_selfduality(const ReducedPoint& x, double omega);

}  // namespace painleve
