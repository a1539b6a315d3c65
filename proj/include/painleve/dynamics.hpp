#pragma once

#include "painleve/hamiltonians.hpp"
#include "painleve/reduction.hpp"
#include "painleve/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace painleve {

inline MatrixPhasePoint shifted(const MatrixPhasePoint& s, const TangentPair& d, double h) {
    return {s.q + h * d.dq, s.p + h * d.dp, s.t + h};
}
inline ReducedPoint shifted(const ReducedPoint& s, const ReducedVelocity& d, double h) {
    ReducedPoint r = s;
    r.positions += h * d.positions;
    r.momenta += h * d.momenta;
    r.t += h;
    return r;
}
inline TangentPair rk4_combine(const TangentPair& a, const TangentPair& b, const TangentPair& c, const TangentPair& d) {
    return {(a.dq + 2.0 * b.dq + 2.0 * c.dq + d.dq) / 6.0, (a.dp + 2.0 * b.dp + 2.0 * c.dp + d.dp) / 6.0};
}
inline ReducedVelocity rk4_combine(const ReducedVelocity& a, const ReducedVelocity& b, const ReducedVelocity& c,
                                   const ReducedVelocity& d) {
    return {(a.positions + 2.0 * b.positions + 2.0 * c.positions + d.positions) / 6.0,
            (a.momenta + 2.0 * b.momenta + 2.0 * c.momenta + d.momenta) / 6.0};
}

// Classical RK4 with stage times t, t+h/2, t+h/2, t+h. Works for negative h.
template <class State, class Field>
State rk4_step(const State& s, double h, Field&& f) {
    const auto k1 = f(s);
    const auto k2 = f(shifted(s, k1, 0.5 * h));
    const auto k3 = f(shifted(s, k2, 0.5 * h));
    const auto k4 = f(shifted(s, k3, h));
    return shifted(s, rk4_combine(k1, k2, k3, k4), h);
}

template <class State, class Field>
State rk4_advance(State s, double dt, int steps, Field&& f) {
    const double h = dt / steps;
    for (int k = 0; k < steps; ++k) s = rk4_step(s, h, f);
    return s;
}

enum class Termination { Completed, Collision, Overflow };
const char* to_string(Termination t);

struct StepDiagnostics {
    double t = 0.0;
    Cplx energy{0.0};
    double moment_map_drift = 0.0;  // max-norm of mu(t) - mu(t0); zero by construction for reduced states
};

template <class State>
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<StepDiagnostics> diagnostics;
    Termination status = Termination::Completed;
    std::string message;

    const State& back() const { return states.back(); }
    bool completed() const { return status == Termination::Completed; }
};

Trajectory<MatrixPhasePoint> integrate(const SystemSpec& spec, const MatrixPhasePoint& start, double t0, double t1,
                                       double h);
Trajectory<ReducedPoint> integrate(const SystemSpec& spec, const ReducedPoint& start, double t0, double t1, double h);

// Throws the Error matching the termination status if the run did not complete.
template <class State>
void require_completed(const Trajectory<State>& tr) {
    if (tr.status == Termination::Collision) throw Error(ErrorCode::ParticleCollision, tr.message);
    if (tr.status == Termination::Overflow) throw Error(ErrorCode::Overflow, tr.message);
}

struct InvariantReport {
    std::vector<Cplx> monitor_lambdas;
    // coefficient_drift[m][k]: max over steps of |c_k(t) - c_k(t0)| / max(1, |c_k(t0)|) at lambda m.
    std::vector<std::vector<double>> coefficient_drift;
    double max_coefficient_drift = 0.0;
    double max_moment_map_deviation = 0.0;  // from the level set when g is supplied, else drift from t0
    double max_energy_drift = 0.0;
    bool conservation_asserted = false;  // only autonomous flows are isospectral
};

InvariantReport monitor_invariants(const SystemSpec& spec, const Trajectory<MatrixPhasePoint>& traj,
                                   const std::vector<Cplx>& lambdas, std::optional<Coupling> g = std::nullopt);
InvariantReport monitor_invariants(const SystemSpec& spec, const Trajectory<ReducedPoint>& traj,
                                   const std::vector<Cplx>& lambdas);

// Flow-then-reduce versus reduce-then-flow, permutation matched.
double equivariance_check(const SystemSpec& spec, const ReducedPoint& x0, double dt, double h);

}  // namespace painleve
