#include "painleve/dynamics.hpp"

#include "painleve/lax.hpp"
#include "painleve/linalg.hpp"

#include <cmath>
#include <type_traits>

namespace painleve {

const char* to_string(Termination t) {
    switch (t) {
        case Termination::Completed: return "Completed";
        case Termination::Collision: return "Collision";
        case Termination::Overflow: return "Overflow";
    }
    return "Unknown";
}

namespace {

constexpr double kOverflow = 1e12;

int step_count(double t0, double t1, double h) {
    if (!(h > 0.0) || !(t1 > t0)) throw Error(ErrorCode::InvalidArgument, "integrate: need h > 0 and t1 > t0");
    const double steps = std::ceil((t1 - t0) / h - 1e-9);
    if (steps > 1e7) throw Error(ErrorCode::InvalidArgument, "integrate: more than 1e7 steps");
    return static_cast<int>(steps);
}

double state_norm(const MatrixPhasePoint& s) { return std::max(max_norm(s.q), max_norm(s.p)); }
double state_norm(const ReducedPoint& s) { return std::max(max_norm(s.positions), max_norm(s.momenta)); }

StepDiagnostics diagnose(const SystemSpec& spec, const MatrixPhasePoint& s, const Mat& mu0) {
    return {s.t, matrix_hamiltonian(spec, s), max_norm(moment_map(s) - mu0)};
}
StepDiagnostics diagnose(const SystemSpec& spec, const ReducedPoint& s, const Mat&) {
    return {s.t, reduced_hamiltonian_closed(spec, s), 0.0};
}

template <class State, class Field>
Trajectory<State> run(const SystemSpec& spec, const State& start, double t0, double t1, double h, Field&& field,
                      const Mat& mu0) {
    spec.validate();
    const int steps = step_count(t0, t1, h);
    const double dt = (t1 - t0) / steps;
    Trajectory<State> tr;
    State s = start;
    s.t = t0;
    tr.times.push_back(t0);
    tr.states.push_back(s);
    tr.diagnostics.push_back(diagnose(spec, s, mu0));
    for (int k = 1; k <= steps; ++k) {
        try {
            s = rk4_step(s, dt, field);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::ParticleCollision) {
                tr.status = Termination::Collision;
                tr.message = "collision near t = " + std::to_string(t0 + (k - 1) * dt);
                return tr;
            }
            if (e.code() == ErrorCode::Overflow) {
                tr.status = Termination::Overflow;
                tr.message = "non-finite state near t = " + std::to_string(t0 + (k - 1) * dt);
                return tr;
            }
            throw;
        }
        s.t = t0 + k * dt;
        if (!(state_norm(s) <= kOverflow)) {
            tr.status = Termination::Overflow;
            tr.message = "state norm above 1e12 at t = " + std::to_string(s.t);
            return tr;
        }
        if constexpr (std::is_same_v<State, ReducedPoint>) {
            if (min_gap(s.positions) <= collision_threshold(s.positions)) {
                tr.status = Termination::Collision;
                tr.message = "collision at t = " + std::to_string(s.t);
                return tr;
            }
        }
        tr.times.push_back(s.t);
        tr.states.push_back(s);
        tr.diagnostics.push_back(diagnose(spec, s, mu0));
    }
    return tr;
}

}  // namespace

Trajectory<MatrixPhasePoint> integrate(const SystemSpec& spec, const MatrixPhasePoint& start, double t0, double t1,
                                       double h) {
    start.validate();
    auto field = [&](const MatrixPhasePoint& s) { return matrix_vector_field(spec, s); };
    return run(spec, start, t0, t1, h, field, moment_map(start));
}

Trajectory<ReducedPoint> integrate(const SystemSpec& spec, const ReducedPoint& start, double t0, double t1, double h) {
    require_distinct(start.positions, "integrate");
    auto field = [&](const ReducedPoint& s) { return reduced_vector_field(spec, s); };
    return run(spec, start, t0, t1, h, field, Mat());
}

namespace {

template <class State, class LaxFn>
void fill_spectral(InvariantReport& r, const Trajectory<State>& traj, const std::vector<Cplx>& lambdas, LaxFn&& L) {
    r.monitor_lambdas = lambdas;
    for (const Cplx lam : lambdas) {
        const Vec c0 = char_poly(L(traj.states.front(), lam));
        std::vector<double> drift(static_cast<std::size_t>(c0.size()), 0.0);
        for (const auto& s : traj.states) {
            const Vec c = char_poly(L(s, lam));
            for (Eigen::Index k = 0; k < c.size(); ++k)
                drift[static_cast<std::size_t>(k)] = std::max(drift[static_cast<std::size_t>(k)],
                                                              std::abs(c(k) - c0(k)) / std::max(1.0, std::abs(c0(k))));
        }
        for (double d : drift) r.max_coefficient_drift = std::max(r.max_coefficient_drift, d);
        r.coefficient_drift.push_back(std::move(drift));
    }
    const Cplx e0 = traj.diagnostics.front().energy;
    for (const auto& d : traj.diagnostics)
        r.max_energy_drift = std::max(r.max_energy_drift, std::abs(d.energy - e0) / std::max(1.0, std::abs(e0)));
}

}  // namespace

InvariantReport monitor_invariants(const SystemSpec& spec, const Trajectory<MatrixPhasePoint>& traj,
                                   const std::vector<Cplx>& lambdas, std::optional<Coupling> g) {
    InvariantReport r;
    if (traj.states.empty()) return r;
    r.conservation_asserted = is_isospectral(spec);
    fill_spectral(r, traj, lambdas,
                  [&](const MatrixPhasePoint& s, Cplx lam) { return lax_pair(spec, s, lam).L; });
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const double dev = g ? on_level_set(traj.states[k], *g, 1.0).deviation : traj.diagnostics[k].moment_map_drift;
        r.max_moment_map_deviation = std::max(r.max_moment_map_deviation, dev);
    }
    return r;
}

InvariantReport monitor_invariants(const SystemSpec& spec, const Trajectory<ReducedPoint>& traj,
                                   const std::vector<Cplx>& lambdas) {
    InvariantReport r;
    if (traj.states.empty()) return r;
    r.conservation_asserted = is_isospectral(spec);
    fill_spectral(r, traj, lambdas, [&](const ReducedPoint& s, Cplx lam) { return reduced_lax(spec, s, lam).L; });
    return r;
}

double equivariance_check(const SystemSpec& spec, const ReducedPoint& x0, double dt, double h) {
    const double t0 = x0.t;
    const auto matrix_run = integrate(spec, embed(x0), t0, t0 + dt, h);
    require_completed(matrix_run);
    const auto reduced_run = integrate(spec, x0, t0, t0 + dt, h);
    require_completed(reduced_run);
    const ReducedPoint via_matrix = reduce(matrix_run.back(), x0.slice, x0.g, 1e-6);
    return permuted_deviation(via_matrix, reduced_run.back());
}

}  // namespace painleve
