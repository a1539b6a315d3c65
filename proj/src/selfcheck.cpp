#include "painleve/selfcheck.hpp"

#include "painleve/confluence.hpp"
#include "painleve/dynamics.hpp"
#include "painleve/hamiltonians.hpp"
#include "painleve/lax.hpp"
#include "painleve/mmkdv.hpp"
#include "painleve/reduction.hpp"
#include "painleve/sampling.hpp"
#include "painleve/traces.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace painleve {

using json = nlohmann::ordered_json;

Check check_less(std::string operation, std::string quantity, double value, double tol) {
    return {std::move(operation), std::move(quantity), value, tol, std::nullopt, "<", value < tol};
}

Check check_greater(std::string operation, std::string quantity, double value, double tol) {
    return {std::move(operation), std::move(quantity), value, tol, std::nullopt, ">", value > tol};
}

Check check_equal(std::string operation, std::string quantity, double value, double expected) {
    return {std::move(operation), std::move(quantity), value, expected, std::nullopt, "==", value == expected};
}

Check check_within(std::string operation, std::string quantity, double value, double lo, double hi) {
    return {std::move(operation), std::move(quantity), value, lo, hi, "in", value >= lo && value <= hi};
}

bool CriterionResult::passed() const {
    if (error || checks.empty()) return false;
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

bool SelfcheckReport::all_passed() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed(); });
}

bool SelfcheckReport::any_error() const {
    return std::any_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.error.has_value(); });
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double rel_err(Cplx a, Cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Running maximum that lets NaN stick.
struct Worst {
    double value = 0.0;
    void add(double v) {
        if (std::isnan(v) || v > value) value = std::isnan(v) ? std::numeric_limits<double>::quiet_NaN() : v;
    }
};

SystemSpec make_spec(SystemKind kind, Sampler& s) {
    SystemSpec sp;
    sp.kind = kind;
    sp.params.theta = s.complex(1.0, 0.5);
    sp.params.theta0 = s.complex(1.0, 0.5);
    sp.params.theta1 = s.complex(1.0, 0.5);
    sp.params.omega = s.uniform(0.5, 2.0);
    return sp;
}

SystemSpec autonomous(SystemSpec sp, double tau) {
    sp.autonomous = true;
    sp.params.tau = tau;
    return sp;
}

Sampler::PointShape moderate_shape() {
    Sampler::PointShape sh;
    sh.min_gap = 0.8;
    sh.pos_re = 1.5;
    sh.pos_im = 0.3;
    sh.mom_re = 0.5;
    sh.mom_im = 0.2;
    return sh;
}

constexpr SystemKind kAllKinds[] = {SystemKind::P_I,    SystemKind::P_II,    SystemKind::P_II_poly,
                                    SystemKind::P_IV,   SystemKind::HarmOsc, SystemKind::Free};
constexpr Slice kSlices[] = {Slice::Q_DIAG, Slice::P_DIAG};

std::string tag(SystemKind k, Slice s) { return std::string(to_string(k)) + "/" + to_string(s); }

void c01_level_set(CriterionResult& r, Sampler& s) {
    const auto start = std::chrono::steady_clock::now();
    Worst worst;
    int count = 0;
    for (int n = 1; n <= 6; ++n)
        for (const double g : {0.5, 1.0, 2.0})
            for (const Slice sl : kSlices)
                for (int k = 0; k < 100; ++k) {
                    const ReducedPoint x = s.reduced_point(n, g, sl, 0.0);
                    worst.add(on_level_set(embed(x), Coupling(g), 1.0).deviation / g);
                    ++count;
                }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.checks.push_back(check_less("on_level_set(embed(x))", "max deviation / g", worst.value, 1e-11));
    Check wall{"level-set sweep", "wall seconds", std::nullopt, 5.0, std::nullopt, "<", secs < 5.0};
    r.checks.push_back(wall);
    r.details["points"] = count;
    r.details["grid"] = "n 1..6, g {0.5, 1, 2}, both slices, 100 points per cell";
}

void c02_round_trip(CriterionResult& r, Sampler& s) {
    Worst plain, generic;
    for (int n = 1; n <= 6; ++n)
        for (const double g : {0.5, 1.0, 2.0})
            for (const Slice sl : kSlices)
                for (int k = 0; k < 100; ++k) {
                    const ReducedPoint x = s.reduced_point(n, g, sl, 0.0);
                    plain.add(permuted_deviation(x, reduce(embed(x), sl, Coupling(g))));
                    if (k < 10) {
                        // Same orbit away from the slice representative.
                        const MatrixPhasePoint pt = s.generic_level_set_point(x);
                        generic.add(permuted_deviation(x, reduce(pt, sl, Coupling(g))));
                    }
                }
    r.checks.push_back(check_less("reduce(embed(x))", "max permuted deviation", plain.value, 1e-10));
    r.checks.push_back(check_less("reduce(G embed(x) G^-1)", "max permuted deviation", generic.value, 1e-10));
}

void c03_hamiltonians(CriterionResult& r, Sampler& s) {
    json per = json::object();
    for (const SystemKind kind : kAllKinds)
        for (const Slice sl : kSlices) {
            Worst worst;
            for (int n = 1; n <= 6; ++n)
                for (int k = 0; k < 100; ++k) {
                    const SystemSpec sp = make_spec(kind, s);
                    const ReducedPoint x = s.reduced_point(n, 1.0, sl, s.uniform(-1.0, 1.0));
                    worst.add(rel_err(reduced_hamiltonian_closed(sp, x), reduced_hamiltonian(sp, x)));
                }
            r.checks.push_back(check_less("reduced_hamiltonian_closed vs trace oracle, " + tag(kind, sl),
                                          "max relative error", worst.value, 1e-10));
            per[tag(kind, sl)] = number(worst.value);
        }
    r.details["relative_error"] = per;
    r.details["denominator"] = "max(1, |H_oracle|)";
}

void c04_traces(CriterionResult& r, Sampler& s) {
    Worst q3, q4;
    for (int n = 1; n <= 8; ++n)
        for (int k = 0; k < 100; ++k) {
            const CalogeroMatrixSpec cs{s.complex_vector(n, 1.0, 0.5), s.separated(n, 0.3), s.uniform(0.5, 2.0)};
            q3.add(rel_err(tr_q3_closed(cs), trace_power_oracle(cs, 3)));
            q4.add(rel_err(tr_q4_closed(cs), trace_power_oracle(cs, 4)));
        }
    r.checks.push_back(check_less("tr_q3_closed vs oracle, n <= 8", "max relative error", q3.value, 1e-10));
    r.checks.push_back(check_less("tr_q4_closed vs oracle, n <= 8", "max relative error", q4.value, 1e-10));

    Worst pair, odd;
    for (int l = 1; l <= 12; ++l)
        for (int n = 2; n <= 6; ++n)
            for (int k = 0; k < 4; ++k) {
                const CalogeroMatrixSpec cs{s.complex_vector(n, 1.0, 0.5), s.separated(n, 0.3), 1.0};
                const EvennessReport e = evenness_check(cs, l, {0.5, 1.0, 2.0});
                pair.add(e.max_pair_deviation);
                odd.add(e.odd_to_even_ratio);
            }
    r.checks.push_back(check_less("evenness_check, l <= 12", "max |Tr Q^l(g) - Tr Q^l(-g)| relative", pair.value, 1e-11));
    r.checks.push_back(check_less("evenness_check, l <= 12", "max odd/even coefficient ratio", odd.value, 1e-11));

    CalogeroMatrixSpec worked;
    worked.diag = Vec::Zero(2);
    worked.diag << 1.0, 2.0;
    worked.denom = Vec::Zero(2);
    worked.denom << 1.0, 0.0;
    worked.g = 1.0;
    const Cplx v3 = tr_q3_closed(worked);
    const Cplx v4 = tr_q4_closed(worked);
    const Cplx o3 = trace_power_oracle(worked, 3);
    const Cplx o4 = trace_power_oracle(worked, 4);
    r.checks.push_back(check_equal("tr_q3_closed, diag (1,2), denom (1,0), g 1", "real part", v3.real(), 18.0));
    r.checks.push_back(check_equal("tr_q3_closed, diag (1,2), denom (1,0), g 1", "imaginary part", v3.imag(), 0.0));
    r.checks.push_back(check_equal("tr_q4_closed, diag (1,2), denom (1,0), g 1", "real part", v4.real(), 47.0));
    r.checks.push_back(check_equal("tr_q4_closed, diag (1,2), denom (1,0), g 1", "imaginary part", v4.imag(), 0.0));
    r.details["worked_n2"] = {{"l3_closed", complex_json(v3)},
                              {"l3_oracle", complex_json(o3)},
                              {"l4_closed", complex_json(v4)},
                              {"l4_oracle", complex_json(o4)}};
}

void c05_spectral(CriterionResult& r, Sampler& s) {
    const std::vector<Cplx> grid = default_lambda_grid();
    Worst unred, dual;
    double control = std::numeric_limits<double>::infinity();
    for (const SystemKind kind : {SystemKind::P_I, SystemKind::P_II, SystemKind::P_IV, SystemKind::HarmOsc})
        for (int n = 2; n <= 4; ++n)
            for (int k = 0; k < 5; ++k) {
                SystemSpec sp = make_spec(kind, s);
                if (kind != SystemKind::HarmOsc) sp = autonomous(sp, 1.0);
                const ReducedPoint x = s.reduced_point(n, 1.0, Slice::Q_DIAG, 1.0);
                const MatrixPhasePoint pt = s.generic_level_set_point(x);
                const ReducedPoint d = dual_of(x);
                unred.add(spectral_match(sp, pt, x, grid, 1e-8).max_deviation);
                dual.add(spectral_match(sp, x, d, grid, 1e-8).max_deviation);
                const ReducedPoint other = s.reduced_point(n, 1.0, Slice::Q_DIAG, 1.0);
                control = std::min(control, spectral_match(sp, pt, other, grid, 1e-8).max_deviation);
            }
    r.checks.push_back(check_less("spectral_match unreduced vs reduced", "max coefficient deviation", unred.value, 1e-8));
    r.checks.push_back(check_less("spectral_match reduced vs dual", "max coefficient deviation", dual.value, 1e-8));
    r.checks.push_back(check_greater("spectral_match, independent points", "min coefficient deviation", control, 1e-8));
    r.details["lambda_grid"] = "10 points on |lambda| = 1/2 and 10 on |lambda| = 2";
    r.details["kinds"] = "P_I, P_II, P_IV autonomous at tau = 1; HarmOsc";
}

void c06_zero_curvature(CriterionResult& r, Sampler& s) {
    json ratios = json::object();
    const Cplx lambdas[] = {Cplx(0.7, 0.4), Cplx(-1.3, 0.9)};
    for (const SystemKind kind :
         {SystemKind::P_I, SystemKind::P_II, SystemKind::P_II_poly, SystemKind::P_IV, SystemKind::HarmOsc}) {
        SystemSpec sp = make_spec(kind, s);
        sp.params.omega = 2.0;
        const ReducedPoint x = s.reduced_point(2, 1.0, Slice::Q_DIAG, 0.3);
        const MatrixPhasePoint pt = s.generic_level_set_point(x);
        json per = json::array();
        for (const Cplx lam : lambdas) {
            const double a = zero_curvature_residual(sp, pt, lam, 1e-2);
            const double b = zero_curvature_residual(sp, pt, lam, 5e-3);
            const double ra = reduced_zero_curvature_residual(sp, x, lam, 1e-2);
            const double rb = reduced_zero_curvature_residual(sp, x, lam, 5e-3);
            ZeroCurvatureOptions pert;
            pert.eom_perturbation = 1e-3;
            const double lifted = zero_curvature_residual(sp, pt, lam, 1e-3, pert);
            const std::string where = std::string(to_string(kind)) + ", lambda " +
                                      (lam == lambdas[0] ? "0.7+0.4i" : "-1.3+0.9i");
            r.checks.push_back(check_within("zero_curvature_residual h-halving, " + where, "r(1e-2)/r(5e-3)", a / b,
                                            12.0, 20.0));
            r.checks.push_back(check_within("reduced_zero_curvature_residual h-halving, " + where, "r(1e-2)/r(5e-3)",
                                            ra / rb, 12.0, 20.0));
            r.checks.push_back(check_greater("zero_curvature_residual with p' + 1e-3 Id, h 1e-3, " + where,
                                             "residual", lifted, 1e-4));
            per.push_back({{"lambda", complex_json(lam)},
                           {"matrix", {number(a), number(b)}},
                           {"reduced", {number(ra), number(rb)}},
                           {"perturbed", number(lifted)}});
        }
        ratios[to_string(kind)] = per;
    }
    // The P_IV pair in its printed form, kept as a measured discrepancy.
    SystemSpec p4 = make_spec(SystemKind::P_IV, s);
    const MatrixPhasePoint pt = s.generic_level_set_point(s.reduced_point(2, 1.0, Slice::Q_DIAG, 0.3));
    ZeroCurvatureOptions printed;
    printed.variant = LaxVariant::AsPrinted;
    const double as_printed = zero_curvature_residual(p4, pt, Cplx(0.7, 0.4), 1e-3, printed);
    const double corrected = zero_curvature_residual(p4, pt, Cplx(0.7, 0.4), 1e-3);
    r.details["residuals"] = ratios;
    r.details["p4_pair_as_printed"] = {
        {"residual_h_1e-3", number(as_printed)},
        {"corrected_residual_h_1e-3", number(corrected)},
        {"status", as_printed > 1e-4 ? "fails zero curvature" : "passes"},
        {"corrected_pair", "A_11 = -p q / lambda, B = [[0, -(q p + theta0 + theta1)], [-Id, (lambda - t) Id - q]]"}};
}

void c07_isospectral(CriterionResult& r, Sampler& s) {
    // Small data: the P_II potential is an inverted quartic, so large starts run into poles within t = 1.
    Sampler::PointShape sh;
    sh.min_gap = 0.48;
    sh.pos_re = 0.8;
    sh.pos_im = 0.1;
    sh.mom_re = 0.2;
    sh.mom_im = 0.05;
    const double g = 0.25;
    json per = json::object();
    for (const SystemKind kind : {SystemKind::P_I, SystemKind::P_II}) {
        Worst drift, mm;
        for (int k = 0; k < 3; ++k) {
            const SystemSpec sp = autonomous(make_spec(kind, s), 1.0);
            const ReducedPoint x = s.reduced_point(3, g, Slice::Q_DIAG, 0.0, sh);
            const MatrixPhasePoint pt = s.generic_level_set_point(x, 0.1);
            const auto tr = integrate(sp, pt, 0.0, 1.0, 1e-3);
            require_completed(tr);
            const InvariantReport rep = monitor_invariants(sp, tr, {Cplx(1.0, 0.0), Cplx(0.0, 2.0)}, Coupling(g));
            drift.add(rep.max_coefficient_drift);
            mm.add(rep.max_moment_map_deviation);
        }
        r.checks.push_back(check_less(std::string("monitor_invariants, autonomous ") + to_string(kind) +
                                          ", n 3, t in [0, 1], h 1e-3",
                                      "max char-poly coefficient drift", drift.value, 1e-6));
        per[to_string(kind)] = {{"coefficient_drift", number(drift.value)}, {"moment_map_deviation", number(mm.value)}};
    }
    r.details["diagnostics"] = per;
    r.details["initial_data"] =
        "artifact choice: g 0.25, positions in |Re| < 0.8, |Im| < 0.1 with gap 0.48, momenta |Re| < 0.2, |Im| < 0.05, "
        "conjugated off the slice by I + Pi X Pi with |X_ij| < 0.1";
}

void c08_equivariance(CriterionResult& r, Sampler& s) {
    struct Case {
        SystemKind kind;
        int n;
        double dt;
    };
    for (const Case c : {Case{SystemKind::Free, 3, 1.0}, Case{SystemKind::P_IV, 2, 0.3}, Case{SystemKind::P_II, 2, 0.3}}) {
        Worst worst;
        for (int k = 0; k < 3; ++k) {
            const SystemSpec sp = make_spec(c.kind, s);
            const ReducedPoint x = s.reduced_point(c.n, 1.0, Slice::Q_DIAG, 0.0, moderate_shape());
            worst.add(equivariance_check(sp, x, c.dt, 1e-3));
        }
        r.checks.push_back(check_less(std::string("equivariance_check ") + to_string(c.kind) + ", n " +
                                          std::to_string(c.n) + ", dt " + json(c.dt).dump() + ", h 1e-3",
                                      "max permuted deviation", worst.value, 1e-6));
    }
    r.details["initial_data"] = "artifact choice: g 1, positions |Re| < 1.5, |Im| < 0.3 with gap 0.8, momenta |Re| < 0.5, |Im| < 0.2";
}

void c09_free_actions(CriterionResult& r, Sampler& s) {
    SystemSpec sp;
    sp.kind = SystemKind::Free;
    Worst worst;
    // Close encounters cost RK4 accuracy at h = 1e-3, so the particles start further apart.
    Sampler::PointShape sh = moderate_shape();
    sh.min_gap = 1.0;
    sh.pos_re = 2.5;
    for (int n = 2; n <= 4; ++n) {
        const ReducedPoint x = s.reduced_point(n, 1.0, Slice::Q_DIAG, 0.0, sh);
        const auto tr = integrate(sp, x, 0.0, 1.0, 1e-3);
        require_completed(tr);
        const Vec e0 = eigenvalues(embed(x).p);
        for (const ReducedPoint& st : tr.states) {
            const Vec e = eigenvalues(embed(st).p);
            const auto perm = match_permutation(e0, e);
            for (Eigen::Index i = 0; i < e0.size(); ++i) worst.add(std::abs(e0(i) - e(perm[static_cast<std::size_t>(i)])));
        }
    }
    r.details["initial_data"] = "artifact choice: g 1, positions |Re| < 2.5, |Im| < 0.3 with gap 1, momenta |Re| < 0.5, |Im| < 0.2";
    r.checks.push_back(check_less("eigenvalues of embedded p along the free reduced flow, dt 1, h 1e-3",
                                  "max eigenvalue drift", worst.value, 1e-8));
}

void c10_p4_selfduality(CriterionResult& r, Sampler& s) {
    Worst derived, printed;
    for (int n = 1; n <= 5; ++n)
        for (const Slice sl : kSlices)
            for (int k = 0; k < 20; ++k) {
                const SystemSpec sp = make_spec(SystemKind::P_IV, s);
                const ReducedPoint x = s.reduced_point(n, 1.0, sl, s.uniform(-1.0, 1.0));
                const P4Involution inv = p4_involution(x, sp.params.theta0, sp.params.theta1);
                SystemSpec image = sp;
                image.params.theta0 = inv.theta0;
                image.params.theta1 = inv.theta1;
                const Cplx h = reduced_hamiltonian(sp, x);
                derived.add(rel_err(reduced_hamiltonian(image, inv.point), h));
                const auto pr = p4_relabeling_as_printed(sp.params.theta0, sp.params.theta1);
                image.params.theta0 = pr.first;
                image.params.theta1 = pr.second;
                printed.add(rel_err(reduced_hamiltonian(image, inv.point), h));
            }
    r.checks.push_back(check_less("H(sigma x) vs H(x) under the derived relabeling, n <= 5", "max relative error",
                                  derived.value, 1e-10));
    r.details["sigma"] = "(x, y) on one slice -> (-x, -y) on the other";
    r.details["derived_relabeling"] = "(theta0, theta1) -> (theta0 + theta1, -theta1)";
    r.details["stated_relabeling"] = "(theta0, theta1) -> (theta1, theta0 - theta1)";
    r.details["stated_relabeling_max_relative_error"] = number(printed.value);
}

void c11_quadruple(CriterionResult& r, Sampler& s) {
    int broken = 0;
    double smallest = std::numeric_limits<double>::infinity();
    Cplx largest_quad{0.0};
    for (int k = 0; k < 100; ++k) {
        const SystemSpec sp = make_spec(SystemKind::P_II, s);
        const ReducedPoint x = s.reduced_point(4, 1.0, Slice::P_DIAG, s.uniform(-1.0, 1.0));
        const double d = rel_err(reduced_hamiltonian_closed(sp, x, ClosedFormOptions{false}), reduced_hamiltonian(sp, x));
        smallest = std::min(smallest, d);
        if (d > 1e-6) ++broken;
        const Cplx quad = trace_a4_parts(x.positions).quadruples;
        if (std::abs(quad) > std::abs(largest_quad)) largest_quad = quad;
    }
    r.checks.push_back(check_greater("dual P_II closed form without the 4-index term vs oracle, n 4",
                                     "points with relative error > 1e-6", broken, 94.0));
    r.details["min_relative_error"] = number(smallest);
    r.details["largest_quadruple_term"] = complex_json(largest_quad);
    r.details["note"] =
        "the three 4-cycles of each 4-set sum to zero identically, so the ablation cannot change the energy";
}

void c12_confluence(CriterionResult& r, Sampler& s) {
    const Cplx theta = s.complex(1.0, 0.5);
    const std::vector<double> eps = {0.1, 0.05, 0.025};
    json table = json::object();
    for (const ConfluenceKind kind : {ConfluenceKind::Conf, ConfluenceKind::Conf1}) {
        const ReducedPoint x = s.reduced_point(2, 1.0, Slice::Q_DIAG, 0.2);
        const MatrixPhasePoint pt = s.generic_level_set_point(x);
        json rows = json::array();
        std::vector<double> mres, rres;
        for (const double e : eps) {
            const ConfluenceParams cp{e, theta, false};
            mres.push_back(confluence_residual(pt, cp, kind));
            rres.push_back(reduced_confluence_residual(x, cp, kind));
            const ConfluenceParams printed{e, theta, true};
            rows.push_back({{"eps", e},
                            {"matrix", number(mres.back())},
                            {"q_diag", number(rres.back())},
                            {"printed_assignment_matrix", number(confluence_residual(pt, printed, kind))}});
        }
        for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
            const std::string step = json(eps[i]).dump() + " -> " + json(eps[i + 1]).dump();
            r.checks.push_back(check_within(std::string("confluence_residual ") + to_string(kind) + ", eps " + step,
                                            "residual ratio", mres[i] / mres[i + 1], 3.5, 4.5));
            r.checks.push_back(check_within(std::string("reduced_confluence_residual ") + to_string(kind) + ", eps " +
                                                step,
                                            "residual ratio", rres[i] / rres[i + 1], 3.5, 4.5));
        }
        const ReducedPoint xd = s.reduced_point(2, 1.0, Slice::P_DIAG, 0.2);
        const BreakdownReport b = dual_confluence_breakdown(xd, ConfluenceParams{0.1, theta, false}, kind);
        if (kind == ConfluenceKind::Conf)
            r.checks.push_back(check_greater("dual_confluence_breakdown conf, eps 0.1", "particle map deviation",
                                             b.particle_map_deviation, 1e-3));
        else
            r.checks.push_back(check_less("dual_confluence_breakdown conf1, eps 0.1", "particle map deviation",
                                          b.particle_map_deviation, 1e-8));
        table[to_string(kind)] = {{"sweep", rows},
                                  {"breakdown",
                                   {{"particle_map_deviation", number(b.particle_map_deviation)},
                                    {"eigenbasis_misalignment", number(b.eigenbasis_misalignment)}}}};
    }
    r.details["confluence"] = table;
    r.details["constant_shift"] = "n theta / (2 eps^2)";
    r.details["theta_assignment"] = "theta1 = theta + 1/(4 eps^6), theta0 = -1/(4 eps^6); printed theta1 = -theta grows like eps^-4";
}

void c13_mmkdv(CriterionResult& r, Sampler& s, std::uint64_t seed) {
    const Calibration cal = calibrate_conventions(seed);
    r.checks.push_back(check_equal("calibrate_conventions travelling wave", "assignments annihilating the residual",
                                   cal.travelling_solutions, 1));
    r.checks.push_back(check_less("tw_residual scalar, calibrated", "max residual", cal.travelling_max_residual, 1e-12));
    r.checks.push_back(check_equal("calibrate_conventions self-similar", "assignments annihilating the residual",
                                   cal.self_similar_solutions, 1));
    r.checks.push_back(check_less("ss_residual scalar, calibrated", "max residual", cal.self_similar_max_residual, 1e-12));

    Worst tw, ss;
    std::vector<ScalarSample> samples;
    for (int k = 0; k < 100; ++k) {
        ScalarSample x;
        x.v = Mat::Constant(1, 1, s.complex(1.0, 0.5));
        x.p = Mat::Constant(1, 1, s.complex(1.0, 0.5));
        x.z = s.uniform(-2.0, 2.0);
        x.theta = s.complex(1.0, 0.5);
        tw.add(tw_residual(x.v, x.p, s.uniform(-2.0, 2.0), x.theta, cal.travelling));
        ss.add(ss_residual(x.v, x.p, x.z, x.theta, cal.self_similar));
        samples.push_back(x);
    }
    r.checks.push_back(check_less("tw_residual, 100 fresh scalar samples", "max residual", tw.value, 1e-12));
    r.checks.push_back(check_less("ss_residual, 100 fresh scalar samples", "max residual", ss.value, 1e-12));
    const DeformationReport dr = deformation_check(cal, samples, 1e-10);
    r.checks.push_back(check_less("deformation_check, 100 scalar samples", "max deviation", dr.max_deviation, 1e-10));
    r.checks.push_back(check_greater("deformation_check control, omega shifted by 0.5", "min deviation",
                                     dr.min_control_deviation, 1e-6));

    Worst matrix;
    for (int k = 0; k < 20; ++k) {
        // v and p polynomial in one matrix commute.
        const Mat X = s.complex_matrix(2, 1.0);
        const Mat id = Mat::Identity(2, 2);
        const Mat v = s.complex(1.0, 0.5) * id + s.complex(1.0, 0.5) * X;
        const Mat p = s.complex(1.0, 0.5) * id + s.complex(1.0, 0.5) * X + s.complex(0.5, 0.5) * X * X;
        matrix.add(tw_residual(v, p, s.uniform(-2.0, 2.0), s.complex(1.0, 0.5), cal.travelling));
    }
    r.checks.push_back(check_less("tw_residual, commuting n 2 data", "max residual", matrix.value, 1e-10));

    auto sw_json = [](const ConventionSwitch& sw) {
        return json{{"s_cubic", sw.s_cubic}, {"s_comm", to_string(sw.s_comm)}, {"s_linear", sw.s_linear}, {"s_z", sw.s_z}};
    };
    const ConventionSwitch printed = printed_convention();
    r.details["calibrated_travelling"] = sw_json(cal.travelling);
    r.details["calibrated_self_similar"] = sw_json(cal.self_similar);
    r.details["printed"] = sw_json(printed);
    r.details["travelling_matches_printed"] =
        cal.travelling.s_cubic == printed.s_cubic && cal.travelling.s_z == printed.s_z;
    r.details["self_similar_matches_printed"] = cal.self_similar.s_cubic == printed.s_cubic &&
                                                cal.self_similar.s_z == printed.s_z &&
                                                cal.self_similar.s_linear == printed.s_linear;
    r.details["third_order_residual"] = number(dr.max_third_order_residual);
}

void c14_determinism(CriterionResult& r, std::uint64_t seed) {
    std::vector<int> ids;
    for (int i = 1; i < 14; ++i) ids.push_back(i);
    const std::string a = to_json(run_selfcheck(seed, ids)).dump(2);
    const std::string b = to_json(run_selfcheck(seed, ids)).dump(2);
    std::size_t first = 0;
    while (first < std::min(a.size(), b.size()) && a[first] == b[first]) ++first;
    r.checks.push_back(check_equal("two in-process reports for criteria 1..13", "identical (1) or not (0)",
                                   a == b ? 1.0 : 0.0, 1.0));
    r.details["report_bytes"] = a.size();
    if (a != b) r.details["first_difference_at"] = first;
}

}  // namespace

const char* criterion_name(int id) {
    switch (id) {
        case 1: return "level-set construction";
        case 2: return "reduce/embed round trip";
        case 3: return "closed-form Hamiltonians vs trace oracle";
        case 4: return "trace formulas and evenness";
        case 5: return "spectral duality";
        case 6: return "zero curvature";
        case 7: return "isospectral conservation";
        case 8: return "reduction equivariance";
        case 9: return "free flow action variables";
        case 10: return "P_IV self-duality";
        case 11: return "quadruple interaction";
        case 12: return "confluence";
        case 13: return "mmKdV reductions";
        case 14: return "determinism";
    }
    throw Error(ErrorCode::InvalidArgument, "criterion_name: id out of range");
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
    CriterionResult r;
    r.id = id;
    r.name = criterion_name(id);
    Sampler s(seed + static_cast<std::uint64_t>(id));
    try {
        switch (id) {
            case 1: c01_level_set(r, s); break;
            case 2: c02_round_trip(r, s); break;
            case 3: c03_hamiltonians(r, s); break;
            case 4: c04_traces(r, s); break;
            case 5: c05_spectral(r, s); break;
            case 6: c06_zero_curvature(r, s); break;
            case 7: c07_isospectral(r, s); break;
            case 8: c08_equivariance(r, s); break;
            case 9: c09_free_actions(r, s); break;
            case 10: c10_p4_selfduality(r, s); break;
            case 11: c11_quadruple(r, s); break;
            case 12: c12_confluence(r, s); break;
            case 13: c13_mmkdv(r, s, seed); break;
            case 14: c14_determinism(r, seed); break;
        }
    } catch (const Error& e) {
        r.error = e.what();
    }
    return r;
}

SelfcheckReport run_selfcheck(std::uint64_t seed, const std::vector<int>& ids) {
    SelfcheckReport rep;
    rep.seed = seed;
    std::vector<int> todo = ids;
    if (todo.empty())
        for (int i = 1; i <= kCriterionCount; ++i) todo.push_back(i);
    for (const int id : todo) {
        if (id < 1 || id > kCriterionCount)
            throw Error(ErrorCode::InvalidArgument, "run_selfcheck: criterion id out of range");
        rep.criteria.push_back(run_criterion(id, seed));
    }
    return rep;
}

json to_json(const Check& c) {
    json j{{"operation", c.operation}, {"quantity", c.quantity}};
    j["value"] = c.value ? number(*c.value) : json(nullptr);
    if (c.upper)
        j["tolerance"] = {c.tolerance, *c.upper};
    else
        j["tolerance"] = c.tolerance;
    j["relation"] = c.relation;
    j["passed"] = c.passed;
    return j;
}

json to_json(const CriterionResult& r) {
    json checks = json::array();
    for (const Check& c : r.checks) checks.push_back(to_json(c));
    json j{{"id", r.id}, {"name", r.name}, {"passed", r.passed()}, {"checks", checks}, {"details", r.details}};
    if (r.error) j["error"] = *r.error;
    return j;
}

json to_json(const SelfcheckReport& r) {
    json crit = json::array();
    for (const CriterionResult& c : r.criteria) crit.push_back(to_json(c));
    return {{"tool", "painleve_lab"},
            {"seed", r.seed},
            {"generator", "mt19937_64"},
            {"seeding", "criterion k draws from mt19937_64(seed + k)"},
            {"criteria", crit},
            {"all_passed", r.all_passed()}};
}

}  // namespace painleve
