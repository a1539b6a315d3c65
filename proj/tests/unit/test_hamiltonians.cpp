#include "oracles.hpp"

#include "painleve/hamiltonians.hpp"
#include "painleve/sampling.hpp"

#include <doctest.h>

using namespace painleve;

namespace {

constexpr SystemKind kKinds[] = {SystemKind::P_I,  SystemKind::P_II,    SystemKind::P_II_poly,
                                 SystemKind::P_IV, SystemKind::HarmOsc, SystemKind::Free};

SystemSpec random_spec(SystemKind k, Sampler& s, bool frozen = false) {
    SystemSpec sp;
    sp.kind = k;
    sp.params.theta = s.complex(1.0, 0.5);
    sp.params.theta0 = s.complex(1.0, 0.5);
    sp.params.theta1 = s.complex(1.0, 0.5);
    sp.params.omega = s.uniform(0.5, 2.0);
    if (frozen) {
        sp.autonomous = true;
        sp.params.tau = s.uniform(-1.0, 1.0);
    }
    return sp;
}

}  // namespace

TEST_SUITE("hamiltonians") {

TEST_CASE("matrix vector field is the finite-difference gradient of H") {
    Sampler s(20);
    for (const SystemKind k : kKinds)
        for (const bool frozen : {false, true}) {
            CAPTURE(to_string(k));
            const SystemSpec sp = random_spec(k, s, frozen);
            const MatrixPhasePoint pt{s.complex_matrix(3, 0.7), s.complex_matrix(3, 0.7), s.uniform(-1.0, 1.0)};
            const auto grad = oracle::matrix_gradient([&](const MatrixPhasePoint& y) { return matrix_hamiltonian(sp, y); }, pt);
            const TangentPair v = matrix_vector_field(sp, pt);
            CHECK(oracle::max_abs(v.dq - grad.dp) < 1e-9);
            CHECK(oracle::max_abs(v.dp + grad.dq) < 1e-9);
        }
}

TEST_CASE("matrix Hamiltonians are conjugation invariant") {
    Sampler s(21);
    for (const SystemKind k : kKinds) {
        const SystemSpec sp = random_spec(k, s);
        const MatrixPhasePoint pt{s.complex_matrix(4, 1.0), s.complex_matrix(4, 1.0), 0.3};
        const Mat G = Mat::Identity(4, 4) + s.complex_matrix(4, 0.3);
        const Mat Gi = G.inverse();
        const MatrixPhasePoint c{G * pt.q * Gi, G * pt.p * Gi, 0.3};
        CHECK(oracle::rel(matrix_hamiltonian(sp, c), matrix_hamiltonian(sp, pt)) < 1e-11);
    }
}

TEST_CASE("free Calogero energy at a hand-computed point") {
    // x = (1, 0), y = (1, 2), g = 1: (1 + 4)/2 + 1/(1 - 0)^2 = 3.5.
    ReducedPoint x;
    x.positions = Vec(2);
    x.positions << 1.0, 0.0;
    x.momenta = Vec(2);
    x.momenta << 1.0, 2.0;
    SystemSpec sp;
    CHECK(std::abs(reduced_hamiltonian(sp, x) - Cplx(3.5)) < 1e-14);
    CHECK(std::abs(reduced_hamiltonian_closed(sp, x) - Cplx(3.5)) < 1e-14);
}

TEST_CASE("closed forms agree with the trace oracle on both slices") {
    Sampler s(22);
    for (const SystemKind k : kKinds)
        for (const Slice sl : {Slice::Q_DIAG, Slice::P_DIAG})
            for (int n = 1; n <= 6; ++n)
                for (int rep = 0; rep < 5; ++rep) {
                    CAPTURE(to_string(k));
                    CAPTURE(to_string(sl));
                    CAPTURE(n);
                    const SystemSpec sp = random_spec(k, s, rep % 2 == 1);
                    const ReducedPoint x = s.reduced_point(n, s.uniform(0.5, 2.0), sl, s.uniform(-1.0, 1.0));
                    CHECK(oracle::rel(reduced_hamiltonian_closed(sp, x), reduced_hamiltonian(sp, x)) < 1e-10);
                }
}

TEST_CASE("reduced vector field is Hamiltonian for the reduced energy") {
    Sampler s(23);
    for (const SystemKind k : kKinds)
        for (const Slice sl : {Slice::Q_DIAG, Slice::P_DIAG}) {
            CAPTURE(to_string(k));
            CAPTURE(to_string(sl));
            const SystemSpec sp = random_spec(k, s);
            const ReducedPoint x = s.reduced_point(4, 1.0, sl, 0.4);
            const auto grad = oracle::reduced_gradient([&](const ReducedPoint& y) { return reduced_hamiltonian(sp, y); }, x);
            const ReducedVelocity v = reduced_vector_field(sp, x);
            // On P_DIAG the eigenvalues of p play the momentum role.
            const double sign = sl == Slice::Q_DIAG ? 1.0 : -1.0;
            CHECK((v.positions - sign * grad.momenta).cwiseAbs().maxCoeff() < 1e-8);
            CHECK((v.momenta + sign * grad.positions).cwiseAbs().maxCoeff() < 1e-8);
        }
}

TEST_CASE("reduced positions move like the diagonal of the matrix flow") {
    Sampler s(24);
    for (const SystemKind k : kKinds) {
        const SystemSpec sp = random_spec(k, s);
        const ReducedPoint x = s.reduced_point(3, 1.0, Slice::Q_DIAG, 0.2);
        const TangentPair mv = matrix_vector_field(sp, embed(x));
        CHECK((reduced_vector_field(sp, x).positions - mv.dq.diagonal()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("P_IV involution preserves the energy under the derived relabeling") {
    Sampler s(25);
    double printed_worst = 0.0;
    for (int n = 1; n <= 5; ++n)
        for (const Slice sl : {Slice::Q_DIAG, Slice::P_DIAG}) {
            SystemSpec sp = random_spec(SystemKind::P_IV, s);
            const ReducedPoint x = s.reduced_point(n, 1.0, sl, s.uniform(-1.0, 1.0));
            const P4Involution inv = p4_involution(x, sp.params.theta0, sp.params.theta1);
            CHECK(inv.point.slice == opposite(sl));
            SystemSpec image = sp;
            image.params.theta0 = inv.theta0;
            image.params.theta1 = inv.theta1;
            CHECK(oracle::rel(reduced_hamiltonian(image, inv.point), reduced_hamiltonian(sp, x)) < 1e-10);

            const P4Involution back = p4_involution(inv.point, inv.theta0, inv.theta1);
            CHECK(permuted_deviation(back.point, x) == 0.0);
            CHECK(std::abs(back.theta0 - sp.params.theta0) < 1e-15);
            CHECK(std::abs(back.theta1 - sp.params.theta1) < 1e-15);

            const auto pr = p4_relabeling_as_printed(sp.params.theta0, sp.params.theta1);
            image.params.theta0 = pr.first;
            image.params.theta1 = pr.second;
            printed_worst = std::max(printed_worst,
                                     oracle::rel(reduced_hamiltonian(image, inv.point), reduced_hamiltonian(sp, x)));
        }
    CHECK(printed_worst > 1e-3);
}

TEST_CASE("harmonic oscillator self-duality") {
    Sampler s(26);
    SystemSpec sp;
    sp.kind = SystemKind::HarmOsc;
    sp.params.omega = 1.7;
    for (int n = 1; n <= 5; ++n) {
        const ReducedPoint x = s.reduced_point(n, 1.0, Slice::Q_DIAG);
        const ReducedPoint y = harmosc_selfduality(x, sp.params.omega);
        CHECK(y.slice == Slice::P_DIAG);
        // H(q, p) = Tr p^2/2 + w^2 Tr q^2/2 is invariant under the rotation q -> p/w, p -> -w q.
        CHECK(oracle::rel(reduced_hamiltonian(sp, y), reduced_hamiltonian(sp, x)) < 1e-10);
        const ReducedPoint z = harmosc_selfduality(y, sp.params.omega);
        CHECK((z.positions + x.positions).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((z.momenta + x.momenta).cwiseAbs().maxCoeff() < 1e-14);
    }
    CHECK_THROWS_AS(harmosc_selfduality(s.reduced_point(2, 1.0, Slice::Q_DIAG), 0.0), Error);
}

}
