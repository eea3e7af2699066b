#include "doctest.h"
#include "lindsim/applications.hpp"
#include "lindsim/product_formula.hpp"
#include "test_support.hpp"

using namespace lindsim;

TEST_CASE("oscillator_model: two-level decay rate and ground-state stationarity") {
    OscillatorSpec spec;
    spec.levels = 2;
    spec.direction = OscillatorDirection::Down;
    LindbladModel m = oscillator_model(spec);
    Superoperator s = liouvillian(m);
    // With the 1/N = 1/2 prefactor, rho_11(t) = e^{-t/2} rho_11(0).
    const double t = 1.3;
    QuantumChannel e = exact_channel(s, t);
    ComplexMatrix rho(2, 2);
    rho(1, 1) = 1.0;
    CHECK(e.apply(rho)(1, 1).real() == doctest::Approx(std::exp(-t / 2.0)).epsilon(1e-10));

    // Ground state is stationary: a|0> = 0.
    ComplexMatrix ground(2, 2);
    ground(0, 0) = 1.0;
    CHECK(s.apply(ground).max_abs() < 1e-14);
}

TEST_CASE("oscillator_model: N=8 via the sparse-operator method meets eps = 1e-3") {
    OscillatorSpec spec;
    spec.levels = 8;
    spec.direction = OscillatorDirection::Down;
    LindbladModel m = oscillator_model(spec);
    const auto& l = m.lindblad_ops[0];
    auto cover = permutation_cover(l, 1);
    // Simulating the original operator for time t equals simulating the
    // rescaled one for time rescale^2 * t.
    const double t = 1.0, eps_target = 1e-3;
    const double t_eff = cover.rescale * cover.rescale * t;
    const long n = steps_for_accuracy(t_eff, 1, eps_target);
    QuantumChannel approx = sparse_op_evolution(cover, t_eff, n);
    QuantumChannel exact = exact_channel(liouvillian(m), t);
    CHECK(choi_distance(approx, exact).lower <= eps_target);
}

TEST_CASE("oscillator spec validation and mixed direction") {
    OscillatorSpec bad;
    bad.levels = 1;
    CHECK_THROWS_AS(oscillator_model(bad), validation_error);

    OscillatorSpec mixed;
    mixed.levels = 3;
    mixed.direction = OscillatorDirection::Mixed;
    mixed.lambda = 0.4;
    LindbladModel m = oscillator_model(mixed);
    CHECK(m.lindblad_ops.size() == 2);
    // Generator equals lambda L_up + (1 - lambda) L_down.
    OscillatorSpec up;
    up.levels = 3;
    up.direction = OscillatorDirection::Up;
    OscillatorSpec down;
    down.levels = 3;
    down.direction = OscillatorDirection::Down;
    ComplexMatrix want = liouvillian(oscillator_model(up)).matrix * cd(0.4, 0.0) +
                         liouvillian(oscillator_model(down)).matrix * cd(0.6, 0.0);
    CHECK((liouvillian(m).matrix - want).max_abs() < 1e-12);
}

TEST_CASE("stochastic walk: classical reduction on diagonal states") {
    // Unweighted triangle without Hamiltonian: populations follow the
    // classical continuous-time Markov chain and stay exactly diagonal.
    WalkSpec spec = unweighted_walk(3, {{0, 1}, {1, 2}, {0, 2}}, WalkHamiltonian::None);
    Superoperator gen = stochastic_walk_generator(spec);
    ComplexMatrix rho0(3, 3);
    rho0(0, 0) = 1.0;
    const double t = 0.7;
    ComplexMatrix rho_t = exact_channel(gen, t).apply(rho0);

    // Classical oracle: dp/dt = Q p with Q = M - diag(column sums of M).
    ComplexMatrix m = spec.rate_matrix();
    ComplexMatrix q(3, 3);
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            if (k != l) q(k, l) = m(k, l);
        }
    for (int l = 0; l < 3; ++l) {
        cd col = 0.0;
        for (int k = 0; k < 3; ++k)
            if (k != l) col += m(k, l);
        q(l, l) = -col;
    }
    ComplexMatrix pt = expm(q * cd(t, 0.0));
    for (int k = 0; k < 3; ++k)
        CHECK(rho_t(k, k).real() == doctest::Approx(pt(k, 0).real()).epsilon(1e-10));
    double offmass = 0.0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (r != c) offmass = std::max(offmass, std::abs(rho_t(r, c)));
    CHECK(offmass < 1e-12);

    // Doubly stochastic structure: columns of M sum to 1 on a regular graph.
    for (int l = 0; l < 3; ++l) {
        double col = 0.0;
        for (int k = 0; k < 3; ++k) col += m(k, l).real();
        CHECK(col == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("stochastic walk: M=0 gives a unitary channel") {
    WalkSpec spec;
    spec.vertices = 3;
    spec.hamiltonian = WalkHamiltonian::Custom;
    auto rng = test::rng_for(251);
    spec.custom_h = test::random_hermitian(rng, 3);
    Superoperator gen = stochastic_walk_generator(spec);
    const double t = 0.9;
    QuantumChannel e = exact_channel(gen, t);
    ComplexMatrix h = spec.custom_h * cd(t, 0.0);
    h *= cd(0.0, -1.0);
    ComplexMatrix u = expm(h);
    auto rng2 = test::rng_for(252);
    ComplexMatrix rho = test::random_density(rng2, 3);
    CHECK((e.apply(rho) - u * rho * u.adjoint()).max_abs() < 1e-10);
}

TEST_CASE("stationary_state: triangle walk relaxes to I/3 with any Hamiltonian") {
    WalkSpec spec = unweighted_walk(3, {{0, 1}, {1, 2}, {0, 2}}, WalkHamiltonian::Adjacency);
    Superoperator gen = stochastic_walk_generator(spec);
    auto res = stationary_state(gen);
    CHECK(res.unique);
    CHECK(res.residual < 1e-9);
    CHECK((res.rho - ComplexMatrix::identity(3) * cd(1.0 / 3.0, 0.0)).max_abs() < 1e-9);
}

TEST_CASE("stationary_state: P3 walk with Laplacian Hamiltonian, known fixed point") {
    WalkSpec spec = unweighted_walk(3, {{0, 1}, {1, 2}}, WalkHamiltonian::Laplacian);
    Superoperator gen = stochastic_walk_generator(spec);
    auto res = stationary_state(gen);
    REQUIRE(res.unique);
    ComplexMatrix want(3, 3);
    want(0, 0) = 2.0 / 7.0;
    want(1, 1) = 3.0 / 7.0;
    want(2, 2) = 2.0 / 7.0;
    want(0, 2) = 1.0 / 14.0;
    want(2, 0) = 1.0 / 14.0;
    want(0, 1) = cd(-1.0 / 28.0, 1.0 / 28.0);
    want(1, 0) = cd(-1.0 / 28.0, -1.0 / 28.0);
    want(1, 2) = cd(-1.0 / 28.0, -1.0 / 28.0);
    want(2, 1) = cd(-1.0 / 28.0, 1.0 / 28.0);
    CHECK((res.rho - want).max_abs() < 1e-6);
    CHECK(res.residual < 1e-9);

    // Long-time integration cross-check (t = 200).
    ComplexMatrix rho0(3, 3);
    rho0(0, 0) = 1.0;
    ComplexMatrix late = exact_channel(gen, 200.0).apply(rho0);
    CHECK((late - want).max_abs() < 1e-6);
}

TEST_CASE("stationary_state: zero generator reports non-uniqueness") {
    Superoperator zero{2, ComplexMatrix(4, 4)};
    auto res = stationary_state(zero);
    CHECK_FALSE(res.unique);
    CHECK(res.nullspace_dim > 1);
}

TEST_CASE("trace is preserved along walk trajectories") {
    auto rng = test::rng_for(257);
    WalkSpec spec = unweighted_walk(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, WalkHamiltonian::Adjacency);
    Superoperator gen = stochastic_walk_generator(spec);
    ComplexMatrix rho = test::random_density(rng, 4);
    for (double t : {0.2, 1.0, 5.0}) {
        ComplexMatrix out = exact_channel(gen, t).apply(rho);
        CHECK(std::abs(out.trace() - cd(1.0, 0.0)) < 1e-10);
    }
}

TEST_CASE("hypercube decoherence: p=0 / lambda=0 reduce to the unitary walk") {
    for (auto model : {HypercubeModel::Alagic, HypercubeModel::Strauch}) {
        QuantumChannel e = hypercube_decoherence(2, model, 0.0, 0.8);
        ComplexMatrix a = hypercube_adjacency(2);
        ComplexMatrix h = a * cd(0.0, -0.8);
        ComplexMatrix u = expm(h);
        auto rng = test::rng_for(263);
        ComplexMatrix rho = test::random_density(rng, 4);
        CHECK((e.apply(rho) - u * rho * u.adjoint()).max_abs() < 1e-10);
    }
}

TEST_CASE("hypercube Strauch: dissipator cross-checks against identical-coordinate") {
    const double lambda = 0.5, t = 1.0;
    const int n = 2, dim = 4;
    // Dissipative part alone (Hamiltonian off) equals the closed-form
    // identical-coordinate channel with a_x = lambda/2, c_x = 0.
    IdenticalCoordinateSpec ic;
    ic.dim = dim;
    ic.a.assign(dim, lambda / 2.0);
    ic.c.assign(dim, 0.0);
    QuantumChannel closed = identical_coordinate_channel(ic, t);
    QuantumChannel viagks = exact_channel(liouvillian(ic.gks()), t);
    CHECK(choi_distance(closed, viagks).upper < 1e-9);

    // Full Strauch channel against the exact oracle of its own generator.
    QuantumChannel full = hypercube_decoherence(n, HypercubeModel::Strauch, lambda, t);
    QuantumChannel oracle = exact_channel(hypercube_generator(n, HypercubeModel::Strauch, lambda), t);
    CHECK(choi_distance(full, oracle).upper < 1e-8);
    CHECK(full.validate_cptp().pass);
}

TEST_CASE("Strauch dissipator: GKS route equals the projector-operator route") {
    // Strauch dissipator with lambda = 0.3 on n = 2 qubits: Lindblad
    // operators sqrt(lambda) |x><x| give exactly the identical-coordinate
    // instance a_x = lambda/2, c_x = 0.
    const double lambda = 0.3;
    const int dim = 4;
    IdenticalCoordinateSpec ic;
    ic.dim = dim;
    ic.a.assign(dim, lambda / 2.0);
    ic.c.assign(dim, 0.0);
    LindbladModel ops;
    ops.dim = dim;
    for (int x = 0; x < dim; ++x) {
        ComplexMatrix l(dim, dim);
        l(x, x) = std::sqrt(lambda);
        ops.lindblad_ops.push_back(l);
    }
    CHECK((liouvillian(ic.gks()).matrix - liouvillian(ops).matrix).max_abs() < 1e-12);
}

TEST_CASE("hypercube Alagic: generator equals the term-by-term assembly") {
    const double p = 0.5;
    const int n = 2, dim = 4;
    Superoperator got = hypercube_generator(n, HypercubeModel::Alagic, p);

    // Oracle: -(1-p) i[A, .] + p sum_{j,alpha} D[Pi_alpha^{(j)}].
    ComplexMatrix a = hypercube_adjacency(n);
    LindbladModel m;
    m.dim = dim;
    m.hamiltonian = a * cd(1.0 - p, 0.0);
    for (int j = 0; j < n; ++j)
        for (int alpha = 0; alpha < 2; ++alpha) {
            ComplexMatrix proj(dim, dim);
            for (int x = 0; x < dim; ++x)
                if (((x >> (n - 1 - j)) & 1) == alpha) proj(x, x) = std::sqrt(p);
            m.lindblad_ops.push_back(proj);
        }
    CHECK((got.matrix - liouvillian(m).matrix).max_abs() < 1e-12);

    CHECK_THROWS_AS(hypercube_generator(2, HypercubeModel::Alagic, 2.5), validation_error);
}

TEST_CASE("hypercube Strauch n=2 channel vs exact oracle at lambda=0.5") {
    QuantumChannel got = hypercube_decoherence(2, HypercubeModel::Strauch, 0.5, 1.0);
    CHECK(got.validate_cptp().pass);
    ComplexMatrix rho0(4, 4);
    rho0(0, 0) = 1.0;
    ComplexMatrix out = got.apply(rho0);
    CHECK(std::abs(out.trace() - cd(1.0, 0.0)) < 1e-10);
}
