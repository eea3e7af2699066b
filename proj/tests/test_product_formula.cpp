#include "doctest.h"
#include "lindsim/product_formula.hpp"
#include "test_support.hpp"

using namespace lindsim;

namespace {

GeneratorList two_random_s1s(std::mt19937_64& rng, int n) {
    GeneratorList gl;
    gl.generators.push_back(test::random_strongly_1sparse(rng, n).generator());
    gl.generators.push_back(test::random_strongly_1sparse(rng, n).generator());
    gl.labels = {"L1", "L2"};
    return gl;
}

} // namespace

TEST_CASE("required_steps arithmetic") {
    // eps -> 1 limit recovers the bare constant 25.
    CHECK(required_steps(1, 1.0, 1.0, std::nextafter(1.0, 0.0)) == 25);
    CHECK(required_steps(1, 0.0, 1.0, 0.5) == 1);   // mtL = 0 clamps to 1
    CHECK(required_steps(4, 2.0, 0.5, 0.01) == 2000);
    CHECK_THROWS_AS(required_steps(1, 1.0, 1.0, 0.0), validation_error);
    CHECK_THROWS_AS(required_steps(1, 1.0, 1.0, 1.5), validation_error);
}

TEST_CASE("strang_step: single generator is exact for any r") {
    auto rng = test::rng_for(221);
    GeneratorList gl;
    gl.generators.push_back(test::random_strongly_1sparse(rng, 4).generator());
    const double t = 1.2;
    QuantumChannel ex = exact_channel(gl.generators[0], t);
    for (long r : {1L, 3L}) {
        QuantumChannel got = strang_step(gl, t, r);
        CHECK(choi_distance(got, ex).upper < 1e-10);
    }
}

TEST_CASE("strang_step: commuting generators (disjoint supports) exact at r=1") {
    Strongly1SparseSpec p1;
    p1.dim = 4;
    p1.nu = {1, 0, 2, 3};
    p1.off = {0.5, 0.2, 0.0, 0.0};
    p1.diag = {0.0, 0.0, 0.0, 0.0};
    Strongly1SparseSpec p2;
    p2.dim = 4;
    p2.nu = {0, 1, 3, 2};
    p2.off = {0.0, 0.0, 0.7, 0.1};
    p2.diag = {0.0, 0.0, 0.0, 0.0};
    GeneratorList gl;
    gl.generators = {p1.generator(), p2.generator()};
    const double t = 0.8;
    ComplexMatrix total = gl.generators[0].matrix + gl.generators[1].matrix;
    QuantumChannel ex = exact_channel(Superoperator{4, total}, t);
    CHECK(choi_distance(strang_step(gl, t, 1), ex).upper < 1e-10);
}

TEST_CASE("strang_step: error ratio ~4 when r doubles") {
    auto rng = test::rng_for(223);
    GeneratorList gl = two_random_s1s(rng, 4);
    const double t = 1.0;
    ComplexMatrix total = gl.generators[0].matrix + gl.generators[1].matrix;
    QuantumChannel ex = exact_channel(Superoperator{4, total}, t);
    const double e4 = choi_distance(strang_step(gl, t, 4), ex).lower;
    const double e8 = choi_distance(strang_step(gl, t, 8), ex).lower;
    REQUIRE(e8 > 1e-13);
    CHECK(e4 / e8 > 2.0);
    CHECK(e4 / e8 < 8.0);
    CHECK(e8 < e4);
}

TEST_CASE("strang_step: reversal symmetry of the generator list") {
    // The palindromic step treats the list symmetrically: reversing it
    // conjugates the one-step matrix (identical spectrum) and leaves the
    // method unchanged, so the discrepancy decays one order faster than the
    // method error (third order per step, second order accumulated).
    auto rng = test::rng_for(227);
    GeneratorList gl = two_random_s1s(rng, 4);
    GeneratorList rev;
    rev.generators = {gl.generators[1], gl.generators[0]};
    double diffs[2];
    const long rs[2] = {4, 8};
    for (int i = 0; i < 2; ++i) {
        QuantumChannel a = strang_step(gl, 0.9, rs[i]);
        QuantumChannel b = strang_step(rev, 0.9, rs[i]);
        diffs[i] = (a.choi - b.choi).max_abs();
    }
    CHECK(diffs[1] < diffs[0]);
    CHECK(diffs[0] / diffs[1] > 2.5);   // ~4 for second order in r

    // Commuting generators: reversal is exactly neutral.
    Strongly1SparseSpec p1;
    p1.dim = 4;
    p1.nu = {1, 0, 2, 3};
    p1.off = {0.5, 0.2, 0.0, 0.0};
    p1.diag = {0.0, 0.0, 0.0, 0.0};
    Strongly1SparseSpec p2;
    p2.dim = 4;
    p2.nu = {0, 1, 3, 2};
    p2.off = {0.0, 0.0, 0.7, 0.1};
    p2.diag = {0.0, 0.0, 0.0, 0.0};
    GeneratorList cgl, crev;
    cgl.generators = {p1.generator(), p2.generator()};
    crev.generators = {p2.generator(), p1.generator()};
    CHECK((strang_step(cgl, 0.9, 2).choi - strang_step(crev, 0.9, 2).choi).max_abs() < 1e-12);
}

TEST_CASE("strang_step output is CPTP for every r") {
    auto rng = test::rng_for(229);
    GeneratorList gl = two_random_s1s(rng, 4);
    for (long r : {1L, 5L}) CHECK(strang_step(gl, 1.3, r).validate_cptp().pass);
}

TEST_CASE("convergence_study: slope about -2 and all-zero degenerate rows") {
    auto rng = test::rng_for(233);
    GeneratorList gl = two_random_s1s(rng, 4);
    auto table = convergence_study(gl, 1.0, {2, 4, 8, 16});
    REQUIRE(table.rows.size() == 4);
    REQUIRE(table.slope_defined);
    CHECK(table.slope == doctest::Approx(-2.0).epsilon(0.15));
    for (const auto& row : table.rows) CHECK(row.error_lower <= row.error_upper + 1e-15);

    GeneratorList single;
    single.generators.push_back(gl.generators[0]);
    auto table1 = convergence_study(single, 1.0, {1, 2, 4});
    CHECK_FALSE(table1.slope_defined);  // exact rows, slope undefined
    for (const auto& row : table1.rows) CHECK(row.error_lower < 1e-12);

    CHECK_THROWS_AS(convergence_study(gl, 1.0, {4, 2}), validation_error);
}

TEST_CASE("step-count guarantee: at r = required_steps the error is below eps") {
    auto rng = test::rng_for(239);
    GeneratorList gl = two_random_s1s(rng, 3);
    const double t = 1.0, eps = 1e-2;
    double l_sur = 0.0;
    for (const auto& g : gl.generators) l_sur = std::max(l_sur, choi_upper_surrogate(g));
    const long r = required_steps(2, t, l_sur, eps);
    ComplexMatrix total = gl.generators[0].matrix + gl.generators[1].matrix;
    QuantumChannel ex = exact_channel(Superoperator{3, total}, t);
    CHECK(choi_distance(strang_step(gl, t, r), ex).lower <= eps);
}

TEST_CASE("GeneratorList validation rejects mismatched dims and non-generators") {
    GeneratorList gl;
    gl.generators.push_back(Superoperator{2, ComplexMatrix::identity(4)});
    CHECK_THROWS_AS(gl.validate(), validation_error);  // identity does not annihilate trace
    GeneratorList empty;
    CHECK_THROWS_AS(empty.validate(), validation_error);
}
