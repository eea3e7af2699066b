#ifndef LINDSIM_PRODUCT_FORMULA_HPP
#define LINDSIM_PRODUCT_FORMULA_HPP

#include "lindsim/lindblad.hpp"

namespace lindsim {

struct GeneratorList {
    std::vector<Superoperator> generators;
    std::vector<std::string> labels;

    int dim() const;
    void validate() const;              // equal dims, trace annihilation per term
};

// Second-order (Strang) formula: half-steps forward then in reverse,
// (prod_i e^{t L_i / 2r} prod_{j rev} e^{t L_j / 2r})^r, each factor via
// exact_channel. This is the highest usable order: product formulas of
// order three and above need negative time coefficients, which irreversible
// semigroups cannot realize, so no higher-order variant is offered.
QuantumChannel strang_step(const GeneratorList& gens, double t, long r);

// Step count rule: r = ceil(25 (m t L)^{3/2} / sqrt(eps)), clamped to >= 1.
long required_steps(int m, double t, double l_norm, double eps);

// Conservative diamond-norm surrogate for a generator: the Choi upper bound
// ||J(L)||_1.
double choi_upper_surrogate(const Superoperator& gen);

struct ConvergenceRow {
    long r = 0;
    double error_lower = 0.0;
    double error_upper = 0.0;
    double wall_seconds = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    bool slope_defined = false;
    double slope = 0.0;                 // least-squares slope of log(lower) vs log(r)
};

ConvergenceTable convergence_study(const GeneratorList& gens, double t,
                                   const std::vector<long>& r_grid);

// Least-squares slope of log(y) against log(x); pairs with y <= floor are
// dropped, and the slope is undefined with fewer than two survivors.
bool log_log_slope(const std::vector<double>& x, const std::vector<double>& y, double& slope,
                   double floor = 1e-14);

} // namespace lindsim

#endif
