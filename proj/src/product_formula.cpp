#include "lindsim/product_formula.hpp"

#include <chrono>
#include <cmath>

namespace lindsim {

int GeneratorList::dim() const {
    return generators.empty() ? 0 : generators.front().dim;
}

void GeneratorList::validate() const {
    if (generators.empty()) throw validation_error("GeneratorList: empty");
    const int n = generators.front().dim;
    for (const auto& g : generators) {
        if (g.dim != n) throw validation_error("GeneratorList: dimension mismatch");
        const double res = g.trace_annihilation_residual();
        if (res > 1e-10 * std::max(g.matrix.frobenius_norm(), 1.0))
            throw validation_error("GeneratorList: generator does not annihilate trace");
    }
}

QuantumChannel strang_step(const GeneratorList& gens, double t, long r) {
    gens.validate();
    if (r < 1) throw validation_error("strang_step: r must be >= 1");
    if (t < 0) throw validation_error("strang_step: t must be nonnegative");
    const int n = gens.dim();
    const double half = t / (2.0 * static_cast<double>(r));

    ComplexMatrix step = ComplexMatrix::identity(n * n);
    for (const auto& g : gens.generators) {
        ComplexMatrix m = g.matrix;
        m *= cd(half, 0.0);
        step = expm(m) * step;
    }
    for (auto it = gens.generators.rbegin(); it != gens.generators.rend(); ++it) {
        ComplexMatrix m = it->matrix;
        m *= cd(half, 0.0);
        step = expm(m) * step;
    }

    ComplexMatrix acc = ComplexMatrix::identity(n * n);
    ComplexMatrix base = step;
    long k = r;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return channel_from_superop_matrix(acc, n);
}

long required_steps(int m, double t, double l_norm, double eps) {
    if (eps <= 0.0 || eps >= 1.0) throw validation_error("required_steps: eps must lie in (0,1)");
    const double mtl = static_cast<double>(m) * t * l_norm;
    if (mtl <= 0.0) return 1;
    const double raw = 25.0 * std::pow(mtl, 1.5) / std::sqrt(eps);
    // Tiny relative slack so exact rational values land on their integer.
    return std::max(1L, static_cast<long>(std::ceil(raw * (1.0 - 1e-12))));
}

double choi_upper_surrogate(const Superoperator& gen) {
    return trace_norm(choi_from_superop(gen.matrix, gen.dim));
}

bool log_log_slope(const std::vector<double>& x, const std::vector<double>& y, double& slope,
                   double floor) {
    std::vector<double> lx, ly;
    for (size_t i = 0; i < x.size(); ++i) {
        if (y[i] <= floor) continue;
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    if (lx.size() < 2) return false;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(lx.size());
    for (size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-30) return false;
    slope = (n * sxy - sx * sy) / denom;
    return true;
}

ConvergenceTable convergence_study(const GeneratorList& gens, double t,
                                   const std::vector<long>& r_grid) {
    gens.validate();
    for (size_t i = 1; i < r_grid.size(); ++i)
        if (r_grid[i] <= r_grid[i - 1]) throw validation_error("convergence_study: grid must ascend");
    const int n = gens.dim();
    ComplexMatrix total(n * n, n * n);
    for (const auto& g : gens.generators) total += g.matrix;
    QuantumChannel exact = exact_channel(Superoperator{n, total}, t);

    ConvergenceTable table;
    std::vector<double> rs, lows;
    for (long r : r_grid) {
        const auto start = std::chrono::steady_clock::now();
        QuantumChannel approx = strang_step(gens, t, r);
        ChoiDistance d = choi_distance(approx, exact);
        const auto stop = std::chrono::steady_clock::now();
        ConvergenceRow row;
        row.r = r;
        row.error_lower = d.lower;
        row.error_upper = d.upper;
        row.wall_seconds = std::chrono::duration<double>(stop - start).count();
        table.rows.push_back(row);
        rs.push_back(static_cast<double>(r));
        lows.push_back(d.lower);
    }
    table.slope_defined = log_log_slope(rs, lows, table.slope);
    return table;
}

} // namespace lindsim
