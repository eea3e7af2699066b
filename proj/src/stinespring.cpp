#include "lindsim/stinespring.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lindsim {

int SparsityPattern::nu_power(int x, int i) const {
    int z = x;
    const int r = order[x];
    int steps = ((i % r) + r) % r;
    for (int s = 0; s < steps; ++s) z = nu[z];
    return z;
}

std::vector<std::vector<int>> SparsityPattern::orbits() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(dim, 0);
    for (int x = 0; x < dim; ++x) {
        if (seen[x]) continue;
        std::vector<int> orbit;
        int z = x;
        do {
            seen[z] = 1;
            orbit.push_back(z);
            z = nu[z];
        } while (z != x);
        out.push_back(std::move(orbit));
    }
    return out;
}

void SparsityPattern::validate() const {
    if (dim <= 0 || static_cast<int>(nu.size()) != dim || static_cast<int>(order.size()) != dim)
        throw validation_error("SparsityPattern: shape mismatch");
    std::vector<char> hit(dim, 0);
    for (int x = 0; x < dim; ++x) {
        if (nu[x] < 0 || nu[x] >= dim) throw validation_error("SparsityPattern: nu out of range");
        if (hit[nu[x]]) throw validation_error("SparsityPattern: nu is not a permutation");
        hit[nu[x]] = 1;
    }
    for (int x = 0; x < dim; ++x) {
        if (order[x] < 1 || order[x] > d) throw validation_error("SparsityPattern: orbit size exceeds d");
        if (nu_power(x, order[x]) != x || order[nu[x]] != order[x])
            throw validation_error("SparsityPattern: inconsistent orbit orders");
    }
}

SparsityPattern pattern_from_sets(int dim, const std::vector<std::vector<int>>& sets) {
    SparsityPattern p;
    p.dim = dim;
    p.nu.assign(dim, -1);
    p.order.assign(dim, 0);
    p.d = 1;
    std::vector<char> used(dim, 0);
    for (const auto& s : sets) {
        if (s.empty()) throw validation_error("pattern_from_sets: empty orbit");
        for (size_t i = 0; i < s.size(); ++i) {
            const int x = s[i];
            if (x < 0 || x >= dim || used[x]) throw validation_error("pattern_from_sets: not a partition");
            used[x] = 1;
            p.nu[x] = s[(i + 1) % s.size()];
            p.order[x] = static_cast<int>(s.size());
        }
        p.d = std::max(p.d, static_cast<int>(s.size()));
    }
    for (int x = 0; x < dim; ++x)
        if (!used[x]) throw validation_error("pattern_from_sets: not a partition");
    p.validate();
    return p;
}

SparsityPattern singleton_pattern(int dim) {
    SparsityPattern p;
    p.dim = dim;
    p.d = 1;
    p.nu.resize(dim);
    p.order.assign(dim, 1);
    for (int x = 0; x < dim; ++x) p.nu[x] = x;
    return p;
}

double GramMatrix::trace_constraint_residual() const {
    const int n = pattern.dim;
    double worst = 0.0;
    for (int x = 0; x < n; ++x) {
        const int r = pattern.order[x];
        cd s = 0.0;
        for (int j = 0; j < r; ++j) s += coeff(j, j, x, x);
        worst = std::max(worst, std::abs(s - 1.0));
        for (int i = 1; i < r; ++i) {
            cd z = 0.0;
            const int y = pattern.nu_power(x, i);
            for (int j = 0; j < r; ++j) z += coeff((i + j) % r, j, x, y);
            worst = std::max(worst, std::abs(z));
        }
    }
    return worst;
}

GramMatrix gram_of_channel(const QuantumChannel& channel, const SparsityPattern& pattern,
                           double support_tol) {
    pattern.validate();
    const int n = pattern.dim;
    if (channel.dim_in != n || channel.dim_out != n)
        throw validation_error("gram_of_channel: dimension mismatch");
    const double scale = std::max(channel.choi.frobenius_norm(), 1e-300);

    // Support check: E(|x><y|) must live on S_x x S_y.
    std::vector<std::vector<char>> allowed(n, std::vector<char>(n, 0));
    for (int x = 0; x < n; ++x)
        for (int i = 0; i < pattern.order[x]; ++i) allowed[x][pattern.nu_power(x, i)] = 1;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            double mass = 0.0;
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v) {
                    if (allowed[x][u] && allowed[y][v]) continue;
                    mass += std::norm(channel.choi(u * n + x, v * n + y));
                }
            if (std::sqrt(mass) > support_tol * scale)
                throw validation_error("gram_of_channel: channel support violates pattern at (x,y)=(" +
                                       std::to_string(x) + "," + std::to_string(y) + ")");
        }

    GramMatrix g;
    g.pattern = pattern;
    g.m = ComplexMatrix(pattern.d * n, pattern.d * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int i = 0; i < pattern.order[x]; ++i)
                for (int j = 0; j < pattern.order[y]; ++j)
                    g.m(i * n + x, j * n + y) =
                        channel.choi(pattern.nu_power(x, i) * n + x, pattern.nu_power(y, j) * n + y);
    return g;
}

AncillaFamily gram_vectors_full(const GramMatrix& gram, double psd_tol) {
    const int n = gram.pattern.dim;
    const int d = gram.pattern.d;
    const int side = d * n;
    const double scale = std::max(gram.m.frobenius_norm(), 1e-300);
    auto spec = hermitian_eig(gram.m);
    if (spec.eigenvalues.front() < -psd_tol * scale)
        throw validation_error("gram_vectors_full: Gram matrix fails PSD beyond tolerance");

    AncillaFamily fam;
    fam.dim = n;
    fam.d = d;
    fam.anc_dim = d * n + 2;
    fam.phi.assign(static_cast<size_t>(n) * d, std::vector<cd>(fam.anc_dim, cd(0.0, 0.0)));
    // phi_{x,i} = row (i*N + x) of U sqrt(D); inner products reproduce M.
    for (int x = 0; x < n; ++x)
        for (int i = 0; i < d; ++i) {
            auto& v = fam.at(x, i);
            for (int mcol = 0; mcol < side; ++mcol) {
                const double w = std::sqrt(std::max(spec.eigenvalues[mcol], 0.0));
                v[mcol] = spec.eigenvectors(i * n + x, mcol) * w;
            }
        }
    return fam;
}

LowRankResult low_rank_gram_vector(const GramEntryOracle& oracle, int rank,
                                   const std::vector<int>& s, int x) {
    if (static_cast<int>(s.size()) != rank)
        throw validation_error("low_rank_gram_vector: |S| must equal the rank");
    LowRankResult res;
    const bool member = std::find(s.begin(), s.end(), x) != s.end();

    std::vector<int> ext = s;
    if (!member) ext.push_back(x);
    const int m = static_cast<int>(ext.size());
    ComplexMatrix mx(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            mx(r, c) = oracle(ext[r], ext[c]);
            res.queries++;
        }

    ComplexMatrix ms(rank, rank);
    for (int r = 0; r < rank; ++r)
        for (int c = 0; c < rank; ++c) ms(r, c) = mx(r, c);
    auto spec = hermitian_eig(ms);
    const double lo = spec.eigenvalues.front();
    const double hi = spec.eigenvalues.back();
    if (lo < 1e-10 * std::max(hi, 1e-300))
        throw validation_error("low_rank_gram_vector: principal submatrix is rank-deficient");
    res.condition_number = hi / lo;

    // Columns of sqrt(D) U^dag are the Gram vectors of M_S.
    ComplexMatrix vs(rank, rank);
    for (int r = 0; r < rank; ++r)
        for (int c = 0; c < rank; ++c)
            vs(r, c) = std::sqrt(std::max(spec.eigenvalues[r], 0.0)) * std::conj(spec.eigenvectors(c, r));
    if (member) {
        const int idx = static_cast<int>(std::find(s.begin(), s.end(), x) - s.begin());
        res.v.resize(rank);
        for (int r = 0; r < rank; ++r) res.v[r] = vs(r, idx);
        return res;
    }

    // Solve M_S c = M[S, x]; then v_x = (v_1 ... v_r) c. Gaussian elimination
    // with partial pivoting is plenty at these sizes.
    std::vector<cd> rhs(rank);
    for (int r = 0; r < rank; ++r) rhs[r] = mx(r, rank);
    ComplexMatrix g = ms;
    std::vector<cd> b = rhs;
    for (int col = 0; col < rank; ++col) {
        int piv = col;
        for (int r = col + 1; r < rank; ++r)
            if (std::abs(g(r, col)) > std::abs(g(piv, col))) piv = r;
        if (piv != col) {
            for (int c = 0; c < rank; ++c) std::swap(g(col, c), g(piv, c));
            std::swap(b[col], b[piv]);
        }
        const cd pv = g(col, col);
        for (int r = col + 1; r < rank; ++r) {
            const cd f = g(r, col) / pv;
            for (int c = col; c < rank; ++c) g(r, c) -= f * g(col, c);
            b[r] -= f * b[col];
        }
    }
    std::vector<cd> coef(rank);
    for (int r = rank - 1; r >= 0; --r) {
        cd acc = b[r];
        for (int c = r + 1; c < rank; ++c) acc -= g(r, c) * coef[c];
        coef[r] = acc / g(r, r);
    }
    res.v.assign(rank, cd(0.0, 0.0));
    for (int c = 0; c < rank; ++c)
        for (int r = 0; r < rank; ++r) res.v[r] += vs(r, c) * coef[c];
    return res;
}

int numeric_rank(const ComplexMatrix& m, double rel_tol) {
    auto spec = hermitian_eig(m);
    const double top = std::max(std::abs(spec.eigenvalues.back()), std::abs(spec.eigenvalues.front()));
    int r = 0;
    for (double ev : spec.eigenvalues)
        if (ev > rel_tol * std::max(top, 1e-300)) ++r;
    return r;
}

std::vector<int> greedy_principal_submatrix(const ComplexMatrix& m, int rank) {
    const int n = m.rows();
    std::vector<int> sel;
    for (int step = 0; step < rank; ++step) {
        double best = -1.0;
        int best_idx = -1;
        for (int cand = 0; cand < n; ++cand) {
            if (std::find(sel.begin(), sel.end(), cand) != sel.end()) continue;
            std::vector<int> trial = sel;
            trial.push_back(cand);
            const int k = static_cast<int>(trial.size());
            ComplexMatrix sub(k, k);
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) sub(r, c) = m(trial[r], trial[c]);
            auto spec = hermitian_eig(sub);
            if (spec.eigenvalues.front() > best) {
                best = spec.eigenvalues.front();
                best_idx = cand;
            }
        }
        if (best_idx < 0) throw numeric_error("greedy_principal_submatrix: selection failed");
        sel.push_back(best_idx);
    }
    return sel;
}

double SparseStinespringIsometry::isometry_defect() const {
    ComplexMatrix g = v.adjoint() * v;
    return (g - ComplexMatrix::identity(v.cols())).max_abs();
}

SparseStinespringIsometry isometry_from_ancilla(const SparsityPattern& pattern,
                                                const AncillaFamily& ancilla, double tol) {
    pattern.validate();
    const int n = pattern.dim;
    const int a = ancilla.anc_dim;
    SparseStinespringIsometry iso;
    iso.pattern = pattern;
    iso.ancilla = ancilla;
    iso.v = ComplexMatrix(n * a, n);
    for (int x = 0; x < n; ++x)
        for (int i = 0; i < pattern.order[x]; ++i) {
            const int u = pattern.nu_power(x, i);
            const auto& phi = ancilla.at(x, i);
            for (int q = 0; q < a; ++q) iso.v(u * a + q, x) += phi[q];
        }
    const double defect = iso.isometry_defect();
    if (defect > tol)
        throw numeric_error("isometry_from_ancilla: V^dag V deviates from identity by " +
                            std::to_string(defect));
    return iso;
}

QuantumChannel channel_from_isometry(const SparseStinespringIsometry& iso) {
    const int n = iso.pattern.dim;
    const int a = iso.ancilla.anc_dim;
    QuantumChannel e;
    e.dim_in = n;
    e.dim_out = n;
    e.choi = ComplexMatrix(n * n, n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v) {
                    cd s = 0.0;
                    for (int q = 0; q < a; ++q)
                        s += iso.v(u * a + q, x) * std::conj(iso.v(v * a + q, y));
                    if (s != cd(0.0, 0.0)) e.choi(u * n + x, v * n + y) = s;
                }
    return e;
}

namespace {

ComplexMatrix outer(const std::vector<cd>& v) {
    const int n = static_cast<int>(v.size());
    ComplexMatrix p(n, n);
    double nrm2 = 0.0;
    for (const auto& z : v) nrm2 += std::norm(z);
    if (nrm2 < 1e-28) return p;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) p(r, c) = v[r] * std::conj(v[c]) / nrm2;
    return p;
}

// Controlled gate P (x) U + (I - P) (x) I with the projector on the trailing
// factors and the target on the leading index register.
ComplexMatrix controlled_on_tail(const ComplexMatrix& u_index, const ComplexMatrix& proj_tail) {
    const int dt = proj_tail.rows();
    ComplexMatrix rest = ComplexMatrix::identity(dt) - proj_tail;
    return kron(u_index, proj_tail) + kron(ComplexMatrix::identity(u_index.rows()), rest);
}

} // namespace

ComplexMatrix householder_preparation(const std::vector<cd>& target) {
    const int n = static_cast<int>(target.size());
    double nrm = 0.0;
    for (const auto& z : target) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    if (nrm < 1e-14) return ComplexMatrix::identity(n);
    std::vector<cd> t(target);
    for (auto& z : t) z /= nrm;
    cd phase = 1.0;
    if (std::abs(t[0]) > 1e-14) phase = t[0] / std::abs(t[0]);
    std::vector<cd> v(n);
    double vnorm2 = 0.0;
    for (int i = 0; i < n; ++i) {
        v[i] = t[i] - (i == 0 ? phase : cd(0.0, 0.0));
        vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 < 1e-28) {
        ComplexMatrix u = ComplexMatrix::identity(n);
        u *= phase;
        return u;
    }
    ComplexMatrix u(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            u(r, c) = (r == c ? cd(1.0, 0.0) : cd(0.0, 0.0)) - 2.0 * v[r] * std::conj(v[c]) / vnorm2;
    u *= phase;
    return u;
}

TwoStageReport verify_two_stage(const SparseStinespringIsometry& iso, int x, double tol) {
    const auto& pattern = iso.pattern;
    const auto& fam = iso.ancilla;
    const int n = pattern.dim;
    const int d = pattern.order[x];
    const int a = fam.anc_dim;
    TwoStageReport rep;
    rep.d = d;

    // Orthogonality precondition (trace preservation across orbit shifts):
    // sum_j <phi_{x,(j+k) mod d} | phi_{nu^k(x),j}> = 0.
    auto inner = [](const std::vector<cd>& u, const std::vector<cd>& v) {
        cd s = 0.0;
        for (size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
        return s;
    };
    for (int k = 1; k < d; ++k) {
        cd s = 0.0;
        const int z = pattern.nu_power(x, k);
        for (int j = 0; j < d; ++j) s += inner(fam.at(x, (j + k) % d), fam.at(z, j));
        rep.orthogonality_residual = std::max(rep.orthogonality_residual, std::abs(s));
    }
    if (rep.orthogonality_residual > tol)
        throw numeric_error("verify_two_stage: ancilla family violates the shifted-overlap orthogonality "
                            "precondition (residual " + std::to_string(rep.orthogonality_residual) + ")");

    // Index register of dimension d+2; P cycles the first d basis states and
    // fixes the two spares (which exist to host the transient labels |-1>,
    // |d> but, with mod-d exponent arithmetic, are never populated).
    const int dd = d + 2;
    const int total = dd * n * a;
    ComplexMatrix p_shift(dd, dd);
    for (int j = 0; j < d; ++j) p_shift(((j - 1) % d + d) % d, j) = 1.0;
    for (int j = d; j < dd; ++j) p_shift(j, j) = 1.0;
    auto p_pow = [&](int e) {
        ComplexMatrix q = ComplexMatrix::identity(dd);
        const ComplexMatrix base = e >= 0 ? p_shift : p_shift.adjoint();
        for (int i = 0; i < std::abs(e); ++i) q = base * q;
        return q;
    };

    auto sys_proj = [&](int z) {
        ComplexMatrix p(n, n);
        p(z, z) = 1.0;
        return p;
    };

    // U_forward, applied left to right in construction order.
    ComplexMatrix u_fwd = ComplexMatrix::identity(total);
    for (int kp = 0; kp < d; ++kp) {
        const int z = pattern.nu_power(x, kp);
        std::vector<cd> weights(dd, cd(0.0, 0.0));
        for (int i = 0; i < d; ++i) {
            double nrm = 0.0;
            for (const auto& zz : fam.at(z, i)) nrm += std::norm(zz);
            weights[i] = std::sqrt(nrm);
        }
        ComplexMatrix w = householder_preparation(weights);
        ComplexMatrix gate = kron(w, kron(sys_proj(z), ComplexMatrix::identity(a))) +
                             kron(ComplexMatrix::identity(dd),
                                  kron(ComplexMatrix::identity(n) - sys_proj(z), ComplexMatrix::identity(a)));
        u_fwd = gate * u_fwd;
    }
    for (int kp = 0; kp < d; ++kp) {
        const int z = pattern.nu_power(x, kp);
        for (int i = 0; i < d; ++i) {
            ComplexMatrix phi_gate = householder_preparation(fam.at(z, i));
            ComplexMatrix pidx(dd, dd);
            pidx(i, i) = 1.0;
            ComplexMatrix ctrl = kron(pidx, sys_proj(z));
            ComplexMatrix gate = kron(ctrl, phi_gate) +
                                 kron(kron(ComplexMatrix::identity(dd), ComplexMatrix::identity(n)) - ctrl,
                                      ComplexMatrix::identity(a));
            u_fwd = gate * u_fwd;
        }
    }
    ComplexMatrix nu_mat(n, n);
    for (int z = 0; z < n; ++z) nu_mat(pattern.nu[z], z) = 1.0;
    for (int i = 1; i < d; ++i) {
        ComplexMatrix pidx(dd, dd);
        pidx(i, i) = 1.0;
        ComplexMatrix nui = ComplexMatrix::identity(n);
        for (int s = 0; s < i; ++s) nui = nu_mat * nui;
        ComplexMatrix gate = kron(pidx, kron(nui, ComplexMatrix::identity(a))) +
                             kron(ComplexMatrix::identity(dd) - pidx,
                                  kron(ComplexMatrix::identity(n), ComplexMatrix::identity(a)));
        u_fwd = gate * u_fwd;
    }

    // U_backward: Utilde_{x,k} for k = 1..d-1, then the shift-correction stage.
    ComplexMatrix u_bwd = ComplexMatrix::identity(total);
    for (int k = 1; k < d; ++k) {
        const int z = pattern.nu_power(x, k);
        std::vector<ComplexMatrix> pre;
        for (int m = 0; m < d; ++m) {
            ComplexMatrix proj = kron(sys_proj(pattern.nu_power(x, k + m)), outer(fam.at(z, m)));
            pre.push_back(controlled_on_tail(p_pow(k + m), proj));
        }
        std::vector<cd> joint(static_cast<size_t>(n) * a, cd(0.0, 0.0));
        for (int i = 0; i < d; ++i) {
            const int sysz = pattern.nu_power(x, i + k);
            const auto& phi = fam.at(z, i);
            for (int q = 0; q < a; ++q) joint[static_cast<size_t>(sysz) * a + q] += phi[q];
        }
        ComplexMatrix mid = controlled_on_tail(p_pow(-k), outer(joint));
        ComplexMatrix ut = ComplexMatrix::identity(total);
        for (const auto& g : pre) ut = g * ut;
        ut = mid * ut;
        for (auto it = pre.rbegin(); it != pre.rend(); ++it) ut = it->adjoint() * ut;
        u_bwd = ut * u_bwd;
    }
    for (int s = 1; s < d; ++s) {
        ComplexMatrix gate = kron(p_pow(s), kron(sys_proj(pattern.nu_power(x, s)), ComplexMatrix::identity(a))) +
                             kron(ComplexMatrix::identity(dd),
                                  kron(ComplexMatrix::identity(n) - sys_proj(pattern.nu_power(x, s)),
                                       ComplexMatrix::identity(a)));
        u_bwd = gate * u_bwd;
    }

    ComplexMatrix u_total = u_bwd * u_fwd;
    for (int k = 0; k < d; ++k) {
        const int z = pattern.nu_power(x, k);
        std::vector<cd> input(total, cd(0.0, 0.0));
        input[(0 * n + z) * a + 0] = 1.0;
        std::vector<cd> out = u_total.apply(input);
        std::vector<cd> expect(total, cd(0.0, 0.0));
        for (int j = 0; j < d; ++j) {
            const int sysz = pattern.nu_power(x, j + k);
            const auto& phi = fam.at(z, j);
            for (int q = 0; q < a; ++q) expect[(0 * n + sysz) * a + q] += phi[q];
        }
        double err2 = 0.0;
        for (int i = 0; i < total; ++i) err2 += std::norm(out[i] - expect[i]);
        rep.max_error = std::max(rep.max_error, std::sqrt(err2));
    }
    rep.pass = rep.max_error <= tol;
    return rep;
}

QuantumChannel local_lindbladian_channel(const LindbladModel& l_c, int c, int n, double t) {
    l_c.validate();
    if (c < 1 || c > n) throw validation_error("local_lindbladian_channel: need 1 <= c <= n");
    const int dc = 1 << c;
    if (l_c.dim != dc) throw validation_error("local_lindbladian_channel: model dim must be 2^c");
    const int nn = 1 << n;
    const int rest = 1 << (n - c);

    // Embed L = L_c (x) I on the full register (first c qubits = most
    // significant bits of the index).
    LindbladModel full;
    full.dim = nn;
    const ComplexMatrix eye_rest = ComplexMatrix::identity(rest);
    if (l_c.hamiltonian.rows() != 0) full.hamiltonian = kron(l_c.hamiltonian, eye_rest);
    for (const auto& op : l_c.lindblad_ops) full.lindblad_ops.push_back(kron(op, eye_rest));

    QuantumChannel exact = exact_channel(liouvillian(full), t);

    // Orbits: increment the leading-c bits cyclically.
    SparsityPattern pattern;
    pattern.dim = nn;
    pattern.d = dc;
    pattern.nu.resize(nn);
    pattern.order.assign(nn, dc);
    for (int x = 0; x < nn; ++x) {
        const int xc = x / rest, xr = x % rest;
        pattern.nu[x] = ((xc + 1) % dc) * rest + xr;
    }

    GramMatrix gram = gram_of_channel(exact, pattern);

    // Rank-2^{2c} path through Algorithm 1.
    const int rank = numeric_rank(gram.m);
    std::vector<int> sel = greedy_principal_submatrix(gram.m, rank);
    long queries = 0;
    GramEntryOracle oracle = [&](int r, int col) {
        ++queries;
        return gram.m(r, col);
    };

    AncillaFamily fam;
    fam.dim = nn;
    fam.d = dc;
    fam.anc_dim = dc * nn + 2;
    fam.phi.assign(static_cast<size_t>(nn) * dc, std::vector<cd>(fam.anc_dim, cd(0.0, 0.0)));
    // low_rank_gram_vector returns v with v_y^dag v_x = M_yx; the ancilla
    // convention needs <phi_{y,j}|phi_{x,i}> = M[(i,x),(j,y)], so conjugate.
    for (int x = 0; x < nn; ++x)
        for (int i = 0; i < dc; ++i) {
            auto res = low_rank_gram_vector(oracle, rank, sel, i * nn + x);
            for (int q = 0; q < rank; ++q) fam.at(x, i)[q] = std::conj(res.v[q]);
        }

    auto iso = isometry_from_ancilla(pattern, fam, 1e-8);
    return channel_from_isometry(iso);
}

} // namespace lindsim
