#include "lindsim/lindblad.hpp"

#include <cmath>
#include <set>

namespace lindsim {

void LindbladModel::validate() const {
    if (dim <= 0) throw validation_error("LindbladModel: dim must be positive");
    if (hamiltonian.rows() != 0) {
        if (hamiltonian.rows() != dim || hamiltonian.cols() != dim)
            throw validation_error("LindbladModel: hamiltonian shape mismatch");
        double dev = 0.0;
        for (int r = 0; r < dim; ++r)
            for (int c = r; c < dim; ++c)
                dev = std::max(dev, std::abs(hamiltonian(r, c) - std::conj(hamiltonian(c, r))));
        if (dev > 1e-12 * std::max(hamiltonian.frobenius_norm(), 1.0))
            throw validation_error("LindbladModel: hamiltonian not Hermitian");
    }
    for (const auto& op : lindblad_ops)
        if (op.rows() != dim || op.cols() != dim)
            throw validation_error("LindbladModel: lindblad op shape mismatch");
}

ComplexMatrix OvercompleteGKS::dense() const {
    const int n2 = dim * dim;
    ComplexMatrix a(n2, n2);
    for (const auto& e : entries) {
        const int r = composite(e.k, e.l, dim);
        const int c = composite(e.kp, e.lp, dim);
        a(r, c) += e.value;
        if (r != c) a(c, r) += std::conj(e.value);
    }
    return a;
}

void OvercompleteGKS::validate(double psd_tol) const {
    if (dim <= 0) throw validation_error("OvercompleteGKS: dim must be positive");
    std::set<std::pair<int, int>> seen;
    for (const auto& e : entries) {
        if (e.k < 0 || e.k >= dim || e.l < 0 || e.l >= dim || e.kp < 0 || e.kp >= dim ||
            e.lp < 0 || e.lp >= dim)
            throw validation_error("OvercompleteGKS: index out of range");
        if (e.k == e.kp && e.l == e.lp && std::abs(e.value.imag()) > 1e-12 * std::max(std::abs(e.value), 1.0))
            throw validation_error("OvercompleteGKS: diagonal entry must be real");
        // One-triangle storage: the conjugate mirror is implied, so an entry
        // and its mirror must not both be listed.
        const int r = composite(e.k, e.l, dim), c = composite(e.kp, e.lp, dim);
        if (!seen.insert({r, c}).second || (r != c && seen.count({c, r})))
            throw validation_error("OvercompleteGKS: duplicate or mirrored entry listed twice");
    }
    ComplexMatrix a = dense();
    const double scale = a.frobenius_norm();
    if (scale == 0.0) return;
    auto spec = hermitian_eig(a);
    if (spec.eigenvalues.front() < -psd_tol * scale)
        throw validation_error("OvercompleteGKS: coefficient matrix is not PSD within tolerance");
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& rho) const {
    if (rho.rows() != dim || rho.cols() != dim)
        throw validation_error("Superoperator::apply: shape mismatch");
    std::vector<cd> v(static_cast<size_t>(dim) * dim);
    for (int l = 0; l < dim; ++l)
        for (int k = 0; k < dim; ++k) v[vec_index(k, l, dim)] = rho(k, l);
    std::vector<cd> w = matrix.apply(v);
    ComplexMatrix out(dim, dim);
    for (int l = 0; l < dim; ++l)
        for (int k = 0; k < dim; ++k) out(k, l) = w[vec_index(k, l, dim)];
    return out;
}

double Superoperator::trace_annihilation_residual() const {
    // (vec I)^dag . matrix must vanish row-wise for a trace-annihilating generator.
    const int n = dim;
    double worst = 0.0;
    for (int col = 0; col < n * n; ++col) {
        cd s = 0.0;
        for (int k = 0; k < n; ++k) s += matrix(vec_index(k, k, n), col);
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

ComplexMatrix choi_from_superop(const ComplexMatrix& s, int n) {
    ComplexMatrix j(n * n, n * n);
    for (int u = 0; u < n; ++u)
        for (int x = 0; x < n; ++x)
            for (int v = 0; v < n; ++v)
                for (int y = 0; y < n; ++y)
                    j(u * n + x, v * n + y) = s(vec_index(u, v, n), vec_index(x, y, n));
    return j;
}

ComplexMatrix superop_from_choi(const ComplexMatrix& j, int n) {
    ComplexMatrix s(n * n, n * n);
    for (int u = 0; u < n; ++u)
        for (int x = 0; x < n; ++x)
            for (int v = 0; v < n; ++v)
                for (int y = 0; y < n; ++y)
                    s(vec_index(u, v, n), vec_index(x, y, n)) = j(u * n + x, v * n + y);
    return s;
}

Superoperator superop_of_channel(const QuantumChannel& e) {
    if (e.dim_in != e.dim_out)
        throw validation_error("superop_of_channel: channel must be square");
    return Superoperator{e.dim_in, superop_from_choi(e.choi, e.dim_in)};
}

QuantumChannel channel_from_superop_matrix(const ComplexMatrix& s, int n) {
    return QuantumChannel{n, n, choi_from_superop(s, n)};
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& rho) const {
    if (rho.rows() != dim_in || rho.cols() != dim_in)
        throw validation_error("QuantumChannel::apply: shape mismatch");
    // E(rho)[u,v] = sum_{x,y} J[(u,x),(v,y)] rho[x,y]
    ComplexMatrix out(dim_out, dim_out);
    for (int u = 0; u < dim_out; ++u)
        for (int v = 0; v < dim_out; ++v) {
            cd s = 0.0;
            for (int x = 0; x < dim_in; ++x)
                for (int y = 0; y < dim_in; ++y) s += choi(u * dim_in + x, v * dim_in + y) * rho(x, y);
            out(u, v) = s;
        }
    return out;
}

CptpReport QuantumChannel::validate_cptp(double tol) const {
    CptpReport rep;
    const double scale = std::max(choi.frobenius_norm(), 1e-300);
    auto spec = hermitian_eig(choi);
    rep.min_choi_eigenvalue = spec.eigenvalues.front();
    ComplexMatrix reduced = partial_trace(choi, dim_out, dim_in, Subsystem::Second);
    ComplexMatrix dev = reduced - ComplexMatrix::identity(dim_in);
    rep.trace_preservation_error = dev.max_abs();
    rep.pass = rep.min_choi_eigenvalue >= -tol * scale && rep.trace_preservation_error <= tol;
    return rep;
}

QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first) {
    if (second.dim_in != first.dim_out) throw validation_error("compose: dimension mismatch");
    if (first.dim_in != first.dim_out || second.dim_in != second.dim_out)
        throw validation_error("compose: only square channels are supported");
    const int n = first.dim_in;
    ComplexMatrix s = superop_from_choi(second.choi, n) * superop_from_choi(first.choi, n);
    return channel_from_superop_matrix(s, n);
}

QuantumChannel channel_power(const QuantumChannel& e, long n) {
    if (e.dim_in != e.dim_out) throw validation_error("channel_power: channel must be square");
    if (n < 0) throw validation_error("channel_power: negative power");
    const int d = e.dim_in;
    ComplexMatrix acc = ComplexMatrix::identity(d * d);
    ComplexMatrix base = superop_from_choi(e.choi, d);
    long k = n;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return channel_from_superop_matrix(acc, d);
}

QuantumChannel identity_channel(int n) {
    return channel_from_superop_matrix(ComplexMatrix::identity(n * n), n);
}

OvercompleteGKS gks_from_lindblad_ops(const LindbladModel& model) {
    model.validate();
    const int n = model.dim;
    OvercompleteGKS gks;
    gks.dim = n;
    if (model.hamiltonian.rows() != 0) gks.hamiltonian = model.hamiltonian;
    // Dense accumulation, then keep the upper triangle of nonzeros.
    const int n2 = n * n;
    ComplexMatrix a(n2, n2);
    for (const auto& op : model.lindblad_ops) {
        std::vector<cd> flat(n2);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) flat[OvercompleteGKS::composite(k, l, n)] = op(k, l);
        for (int r = 0; r < n2; ++r) {
            if (flat[r] == cd(0.0, 0.0)) continue;
            for (int c = 0; c < n2; ++c) a(r, c) += 0.5 * flat[r] * std::conj(flat[c]);
        }
    }
    for (int r = 0; r < n2; ++r)
        for (int c = r; c < n2; ++c) {
            if (a(r, c) == cd(0.0, 0.0)) continue;
            gks.entries.push_back({r / n, r % n, c / n, c % n, a(r, c)});
        }
    return gks;
}

LindbladModel lindblad_ops_from_gks(const OvercompleteGKS& gks, double psd_tol) {
    const int n = gks.dim;
    ComplexMatrix a = gks.dense();
    const double scale = std::max(a.frobenius_norm(), 1e-300);
    auto spec = hermitian_eig(a);
    if (spec.eigenvalues.front() < -psd_tol * scale)
        throw validation_error("lindblad_ops_from_gks: A fails PSD beyond tolerance");

    LindbladModel model;
    model.dim = n;
    model.hamiltonian = gks.hamiltonian.value_or(ComplexMatrix(n, n));
    const int n2 = n * n;
    for (int m = 0; m < n2; ++m) {
        const double lambda = std::max(spec.eigenvalues[m], 0.0);
        if (lambda <= psd_tol * scale) continue;
        ComplexMatrix op(n, n);
        const double w = std::sqrt(2.0 * lambda);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                op(k, l) = w * spec.eigenvectors(OvercompleteGKS::composite(k, l, n), m);
        model.lindblad_ops.push_back(std::move(op));
    }
    return model;
}

namespace {

void add_hamiltonian_part(ComplexMatrix& s, const ComplexMatrix& h, int n) {
    // -i (I (x) H - H^T (x) I)
    const ComplexMatrix eye = ComplexMatrix::identity(n);
    ComplexMatrix part = kron(eye, h) - kron(h.transpose(), eye);
    part *= cd(0.0, -1.0);
    s += part;
}

} // namespace

Superoperator liouvillian(const LindbladModel& model) {
    model.validate();
    const int n = model.dim;
    ComplexMatrix s(n * n, n * n);
    if (model.hamiltonian.rows() != 0) add_hamiltonian_part(s, model.hamiltonian, n);
    const ComplexMatrix eye = ComplexMatrix::identity(n);
    for (const auto& op : model.lindblad_ops) {
        s += kron(op.conjugate(), op);
        ComplexMatrix m = op.adjoint() * op;
        ComplexMatrix half = kron(eye, m) + kron(m.transpose(), eye);
        half *= cd(-0.5, 0.0);
        s += half;
    }
    return Superoperator{n, std::move(s)};
}

Superoperator liouvillian(const OvercompleteGKS& gks) {
    const int n = gks.dim;
    ComplexMatrix s(n * n, n * n);
    if (gks.hamiltonian && gks.hamiltonian->rows() != 0) add_hamiltonian_part(s, *gks.hamiltonian, n);

    // Action: A_{(k,l),(k',l')} (2 <l|rho|l'> |k><k'| - delta_{kk'} (|l'><l| rho + rho |l'><l|)).
    // vec action: 2 E_{k'l'} (x) E_{kl} - delta_{kk'} (I (x) E_{l'l} + E_{ll'} (x) I).
    auto add_term = [&](int k, int l, int kp, int lp, cd v) {
        gks.queries++;
        s(vec_index(k, kp, n), vec_index(l, lp, n)) += 2.0 * v;
        if (k == kp) {
            for (int z = 0; z < n; ++z) {
                s(vec_index(lp, z, n), vec_index(l, z, n)) -= v;
                s(vec_index(z, l, n), vec_index(z, lp, n)) -= v;
            }
        }
    };
    for (const auto& e : gks.entries) {
        add_term(e.k, e.l, e.kp, e.lp, e.value);
        if (e.k != e.kp || e.l != e.lp) add_term(e.kp, e.lp, e.k, e.l, std::conj(e.value));
    }
    return Superoperator{n, std::move(s)};
}

QuantumChannel exact_channel(const Superoperator& generator, double t) {
    if (t < 0) throw validation_error("exact_channel: t must be nonnegative");
    ComplexMatrix scaled = generator.matrix;
    scaled *= cd(t, 0.0);
    ComplexMatrix e = expm(scaled);
    QuantumChannel channel = channel_from_superop_matrix(e, generator.dim);
    // Cheap trace-preservation probe; a failure signals an invalid generator
    // (the full PSD check is left to validate_cptp).
    ComplexMatrix reduced =
        partial_trace(channel.choi, channel.dim_out, channel.dim_in, Subsystem::Second);
    const double tp = (reduced - ComplexMatrix::identity(channel.dim_in)).max_abs();
    if (tp > 1e-8 * std::max(1.0, e.one_norm()))
        throw numeric_error("exact_channel: generator is not trace-preserving (deviation " +
                            std::to_string(tp) + ")");
    return channel;
}

ChoiDistance choi_distance(const QuantumChannel& e1, const QuantumChannel& e2) {
    if (e1.dim_in != e2.dim_in || e1.dim_out != e2.dim_out)
        throw validation_error("choi_distance: dimension mismatch");
    ChoiDistance d;
    d.upper = trace_norm(e1.choi - e2.choi);
    d.lower = d.upper / e1.dim_in;
    return d;
}

double one_to_one_norm_witness(const Superoperator& t, const ComplexMatrix& rho) {
    return trace_norm(t.apply(rho));
}

} // namespace lindsim
