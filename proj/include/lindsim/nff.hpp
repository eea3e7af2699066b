#ifndef LINDSIM_NFF_HPP
#define LINDSIM_NFF_HPP

#include "lindsim/lindblad.hpp"

namespace lindsim {

// Absorbing chain: L|0> = 0, L|n> = |n-1> on C^{N+1}.
LindbladModel chain_model(int n);

// Closed-form chain populations: |N-m> holds t^m e^{-t} / m! for m < N, with the
// absorbed remainder on |0>. Index i of the result = population of |i>.
std::vector<double> poisson_populations(int n, double t);

struct TailRow {
    int n = 0;
    double tail = 0.0;                  // sum_{m<N} (2N)^m e^{-2N} / m!
    bool within_bound = false;          // tail <= 1/64 (asserted only for N >= 7)
    bool asserted = false;
};

struct TailReport {
    std::vector<TailRow> rows;
    double g13 = 0.0;                   // g(N) = (2N)^N N! / (2N)! at N = 13
    bool pass = false;
};

TailReport tail_bound_check(const std::vector<int>& ns);

struct ParityInstance {
    int n = 0;
    std::vector<int> s;                 // bits s_1..s_N stored at indices 0..N-1

    void validate() const;
    int parity() const;
};

struct ParityReport {
    int n = 0;
    double t = 0.0;                     // 4N
    int readout = 0;
    int parity = 0;
    double success_prob = 0.0;
    long queries = 0;                   // bit-oracle accesses during assembly
};

// Parity construction: evolve |N,0><N,0| under the string-dependent chain
// generator (1/2 prefactor) for t = 4N
// and read the ancilla qubit. The generator is assembled through the
// overcomplete-GKS entry enumeration, consulting the bit oracle twice per
// nonzero A entry.
ParityReport parity_run(const ParityInstance& instance);

struct WitnessReport {
    double witness = 0.0;               // ||L(|N><N|)||_1, exactly 2 for the chain
    double max_sampled = 0.0;           // max over random states of ||(L (x) I)(psi)||_1
    int samples = 0;
    bool pass = false;                  // witness == 2 and samples <= 2 + tol
};

// The 1->1 norm witness and a sampled consistency check of
// the subadditivity upper bound.
WitnessReport diamond_norm_witness_check(int n, int samples, unsigned seed);

} // namespace lindsim

#endif
