#pragma once

#include "spintangle/core.hpp"
#include "spintangle/evolution.hpp"
#include "spintangle/hamiltonian.hpp"
#include "spintangle/state.hpp"

#include <numbers>
#include <vector>

namespace spintangle {

struct StabilizerSet {
    std::vector<Matrix> operators;  // K_n = U sz_n U^dag, one per site
    CouplingGraph source_graph;
};

/// Stabilizers K_n = U sz_n U^dag with U the tau = pi/4 zero-field Ising unitary.
/// Built by explicit conjugation so arbitrary pair graphs are supported.
inline StabilizerSet stabilizers(const CouplingGraph& graph) {
    graph.validate();
    require(graph.triples.empty(), "stabilizers: pair-edge graph required");
    const Matrix u = ising_product_unitary(graph, std::numbers::pi / 4.0);
    StabilizerSet s;
    s.source_graph = graph;
    s.operators.reserve(graph.n_sites);
    for (int k = 0; k < graph.n_sites; ++k)
        s.operators.push_back(u * embed_pauli(graph.n_sites, {{k, PauliAxis::Z}}) * u.adjoint());
    return s;
}

/// Graph state U(pi/4) |e_m>: joint eigenstate of the stabilizers with the
/// eigenvalues e_{n,m} read off the bits of m (bit 0 -> +1).
inline StateVector graph_state(const CouplingGraph& graph, long basis_index) {
    graph.validate();
    require(graph.triples.empty(), "graph_state: pair-edge graph required");
    const Matrix u = ising_product_unitary(graph, std::numbers::pi / 4.0);
    const StateVector e = basis_state(graph.n_sites, basis_index);
    Vector amps = u * e.amplitudes;
    return StateVector(graph.n_sites, amps / amps.norm());
}

inline std::vector<int> basis_eigenvalues(int n_sites, long basis_index) {
    std::vector<int> eigs(n_sites);
    for (int k = 0; k < n_sites; ++k)
        eigs[k] = ((basis_index >> (n_sites - 1 - k)) & 1) ? -1 : +1;
    return eigs;
}

/// max_n || K_n psi - e_n psi ||; the caller picks the tolerance.
inline double verify_stabilized(const StateVector& psi, const StabilizerSet& stabs,
                                const std::vector<int>& expected_eigs) {
    require(expected_eigs.size() == stabs.operators.size(),
            "verify_stabilized: eigenvalue count mismatch");
    double worst = 0.0;
    for (size_t n = 0; n < stabs.operators.size(); ++n) {
        require(expected_eigs[n] == 1 || expected_eigs[n] == -1,
                "verify_stabilized: eigenvalues must be +1 or -1");
        require(stabs.operators[n].rows() == psi.dim(), "verify_stabilized: dimension mismatch");
        const double res =
            (stabs.operators[n] * psi.amplitudes - double(expected_eigs[n]) * psi.amplitudes).norm();
        worst = std::max(worst, res);
    }
    return worst;
}

}  // namespace spintangle
