#pragma once

#include "spintangle/core.hpp"
#include "spintangle/hamiltonian.hpp"
#include "spintangle/state.hpp"

#include <cmath>

namespace spintangle {

struct Propagator {
    int n_sites = 0;
    Eigen::VectorXd eigenvalues;  // ascending
    Matrix eigenvectors;          // columns are energy eigenstates
};

inline Propagator diagonalize(const HamiltonianMatrix& h) {
    if (max_abs(h.matrix - h.matrix.adjoint()) > 1e-10)
        throw DomainError("diagonalize: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix);
    if (es.info() != Eigen::Success)
        throw NumericalError("diagonalize: eigensolver failed");
    return {h.n_sites, es.eigenvalues(), es.eigenvectors()};
}

/// psi(t) = V exp(-i E t) V^dag psi0, renormalized after a norm-drift check.
inline StateVector evolve(const Propagator& p, const StateVector& psi0, double t) {
    require(psi0.dim() == p.eigenvectors.rows(), "evolve: dimension mismatch");
    Vector coeffs = p.eigenvectors.adjoint() * psi0.amplitudes;
    for (long k = 0; k < coeffs.size(); ++k)
        coeffs[k] *= std::exp(Complex(0, -p.eigenvalues[k] * t));
    Vector amps = p.eigenvectors * coeffs;
    const double norm = amps.norm();
    if (std::abs(norm - 1.0) > 1e-8)
        throw NumericalError("evolve: norm drift exceeds tolerance");
    return StateVector(psi0.n_qubits, amps / norm);
}

/// U(tau) = prod over edges of exp(i sx_k sx_l tau); the factors commute.
inline Matrix ising_product_unitary(const CouplingGraph& graph, double tau) {
    graph.validate();
    require(graph.triples.empty(), "ising_product_unitary: pair-edge graph required");
    const int n = graph.n_sites;
    const long d = dim_of(n);
    Matrix u = Matrix::Identity(d, d);
    const Complex c(std::cos(tau), 0), is(0, std::sin(tau));
    for (auto [k, l] : graph.edges) {
        // (sx sx)^2 = 1, so exp(i sx_k sx_l tau) = cos(tau) 1 + i sin(tau) sx_k sx_l
        const Matrix xx = embed_pauli(n, {{k, PauliAxis::X}, {l, PauliAxis::X}});
        u = (c * Matrix::Identity(d, d) + is * xx) * u;
    }
    return u;
}

/// Closed-form evolution of the XY star from the center-rotated product state:
/// cos(theta/2)|0..0> + sin(theta/2)[cos(2 sqrt(N) t)|1>_c|0..0> + i sin(2 sqrt(N) t)|0>_c W_N].
/// Site 0 is the center; W_N is the equal-weight single-excitation state of the
/// outer sites.
inline StateVector xy_star_analytic(double theta, int n_outer, double t) {
    require(n_outer >= 1, "xy_star_analytic: need at least 1 outer site");
    const int n = n_outer + 1;
    const double omega = 2.0 * std::sqrt(static_cast<double>(n_outer));
    const Complex a0 = std::cos(theta / 2.0);
    const Complex a1 = std::sin(theta / 2.0);
    Vector amps = Vector::Zero(dim_of(n));
    amps[0] = a0;                                       // |0>_c |0..0>
    amps[1L << (n - 1)] = a1 * std::cos(omega * t);     // |1>_c |0..0>
    const Complex w = a1 * Complex(0, 1) * std::sin(omega * t) / std::sqrt(n_outer);
    for (int l = 1; l <= n_outer; ++l)
        amps[1L << (n - 1 - l)] = w;                    // |0>_c |0..1_l..0>
    const double norm = amps.norm();
    if (norm == 0.0) throw NumericalError("xy_star_analytic: zero state");
    return StateVector(n, amps / norm);
}

}  // namespace spintangle
