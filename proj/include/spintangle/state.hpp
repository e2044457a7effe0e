#pragma once

#include "spintangle/core.hpp"

#include <utility>
#include <vector>

namespace spintangle {

// Basis-index convention used everywhere: index i spells the bit string
// b_0 b_1 ... b_{N-1} with qubit 0 the most significant bit, and
// bit 0 <-> |0> = spin-up, bit 1 <-> |1> = spin-down.

struct StateVector {
    int n_qubits = 0;
    Vector amplitudes;

    StateVector() = default;
    StateVector(int n, Vector amps) : n_qubits(n), amplitudes(std::move(amps)) {
        require(n_qubits >= 1, "StateVector: need at least one qubit");
        require(amplitudes.size() == dim_of(n_qubits),
                "StateVector: amplitude count does not match qubit count");
        if (std::abs(amplitudes.norm() - 1.0) > 1e-9)
            throw DomainError("StateVector: amplitudes are not normalized");
    }

    long dim() const { return amplitudes.size(); }

    /// Bit of qubit `q` inside basis index `idx` (0 = spin-up).
    int bit(long idx, int q) const { return static_cast<int>((idx >> (n_qubits - 1 - q)) & 1); }
};

struct DensityOperator {
    int n_qubits = 0;
    Matrix matrix;

    DensityOperator() = default;
    DensityOperator(int n, Matrix m) : n_qubits(n), matrix(std::move(m)) {
        require(n_qubits >= 1, "DensityOperator: need at least one qubit");
        require(matrix.rows() == dim_of(n_qubits) && matrix.cols() == dim_of(n_qubits),
                "DensityOperator: matrix dimension does not match qubit count");
        if (max_abs(matrix - matrix.adjoint()) > 1e-10)
            throw NumericalError("DensityOperator: not Hermitian");
        if (std::abs(matrix.trace().real() - 1.0) > 1e-9 || std::abs(matrix.trace().imag()) > 1e-9)
            throw NumericalError("DensityOperator: trace is not 1");
    }

    long dim() const { return matrix.rows(); }
};

inline StateVector basis_state(int n_qubits, long index) {
    require(n_qubits >= 1, "basis_state: need at least one qubit");
    require(index >= 0 && index < dim_of(n_qubits), "basis_state: index out of range");
    Vector amps = Vector::Zero(dim_of(n_qubits));
    amps[index] = 1.0;
    return StateVector(n_qubits, std::move(amps));
}

/// Tensor product of per-qubit amplitude pairs, qubit 0 first.
inline StateVector product_state(const std::vector<std::pair<Complex, Complex>>& locals) {
    require(!locals.empty(), "product_state: empty factor list");
    Vector amps = Vector::Ones(1);
    for (const auto& [a0, a1] : locals) {
        const double norm2 = std::norm(a0) + std::norm(a1);
        if (std::abs(norm2 - 1.0) > 2e-9)
            throw DomainError("product_state: factor is not normalized");
        Vector next(amps.size() * 2);
        for (long i = 0; i < amps.size(); ++i) {
            next[2 * i] = amps[i] * a0;
            next[2 * i + 1] = amps[i] * a1;
        }
        amps = std::move(next);
    }
    return StateVector(static_cast<int>(locals.size()), std::move(amps));
}

/// State A_0 |00...0> + sum_k A_k |0...1_{k-1}...0> from coefficients A_0..A_N.
/// Coefficient k >= 1 multiplies the basis state with only qubit k-1 flipped.
inline StateVector single_excitation_state(const std::vector<Complex>& coeffs) {
    require(coeffs.size() >= 2, "single_excitation_state: need at least A_0 and A_1");
    const int n = static_cast<int>(coeffs.size()) - 1;
    double norm2 = 0;
    for (const auto& a : coeffs) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-9)
        throw DomainError("single_excitation_state: coefficients are not normalized");
    Vector amps = Vector::Zero(dim_of(n));
    amps[0] = coeffs[0];
    for (int k = 1; k <= n; ++k) amps[1L << (n - k)] = coeffs[k];
    return StateVector(n, std::move(amps));
}

/// Embed arbitrary single-qubit operators on distinct sites, identity elsewhere.
inline Matrix embed_operators(int n_qubits, const std::vector<std::pair<int, Matrix2>>& factors) {
    require(n_qubits >= 1, "embed_operators: need at least one qubit");
    std::vector<const Matrix2*> slot(n_qubits, nullptr);
    for (const auto& [site, op] : factors) {
        require(site >= 0 && site < n_qubits, "embed_operators: site out of range");
        require(slot[site] == nullptr, "embed_operators: duplicate site");
        slot[site] = &op;
    }
    Matrix out = Matrix::Identity(1, 1);
    const Matrix2 id = Matrix2::Identity();
    for (int q = n_qubits - 1; q >= 0; --q) {  // qubit 0 ends up leftmost (MSB)
        const Matrix2& f = slot[q] ? *slot[q] : id;
        Matrix next(out.rows() * 2, out.cols() * 2);
        next.topLeftCorner(out.rows(), out.cols()) = f(0, 0) * out;
        next.topRightCorner(out.rows(), out.cols()) = f(0, 1) * out;
        next.bottomLeftCorner(out.rows(), out.cols()) = f(1, 0) * out;
        next.bottomRightCorner(out.rows(), out.cols()) = f(1, 1) * out;
        out = std::move(next);
    }
    return out;
}

inline Matrix embed_pauli(int n_qubits, const std::vector<std::pair<int, PauliAxis>>& factors) {
    std::vector<std::pair<int, Matrix2>> ops;
    ops.reserve(factors.size());
    for (const auto& [site, axis] : factors) ops.emplace_back(site, pauli(axis));
    return embed_operators(n_qubits, ops);
}

namespace detail {

inline void check_keep(int n_qubits, const std::vector<int>& keep) {
    require(!keep.empty(), "partial_trace: empty keep set");
    std::vector<bool> seen(n_qubits, false);
    for (int q : keep) {
        require(q >= 0 && q < n_qubits, "partial_trace: site out of range");
        require(!seen[q], "partial_trace: duplicate site in keep");
        seen[q] = true;
    }
}

// Full basis index from a kept sub-index and an environment sub-index.
// Kept qubit keep[j] carries bit (K-1-j) of `sub`; the environment qubits,
// in increasing site order, carry the bits of `env`.
inline long full_index(int n_qubits, const std::vector<int>& keep, const std::vector<int>& env_sites,
                       long sub, long env) {
    long idx = 0;
    const int k = static_cast<int>(keep.size());
    for (int j = 0; j < k; ++j)
        idx |= ((sub >> (k - 1 - j)) & 1) << (n_qubits - 1 - keep[j]);
    const int e = static_cast<int>(env_sites.size());
    for (int j = 0; j < e; ++j)
        idx |= ((env >> (e - 1 - j)) & 1) << (n_qubits - 1 - env_sites[j]);
    return idx;
}

inline std::vector<int> complement_sites(int n_qubits, const std::vector<int>& keep) {
    std::vector<bool> kept(n_qubits, false);
    for (int q : keep) kept[q] = true;
    std::vector<int> env;
    for (int q = 0; q < n_qubits; ++q)
        if (!kept[q]) env.push_back(q);
    return env;
}

}  // namespace detail

/// Reduced density operator on `keep` (order preserved), tracing out the rest.
inline DensityOperator partial_trace(const StateVector& psi, const std::vector<int>& keep) {
    detail::check_keep(psi.n_qubits, keep);
    const auto env = detail::complement_sites(psi.n_qubits, keep);
    const long dk = dim_of(static_cast<int>(keep.size()));
    const long de = 1L << env.size();
    Matrix rho = Matrix::Zero(dk, dk);
    Vector sub(dk);
    for (long e = 0; e < de; ++e) {
        for (long s = 0; s < dk; ++s)
            sub[s] = psi.amplitudes[detail::full_index(psi.n_qubits, keep, env, s, e)];
        rho.noalias() += sub * sub.adjoint();
    }
    return DensityOperator(static_cast<int>(keep.size()), hermitize(rho));
}

inline DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep) {
    detail::check_keep(rho.n_qubits, keep);
    const auto env = detail::complement_sites(rho.n_qubits, keep);
    const long dk = dim_of(static_cast<int>(keep.size()));
    const long de = 1L << env.size();
    Matrix out = Matrix::Zero(dk, dk);
    for (long e = 0; e < de; ++e)
        for (long a = 0; a < dk; ++a)
            for (long b = 0; b < dk; ++b)
                out(a, b) += rho.matrix(detail::full_index(rho.n_qubits, keep, env, a, e),
                                        detail::full_index(rho.n_qubits, keep, env, b, e));
    return DensityOperator(static_cast<int>(keep.size()), hermitize(out));
}

inline Complex overlap(const StateVector& a, const StateVector& b) {
    require(a.n_qubits == b.n_qubits, "overlap: dimension mismatch");
    return a.amplitudes.dot(b.amplitudes);  // Eigen's dot conjugates the left argument
}

}  // namespace spintangle
