#pragma once

#include "spintangle/core.hpp"
#include "spintangle/state.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace spintangle {

// PSD clamping policy: eigenvalues in [-1e-10, 0) are set to 0; anything below
// -1e-8 aborts with NumericalError instead of being clamped silently.
namespace detail {

inline double clamp_psd_eigenvalue(double x, const char* where) {
    if (x < -1e-8) throw NumericalError(std::string(where) + ": eigenvalue below -1e-8");
    return x < 0.0 ? 0.0 : x;
}

inline Matrix psd_sqrt(const Matrix& m, const char* where) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m));
    Eigen::VectorXd roots(m.rows());
    for (long k = 0; k < m.rows(); ++k)
        roots[k] = std::sqrt(clamp_psd_eigenvalue(es.eigenvalues()[k], where));
    return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

/// One-tangle 4 det(rho) of a single-qubit reduced state, clamped to [0, 1].
inline double one_tangle(const DensityOperator& rho) {
    require(rho.n_qubits == 1, "one_tangle: single-qubit state required");
    double t = 4.0 * rho.matrix.determinant().real();
    require(t > -1e-9 && t < 1.0 + 1e-9, "one_tangle: value outside [0,1]");
    return std::clamp(t, 0.0, 1.0);
}

/// Wootters spin flip (sy x sy) rho* (sy x sy) in the computational product basis.
inline Matrix spin_flip(const Matrix& rho) {
    require(rho.rows() == 4 && rho.cols() == 4, "spin_flip: 4x4 matrix required");
    static const Matrix yy = embed_pauli(2, {{0, PauliAxis::Y}, {1, PauliAxis::Y}});
    return yy * rho.conjugate() * yy;
}

inline Matrix spin_flip(const DensityOperator& rho) {
    require(rho.n_qubits == 2, "spin_flip: two-qubit state required");
    return spin_flip(rho.matrix);
}

/// Eigenvalues of R = sqrt(sqrt(rho) rho~ sqrt(rho)), descending.
inline std::array<double, 4> wootters_lambdas(const DensityOperator& rho) {
    require(rho.n_qubits == 2, "wootters_lambdas: two-qubit state required");
    const Matrix root = detail::psd_sqrt(rho.matrix, "wootters_lambdas");
    const Matrix inner = hermitize(root * spin_flip(rho) * root);
    Eigen::SelfAdjointEigenSolver<Matrix> es(inner);
    std::array<double, 4> lambdas;
    for (int k = 0; k < 4; ++k)
        lambdas[k] = std::sqrt(detail::clamp_psd_eigenvalue(es.eigenvalues()[k], "wootters_lambdas"));
    std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
    return lambdas;
}

inline double concurrence(const DensityOperator& rho) {
    const auto l = wootters_lambdas(rho);
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

inline double concurrence_of_assistance(const DensityOperator& rho) {
    const auto l = wootters_lambdas(rho);
    return l[0] + l[1] + l[2] + l[3];
}

/// Binary-entropy form h((1 + sqrt(1-c^2))/2); continuous limits at c = 0, 1.
inline double entanglement_of_formation(double c) {
    require(c > -1e-9 && c < 1.0 + 1e-9, "entanglement_of_formation: concurrence outside [0,1]");
    c = std::clamp(c, 0.0, 1.0);
    const double x = (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))) / 2.0;
    auto plog = [](double p) { return p <= 0.0 ? 0.0 : p * std::log2(p); };
    return -plog(x) - plog(1.0 - x);
}

/// Concurrence of a pure two-qubit state: 2 |a00 a11 - a01 a10|.
inline double pure_pair_concurrence(const Vector& amps) {
    require(amps.size() == 4, "pure_pair_concurrence: two-qubit state required");
    return 2.0 * std::abs(amps[0] * amps[3] - amps[1] * amps[2]);
}

/// CKW residual T_site - sum_{l != site} C^2(site, l) for a pure global state.
inline double ckw_residual(const StateVector& psi, int site) {
    require(site >= 0 && site < psi.n_qubits, "ckw_residual: site out of range");
    require(psi.n_qubits >= 2, "ckw_residual: need at least 2 qubits");
    double res = one_tangle(partial_trace(psi, {site}));
    for (int l = 0; l < psi.n_qubits; ++l) {
        if (l == site) continue;
        const double c = concurrence(partial_trace(psi, {site, l}));
        res -= c * c;
    }
    if (res < -1e-8)
        throw NumericalError("ckw_residual: CKW inequality violated beyond tolerance");
    return res;
}

/// Lower bound for localizable entanglement of the pair (i, j): average pure-pair
/// concurrence after measuring every other qubit in the computational basis.
inline double le_lower_bound(const StateVector& psi, int i, int j) {
    require(i != j, "le_lower_bound: pair sites must differ");
    require(i >= 0 && i < psi.n_qubits && j >= 0 && j < psi.n_qubits,
            "le_lower_bound: site out of range");
    // Empty complement: nothing to measure, the bound is the pure-pair concurrence
    // (which is symmetric under swapping the pair).
    if (psi.n_qubits == 2) return pure_pair_concurrence(psi.amplitudes);
    const std::vector<int> keep{i, j};
    const auto env = detail::complement_sites(psi.n_qubits, keep);
    const long de = 1L << env.size();
    double bound = 0.0;
    Vector sub(4);
    for (long e = 0; e < de; ++e) {
        for (long s = 0; s < 4; ++s)
            sub[s] = psi.amplitudes[detail::full_index(psi.n_qubits, keep, env, s, e)];
        const double p = sub.squaredNorm();
        if (p < 1e-14) continue;
        bound += p * pure_pair_concurrence((sub / std::sqrt(p)).eval());
    }
    return bound;
}

struct PairReport {
    int site_i = 0;
    int site_j = 0;
    double concurrence = 0;
    double concurrence_of_assistance = 0;
    double sqrt_one_tangle_i = 0;
    double sqrt_one_tangle_j = 0;
    double eof = 0;
    double ckw_residual_i = 0;
    double le_lower_bound = 0;
};

inline PairReport pair_report(const StateVector& psi, int i, int j) {
    require(i != j, "pair_report: pair sites must differ");
    PairReport r;
    r.site_i = i;
    r.site_j = j;
    const auto rho_ij = partial_trace(psi, {i, j});
    r.concurrence = concurrence(rho_ij);
    r.concurrence_of_assistance = concurrence_of_assistance(rho_ij);
    r.sqrt_one_tangle_i = std::sqrt(one_tangle(partial_trace(psi, {i})));
    r.sqrt_one_tangle_j = std::sqrt(one_tangle(partial_trace(psi, {j})));
    r.eof = entanglement_of_formation(r.concurrence);
    r.ckw_residual_i = ckw_residual(psi, i);
    r.le_lower_bound = le_lower_bound(psi, i, j);
    return r;
}

}  // namespace spintangle
