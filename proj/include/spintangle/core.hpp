#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace spintangle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;
using Vector = Eigen::VectorXcd;

/// Invalid argument to a library operation (bad dimension, index, graph, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Numerical contract violated beyond tolerance (lost positivity, norm drift, ...).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class PauliAxis { X, Y, Z };

inline const Matrix2& pauli(PauliAxis axis) {
    static const Matrix2 sx = (Matrix2() << 0, 1, 1, 0).finished();
    static const Matrix2 sy = (Matrix2() << 0, Complex(0, -1), Complex(0, 1), 0).finished();
    static const Matrix2 sz = (Matrix2() << 1, 0, 0, -1).finished();
    switch (axis) {
        case PauliAxis::X: return sx;
        case PauliAxis::Y: return sy;
        default: return sz;
    }
}

constexpr long dim_of(int n_qubits) { return 1L << n_qubits; }

inline Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw DomainError(msg);
}

}  // namespace spintangle
