#pragma once

#include "spintangle/core.hpp"
#include "spintangle/state.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <utility>
#include <vector>

namespace spintangle {

struct CouplingGraph {
    int n_sites = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::array<int, 3>> triples;  // (left, middle, right), used by the three-body model

    void validate() const {
        require(n_sites >= 1, "CouplingGraph: need at least one site");
        std::set<std::pair<int, int>> seen;
        for (auto [a, b] : edges) {
            require(a >= 0 && a < n_sites && b >= 0 && b < n_sites,
                    "CouplingGraph: edge site out of range");
            require(a != b, "CouplingGraph: self-loop");
            auto key = std::minmax(a, b);
            require(seen.insert(key).second, "CouplingGraph: duplicate edge");
        }
        for (auto [a, b, c] : triples) {
            require(a >= 0 && a < n_sites && b >= 0 && b < n_sites && c >= 0 && c < n_sites,
                    "CouplingGraph: triple site out of range");
            require(a != b && b != c && a != c, "CouplingGraph: repeated site in triple");
        }
    }
};

struct FieldSpec {
    double B = 0.0;    // field magnitude, sign allowed
    double phi = 0.0;  // tilt angle in radians

    void validate() const {
        require(std::isfinite(B) && std::isfinite(phi), "FieldSpec: non-finite value");
    }
};

enum class Model { IsingXX, XY, ThreeBodyXYX };

struct HamiltonianSpec {
    Model model = Model::IsingXX;
    CouplingGraph graph;
    FieldSpec field;

    void validate() const {
        graph.validate();
        field.validate();
        if (model == Model::ThreeBodyXYX) {
            require(!graph.triples.empty() && graph.edges.empty(),
                    "HamiltonianSpec: three-body model needs triples and no pair edges");
        } else {
            require(graph.triples.empty(),
                    "HamiltonianSpec: pairwise models must not carry triples");
        }
    }
};

struct HamiltonianMatrix {
    int n_sites = 0;
    Matrix matrix;
};

inline CouplingGraph ring_graph(int n) {
    require(n >= 3, "ring_graph: need at least 3 sites");
    CouplingGraph g;
    g.n_sites = n;
    for (int k = 0; k < n; ++k) g.edges.emplace_back(k, (k + 1) % n);
    return g;
}

/// Star of n_outer+1 sites; site 0 is the center.
inline CouplingGraph star_graph(int n_outer) {
    require(n_outer >= 1, "star_graph: need at least 1 outer site");
    CouplingGraph g;
    g.n_sites = n_outer + 1;
    for (int k = 1; k <= n_outer; ++k) g.edges.emplace_back(0, k);
    return g;
}

/// Ring of overlapping triples (k-1, k, k+1) mod n; no pair edges.
inline CouplingGraph triple_ring(int n) {
    require(n >= 3, "triple_ring: need at least 3 sites");
    CouplingGraph g;
    g.n_sites = n;
    for (int k = 0; k < n; ++k)
        g.triples.push_back({(k - 1 + n) % n, k, (k + 1) % n});
    return g;
}

/// exp(i a H) for Hermitian H, by spectral decomposition.
inline Matrix exp_i_hermitian(const Matrix& h, double a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector phases(h.rows());
    for (long k = 0; k < h.rows(); ++k)
        phases[k] = std::exp(Complex(0, a * es.eigenvalues()[k]));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Field direction operator exp(i phi/2 sx) sz exp(-i phi/2 sx), by literal conjugation.
inline Matrix2 tilted_sigma_z(double phi) {
    const Matrix r = exp_i_hermitian(pauli(PauliAxis::X), phi / 2.0);
    return (r * pauli(PauliAxis::Z) * r.adjoint()).eval();
}

inline HamiltonianMatrix build_hamiltonian(const HamiltonianSpec& spec) {
    spec.validate();
    const int n = spec.graph.n_sites;
    Matrix h = Matrix::Zero(dim_of(n), dim_of(n));
    switch (spec.model) {
        case Model::IsingXX:
            for (auto [k, l] : spec.graph.edges)
                h -= embed_pauli(n, {{k, PauliAxis::X}, {l, PauliAxis::X}});
            break;
        case Model::XY:
            for (auto [k, l] : spec.graph.edges) {
                h -= embed_pauli(n, {{k, PauliAxis::X}, {l, PauliAxis::X}});
                h -= embed_pauli(n, {{k, PauliAxis::Y}, {l, PauliAxis::Y}});
            }
            break;
        case Model::ThreeBodyXYX:
            for (auto [a, b, c] : spec.graph.triples)
                h -= embed_pauli(n, {{a, PauliAxis::X}, {b, PauliAxis::Y}, {c, PauliAxis::X}});
            break;
    }
    if (spec.model == Model::ThreeBodyXYX)
        require(spec.field.B == 0.0, "build_hamiltonian: three-body model takes no field term");
    if (spec.model != Model::ThreeBodyXYX && spec.field.B != 0.0) {
        const Matrix2 field_dir = tilted_sigma_z(spec.field.phi);
        for (int k = 0; k < n; ++k)
            h -= spec.field.B * embed_operators(n, {{k, field_dir}});
    }
    h = hermitize(h);
    return {n, std::move(h)};
}

}  // namespace spintangle
