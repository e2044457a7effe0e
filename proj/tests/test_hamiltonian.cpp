#include "spintangle/hamiltonian.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <numbers>

using namespace spintangle;

namespace {
Eigen::VectorXd spectrum(const Matrix& h) {
    return Eigen::SelfAdjointEigenSolver<Matrix>(h).eigenvalues();
}
}  // namespace

TEST_CASE("ring_graph") {
    auto g3 = ring_graph(3);
    CHECK(g3.edges.size() == 3);

    auto g5 = ring_graph(5);
    CHECK(g5.edges.size() == 5);
    std::vector<int> degree(5, 0);
    for (auto [a, b] : g5.edges) {
        ++degree[a];
        ++degree[b];
    }
    for (int d : degree) CHECK(d == 2);

    auto g6 = ring_graph(6);
    CHECK(std::count(g6.edges.begin(), g6.edges.end(), std::make_pair(5, 0)) == 1);

    CHECK_THROWS_AS(ring_graph(2), DomainError);
}

TEST_CASE("star_graph") {
    auto g1 = star_graph(1);
    CHECK(g1.n_sites == 2);
    CHECK(g1.edges == std::vector<std::pair<int, int>>{{0, 1}});

    auto g6 = star_graph(6);
    CHECK(g6.n_sites == 7);
    CHECK(g6.edges.size() == 6);
    for (auto [a, b] : g6.edges) CHECK(a == 0);

    auto g4 = star_graph(4);
    CHECK(g4.n_sites == 5);
    CHECK(g4.edges.size() == 4);

    CHECK_THROWS_AS(star_graph(0), DomainError);
}

TEST_CASE("triple_ring") {
    auto g3 = triple_ring(3);
    CHECK(g3.triples.size() == 3);
    CHECK(g3.edges.empty());

    auto g6 = triple_ring(6);
    CHECK(g6.triples.size() == 6);
    for (int k = 0; k < 6; ++k) CHECK(g6.triples[k][1] == k);

    auto g4 = triple_ring(4);
    CHECK(g4.triples[0] == std::array<int, 3>{3, 0, 1});

    CHECK_THROWS_AS(triple_ring(2), DomainError);
}

TEST_CASE("graph validation rejects malformed graphs") {
    CouplingGraph g{2, {{0, 1}, {1, 0}}, {}};
    CHECK_THROWS_AS(g.validate(), DomainError);
    CouplingGraph loop{2, {{1, 1}}, {}};
    CHECK_THROWS_AS(loop.validate(), DomainError);
}

TEST_CASE("build_hamiltonian spectra for two sites") {
    CouplingGraph pair{2, {{0, 1}}, {}};

    auto ising = build_hamiltonian({Model::IsingXX, pair, {}});
    auto ev = spectrum(ising.matrix);
    CHECK(ev[0] == doctest::Approx(-1.0));
    CHECK(ev[1] == doctest::Approx(-1.0));
    CHECK(ev[2] == doctest::Approx(1.0));
    CHECK(ev[3] == doctest::Approx(1.0));

    auto xy = build_hamiltonian({Model::XY, pair, {}});
    auto ev2 = spectrum(xy.matrix);
    CHECK(ev2[0] == doctest::Approx(-2.0));
    CHECK(ev2[1] == doctest::Approx(0.0));
    CHECK(ev2[2] == doctest::Approx(0.0));
    CHECK(ev2[3] == doctest::Approx(2.0));
    // ground state is the triplet Bell pair (|01> + |10>)/sqrt(2)
    Eigen::SelfAdjointEigenSolver<Matrix> es(xy.matrix);
    Vector ground = es.eigenvectors().col(0);
    CHECK(std::abs(std::abs(ground[1] * std::sqrt(2.0)) - 1.0) < 1e-10);
    CHECK(std::abs(std::abs(ground[2] * std::sqrt(2.0)) - 1.0) < 1e-10);
}

TEST_CASE("field term at phi = 0 is -B sum sz") {
    auto h = build_hamiltonian({Model::IsingXX, ring_graph(4), {1.0, 0.0}});
    // all-up basis state: coupling terms only flip, field gives -N on the diagonal
    CHECK(h.matrix(0, 0).real() == doctest::Approx(-4.0));
}

TEST_CASE("tilted field matches the cos/sin expansion") {
    for (double phi : {0.0, 0.4, 1.3, std::numbers::pi, 5.0}) {
        const Matrix2 got = tilted_sigma_z(phi);
        const Matrix2 want =
            std::cos(phi) * pauli(PauliAxis::Z) + std::sin(phi) * pauli(PauliAxis::Y);
        CHECK(max_abs(Matrix(got - want)) < 1e-12);
    }
}

TEST_CASE("built Hamiltonians are Hermitian") {
    for (auto spec : {HamiltonianSpec{Model::IsingXX, ring_graph(4), {0.7, 1.1}},
                      HamiltonianSpec{Model::XY, star_graph(3), {-0.5, 2.0}},
                      HamiltonianSpec{Model::ThreeBodyXYX, triple_ring(4), {}}}) {
        auto h = build_hamiltonian(spec);
        CHECK(max_abs(h.matrix - h.matrix.adjoint()) < 1e-10);
    }
}

TEST_CASE("XY couplings commute with the total z rotation") {
    auto h = build_hamiltonian({Model::XY, ring_graph(4), {}});
    Matrix sz_total = Matrix::Zero(16, 16);
    for (int k = 0; k < 4; ++k) sz_total += embed_pauli(4, {{k, PauliAxis::Z}});
    CHECK(max_abs(h.matrix * sz_total - sz_total * h.matrix) < 1e-10);
}

TEST_CASE("zero-field Ising summands commute pairwise") {
    auto g = ring_graph(5);
    std::vector<Matrix> terms;
    for (auto [k, l] : g.edges)
        terms.push_back(embed_pauli(5, {{k, PauliAxis::X}, {l, PauliAxis::X}}));
    for (size_t a = 0; a < terms.size(); ++a)
        for (size_t b = a + 1; b < terms.size(); ++b)
            CHECK(max_abs(terms[a] * terms[b] - terms[b] * terms[a]) < 1e-10);
}

TEST_CASE("phi periodicity") {
    const double phi = 0.73;
    auto a = build_hamiltonian({Model::IsingXX, ring_graph(3), {1.2, phi}});
    auto b = build_hamiltonian({Model::IsingXX, ring_graph(3), {1.2, phi + 2 * std::numbers::pi}});
    CHECK(max_abs(a.matrix - b.matrix) < 1e-10);
}

TEST_CASE("model/graph mismatch is rejected") {
    CHECK_THROWS_AS(build_hamiltonian({Model::ThreeBodyXYX, ring_graph(4), {}}), DomainError);
    CHECK_THROWS_AS(build_hamiltonian({Model::IsingXX, triple_ring(4), {}}), DomainError);
}
