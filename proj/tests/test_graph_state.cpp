#include "spintangle/graph_state.hpp"

#include "spintangle/entanglement.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <numbers>

using namespace spintangle;

namespace {
const double pi = std::numbers::pi;

Matrix ring_stabilizer_closed_form(int n, int l) {
    // K_l = -sx_{l-1} sz_l sx_{l+1}, indices mod n
    return -embed_pauli(n, {{(l - 1 + n) % n, PauliAxis::X},
                            {l, PauliAxis::Z},
                            {(l + 1) % n, PauliAxis::X}});
}
}  // namespace

TEST_CASE("stabilizer sets satisfy their invariants") {
    for (const auto& g : {ring_graph(4), star_graph(4)}) {
        auto s = stabilizers(g);
        const long d = dim_of(g.n_sites);
        REQUIRE(static_cast<int>(s.operators.size()) == g.n_sites);
        for (const auto& k : s.operators) {
            CHECK(max_abs(k - k.adjoint()) < 1e-10);
            CHECK(max_abs(k * k - Matrix::Identity(d, d)) < 1e-10);
        }
        for (size_t a = 0; a < s.operators.size(); ++a)
            for (size_t b = a + 1; b < s.operators.size(); ++b)
                CHECK(max_abs(s.operators[a] * s.operators[b] -
                              s.operators[b] * s.operators[a]) < 1e-10);
    }
    CHECK_THROWS_AS(stabilizers(triple_ring(3)), DomainError);
}

TEST_CASE("ring stabilizers match the closed form") {
    auto s = stabilizers(ring_graph(5));
    for (int l = 0; l < 5; ++l)
        CHECK(max_abs(s.operators[l] - ring_stabilizer_closed_form(5, l)) < 1e-10);
}

TEST_CASE("two-site stabilizer is sy sx") {
    CouplingGraph pair{2, {{0, 1}}, {}};
    auto s = stabilizers(pair);
    CHECK(max_abs(s.operators[0] - embed_pauli(2, {{0, PauliAxis::Y}, {1, PauliAxis::X}})) < 1e-10);
}

TEST_CASE("conjugation rules for the pi/4 two-spin unitary") {
    // U sx_k U^dag = sx_k ; U sy_k U^dag = -sz_k sx_l ;
    // U sz_k U^dag = sy_k sx_l ; spectators untouched.
    for (int n : {2, 3}) {
        CouplingGraph g{n, {{0, 1}}, {}};
        const Matrix u = ising_product_unitary(g, pi / 4.0);
        auto conj = [&](const Matrix& m) { return (u * m * u.adjoint()).eval(); };
        CHECK(max_abs(conj(embed_pauli(n, {{0, PauliAxis::X}})) -
                      embed_pauli(n, {{0, PauliAxis::X}})) < 1e-10);
        CHECK(max_abs(conj(embed_pauli(n, {{0, PauliAxis::Y}})) +
                      embed_pauli(n, {{0, PauliAxis::Z}, {1, PauliAxis::X}})) < 1e-10);
        CHECK(max_abs(conj(embed_pauli(n, {{0, PauliAxis::Z}})) -
                      embed_pauli(n, {{0, PauliAxis::Y}, {1, PauliAxis::X}})) < 1e-10);
        if (n == 3)
            for (auto axis : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z})
                CHECK(max_abs(conj(embed_pauli(n, {{2, axis}})) -
                              embed_pauli(n, {{2, axis}})) < 1e-10);
    }
}

TEST_CASE("graph_state examples") {
    auto cluster = graph_state(ring_graph(5), 0);
    for (int l = 0; l < 5; ++l) {
        auto r = pair_report(cluster, l, (l + 1) % 5);
        CHECK(r.concurrence_of_assistance == doctest::Approx(1.0));
    }

    CouplingGraph pair{2, {{0, 1}}, {}};
    auto g2 = graph_state(pair, 0);
    Vector want = Vector::Zero(4);
    want[0] = 1.0 / std::sqrt(2.0);
    want[3] = Complex(0, 1.0 / std::sqrt(2.0));
    CHECK(std::abs(std::abs(overlap(StateVector(2, want), g2)) - 1.0) < 1e-10);
}

TEST_CASE("every basis index yields a stabilized graph state") {
    for (int n : {3, 4, 5, 6}) {
        auto g = ring_graph(n);
        auto s = stabilizers(g);
        for (long m = 0; m < dim_of(n); ++m) {
            auto psi = graph_state(g, m);
            CHECK(verify_stabilized(psi, s, basis_eigenvalues(n, m)) < 1e-8);
        }
    }
}

TEST_CASE("verify_stabilized distinguishes wrong states and wrong signs") {
    auto g = ring_graph(4);
    auto s = stabilizers(g);

    CHECK(verify_stabilized(graph_state(g, 0), s, basis_eigenvalues(4, 0)) < 1e-9);

    // the all-up product is not a graph state
    CHECK(verify_stabilized(basis_state(4, 0), s, basis_eigenvalues(4, 0)) > 0.5);

    // one deliberately wrong sign forces a residual of 2 for an exact eigenstate
    auto eigs = basis_eigenvalues(4, 5);
    eigs[2] = -eigs[2];
    CHECK(verify_stabilized(graph_state(g, 5), s, eigs) >= std::sqrt(2.0) - 1e-6);

    CHECK_THROWS_AS(verify_stabilized(graph_state(g, 0), s, {1, 1, 1}), DomainError);
    CHECK_THROWS_AS(verify_stabilized(graph_state(g, 0), s, {1, 1, 2, 1}), DomainError);
}

TEST_CASE("a product Pauli-basis measurement localizes a Bell pair on ring clusters") {
    // For each adjacent pair of a ring cluster state there is a per-site choice
    // of X/Y/Z measurement bases on the other sites whose every outcome leaves
    // the pair maximally entangled.
    auto pauli_basis_vector = [](PauliAxis axis, int outcome) {
        Vector v(2);
        const double s = 1.0 / std::sqrt(2.0);
        switch (axis) {
            case PauliAxis::X: v << s, (outcome == 0 ? s : -s); break;
            case PauliAxis::Y: v << s, Complex(0, outcome == 0 ? s : -s); break;
            default: v << (outcome == 0 ? 1.0 : 0.0), (outcome == 0 ? 0.0 : 1.0); break;
        }
        return v;
    };

    for (int n : {4, 5}) {
        auto psi = graph_state(ring_graph(n), 0);
        const std::vector<int> keep{0, 1};
        const auto env = detail::complement_sites(n, keep);
        const int ne = static_cast<int>(env.size());

        double best_min = -1.0;
        std::vector<PauliAxis> axes(ne, PauliAxis::X);
        long n_choices = 1;
        for (int k = 0; k < ne; ++k) n_choices *= 3;
        for (long choice = 0; choice < n_choices; ++choice) {
            long c = choice;
            for (int k = 0; k < ne; ++k) {
                axes[k] = static_cast<PauliAxis>(c % 3);
                c /= 3;
            }
            double min_conc = 2.0;
            for (long outcome = 0; outcome < (1L << ne); ++outcome) {
                std::vector<Vector> basis_vecs;
                for (int k = 0; k < ne; ++k)
                    basis_vecs.push_back(pauli_basis_vector(axes[k], (outcome >> k) & 1));
                // contract <b_env | psi> onto the pair
                Vector sub = Vector::Zero(4);
                for (long e = 0; e < (1L << ne); ++e) {
                    Complex w = 1.0;
                    for (int k = 0; k < ne; ++k)
                        w *= std::conj(basis_vecs[k][(e >> (ne - 1 - k)) & 1]);
                    for (long s = 0; s < 4; ++s)
                        sub[s] += w * psi.amplitudes[detail::full_index(n, keep, env, s, e)];
                }
                const double p = sub.squaredNorm();
                if (p < 1e-12) { min_conc = 0.0; break; }
                min_conc = std::min(min_conc, pure_pair_concurrence((sub / std::sqrt(p)).eval()));
            }
            best_min = std::max(best_min, min_conc);
            if (best_min > 1.0 - 1e-6) break;
        }
        CHECK(best_min > 1.0 - 1e-6);
    }
}
