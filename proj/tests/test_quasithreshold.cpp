#include "oracles.hpp"

#include "qm/errors.hpp"
#include "qm/functionals.hpp"
#include "qm/kernel.hpp"
#include "qm/quasithreshold.hpp"
#include "qm/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

namespace {

using qm::EditStrategy;
using qm::Rational;

std::int64_t cube(int n) { return static_cast<std::int64_t>(n) * n * n; }

TEST(OmegaTilde, Examples) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto cs = qm::random_creation(3 + static_cast<int>(s % 20), s);
        EXPECT_EQ(qm::omega_tilde0(qm::threshold_from_creation(cs), qm::nesting_order(cs)), Rational(0));
    }
    const auto k3 = qm::complete_graph(3);
    for (const auto& p : oracle::permutations(3)) {
        const auto o = qm::VertexOrder::from_permutation(p);
        EXPECT_EQ(qm::omega_tilde0(k3, o), Rational(0));
        EXPECT_EQ(qm::omega_tilde1(k3, o), Rational(1, 9));
    }
    EXPECT_EQ(qm::omega_tilde0(qm::Graph(4), qm::VertexOrder::identity(4)), Rational(0));
    EXPECT_EQ(qm::omega_tilde1(qm::Graph(4), qm::VertexOrder::identity(4)), Rational(0));
}

TEST(OmegaTilde, MatchesOracle) {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const int n = 2 + static_cast<int>(s % 12);
        const auto g = qm::gnp(n, 0.5, s);
        const auto o = qm::degree_order(g).reversed();
        const std::vector<int> perm(o.vertices().begin(), o.vertices().end());
        const auto a = oracle::adjacency(g);
        EXPECT_EQ(qm::omega_tilde0(g, o), Rational(oracle::tilde_num(a, perm, true), cube(n)));
        EXPECT_EQ(qm::omega_tilde1(g, o), Rational(oracle::tilde_num(a, perm, false), cube(n)));
    }
}

TEST(OmegaTildeMin, Examples) {
    const auto k22 = qm::kmm_graph(2);
    const auto a = oracle::adjacency(k22);
    long long best = 1 << 30;
    for (const auto& p : oracle::permutations(4)) best = std::min(best, oracle::tilde_num(a, p, false));
    const auto r = qm::omega_tilde_min(k22);
    EXPECT_EQ(*r.exact_value, Rational(best, 64));
    EXPECT_EQ(*r.exact_value, Rational(1, 8));
    EXPECT_EQ(r.bound, qm::BoundKind::exact);

    for (std::uint64_t s = 0; s < 20; ++s) {
        const int n = 3 + static_cast<int>(s % 20);
        EXPECT_LE(qm::omega_tilde_min(qm::random_threshold(n, s)).value, 1.0 / n);
    }
    const auto c5 = qm::cycle_graph(5);
    const auto first = qm::omega_tilde1(c5, qm::VertexOrder::identity(5));
    for (const auto& p : oracle::permutations(5))
        EXPECT_EQ(qm::omega_tilde1(c5, qm::VertexOrder::from_permutation(p)), first);
}

TEST(OmegaTildeMin, DegreeOrderIsMinimum) {
    std::vector<qm::Graph> graphs;
    for (int n = 2; n <= 6; ++n)
        for (auto& g : oracle::graphs_up_to_isomorphism(n)) graphs.push_back(std::move(g));
    for (std::uint64_t s = 0; s < 6; ++s) graphs.push_back(qm::gnp(7 + static_cast<int>(s % 2), 0.5, s));
    for (const auto& g : graphs) {
        const auto a = oracle::adjacency(g);
        long long best = 1LL << 40;
        for (const auto& p : oracle::permutations(g.order())) best = std::min(best, oracle::tilde_num(a, p, false));
        EXPECT_EQ(*qm::omega_tilde_min(g).exact_value, Rational(best, cube(g.order())));
    }
}

TEST(OmegaTilde, DominatesSubsetFunctionals) {
    for (std::uint64_t s = 0; s < 60; ++s) {
        const int n = 2 + static_cast<int>(s % 7);
        const auto g = qm::gnp(n, 0.5, s);
        const auto perms = oracle::permutations(n);
        const auto o = qm::VertexOrder::from_permutation(perms[qm::mix64(s) % perms.size()]);
        const auto t0 = qm::omega_tilde0(g, o);
        const auto t1 = qm::omega_tilde1(g, o);
        EXPECT_LE(std::abs((t0 - t1).to_double()), 1.0 / n);
        EXPECT_GE(t0, *qm::omega_max_subset(g, o, 0, qm::SubsetStrategy::exact).exact_value);
        EXPECT_GE(t1, *qm::omega_max_subset(g, o, 1, qm::SubsetStrategy::exact).exact_value);
    }
}

TEST(EditForOrder, Cost) {
    const auto c4 = qm::cycle_graph(4);
    EXPECT_EQ(qm::edit_for_order(c4, qm::VertexOrder::identity(4)).distance, 2);
    const auto r = qm::edit_for_order(c4, qm::VertexOrder::from_permutation({0, 2, 1, 3}));
    EXPECT_EQ(r.distance, 1);
    const auto w = qm::threshold_from_creation(r.witness);
    int diff = 0;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) diff += w.adjacent(u, v) != c4.adjacent(u, v);
    EXPECT_EQ(diff, 1);
}

TEST(ThresholdEditDistance, Examples) {
    using Edges = std::vector<std::pair<int, int>>;
    EXPECT_EQ(qm::threshold_edit_distance(qm::cycle_graph(4), EditStrategy::exact).distance, 1);
    EXPECT_EQ(qm::threshold_edit_distance(qm::path_graph(4), EditStrategy::exact).distance, 1);
    EXPECT_EQ(qm::threshold_edit_distance(qm::graph_from_edges(4, Edges{{0, 1}, {2, 3}}), EditStrategy::exact).distance, 1);
    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto g = qm::random_threshold(3 + static_cast<int>(s % 40), s);
        for (auto st : {EditStrategy::dp_degree, EditStrategy::dp_search}) {
            const auto r = qm::threshold_edit_distance(g, st);
            EXPECT_EQ(r.distance, 0);
            EXPECT_EQ(r.bound, qm::BoundKind::exact);
        }
    }
}

void expect_witness(const qm::Graph& g, const qm::EditReport& r) {
    const auto w = qm::threshold_from_creation(r.witness);
    std::int64_t diff = 0;
    for (int u = 0; u < g.order(); ++u)
        for (int v = u + 1; v < g.order(); ++v) diff += w.adjacent(u, v) != g.adjacent(u, v);
    EXPECT_EQ(diff, r.distance);
}

TEST(ThresholdEditDistance, MatchesBruteForce) {
    for (int n = 1; n <= 6; ++n) {
        const auto targets = oracle::labeled_threshold_graphs(n);
        for (const auto& g : oracle::graphs_up_to_isomorphism(n)) {
            const auto r = qm::threshold_edit_distance(g, EditStrategy::exact);
            EXPECT_EQ(r.distance, oracle::edit_distance(oracle::edge_mask(oracle::adjacency(g)), targets));
            expect_witness(g, r);
            EXPECT_EQ(r.distance == 0, qm::is_threshold(g).has_value());
        }
    }
    const auto targets7 = oracle::labeled_threshold_graphs(7);
    EXPECT_EQ(targets7.size(), 29024U);
    for (std::uint64_t s = 0; s < 60; ++s) {
        const auto g = qm::gnp(7, 0.2 + 0.1 * static_cast<double>(s % 7), s);
        const auto exact = qm::threshold_edit_distance(g, EditStrategy::exact);
        EXPECT_EQ(exact.distance, oracle::edit_distance(oracle::edge_mask(oracle::adjacency(g)), targets7));
        for (auto st : {EditStrategy::dp_degree, EditStrategy::dp_search}) {
            const auto h = qm::threshold_edit_distance(g, st);
            EXPECT_GE(h.distance, exact.distance);
            expect_witness(g, h);
            if (h.distance > 0) EXPECT_EQ(h.bound, qm::BoundKind::upper_bound);
        }
    }
}

TEST(ThresholdEditDistance, SizeLimit) {
    EXPECT_THROW(qm::threshold_edit_distance(qm::gnp(30, 0.5, 1), EditStrategy::exact), qm::SizeLimitExceeded);
    qm::Limits big;
    big.exact_order = 12;
    const auto g = qm::gnp(12, 0.5, 2);
    EXPECT_LE(qm::threshold_edit_distance(g, EditStrategy::exact, big).distance,
              qm::threshold_edit_distance(g, EditStrategy::dp_search).distance);
}

TEST(Diagnostic, ThresholdSequenceTrendsToZero) {
    std::vector<qm::Graph> graphs;
    for (int n : {10, 20, 40, 80}) graphs.push_back(qm::random_threshold(n, static_cast<std::uint64_t>(n)));
    const auto rows = qm::quasithreshold_diagnostic(graphs);
    ASSERT_EQ(rows.size(), 4U);
    for (const auto& r : rows) {
        EXPECT_EQ(r.omega_tilde0, 0.0);
        EXPECT_LE(r.omega_tilde1, 1.0 / r.n);
        EXPECT_EQ(r.edit_density, 0.0);
        EXPECT_EQ(r.flag, "trend_to_zero(heuristic)");
    }
}

TEST(Diagnostic, QuasirandomSequenceDoesNot) {
    std::vector<qm::Graph> graphs;
    for (int n : {40, 80, 160}) graphs.push_back(qm::gnp(n, 0.5, static_cast<std::uint64_t>(n)));
    const auto rows = qm::quasithreshold_diagnostic(graphs);
    EXPECT_EQ(rows.back().flag, "no_trend(heuristic)");
    EXPECT_GT(rows.back().omega_tilde1, 0.09);
    EXPECT_GT(rows.back().edit_density, 0.1);
    std::ostringstream out;
    qm::write_diagnostic_csv(out, rows);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "index,n,omega_tilde0,omega_tilde1,edit_density,omega2_degree,flag");
}

TEST(Diagnostic, MonotoneKernelSamplesStayAwayFromZero) {
    std::vector<qm::Graph> graphs;
    for (int n : {20, 40, 80}) graphs.push_back(qm::gnw(n, qm::additive_kernel(64), static_cast<std::uint64_t>(n)));
    const auto rows = qm::quasithreshold_diagnostic(graphs);
    for (const auto& r : rows) EXPECT_GT(r.omega_tilde1, 0.03);
}

} // namespace
