#include "oracles.hpp"

#include "qm/errors.hpp"
#include "qm/graph.hpp"
#include "qm/graph_io.hpp"
#include "qm/sampling.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <utility>
#include <vector>

namespace {

using Edges = std::vector<std::pair<int, int>>;

qm::Graph k22() { return qm::graph_from_edges(4, Edges{{0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

std::vector<int> order_vector(const qm::VertexOrder& o) { return {o.vertices().begin(), o.vertices().end()}; }

TEST(GraphFromEdges, Examples) {
    const auto tri = qm::graph_from_edges(3, Edges{{0, 1}, {1, 2}, {0, 2}});
    EXPECT_EQ(tri, qm::complete_graph(3));
    EXPECT_EQ(qm::graph_from_edges(2, Edges{}).edge_count(), 0);
    const auto g = k22();
    EXPECT_EQ(g.edge_count(), 4);
    EXPECT_TRUE(g.adjacent(2, 0));
    EXPECT_FALSE(g.adjacent(0, 1));
    EXPECT_EQ(g, qm::kmm_graph(2));
}

TEST(GraphFromEdges, DuplicatesCollapse) {
    const auto g = qm::graph_from_edges(3, Edges{{0, 1}, {1, 0}, {0, 1}});
    EXPECT_EQ(g.edge_count(), 1);
}

TEST(GraphFromEdges, Errors) {
    EXPECT_THROW(qm::graph_from_edges(3, Edges{{0, 3}}), qm::InvalidInput);
    EXPECT_THROW(qm::graph_from_edges(3, Edges{{-1, 0}}), qm::InvalidInput);
    EXPECT_THROW(qm::graph_from_edges(3, Edges{{1, 1}}), qm::InvalidInput);
}

TEST(Complement, Examples) {
    EXPECT_EQ(qm::complement(qm::complete_graph(3)).edge_count(), 0);
    EXPECT_EQ(qm::complement(qm::Graph(2)), qm::complete_graph(2));
    EXPECT_EQ(qm::complement(k22()), qm::graph_from_edges(4, Edges{{0, 1}, {2, 3}}));
}

TEST(Complement, Involution) {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto g = qm::gnp(1 + static_cast<int>(s % 90), 0.3, s);
        EXPECT_EQ(qm::complement(qm::complement(g)), g);
    }
}

TEST(DegreeCount, Examples) {
    const auto tri = qm::complete_graph(3);
    EXPECT_EQ(qm::degree_count(tri, 0, qm::VertexSet::from_mask(3, 0b110)), 2);
    EXPECT_EQ(qm::degree_count(k22(), 0, qm::VertexSet::from_mask(4, 0b0010)), 0);
    EXPECT_EQ(qm::degree_count(tri, 1, qm::VertexSet(3)), 0);
}

TEST(DegreeOrder, Examples) {
    const auto star = qm::graph_from_edges(4, Edges{{0, 1}, {0, 2}, {0, 3}});
    EXPECT_EQ(order_vector(qm::degree_order(star)), (std::vector<int>{1, 2, 3, 0}));
    EXPECT_EQ(order_vector(qm::degree_order(k22())), (std::vector<int>{0, 1, 2, 3}));
    EXPECT_EQ(order_vector(qm::degree_order(qm::path_graph(3))), (std::vector<int>{0, 2, 1}));
}

TEST(DegreeOrder, NondecreasingPermutation) {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto g = qm::gnp(40, 0.4, s);
        const auto o = qm::degree_order(g);
        std::vector<int> seen(40, 0);
        for (int i = 0; i < 40; ++i) ++seen[o.at(i)];
        EXPECT_EQ(std::count(seen.begin(), seen.end(), 1), 40);
        for (int i = 1; i < 40; ++i) EXPECT_LE(g.degree(o.at(i - 1)), g.degree(o.at(i)));
    }
}

TEST(IsThreshold, Examples) {
    const auto k3 = qm::is_threshold(qm::complete_graph(3));
    ASSERT_TRUE(k3.has_value());
    EXPECT_EQ(qm::threshold_from_creation(*k3), qm::complete_graph(3));
    EXPECT_FALSE(qm::is_threshold(qm::path_graph(4)).has_value());
    EXPECT_FALSE(qm::is_threshold(qm::cycle_graph(4)).has_value());
    EXPECT_FALSE(qm::is_threshold(qm::graph_from_edges(4, Edges{{0, 1}, {2, 3}})).has_value());
}

TEST(ThresholdFromCreation, Examples) {
    const auto id3 = qm::VertexOrder::identity(3);
    EXPECT_EQ(qm::threshold_from_creation({id3, {false, true, true}}), qm::complete_graph(3));
    EXPECT_EQ(qm::threshold_from_creation({id3, {false, false, false}}).edge_count(), 0);
    const auto g = qm::threshold_from_creation({qm::VertexOrder::identity(4), {false, true, false, true}});
    EXPECT_EQ(g, qm::graph_from_edges(4, Edges{{0, 1}, {3, 0}, {3, 1}, {3, 2}}));
}

TEST(IsThreshold, RoundTripRandomSequences) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const int n = 1 + static_cast<int>(qm::mix64(s) % 200);
        const auto cs = qm::random_creation(n, s);
        const auto g = qm::threshold_from_creation(cs);
        const auto back = qm::is_threshold(g);
        ASSERT_TRUE(back.has_value()) << "seed " << s;
        EXPECT_EQ(qm::threshold_from_creation(*back), g);
    }
}

TEST(IsThreshold, AgreesWithLabeledEnumeration) {
    for (int n = 1; n <= 6; ++n) {
        const auto masks = oracle::labeled_threshold_graphs(n);
        std::set<std::uint64_t> threshold(masks.begin(), masks.end());
        const int pairs = n * (n - 1) / 2;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << pairs); ++m) {
            const auto g = oracle::graph_from_mask(n, m);
            EXPECT_EQ(qm::is_threshold(g).has_value(), threshold.count(m) == 1) << "n=" << n << " mask=" << m;
        }
    }
}

TEST(NestingOrder, NeighbourhoodsNested) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const int n = 2 + static_cast<int>(s % 30);
        const auto cs = qm::random_creation(n, s);
        const auto g = qm::threshold_from_creation(cs);
        const auto o = qm::nesting_order(cs);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const int v = o.at(i);
                const int w = o.at(j);
                for (int z = 0; z < n; ++z)
                    if (z != w && g.adjacent(v, z)) EXPECT_TRUE(g.adjacent(w, z) || z == w);
            }
        }
    }
}

TEST(VertexOrder, RejectsNonPermutation) {
    EXPECT_THROW(qm::VertexOrder::from_permutation({0, 0, 1}), qm::InvalidInput);
    EXPECT_THROW(qm::VertexOrder::from_permutation({0, 3}), qm::InvalidInput);
    EXPECT_NO_THROW(qm::VertexOrder::from_permutation({2, 0, 1}));
}

TEST(GraphIo, TextAndJsonRoundTrip) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto g = qm::gnp(15, 0.5, s);
        std::stringstream text;
        qm::write_graph_text(text, g);
        EXPECT_EQ(qm::read_graph_text(text), g);
        EXPECT_EQ(qm::graph_from_json(qm::graph_to_json(g)), g);
        EXPECT_EQ(qm::parse_graph(qm::graph_to_json(g).dump()), g);
    }
}

TEST(GraphIo, Malformed) {
    EXPECT_THROW(qm::parse_graph("3 1\n0 5\n"), qm::InvalidInput);
    EXPECT_THROW(qm::parse_graph("3 2\n0 1\n"), qm::InvalidInput);
    EXPECT_THROW(qm::parse_graph("x"), qm::InvalidInput);
    EXPECT_THROW(qm::parse_graph("{\"n\": 2, \"edges\": [[0]]}"), qm::InvalidInput);
}

} // namespace
