#include <gtest/gtest.h>

#include <random>

#include "sperner/generators.hpp"
#include "sperner/graph.hpp"
#include "support/brute_force.hpp"

using namespace sperner;

namespace {

MetricDigraph self_loop(const std::string& len = "1.0") {
    return MetricDigraph({"s"}, {{"loop", "s", "s", len}}, "s");
}

MetricDigraph one_cycle() {
    return MetricDigraph({"s", "v"}, {{"sv", "s", "v", "1.5"}, {"vs", "v", "s", "2.5"}}, "s");
}

}  // namespace

TEST(ParseLength, AcceptsPositiveDecimals) {
    EXPECT_DOUBLE_EQ(parse_length("2.5"), 2.5);
    EXPECT_DOUBLE_EQ(parse_length("1.414213562373"), 1.414213562373);
    EXPECT_DOUBLE_EQ(parse_length("3e-2"), 0.03);
    EXPECT_DOUBLE_EQ(parse_length("7"), 7.0);
}

TEST(ParseLength, RejectsEverythingElse) {
    for (const char* bad : {"", "-1", "+1", "0", "0.0", "abc", "1.5x", "inf", "nan", "0x10", "."})
        EXPECT_THROW(parse_length(bad), StructuralError) << bad;
}

TEST(MetricDigraph, RejectsMalformedInput) {
    EXPECT_THROW(MetricDigraph({"s", "s"}, {}, "s"), StructuralError);
    EXPECT_THROW(MetricDigraph({"s"}, {}, "x"), StructuralError);
    EXPECT_THROW(MetricDigraph({"s"}, {{"e", "s", "s", "1"}, {"e", "s", "s", "2"}}, "s"),
                 StructuralError);
    EXPECT_THROW(MetricDigraph({"s"}, {{"e", "s", "q", "1"}}, "s"), StructuralError);
    EXPECT_THROW(MetricDigraph({"s"}, {{"e", "s", "s", "-1"}}, "s"), StructuralError);
    // isolated component
    EXPECT_THROW(MetricDigraph({"s", "a", "b"}, {{"e", "s", "s", "1"}, {"f", "a", "b", "1"}}, "s"),
                 StructuralError);
}

TEST(MetricDigraph, DenseIndicesFollowInputOrder) {
    auto g = one_cycle();
    EXPECT_EQ(g.vertex_index("v"), 1u);
    EXPECT_EQ(g.edge_index("vs"), 1u);
    EXPECT_EQ(g.source(), 0u);
    EXPECT_THROW(g.vertex_index("zz"), UnknownVertexError);
    EXPECT_THROW(g.edge_index("zz"), StructuralError);
}

TEST(ValidateSperner, SelfLoopIsSmallestMember) {
    auto g = self_loop();
    auto cert = validate_sperner(g);
    ASSERT_TRUE(cert.is_sperner);
    EXPECT_TRUE(cert.tree_edges.empty());
    EXPECT_EQ(cert.back_edges, std::vector<EdgeIndex>{0});
}

TEST(ValidateSperner, OneCyclePathGraph) {
    auto g = one_cycle();
    auto cert = validate_sperner(g);
    ASSERT_TRUE(cert.is_sperner);
    EXPECT_EQ(cert.tree_edges, std::vector<EdgeIndex>{0});
    EXPECT_EQ(cert.back_edges, std::vector<EdgeIndex>{1});
}

TEST(ValidateSperner, SecondIncomingEdgeIsNamed) {
    MetricDigraph g({"s", "v", "w"},
                    {{"sv", "s", "v", "1"}, {"sw", "s", "w", "1"}, {"vw", "v", "w", "1"},
                     {"ws", "w", "s", "1"}},
                    "s");
    auto cert = validate_sperner(g);
    EXPECT_FALSE(cert.is_sperner);
    ASSERT_TRUE(cert.violation);
    EXPECT_NE(cert.violation->find("'vw'"), std::string::npos) << *cert.violation;
}

TEST(ValidateSperner, CircleWithChordsIsOutOfClass) {
    auto cert = validate_sperner(circle_chords());
    EXPECT_FALSE(cert.is_sperner);
    EXPECT_TRUE(cert.violation);
}

TEST(ValidateSperner, TreeWithoutReturnIsNotStronglyConnected) {
    MetricDigraph g({"s", "a", "b"},
                    {{"sa", "s", "a", "1"}, {"sb", "s", "b", "1"}, {"as", "a", "s", "1"}}, "s");
    auto cert = validate_sperner(g);
    EXPECT_FALSE(cert.is_sperner);
    EXPECT_NE(cert.violation->find("strongly connected"), std::string::npos);
}

TEST(ValidateSperner, EdgelessGraphRejected) {
    EXPECT_FALSE(validate_sperner(MetricDigraph({"s"}, {}, "s")).is_sperner);
}

TEST(ValidateSperner, CertificateInvariantsOnRandomGraphs) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = random_sperner(rng, 1 + trial % 8, 1 + trial % 4);
        auto cert = validate_sperner(g);
        ASSERT_TRUE(cert.is_sperner) << *cert.violation;
        std::vector<EdgeIndex> all = cert.tree_edges;
        all.insert(all.end(), cert.back_edges.begin(), cert.back_edges.end());
        std::sort(all.begin(), all.end());
        EXPECT_EQ(all, all_edges(g));
        EXPECT_EQ(cert.tree_edges.size(), g.vertex_count() - 1);
        for (EdgeIndex b : cert.back_edges) EXPECT_EQ(g.edge(b).head, g.source());
        EXPECT_TRUE(brute::strongly_connected(g));
    }
}

// Cross-property: accepted iff exactly one source-avoiding walk reaches each
// vertex and the graph is strongly connected.
TEST(ValidateSperner, AgreesWithDefinitionOnSmallRandomDigraphs) {
    std::mt19937_64 rng(11);
    int accepted = 0;
    for (int trial = 0; trial < 600; ++trial) {
        const std::size_t n = 1 + trial % 4;
        MetricDigraph g = (trial % 3 == 0) ? random_sperner(rng, n, 1 + trial % 3)
                                           : random_digraph(rng, n, 1 + rng() % 4);
        if (g.edge_count() == 0) continue;
        const bool got = validate_sperner(g).is_sperner;
        EXPECT_EQ(got, brute::is_sperner_by_definition(g)) << "trial " << trial;
        accepted += got;
    }
    EXPECT_GT(accepted, 100);
}

TEST(SimpleChain, SourceIsEmpty) {
    auto g = one_cycle();
    auto cert = validate_sperner(g);
    EXPECT_TRUE(simple_chain(g, cert, "s").empty());
}

TEST(SimpleChain, PathGraph) {
    MetricDigraph g({"s", "a", "b"},
                    {{"sa", "s", "a", "1"}, {"ab", "a", "b", "1"}, {"bs", "b", "s", "1"}}, "s");
    auto cert = validate_sperner(g);
    EXPECT_EQ(simple_chain(g, cert, "b"), (std::vector<EdgeIndex>{0, 1}));
    EXPECT_THROW(simple_chain(g, cert, "nope"), UnknownVertexError);
}

TEST(SimpleChain, StarOfLoopsLeaf) {
    auto g = star_loops(3);
    auto cert = validate_sperner(g);
    EXPECT_EQ(simple_chain(g, cert, "v2"), std::vector<EdgeIndex>{g.edge_index("out2")});
}

TEST(SimpleChain, RequiresCertificate) {
    auto g = circle_chords();
    EXPECT_THROW(simple_chain(g, validate_sperner(g), "B"), ClassError);
}

TEST(Degrees, EmptySubset) {
    auto g = star_loops(2);
    for (VertexIndex v = 0; v < g.vertex_count(); ++v)
        EXPECT_EQ(degrees(g, {}, v), (DegreePair{0, 0}));
}

TEST(Degrees, WholeOneCycle) {
    auto g = one_cycle();
    auto all = all_edges(g);
    EXPECT_EQ(degrees(g, all, g.vertex_index("v")), (DegreePair{1, 1}));
    std::vector<EdgeIndex> bad{5};
    EXPECT_THROW(degrees(g, bad, 0), StructuralError);
}

TEST(Degrees, ChainPlusCycleHasOneIncomingAtNonSource) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_sperner(rng, 2 + trial % 7, 1 + trial % 4);
        auto cert = validate_sperner(g);
        for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
            if (v == g.source()) continue;
            for (std::size_t i = 0; i < cert.back_edges.size(); ++i) {
                std::vector<std::size_t> one{i};
                EXPECT_EQ(degrees(g, formula_subgraph(g, cert, v, one), v).rho_in, 1u);
            }
        }
    }
}

TEST(FormulaSubgraph, Examples) {
    auto g = one_cycle();
    auto cert = validate_sperner(g);
    EXPECT_TRUE(formula_subgraph(g, cert, g.source(), {}).empty());
    std::vector<std::size_t> first{0};
    EXPECT_EQ(formula_subgraph(g, cert, g.source(), first), all_edges(g));
    std::vector<std::size_t> out_of_range{1};
    EXPECT_THROW(formula_subgraph(g, cert, g.source(), out_of_range), IndexError);
}

TEST(FormulaSubgraph, AllCyclesCoverEveryEdgeAndUnionIsIdempotent) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_sperner(rng, 1 + trial % 8, 1 + trial % 4);
        auto cert = validate_sperner(g);
        std::vector<std::size_t> every(cert.back_edges.size());
        for (std::size_t i = 0; i < every.size(); ++i) every[i] = i;
        EXPECT_EQ(formula_subgraph(g, cert, g.source(), every), all_edges(g));
        auto twice = every;
        twice.insert(twice.end(), every.begin(), every.end());
        EXPECT_EQ(formula_subgraph(g, cert, g.source(), twice), all_edges(g));
    }
}

TEST(Invariants, CycleCountIsSourceInDegree) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = random_sperner(rng, 1 + trial % 8, 1 + trial % 4);
        auto cert = validate_sperner(g);
        EXPECT_EQ(cert.back_edges.size(), degrees(g, all_edges(g), g.source()).rho_in);
        EXPECT_EQ(brute::elementary_cycles(g).size(), cert.back_edges.size());
    }
}

TEST(Invariants, SourceInDegreeOfSubgraphIsSubsetSize) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_sperner(rng, 1 + trial % 6, 1 + trial % 4);
        auto cert = validate_sperner(g);
        const std::size_t k = cert.back_edges.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
            std::vector<std::size_t> subset;
            for (std::size_t i = 0; i < k; ++i)
                if (mask >> i & 1) subset.push_back(i);
            EXPECT_EQ(degrees(g, formula_subgraph(g, cert, g.source(), subset), g.source()).rho_in,
                      subset.size());
        }
    }
}

TEST(Invariants, HandshakeOnRandomDigraphs) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = random_digraph(rng, 1 + trial % 9, trial % 12);
        long long by_degrees = 0;
        auto all = all_edges(g);
        for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
            auto d = degrees(g, all, v);
            by_degrees += static_cast<long long>(d.rho_out) - static_cast<long long>(d.rho_in);
        }
        EXPECT_EQ(by_degrees, 0);
        EXPECT_EQ(handshake_sum(g), 0);
    }
}
