#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "pgo/bigraph.hpp"
#include "pgo/roots.hpp"

using namespace pgo;

namespace {

const char* kPrincipal =
    "bwd1v1v1v1p1v1x0p0x1v1x0p1x0p0x1p0x1v1x0x0x0p0x1x0x0p0x0x0x1v1x0x0p1x0x0p0x1x0p0x1x1p0x0x1v0x0x1x0x0v1"
    "duals1v1v1x2v4x2x3x1v2x1x3x4x5v1";
const char* kDual = "bwd1v1v1v1p1v0x1p0x1v1x0p0x1v0x1p1x0p1x0v0x1x0p0x1x0p1x0x1v0x1x0v1duals1v1v1x2v1x2v1x2x3v1";
const char* kHaagerup = "bwd1v1v1v1p1v1x0p0x1v1x0p0x1";

BigraphParseError::Kind error_kind(const std::string& s) {
    try {
        parse_bigraph(s);
    } catch (const BigraphParseError& e) {
        return e.kind;
    }
    ADD_FAILURE() << "no parse error for " << s;
    return BigraphParseError::Kind::Syntax;
}

}  // namespace

TEST(Bigraph, ParsesTheDepthFiveShape) {
    Bigraph g = parse_bigraph("bwd1v1v1v1p1v1x0p0x1duals1v1v1x2");
    EXPECT_EQ(g.depths(), 6);
    EXPECT_EQ(g.vertices_at(4), 2);
    EXPECT_EQ(g.vertices_at(5), 2);
    EXPECT_EQ(g.multiplicity(5, 0, 0), 1);
    EXPECT_EQ(g.multiplicity(5, 1, 0), 0);
    ASSERT_EQ(g.duals().size(), 3u);
    EXPECT_EQ(g.duals()[2], (std::vector<int>{0, 1}));
}

TEST(Bigraph, DisplayedStringsRoundTrip) {
    for (const char* s : {kPrincipal, kDual, kHaagerup}) EXPECT_EQ(render_bigraph(parse_bigraph(s)), s);
    Bigraph g = parse_bigraph(kPrincipal);
    EXPECT_EQ(g.depths(), 11);
    EXPECT_EQ(g.blocks()[5].size(), 4u);
    EXPECT_EQ(render_bigraph(parse_bigraph("bwd")), "bwd");
}

TEST(Bigraph, RoundTripOnRandomGraphs) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 200; ++i) {
        const std::string s = oracle::random_bigraph_text(rng, i % 2 == 0);
        Bigraph g = parse_bigraph(s);
        ASSERT_EQ(render_bigraph(g), s);
        ASSERT_TRUE(parse_bigraph(render_bigraph(g)) == g);
    }
}

TEST(Bigraph, ParseErrorsCarryKindAndPosition) {
    using K = BigraphParseError::Kind;
    EXPECT_EQ(error_kind("bwdv1"), K::EmptyBlock);
    EXPECT_EQ(error_kind("xyz"), K::Syntax);
    EXPECT_EQ(error_kind("bwd1v1a"), K::Syntax);
    EXPECT_EQ(error_kind("bwd1v1x1"), K::CountMismatch);
    EXPECT_EQ(error_kind("bwd1v0"), K::Isolated);
    EXPECT_EQ(error_kind("bwd1v1p1duals1"), K::BadDuals);
    EXPECT_EQ(error_kind("bwd1v1p1duals1v3x1"), K::BadDuals);
    EXPECT_EQ(error_kind("bwd1v1p1p1duals1v2x3x1"), K::NonInvolution);
    EXPECT_NO_THROW(parse_bigraph("bwd2v1"));
    EXPECT_NO_THROW(parse_bigraph("bwd1v1p1duals1v2x1"));
    try {
        parse_bigraph("bwd1v1vx1");
        FAIL();
    } catch (const BigraphParseError& e) {
        EXPECT_EQ(e.position, 7u);
    }
}

TEST(Bigraph, GraphPairsAndFiles) {
    GraphPair p = parse_graph_pair(std::string("(") + kPrincipal + ", " + kDual + ")");
    ASSERT_TRUE(p.dual.has_value());
    EXPECT_TRUE(p.principal == parse_bigraph(kPrincipal));
    EXPECT_FALSE(parse_graph_pair(kHaagerup).dual.has_value());
}

TEST(Bigraph, KnownNorms) {
    // A_n has norm 2 cos(pi/(n+1))
    for (int n = 2; n <= 9; ++n) {
        std::string s = "bwd";
        for (int k = 1; k < n; ++k) s += (k > 1 ? "v1" : "1");
        GraphNorm g = graph_norm(parse_bigraph(s), 30);
        EXPECT_NEAR(g.norm.mid_d(), 2 * std::cos(M_PI / (n + 1)), 1e-12) << s;
        EXPECT_LT(g.norm.width_d(), 1e-25);
    }
    GraphNorm h = graph_norm(parse_bigraph(kHaagerup), 30);
    EXPECT_TRUE(h.index.intersects(haagerup_index().enclose(200)));
    for (const char* s : {kPrincipal, kDual}) {
        GraphNorm g = graph_norm(parse_bigraph(s), 30);
        EXPECT_NEAR(g.index.mid_d(), 3 + std::sqrt(5.0), 1e-12);
    }
}

TEST(Bigraph, NormIsMonotoneUnderAddingEdges) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 50; ++i) {
        Bigraph g = parse_bigraph(oracle::random_bigraph_text(rng, false));
        if (g.depths() < 2) continue;
        std::uniform_int_distribution<int> dd(1, g.depths() - 1);
        const int d = dd(rng);
        std::uniform_int_distribution<int> vv(0, g.vertices_at(d) - 1), uu(0, g.vertices_at(d - 1) - 1);
        Bigraph h = g.with_extra_edge(d, vv(rng), uu(rng));
        GraphNorm a = graph_norm(g, 30), b = graph_norm(h, 30);
        ASSERT_TRUE(a.norm.lower() < b.norm.lower()) << render_bigraph(g) << " -> " << render_bigraph(h);
        ASSERT_TRUE(a.norm.upper() < b.norm.upper());
    }
}

TEST(Bigraph, HypothesisOnDisplayedGraphs) {
    EXPECT_TRUE(check_hypothesis(parse_bigraph(kPrincipal)).overall);
    EXPECT_TRUE(check_hypothesis(parse_bigraph(kHaagerup)).overall);
    // the second string is the dual graph: both depth-5 vertices hang off one depth-4 vertex
    HypothesisReport d = check_hypothesis(parse_bigraph(kDual));
    EXPECT_TRUE(d.is_3_supertransitive);
    EXPECT_FALSE(d.overall);
    HypothesisReport a7 = check_hypothesis(parse_bigraph("bwd1v1v1v1v1v1"));
    EXPECT_TRUE(a7.is_3_supertransitive);
    EXPECT_FALSE(a7.depth4_pair.has_value());
    EXPECT_FALSE(a7.overall);
    EXPECT_FALSE(check_hypothesis(parse_bigraph("bwd1v1p1")).is_3_supertransitive);
}

TEST(Bigraph, HypothesisInvariantUnderRelabelling) {
    std::mt19937_64 rng(5);
    for (const char* s : {kPrincipal, kHaagerup, "bwd1v1v1v1p1v1x0p0x1v1x1"}) {
        Bigraph g = parse_bigraph(s);
        const bool base = check_hypothesis(g).overall;
        EXPECT_EQ(check_hypothesis(g.permuted(4, {1, 0})).overall, base) << s;
        if (g.depths() > 6) {
            std::vector<int> perm(static_cast<std::size_t>(g.vertices_at(6)));
            for (int t = 0; t < 10; ++t) {
                std::iota(perm.begin(), perm.end(), 0);
                std::shuffle(perm.begin(), perm.end(), rng);
                EXPECT_EQ(check_hypothesis(g.permuted(6, perm)).overall, base) << s;
            }
        }
    }
    // a common depth-6 neighbour of the two depth-5 vertices breaks the hypothesis
    EXPECT_FALSE(check_hypothesis(parse_bigraph("bwd1v1v1v1p1v1x0p0x1v1x1")).overall);
}
