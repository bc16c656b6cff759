#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pgo/gpa.hpp"

using namespace pgo;

namespace {

std::vector<Loop> subalgebra_loops() {
    std::vector<Loop> out;
    for (Vertex a : {V0, V2, VP, VQ})
        for (Vertex b : {V0, V2, VP, VQ}) {
            if (a == b && (a == VP || a == VQ)) continue;
            for (const Loop& l : enumerate_block(a, b, 5)) out.push_back(l);
        }
    return out;
}

Box random_box(std::mt19937_64& rng, const std::vector<Loop>& loops, Shape s, int count) {
    std::uniform_int_distribution<std::size_t> pick(0, loops.size() - 1);
    std::uniform_int_distribution<int> c(-4, 4);
    Box b(s);
    for (int i = 0; i < count; ++i) b.add(loops[pick(rng)], RadicalScalar(RationalFunction(mpq_class(c(rng), 1 + std::abs(c(rng))))));
    return b;
}

Box on_subalgebra(const Box& b) { return b.restricted([](const Loop& l) { return in_subalgebra(l); }); }

class GpaTest : public ::testing::TestWithParam<Omega> {
protected:
    DimensionTable dims{GetParam()};
};

}  // namespace

TEST(Gpa, BlockBases) {
    EXPECT_EQ(paths_between(V2, V2, 4, 5).size(), 7u);
    EXPECT_EQ(enumerate_block(V2, V2, 5).size(), 49u);
    ASSERT_EQ(enumerate_block(V0, VP, 5).size(), 1u);
    EXPECT_EQ(loop_string(enumerate_block(V0, VP, 5)[0]), "0123P|0123P");
    EXPECT_TRUE(in_subalgebra(parse_entry("P323Q,P323Q")));
    EXPECT_FALSE(in_subalgebra(parse_entry("P3P3P,P3P3P")));
    EXPECT_EQ(enumerate_loops(Shape{4, 4}, 5).size(), 297u);
}

TEST(Gpa, DimensionsArePerronFrobenius) {
    for (Omega w : {Omega::Minus, Omega::Plus}) {
        DimensionTable t(w);
        for (int v = 0; v < kVertexCount; ++v) {
            if (!neighbourhood_complete(static_cast<Vertex>(v))) continue;
            RationalFunction s;
            for (Vertex u : neighbours(static_cast<Vertex>(v))) s += t.dim(u);
            EXPECT_TRUE(s == t.delta() * t.dim(static_cast<Vertex>(v))) << vertex_name(static_cast<Vertex>(v));
        }
        EXPECT_TRUE(t.dim(VP) / t.dim(VQ) == t.r());
    }
}

TEST_P(GpaTest, JonesProjectionsMatchStateSum) {
    for (int i = 1; i <= 3; ++i) {
        Box e = e_box(i, dims);
        for (const Loop& l : enumerate_loops(Shape{4, 4}, 5)) {
            auto [top, bottom] = paths_of(l);
            ASSERT_TRUE(e.at(l) == oracle::e_entry(i, top, bottom, dims)) << "e" << i << " at " << loop_string(l);
        }
    }
}

TEST_P(GpaTest, TemperleyLiebRelations) {
    const Box e1 = e_box(1, dims), e2 = e_box(2, dims), e3 = e_box(3, dims);
    const RadicalScalar delta(dims.delta());
    auto m = [](const Box& a, const Box& b) { return on_subalgebra(multiply(a, b)); };
    for (const Box* e : {&e1, &e2, &e3}) EXPECT_TRUE(m(*e, *e) == on_subalgebra(*e * delta));
    EXPECT_TRUE(m(m(e1, e2), e1) == on_subalgebra(e1));
    EXPECT_TRUE(m(m(e2, e1), e2) == on_subalgebra(e2));
    EXPECT_TRUE(m(m(e2, e3), e2) == on_subalgebra(e2));
    EXPECT_TRUE(m(m(e3, e2), e3) == on_subalgebra(e3));
    EXPECT_TRUE(m(e1, e3) == m(e3, e1));
    const Box id = identity_box(dims);
    EXPECT_TRUE(m(id, e2) == on_subalgebra(e2));
    EXPECT_TRUE(adjoint(e2) == e2);
}

TEST_P(GpaTest, CapAfterCupIsLoopValue) {
    std::mt19937_64 rng(17);
    const Shape upper{4, 4};
    for (int apex = 0; apex < 8; ++apex) {
        const Shape lower = cap_shape(upper, apex);
        const auto loops = enumerate_loops(lower, 4);
        ASSERT_FALSE(loops.empty());
        Box t = random_box(rng, loops, lower, 25);
        Box back = cap(cup(t, upper, apex, dims), apex, dims);
        EXPECT_TRUE(back == t * RadicalScalar(dims.delta())) << "apex " << apex;
    }
}

TEST_P(GpaTest, RotationHasOrderFour) {
    std::mt19937_64 rng(23);
    const auto loops = enumerate_loops(Shape{4, 4}, 5);
    for (int trial = 0; trial < 3; ++trial) {
        Box x = random_box(rng, loops, Shape{4, 4}, 40);
        Box y = rotate(rotate(rotate(rotate(x, dims), dims), dims), dims);
        EXPECT_TRUE(y == x);
        EXPECT_TRUE(rotate(x, dims) == click(click(x, dims), dims));
    }
    for (const Loop& l : loops) {
        RotationImage a = rotation_image(l, dims);
        Box b(Shape{4, 4});
        b.set(l, 1);
        Box r = rotate(b, dims);
        ASSERT_EQ(r.entries().size(), 1u);
        EXPECT_TRUE(r.at(a.target) == a.weight);
    }
}

TEST_P(GpaTest, MultiplicationIsAssociativeAndAdjointReverses) {
    std::mt19937_64 rng(31);
    const auto loops = subalgebra_loops();
    for (int trial = 0; trial < 4; ++trial) {
        Box a = random_box(rng, loops, Shape{4, 4}, 30), b = random_box(rng, loops, Shape{4, 4}, 30),
            c = random_box(rng, loops, Shape{4, 4}, 30);
        EXPECT_TRUE(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
        EXPECT_TRUE(adjoint(multiply(a, b)) == multiply(adjoint(b), adjoint(a)));
        EXPECT_TRUE(adjoint(adjoint(a)) == a);
    }
}

INSTANTIATE_TEST_SUITE_P(BothEigenvalues, GpaTest, ::testing::Values(Omega::Minus, Omega::Plus),
                         [](const auto& info) { return info.param == Omega::Minus ? "omega_minus" : "omega_plus"; });
