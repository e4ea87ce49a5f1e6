#include <gtest/gtest.h>

#include "eqdelta/eqdelta.hpp"

using namespace eqdelta;

TEST(Equivariant, SpincTypesFromInvolution) {
  auto m = classify_spinc_types(InvolutionKind::of(InvolutionVariant::PlumbingM), true, false, false);
  EXPECT_TRUE(m.count(SpincType::E));
  EXPECT_FALSE(m.count(SpincType::R));
  EXPECT_TRUE(m.count(SpincType::S));
  auto c = classify_spinc_types(InvolutionKind::of(InvolutionVariant::ConjugationC), false, false, false);
  EXPECT_EQ(c, SpincTypeSet{SpincType::R});
  auto isolated = classify_spinc_types(InvolutionKind::custom(-1, false, true), true, false, false);
  EXPECT_EQ(isolated, SpincTypeSet{SpincType::S});
  EXPECT_THROW(InvolutionKind::custom(0, true, true), Error);
}

TEST(Equivariant, ParseType) {
  EXPECT_EQ(parse_type("E"), SpincType::E);
  EXPECT_EQ(parse_type("S"), SpincType::S);
  EXPECT_THROW(parse_type("Q"), Error);
}

TEST(Equivariant, ChainGetsCaseOne) {
  PlumbingGraph g = PlumbingGraph::chain({Int(-2), Int(-4), Int(-2)});
  auto a = assign_z2_weights(g);
  EXPECT_EQ(a.component_case, std::vector<int>{1});
  EXPECT_TRUE(validate_z2_weights(g, a));
}

TEST(Equivariant, StarGetsCaseTwo) {
  std::vector<Vertex> vs{{"c", Int(-2)}, {"a", Int(-2)}, {"b", Int(-2)}, {"d", Int(-2)}};
  PlumbingGraph g(vs, {{0, 1}, {0, 2}, {0, 3}});
  auto a = assign_z2_weights(g);
  EXPECT_EQ(a.component_case, std::vector<int>{2});
  EXPECT_TRUE(validate_z2_weights(g, a));
}

TEST(Equivariant, HTreeIsNotZ2Plumbable) {
  std::vector<Vertex> vs;
  for (int i = 0; i < 6; ++i) vs.push_back({"v" + std::to_string(i), Int(-2)});
  PlumbingGraph g(vs, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {3, 5}});
  try {
    assign_z2_weights(g);
    FAIL() << "expected NotZ2Plumbable";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "NotZ2Plumbable");
  }
}

TEST(Equivariant, OddDegreeRejected) { EXPECT_THROW(assign_z2_weights(PlumbingGraph::chain({Int(-3)})), Error); }

TEST(Equivariant, S1RecursionMatchesReversedFraction) {
  for (auto d : {std::vector<long long>{-2, -2}, {-3, -5, -2}, {-2, -4, -6, -2}}) {
    std::vector<Int> v(d.begin(), d.end());
    S1Chain c = s1_weight_chain(v, {Int(0), Int(1)});
    ASSERT_TRUE(c.ratio.has_value());
    Ncf rev(v.rbegin(), v.rend());
    EXPECT_EQ(*c.ratio, eval_ncf(rev).value);
  }
}

TEST(Equivariant, SurgeryChainIsEvenAndStronglyInvertible) {
  for (auto [p, q] : {std::pair{1LL, 2LL}, {3LL, 2LL}, {-5LL, 4LL}, {7LL, 10LL}}) {
    FramedLink l = surgery_chain(Slope(p, q));
    l.validate();
    for (const auto& f : l.framings()) EXPECT_EQ(f % 2, 0);
    for (auto s : l.symmetry) EXPECT_EQ(s, ComponentSymmetry::StronglyInvertible);
    Ncf a = l.framings();
    EXPECT_EQ(eval_ncf(a).value, rat(p, q));
  }
  EXPECT_THROW(surgery_chain(Slope(2, 1)), Error);
}

TEST(Equivariant, HyperbolicInvolutions) {
  auto hs = hyperbolic_involutions();
  EXPECT_EQ(hs.size(), 4u);
}
