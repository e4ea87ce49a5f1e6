#include <gtest/gtest.h>

#include <functional>

#include "eqdelta/eqdelta.hpp"

using namespace eqdelta;

namespace {

PlumbingGraph e8_graph() {
  std::vector<Vertex> vs;
  for (int i = 0; i < 8; ++i) vs.push_back({"v" + std::to_string(i), Int(-2)});
  return PlumbingGraph(vs, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 7}});
}

std::string kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

}  // namespace

TEST(Plumbing, RejectsNonForests) {
  std::vector<Vertex> vs{{"a", Int(-2)}, {"b", Int(-2)}, {"c", Int(-2)}};
  EXPECT_THROW(PlumbingGraph(vs, {{0, 1}, {1, 2}, {2, 0}}), Error);
  EXPECT_THROW(PlumbingGraph(vs, {{0, 0}}), Error);
  EXPECT_THROW(PlumbingGraph(vs, {{0, 5}}), Error);
}

TEST(Plumbing, LinkingMatrixOfChain) {
  PlumbingGraph g = PlumbingGraph::chain({Int(-2), Int(-3)});
  SymForm a = linking_matrix(g);
  EXPECT_EQ(a(0, 0), -2);
  EXPECT_EQ(a(0, 1), 1);
  EXPECT_EQ(a(1, 1), -3);
}

TEST(Plumbing, E8MuBarAndRokhlin) {
  PlumbingGraph g = e8_graph();
  EXPECT_EQ(mu_bar(g), Rat(-1));
  EXPECT_EQ(mod_rat(rokhlin(g), Rat(2)), Rat(1));
  EXPECT_EQ(wu_square(g, wu_class(g)), 0);
}

TEST(Plumbing, ComponentsOfForest) {
  std::vector<Vertex> vs{{"a", Int(-2)}, {"b", Int(-2)}, {"c", Int(-4)}};
  PlumbingGraph g(vs, {{0, 1}});
  EXPECT_EQ(g.components().size(), 2u);
}

TEST(Seifert, ValidatesPairs) {
  EXPECT_EQ(kind_of([] { SeifertData(Int(0), {{Int(2), Int(4)}}); }), "ParseError");
  EXPECT_THROW(BrieskornData::of({2, 4, 5}), Error);
  EXPECT_THROW(BrieskornData::of({1, 3, 5}), Error);
}

TEST(Seifert, BrieskornEulerNumber) {
  for (auto e : {std::vector<long long>{2, 3, 5}, {2, 3, 7}, {2, 5, 11}, {3, 5, 7}}) {
    std::vector<Int> v(e.begin(), e.end());
    BrieskornData d(v);
    EXPECT_EQ(euler_number(brieskorn_seifert(d)), rat(-1, static_cast<long long>(d.product())));
  }
}

TEST(Seifert, EvenStarOfPoincareSphereIsUnimodular) {
  StarPlumbing star = smallest_even_star(brieskorn_seifert(BrieskornData::of({2, 3, 5})));
  EXPECT_TRUE(star.graph.all_degrees_even());
  Int det = determinant(linking_matrix(star.graph));
  EXPECT_TRUE(det == 1 || det == -1);
  EXPECT_EQ(mu_bar(star.graph), Rat(-1));
}

TEST(Seifert, StarPlumbingPreservesEulerNumberAndHomology) {
  for (auto e : {std::vector<long long>{2, 3, 7}, {2, 3, 13}, {2, 5, 11}, {2, 7, 9}}) {
    std::vector<Int> v(e.begin(), e.end());
    BrieskornData d(v);
    SeifertData s = brieskorn_seifert(d);
    StarPlumbing star = smallest_even_star(s);
    EXPECT_EQ(euler_number(star.data), euler_number(s));
    Int det = determinant(linking_matrix(star.graph));
    EXPECT_TRUE(det == 1 || det == -1) << to_string(d);
    EXPECT_TRUE(star.graph.all_degrees_even());
  }
}

TEST(Seifert, NormalizationKeepsEulerNumber) {
  SeifertData s(Int(-1), {{Int(2), Int(1)}, {Int(3), Int(1)}, {Int(5), Int(1)}});
  SeifertData n = normalize(s, {{1, 2}, {2, -1}});
  EXPECT_EQ(euler_number(n), euler_number(s));
}

TEST(Seifert, MuBarIdentityPieces) {
  EXPECT_EQ(detail::brieskorn_mu_bar(BrieskornData::of({2, 3, 5})).value, Rat(-1));
  EXPECT_EQ(detail::brieskorn_mu_bar(BrieskornData::of({2, 3, 7})).value, Rat(1));
  EXPECT_EQ(detail::brieskorn_mu_bar(BrieskornData::of({2, 3, 13})).value, Rat(0));
}
