#include <gtest/gtest.h>

#include <random>

#include "eqdelta/eqdelta.hpp"

using namespace eqdelta;

TEST(Classical, LensDependsOnlyOnResidue) {
  for (long long p : {5, 7, 9, 15})
    for (long long q = 1; q < p; ++q) {
      if (gcd(Int(p), Int(q)) != 1) continue;
      EXPECT_EQ(lens_d(p, q).d, lens_d(p, q + p).d) << p << "," << q;
    }
}

TEST(Classical, LensInverseResidue) {
  // L(p,q) = L(p,q^{-1}) as oriented manifolds.
  for (long long p : {5, 7, 11, 13})
    for (long long q = 1; q < p; ++q) {
      if (gcd(Int(p), Int(q)) != 1) continue;
      Int qi = inv_mod(Int(q), Int(p));
      EXPECT_EQ(lens_d(p, q).delta, lens_d(Int(p), qi).delta) << p << "," << q;
    }
}

TEST(Classical, LensDeltaIsHalfD) {
  LensD l = lens_d(5, 2);
  EXPECT_EQ(l.delta * 2, l.d);
  EXPECT_THROW(lens_d(5, 2, 7), Error);
}

TEST(Classical, JGammaSmallCases) {
  EXPECT_EQ(j_gamma(PlumbingGraph::chain({Int(-2)})), 0u);
  EXPECT_EQ(j_gamma(PlumbingGraph::chain({Int(-2), Int(-2), Int(-2)})), 0u);
}

TEST(Classical, JGammaAgreesWithEnumerationOnRandomTrees) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 1 + rng() % 7;
    std::vector<Vertex> vs;
    std::vector<std::pair<std::size_t, std::size_t>> es;
    for (std::size_t i = 0; i < n; ++i) {
      long long d = -2 * static_cast<long long>(1 + rng() % 3);
      if (rng() % 5 == 0) d = -d;
      vs.push_back({"v" + std::to_string(i), Int(d)});
      if (i > 0) es.emplace_back(static_cast<std::size_t>(rng() % i), i);
    }
    PlumbingGraph g(vs, es);
    if (determinant(linking_matrix(g)) == 0) continue;
    EXPECT_EQ(j_gamma(g), j_gamma_bruteforce(g)) << "trial " << t;
  }
}

TEST(Classical, WuClassUniqueForOddDeterminant) {
  PlumbingGraph g = PlumbingGraph::chain({Int(-2), Int(-3), Int(-2)});
  if (determinant(linking_matrix(g)) % 2 != 0) EXPECT_EQ(wu_classes(g).size(), 1u);
}

TEST(Registry, SealAndLookup) {
  InvariantRegistry r;
  r.put("lambda", "Sigma(2,3,5)", Rat(-1), RegistrySource::Literature);
  EXPECT_TRUE(r.has("lambda", "Sigma(2,3,5)"));
  EXPECT_EQ(*r.find("lambda", "Sigma(2,3,5)"), Rat(-1));
  EXPECT_FALSE(r.find("lambda", "Sigma(2,3,7)").has_value());
  r.seal();
  EXPECT_THROW(r.put("x", "y", Rat(0), RegistrySource::User), Error);
  EXPECT_THROW(r.get("lambda", "nope"), Error);
}

TEST(Registry, SourceNames) {
  EXPECT_EQ(parse_source("literature"), RegistrySource::Literature);
  EXPECT_EQ(to_string(RegistrySource::Derived), "derived");
  EXPECT_THROW(parse_source("rumour"), Error);
}
