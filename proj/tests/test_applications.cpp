#include <gtest/gtest.h>

#include "eqdelta/eqdelta.hpp"

using namespace eqdelta;

namespace {

InvariantRegistry literature_registry() {
  InvariantRegistry reg;
  reg.put("lambda", "Sigma(2,5,11)", Rat(-3), RegistrySource::Literature);
  reg.put("lambda", "Sigma(2,3,13)", Rat(-2), RegistrySource::Literature);
  reg.put("eps", "Sigma(2,3,5)", Rat(8), RegistrySource::Literature);
  reg.put("eps", "Sigma(2,3,13)", Rat(0), RegistrySource::Literature);
  reg.seal();
  return reg;
}

ExtensionProblem sum_example(ExtensionAction a) {
  ConnectedSumSpace c{{brieskorn_space({2, 5, 11}, BrieskornInvolution::M), brieskorn_space({2, 3, 13}, BrieskornInvolution::M, Side::Neg),
                       brieskorn_space({2, 3, 13}, BrieskornInvolution::M, Side::Neg)}};
  ExtensionProblem x;
  x.boundary = {c};
  x.b2 = 1;
  x.b_minus = 1;
  x.sigma = -1;
  x.c_squared = -1;
  x.action = a;
  return x;
}

}  // namespace

TEST(Applications, VerdictNamesAndCodes) {
  EXPECT_EQ(to_string(Verdict::Obstructed), "obstructed");
  EXPECT_EQ(to_string(Verdict::Insufficient), "insufficient-data");
  EXPECT_EQ(exit_code(Verdict::Obstructed), 2);
  EXPECT_EQ(exit_code(Verdict::Insufficient), 3);
  EXPECT_EQ(exit_code(Verdict::Consistent), 0);
  EXPECT_EQ(parse_action("negates-c"), ExtensionAction::NegatesC);
  EXPECT_THROW(parse_action("rotates"), Error);
}

TEST(Applications, ExtensionValidation) {
  ExtensionProblem x = sum_example(ExtensionAction::FixesC);
  x.sigma = 0;
  EXPECT_THROW(x.validate(), Error);
  x = sum_example(ExtensionAction::FixesC);
  x.spin = true;
  EXPECT_THROW(x.validate(), Error);
}

TEST(Applications, ConnectedSumExampleObstructedInBothBranches) {
  InvariantRegistry reg = literature_registry();
  auto fixes = check_extension(sum_example(ExtensionAction::FixesC), reg);
  auto negates = check_extension(sum_example(ExtensionAction::NegatesC), reg);
  EXPECT_EQ(fixes.verdict, Verdict::Obstructed);
  EXPECT_EQ(negates.verdict, Verdict::Obstructed);
  EXPECT_EQ(combine_branches({fixes, negates}), Verdict::Obstructed);
}

TEST(Applications, MissingCassonValuesLeaveBranchOpen) {
  InvariantRegistry empty;
  auto r = check_extension(sum_example(ExtensionAction::FixesC), empty);
  EXPECT_NE(r.verdict, Verdict::Obstructed);
  EXPECT_THROW(check_extension(sum_example(ExtensionAction::FixesC), empty, true), Error);
}

TEST(Applications, E8FillingIsConsistent) {
  ExtensionProblem e8;
  e8.boundary = brieskorn_space({2, 3, 5}, BrieskornInvolution::C);
  e8.b2 = 8;
  e8.b_minus = 8;
  e8.sigma = -8;
  e8.spin = true;
  e8.action = ExtensionAction::MinusOneH2;
  EXPECT_EQ(check_extension(e8, InvariantRegistry{}).verdict, Verdict::Insufficient);
  InvariantRegistry reg;
  reg.put("delta", "Sigma(2,3,5)", Rat(1), RegistrySource::Literature);
  reg.seal();
  EXPECT_EQ(check_extension(e8, reg).verdict, Verdict::Consistent);
}

TEST(Applications, CombineRequiresEveryBranch) {
  VerdictReport a, b;
  a.verdict = Verdict::Obstructed;
  b.verdict = Verdict::Insufficient;
  EXPECT_EQ(combine_branches({a, b}), Verdict::Insufficient);
  b.verdict = Verdict::Consistent;
  EXPECT_EQ(combine_branches({a, b}), Verdict::Consistent);
  EXPECT_EQ(combine_branches({}), Verdict::Insufficient);
}

TEST(Applications, ConnectedSumEmbedding) {
  ConnectedSumSpace c{{brieskorn_space({2, 3, 5}, BrieskornInvolution::M), brieskorn_space({2, 3, 13}, BrieskornInvolution::M, Side::Neg)}};
  EmbeddingBounds b = embedding_bounds({c}, literature_registry());
  EXPECT_EQ(b.eps_y.lo, 8);
  EXPECT_EQ(*b.eps_y.hi, 8);
  EXPECT_EQ(b.eps_sigma.lo, 10);
  EXPECT_EQ(*b.eps_sigma.hi, 14);
}

TEST(Applications, EmbeddingOrderHolds) {
  InvariantRegistry reg = literature_registry();
  for (auto e : {std::initializer_list<long long>{2, 3, 5}, {2, 3, 7}, {2, 3, 11}, {2, 5, 7}})
    for (auto inv : {BrieskornInvolution::M, BrieskornInvolution::C}) {
      EmbeddingBounds b = embedding_bounds(brieskorn_space(e, inv), reg);
      EXPECT_GE(b.eps_plus.lo, b.eps_sigma.lo);
      EXPECT_GE(b.eps_minus.lo, b.eps_sigma.lo);
      EXPECT_GE(b.eps_sigma.lo, b.eps_y.lo);
      for (const EpsBound* x : {&b.eps_sigma, &b.eps_plus, &b.eps_minus, &b.eps_y})
        if (x->hi) EXPECT_LE(x->lo, *x->hi);
    }
}

TEST(Applications, SurfaceTableRejections) {
  EXPECT_FALSE(xy_feasible(3, 1));
  EXPECT_FALSE(xy_feasible(1, 2));
  EXPECT_FALSE(xy_feasible(0, -2));
  EXPECT_TRUE(xy_feasible(-3, 3));
  SurfaceData s{KnotModel::torus(3, 5), Int(0), Int(1)};  // x = -8
  EXPECT_EQ(surface_constraints(s, InvariantRegistry{}).verdict, Verdict::Infeasible);
  SurfaceData odd{KnotModel::torus(3, 5), Int(1), Int(1)};
  EXPECT_THROW(odd.validate(), Error);
}

TEST(Applications, SurfaceNeedsSignature) {
  SurfaceData s{KnotModel::opaque("K"), Int(0), Int(2)};
  EXPECT_THROW(surface_constraints(s, InvariantRegistry{}), Error);
}

TEST(Applications, NonSmoothableStabilization) {
  StabilizationProblem s;
  s.m = 4;
  auto r = nonsmoothable_stabilization(s);
  EXPECT_EQ(r.verdict, Verdict::NonSmoothable);
  EXPECT_FALSE(r.chain.empty());
  s.m = 3;
  EXPECT_EQ(nonsmoothable_stabilization(s).verdict, Verdict::NoVerdict);
  s.b2_w = 12;
  EXPECT_THROW(nonsmoothable_stabilization(s), Error);
  s.b2_w = 8;
  s.spin = false;
  EXPECT_THROW(nonsmoothable_stabilization(s), Error);
}
