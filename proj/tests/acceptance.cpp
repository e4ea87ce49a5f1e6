// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "eqdelta/cli.hpp"
#include "eqdelta/eqdelta.hpp"
#include "eqdelta/io.hpp"
#include "support/oracle.hpp"

using namespace eqdelta;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

const std::string kCorpus = EQDELTA_CORPUS_DIR;

InvariantRegistry corpus_registry() {
  InvariantRegistry reg;
  io::registry_into(io::load_json(kCorpus + "/registry.json"), reg, "registry.json");
  reg.seal();
  return reg;
}

Outcome even_round_trip() {
  Outcome o;
  std::size_t checked = 0, both_odd = 0;
  for (long long p = -120; p <= 120; ++p) {
    if (p == 0) continue;
    for (long long q = 1; q <= 120; ++q) {
      if (gcd(Int(p), Int(q)) != 1) continue;
      bool odd = p % 2 != 0 && q % 2 != 0;
      try {
        Ncf e = expand_even(Slope(p, q));
        if (odd) o.fail("no BothOdd for " + std::to_string(p) + "/" + std::to_string(q));
        for (const auto& a : e)
          if (a % 2 != 0) o.fail("odd coefficient for " + std::to_string(p) + "/" + std::to_string(q));
        NcfValue v = eval_ncf(e);
        if (v.infinite || v.value != rat(p, q)) o.fail("round trip failed for " + std::to_string(p) + "/" + std::to_string(q));
        ++checked;
      } catch (const Error& err) {
        if (!odd || err.kind() != "BothOdd") o.fail(std::string("unexpected ") + err.what());
        ++both_odd;
      }
    }
  }
  if (o.ok) o.detail = std::to_string(checked) + " expansions exact, " + std::to_string(both_odd) + " BothOdd";
  return o;
}

Outcome lens_calibration() {
  Outcome o;
  std::size_t n = 0;
  for (long long p = 3; p <= 99; p += 2)
    for (long long q = 1; q < p; ++q) {
      if (gcd(Int(p), Int(q)) != 1) continue;
      Rat delta = lens_d(p, q).delta;
      Rat mb = mu_bar(lens_even_chain(p, q));
      long long sig = signature_profile(linking_matrix(lens_surgery_chain(p, q))).sigma();
      if (delta != -mb) o.fail("delta != -mu_bar at L(" + std::to_string(p) + "," + std::to_string(q) + ")");
      if (Rat(sig) != 8 * delta) o.fail("sigma != 8 delta at L(" + std::to_string(p) + "," + std::to_string(q) + ")");
      ++n;
    }
  if (o.ok) o.detail = std::to_string(n) + " lens spaces";
  return o;
}

Outcome mu_bar_identity() {
  Outcome o;
  auto star_mu = [](std::initializer_list<long long> e) {
    return mu_bar(smallest_even_star(brieskorn_seifert(BrieskornData::of(e))).graph);
  };
  Rat a = star_mu({2, 5, 11}), b = star_mu({2, 3, 13});
  Rat lhs = a - 2 * b;
  if (lhs != 1) o.fail("got " + to_string(lhs));
  o.detail = "mu_bar(2,5,11) = " + to_string(a) + ", mu_bar(2,3,13) = " + to_string(b) + ", difference " + to_string(lhs);
  return o;
}

Outcome brieskorn_engine() {
  Outcome o;
  InvariantRegistry reg;
  auto pos = derive_profile(brieskorn_space({2, 3, 5}, BrieskornInvolution::C), reg, false);
  auto neg = derive_profile(brieskorn_space({2, 3, 5}, BrieskornInvolution::C, Side::Neg), reg, false);
  auto pinned = [](const Bound& b, const Rat& v) { return b.value.pinned() && b.value.lo.value == v; };
  std::vector<long long> js;
  for (long long j = 0; j <= 64; ++j) js.push_back(j);
  for (long long j : {100LL, 1000LL, 1000000LL, kInfIndex - 1}) js.push_back(j);
  for (long long j : js) {
    if (j >= 1 && !pinned(query(pos, Side::Pos, DeltaIndex::e(j)), 1)) o.fail("delta^E_" + std::to_string(j) + "(Sigma(2,3,5)) != 1");
    if (!pinned(query(neg, Side::Pos, DeltaIndex::e(j)), -1)) o.fail("delta^E_" + std::to_string(j) + "(-Sigma(2,3,5)) != -1");
  }
  auto tail = query_tail(pos, Side::Pos, SpincType::E).tail;
  if (!tail.pinned() || tail.lo.value != 1) o.fail("tail is " + to_string(tail));
  auto ntail = query_tail(neg, Side::Pos, SpincType::E).tail;
  if (!ntail.pinned() || ntail.lo.value != -1) o.fail("tail of -Y is " + to_string(ntail));
  if (o.ok) o.detail = "checked j in [0,64] and large j, tails 1 and -1";
  return o;
}

Outcome obstruction_replay() {
  Outcome o;
  std::ostringstream out, err;
  int code = cli::run({"--format", "json", "extend", "--example", "obstruct-235-2313"}, out, err);
  if (code != 2) o.fail("exit code " + std::to_string(code) + " " + err.str());
  io::Json j = io::Json::parse(out.str());
  const auto& r = j.at("result");
  if (r.at("verdict") != "obstructed") o.fail("verdict " + r.at("verdict").get<std::string>());
  std::map<std::string, std::string> want{{"fixes-c", "prop:def(1)"}, {"negates-c", "prop:def(2)"}};
  for (const auto& b : r.at("branches")) {
    std::string action = b.at("action");
    if (b.at("verdict") != "obstructed") o.fail(action + " not obstructed");
    std::string chain = b.at("chain").dump();
    std::vector<std::string> needs{want[action]};
    // The E-type branch runs through the Casson values; the R-type one through mu_bar.
    if (action == "fixes-c") needs.insert(needs.end(), {"lambda(Sigma(2,5,11)) = -3", "lambda(Sigma(2,3,13)) = -2"});
    for (const auto& need : needs)
      if (chain.find(need) == std::string::npos) o.fail(action + " chain lacks " + need);
  }
  if (r.at("branches").size() != 2) o.fail("expected two branches");
  if (o.ok) o.detail = "both branches obstructed with the expected citations";
  return o;
}

Outcome embedding_numbers() {
  Outcome o;
  InvariantRegistry reg = corpus_registry();
  auto eq = [&](const std::string& what, const EpsBound& b, long long v) {
    if (!(b.lo == v && b.hi && *b.hi == v)) o.fail(what + " = " + to_string(b) + ", want " + std::to_string(v));
  };
  auto m = [](std::initializer_list<long long> e, Side s = Side::Pos) { return brieskorn_space(e, BrieskornInvolution::M, s); };
  auto c = [](std::initializer_list<long long> e) { return brieskorn_space(e, BrieskornInvolution::C); };

  auto b235m = embedding_bounds(m({2, 3, 5}), reg), b235c = embedding_bounds(c({2, 3, 5}), reg);
  eq("eps(Sigma(2,3,5))", b235m.eps_y, 8);
  eq("eps(Sigma(2,3,5),c)", b235c.eps_sigma, 8);
  eq("eps(Sigma(2,3,5),m)", b235m.eps_sigma, 8);
  eq("eps+(Sigma(2,3,5),m)", b235m.eps_plus, 8);
  eq("eps-(Sigma(2,3,5),c)", b235c.eps_minus, 8);
  eq("eps-(Sigma(2,3,5),m)", b235m.eps_minus, 8);

  auto b237m = embedding_bounds(m({2, 3, 7}), reg), b237c = embedding_bounds(c({2, 3, 7}), reg);
  eq("eps(Sigma(2,3,7))", b237m.eps_y, 10);
  eq("eps(Sigma(2,3,7),m)", b237m.eps_sigma, 10);
  eq("eps(Sigma(2,3,7),c)", b237c.eps_sigma, 10);
  eq("eps+(Sigma(2,3,7),m)", b237m.eps_plus, 10);
  eq("eps-(Sigma(2,3,7),c)", b237c.eps_minus, 10);
  eq("eps-(Sigma(2,3,7),m)", b237m.eps_minus, 12);

  auto b2313m = embedding_bounds(m({2, 3, 13}), reg);
  if (!(b2313m.eps_sigma.lo == 2 && b2313m.eps_sigma.hi && *b2313m.eps_sigma.hi == 6))
    o.fail("eps(Sigma(2,3,13),m) = " + to_string(b2313m.eps_sigma) + ", want [2,6]");
  eq("eps-(Sigma(2,3,13),m)", b2313m.eps_minus, 24);
  eq("eps(Sigma(2,3,13))", b2313m.eps_y, 0);

  for (auto [p, q] : {std::pair{3LL, 5LL}, {3LL, 7LL}, {3LL, 13LL}}) {
    auto b = embedding_bounds(brieskorn_space({2, p, q}, BrieskornInvolution::M), InvariantRegistry{});
    eq("eps-(Sigma(2," + std::to_string(p) + "," + std::to_string(q) + "),m)", b.eps_minus, (p - 1) * (q - 1));
  }
  if (o.ok) o.detail = "Sigma(2,3,5): 8; Sigma(2,3,7): 10 and eps- = 12; Sigma(2,3,13): [2,6] and eps- = 24; torus values 8, 12, 24";
  return o;
}

Outcome j_gamma_oracle() {
  Outcome o;
  std::size_t graphs = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kCorpus + "/graphs")) {
    PlumbingGraph g = io::graph_of(io::load_json(entry.path().string()), entry.path().string());
    if (g.size() > 8) continue;
    std::size_t fast = j_gamma(g), slow = j_gamma_bruteforce(g);
    if (fast != slow) o.fail(entry.path().filename().string() + ": " + std::to_string(fast) + " vs " + std::to_string(slow));
    ++graphs;
  }
  if (graphs == 0) o.fail("no corpus graphs");
  PlumbingGraph e8 = io::graph_of(io::load_json(kCorpus + "/graphs/e8.json"), "e8");
  if (j_gamma(e8) != 1) o.fail("j(E8) = " + std::to_string(j_gamma(e8)));
  PlumbingGraph single = PlumbingGraph::chain({Int(-2)});
  if (j_gamma(single) != 0) o.fail("j(single -2) = " + std::to_string(j_gamma(single)));
  std::size_t stars = 0;
  const long long as[] = {2, 3, 5, 7};
  for (long long b = -2; b <= 2; ++b)
    for (long long a1 : as)
      for (long long a2 : as)
        for (long long a3 : as) {
          if (!(a1 <= a2 && a2 <= a3)) continue;
          for (long long b1 = 1; b1 < a1; ++b1)
            for (long long b2 = 1; b2 < a2; ++b2)
              for (long long b3 = 1; b3 < a3; ++b3) {
                if (gcd(Int(a1), Int(b1)) != 1 || gcd(Int(a2), Int(b2)) != 1 || gcd(Int(a3), Int(b3)) != 1) continue;
                SeifertData s(Int(b), {{Int(a1), Int(b1)}, {Int(a2), Int(b2)}, {Int(a3), Int(b3)}});
                if (euler_number(s) <= 0) continue;
                StarPlumbing star;
                try {
                  star = smallest_even_star(s);
                } catch (const Error&) {
                  continue;
                }
                if (determinant(linking_matrix(star.graph)) == 0) continue;
                std::size_t j = j_gamma(star.graph);
                if (j != 0) o.fail("j = " + std::to_string(j) + " for e > 0 star of " + to_string(s));
                if (star.graph.size() <= 8 && j_gamma_bruteforce(star.graph) != j) o.fail("oracle mismatch on " + to_string(s));
                ++stars;
              }
        }
  if (stars == 0) o.fail("no e > 0 even stars generated");
  if (o.ok) o.detail = std::to_string(graphs) + " corpus graphs agree, j(E8) = 1, j(-2) = 0, " + std::to_string(stars) + " e > 0 stars with j = 0";
  return o;
}

IntMat random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMat p(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) p[i][i] = (rng() % 2) ? 1 : -1;
  for (int k = 0; k < 3 * static_cast<int>(n); ++k) {
    std::size_t a = rng() % n, b = rng() % n;
    if (a == b) continue;
    long long m = static_cast<long long>(rng() % 5) - 2;
    for (std::size_t r = 0; r < n; ++r) p[r][a] += m * p[r][b];
  }
  return p;
}

SymForm random_form(std::mt19937_64& rng, std::size_t n, long long range) {
  IntMat m(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m[i][j] = m[j][i] = static_cast<long long>(rng() % (2 * range + 1)) - range;
  return SymForm(m);
}

Outcome forms_suite() {
  Outcome o;
  std::mt19937_64 rng(20260501);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng() % 8;
    SymForm f = random_form(rng, n, 4);
    SymForm g = congruent(f, random_unimodular(rng, n));
    if (!(signature_profile(f) == signature_profile(g))) o.fail("signature changed under congruence");
    if (determinant(f) != determinant(g)) o.fail("determinant changed under unimodular congruence");
  }
  for (int t = 0; t < 100; ++t) {
    SymForm f = random_form(rng, 1 + rng() % 5, 3), g = random_form(rng, 1 + rng() % 5, 3);
    SymForm s = direct_sum(f, g);
    if (signature_profile(s).sigma() != signature_profile(f).sigma() + signature_profile(g).sigma()) o.fail("signature not additive");
    if (determinant(s) != determinant(f) * determinant(g)) o.fail("determinant not multiplicative");
  }
  for (int t = 0; t < 100; ++t) {
    SymForm f = random_form(rng, 1 + rng() % 7, 3);
    bool unique = solve_mod2(f, diagonal_parities(f)).size() == 1;
    bool odd = determinant(f) % 2 != 0;
    if (unique != odd) o.fail("solve_mod2 uniqueness disagrees with det parity");
  }
  if (o.ok) o.detail = "200 congruences, 100 direct sums, 100 mod-2 systems";
  return o;
}

Outcome engine_soundness() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::size_t infeasible = 0;
  for (int t = 0; t < 500; ++t) {
    DeltaProfile p = oracle::random_profile(rng, 12);
    bool engine = check(p).consistent;
    bool oracle = oracle::oracle_feasible(p);
    if (engine != oracle) {
      std::string facts;
      for (const auto& f : p.facts) facts += to_string(f) + (f.vs_ordinary ? " (vs ordinary)" : "") + "; ";
      o.fail("case " + std::to_string(t) + ": engine " + (engine ? "consistent" : "contradiction") + ", oracle " +
             (oracle ? "feasible" : "infeasible") + ": " + facts);
    }
    if (!oracle) ++infeasible;
  }
  if (o.ok) o.detail = "500 fact sets agree (" + std::to_string(infeasible) + " infeasible)";
  return o;
}

Outcome surface_table() {
  Outcome o;
  // b± = (y ± x)/2 must be non-negative integers.
  for (long long x = -5; x <= 5; ++x)
    for (long long y = 0; y <= 5; ++y) {
      bool bpm = (x + y) % 2 == 0 && x + y >= 0 && y - x >= 0;
      if (xy_feasible(x, y) != bpm) o.fail("table mismatch at (" + std::to_string(x) + "," + std::to_string(y) + ")");
    }
  std::size_t fired = 0, cases = 0;
  for (long long p = 3; p <= 13; p += 2)
    for (long long q = p + 2; q <= 13; q += 2) {
      if (gcd(Int(p), Int(q)) != 1) continue;
      Rat mb = detail::brieskorn_mu_bar(BrieskornData::of({2, p, q})).value;
      Int s = torus_signature(p, q);
      for (long long y : {1LL, 3LL, 5LL}) {
        // x = σ - e/2 = -y
        SurfaceData sd{KnotModel::torus(p, q), 2 * (s + y), Int(y)};
        Verdict v = surface_constraints(sd, InvariantRegistry{}).verdict;
        bool obstructed = v == Verdict::Obstructed;
        if (obstructed != (mb > 0))
          o.fail("T(" + std::to_string(p) + "," + std::to_string(q) + ") y=" + std::to_string(y) + ": " + to_string(v) + ", mu_bar " + to_string(mb));
        fired += obstructed;
        ++cases;
      }
    }
  if (o.ok) o.detail = "66-cell table matches; " + std::to_string(fired) + " of " + std::to_string(cases) + " boundary cases obstructed";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {"even continued fraction round trip", 5, even_round_trip},
      {"lens space calibration", 30, lens_calibration},
      {"mu_bar identity for Sigma(2,5,11) and Sigma(2,3,13)", 5, mu_bar_identity},
      {"Brieskorn engine values for Sigma(2,3,5)", 5, brieskorn_engine},
      {"obstruction replay for Sigma(2,5,11) # -2 Sigma(2,3,13)", 1, obstruction_replay},
      {"embedding numbers of Brieskorn spheres", 30, embedding_numbers},
      {"j(Gamma) against exhaustive enumeration", 60, j_gamma_oracle},
      {"forms property suite", 30, forms_suite},
      {"engine soundness against exact feasibility", 60, engine_soundness},
      {"surface constraints", 30, surface_table},
  };
  int failures = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = all[k].run();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > all[k].limit_s) r.fail("took " + std::to_string(s) + " s, limit " + std::to_string(all[k].limit_s) + " s");
    std::ostringstream time;
    time.precision(3);
    time << std::fixed << s;
    std::cout << (r.ok ? "PASS" : "FAIL") << " " << (k + 1) << " " << all[k].name << ": " << r.detail << " (" << time.str() << " s)" << std::endl;
    failures += !r.ok;
  }
  return failures == 0 ? 0 : 1;
}
