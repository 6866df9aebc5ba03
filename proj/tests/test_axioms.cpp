#include <catch2/catch_amalgamated.hpp>

#include "infodec/axioms.hpp"
#include "tables.hpp"

using namespace infodec;
using Catch::Matchers::WithinAbs;

namespace {

std::map<Axiom, AxiomVerdict> by_axiom(const std::vector<AxiomVerdict>& vs) {
  std::map<Axiom, AxiomVerdict> out;
  for (const auto& v : vs) out[v.axiom] = v;
  return out;
}

}  // namespace

TEST_CASE("axiom ids round-trip") {
  for (Axiom a : all_axioms()) CHECK(parse_axiom(to_string(a)) == a);
  CHECK_THROWS_AS(parse_axiom("xyz"), argument_error);
  CHECK(all_axioms().size() == 9);
}

TEST_CASE("builtin verdicts match their documentation") {
  for (const auto& c : builtin_cases()) {
    JointDistribution d = c.distribution();
    for (const char* name : {"imin", "ii", "si_kl", "si_lr"}) {
      // Geometric scores only run where the case has a two-source ground.
      if ((name == std::string("si_kl") || name == std::string("si_lr")) &&
          (c.self_mode || c.name == "left-mono" || c.name == "copy"))
        continue;
      AuditConfig cfg;
      cfg.target = c.target;
      cfg.self_mode = c.self_mode;
      cfg.axioms = c.default_axioms;
      std::vector<Axiom> failed;
      for (const auto& v : audit(find_measure(name), d, cfg))
        if (v.status == VerdictStatus::Fail) failed.push_back(v.axiom);
      std::vector<Axiom> expected;
      auto it = c.expected_failures.find(name);
      if (it != c.expected_failures.end()) expected = it->second;
      CAPTURE(c.name, name);
      CHECK(failed == expected);
    }
  }
}

TEST_CASE("the left-mono case pins the documented gap") {
  const CounterexampleCase& c = find_builtin("left-mono");
  JointDistribution d = c.distribution();
  AxiomVerdict v = audit_one(find_measure("imin"), d, Axiom::LM, c.target);
  REQUIRE(v.status == VerdictStatus::Fail);
  CHECK_THAT(v.gap, WithinAbs(0.12581458369391146, 1e-9));
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->measure == "imin");
  CHECK(v.witness->axiom == Axiom::LM);

  AxiomVerdict ok = audit_one(find_measure("ii"), d, Axiom::LM, c.target);
  CHECK(ok.status == VerdictStatus::Pass);
}

TEST_CASE("unknown builtin names list the choices") {
  CHECK_THROWS_WITH(find_builtin("zz"), Catch::Matchers::ContainsSubstring("left-mono"));
}

TEST_CASE("left monotonicity needs a splittable target") {
  JointDistribution d = tables::load(tables::kConflict);
  AxiomVerdict v = audit_one(find_measure("imin"), d, Axiom::LM, {"S"});
  CHECK(v.status == VerdictStatus::NotApplicable);
  AxiomVerdict lc = audit_one(find_measure("imin"), d, Axiom::LC, {"S"});
  CHECK(lc.status == VerdictStatus::NotApplicable);
}

TEST_CASE("independent bits pass the core axioms in both modes") {
  JointDistribution d = tables::load(tables::kIndependent);
  for (const char* name : {"imin", "ii"}) {
    AuditConfig self;
    self.self_mode = true;
    auto vs = by_axiom(audit(find_measure(name), d, self));
    CAPTURE(name);
    CHECK(vs[Axiom::GP].status == VerdictStatus::Pass);
    CHECK(vs[Axiom::S0].status == VerdictStatus::Pass);
    CHECK(vs[Axiom::I].status == VerdictStatus::Pass);
    CHECK(vs[Axiom::M].status == VerdictStatus::Pass);
    CHECK(vs[Axiom::LP].status == VerdictStatus::Pass);
    // Swapping target and sources needs a separate target.
    CHECK(vs[Axiom::S1].status == VerdictStatus::NotApplicable);

    AuditConfig std_cfg;
    std_cfg.target = {"X3"};
    auto ws = by_axiom(audit(find_measure(name), d, std_cfg));
    CHECK(ws[Axiom::S1].status == VerdictStatus::Pass);  // every swap is 0 bits
    CHECK(ws[Axiom::LM].status == VerdictStatus::NotApplicable);
    CHECK(ws[Axiom::LC].status == VerdictStatus::NotApplicable);
  }
}

TEST_CASE("the identity check passes on copies and fails on independence") {
  // Perfectly correlated pair: the pair's self-overlap equals I(A:B).
  JointDistribution corr = tables::load(std::string("A B\n0 0 1/2\n1 1 1/2\n"));
  for (const char* name : {"imin", "ii"}) {
    AxiomVerdict v = audit_one(find_measure(name), corr, Axiom::Id2, {}, 1e-7, true);
    CAPTURE(name);
    CHECK(v.status == VerdictStatus::Pass);
  }
  // Independent pair inside the copy channel: both measures claim a full bit
  // of overlap where the pair information is zero.
  JointDistribution cp = tables::load(tables::kCopyPair);
  AxiomVerdict v = audit_one(find_measure("imin"), cp, Axiom::Id2, {"S1", "S2"});
  REQUIRE(v.status == VerdictStatus::Fail);
  CHECK_THAT(v.gap, WithinAbs(1.0, 1e-9));
}

TEST_CASE("witness files replay to the same verdict") {
  const CounterexampleCase& c = find_builtin("left-mono");
  AxiomVerdict v =
      audit_one(find_measure("imin"), c.distribution(), Axiom::LM, c.target);
  REQUIRE(v.witness.has_value());
  std::string text = witness_to_text(*v.witness);
  AxiomWitness back = parse_witness(text);
  CHECK(back.measure == v.witness->measure);
  CHECK(back.axiom == v.witness->axiom);
  CHECK(back.target == v.witness->target);
  CHECK(back.self_mode == v.witness->self_mode);
  CHECK_THAT(back.gap, WithinAbs(v.witness->gap, 0.0));
  AxiomVerdict replayed = replay_witness(back);
  CHECK(replayed.status == VerdictStatus::Fail);
  CHECK_THAT(replayed.gap, WithinAbs(v.gap, 1e-12));
  CHECK_THROWS_AS(parse_witness("no directives here\n"), data_error);
}

TEST_CASE("parity certificate is infeasible, independent one is not") {
  SymmetryCertificate xo = symmetry_certificate(tables::load(tables::kXor));
  CHECK(xo.ground == 3);
  CHECK(xo.critical_node == "12|13|23");
  CHECK_THAT(xo.bottom_upper, WithinAbs(0.0, 1e-9));
  CHECK_THAT(xo.partial_bound, WithinAbs(-1.0, 1e-9));
  CHECK(xo.infeasible);
  std::map<std::string, double> values;
  for (const auto& e : xo.determined) values[e.node] = e.value;
  CHECK(values.size() == 16);  // everything except the all-pairs node and bottom
  CHECK_THAT(values.at("123"), WithinAbs(2.0, 1e-9));
  CHECK_THAT(values.at("12"), WithinAbs(2.0, 1e-9));
  CHECK_THAT(values.at("1"), WithinAbs(1.0, 1e-9));
  CHECK_THAT(values.at("12|13"), WithinAbs(2.0, 1e-9));
  CHECK_THAT(values.at("1|23"), WithinAbs(1.0, 1e-9));
  CHECK_THAT(values.at("1|2"), WithinAbs(0.0, 1e-9));

  SymmetryCertificate ind = symmetry_certificate(tables::load(tables::kIndependent));
  CHECK_THAT(ind.partial_bound, WithinAbs(1.0, 1e-9));
  CHECK_FALSE(ind.infeasible);

  SymmetryCertificate cf = symmetry_certificate(tables::load(tables::kConflict));
  CHECK_THAT(cf.partial_bound, WithinAbs(0.08170416594551044, 1e-9));
  CHECK_FALSE(cf.infeasible);
}

TEST_CASE("two-variable certificate pins all four nodes") {
  SymmetryCertificate r = symmetry_certificate(tables::load(tables::kCopyPair).marginalize({0, 1}));
  CHECK(r.ground == 2);
  CHECK_FALSE(r.infeasible);
  CHECK_THROWS_AS(symmetry_certificate(tables::load(tables::kLeftMono)), argument_error);
}

TEST_CASE("violation search finds, shrinks and freezes the left-mono failure") {
  SearchConfig cfg;
  cfg.axiom = Axiom::LM;
  cfg.seed = 7;
  cfg.budget = 2000;
  SearchResult r1 = search_violations(find_measure("imin"), cfg);
  REQUIRE(r1.found);
  CHECK(r1.gap > 1e-5);
  REQUIRE(r1.witness.has_value());
  // Shrinking should reach a small witness.
  JointDistribution w = read_distribution(r1.witness->dist_text);
  CHECK(w.support_size() <= 6);

  // Thread count must not change the outcome.
  cfg.jobs = 4;
  SearchResult r4 = search_violations(find_measure("imin"), cfg);
  CHECK(r4.found);
  CHECK(r4.hit_trial == r1.hit_trial);
  CHECK(r4.gap == r1.gap);  // bitwise
  CHECK(r4.witness->dist_text == r1.witness->dist_text);

  // The recorded witness replays to the recorded gap.
  AxiomVerdict rep = replay_witness(*r1.witness);
  CHECK(rep.status == VerdictStatus::Fail);
  CHECK_THAT(rep.gap, WithinAbs(r1.gap, 1e-12));
}

TEST_CASE("a search that cannot succeed reports not-found") {
  SearchConfig cfg;
  cfg.axiom = Axiom::GP;  // nonnegativity never breaks for these measures
  cfg.seed = 1;
  cfg.budget = 50;
  SearchResult r = search_violations(find_measure("ii"), cfg);
  CHECK_FALSE(r.found);
  CHECK(r.trials_used == 50);
}
