#include <catch2/catch_amalgamated.hpp>

#include "infodec/generate.hpp"
#include "infodec/geometry.hpp"
#include "tables.hpp"

using namespace infodec;
using Catch::Matchers::WithinAbs;

namespace {

// Brute-force reference for two-vertex problems: scan the segment between
// the posteriors with a dense parameter grid, then locally refine.
double segment_min_kl(const std::vector<double>& q0, const std::vector<double>& q1,
                      const std::vector<double>& prior) {
  auto kl_at = [&](double lam) {
    std::vector<double> mix(q0.size());
    for (std::size_t i = 0; i < mix.size(); ++i)
      mix[i] = (1 - lam) * q0[i] + lam * q1[i];
    return kl_bits(mix, prior);
  };
  double best = kl_at(0), best_lam = 0;
  const int steps = 10000;
  for (int i = 1; i <= steps; ++i) {
    double lam = static_cast<double>(i) / steps;
    double v = kl_at(lam);
    if (v < best) { best = v; best_lam = lam; }
  }
  double lo = std::max(0.0, best_lam - 1.0 / steps);
  double hi = std::min(1.0, best_lam + 1.0 / steps);
  for (int it = 0; it < 200; ++it) {
    double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (kl_at(m1) <= kl_at(m2)) hi = m2; else lo = m1;
  }
  return std::min(best, kl_at((lo + hi) / 2));
}

}  // namespace

TEST_CASE("two-point problems solve exactly in one line search") {
  std::vector<double> prior = {0.5, 0.5};
  SharedPosterior sp = shared_posterior({{2.0 / 3, 1.0 / 3}, {0.0, 1.0}}, prior);
  // The hull contains the prior, so the optimum touches it.
  CHECK_THAT(sp.kl_bits, WithinAbs(0.0, 1e-12));
  CHECK(sp.fw_gap <= 1e-10);
  CHECK_THAT(sp.distribution[0], WithinAbs(0.5, 1e-8));
  double wsum = 0;
  for (double w : sp.weights) { CHECK(w >= 0); wsum += w; }
  CHECK_THAT(wsum, WithinAbs(1.0, 1e-9));
}

TEST_CASE("one-sided hulls keep the closest vertex") {
  std::vector<double> prior = {0.5, 0.5};
  SharedPosterior sp = shared_posterior({{2.0 / 3, 1.0 / 3}, {1.0, 0.0}}, prior);
  CHECK_THAT(sp.distribution[0], WithinAbs(2.0 / 3, 1e-9));
  CHECK_THAT(sp.kl_bits, WithinAbs(kl_bits({2.0 / 3, 1.0 / 3}, prior), 1e-12));
}

TEST_CASE("degenerate and infeasible inputs are rejected") {
  CHECK_THROWS_AS(shared_posterior({}, {0.5, 0.5}), argument_error);
  CHECK_THROWS_AS(shared_posterior({{1.0}}, {0.5, 0.5}), argument_error);
  CHECK_THROWS_AS(shared_posterior({{0.7, 0.7}}, {0.5, 0.5}), argument_error);
  // Every vertex leaks mass outside the prior's support: infeasible.
  CHECK_THROWS_AS(shared_posterior({{0.5, 0.5}}, {1.0, 0.0}), infeasible_error);
  // A feasible vertex saves the day even when others leak.
  SharedPosterior sp = shared_posterior({{0.5, 0.5}, {1.0, 0.0}}, {1.0, 0.0});
  CHECK_THAT(sp.distribution[0], WithinAbs(1.0, 1e-12));
  CHECK(sp.weights[0] == 0.0);
}

TEST_CASE("solver matches the segment grid on random two-source tables") {
  GeneratorConfig gen;
  gen.source_count = 2;
  gen.target_count = 1;
  gen.max_arity = 3;
  int tuples_checked = 0;
  for (std::uint64_t trial = 0; trial < 40; ++trial) {
    JointDistribution d = random_distribution(gen, 47, trial);
    VarSet s = d.resolve({"S"});
    SharedInformation si = shared_information(d, s, {{0}, {1}});
    for (const auto& t : si.tuples) {
      REQUIRE(t.posteriors.size() == 2);
      double ref = segment_min_kl(t.posteriors[0], t.posteriors[1], si.prior);
      CAPTURE(trial);
      CHECK_THAT(t.shared.kl_bits, WithinAbs(ref, 1e-6));
      // Never farther from the prior than the nearest vertex.
      double nearest = std::min(kl_bits(t.posteriors[0], si.prior),
                                kl_bits(t.posteriors[1], si.prior));
      CHECK(t.shared.kl_bits <= nearest + 1e-7);
      HullCheck hc = verify_hull_lemma(t.shared, t.posteriors, 1e-7);
      CHECK(hc.ordering_ok);
      CHECK(hc.support_ok);
      ++tuples_checked;
    }
    CHECK(si.lr_finite);
  }
  CHECK(tuples_checked > 100);
}

TEST_CASE("conflict table: prior on mismatch, nearest posterior on match") {
  JointDistribution d = tables::load(tables::kConflict);
  VarSet s = d.resolve({"S"});
  SharedInformation si = shared_information(d, s, {{1}, {2}});
  REQUIRE(si.tuples.size() == 4);
  CHECK_THAT(si.si_kl, WithinAbs(0.05446944396367363, 1e-9));
  CHECK_THAT(si.si_lr, WithinAbs(0.2766916661858957, 1e-9));
  CHECK(si.lr_finite);
  for (const auto& t : si.tuples) {
    bool matched = t.block_outcomes[0] == t.block_outcomes[1];
    for (std::size_t i = 0; i < si.prior.size(); ++i) {
      if (matched) continue;
      CHECK_THAT(t.shared.distribution[i], WithinAbs(si.prior[i], 1e-8));
    }
    if (matched) {
      // The shared posterior is the weaker source's posterior p(S|x1).
      double hi = t.block_outcomes[0][0] == 0 ? 2.0 / 3 : 1.0 / 3;
      CHECK_THAT(t.shared.distribution[0], WithinAbs(hi, 1e-8));
    }
  }
}

TEST_CASE("geometric scores are restricted to disjoint outside sources") {
  JointDistribution d = tables::load(tables::kConflict);
  VarSet s = d.resolve({"S"});
  CHECK_THROWS_AS(shared_information(d, s, {{0}, {1}}), argument_error);
  CHECK_THAT(si_kl(d, s, {{1}, {2}}), WithinAbs(0.05446944396367363, 1e-9));
  CHECK_THAT(si_lr(d, s, {{1}, {2}}), WithinAbs(0.2766916661858957, 1e-9));
}

TEST_CASE("negative synergy report on the conflict table") {
  JointDistribution d = tables::load(tables::kConflict);
  NegativeSynergyReport r = negative_synergy_report(d, d.resolve({"S"}), {1}, {2});
  CHECK(r.complementary_negative);
  CHECK_THAT(r.split.complementary, WithinAbs(-0.027234721981836907, 1e-9));
  CHECK_FALSE(r.target_determined_by_1);
  CHECK(r.target_determined_by_2);
  CHECK_THAT(r.reference_mi, WithinAbs(0.08170416594551044, 1e-9));
  CHECK(r.kl_undershoots);
  CHECK(r.lr_overshoots);
  CHECK_THAT(r.si_lr_value, WithinAbs(0.2766916661858957, 1e-9));
}
