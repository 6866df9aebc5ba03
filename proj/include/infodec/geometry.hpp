#pragma once

// Geometric shared information.
//
// For each joint source outcome, the posteriors p(target | source_i) span a
// polytope inside the probability simplex; the shared posterior is the point
// of that polytope closest (in KL divergence) to the target prior.  Summing
// the leftover divergences weighted by the source tuple probabilities gives
// SI_kl; scoring the shared posterior against the prior with the joint
// likelihood-ratio form gives SI_lr.
//
// The inner problem  min_{lambda in simplex} D(sum_j lambda_j q_j || prior)
// is smooth and convex; it is solved with pairwise Frank-Wolfe steps (move
// weight from the worst active vertex toward the best one) and an exact line
// search by bisecting the directional derivative.  Pairwise steps converge
// linearly, so the 1e-10 duality-gap certificate is reachable; with two
// vertices the first exact line search already lands on the optimum.

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "infodec/info.hpp"
#include "infodec/measures.hpp"

namespace infodec {

struct SolverOptions {
  double gap_tolerance = 1e-10;  // Frank-Wolfe duality gap certificate
  int max_iterations = 50000;
};

struct SharedPosterior {
  std::vector<double> distribution;  // the optimal mixture, over the prior's space
  std::vector<double> weights;       // mixture weights, zero at infeasible vertices
  double kl_bits = 0;                // D(distribution || prior)
  double fw_gap = 0;                 // final duality gap (suboptimality bound)
  int iterations = 0;
};

/// Solve for the prior-closest mixture of the given posterior vectors.
/// Vertices whose support sticks out of the prior's support have infinite
/// objective everywhere and are excluded; if that excludes everything the
/// problem is infeasible.
inline SharedPosterior shared_posterior(const std::vector<std::vector<double>>& posteriors,
                                        const std::vector<double>& prior,
                                        const SolverOptions& opt = {}) {
  const std::size_t k = posteriors.size();
  const std::size_t n = prior.size();
  if (k == 0) throw argument_error("no posteriors given");
  for (const auto& q : posteriors)
    if (q.size() != n) throw argument_error("posterior/prior dimension mismatch");
  auto check_simplex = [](const std::vector<double>& v) {
    double sum = 0;
    for (double x : v) {
      if (x < -1e-12) throw argument_error("negative probability in posterior input");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw argument_error("posterior input does not sum to 1");
  };
  check_simplex(prior);
  for (const auto& q : posteriors) check_simplex(q);

  std::vector<int> feasible;
  for (std::size_t j = 0; j < k; ++j) {
    bool ok = true;
    for (std::size_t s = 0; s < n; ++s)
      if (posteriors[j][s] > 0 && prior[s] <= 0) { ok = false; break; }
    if (ok) feasible.push_back(static_cast<int>(j));
  }
  if (feasible.empty())
    throw infeasible_error("no posterior lies inside the prior's support");

  constexpr double kInvLn2 = 1.4426950408889634;  // d/dx of x*log2(x) minus the log term
  auto mix = [&](const std::vector<double>& w) {
    std::vector<double> m(n, 0.0);
    for (int j : feasible)
      for (std::size_t s = 0; s < n; ++s)
        m[s] += w[static_cast<std::size_t>(j)] * posteriors[static_cast<std::size_t>(j)][s];
    return m;
  };

  SharedPosterior out;
  out.weights.assign(k, 0.0);
  for (int j : feasible)
    out.weights[static_cast<std::size_t>(j)] = 1.0 / static_cast<double>(feasible.size());
  std::vector<double> m = mix(out.weights);

  std::vector<double> grad(k, 0.0);
  for (int it = 0; it < opt.max_iterations; ++it) {
    out.iterations = it;
    // grad_j = sum_s q_j(s) (log2(m(s)/p(s)) + 1/ln 2); -inf when q_j needs
    // a coordinate the current mixture has abandoned.
    for (int j : feasible) {
      const auto& q = posteriors[static_cast<std::size_t>(j)];
      double g = 0;
      for (std::size_t s = 0; s < n; ++s) {
        if (q[s] <= 0) continue;
        if (m[s] <= 0) { g = -std::numeric_limits<double>::infinity(); break; }
        g += q[s] * (std::log2(m[s] / prior[s]) + kInvLn2);
      }
      grad[static_cast<std::size_t>(j)] = g;
    }
    int best = feasible.front(), worst = -1;
    double at_lambda = 0;
    for (int j : feasible) {
      double g = grad[static_cast<std::size_t>(j)];
      double w = out.weights[static_cast<std::size_t>(j)];
      at_lambda += w > 0 ? w * g : 0;
      if (g < grad[static_cast<std::size_t>(best)]) best = j;
      if (w > 0 && (worst < 0 || g > grad[static_cast<std::size_t>(worst)])) worst = j;
    }
    out.fw_gap = at_lambda - grad[static_cast<std::size_t>(best)];
    if (out.fw_gap < opt.gap_tolerance) break;

    // Pairwise step: shift up to weights[worst] from `worst` to `best`.
    const auto& qb = posteriors[static_cast<std::size_t>(best)];
    const auto& qw = posteriors[static_cast<std::size_t>(worst)];
    double gamma_max = out.weights[static_cast<std::size_t>(worst)];
    auto slope = [&](double gamma) {
      double v = 0;
      bool pos_inf = false, neg_inf = false;
      for (std::size_t s = 0; s < n; ++s) {
        double dir = qb[s] - qw[s];
        if (dir == 0) continue;
        double ms = m[s] + gamma * dir;
        if (ms <= 0) {
          (dir > 0 ? neg_inf : pos_inf) = true;
          continue;
        }
        v += dir * (std::log2(ms / prior[s]) + kInvLn2);
      }
      if (neg_inf) return -std::numeric_limits<double>::infinity();
      if (pos_inf) return std::numeric_limits<double>::infinity();
      return v;
    };
    double gamma = gamma_max;
    if (slope(gamma_max) > 0) {
      double lo = 0, hi = gamma_max;
      for (int b = 0; b < 200 && hi - lo > 1e-17; ++b) {
        double mid = 0.5 * (lo + hi);
        (slope(mid) <= 0 ? lo : hi) = mid;
      }
      gamma = 0.5 * (lo + hi);
    }
    out.weights[static_cast<std::size_t>(best)] += gamma;
    out.weights[static_cast<std::size_t>(worst)] -= gamma;
    if (gamma >= gamma_max || out.weights[static_cast<std::size_t>(worst)] < 1e-16)
      out.weights[static_cast<std::size_t>(worst)] = 0;  // clean drop, keep the simplex exact
    m = mix(out.weights);
  }
  if (out.fw_gap >= opt.gap_tolerance && feasible.size() > 1)
    throw evaluation_error("shared-posterior solver did not reach the gap certificate");
  out.distribution = std::move(m);
  out.kl_bits = kl_bits(out.distribution, prior);
  return out;
}

/// One joint source outcome with its polytope and solution.
struct SourceTuple {
  std::vector<Outcome> block_outcomes;         // per source group
  double weight = 0;                           // p(joint source outcome)
  std::vector<std::vector<double>> posteriors; // per group, over the target support
  SharedPosterior shared;
  double lr_term = 0;  // sum_s p(target,outcome) log2(shared(s)/prior(s)), in bits
};

struct SharedInformation {
  std::vector<Outcome> target_support;  // index space for all vectors here
  std::vector<double> prior;
  std::vector<SourceTuple> tuples;
  double si_kl = 0;
  double si_lr = 0;
  bool lr_finite = true;
  int offending_tuple = -1;  // first tuple whose lr term diverged
};

/// Full geometric analysis of target vs. source groups.  Both scores come
/// from the same per-tuple shared posteriors.
inline SharedInformation shared_information(const JointDistribution& d, const VarSet& target,
                                            const std::vector<VarSet>& sources,
                                            const SolverOptions& opt = {}) {
  validate_measure_args(d, target, sources);
  for (const auto& b : sources)
    if (!varset_intersection(b, target).empty())
      throw argument_error("geometric shared information needs sources disjoint from the target");

  SharedInformation out;
  JointDistribution ps = d.marginalize(target);
  std::map<Outcome, int> s_index;
  for (const auto& [s, p] : ps.mass()) {
    s_index[s] = static_cast<int>(out.target_support.size());
    out.target_support.push_back(s);
    out.prior.push_back(p.value());
  }

  // Per group: source outcome -> posterior vector over the target support.
  std::vector<std::map<Outcome, std::vector<double>>> posterior_of(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const VarSet& b = sources[i];
    VarSet u = varset_union(b, target);
    JointDistribution joint = d.marginalize(u);
    JointDistribution pb = d.marginalize(b);
    VarSet bpos, spos;
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (std::binary_search(b.begin(), b.end(), u[j])) bpos.push_back(static_cast<int>(j));
      else spos.push_back(static_cast<int>(j));
    }
    for (const auto& [o, p] : joint.mass()) {
      Outcome x = project(o, bpos);
      auto it = posterior_of[i]
                    .try_emplace(x, std::vector<double>(out.prior.size(), 0.0))
                    .first;
      it->second[static_cast<std::size_t>(s_index.at(project(o, spos)))] =
          p.value() / pb.prob(x);
    }
  }

  VarSet all_sources;
  for (const auto& b : sources) all_sources = varset_union(all_sources, b);
  JointDistribution px = d.marginalize(all_sources);
  VarSet union_st = varset_union(all_sources, target);
  JointDistribution pxs = d.marginalize(union_st);
  VarSet xpos, spos;
  for (std::size_t j = 0; j < union_st.size(); ++j) {
    if (std::binary_search(all_sources.begin(), all_sources.end(), union_st[j]))
      xpos.push_back(static_cast<int>(j));
    else spos.push_back(static_cast<int>(j));
  }
  std::map<Outcome, std::vector<std::pair<int, double>>> joint_by_x;
  for (const auto& [o, p] : pxs.mass())
    joint_by_x[project(o, xpos)].emplace_back(s_index.at(project(o, spos)), p.value());

  // Positions of each group's variables inside the sorted source union.
  std::vector<VarSet> proj(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i)
    for (std::size_t j = 0; j < all_sources.size(); ++j)
      if (std::binary_search(sources[i].begin(), sources[i].end(), all_sources[j]))
        proj[i].push_back(static_cast<int>(j));

  for (const auto& [x, p] : px.mass()) {
    SourceTuple t;
    t.weight = p.value();
    for (std::size_t i = 0; i < sources.size(); ++i) {
      Outcome xi = project(x, proj[i]);
      t.block_outcomes.push_back(xi);
      t.posteriors.push_back(posterior_of[i].at(xi));
    }
    t.shared = shared_posterior(t.posteriors, out.prior, opt);
    out.si_kl += t.weight * t.shared.kl_bits;
    for (const auto& [si, pjoint] : joint_by_x.at(x)) {
      double ms = t.shared.distribution[static_cast<std::size_t>(si)];
      if (ms <= 0) {
        t.lr_term = -std::numeric_limits<double>::infinity();
        if (out.lr_finite) {
          out.lr_finite = false;
          out.offending_tuple = static_cast<int>(out.tuples.size());
        }
        break;
      }
      t.lr_term += pjoint * std::log2(ms / out.prior[static_cast<std::size_t>(si)]);
    }
    out.si_lr += t.lr_term;
    out.tuples.push_back(std::move(t));
  }
  if (!out.lr_finite) out.si_lr = -std::numeric_limits<double>::infinity();
  return out;
}

inline double si_kl(const JointDistribution& d, const VarSet& target,
                    const std::vector<VarSet>& sources, const SolverOptions& opt = {}) {
  return shared_information(d, target, sources, opt).si_kl;
}

inline double si_lr(const JointDistribution& d, const VarSet& target,
                    const std::vector<VarSet>& sources, const SolverOptions& opt = {}) {
  return shared_information(d, target, sources, opt).si_lr;
}

/// Structural facts any point of the posterior polytope must satisfy; they
/// certify that a reported shared posterior really is such a point.
struct HullCheck {
  bool ordering_ok = true;   // coordinates ranked like every vertex ranks them
  bool support_ok = true;    // zero wherever every vertex is zero
  double worst_ordering = 0; // largest ordering violation found
  double worst_support = 0;  // largest mass on a common-zero coordinate
};

inline HullCheck verify_hull_lemma(const SharedPosterior& sp,
                                   const std::vector<std::vector<double>>& posteriors,
                                   double tol = 1e-9) {
  HullCheck out;
  const std::size_t n = sp.distribution.size();
  for (std::size_t s1 = 0; s1 < n; ++s1)
    for (std::size_t s2 = 0; s2 < n; ++s2) {
      if (s1 == s2) continue;
      bool all = true;
      for (const auto& q : posteriors)
        if (!(q[s1] <= q[s2])) { all = false; break; }
      if (!all) continue;
      double excess = sp.distribution[s1] - sp.distribution[s2];
      if (excess > out.worst_ordering) out.worst_ordering = excess;
    }
  for (std::size_t s = 0; s < n; ++s) {
    bool all_zero = true;
    for (const auto& q : posteriors)
      if (q[s] > 0) { all_zero = false; break; }
    if (all_zero && sp.distribution[s] > out.worst_support)
      out.worst_support = sp.distribution[s];
  }
  out.ordering_ok = out.worst_ordering <= tol;
  out.support_ok = out.worst_support <= tol;
  return out;
}

/// Demonstration that the complementary component of the kl-anchored
/// bivariate split can be negative: when the target is a function of one
/// source, the whole-channel references pin how far the shared component
/// over- or under-shoots.
struct NegativeSynergyReport {
  BivariateDecomposition split;  // bivariate split anchored at SI_kl
  double si_lr_value = 0;
  bool target_determined_by_1 = false;  // H(target | X1) == 0
  bool target_determined_by_2 = false;
  double reference_mi = 0;       // I(target : other source), when determined
  bool complementary_negative = false;
  bool kl_undershoots = false;   // SI_kl < reference  (kl side of the mismatch)
  bool lr_overshoots = false;    // SI_lr > reference  (lr side of the mismatch)
};

inline NegativeSynergyReport negative_synergy_report(const JointDistribution& d,
                                                     const VarSet& target, const VarSet& x1,
                                                     const VarSet& x2,
                                                     const SolverOptions& opt = {}) {
  NegativeSynergyReport out;
  SharedInformation si = shared_information(d, target, {x1, x2}, opt);
  RedundancyMeasure kl{"si_kl",
                       [&opt](const JointDistribution& dd, const VarSet& t,
                              const std::vector<VarSet>& b) { return si_kl(dd, t, b, opt); },
                       2};
  out.split = bivariate_decomposition(kl, d, target, x1, x2);
  out.si_lr_value = si.si_lr;
  out.target_determined_by_1 =
      std::abs(entropy(d, varset_union(target, x1)) - entropy(d, x1)) < 1e-9;
  out.target_determined_by_2 =
      std::abs(entropy(d, varset_union(target, x2)) - entropy(d, x2)) < 1e-9;
  if (out.target_determined_by_2) out.reference_mi = out.split.mi_1;
  else if (out.target_determined_by_1) out.reference_mi = out.split.mi_2;
  out.complementary_negative = out.split.complementary < 0;
  if (out.target_determined_by_1 || out.target_determined_by_2) {
    out.kl_undershoots = out.split.shared < out.reference_mi;
    out.lr_overshoots = si.si_lr > out.reference_mi;
  }
  return out;
}

}  // namespace infodec
