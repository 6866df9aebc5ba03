#pragma once

// Redundancy measures: shared information a family of source groups carries
// about a target.
//
// i_min: for each target outcome s, every source group contributes the
// specific information  sum_a p(a|s) log2 [ p(s|a) / p(s) ]  and the target
// outcome scores the worst group; the expectation over s is the measure.
// The implementation uses the equivalent joint form
//   sum_s min_i sum_{a_i} p(a_i, s) log2 [ p(a_i, s) / (p(a_i) p(s)) ],
// which stays well-defined when source groups overlap the target.
//
// i_i: min_i I(S : A_i), the weakest whole-group channel.
//
// Source groups may overlap the target only in the self-decomposition
// pattern (every group inside the target); any partial overlap is an
// argument error.

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "infodec/info.hpp"

namespace infodec {

inline void validate_measure_args(const JointDistribution& d, const VarSet& target,
                                  const std::vector<VarSet>& blocks) {
  if (target.empty()) throw argument_error("empty target set");
  if (blocks.empty()) throw argument_error("no source groups");
  for (int v : target)
    if (v < 0 || v >= d.var_count()) throw argument_error("target index out of range");
  bool any_overlap = false, all_inside = true;
  for (const auto& b : blocks) {
    if (b.empty()) throw argument_error("empty source group");
    for (int v : b)
      if (v < 0 || v >= d.var_count()) throw argument_error("source index out of range");
    if (!varset_intersection(b, target).empty()) any_overlap = true;
    if (!varset_subset(b, target)) all_inside = false;
  }
  if (any_overlap && !all_inside)
    throw argument_error(
        "source groups may overlap the target only when all of them lie inside it");
}

/// Worst specific information per target outcome, averaged over the target.
inline double i_min(const JointDistribution& d, const VarSet& target,
                    const std::vector<VarSet>& blocks) {
  validate_measure_args(d, target, blocks);
  JointDistribution ps = d.marginalize(target);
  // Per group: joint (group u target) support regrouped by target outcome.
  struct GroupTable {
    std::map<Outcome, std::vector<std::pair<double, double>>> by_s;  // s -> (p(a,s), p(a))
  };
  std::vector<GroupTable> tables;
  for (const auto& b : blocks) {
    VarSet u = varset_union(b, target);
    JointDistribution joint = d.marginalize(u);
    JointDistribution pa = d.marginalize(b);
    VarSet bpos, spos;  // positions of the group / target inside the union
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (std::binary_search(b.begin(), b.end(), u[i])) bpos.push_back(static_cast<int>(i));
      if (std::binary_search(target.begin(), target.end(), u[i]))
        spos.push_back(static_cast<int>(i));
    }
    GroupTable t;
    for (const auto& [o, p] : joint.mass())
      t.by_s[project(o, spos)].emplace_back(p.value(), pa.prob(project(o, bpos)));
    tables.push_back(std::move(t));
  }
  double total = 0;
  for (const auto& [s, p] : ps.mass()) {
    double ps_v = p.value();
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& t : tables) {
      double specific = 0;
      auto it = t.by_s.find(s);
      if (it != t.by_s.end())
        for (const auto& [pas, pa] : it->second)
          specific += pas * std::log2(pas / (pa * ps_v));
      worst = std::min(worst, specific);
    }
    total += worst;
  }
  return total;
}

/// min_i I(S : A_i); the entropy-identity form keeps self-decomposition
/// (groups inside the target) well-defined.
inline double i_i(const JointDistribution& d, const VarSet& target,
                  const std::vector<VarSet>& blocks) {
  validate_measure_args(d, target, blocks);
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks)
    worst = std::min(worst, mutual_information_overlapping(d, target, b));
  return worst;
}

/// A named redundancy measure plus how to evaluate it conditionally.
struct RedundancyMeasure {
  std::string name;
  std::function<double(const JointDistribution&, const VarSet&, const std::vector<VarSet>&)>
      eval;
  /// Largest source-group count the measure supports on a full lattice.
  int max_sources = 4;
};

/// E_c [ measure(target ; groups | given = c) ]: condition on each outcome
/// of `given`, re-resolve the variable positions in the sliced space by
/// name, and average.  Zero-probability outcomes never appear.
inline double conditional_measure(const RedundancyMeasure& m, const JointDistribution& d,
                                  const VarSet& target, const std::vector<VarSet>& blocks,
                                  const VarSet& given) {
  validate_measure_args(d, target, blocks);
  if (given.empty()) throw argument_error("empty conditioning set");
  if (!varset_intersection(given, target).empty())
    throw argument_error("conditioning set overlaps the target");
  for (const auto& b : blocks)
    if (!varset_intersection(given, b).empty())
      throw argument_error("conditioning set overlaps a source group");
  std::vector<std::string> target_names = d.names_of(target);
  std::vector<std::vector<std::string>> block_names;
  for (const auto& b : blocks) block_names.push_back(d.names_of(b));
  JointDistribution pg = d.marginalize(given);
  double total = 0;
  for (const auto& [c, w] : pg.mass()) {
    JointDistribution slice = d.conditional_slice(given, c);
    VarSet t = slice.resolve(target_names);
    std::vector<VarSet> bs;
    for (const auto& names : block_names) bs.push_back(slice.resolve(names));
    total += w.value() * m.eval(slice, t, bs);
  }
  return total;
}

/// The four-way split of I(target : X1 X2): shared + unique(X1) + unique(X2)
/// + complementary, anchored at the given measure's shared component.
struct BivariateDecomposition {
  double shared = 0;
  double unique_1 = 0;
  double unique_2 = 0;
  double complementary = 0;
  double mi_1 = 0;         // I(target : X1)
  double mi_2 = 0;         // I(target : X2)
  double mi_joint = 0;     // I(target : X1 X2)
  double consistency = 0;  // | (mi_1 + unique_2) - (mi_2 + unique_1) |, 0 in exact math
};

inline BivariateDecomposition bivariate_decomposition(const RedundancyMeasure& m,
                                                      const JointDistribution& d,
                                                      const VarSet& target, const VarSet& x1,
                                                      const VarSet& x2) {
  if (!varset_intersection(x1, x2).empty())
    throw argument_error("source groups of a bivariate decomposition must be disjoint");
  BivariateDecomposition out;
  out.shared = m.eval(d, target, {x1, x2});
  out.mi_1 = mutual_information_overlapping(d, target, x1);
  out.mi_2 = mutual_information_overlapping(d, target, x2);
  out.mi_joint = mutual_information_overlapping(d, target, varset_union(x1, x2));
  out.unique_1 = out.mi_1 - out.shared;
  out.unique_2 = out.mi_2 - out.shared;
  out.complementary = out.mi_joint - out.shared - out.unique_1 - out.unique_2;
  out.consistency = std::abs((out.mi_1 + out.unique_2) - (out.mi_2 + out.unique_1));
  return out;
}

/// Residual of "complementary - shared == interaction sign" for a bivariate
/// split; zero (up to floating noise) for every measure, since it only uses
/// the mutual-information identities.
inline double coinformation_identity_check(const JointDistribution& d, const VarSet& target,
                                           const VarSet& x1, const VarSet& x2,
                                           const BivariateDecomposition& b) {
  double co = co_information(d, target, x1, x2);
  return std::abs((b.complementary - b.shared) - co);
}

}  // namespace infodec
