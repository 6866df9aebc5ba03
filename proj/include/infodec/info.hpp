#pragma once

// Shannon quantities over joint distributions.  Everything is in bits and
// iterates the exact support, so 0*log 0 terms simply never appear.

#include <cmath>
#include <limits>
#include <vector>

#include "infodec/distribution.hpp"

namespace infodec {

inline double log2_safe(double x) { return std::log2(x); }

/// H(vars) of the exact marginal, in bits.
inline double entropy(const JointDistribution& d, const VarSet& vars) {
  JointDistribution m = d.marginalize(vars);
  double h = 0;
  for (const auto& [o, p] : m.mass()) {
    double v = p.value();
    h -= v * std::log2(v);
  }
  return h;
}

/// I(A : B) for disjoint variable groups, computed termwise as
/// sum p(a,b) log2 p(a,b) / (p(a) p(b)).  The summation runs over the joint
/// support of the sorted union, so I(A:B) and I(B:A) share every operation
/// and agree bitwise.
inline double mutual_information(const JointDistribution& d, const VarSet& a,
                                 const VarSet& b) {
  if (!varset_intersection(a, b).empty())
    throw argument_error("mutual information requires disjoint variable groups");
  if (a.empty() || b.empty())
    throw argument_error("mutual information over empty variable group");
  VarSet u = varset_union(a, b);
  JointDistribution joint = d.marginalize(u);
  JointDistribution ma = d.marginalize(a);
  JointDistribution mb = d.marginalize(b);
  // Positions of a/b inside the sorted union.
  VarSet pa, pb;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (std::binary_search(a.begin(), a.end(), u[i])) pa.push_back(static_cast<int>(i));
    else pb.push_back(static_cast<int>(i));
  }
  double mi = 0;
  for (const auto& [o, p] : joint.mass()) {
    double pj = p.value();
    double qa = ma.prob(project(o, pa));
    double qb = mb.prob(project(o, pb));
    mi += pj * std::log2(pj / (qa * qb));
  }
  return mi;
}

/// I(A : B) via the entropy identity H(A) + H(B) - H(A u B); tolerates
/// overlapping and even identical groups (I(A:A) = H(A)).
inline double mutual_information_overlapping(const JointDistribution& d, const VarSet& a,
                                             const VarSet& b) {
  if (a.empty() || b.empty())
    throw argument_error("mutual information over empty variable group");
  return entropy(d, a) + entropy(d, b) - entropy(d, varset_union(a, b));
}

/// I(A : B | C) = I(A : B u C) - I(A : C), with I(A : B | {}) = I(A : B).
inline double conditional_mutual_information(const JointDistribution& d, const VarSet& a,
                                             const VarSet& b, const VarSet& c) {
  if (c.empty()) return mutual_information(d, a, b);
  if (!varset_intersection(a, c).empty() || !varset_intersection(b, c).empty())
    throw argument_error("conditioning set overlaps an argument group");
  return mutual_information(d, a, varset_union(b, c)) - mutual_information(d, a, c);
}

/// Interaction sign convention: co_information = I(S:A|B) - I(S:A), i.e.
/// synergy minus redundancy for the (S; A, B) triple.  Symmetric in all
/// three groups up to floating noise.
inline double co_information(const JointDistribution& d, const VarSet& s, const VarSet& a,
                             const VarSet& b) {
  return conditional_mutual_information(d, s, a, b) - mutual_information(d, s, a);
}

/// D(q || p) in bits over a common indexed outcome space; +infinity when q
/// puts mass outside p's support.
inline double kl_bits(const std::vector<double>& q, const std::vector<double>& p) {
  if (q.size() != p.size()) throw argument_error("KL over mismatched spaces");
  double kl = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] <= 0) continue;
    if (p[i] <= 0) return std::numeric_limits<double>::infinity();
    kl += q[i] * std::log2(q[i] / p[i]);
  }
  // Divergence is nonnegative; absorb rounding noise so callers can rely on it.
  return (kl < 0 && kl > -1e-12) ? 0.0 : kl;
}

/// D(q || p) for two distributions over the same variable layout.
inline double kl_divergence(const JointDistribution& q, const JointDistribution& p) {
  const auto& qv = q.variables();
  const auto& pv = p.variables();
  if (qv.size() != pv.size()) throw argument_error("KL over mismatched spaces");
  for (std::size_t i = 0; i < qv.size(); ++i)
    if (qv[i].name != pv[i].name || qv[i].arity != pv[i].arity)
      throw argument_error("KL over mismatched spaces");
  double kl = 0;
  for (const auto& [o, qm] : q.mass()) {
    double pm = p.prob(o);
    if (pm <= 0) return std::numeric_limits<double>::infinity();
    kl += qm.value() * std::log2(qm.value() / pm);
  }
  return kl;
}

inline double entropy_bits(const std::vector<double>& p) {
  double h = 0;
  for (double v : p)
    if (v > 0) h -= v * std::log2(v);
  return h;
}

}  // namespace infodec
