#pragma once

// Joint probability distributions over small tuples of finite variables.
//
// Masses are exact rationals keyed by outcome tuples in a std::map, so
// iteration order is lexicographic and every derived quantity is
// deterministic across runs.  Zero-mass outcomes are never stored: support
// iteration is exact and the 0*log 0 convention falls out for free.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "infodec/errors.hpp"
#include "infodec/rational.hpp"

namespace infodec {

/// One coordinate of the joint space: a display name plus the number of
/// values the variable can take (outcomes are 0 .. arity-1).
struct VariableId {
  std::string name;
  int arity = 0;
};

/// One point of the joint outcome space, one entry per variable.
using Outcome = std::vector<int>;

/// A set of variable positions, kept sorted and duplicate-free.
using VarSet = std::vector<int>;

inline VarSet make_varset(std::vector<int> idx) {
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

inline VarSet varset_union(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VarSet varset_intersection(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VarSet varset_difference(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool varset_subset(const VarSet& a, const VarSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Restrict a full outcome tuple to the given positions.
inline Outcome project(const Outcome& o, const VarSet& vars) {
  Outcome out;
  out.reserve(vars.size());
  for (int v : vars) out.push_back(o[static_cast<std::size_t>(v)]);
  return out;
}

class ConditionalFamily;

class JointDistribution {
 public:
  /// How masses should be rendered when the distribution is written out.
  /// Parsed files keep the style they came in with; programmatic tables
  /// default to exact fractions.
  enum class MassStyle { Fraction, Decimal };

  JointDistribution(std::vector<VariableId> vars, std::map<Outcome, Rational> mass,
                    MassStyle style = MassStyle::Fraction)
      : vars_(std::move(vars)), mass_(std::move(mass)), style_(style) {
    validate();
  }

  const std::vector<VariableId>& variables() const noexcept { return vars_; }
  int var_count() const noexcept { return static_cast<int>(vars_.size()); }
  const std::map<Outcome, Rational>& mass() const noexcept { return mass_; }
  std::size_t support_size() const noexcept { return mass_.size(); }
  MassStyle mass_style() const noexcept { return style_; }

  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name == name) return static_cast<int>(i);
    throw name_error("unknown variable '" + name + "'");
  }

  VarSet resolve(const std::vector<std::string>& names) const {
    VarSet out;
    for (const auto& n : names) out.push_back(index_of(n));
    VarSet sorted = make_varset(out);
    if (sorted.size() != names.size())
      throw argument_error("duplicate variable in name list");
    return sorted;
  }

  std::vector<std::string> names_of(const VarSet& vars) const {
    std::vector<std::string> out;
    for (int v : vars) out.push_back(vars_.at(static_cast<std::size_t>(v)).name);
    return out;
  }

  /// All variable positions not in `vars`.
  VarSet complement(const VarSet& vars) const {
    VarSet all(vars_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return varset_difference(all, vars);
  }

  VarSet all_vars() const { return complement({}); }

  double prob(const Outcome& o) const {
    auto it = mass_.find(o);
    return it == mass_.end() ? 0.0 : it->second.value();
  }

  Rational exact_prob(const Outcome& o) const {
    auto it = mass_.find(o);
    return it == mass_.end() ? Rational() : it->second;
  }

  /// Exact marginal over `keep` (order follows the sorted var set).
  JointDistribution marginalize(const VarSet& keep) const {
    check_vars(keep);
    if (keep.empty()) throw argument_error("marginal over empty variable set");
    std::vector<VariableId> vars;
    for (int v : keep) vars.push_back(vars_[static_cast<std::size_t>(v)]);
    std::map<Outcome, Rational> out;
    for (const auto& [o, p] : mass_) out[project(o, keep)] += p;
    return JointDistribution(std::move(vars), std::move(out), style_);
  }

  /// Exact conditional family p(target | on), one member distribution per
  /// conditioning outcome with positive probability.
  ConditionalFamily condition(const VarSet& on, const VarSet& target) const;

  /// The joint over everything except `on`, conditioned on `on` = `at`.
  /// `at` must be a positive-probability outcome of the `on`-marginal.
  JointDistribution conditional_slice(const VarSet& on, const Outcome& at) const {
    check_vars(on);
    if (on.empty()) throw argument_error("conditioning on empty variable set");
    VarSet rest = complement(on);
    if (rest.empty()) throw argument_error("conditioning away every variable");
    Rational w;
    std::map<Outcome, Rational> out;
    for (const auto& [o, p] : mass_) {
      if (project(o, on) != at) continue;
      w += p;
      out[project(o, rest)] += p;
    }
    if (w.is_zero()) throw argument_error("conditioning event has zero probability");
    for (auto& [o, p] : out) p /= w;
    std::vector<VariableId> vars;
    for (int v : rest) vars.push_back(vars_[static_cast<std::size_t>(v)]);
    return JointDistribution(std::move(vars), std::move(out), style_);
  }

  friend bool operator==(const JointDistribution& a, const JointDistribution& b) {
    if (a.vars_.size() != b.vars_.size()) return false;
    for (std::size_t i = 0; i < a.vars_.size(); ++i)
      if (a.vars_[i].name != b.vars_[i].name || a.vars_[i].arity != b.vars_[i].arity)
        return false;
    return a.mass_ == b.mass_;
  }

 private:
  void check_vars(const VarSet& vars) const {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (vars[i] < 0 || vars[i] >= var_count())
        throw argument_error("variable index out of range");
      if (i > 0 && vars[i] <= vars[i - 1])
        throw argument_error("variable set not sorted/unique");
    }
  }

  void validate() {
    if (vars_.empty()) throw data_error("distribution with no variables");
    std::set<std::string> seen;
    for (const auto& v : vars_) {
      if (v.name.empty()) throw data_error("empty variable name");
      if (v.arity < 1) throw data_error("variable '" + v.name + "' has arity < 1");
      if (!seen.insert(v.name).second)
        throw data_error("duplicate variable name '" + v.name + "'");
    }
    Rational sum;
    for (auto it = mass_.begin(); it != mass_.end();) {
      const Outcome& o = it->first;
      if (o.size() != vars_.size()) throw data_error("outcome length mismatch");
      for (std::size_t i = 0; i < o.size(); ++i)
        if (o[i] < 0 || o[i] >= vars_[i].arity)
          throw data_error("outcome out of range for variable '" + vars_[i].name + "'");
      if (it->second.negative()) throw data_error("negative probability mass");
      sum += it->second;
      if (it->second.is_zero()) it = mass_.erase(it);  // keep support exact
      else ++it;
    }
    if (std::abs(sum.value() - 1.0) > 1e-9)
      throw data_error("masses sum to " + std::to_string(sum.value()) + ", not 1");
  }

  std::vector<VariableId> vars_;
  std::map<Outcome, Rational> mass_;
  MassStyle style_;
};

/// The result of conditioning: for each positive-probability outcome of the
/// conditioner, a normalized distribution over the target variables.
class ConditionalFamily {
 public:
  ConditionalFamily(std::vector<std::string> conditioner_names,
                    std::map<Outcome, JointDistribution> members)
      : conditioner_names_(std::move(conditioner_names)), members_(std::move(members)) {}

  const std::vector<std::string>& conditioner_names() const noexcept {
    return conditioner_names_;
  }
  const std::map<Outcome, JointDistribution>& members() const noexcept { return members_; }

  const JointDistribution& at(const Outcome& o) const {
    auto it = members_.find(o);
    if (it == members_.end())
      throw argument_error("conditioning outcome has zero probability");
    return it->second;
  }

 private:
  std::vector<std::string> conditioner_names_;
  std::map<Outcome, JointDistribution> members_;
};

inline ConditionalFamily JointDistribution::condition(const VarSet& on,
                                                      const VarSet& target) const {
  check_vars(on);
  check_vars(target);
  if (on.empty() || target.empty())
    throw argument_error("conditioning requires nonempty variable sets");
  if (!varset_intersection(on, target).empty())
    throw argument_error("conditioner and target overlap");
  std::vector<VariableId> tvars;
  for (int v : target) tvars.push_back(vars_[static_cast<std::size_t>(v)]);
  std::map<Outcome, Rational> weight;
  std::map<Outcome, std::map<Outcome, Rational>> grouped;
  for (const auto& [o, p] : mass_) {
    Outcome key = project(o, on);
    weight[key] += p;
    grouped[key][project(o, target)] += p;
  }
  std::map<Outcome, JointDistribution> members;
  for (auto& [key, cells] : grouped) {
    const Rational& w = weight[key];
    for (auto& [o, p] : cells) p /= w;
    members.emplace(key, JointDistribution(tvars, std::move(cells), style_));
  }
  return ConditionalFamily(names_of(on), std::move(members));
}

}  // namespace infodec
