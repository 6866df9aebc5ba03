#pragma once

// Axiom audits for redundancy measures.
//
// Every candidate axiom becomes an exhaustive finite check against one
// distribution: antichains over the source ground set, block permutations,
// target splits, swaps, and the full-lattice positivity of the partial
// terms.  Verdicts are pass / fail / not-applicable — an axiom that cannot
// be phrased for the given shape is reported as such, never skipped
// silently.  Failures carry a replayable witness (the distribution in the
// standard text format plus the audit parameters).
//
// The module also provides the joint-infeasibility certificate for strong
// symmetry (every lattice node but two is pinned to an entropy or a mutual
// information; the remaining partial term is bounded above, and a negative
// bound proves no globally nonnegative assignment exists), plus a seeded
// random search for violations with greedy witness shrinking.

#include <atomic>
#include <iomanip>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "infodec/decomposition.hpp"
#include "infodec/generate.hpp"
#include "infodec/io.hpp"
#include "infodec/lattice.hpp"
#include "infodec/measures.hpp"
#include "infodec/registry.hpp"

namespace infodec {

enum class Axiom { GP, S0, I, M, LP, S1, LM, LC, Id2 };

inline const std::vector<std::pair<Axiom, std::string>>& axiom_ids() {
  static const std::vector<std::pair<Axiom, std::string>> ids = {
      {Axiom::GP, "gp"}, {Axiom::S0, "s0"}, {Axiom::I, "i"},
      {Axiom::M, "m"},   {Axiom::LP, "lp"}, {Axiom::S1, "s1"},
      {Axiom::LM, "lm"}, {Axiom::LC, "lc"}, {Axiom::Id2, "id2"}};
  return ids;
}

inline std::string to_string(Axiom a) {
  for (const auto& [ax, id] : axiom_ids())
    if (ax == a) return id;
  return "?";
}

inline Axiom parse_axiom(const std::string& id) {
  for (const auto& [ax, name] : axiom_ids())
    if (name == id) return ax;
  throw argument_error("unknown axiom id '" + id +
                       "' (have: gp, s0, i, m, lp, s1, lm, lc, id2)");
}

inline std::vector<Axiom> all_axioms() {
  std::vector<Axiom> out;
  for (const auto& [ax, id] : axiom_ids()) out.push_back(ax);
  return out;
}

enum class VerdictStatus { Pass, Fail, NotApplicable };

inline std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Pass: return "pass";
    case VerdictStatus::Fail: return "FAIL";
    case VerdictStatus::NotApplicable: return "not-applicable";
  }
  return "?";
}

/// Everything needed to reproduce a failure from scratch.
struct AxiomWitness {
  std::string measure;
  Axiom axiom = Axiom::GP;
  std::vector<std::string> target;
  bool self_mode = false;
  double gap = 0;
  std::string detail;     // which antichain / split / swap failed
  std::string dist_text;  // the distribution, standard text format
};

struct AxiomVerdict {
  Axiom axiom = Axiom::GP;
  VerdictStatus status = VerdictStatus::Pass;
  double gap = 0;     // largest violation (or deviation, for identities)
  long checks = 0;    // individual comparisons performed
  std::string detail; // scope summary, or why not applicable
  std::optional<AxiomWitness> witness;
};

struct AuditConfig {
  std::vector<std::string> target;  // designated target variables
  bool self_mode = false;           // sources decompose their own joint info
  std::vector<Axiom> axioms;        // empty = all nine
  double tolerance = 1e-7;
};

namespace detail {

inline std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
  return out;
}

inline std::string fmt(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

struct AuditContext {
  const RedundancyMeasure& m;
  const JointDistribution& d;
  VarSet target;
  VarSet ground;
  bool self_mode;
  double tol;
  const PILattice& lat;
  std::vector<double> node_value;  // measure at every lattice node

  VarSet block_vars(Block b) const {
    VarSet vars;
    for (int v = 0; v < lat.ground(); ++v)
      if (b >> v & 1) vars.push_back(ground[static_cast<std::size_t>(v)]);
    return vars;
  }

  std::vector<VarSet> node_blocks(int i) const {
    std::vector<VarSet> blocks;
    for (Block b : lat.node(i).blocks) blocks.push_back(block_vars(b));
    return blocks;
  }

  AxiomWitness witness(Axiom ax, double gap, std::string what) const {
    AxiomWitness w;
    w.measure = m.name;
    w.axiom = ax;
    w.target = d.names_of(target);
    w.self_mode = self_mode;
    w.gap = gap;
    w.detail = std::move(what);
    w.dist_text = write_distribution(d);
    return w;
  }

  void flag(AxiomVerdict& v, double gap, const std::string& what) const {
    if (v.status == VerdictStatus::Fail && gap <= v.gap) return;
    v.status = VerdictStatus::Fail;
    v.gap = gap;
    v.witness = witness(v.axiom, gap, what);
  }
};

inline AxiomVerdict audit_gp(AuditContext& c) {
  AxiomVerdict v;
  v.axiom = Axiom::GP;
  for (int i = 0; i < c.lat.size(); ++i) {
    ++v.checks;
    double val = c.node_value[static_cast<std::size_t>(i)];
    if (val < -c.tol)
      c.flag(v, -val, "value " + fmt(val) + " at antichain " + c.lat.label(i));
  }
  v.detail = std::to_string(c.lat.size()) + " antichains";
  return v;
}

inline AxiomVerdict audit_s0(AuditContext& c) {
  AxiomVerdict v;
  v.axiom = Axiom::S0;
  for (int i = 0; i < c.lat.size(); ++i) {
    std::vector<VarSet> blocks = c.node_blocks(i);
    if (blocks.size() < 2) continue;
    double base = c.node_value[static_cast<std::size_t>(i)];
    std::vector<std::size_t> idx(blocks.size());
    for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = j;
    while (std::next_permutation(idx.begin(), idx.end())) {
      std::vector<VarSet> perm;
      for (std::size_t j : idx) perm.push_back(blocks[j]);
      ++v.checks;
      double dev = std::abs(c.m.eval(c.d, c.target, perm) - base);
      if (dev > c.tol)
        c.flag(v, dev, "reordering the groups of " + c.lat.label(i) + " moved the value by " +
                           fmt(dev));
    }
  }
  v.detail = std::to_string(v.checks) + " group reorderings";
  return v;
}

inline AxiomVerdict audit_i(AuditContext& c) {
  AxiomVerdict v;
  v.axiom = Axiom::I;
  for (Block b = 1; b < (1 << c.lat.ground()); ++b) {
    VarSet vars = c.block_vars(b);
    ++v.checks;
    double val = c.m.eval(c.d, c.target, {vars});
    double ref = mutual_information_overlapping(c.d, c.target, vars);
    double dev = std::abs(val - ref);
    if (dev > c.tol)
      c.flag(v, dev, "single group " + Antichain::make(c.lat.ground(), {b}).label() +
                         ": value " + fmt(val) + " vs mutual information " + fmt(ref));
  }
  v.detail = std::to_string(v.checks) + " single-group identities";
  return v;
}

inline AxiomVerdict audit_m(AuditContext& c) {
  AxiomVerdict v;
  v.axiom = Axiom::M;
  // Adding a source group may never raise the value, and must keep it
  // exactly when the new group contains one already present.
  for (int i = 0; i < c.lat.size(); ++i) {
    std::vector<VarSet> blocks = c.node_blocks(i);
    double base = c.node_value[static_cast<std::size_t>(i)];
    for (Block extra = 1; extra < (1 << c.lat.ground()); ++extra) {
      std::vector<VarSet> family = blocks;
      family.push_back(c.block_vars(extra));
      double aug = c.m.eval(c.d, c.target, family);
      std::string extra_label = Antichain::make(c.lat.ground(), {extra}).label();
      ++v.checks;
      if (aug - base > c.tol)
        c.flag(v, aug - base, "adding group " + extra_label + " to " + c.lat.label(i) +
                                  " raised the value by " + fmt(aug - base));
      bool contains_existing = false;
      for (Block b : c.lat.node(i).blocks)
        if (block_subset(b, extra)) { contains_existing = true; break; }
      if (contains_existing) {
        ++v.checks;
        double dev = std::abs(aug - base);
        if (dev > c.tol)
          c.flag(v, dev, "equality clause: adding the containing group " + extra_label +
                             " to " + c.lat.label(i) + " moved the value by " + fmt(dev));
      }
    }
    // Induced form along the antichain order.
    for (int j = 0; j < c.lat.size(); ++j) {
      if (i == j || !c.lat.leq(i, j)) continue;
      ++v.checks;
      double gap = c.node_value[static_cast<std::size_t>(i)] -
                   c.node_value[static_cast<std::size_t>(j)];
      if (gap > c.tol)
        c.flag(v, gap, "order violation: " + c.lat.label(i) + " exceeds " + c.lat.label(j) +
                           " by " + fmt(gap));
    }
  }
  v.detail = std::to_string(v.checks) + " monotonicity comparisons";
  return v;
}

inline AxiomVerdict audit_lp(AuditContext& c) {
  AxiomVerdict v;
  v.axiom = Axiom::LP;
  DecompositionMode mode =
      c.self_mode ? DecompositionMode::SelfDecomposition : DecompositionMode::Standard;
  DecompositionTable t;
  try {
    t = evaluate_lattice(c.d, c.target, c.m, c.lat, mode);
  } catch (const argument_error& e) {
    v.status = VerdictStatus::NotApplicable;
    v.detail = e.what();
    return v;
  }
  mobius_invert(t, c.lat);
  v.checks = c.lat.size();
  for (const auto& viol : check_local_positivity(t, c.lat, c.tol))
    c.flag(v, -viol.value, "partial term " + fmt(viol.value) + " at antichain " +
                               c.lat.label(viol.node));
  v.detail = std::to_string(v.checks) + " partial terms";
  return v;
}

inline AxiomVerdict audit_s1(AuditContext& c) {
  AxiomVerdict v;
  v.axiom = Axiom::S1;
  if (c.self_mode) {
    v.status = VerdictStatus::NotApplicable;
    v.detail = "swap checks need a target separate from the sources";
    return v;
  }
  for (int i = 0; i < c.lat.size(); ++i) {
    std::vector<VarSet> blocks = c.node_blocks(i);
    double base = c.node_value[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      // The swapped family is only expressible when the chosen group shares
      // no variable with its siblings.
      bool disjoint = true;
      for (std::size_t o = 0; o < blocks.size() && disjoint; ++o)
        if (o != j && !varset_intersection(blocks[j], blocks[o]).empty()) disjoint = false;
      if (!disjoint) continue;
      std::vector<VarSet> swapped = blocks;
      swapped[j] = c.target;
      ++v.checks;
      double val = c.m.eval(c.d, blocks[j], swapped);
      double dev = std::abs(val - base);
      if (dev > c.tol)
        c.flag(v, dev, "swapping the target with group " +
                           Antichain::make(c.lat.ground(), {c.lat.node(i).blocks[j]}).label() +
                           " of " + c.lat.label(i) + " moved the value by " + fmt(dev));
    }
  }
  v.detail = std::to_string(v.checks) + " target/group swaps";
  return v;
}

inline AxiomVerdict audit_lm(AuditContext& c) {
  AxiomVerdict v;
  v.axiom = Axiom::LM;
  if (c.self_mode) {
    v.status = VerdictStatus::NotApplicable;
    v.detail = "shrinking the target needs a target separate from the sources";
    return v;
  }
  if (c.target.size() < 2) {
    v.status = VerdictStatus::NotApplicable;
    v.detail = "target has fewer than two variables, no split exists";
    return v;
  }
  const std::size_t tn = c.target.size();
  for (std::uint32_t maskbits = 1; maskbits + 1 < (1u << tn); ++maskbits) {
    VarSet part;
    for (std::size_t t = 0; t < tn; ++t)
      if (maskbits >> t & 1) part.push_back(c.target[t]);
    for (int i = 0; i < c.lat.size(); ++i) {
      ++v.checks;
      double small = c.m.eval(c.d, part, c.node_blocks(i));
      double big = c.node_value[static_cast<std::size_t>(i)];
      if (small - big > c.tol)
        c.flag(v, small - big,
               "shrinking the target to {" + join_names(c.d.names_of(part)) +
                   "} raised the value by " + fmt(small - big) + " at antichain " +
                   c.lat.label(i));
    }
  }
  v.detail = std::to_string(v.checks) + " target shrinks";
  return v;
}

inline AxiomVerdict audit_lc(AuditContext& c) {
  AxiomVerdict v;
  v.axiom = Axiom::LC;
  if (c.self_mode) {
    v.status = VerdictStatus::NotApplicable;
    v.detail = "chaining the target needs a target separate from the sources";
    return v;
  }
  if (c.target.size() < 2) {
    v.status = VerdictStatus::NotApplicable;
    v.detail = "target has fewer than two variables, no split exists";
    return v;
  }
  const std::size_t tn = c.target.size();
  for (std::uint32_t maskbits = 1; maskbits + 1 < (1u << tn); ++maskbits) {
    VarSet first, second;
    for (std::size_t t = 0; t < tn; ++t)
      (maskbits >> t & 1 ? first : second).push_back(c.target[t]);
    for (int i = 0; i < c.lat.size(); ++i) {
      ++v.checks;
      std::vector<VarSet> blocks = c.node_blocks(i);
      double whole = c.node_value[static_cast<std::size_t>(i)];
      double chained = c.m.eval(c.d, first, blocks) +
                       conditional_measure(c.m, c.d, second, blocks, first);
      double dev = std::abs(whole - chained);
      if (dev > c.tol)
        c.flag(v, dev, "chaining through {" + join_names(c.d.names_of(first)) +
                           "} misses the whole-target value by " + fmt(dev) +
                           " at antichain " + c.lat.label(i));
    }
  }
  v.detail = std::to_string(v.checks) + " chain decompositions";
  return v;
}

inline AxiomVerdict audit_id2(AuditContext& c) {
  AxiomVerdict v;
  v.axiom = Axiom::Id2;
  if (c.lat.ground() < 2) {
    v.status = VerdictStatus::NotApplicable;
    v.detail = "needs two disjoint source groups";
    return v;
  }
  for (Block a = 1; a < (1 << c.lat.ground()); ++a)
    for (Block b = static_cast<Block>(a + 1); b < (1 << c.lat.ground()); ++b) {
      if (a & b) continue;
      VarSet va = c.block_vars(a), vb = c.block_vars(b);
      ++v.checks;
      double val = c.m.eval(c.d, varset_union(va, vb), {va, vb});
      double ref = mutual_information(c.d, va, vb);
      double dev = std::abs(val - ref);
      if (dev > c.tol)
        c.flag(v, dev, "pair " + Antichain::make(c.lat.ground(), {a}).label() + ";" +
                           Antichain::make(c.lat.ground(), {b}).label() + ": value " +
                           fmt(val) + " vs pair mutual information " + fmt(ref));
    }
  v.detail = std::to_string(v.checks) + " disjoint pairs";
  return v;
}

}  // namespace detail

/// Run the requested axiom checks for one measure against one distribution.
/// The sources are the variables outside the target (or the target itself in
/// self mode); verdicts come back in canonical axiom order.
inline std::vector<AxiomVerdict> audit(const RedundancyMeasure& m, const JointDistribution& d,
                                       const AuditConfig& cfg) {
  VarSet target = cfg.self_mode ? d.all_vars() : d.resolve(cfg.target);
  if (target.empty()) throw argument_error("audit needs a target");
  VarSet ground = cfg.self_mode ? target : d.complement(target);
  if (ground.empty())
    throw argument_error("audit needs at least one source variable outside the target");
  PILattice lat = PILattice::build(static_cast<int>(ground.size()));
  detail::AuditContext c{m, d, target, ground, cfg.self_mode, cfg.tolerance, lat, {}};
  c.node_value.resize(static_cast<std::size_t>(lat.size()));
  for (int i = 0; i < lat.size(); ++i)
    c.node_value[static_cast<std::size_t>(i)] = m.eval(d, target, c.node_blocks(i));

  std::vector<Axiom> wanted = cfg.axioms.empty() ? all_axioms() : cfg.axioms;
  std::vector<AxiomVerdict> out;
  for (Axiom ax : all_axioms()) {
    bool requested = false;
    for (Axiom w : wanted)
      if (w == ax) { requested = true; break; }
    if (!requested) continue;
    switch (ax) {
      case Axiom::GP: out.push_back(detail::audit_gp(c)); break;
      case Axiom::S0: out.push_back(detail::audit_s0(c)); break;
      case Axiom::I: out.push_back(detail::audit_i(c)); break;
      case Axiom::M: out.push_back(detail::audit_m(c)); break;
      case Axiom::LP: out.push_back(detail::audit_lp(c)); break;
      case Axiom::S1: out.push_back(detail::audit_s1(c)); break;
      case Axiom::LM: out.push_back(detail::audit_lm(c)); break;
      case Axiom::LC: out.push_back(detail::audit_lc(c)); break;
      case Axiom::Id2: out.push_back(detail::audit_id2(c)); break;
    }
  }
  return out;
}

inline AxiomVerdict audit_one(const RedundancyMeasure& m, const JointDistribution& d,
                              Axiom ax, const std::vector<std::string>& target,
                              double tolerance = 1e-7, bool self_mode = false) {
  AuditConfig cfg;
  cfg.target = target;
  cfg.self_mode = self_mode;
  cfg.axioms = {ax};
  cfg.tolerance = tolerance;
  return audit(m, d, cfg).at(0);
}

// ---------------------------------------------------------------------------
// Witness files: the distribution in the standard text format, preceded by
// "#!" directive comments carrying the audit parameters.  The plain parser
// sees the directives as comments, so one ingestion path serves both.

inline std::string witness_to_text(const AxiomWitness& w) {
  std::ostringstream out;
  out << "#! measure " << w.measure << "\n";
  out << "#! axiom " << to_string(w.axiom) << "\n";
  if (w.self_mode) out << "#! self\n";
  else out << "#! target " << detail::join_names(w.target) << "\n";
  out << "#! gap " << detail::fmt(w.gap) << "\n";
  if (!w.detail.empty()) out << "#! detail " << w.detail << "\n";
  out << w.dist_text;
  return out.str();
}

inline AxiomWitness parse_witness(const std::string& text) {
  AxiomWitness w;
  bool have_measure = false, have_axiom = false, have_target = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("#!", 0) != 0) continue;
    std::istringstream row(line.substr(2));
    std::string key;
    row >> key;
    if (key == "measure") { row >> w.measure; have_measure = true; }
    else if (key == "axiom") {
      std::string id;
      row >> id;
      w.axiom = parse_axiom(id);
      have_axiom = true;
    } else if (key == "target") {
      std::string names;
      row >> names;
      std::string cur;
      for (char ch : names + ",") {
        if (ch == ',') { if (!cur.empty()) w.target.push_back(cur); cur.clear(); }
        else cur += ch;
      }
      have_target = true;
    } else if (key == "self") {
      w.self_mode = true;
      have_target = true;
    } else if (key == "gap") {
      std::string v;
      row >> v;
      w.gap = std::stod(v);
    } else if (key == "detail") {
      std::getline(row, w.detail);
      if (!w.detail.empty() && w.detail.front() == ' ') w.detail.erase(0, 1);
    }
  }
  if (!have_measure || !have_axiom || !have_target)
    throw data_error("witness is missing #! measure / #! axiom / #! target directives");
  w.dist_text = text;
  return w;
}

/// Re-run the recorded audit; the caller compares the fresh gap against the
/// recorded one.
inline AxiomVerdict replay_witness(const AxiomWitness& w) {
  JointDistribution d = read_distribution(w.dist_text);
  return audit_one(find_measure(w.measure), d, w.axiom, w.target, 1e-7, w.self_mode);
}

// ---------------------------------------------------------------------------
// Embedded reference tables.  Each ships with the audit setup under which
// its documented verdicts hold; the text block goes through the ordinary
// parser, the same path file input takes.

struct CounterexampleCase {
  std::string name;
  std::string dist_text;
  std::vector<std::string> target;
  bool self_mode = false;
  std::vector<Axiom> default_axioms;
  // measure name -> axioms expected to fail under the default audit
  std::map<std::string, std::vector<Axiom>> expected_failures;

  JointDistribution distribution() const { return read_distribution(dist_text); }
};

inline const std::vector<CounterexampleCase>& builtin_cases() {
  static const std::vector<CounterexampleCase> cases = [] {
    std::vector<CounterexampleCase> cs;
    {
      CounterexampleCase c;
      c.name = "left-mono";
      c.dist_text =
          "# Two targets over two sources; shrinking the target pair to S alone\n"
          "# raises the worst-group score, breaking left monotonicity for imin.\n"
          "X1 X2 S Sp\n"
          "0 0 0 0 1/6\n"
          "0 1 0 0 1/6\n"
          "0 1 0 1 1/6\n"
          "1 1 0 1 1/6\n"
          "1 0 1 1 2/6\n";
      c.target = {"S", "Sp"};
      c.default_axioms = {Axiom::GP, Axiom::S0, Axiom::I, Axiom::M, Axiom::LP, Axiom::LM};
      c.expected_failures["imin"] = {Axiom::LM};
      c.expected_failures["ii"] = {};
      cs.push_back(std::move(c));
    }
    {
      CounterexampleCase c;
      c.name = "xor";
      c.dist_text =
          "# Uniform parity: each variable is the exclusive-or of the other two.\n"
          "X1 X2 X3\n"
          "0 0 0 1/4\n"
          "0 1 1 1/4\n"
          "1 0 1 1/4\n"
          "1 1 0 1/4\n";
      c.self_mode = true;
      c.default_axioms = {Axiom::GP, Axiom::S0, Axiom::I, Axiom::M, Axiom::LP};
      c.expected_failures["imin"] = {};
      c.expected_failures["ii"] = {};
      cs.push_back(std::move(c));
    }
    {
      CounterexampleCase c;
      c.name = "copy";
      c.dist_text =
          "# The target pair (S1,S2) copies the sources bit for bit.\n"
          "X1 X2 S1 S2\n"
          "0 0 0 0 1/4\n"
          "0 1 0 1 1/4\n"
          "1 0 1 0 1/4\n"
          "1 1 1 1 1/4\n";
      c.target = {"S1", "S2"};
      c.default_axioms = {Axiom::GP, Axiom::S0, Axiom::I, Axiom::M, Axiom::LP, Axiom::LM};
      c.expected_failures["imin"] = {};
      c.expected_failures["ii"] = {};
      cs.push_back(std::move(c));
    }
    {
      CounterexampleCase c;
      c.name = "conflict";
      c.dist_text =
          "# S equals X2, while X1 is a noisy view of S; the geometric scores\n"
          "# disagree with I(S:X1) in opposite directions here.\n"
          "S X1 X2\n"
          "0 0 0 2/6\n"
          "0 1 0 1/6\n"
          "1 0 1 1/6\n"
          "1 1 1 2/6\n";
      c.target = {"S"};
      c.default_axioms = {Axiom::GP, Axiom::S0, Axiom::I, Axiom::M, Axiom::LP};
      c.expected_failures["imin"] = {};
      c.expected_failures["ii"] = {};
      c.expected_failures["si_kl"] = {Axiom::M, Axiom::LP};
      c.expected_failures["si_lr"] = {Axiom::M, Axiom::LP};
      cs.push_back(std::move(c));
    }
    return cs;
  }();
  return cases;
}

inline const CounterexampleCase& find_builtin(const std::string& name) {
  for (const auto& c : builtin_cases())
    if (c.name == name) return c;
  std::string have;
  for (const auto& c : builtin_cases()) have += (have.empty() ? "" : ", ") + c.name;
  throw argument_error("unknown builtin case '" + name + "' (have: " + have + ")");
}

// ---------------------------------------------------------------------------
// Strong-symmetry infeasibility certificate.

struct CertificateEntry {
  std::string node;     // lattice label
  std::string formula;  // "H(123)", "I(12:13)", ...
  double value = 0;
};

/// Under strong symmetry + monotonicity + self-redundancy, every antichain
/// of the self-decomposition lattice except the all-pairs family and the
/// bottom is pinned to an entropy or a mutual information.  The bottom is
/// boxed between 0 and the smallest pairwise mutual information, and the
/// all-pairs partial term is bounded above by
///   min_pairs I(ij:ik) - [ sum_i I(i:jk) - sum_pairs I(i:j) ].
/// A negative bound certifies that no locally positive assignment exists.
struct SymmetryCertificate {
  int ground = 0;
  std::vector<CertificateEntry> determined;
  double bottom_upper = 0;   // box on the bottom node's cumulative value
  double partial_bound = 0;  // upper bound on the critical partial term
  std::string critical_node; // which node that bound concerns
  bool infeasible = false;
};

inline SymmetryCertificate symmetry_certificate(const JointDistribution& d, double tol = 1e-9) {
  const int n = d.var_count();
  if (n != 2 && n != 3)
    throw argument_error("the certificate is defined for two or three variables");
  SymmetryCertificate out;
  out.ground = n;
  VarSet ground = d.all_vars();
  PILattice lat = PILattice::build(n);
  auto vars_of = [&](Block b) {
    VarSet vs;
    for (int v = 0; v < n; ++v)
      if (b >> v & 1) vs.push_back(v);
    return vs;
  };
  auto hlabel = [&](Block b) { return Antichain::make(n, {b}).label(); };
  double min_pair_mi = std::numeric_limits<double>::infinity();
  double min_two_block = std::numeric_limits<double>::infinity();
  std::string min_two_block_node;
  for (int i = 0; i < lat.size(); ++i) {
    const Antichain& a = lat.node(i);
    if (a.blocks.size() == 1) {
      out.determined.push_back(
          {lat.label(i), "H(" + hlabel(a.blocks[0]) + ")", entropy(d, vars_of(a.blocks[0]))});
    } else if (a.blocks.size() == 2) {
      double mi = mutual_information_overlapping(d, vars_of(a.blocks[0]), vars_of(a.blocks[1]));
      out.determined.push_back(
          {lat.label(i), "I(" + hlabel(a.blocks[0]) + ":" + hlabel(a.blocks[1]) + ")", mi});
      bool singles = block_size(a.blocks[0]) == 1 && block_size(a.blocks[1]) == 1;
      if (singles) min_pair_mi = std::min(min_pair_mi, mi);
      if (mi < min_two_block) {
        min_two_block = mi;
        min_two_block_node = lat.label(i);
      }
    }
  }
  if (n == 2) {
    // All four nodes are pinned; the partial terms are plain identities and
    // the smallest one is the certificate bound.
    double h12 = entropy(d, ground);
    double h1 = entropy(d, {0}), h2 = entropy(d, {1});
    double mi = mutual_information(d, {0}, {1});
    out.bottom_upper = mi;
    out.critical_node = lat.label(lat.top());
    out.partial_bound = std::min({mi, h1 - mi, h2 - mi, h12 - h1 - h2 + mi});
    out.infeasible = out.partial_bound < -tol;
    return out;
  }
  // n == 3: bound the all-pairs node {12|13|23}.
  double sum_single_vs_rest = 0;  // sum_i I(i : jk)
  double sum_pair_mi = 0;         // sum over pairs I(i : j)
  for (int i = 0; i < n; ++i) {
    VarSet self{i};
    sum_single_vs_rest += mutual_information(d, self, varset_difference(ground, self));
    for (int j = i + 1; j < n; ++j) sum_pair_mi += mutual_information(d, {i}, {j});
  }
  double min_overlap_pair = std::numeric_limits<double>::infinity();
  for (int i = 0; i < lat.size(); ++i) {
    const Antichain& a = lat.node(i);
    if (a.blocks.size() == 2 && block_size(a.blocks[0]) == 2 && block_size(a.blocks[1]) == 2)
      min_overlap_pair = std::min(
          min_overlap_pair,
          mutual_information_overlapping(d, vars_of(a.blocks[0]), vars_of(a.blocks[1])));
  }
  out.bottom_upper = min_pair_mi;
  out.critical_node = "12|13|23";
  out.partial_bound = min_overlap_pair - (sum_single_vs_rest - sum_pair_mi);
  out.infeasible = out.partial_bound < -tol;
  return out;
}

// ---------------------------------------------------------------------------
// Seeded violation search with greedy witness shrinking.

struct SearchConfig {
  Axiom axiom = Axiom::LM;
  std::uint64_t seed = 0;
  std::uint64_t budget = 100000;
  GeneratorConfig gen{};
  double min_gap = 1e-5;  // ignore failures smaller than this
  double tolerance = 1e-7;
  int jobs = 1;
};

struct SearchResult {
  bool found = false;
  std::uint64_t trials_used = 0;  // trials up to and including the hit
  std::uint64_t hit_trial = 0;
  double gap = 0;                 // after shrinking
  std::optional<AxiomWitness> witness;
};

namespace detail {

inline std::vector<std::string> generated_target_names(const GeneratorConfig& g) {
  static const char* kTargetNames[] = {"S", "Sp", "Sq", "Sr"};
  std::vector<std::string> out;
  for (int i = 0; i < g.target_count; ++i)
    out.push_back(i < 4 ? kTargetNames[i] : "S" + std::to_string(i));
  return out;
}

inline bool violation_holds(const RedundancyMeasure& m, const JointDistribution& d,
                            const SearchConfig& cfg,
                            const std::vector<std::string>& target, double* gap_out) {
  try {
    AxiomVerdict v = audit_one(m, d, cfg.axiom, target, cfg.tolerance);
    if (v.status == VerdictStatus::Fail && v.gap > cfg.min_gap) {
      if (gap_out) *gap_out = v.gap;
      return true;
    }
  } catch (const std::exception&) {
    // Degenerate candidate (e.g. a collapsed marginal); not a violation.
  }
  return false;
}

inline JointDistribution drop_row(const JointDistribution& d, const Outcome& o) {
  std::map<Outcome, Rational> mass = d.mass();
  Rational w = mass.at(o);
  mass.erase(o);
  Rational keep = Rational(1) - w;
  for (auto& [oo, p] : mass) p /= keep;
  return JointDistribution(d.variables(), std::move(mass));
}

inline JointDistribution requantize(const JointDistribution& d, int den) {
  // Largest-remainder rounding of every mass to a multiple of 1/den.
  std::vector<std::pair<Outcome, Rational>> rows(d.mass().begin(), d.mass().end());
  std::vector<std::int64_t> units(rows.size());
  std::vector<Rational> rem(rows.size());
  std::int64_t used = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Rational scaled = rows[i].second * Rational(den);
    units[i] = scaled.num() / scaled.den();
    rem[i] = scaled - Rational(units[i]);
    used += units[i];
  }
  std::vector<std::size_t> by_rem(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) by_rem[i] = i;
  std::sort(by_rem.begin(), by_rem.end(), [&](std::size_t a, std::size_t b) {
    if (rem[a] != rem[b]) return rem[b] < rem[a];
    return rows[a].first < rows[b].first;
  });
  for (std::size_t i = 0; used < den && i < by_rem.size(); ++i, ++used) ++units[by_rem[i]];
  std::map<Outcome, Rational> mass;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (units[i] > 0) mass[rows[i].first] = Rational(units[i], den);
  return JointDistribution(d.variables(), std::move(mass));
}

/// Least common denominator of all masses, saturating instead of overflowing.
inline std::uint64_t common_denominator(const JointDistribution& d) {
  std::uint64_t l = 1;
  for (const auto& [o, p] : d.mass()) {
    std::uint64_t den = static_cast<std::uint64_t>(p.den());
    std::uint64_t g = std::gcd(l, den);
    if (l / g > UINT64_MAX / den) return UINT64_MAX;
    l = l / g * den;
  }
  return l;
}

inline JointDistribution shrink_counterexample(const RedundancyMeasure& m, JointDistribution d,
                                               const SearchConfig& cfg,
                                               const std::vector<std::string>& target) {
  // Greedy descent on (support size, common denominator): row drops shrink the
  // former, requantization must strictly shrink the latter, so this terminates.
  bool improved = true;
  while (improved) {
    improved = false;
    if (d.support_size() > 2) {
      std::vector<Outcome> support;
      for (const auto& [o, p] : d.mass()) support.push_back(o);
      for (const auto& o : support) {
        JointDistribution candidate = drop_row(d, o);
        if (violation_holds(m, candidate, cfg, target, nullptr)) {
          d = std::move(candidate);
          improved = true;
          break;
        }
      }
      if (improved) continue;
    }
    std::uint64_t lcd = common_denominator(d);
    for (int den : {2, 3, 4, 6, 8, 12}) {
      if (static_cast<std::uint64_t>(den) >= lcd) continue;
      JointDistribution candidate = requantize(d, den);
      if (candidate == d) continue;
      if (violation_holds(m, candidate, cfg, target, nullptr)) {
        d = std::move(candidate);
        improved = true;
        break;
      }
    }
  }
  return d;
}

}  // namespace detail

/// Scan seeded random tables for a violation of one axiom; the first hit (by
/// trial index, independent of thread count) is greedily shrunk and wrapped
/// into a replayable witness.
inline SearchResult search_violations(const RedundancyMeasure& m, const SearchConfig& cfg) {
  std::vector<std::string> target = detail::generated_target_names(cfg.gen);
  std::atomic<std::uint64_t> first_hit{UINT64_MAX};
  int jobs = cfg.jobs < 1 ? 1 : cfg.jobs;
  auto scan = [&](std::uint64_t start) {
    for (std::uint64_t t = start; t < cfg.budget; t += static_cast<std::uint64_t>(jobs)) {
      if (t >= first_hit.load(std::memory_order_relaxed)) return;
      JointDistribution d = random_distribution(cfg.gen, cfg.seed, t);
      if (detail::violation_holds(m, d, cfg, target, nullptr)) {
        std::uint64_t seen = first_hit.load(std::memory_order_relaxed);
        while (t < seen &&
               !first_hit.compare_exchange_weak(seen, t, std::memory_order_relaxed)) {
        }
        return;
      }
    }
  };
  if (jobs == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(scan, static_cast<std::uint64_t>(w));
    for (auto& th : pool) th.join();
  }
  SearchResult out;
  std::uint64_t hit = first_hit.load();
  if (hit == UINT64_MAX) {
    out.trials_used = cfg.budget;
    return out;
  }
  out.found = true;
  out.hit_trial = hit;
  out.trials_used = hit + 1;
  JointDistribution d = random_distribution(cfg.gen, cfg.seed, hit);
  d = detail::shrink_counterexample(m, d, cfg, target);
  double gap = 0;
  detail::violation_holds(m, d, cfg, target, &gap);
  out.gap = gap;
  AxiomVerdict confirmed = audit_one(m, d, cfg.axiom, target, cfg.tolerance);
  AxiomWitness w = confirmed.witness ? *confirmed.witness : AxiomWitness{};
  w.measure = m.name;
  w.axiom = cfg.axiom;
  w.target = target;
  w.gap = gap;
  w.dist_text = write_distribution(d);
  out.witness = std::move(w);
  return out;
}

}  // namespace infodec
