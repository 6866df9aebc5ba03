#pragma once

// Full-lattice decomposition: evaluate a redundancy measure at every
// antichain over the source ground set, then peel off the partial terms by
// Moebius inversion from the bottom up.

#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "infodec/lattice.hpp"
#include "infodec/measures.hpp"

namespace infodec {

/// Whether the target is separate from the sources (the usual case) or the
/// sources decompose their own joint information (target == ground set).
enum class DecompositionMode { Standard, SelfDecomposition };

struct DecompositionTable {
  std::string measure;
  std::vector<std::string> target_names;
  std::vector<std::string> ground_names;  // lattice position i <-> ground_names[i]
  DecompositionMode mode = DecompositionMode::Standard;
  std::vector<double> cumulative;  // measure value per lattice node
  std::vector<double> partial;     // Moebius terms; empty until inverted
  bool inverted() const noexcept { return !partial.empty(); }
};

/// Evaluate the measure at every node of `lat`, whose ground positions are
/// the variables of `ground` in sorted order.  `jobs` > 1 splits the nodes
/// across threads; results are positionally stored, so the table does not
/// depend on the thread count.
inline DecompositionTable evaluate_lattice(const JointDistribution& d, const VarSet& target,
                                           const RedundancyMeasure& m, const PILattice& lat,
                                           DecompositionMode mode = DecompositionMode::Standard,
                                           int jobs = 1) {
  VarSet ground =
      mode == DecompositionMode::SelfDecomposition ? target : d.complement(target);
  if (static_cast<int>(ground.size()) != lat.ground())
    throw argument_error("lattice ground size does not match the source count");
  if (ground.empty()) throw argument_error("no source variables left over");
  if (lat.ground() > m.max_sources)
    throw argument_error("measure '" + m.name + "' supports at most " +
                         std::to_string(m.max_sources) + " source groups");
  DecompositionTable out;
  out.measure = m.name;
  out.target_names = d.names_of(target);
  out.ground_names = d.names_of(ground);
  out.mode = mode;
  out.cumulative.assign(static_cast<std::size_t>(lat.size()), 0.0);
  auto eval_node = [&](int i) {
    std::vector<VarSet> blocks;
    for (Block b : lat.node(i).blocks) {
      VarSet vars;
      for (int v = 0; v < lat.ground(); ++v)
        if (b >> v & 1) vars.push_back(ground[static_cast<std::size_t>(v)]);
      blocks.push_back(std::move(vars));
    }
    double v = m.eval(d, target, blocks);
    if (std::isnan(v))
      throw evaluation_error("measure '" + m.name + "' returned NaN at node " +
                             lat.label(i));
    out.cumulative[static_cast<std::size_t>(i)] = v;
  };
  if (jobs <= 1) {
    for (int i = 0; i < lat.size(); ++i) eval_node(i);
  } else {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&, w] {
        try {
          for (int i = w; i < lat.size(); i += jobs) eval_node(i);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return out;
}

/// partial(node) = cumulative(node) - sum of partial over everything
/// strictly below; filled bottom-up in node order (strict downsets only
/// contain later positions, since the order is top-down by layer).
inline void mobius_invert(DecompositionTable& t, const PILattice& lat) {
  if (static_cast<int>(t.cumulative.size()) != lat.size())
    throw argument_error("table does not belong to this lattice");
  t.partial.assign(t.cumulative.size(), 0.0);
  for (int i = lat.size() - 1; i >= 0; --i) {
    double below = 0;
    for (int j : lat.strict_downset(i)) below += t.partial[static_cast<std::size_t>(j)];
    t.partial[static_cast<std::size_t>(i)] = t.cumulative[static_cast<std::size_t>(i)] - below;
  }
}

/// Recompose one node from the partial terms — the inversion's round-trip.
inline double downset_sum(const DecompositionTable& t, const PILattice& lat, int node) {
  if (!t.inverted()) throw argument_error("table not inverted yet");
  double sum = t.partial[static_cast<std::size_t>(node)];
  for (int j : lat.strict_downset(node)) sum += t.partial[static_cast<std::size_t>(j)];
  return sum;
}

struct PositivityViolation {
  int node = -1;
  double value = 0;
};

/// Negative partial terms below -tol, most negative first.
inline std::vector<PositivityViolation> check_local_positivity(const DecompositionTable& t,
                                                               const PILattice& lat,
                                                               double tol = 1e-9) {
  if (!t.inverted()) throw argument_error("table not inverted yet");
  std::vector<PositivityViolation> out;
  for (int i = 0; i < lat.size(); ++i) {
    double v = t.partial[static_cast<std::size_t>(i)];
    if (v < -tol) out.push_back({i, v});
  }
  std::sort(out.begin(), out.end(),
            [](const PositivityViolation& a, const PositivityViolation& b) {
              return a.value != b.value ? a.value < b.value : a.node < b.node;
            });
  return out;
}

}  // namespace infodec
