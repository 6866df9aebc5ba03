#pragma once

// Rendering and serialization of decomposition results: aligned text tables,
// Graphviz DOT for visual diffing of the lattice, and JSON that round-trips
// every double bit for bit.

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "infodec/decomposition.hpp"
#include "infodec/geometry.hpp"
#include "infodec/lattice.hpp"

namespace infodec {

/// Six significant digits with trailing noise trimmed: 1.0 -> "1",
/// 0.45914791 -> "0.459148".
inline std::string short_num(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

inline std::string decomposition_to_text(const DecompositionTable& t, const PILattice& lat) {
  std::ostringstream out;
  out << t.measure << " decomposition, target {";
  for (std::size_t i = 0; i < t.target_names.size(); ++i)
    out << (i ? "," : "") << t.target_names[i];
  out << "} over sources {";
  for (std::size_t i = 0; i < t.ground_names.size(); ++i)
    out << (i ? "," : "") << t.ground_names[i];
  out << "}";
  if (t.mode == DecompositionMode::SelfDecomposition) out << " (self)";
  out << "\n";
  int layer = -1;
  for (int i = 0; i < lat.size(); ++i) {
    if (lat.layer(i) != layer) {
      layer = lat.layer(i);
      out << "-- layer " << layer << "\n";
    }
    out << lat.label(i) << ": " << short_num(t.cumulative[static_cast<std::size_t>(i)]);
    if (t.inverted()) out << " (" << short_num(t.partial[static_cast<std::size_t>(i)]) << ")";
    out << "\n";
  }
  return out.str();
}

/// Hasse diagram, one rank per layer, edges from each node down to the
/// antichains it covers.
inline std::string lattice_to_dot(const PILattice& lat,
                                  const std::vector<std::string>& annotations = {}) {
  std::ostringstream out;
  out << "digraph pi_lattice {\n";
  out << "  rankdir=TB;\n  node [shape=box];\n  edge [dir=none];\n";
  for (int layer = 0; layer < lat.layer_count(); ++layer) {
    out << "  { rank=same;";
    for (int i = 0; i < lat.size(); ++i)
      if (lat.layer(i) == layer) out << " n" << i << ";";
    out << " }\n";
  }
  for (int i = 0; i < lat.size(); ++i) {
    out << "  n" << i << " [label=\"" << lat.label(i);
    if (i < static_cast<int>(annotations.size()) && !annotations[static_cast<std::size_t>(i)].empty())
      out << "\\n" << annotations[static_cast<std::size_t>(i)];
    out << "\"];\n";
  }
  for (int i = 0; i < lat.size(); ++i)
    for (int j : lat.covers_below(i)) out << "  n" << i << " -> n" << j << ";\n";
  out << "}\n";
  return out.str();
}

inline std::string decomposition_to_dot(const DecompositionTable& t, const PILattice& lat) {
  std::vector<std::string> notes;
  for (int i = 0; i < lat.size(); ++i) {
    std::string note = short_num(t.cumulative[static_cast<std::size_t>(i)]);
    if (t.inverted()) note += " (" + short_num(t.partial[static_cast<std::size_t>(i)]) + ")";
    notes.push_back(std::move(note));
  }
  return lattice_to_dot(lat, notes);
}

inline nlohmann::json decomposition_to_json(const DecompositionTable& t, const PILattice& lat) {
  nlohmann::json j;
  j["measure"] = t.measure;
  j["mode"] = t.mode == DecompositionMode::SelfDecomposition ? "self" : "standard";
  j["target"] = t.target_names;
  j["sources"] = t.ground_names;
  nlohmann::json nodes = nlohmann::json::array();
  for (int i = 0; i < lat.size(); ++i) {
    nlohmann::json n;
    n["antichain"] = lat.label(i);
    n["layer"] = lat.layer(i);
    n["cumulative"] = t.cumulative[static_cast<std::size_t>(i)];
    if (t.inverted()) n["partial"] = t.partial[static_cast<std::size_t>(i)];
    nodes.push_back(std::move(n));
  }
  j["nodes"] = std::move(nodes);
  return j;
}

/// Inverse of decomposition_to_json; node order must match the lattice the
/// caller rebuilds from the source count.
inline DecompositionTable decomposition_from_json(const nlohmann::json& j) {
  DecompositionTable t;
  try {
    t.measure = j.at("measure").get<std::string>();
    t.mode = j.at("mode").get<std::string>() == "self" ? DecompositionMode::SelfDecomposition
                                                       : DecompositionMode::Standard;
    t.target_names = j.at("target").get<std::vector<std::string>>();
    t.ground_names = j.at("sources").get<std::vector<std::string>>();
    for (const auto& n : j.at("nodes")) {
      t.cumulative.push_back(n.at("cumulative").get<double>());
      if (n.contains("partial")) t.partial.push_back(n.at("partial").get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw data_error(std::string("bad decomposition JSON: ") + e.what());
  }
  if (!t.partial.empty() && t.partial.size() != t.cumulative.size())
    throw data_error("bad decomposition JSON: partial terms for only some nodes");
  return t;
}

inline nlohmann::json geometry_to_json(const SharedInformation& si) {
  nlohmann::json j;
  nlohmann::json support = nlohmann::json::array();
  for (const auto& o : si.target_support) support.push_back(o);
  j["target_support"] = std::move(support);
  j["prior"] = si.prior;
  j["si_kl"] = si.si_kl;
  if (si.lr_finite) j["si_lr"] = si.si_lr;
  else j["si_lr"] = "-inf";
  j["lr_finite"] = si.lr_finite;
  if (!si.lr_finite) j["offending_tuple"] = si.offending_tuple;
  nlohmann::json tuples = nlohmann::json::array();
  for (const auto& t : si.tuples) {
    nlohmann::json tj;
    nlohmann::json outs = nlohmann::json::array();
    for (const auto& o : t.block_outcomes) outs.push_back(o);
    tj["source_outcomes"] = std::move(outs);
    tj["weight"] = t.weight;
    tj["posteriors"] = t.posteriors;
    tj["shared"] = t.shared.distribution;
    tj["weights"] = t.shared.weights;
    tj["kl_bits"] = t.shared.kl_bits;
    tj["fw_gap"] = t.shared.fw_gap;
    tj["iterations"] = t.shared.iterations;
    if (std::isfinite(t.lr_term)) tj["lr_term"] = t.lr_term;
    else tj["lr_term"] = "-inf";
    tuples.push_back(std::move(tj));
  }
  j["tuples"] = std::move(tuples);
  return j;
}

}  // namespace infodec
