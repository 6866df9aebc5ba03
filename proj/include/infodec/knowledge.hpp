#pragma once

// Partition models of multi-agent knowledge.
//
// A model is a finite state set plus one partition per agent; an agent knows
// an event at a state when their whole cell sits inside the event.  Shared
// knowledge intersects the agents' knowledge; common knowledge iterates
// shared knowledge to its fixpoint, which takes at most |states| rounds
// because the event can only shrink.
//
// Scenario text format:
//
//   states: a b c d
//   agent X1: { a b } { c d }
//   agent X2: { a c } { b d }
//   event E1: a b c
//
// State names are arbitrary whitespace-free tokens; '#' starts a comment.

#include <cmath>
#include <istream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "infodec/distribution.hpp"

namespace infodec {

struct KnowledgeModel {
  struct Agent {
    std::string name;
    std::vector<int> cell_of;  // state index -> cell id
    int cell_count = 0;
  };

  std::vector<std::string> states;
  std::vector<Agent> agents;

  int state_index(const std::string& label) const {
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == label) return static_cast<int>(i);
    throw name_error("unknown state '" + label + "'");
  }

  int agent_index(const std::string& name) const {
    for (std::size_t i = 0; i < agents.size(); ++i)
      if (agents[i].name == name) return static_cast<int>(i);
    throw name_error("unknown agent '" + name + "'");
  }

  std::vector<int> all_agents() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < agents.size(); ++i) out.push_back(static_cast<int>(i));
    return out;
  }
};

/// A subset of the model's states.
struct Event {
  std::vector<bool> members;

  static Event none(std::size_t n) { return Event{std::vector<bool>(n, false)}; }
  static Event all(std::size_t n) { return Event{std::vector<bool>(n, true)}; }

  std::size_t size() const noexcept { return members.size(); }
  std::size_t count() const {
    std::size_t c = 0;
    for (bool b : members) c += b;
    return c;
  }
  bool empty() const { return count() == 0; }
  bool contains(int state) const { return members.at(static_cast<std::size_t>(state)); }

  Event intersect(const Event& o) const {
    if (o.size() != size()) throw argument_error("events over different models");
    Event out = *this;
    for (std::size_t i = 0; i < members.size(); ++i)
      out.members[i] = out.members[i] && o.members[i];
    return out;
  }

  bool subset_of(const Event& o) const {
    if (o.size() != size()) throw argument_error("events over different models");
    for (std::size_t i = 0; i < members.size(); ++i)
      if (members[i] && !o.members[i]) return false;
    return true;
  }

  friend bool operator==(const Event& a, const Event& b) { return a.members == b.members; }
};

/// Build a model from explicit cells, checking that each agent's cells
/// partition the state set.
inline KnowledgeModel make_model(
    std::vector<std::string> states,
    const std::vector<std::pair<std::string, std::vector<std::vector<int>>>>& agent_cells) {
  if (states.empty()) throw data_error("knowledge model with no states");
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j)
      if (states[i] == states[j]) throw data_error("duplicate state '" + states[i] + "'");
  if (agent_cells.empty()) throw data_error("knowledge model with no agents");
  KnowledgeModel m;
  m.states = std::move(states);
  for (const auto& [name, cells] : agent_cells) {
    for (const auto& a : m.agents)
      if (a.name == name) throw data_error("duplicate agent '" + name + "'");
    KnowledgeModel::Agent agent;
    agent.name = name;
    agent.cell_of.assign(m.states.size(), -1);
    agent.cell_count = static_cast<int>(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].empty()) throw data_error("agent '" + name + "' has an empty cell");
      for (int s : cells[c]) {
        if (s < 0 || s >= static_cast<int>(m.states.size()))
          throw data_error("cell state index out of range");
        if (agent.cell_of[static_cast<std::size_t>(s)] != -1)
          throw data_error("agent '" + name + "': state '" +
                           m.states[static_cast<std::size_t>(s)] + "' is in two cells");
        agent.cell_of[static_cast<std::size_t>(s)] = static_cast<int>(c);
      }
    }
    for (std::size_t s = 0; s < m.states.size(); ++s)
      if (agent.cell_of[s] == -1)
        throw data_error("agent '" + name + "': state '" + m.states[s] + "' is in no cell");
    m.agents.push_back(std::move(agent));
  }
  return m;
}

inline Event event_of(const KnowledgeModel& m, const std::vector<std::string>& labels) {
  Event e = Event::none(m.states.size());
  for (const auto& l : labels) e.members[static_cast<std::size_t>(m.state_index(l))] = true;
  return e;
}

/// K_agent(E): the states whose whole cell lies inside E.
inline Event knows(const KnowledgeModel& m, int agent, const Event& e) {
  if (agent < 0 || agent >= static_cast<int>(m.agents.size()))
    throw argument_error("agent index out of range");
  if (e.size() != m.states.size()) throw argument_error("event over a different model");
  const auto& cell_of = m.agents[static_cast<std::size_t>(agent)].cell_of;
  int cells = m.agents[static_cast<std::size_t>(agent)].cell_count;
  std::vector<bool> cell_ok(static_cast<std::size_t>(cells), true);
  for (std::size_t s = 0; s < m.states.size(); ++s)
    if (!e.members[s]) cell_ok[static_cast<std::size_t>(cell_of[s])] = false;
  Event out = Event::none(m.states.size());
  for (std::size_t s = 0; s < m.states.size(); ++s)
    out.members[s] = cell_ok[static_cast<std::size_t>(cell_of[s])];
  return out;
}

/// Everybody-knows: the intersection of the agents' knowledge of E.
inline Event shared_knowledge(const KnowledgeModel& m, const std::vector<int>& agents,
                              const Event& e) {
  if (agents.empty()) throw argument_error("shared knowledge over no agents");
  Event out = Event::all(m.states.size());
  for (int a : agents) out = out.intersect(knows(m, a, e));
  return out;
}

struct CommonKnowledgeResult {
  Event event;
  int iterations = 0;  // shared-knowledge rounds until the fixpoint
};

/// Iterate everybody-knows until it stabilizes.  Each round either shrinks
/// the event or stops, so at most |states| rounds happen.
inline CommonKnowledgeResult common_knowledge(const KnowledgeModel& m,
                                              const std::vector<int>& agents, const Event& e) {
  CommonKnowledgeResult out{e, 0};
  for (std::size_t round = 0; round <= m.states.size() + 1; ++round) {
    Event next = shared_knowledge(m, agents, out.event);
    if (next == out.event) return out;
    out.event = std::move(next);
    ++out.iterations;
  }
  throw evaluation_error("common-knowledge iteration failed to stabilize");
}

/// States of positive probability become model states; each agent observes
/// one variable group and cannot tell apart states agreeing on it.
inline KnowledgeModel model_from_distribution(const JointDistribution& d,
                                              const std::vector<VarSet>& agent_vars) {
  if (agent_vars.empty()) throw argument_error("no agents given");
  std::vector<std::string> states;
  std::vector<Outcome> support;
  for (const auto& [o, p] : d.mass()) {
    std::string label = "(";
    for (std::size_t i = 0; i < o.size(); ++i)
      label += (i ? "," : "") + std::to_string(o[i]);
    label += ")";
    states.push_back(std::move(label));
    support.push_back(o);
  }
  std::vector<std::pair<std::string, std::vector<std::vector<int>>>> agent_cells;
  for (const auto& vars : agent_vars) {
    if (vars.empty()) throw argument_error("agent with no observed variables");
    std::string name;
    for (int v : vars) name += (name.empty() ? "" : "+") + d.variables()[static_cast<std::size_t>(v)].name;
    std::map<Outcome, std::vector<int>> cells;
    for (std::size_t s = 0; s < support.size(); ++s)
      cells[project(support[s], vars)].push_back(static_cast<int>(s));
    std::vector<std::vector<int>> cell_list;
    for (auto& [key, members] : cells) cell_list.push_back(std::move(members));
    agent_cells.emplace_back(std::move(name), std::move(cell_list));
  }
  return make_model(std::move(states), agent_cells);
}

/// Crude "how much was learned" figure: log2(|states| / |E|).  It ignores
/// the probabilities entirely, which is exactly why it is only a diagnostic.
inline double knowledge_reduction_bits(const KnowledgeModel& m, const Event& e) {
  if (e.size() != m.states.size()) throw argument_error("event over a different model");
  std::size_t c = e.count();
  if (c == 0) return std::numeric_limits<double>::infinity();
  return std::log2(static_cast<double>(m.states.size()) / static_cast<double>(c));
}

inline std::string format_event(const KnowledgeModel& m, const Event& e) {
  std::string out = "{";
  bool first = true;
  for (std::size_t s = 0; s < m.states.size(); ++s) {
    if (!e.members[s]) continue;
    if (!first) out += " ";
    out += m.states[s];
    first = false;
  }
  return out + "}";
}

struct Scenario {
  KnowledgeModel model;
  std::vector<std::pair<std::string, Event>> events;

  const Event& event(const std::string& name) const {
    for (const auto& [n, e] : events)
      if (n == name) return e;
    throw name_error("unknown event '" + name + "'");
  }
};

inline Scenario parse_scenario(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> states;
  std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> agents;
  std::vector<std::pair<std::string, std::vector<std::string>>> events;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::string key;
    if (!(row >> key)) continue;
    if (key == "states:") {
      if (!states.empty()) throw parse_error(lineno, "second states: line");
      for (std::string tok; row >> tok;) states.push_back(tok);
      if (states.empty()) throw parse_error(lineno, "states: line names no states");
      continue;
    }
    std::string name;
    if (!(row >> name) || name.back() != ':')
      throw parse_error(lineno, "expected '" + key + " <name>:'");
    name.pop_back();
    if (key == "agent") {
      std::vector<std::vector<std::string>> cells;
      std::vector<std::string> cur;
      bool open = false;
      for (std::string tok; row >> tok;) {
        if (tok == "{") {
          if (open) throw parse_error(lineno, "nested '{'");
          open = true;
          cur.clear();
        } else if (tok == "}") {
          if (!open) throw parse_error(lineno, "stray '}'");
          open = false;
          cells.push_back(cur);
        } else {
          if (!open) throw parse_error(lineno, "state '" + tok + "' outside braces");
          cur.push_back(tok);
        }
      }
      if (open) throw parse_error(lineno, "unclosed '{'");
      if (cells.empty()) throw parse_error(lineno, "agent '" + name + "' has no cells");
      agents.emplace_back(name, std::move(cells));
    } else if (key == "event") {
      std::vector<std::string> members;
      for (std::string tok; row >> tok;) members.push_back(tok);
      events.emplace_back(name, std::move(members));
    } else {
      throw parse_error(lineno, "unknown directive '" + key + "'");
    }
  }
  if (states.empty()) throw parse_error(lineno, "missing states: line");
  if (agents.empty()) throw parse_error(lineno, "no agents defined");
  std::vector<std::pair<std::string, std::vector<std::vector<int>>>> agent_cells;
  try {
    std::vector<std::string> state_list = states;
    KnowledgeModel lookup;
    lookup.states = state_list;
    for (const auto& [name, cells] : agents) {
      std::vector<std::vector<int>> idx_cells;
      for (const auto& cell : cells) {
        std::vector<int> idx;
        for (const auto& tok : cell) idx.push_back(lookup.state_index(tok));
        idx_cells.push_back(std::move(idx));
      }
      agent_cells.emplace_back(name, std::move(idx_cells));
    }
    Scenario out{make_model(std::move(state_list), agent_cells), {}};
    for (const auto& [name, members] : events)
      out.events.emplace_back(name, event_of(out.model, members));
    return out;
  } catch (const name_error& e) {
    throw data_error(e.what());
  }
}

inline Scenario parse_scenario(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}

}  // namespace infodec
