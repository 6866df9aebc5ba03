// Command-line front end: decompositions, axiom audits, geometric analysis,
// knowledge scenarios, lattice inspection and violation search.
//
// Exit codes: 0 success, 1 violation found (or confirmed as expected),
// 2 usage problem, 3 bad or uncooperative data, 4 internal failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "infodec/axioms.hpp"
#include "infodec/decomposition.hpp"
#include "infodec/emit.hpp"
#include "infodec/geometry.hpp"
#include "infodec/io.hpp"
#include "infodec/knowledge.hpp"
#include "infodec/lattice.hpp"
#include "infodec/registry.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kData = 3;
constexpr int kInternal = 4;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw infodec::data_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

infodec::VarSet pick_target(const infodec::JointDistribution& d, const std::string& names,
                            bool self_mode) {
  if (self_mode) {
    if (!names.empty())
      throw infodec::argument_error("--target and --self cannot be combined");
    return d.all_vars();
  }
  if (!names.empty()) return d.resolve(split_names(names));
  for (const auto& v : d.variables())
    if (v.name == "S") return d.resolve({"S"});
  throw infodec::argument_error(
      "no --target given and no variable named S to default to");
}

std::string fmt_gap(double v) {
  std::ostringstream out;
  out << std::setprecision(15) << v;
  return out.str();
}

int cmd_decompose(const std::string& file, const std::string& measure,
                  const std::string& target_csv, bool self_mode, const std::string& format,
                  int jobs) {
  const infodec::RedundancyMeasure& m = infodec::find_measure(measure);
  infodec::JointDistribution d = infodec::read_distribution(slurp(file));
  infodec::VarSet target = pick_target(d, target_csv, self_mode);
  infodec::VarSet ground = self_mode ? target : d.complement(target);
  infodec::PILattice lat = infodec::PILattice::build(static_cast<int>(ground.size()));
  infodec::DecompositionTable t = infodec::evaluate_lattice(
      d, target, m, lat,
      self_mode ? infodec::DecompositionMode::SelfDecomposition
                : infodec::DecompositionMode::Standard,
      jobs);
  infodec::mobius_invert(t, lat);
  if (format == "table") {
    std::cout << infodec::decomposition_to_text(t, lat);
    auto neg = infodec::check_local_positivity(t, lat);
    if (!neg.empty()) {
      std::cout << "negative partial terms:";
      for (const auto& v : neg)
        std::cout << " " << lat.label(v.node) << "=" << infodec::short_num(v.value);
      std::cout << "\n";
    }
  } else if (format == "dot") {
    std::cout << infodec::decomposition_to_dot(t, lat);
  } else if (format == "json") {
    std::cout << infodec::decomposition_to_json(t, lat).dump(2) << "\n";
  } else {
    throw infodec::argument_error("unknown format '" + format + "'");
  }
  return kOk;
}

int cmd_lattice(int ground_size, const std::string& format) {
  infodec::PILattice lat = infodec::PILattice::build(ground_size);
  if (format == "dot") {
    std::cout << infodec::lattice_to_dot(lat);
    return kOk;
  }
  std::cout << lat.size() << " antichains over " << ground_size << " variables, "
            << lat.layer_count() << " layers\n";
  int layer = -1;
  for (int i = 0; i < lat.size(); ++i) {
    if (lat.layer(i) != layer) {
      layer = lat.layer(i);
      std::cout << "-- layer " << layer << "\n";
    }
    std::cout << lat.label(i) << "\n";
  }
  return kOk;
}

int cmd_geometry(const std::string& file, const std::string& target_csv,
                 const std::string& format) {
  infodec::JointDistribution d = infodec::read_distribution(slurp(file));
  infodec::VarSet target = pick_target(d, target_csv, false);
  infodec::VarSet rest = d.complement(target);
  if (rest.empty()) throw infodec::argument_error("no source variables outside the target");
  std::vector<infodec::VarSet> sources;
  for (int v : rest) sources.push_back({v});
  infodec::SharedInformation si = infodec::shared_information(d, target, sources);
  if (format == "json") {
    std::cout << infodec::geometry_to_json(si).dump(2) << "\n";
    return kOk;
  }
  std::cout << "prior over target support:";
  for (double p : si.prior) std::cout << " " << infodec::short_num(p);
  std::cout << "\n";
  for (const auto& t : si.tuples) {
    std::cout << "tuple";
    for (std::size_t i = 0; i < t.block_outcomes.size(); ++i) {
      std::cout << (i ? " x " : " ") << d.variables()[static_cast<std::size_t>(rest[i])].name
                << "=(";
      for (std::size_t j = 0; j < t.block_outcomes[i].size(); ++j)
        std::cout << (j ? "," : "") << t.block_outcomes[i][j];
      std::cout << ")";
    }
    std::cout << "  weight " << infodec::short_num(t.weight) << "\n";
    std::cout << "  shared posterior:";
    for (double p : t.shared.distribution) std::cout << " " << infodec::short_num(p);
    std::cout << "  divergence " << infodec::short_num(t.shared.kl_bits) << " bits (gap "
              << t.shared.fw_gap << ", " << t.shared.iterations << " iterations)\n";
  }
  std::cout << "divergence-weighted score: " << fmt_gap(si.si_kl) << " bits\n";
  if (si.lr_finite)
    std::cout << "likelihood-ratio score:    " << fmt_gap(si.si_lr) << " bits\n";
  else
    std::cout << "likelihood-ratio score:    -inf (tuple " << si.offending_tuple
              << " puts target mass where the shared posterior has none)\n";
  if (sources.size() == 2) {
    infodec::NegativeSynergyReport r =
        infodec::negative_synergy_report(d, target, sources[0], sources[1]);
    std::cout << "whole-channel references: I(target:" << d.names_of(sources[0])[0]
              << ")=" << infodec::short_num(r.split.mi_1) << "  I(target:"
              << d.names_of(sources[1])[0] << ")=" << infodec::short_num(r.split.mi_2)
              << "\n";
    std::cout << "pair split (kl-anchored): shared=" << infodec::short_num(r.split.shared)
              << " unique=" << infodec::short_num(r.split.unique_1) << ","
              << infodec::short_num(r.split.unique_2)
              << " complementary=" << infodec::short_num(r.split.complementary);
    if (r.complementary_negative) std::cout << "  NEGATIVE";
    std::cout << "\n";
    if (r.target_determined_by_1 || r.target_determined_by_2) {
      std::cout << "target is a function of "
                << (r.target_determined_by_2 ? d.names_of(sources[1])[0]
                                             : d.names_of(sources[0])[0])
                << "; reference value " << infodec::short_num(r.reference_mi) << ": ";
      if (r.kl_undershoots) std::cout << "divergence score falls short, ";
      if (r.lr_overshoots) std::cout << "likelihood-ratio score overshoots";
      std::cout << "\n";
    }
  }
  return kOk;
}

int cmd_knowledge(const std::string& file, std::vector<std::string> event_names) {
  infodec::Scenario sc = infodec::parse_scenario(slurp(file));
  const infodec::KnowledgeModel& m = sc.model;
  std::cout << m.states.size() << " states, " << m.agents.size() << " agents\n";
  if (event_names.empty())
    for (const auto& [name, e] : sc.events) event_names.push_back(name);
  if (event_names.empty()) throw infodec::data_error("scenario defines no events");
  for (const auto& name : event_names) {
    const infodec::Event& e = sc.event(name);
    std::cout << "event " << name << ": " << infodec::format_event(m, e) << "\n";
    for (std::size_t a = 0; a < m.agents.size(); ++a)
      std::cout << "  K[" << m.agents[a].name
                << "] = " << infodec::format_event(m, infodec::knows(m, static_cast<int>(a), e))
                << "\n";
    infodec::Event sk = infodec::shared_knowledge(m, m.all_agents(), e);
    std::cout << "  shared = " << infodec::format_event(m, sk) << "\n";
    infodec::CommonKnowledgeResult ck = infodec::common_knowledge(m, m.all_agents(), e);
    std::cout << "  common = " << infodec::format_event(m, ck.event) << " (fixpoint after "
              << ck.iterations << " rounds)\n";
    std::cout << "  state-count reduction: " << infodec::short_num(
                     infodec::knowledge_reduction_bits(m, e))
              << " bits (probability-blind diagnostic)\n";
  }
  return kOk;
}

void print_verdicts(const std::vector<infodec::AxiomVerdict>& verdicts) {
  for (const auto& v : verdicts) {
    std::cout << infodec::to_string(v.axiom) << ": " << infodec::to_string(v.status);
    if (v.status == infodec::VerdictStatus::Fail) {
      std::cout << " gap=" << fmt_gap(v.gap);
      if (v.witness) std::cout << " — " << v.witness->detail;
    } else if (v.status == infodec::VerdictStatus::NotApplicable) {
      std::cout << " (" << v.detail << ")";
    } else {
      std::cout << " (" << v.detail << ")";
    }
    std::cout << "\n";
  }
}

int cmd_axioms(const std::string& file, const std::string& builtin, const std::string& measure,
               std::vector<std::string> axiom_ids, const std::string& target_csv,
               bool self_flag, double tolerance, bool certificate, const std::string& replay,
               bool expect_fail, const std::string& witness_out) {
  if (!replay.empty()) {
    infodec::AxiomWitness w = infodec::parse_witness(slurp(replay));
    infodec::AxiomVerdict v = infodec::replay_witness(w);
    std::cout << "replaying " << infodec::to_string(w.axiom) << " for " << w.measure << ": "
              << infodec::to_string(v.status);
    if (v.status == infodec::VerdictStatus::Fail) std::cout << " gap=" << fmt_gap(v.gap);
    std::cout << "\n";
    if (v.status != infodec::VerdictStatus::Fail) {
      std::cout << "recorded violation did not reproduce\n";
      return kData;
    }
    if (std::abs(v.gap - w.gap) > 1e-9) {
      std::cout << "recorded gap " << fmt_gap(w.gap) << " differs from replayed gap\n";
      return kData;
    }
    std::cout << "gap matches the recorded value\n";
    return kViolation;
  }

  infodec::AuditConfig cfg;
  cfg.tolerance = tolerance;
  std::optional<infodec::JointDistribution> dist;
  const infodec::CounterexampleCase* cse = nullptr;
  if (!builtin.empty()) {
    if (!file.empty())
      throw infodec::argument_error("give either a file or --builtin, not both");
    cse = &infodec::find_builtin(builtin);
    dist = cse->distribution();
    cfg.target = cse->target;
    cfg.self_mode = cse->self_mode;
    cfg.axioms = cse->default_axioms;
  } else if (!file.empty()) {
    dist = infodec::read_distribution(slurp(file));
  } else {
    throw infodec::argument_error("need a distribution file or --builtin NAME");
  }
  if (!target_csv.empty()) {
    cfg.target = split_names(target_csv);
    cfg.self_mode = false;
  }
  if (self_flag) {
    cfg.target.clear();
    cfg.self_mode = true;
  }
  // The certificate works on the bare distribution, no target needed.
  if (!certificate && !cfg.self_mode && cfg.target.empty()) {
    for (const auto& v : dist->variables())
      if (v.name == "S") cfg.target = {"S"};
    if (cfg.target.empty())
      throw infodec::argument_error("no --target given and no variable named S to default to");
  }
  if (!axiom_ids.empty()) {
    cfg.axioms.clear();
    for (const auto& id : axiom_ids) cfg.axioms.push_back(infodec::parse_axiom(id));
  }

  if (certificate) {
    infodec::SymmetryCertificate r = infodec::symmetry_certificate(*dist);
    for (const auto& e : r.determined)
      std::cout << e.node << ": " << e.formula << " = " << infodec::short_num(e.value) << "\n";
    std::cout << "bottom bounded by min pairwise information: "
              << infodec::short_num(r.bottom_upper) << "\n";
    std::cout << "partial term at " << r.critical_node
              << " bounded above by: " << fmt_gap(r.partial_bound) << "\n";
    std::cout << (r.infeasible
                      ? "INFEASIBLE: no nonnegative assignment satisfies the constraints\n"
                      : "no contradiction from these constraints\n");
    return kOk;
  }

  const infodec::RedundancyMeasure& m = infodec::find_measure(measure);
  std::vector<infodec::AxiomVerdict> verdicts = infodec::audit(m, *dist, cfg);
  print_verdicts(verdicts);
  std::vector<infodec::Axiom> failed;
  const infodec::AxiomVerdict* worst = nullptr;
  for (const auto& v : verdicts)
    if (v.status == infodec::VerdictStatus::Fail) {
      failed.push_back(v.axiom);
      if (!worst || v.gap > worst->gap) worst = &v;
    }
  if (worst && worst->witness && !witness_out.empty()) {
    std::ofstream out(witness_out);
    out << infodec::witness_to_text(*worst->witness);
    std::cout << "witness written to " << witness_out << "\n";
  }
  if (expect_fail) {
    std::vector<infodec::Axiom> expected;
    if (cse) {
      auto it = cse->expected_failures.find(measure);
      if (it != cse->expected_failures.end()) expected = it->second;
    } else {
      expected = failed;  // free-form input: any failure counts as expected
      if (expected.empty()) {
        std::cout << "expected a violation, found none\n";
        return kData;
      }
    }
    if (failed == expected && !failed.empty()) {
      std::cout << "expected violation confirmed\n";
      return kViolation;
    }
    if (failed == expected && failed.empty()) {
      std::cout << "expected no violations for this measure, and none appeared\n";
      return kOk;
    }
    std::cout << "failure set does not match expectations\n";
    return kData;
  }
  return failed.empty() ? kOk : kViolation;
}

int cmd_search(const std::string& measure, const std::string& axiom_id, std::uint64_t seed,
               std::uint64_t budget, int jobs, double min_gap, int sources, int targets,
               int max_arity, int min_support, int max_support, int max_den,
               const std::string& out_file) {
  infodec::SearchConfig cfg;
  cfg.axiom = infodec::parse_axiom(axiom_id);
  cfg.seed = seed;
  cfg.budget = budget;
  cfg.jobs = jobs;
  cfg.min_gap = min_gap;
  cfg.gen.source_count = sources;
  cfg.gen.target_count = targets;
  cfg.gen.max_arity = max_arity;
  cfg.gen.min_support = min_support;
  cfg.gen.max_support = max_support;
  cfg.gen.max_denominator = max_den;
  const infodec::RedundancyMeasure& m = infodec::find_measure(measure);
  infodec::SearchResult r = infodec::search_violations(m, cfg);
  if (!r.found) {
    std::cout << "no " << axiom_id << " violation for " << measure << " in " << r.trials_used
              << " trials\n";
    return kViolation;
  }
  std::cout << "violation of " << axiom_id << " for " << measure << " at trial " << r.hit_trial
            << " (gap " << fmt_gap(r.gap) << " after shrinking)\n";
  std::string text = infodec::witness_to_text(*r.witness);
  std::cout << text;
  if (!out_file.empty()) {
    std::ofstream out(out_file);
    out << text;
    std::cout << "witness written to " << out_file << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"information decomposition toolbox"};
  app.require_subcommand(1);

  std::string file, builtin, measure = "imin", target_csv, format = "table";
  std::string axiom_id = "lm", replay, witness_out, out_file;
  std::vector<std::string> axiom_ids, event_names;
  bool self_mode = false, certificate = false, expect_fail = false;
  double tolerance = 1e-7, min_gap = 1e-5;
  int jobs = 1, ground_size = 3;
  std::uint64_t seed = 0, budget = 100000;
  int sources = 2, targets = 2, max_arity = 2, min_support = 3, max_support = 8,
      max_den = 12;

  CLI::App* dec = app.add_subcommand("decompose", "full-lattice decomposition of a table");
  dec->add_option("file", file, "distribution table")->required();
  dec->add_option("--measure", measure, "imin, ii, si_kl or si_lr");
  dec->add_option("--target", target_csv, "comma-separated target variables");
  dec->add_flag("--self", self_mode, "sources decompose their own joint information");
  dec->add_option("--format", format, "table, dot or json");
  dec->add_option("--jobs", jobs, "worker threads for the node evaluations");

  CLI::App* lat = app.add_subcommand("lattice", "inspect the antichain lattice");
  lat->add_option("--ground", ground_size, "number of source variables");
  lat->add_option("--format", format, "table or dot");

  CLI::App* ax = app.add_subcommand("axioms", "audit a measure against one distribution");
  ax->add_option("file", file, "distribution table");
  ax->add_option("--builtin", builtin, "left-mono, xor, copy or conflict");
  ax->add_option("--measure", measure, "imin, ii, si_kl or si_lr");
  ax->add_option("--axiom", axiom_ids, "limit to these axiom ids");
  ax->add_option("--target", target_csv, "comma-separated target variables");
  ax->add_flag("--self", self_mode, "audit in self-decomposition mode");
  ax->add_option("--tolerance", tolerance, "audit tolerance");
  ax->add_flag("--certificate", certificate, "print the joint-infeasibility certificate");
  ax->add_option("--replay", replay, "re-run a recorded witness file");
  ax->add_flag("--expect-fail", expect_fail, "confirm a documented violation");
  ax->add_option("--witness-out", witness_out, "write the worst witness here");

  CLI::App* geo = app.add_subcommand("geometry", "shared-posterior analysis of a table");
  geo->add_option("file", file, "distribution table")->required();
  geo->add_option("--target", target_csv, "comma-separated target variables");
  geo->add_option("--format", format, "table or json");

  CLI::App* kn = app.add_subcommand("knowledge", "partition-model analysis of a scenario");
  kn->add_option("file", file, "scenario file")->required();
  kn->add_option("--event", event_names, "event names to analyze (default: all)");

  CLI::App* se = app.add_subcommand("search", "hunt for axiom violations on random tables");
  se->add_option("--measure", measure, "imin, ii, si_kl or si_lr");
  se->add_option("--axiom", axiom_id, "axiom id to attack");
  se->add_option("--seed", seed, "random seed");
  se->add_option("--budget", budget, "trials before giving up");
  se->add_option("--jobs", jobs, "worker threads");
  se->add_option("--min-gap", min_gap, "smallest violation worth reporting");
  se->add_option("--sources", sources, "source variables per trial");
  se->add_option("--targets", targets, "target variables per trial");
  se->add_option("--max-arity", max_arity, "largest variable arity");
  se->add_option("--min-support", min_support, "smallest support size");
  se->add_option("--max-support", max_support, "largest support size");
  se->add_option("--max-denominator", max_den, "largest mass denominator");
  se->add_option("--out", out_file, "write the witness file here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (dec->parsed())
      return cmd_decompose(file, measure, target_csv, self_mode, format, jobs);
    if (lat->parsed()) return cmd_lattice(ground_size, format);
    if (ax->parsed())
      return cmd_axioms(file, builtin, measure, axiom_ids, target_csv, self_mode, tolerance,
                        certificate, replay, expect_fail, witness_out);
    if (geo->parsed()) return cmd_geometry(file, target_csv, format);
    if (kn->parsed()) return cmd_knowledge(file, event_names);
    if (se->parsed())
      return cmd_search(measure, axiom_id, seed, budget, jobs, min_gap, sources, targets,
                        max_arity, min_support, max_support, max_den, out_file);
  } catch (const infodec::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const infodec::data_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const infodec::infeasible_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const infodec::capacity_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const infodec::argument_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const infodec::evaluation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
