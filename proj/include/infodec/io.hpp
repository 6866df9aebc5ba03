#pragma once

// Text format for distribution tables.
//
//   # optional comments anywhere
//   X1 X2 S          <- header: variable names
//   0 0 0 1/6        <- one row per outcome: integer values, then the mass
//   0 1 1 0.25       <- masses are fractions or decimals (kept exact either way)
//
// Variable arity is the largest value seen plus one.  Rows must sum to 1
// within 1e-9.  Writing round-trips: fraction-style input comes back as
// fractions, decimal-style input as 6-place decimals.

#include <cctype>
#include <iomanip>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "infodec/distribution.hpp"

namespace infodec {

inline JointDistribution read_distribution(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> names;
  std::map<Outcome, Rational> mass;
  std::vector<int> max_seen;
  bool saw_decimal = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::vector<std::string> tokens;
    for (std::string tok; row >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (names.empty()) {
      for (const auto& t : tokens) {
        if (std::isdigit(static_cast<unsigned char>(t[0])))
          throw parse_error(lineno, "header must name variables, got '" + t + "'");
        names.push_back(t);
      }
      max_seen.assign(names.size(), 0);
      continue;
    }
    if (tokens.size() != names.size() + 1)
      throw parse_error(lineno, "expected " + std::to_string(names.size()) +
                                    " outcome values and a mass");
    Outcome o;
    for (std::size_t i = 0; i < names.size(); ++i) {
      const std::string& t = tokens[i];
      for (char c : t)
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw parse_error(lineno, "outcome value '" + t + "' is not a nonnegative integer");
      long v = std::stol(t);
      if (v > 255) throw parse_error(lineno, "outcome value " + t + " too large");
      o.push_back(static_cast<int>(v));
      max_seen[i] = std::max(max_seen[i], static_cast<int>(v));
    }
    Rational p;
    try {
      p = Rational::parse(tokens.back());
    } catch (const std::exception& e) {
      throw parse_error(lineno, std::string("bad mass: ") + e.what());
    }
    if (p.negative()) throw parse_error(lineno, "negative mass " + tokens.back());
    auto [it, fresh] = mass.emplace(std::move(o), p);
    if (!fresh) throw parse_error(lineno, "duplicate outcome row");
    // Any decimal mass flips the whole table to decimal rendering.
    if (tokens.back().find('/') == std::string::npos) saw_decimal = true;
  }
  if (names.empty()) throw parse_error(lineno, "missing header line");
  if (mass.empty()) throw parse_error(lineno, "no outcome rows");
  std::vector<VariableId> vars;
  for (std::size_t i = 0; i < names.size(); ++i)
    vars.push_back({names[i], max_seen[i] + 1});
  return JointDistribution(std::move(vars), std::move(mass),
                           saw_decimal ? JointDistribution::MassStyle::Decimal
                                       : JointDistribution::MassStyle::Fraction);
}

inline JointDistribution read_distribution(const std::string& text) {
  std::istringstream in(text);
  return read_distribution(in);
}

inline std::string write_distribution(const JointDistribution& d) {
  std::ostringstream out;
  for (std::size_t i = 0; i < d.variables().size(); ++i)
    out << (i ? " " : "") << d.variables()[i].name;
  out << "\n";
  bool decimal = d.mass_style() == JointDistribution::MassStyle::Decimal;
  for (const auto& [o, p] : d.mass()) {
    for (int v : o) out << v << " ";
    if (decimal)
      out << std::fixed << std::setprecision(6) << p.value();
    else
      out << p.str();
    out << "\n";
  }
  return out.str();
}

}  // namespace infodec
