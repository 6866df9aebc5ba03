#pragma once

// Seeded random probability tables for property tests and violation hunts.
//
// All sampling goes through splitmix64 with hand-rolled rejection for
// bounded draws, so a (seed, trial) pair produces the same table on every
// platform and any trial can be replayed in isolation.

#include <cstdint>
#include <vector>

#include "infodec/distribution.hpp"

namespace infodec {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, n) by rejection; n must be positive.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw argument_error("empty sampling range");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }

  /// Uniform draw in [lo, hi] inclusive.
  int range(int lo, int hi) {
    if (hi < lo) throw argument_error("empty sampling range");
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

struct GeneratorConfig {
  int source_count = 2;
  int target_count = 2;
  int min_arity = 2;
  int max_arity = 2;
  int min_support = 3;
  int max_support = 8;
  int max_denominator = 12;  // masses are k/denominator
};

/// Substream for one trial: seed and trial index are hashed together so
/// trials are independent and order-insensitive.
inline SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
  SplitMix64 mixer(seed ^ (0x6a09e667f3bcc909ull + trial * 0x3c6ef372fe94f82bull));
  mixer.next();
  return mixer;
}

/// Sources are named X1..Xm, targets S, Sp, Sq, ...; masses are uniform
/// compositions of a random denominator over a random support.
inline JointDistribution random_distribution(const GeneratorConfig& cfg, std::uint64_t seed,
                                             std::uint64_t trial) {
  if (cfg.source_count < 1 || cfg.target_count < 1)
    throw argument_error("generator needs at least one source and one target");
  SplitMix64 rng = trial_stream(seed, trial);
  std::vector<VariableId> vars;
  for (int i = 0; i < cfg.source_count; ++i)
    vars.push_back({"X" + std::to_string(i + 1), rng.range(cfg.min_arity, cfg.max_arity)});
  static const char* kTargetNames[] = {"S", "Sp", "Sq", "Sr"};
  for (int i = 0; i < cfg.target_count; ++i) {
    std::string name = i < 4 ? kTargetNames[i] : "S" + std::to_string(i);
    vars.push_back({name, rng.range(cfg.min_arity, cfg.max_arity)});
  }
  std::size_t cells = 1;
  for (const auto& v : vars) cells *= static_cast<std::size_t>(v.arity);
  int support = rng.range(cfg.min_support, cfg.max_support);
  if (support > static_cast<int>(cells)) support = static_cast<int>(cells);
  // Partial Fisher-Yates over cell indices for a distinct random support.
  std::vector<std::uint32_t> order(cells);
  for (std::size_t i = 0; i < cells; ++i) order[i] = static_cast<std::uint32_t>(i);
  for (int i = 0; i < support; ++i) {
    std::size_t j = static_cast<std::size_t>(i) +
                    rng.below(cells - static_cast<std::size_t>(i));
    std::swap(order[static_cast<std::size_t>(i)], order[j]);
  }
  int den = rng.range(support, cfg.max_denominator < support ? support : cfg.max_denominator);
  // Composition of `den` into `support` positive parts: distinct cut points.
  std::vector<int> cuts;
  if (support > 1) {
    std::vector<int> pool(static_cast<std::size_t>(den - 1));
    for (int i = 0; i < den - 1; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    for (int i = 0; i < support - 1; ++i) {
      std::size_t j = static_cast<std::size_t>(i) +
                      rng.below(pool.size() - static_cast<std::size_t>(i));
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
      cuts.push_back(pool[static_cast<std::size_t>(i)]);
    }
    std::sort(cuts.begin(), cuts.end());
  }
  cuts.push_back(den);
  std::map<Outcome, Rational> mass;
  int prev = 0;
  for (int i = 0; i < support; ++i) {
    std::uint32_t cell = order[static_cast<std::size_t>(i)];
    Outcome o(vars.size());
    std::uint32_t rest = cell;
    for (std::size_t v = vars.size(); v-- > 0;) {
      o[v] = static_cast<int>(rest % static_cast<std::uint32_t>(vars[v].arity));
      rest /= static_cast<std::uint32_t>(vars[v].arity);
    }
    mass[std::move(o)] = Rational(cuts[static_cast<std::size_t>(i)] - prev, den);
    prev = cuts[static_cast<std::size_t>(i)];
  }
  return JointDistribution(std::move(vars), std::move(mass));
}

}  // namespace infodec
