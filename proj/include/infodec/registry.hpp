#pragma once

// Name-keyed registry of the redundancy measures the tools expose.

#include <vector>

#include "infodec/geometry.hpp"
#include "infodec/measures.hpp"

namespace infodec {

inline const std::vector<RedundancyMeasure>& measure_registry() {
  static const std::vector<RedundancyMeasure> measures = {
      {"imin",
       [](const JointDistribution& d, const VarSet& t, const std::vector<VarSet>& b) {
         return i_min(d, t, b);
       },
       4},
      {"ii",
       [](const JointDistribution& d, const VarSet& t, const std::vector<VarSet>& b) {
         return i_i(d, t, b);
       },
       4},
      // The geometric scores decompose pairs; a full lattice over three or
      // more sources is out of their scope.
      {"si_kl",
       [](const JointDistribution& d, const VarSet& t, const std::vector<VarSet>& b) {
         return si_kl(d, t, b);
       },
       2},
      {"si_lr",
       [](const JointDistribution& d, const VarSet& t, const std::vector<VarSet>& b) {
         return si_lr(d, t, b);
       },
       2},
  };
  return measures;
}

inline const RedundancyMeasure& find_measure(const std::string& name) {
  for (const auto& m : measure_registry())
    if (m.name == name) return m;
  throw argument_error("unknown measure '" + name + "' (have: imin, ii, si_kl, si_lr)");
}

}  // namespace infodec
