#include <catch2/catch_amalgamated.hpp>

#include "infodec/info.hpp"
#include "tables.hpp"

using namespace infodec;
using Catch::Matchers::WithinAbs;

namespace {
// Binary entropy of the conflict table's target marginal, H(2/3, 1/3).
constexpr double kH23 = 0.9182958340544896;
}  // namespace

TEST_CASE("entropy of uniform and skewed marginals") {
  JointDistribution xo = tables::load(tables::kXor);
  CHECK_THAT(entropy(xo, {0}), WithinAbs(1.0, 1e-12));
  CHECK_THAT(entropy(xo, {0, 1}), WithinAbs(2.0, 1e-12));
  CHECK_THAT(entropy(xo, {0, 1, 2}), WithinAbs(2.0, 1e-12));
  JointDistribution cf = tables::load(tables::kConflict);
  // The target is a fair bit; given its value, X1 splits 2/3 vs 1/3.
  CHECK_THAT(entropy(cf, {0}), WithinAbs(1.0, 1e-12));
  CHECK_THAT(entropy(cf, cf.all_vars()), WithinAbs(kH23 + 1.0, 1e-12));
}

TEST_CASE("mutual information on the parity triple") {
  JointDistribution d = tables::load(tables::kXor);
  CHECK_THAT(mutual_information(d, {0}, {1}), WithinAbs(0.0, 1e-12));
  CHECK_THAT(mutual_information(d, {0}, {1, 2}), WithinAbs(1.0, 1e-12));
  CHECK_THAT(mutual_information(d, {0, 1}, {2}), WithinAbs(1.0, 1e-12));
  CHECK_THROWS_AS(mutual_information(d, {0, 1}, {1, 2}), argument_error);
  CHECK_THAT(mutual_information_overlapping(d, {0, 1}, {1, 2}), WithinAbs(2.0, 1e-12));
  CHECK_THAT(mutual_information_overlapping(d, {0, 1}, {0, 1}), WithinAbs(2.0, 1e-12));
}

TEST_CASE("conditional mutual information and co-information") {
  JointDistribution d = tables::load(tables::kXor);
  CHECK_THAT(conditional_mutual_information(d, {0}, {1}, {2}), WithinAbs(1.0, 1e-12));
  CHECK_THAT(conditional_mutual_information(d, {0}, {1}, {}), WithinAbs(0.0, 1e-12));
  // Synergy-minus-redundancy convention: for parity this is +1.
  CHECK_THAT(co_information(d, {2}, {0}, {1}), WithinAbs(1.0, 1e-12));

  JointDistribution cf = tables::load(tables::kConflict);
  // S is X2, so conditioning on X2 kills the X1 channel.
  CHECK_THAT(conditional_mutual_information(cf, {0}, {1}, {2}), WithinAbs(0.0, 1e-12));
  CHECK_THAT(co_information(cf, {0}, {1}, {2}),
             WithinAbs(-0.08170416594551044, 1e-12));
}

TEST_CASE("channel informations of the conflict table") {
  JointDistribution cf = tables::load(tables::kConflict);
  CHECK_THAT(mutual_information(cf, {0}, {1}), WithinAbs(0.08170416594551044, 1e-12));
  // X2 copies the target, so both the X2 channel and the joint channel are
  // the full bit.
  CHECK_THAT(mutual_information(cf, {0}, {2}), WithinAbs(1.0, 1e-12));
  CHECK_THAT(mutual_information(cf, {0}, {1, 2}), WithinAbs(1.0, 1e-12));
}

TEST_CASE("kl divergence in bits") {
  CHECK_THAT(kl_bits({0.5, 0.5}, {0.5, 0.5}), WithinAbs(0.0, 1e-12));
  CHECK_THAT(kl_bits({1.0, 0.0}, {0.5, 0.5}), WithinAbs(1.0, 1e-12));
  CHECK(std::isinf(kl_bits({0.5, 0.5}, {1.0, 0.0})));
  CHECK_THROWS_AS(kl_bits({0.5, 0.5}, {1.0}), argument_error);
  JointDistribution a = tables::load(std::string("A\n0 1/2\n1 1/2\n"));
  JointDistribution b = tables::load(std::string("A\n0 3/4\n1 1/4\n"));
  CHECK_THAT(kl_divergence(a, b),
             WithinAbs(0.5 * std::log2(0.5 / 0.75) + 0.5 * std::log2(0.5 / 0.25), 1e-12));
  JointDistribution c = tables::load(std::string("B\n0 1/2\n1 1/2\n"));
  CHECK_THROWS_AS(kl_divergence(a, c), argument_error);
}

TEST_CASE("entropy over scalar weights") {
  CHECK_THAT(entropy_bits({0.5, 0.5}), WithinAbs(1.0, 1e-12));
  CHECK_THAT(entropy_bits({2.0 / 3, 1.0 / 3}), WithinAbs(kH23, 1e-12));
  CHECK_THAT(entropy_bits({1.0, 0.0}), WithinAbs(0.0, 1e-12));
}
