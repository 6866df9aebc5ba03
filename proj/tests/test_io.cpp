#include <catch2/catch_amalgamated.hpp>

#include "infodec/io.hpp"
#include "tables.hpp"

using namespace infodec;

TEST_CASE("reading a fraction table") {
  JointDistribution d = read_distribution(std::string(tables::kLeftMono));
  CHECK(d.var_count() == 4);
  CHECK(d.variables()[0].name == "X1");
  CHECK(d.variables()[2].arity == 2);
  CHECK(d.support_size() == 5);
  CHECK(d.exact_prob({1, 0, 1, 1}) == Rational(1, 3));
  CHECK(d.mass_style() == JointDistribution::MassStyle::Fraction);
}

TEST_CASE("comments, blank lines and mixed spacing are ignored") {
  JointDistribution d = read_distribution(std::string("# top\n\n A B \n0 0 1/2 # half\n\n0 1  1/2\n"));
  CHECK(d.support_size() == 2);
  CHECK(d.exact_prob({0, 1}) == Rational(1, 2));
}

TEST_CASE("decimal masses parse exactly and set the rendering style") {
  JointDistribution d = read_distribution(std::string("A\n0 0.25\n1 0.75\n"));
  CHECK(d.exact_prob({0}) == Rational(1, 4));
  CHECK(d.mass_style() == JointDistribution::MassStyle::Decimal);
  CHECK(write_distribution(d) == "A\n0 0.250000\n1 0.750000\n");
}

TEST_CASE("write/read round trip is exact for fraction tables") {
  JointDistribution d = read_distribution(std::string(tables::kConflict));
  JointDistribution back = read_distribution(write_distribution(d));
  CHECK(back == d);
  CHECK(write_distribution(d) ==
        "S X1 X2\n0 0 0 1/3\n0 1 0 1/6\n1 0 1 1/6\n1 1 1 1/3\n");
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      read_distribution(text);
    } catch (const parse_error& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("1 2\n") == 1);                       // header starts with a digit
  CHECK(line_of("A B\n0 0\n") == 2);                  // missing mass
  CHECK(line_of("A\n0 1/2\nx 1/2\n") == 3);           // non-integer outcome
  CHECK(line_of("A\n0 1/2\n0 1/2\n") == 3);           // duplicate row
  CHECK(line_of("A\n0 huh\n") == 2);                  // unparsable mass
  CHECK(line_of("A\n999 1\n") == 2);                  // implausible outcome value
  CHECK(line_of("A\n0 -1/2\n1 3/2\n") == 2);          // negative mass
  CHECK(line_of("") == 0);                            // empty: still a parse error
  CHECK_THROWS_AS(read_distribution(std::string("")), parse_error);
  CHECK_THROWS_AS(read_distribution(std::string("A B\n")), parse_error);
}

TEST_CASE("mass totals are enforced at parse time") {
  CHECK_THROWS_AS(read_distribution(std::string("A\n0 1/2\n")), data_error);
  CHECK_THROWS_AS(read_distribution(std::string("A\n0 2/3\n1 2/3\n")), data_error);
}
