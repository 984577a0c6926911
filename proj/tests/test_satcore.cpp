#include <random>
#include <sstream>

#include "doctest.h"
#include "swaplab/error.hpp"
#include "swaplab/generate.hpp"
#include "swaplab/sat.hpp"

using namespace swaplab;

namespace {

SatInstance std_inst(const char* text) { return parse_wsat2(text); }

}  // namespace

TEST_CASE("sat_cost counts each satisfied clause once") {
  const auto one = std_inst("p wsat2 2 1 std\n1 2 1\n");
  CHECK(sat_cost(one, Assignment::parse("00")) == 0);
  CHECK(sat_cost(one, Assignment::parse("11")) == 1);
  const auto two = std_inst("p wsat2 2 2 std\n1 2 2\n-1 2 3\n");
  CHECK(sat_cost(two, Assignment::parse("10")) == 2);
}

TEST_CASE("nae_cost counts clauses whose variables differ") {
  const auto one = std_inst("p wsat2 2 1 nae\n1 2 5\n");
  CHECK(nae_cost(one, Assignment::parse("10")) == 5);
  CHECK(nae_cost(one, Assignment::parse("11")) == 0);
  const auto two = std_inst("p wsat2 3 2 nae\n1 2 2\n2 3 4\n");
  CHECK(nae_cost(two, Assignment::parse("011")) == 2);
}

TEST_CASE("costs reject the wrong mode and length") {
  const auto s = std_inst("p wsat2 2 1 std\n1 2 1\n");
  const auto n = std_inst("p wsat2 2 1 nae\n1 2 1\n");
  CHECK_THROWS_AS(nae_cost(s, Assignment::parse("10")), InvalidArgument);
  CHECK_THROWS_AS(sat_cost(n, Assignment::parse("10")), InvalidArgument);
  CHECK_THROWS_AS(sat_cost(s, Assignment::parse("101")), InvalidArgument);
}

TEST_CASE("clause_sets partitions clauses and indexes literals") {
  const auto one = std_inst("p wsat2 2 1 std\n1 2 1\n");
  auto sets = clause_sets(one, Assignment::parse("00"));
  CHECK(sets.satisfied.empty());
  CHECK(sets.unsatisfied == std::vector<int>{0});

  const auto two = std_inst("p wsat2 2 2 std\n1 2 2\n-1 2 3\n");
  CHECK(two.clauses_containing(Literal{0, true}) == std::vector<int>{0});
  CHECK(two.clauses_containing(Literal{0, false}) == std::vector<int>{1});
  sets = clause_sets(two, Assignment::parse("10"));
  CHECK(sets.satisfied == std::vector<int>{0});
  CHECK(sets.unsatisfied == std::vector<int>{1});
}

TEST_CASE("flip_neighbors are ordered by flipped variable") {
  CHECK(flip_neighbors(Assignment::parse("00")) ==
        std::vector<Assignment>{Assignment::parse("10"), Assignment::parse("01")});
  CHECK(flip_neighbors(Assignment::parse("111")) ==
        std::vector<Assignment>{Assignment::parse("011"), Assignment::parse("101"), Assignment::parse("110")});
  CHECK(flip_neighbors(Assignment::parse("0")) == std::vector<Assignment>{Assignment::parse("1")});
}

TEST_CASE("instance invariants are enforced") {
  CHECK_THROWS_AS(SatInstance(2, {{Literal{0, true}, Literal{2, true}}}, {1}), InvalidArgument);
  CHECK_THROWS_AS(SatInstance(2, {{Literal{0, true}, Literal{1, true}}}, {0}), InvalidArgument);
  CHECK_THROWS_AS(SatInstance(2, {{Literal{0, false}, Literal{1, true}}}, {1}, SatMode::Nae), InvalidArgument);
  CHECK_THROWS_AS(SatInstance(2, {{Literal{0, true}, Literal{1, true}}}, {1, 2}), InvalidArgument);
  // Duplicate literals are allowed and behave like a unit clause.
  const SatInstance dup(1, {{Literal{0, true}, Literal{0, true}}}, {4});
  CHECK(sat_cost(dup, Assignment::parse("1")) == 4);
  CHECK(sat_cost(dup, Assignment::parse("0")) == 0);
}

TEST_CASE("wsat2 parsing reports line numbers") {
  try {
    parse_wsat2("c header comment\np wsat2 2 2 std\n1 2 1\n1 x 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse_wsat2("p wsat2 2 2 std\n1 2 1\n"), ParseError);
  CHECK_THROWS_AS(parse_wsat2("1 2 1\n"), ParseError);
  CHECK_THROWS_AS(parse_wsat2("p wsat2 2 1 std\n1 3 1\n"), ParseError);
  CHECK_THROWS_AS(parse_wsat2("p wsat2 2 1 nae\n-1 2 1\n"), ParseError);
  CHECK_THROWS_AS(parse_wsat2("p wsat2 2 1 std\n1 2 0\n"), ParseError);
}

TEST_CASE("wsat2 round trip") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto inst = random_sat_instance(rng, 4, 5, 7, i % 2 ? SatMode::Nae : SatMode::Standard);
    const auto back = parse_wsat2(to_wsat2(inst));
    CHECK(to_wsat2(back) == to_wsat2(inst));
    CHECK(back.mode() == inst.mode());
    CHECK(back.weights() == inst.weights());
  }
}

TEST_CASE("assignment text format") {
  CHECK(Assignment::parse("0110").to_string() == "0110");
  CHECK_THROWS_AS(Assignment::parse("01a"), ParseError);
  CHECK(Assignment::parse("0110").complement().to_string() == "1001");
  CHECK(Assignment::parse("0110").hamming_distance(Assignment::parse("1111")) == 2);
}

TEST_CASE("property: cost bounds, NAE symmetry, flip involution") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 4;
    const auto s = random_sat_instance(rng, n, 6, 5, SatMode::Standard);
    const auto nae = random_sat_instance(rng, n, 6, 5, SatMode::Nae);
    std::bernoulli_distribution coin(0.5);
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
    for (auto& b : bits) b = coin(rng) ? 1 : 0;
    const Assignment t(bits);

    const auto cost = sat_cost(s, t);
    CHECK(cost >= 0);
    CHECK(cost <= s.total_weight());
    CHECK(cost == weight_of(s, clause_sets(s, t).satisfied));
    CHECK(nae_cost(nae, t) == nae_cost(nae, t.complement()));
    for (const auto& u : flip_neighbors(t)) {
      CHECK(u.hamming_distance(t) == 1);
      const auto back = flip_neighbors(u);
      CHECK(std::find(back.begin(), back.end(), t) != back.end());
    }
  }
}

TEST_CASE("random generator uses two distinct variables per clause") {
  std::mt19937_64 rng(5);
  const auto inst = random_sat_instance(rng, 2, 50, 3, SatMode::Standard);
  for (const auto& c : inst.clauses()) CHECK(c.first.var != c.second.var);
  for (auto w : inst.weights()) CHECK((w >= 1 && w <= 3));
  CHECK_THROWS_AS(random_sat_instance(rng, 1, 1, 1, SatMode::Standard), InvalidArgument);
}
