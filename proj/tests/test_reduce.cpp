#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "swaplab/generate.hpp"
#include "swaplab/io.hpp"
#include "swaplab/reduce.hpp"
#include "swaplab/search.hpp"

using namespace swaplab;

namespace {

const SatInstance& single_clause() {
  static const SatInstance inst = parse_wsat2("p wsat2 2 1 std\n1 2 1\n");
  return inst;
}

Rational q(long a, long b = 1) { return Rational(a, b); }

int pt(const ExactInstance& inst, const char* label) { return resolve_point(inst, label); }

std::vector<oracle::Cl> oracle_clauses(const SatInstance& s) {
  std::vector<oracle::Cl> out;
  for (int m = 0; m < s.num_clauses(); ++m) {
    const auto& c = s.clause(m);
    out.push_back({{c.first.var, c.first.positive}, {c.second.var, c.second.positive}, s.weight(m)});
  }
  return out;
}

Rational from_frac(oracle::Frac f) { return Rational(f.num, f.den); }

}  // namespace

TEST_CASE("MUFL construction on one clause") {
  const auto art = reduce_sat_to_mufl(single_clause());
  const auto& t = art.target;
  CHECK(art.constants.literal_weight == 1);
  CHECK(art.constants.opening_cost == 2);
  CHECK(t.facilities().size() == 4);
  CHECK(t.num_points() == 5);
  CHECK(t.dist(pt(t, "x1"), pt(t, "~x1")) == 1);
  CHECK(t.dist(pt(t, "b1"), pt(t, "x1")) == q(4, 3));
  CHECK(t.dist(pt(t, "b1"), pt(t, "~x1")) == q(5, 3));
  CHECK(t.dist(pt(t, "x1"), pt(t, "x2")) == 2);
  CHECK_FALSE(find_triangle_violation(t).has_value());
  CHECK_THROWS_AS(reduce_sat_to_mufl(parse_wsat2("p wsat2 2 1 nae\n1 2 1\n")), InvalidArgument);
}

TEST_CASE("DKM construction on one clause") {
  const auto art = reduce_sat_to_dkm(single_clause(), q(3, 2));
  const auto& t = art.target;
  CHECK(art.constants.epsilon == q(1, 10));
  CHECK(art.constants.k == 2);
  CHECK(art.constants.literal_weight == 1);
  CHECK(t.dist(pt(t, "b1"), pt(t, "x1")) == q(11, 10));
  CHECK(t.dist(pt(t, "b1"), pt(t, "~x1")) == q(115, 100));
  CHECK(t.dist(pt(t, "x1"), pt(t, "x2")) == q(12, 10));
  CHECK(t.dist(pt(t, "x1"), pt(t, "~x1")) == 1);
  CHECK(t.facilities().size() == 5);
  CHECK_THROWS_AS(reduce_sat_to_dkm(single_clause(), q(2)), InvalidArgument);
  CHECK_THROWS_AS(reduce_sat_to_dkm(single_clause(), q(1)), InvalidArgument);
}

TEST_CASE("clause doubling") {
  const auto one = double_clauses(parse_wsat2("p wsat2 2 1 nae\n1 2 5\n"));
  REQUIRE(one.size() == 2);
  CHECK(one.weights == std::vector<std::int64_t>{5, 5});
  CHECK(one.clauses[1].clause.first == Literal{0, false});
  CHECK(one.clauses[1].clause.second == Literal{1, false});
  const auto three = double_clauses(parse_wsat2("p wsat2 3 3 nae\n1 2 1\n2 3 2\n1 3 3\n"));
  CHECK(three.size() == 6);
  CHECK(three.weights == std::vector<std::int64_t>{1, 1, 2, 2, 3, 3});
  CHECK_THROWS_AS(double_clauses(single_clause()), InvalidArgument);
}

TEST_CASE("DFKM construction on one NAE clause") {
  const auto src = parse_wsat2("p wsat2 2 1 nae\n1 2 1\n");
  const auto art = reduce_pnaesat_to_dfkm(src);
  CHECK(art.constants.epsilon == q(1, 72));
  CHECK(art.constants.literal_weight == 32);
  CHECK(art.constants.k == 2);
  CHECK(art.constants.formula_clauses == 2);
  const auto& t = art.target;
  CHECK(t.num_points() == 2 * 2 + 2 * 1);
  // The negated copy sits near the negated literals.
  CHECK(t.dist(pt(t, "b1.2"), pt(t, "~x1")) == 1 + q(1, 72));
  CHECK(t.dist(pt(t, "b1.2"), pt(t, "x1")) == 1 + q(3, 2) * q(1, 72));
  CHECK(t.dist(pt(t, "b1.1"), pt(t, "b1.2")) == 1 + q(2, 72));
  CHECK_THROWS_AS(reduce_pnaesat_to_dfkm(single_clause()), InvalidArgument);
}

TEST_CASE("Psi and lift") {
  const auto art = reduce_sat_to_mufl(single_clause());
  const auto& t = art.target;
  CHECK(map_solution_back(art, Solution({pt(t, "x1"), pt(t, "~x2")})).to_string() == "10");
  CHECK(map_solution_back(art, Solution({pt(t, "~x1"), pt(t, "~x2")})).to_string() == "00");
  const auto dkm = reduce_sat_to_dkm(single_clause());
  CHECK(map_solution_back(dkm, Solution({pt(dkm.target, "x1"), pt(dkm.target, "b1")})).to_string() == "10");
  CHECK(lift_assignment(art, Assignment::parse("10")) == Solution({pt(t, "x1"), pt(t, "~x2")}));

  const auto three = reduce_sat_to_mufl(parse_wsat2("p wsat2 3 1 std\n1 2 1\n"));
  CHECK(lift_assignment(three, Assignment::parse("111")) ==
        Solution({pt(three.target, "x1"), pt(three.target, "x2"), pt(three.target, "x3")}));

  const auto four = reduce_sat_to_dkm(parse_wsat2("p wsat2 4 2 std\n1 -2 1\n3 4 2\n"));
  for (const auto& a : FlipProblem(four.source).enumerate_solutions()) {
    const auto o = lift_assignment(four, a);
    CHECK(is_reasonable(four.target, o));
    CHECK(map_solution_back(four, o) == a);
  }
}

TEST_CASE("closed forms match the independent evaluator") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto src = random_sat_instance(rng, 3, 3, 3, SatMode::Standard);
    const auto mufl = reduce_sat_to_mufl(src);
    const auto dkm = reduce_sat_to_dkm(src);
    const std::int64_t w = mufl.constants.literal_weight;
    const auto gm = oracle::mufl_gadget(3, oracle_clauses(src));
    const auto eps = dkm.constants.epsilon;
    const oracle::Frac eps_f(static_cast<std::int64_t>(numerator(eps)), static_cast<std::int64_t>(denominator(eps)));
    const auto gk = oracle::dkm_gadget(3, oracle_clauses(src), eps_f, oracle::Frac(3, 2));
    for (const auto& a : FlipProblem(src).enumerate_solutions()) {
      std::vector<int> open;
      for (int v = 0; v < 3; ++v) open.push_back(2 * v + (a[static_cast<std::size_t>(v)] ? 0 : 1));
      const auto ref_mufl = from_frac(oracle::facility_cost(gm, w, oracle::Frac(2 * w), open));
      const auto ref_dkm = from_frac(oracle::facility_cost(gk, w, oracle::Frac(0), open));
      CHECK(closed_form_cost(mufl, a) == ref_mufl);
      CHECK(cost(mufl.target, lift_assignment(mufl, a)) == ref_mufl);
      CHECK(closed_form_cost(dkm, a) == ref_dkm);
      CHECK(cost(dkm.target, lift_assignment(dkm, a)) == ref_dkm);
    }
  }
}

TEST_CASE("DFKM closed form agrees with the direct cost") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const auto src = random_sat_instance(rng, 3, 2, 3, SatMode::Nae);
    const auto art = reduce_pnaesat_to_dfkm(src);
    const auto approx = art.target.cast<double>();
    for (const auto& a : FlipProblem(src).enumerate_solutions()) {
      const auto o = lift_assignment(art, a);
      CHECK(closed_form_cost(art, a) == cost(art.target, o));
      const double direct = dfkm_cost(approx, o);
      const double closed = to_double(closed_form_cost(art, a));
      CHECK(std::abs(direct - closed) <= 1e-9 * closed);
    }
  }
}

TEST_CASE("gamma gap") {
  const double gap = gamma_gap(2, 0.1, 1.5);
  CHECK(gap > 0);
  CHECK(gap == doctest::Approx(5.5555555555e-4).epsilon(1e-8));
  const Rational exact = gamma_gap(2, q(1, 10), q(3, 2));
  CHECK(exact == gamma_gap_factored(2, q(1, 10), q(3, 2)));
  const Rational near_one = gamma_gap(2, q(1, 10), 1 + q(1, 1000000000));
  CHECK(near_one > 0);
  CHECK(to_double(near_one) < 1e-15);
  for (int n = 2; n <= 6; ++n) {
    CHECK(gamma_gap(n, q(1, 40), q(7, 4)) == gamma_gap_factored(n, q(1, 40), q(7, 4)));
  }
}

TEST_CASE("constants are reproducible from the serialized artifact") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 9; ++trial) {
    const auto mode = trial % 3 == 2 ? SatMode::Nae : SatMode::Standard;
    const auto src = random_sat_instance(rng, 3, 3, 4, mode);
    const auto kind = mode == SatMode::Nae ? ProblemKind::Dfkm : (trial % 3 ? ProblemKind::Dkm : ProblemKind::Mufl);
    const auto art = reduce(src, kind, q(5, 4));
    const auto back = artifact_from_json(Json::parse(artifact_to_json(art).dump()));
    CHECK(back.constants == art.constants);
    CHECK(back.target.dist() == art.target.dist());
    CHECK(back.source_hash == art.source_hash);
    CHECK(to_wsat2(back.source) == to_wsat2(src));
    CHECK(back.label_map.literal_points == art.label_map.literal_points);
    CHECK(back.label_map.clause_points == art.label_map.clause_points);
    CHECK(derive_constants(kind, 3, 3, src.max_weight(), q(5, 4)) == art.constants);
  }
}

TEST_CASE("constant overflow is detected") {
  CHECK_THROWS_AS(derive_constants(ProblemKind::Dfkm, 100000, 100000, std::int64_t{1} << 40, q(3, 2)), InvalidArgument);
}
