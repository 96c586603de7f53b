#include <doctest.h>

#include <random>

#include "jets/error.hpp"
#include "jets/groebner.hpp"
#include "jets/parser.hpp"

using namespace jets;

namespace {

const auto QQ = CoefficientRing::rationals();

Polynomial P(const std::string& text, const CoefficientRing& ring = QQ) {
  return parse_poly(text, {"x", "y", "z"}, ring);
}

std::vector<Monomial> monomials_of_degree(const std::vector<JetVariable>& vars, std::uint32_t d) {
  std::vector<Monomial> out;
  std::vector<std::uint32_t> e(vars.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i + 1 == vars.size()) {
      e[i] = left;
      std::vector<Monomial::Factor> f;
      for (std::size_t k = 0; k < vars.size(); ++k) f.emplace_back(vars[k], e[k]);
      out.emplace_back(std::move(f));
      return;
    }
    for (std::uint32_t a = 0; a <= left; ++a) {
      e[i] = a;
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, d);
  return out;
}

/// Rank over F_p of integer row vectors.
std::size_t rank_mod(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] % p == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    std::uint64_t inv = 1;
    for (std::uint64_t k = 0; k < p - 2; ++k) inv = inv * rows[rank][c] % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] % p == 0) continue;
      const std::uint64_t f = rows[r][c] * inv % p;
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] = (rows[r][k] + p * p - f * rows[rank][k] % p) % p;
    }
    ++rank;
  }
  return rank;
}

/// For homogeneous generators and homogeneous f of degree d over F_p:
/// f is in the ideal iff it lies in the span of {monomial * g : degree d}.
bool linear_algebra_membership(const Polynomial& f, const std::vector<Polynomial>& gens,
                               const std::vector<JetVariable>& vars, std::uint32_t d, std::uint64_t p) {
  const auto basis = monomials_of_degree(vars, d);
  std::map<Monomial, std::size_t> column;
  for (std::size_t k = 0; k < basis.size(); ++k) column[basis[k]] = k;
  auto row_of = [&](const Polynomial& g) {
    std::vector<std::uint64_t> row(basis.size(), 0);
    for (const auto& [m, c] : g.terms()) row.at(column.at(m)) = c.get_num().get_ui() % p;
    return row;
  };
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    const auto gd = g.terms().begin()->first.degree();
    if (gd > d) continue;
    for (const auto& m : monomials_of_degree(vars, static_cast<std::uint32_t>(d - gd)))
      rows.push_back(row_of(g * Polynomial::term(g.ring(), m, 1)));
  }
  const std::size_t without = rank_mod(rows, p);
  rows.push_back(row_of(f));
  return rank_mod(rows, p) == without;
}

Polynomial random_homogeneous(std::mt19937_64& rng, const CoefficientRing& ring, const std::vector<JetVariable>& vars,
                              std::uint32_t d, std::size_t terms) {
  const auto mons = monomials_of_degree(vars, d);
  std::uniform_int_distribution<std::size_t> pick(0, mons.size() - 1);
  std::uniform_int_distribution<long> coeff(1, static_cast<long>(ring.characteristic()) - 1);
  Polynomial f(ring);
  for (std::size_t t = 0; t < terms; ++t) f += Polynomial::term(ring, mons[pick(rng)], ring.from_int(coeff(rng)));
  return f;
}

}  // namespace

TEST_CASE("buchberger examples") {
  const std::vector<Polynomial> single = {P("x")};
  auto gb = buchberger(single, MonomialOrder::grevlex({var("x")}));
  REQUIRE(gb.basis().size() == 1);
  CHECK(gb.basis()[0] == P("x"));

  const std::vector<Polynomial> mono = {P("x^2"), P("x*y")};
  auto lex = buchberger(mono, MonomialOrder::lex({var("x"), var("y")}));
  REQUIRE(lex.basis().size() == 2);
  CHECK(lex.basis()[0] == P("x^2"));
  CHECK(lex.basis()[1] == P("x*y"));

  const VariableScope scope = {"x", "y"};
  const std::vector<Polynomial> cusp = {parse_poly("y^2 - x^3", scope, QQ),
                                        parse_poly("2*y*d1y - 3*x^2*d1x", scope, QQ)};
  auto gb2 = buchberger(cusp, MonomialOrder::grevlex_for(cusp));
  CHECK(satisfies_buchberger_criterion(gb2));
  for (const auto& g : cusp) CHECK(normal_form(g, gb2).is_zero());
  for (const auto& g : gb2.basis()) CHECK(g.coefficient(leading_monomial(g, gb2.order())) == 1);
}

TEST_CASE("buchberger preconditions") {
  const std::vector<Polynomial> zz = {Polynomial::variable(CoefficientRing::integers(), var("x"))};
  CHECK_THROWS_AS(buchberger(zz, MonomialOrder::grevlex({var("x")})), DomainError);
  const std::vector<Polynomial> outside = {P("z")};
  CHECK_THROWS_AS(buchberger(outside, MonomialOrder::grevlex({var("x")})), DomainError);

  // A tiny pair bound trips on an ideal that needs several S-pairs.
  const std::vector<Polynomial> gens = {P("x^2 - y"), P("x*y - z"), P("y^2 - x*z")};
  CHECK_THROWS_AS(buchberger(gens, MonomialOrder::grevlex_for(gens), BuchbergerOptions{1}), BudgetExceeded);
}

TEST_CASE("normal forms") {
  const VariableScope scope = {"x", "y"};
  const std::vector<Polynomial> fiber = {parse_poly("(d1y)^2", scope, QQ)};
  const auto gb = buchberger(fiber, MonomialOrder::grevlex_for(fiber));
  const auto d1y = parse_poly("d1y", scope, QQ);
  CHECK(normal_form(d1y, gb) == d1y);
  CHECK(normal_form(parse_poly("(d1y)^3 + 1", scope, QQ), gb) == P("1"));

  const std::vector<Polynomial> gens = {P("x^2 - y"), P("x*y - 1")};
  const auto gb2 = buchberger(gens, MonomialOrder::grevlex_for(gens));
  CHECK(normal_form(P("1"), gb2) == P("1"));
  CHECK(normal_form(gens[0] * P("x + 3*y"), gb2).is_zero());
}

TEST_CASE("unit ideal") {
  const std::vector<Polynomial> gens = {P("x"), P("x - 1")};
  const auto gb = buchberger(gens, MonomialOrder::grevlex_for(gens));
  CHECK(gb.is_unit_ideal());
  CHECK(gb.basis().size() == 1);
}

TEST_CASE("membership examples") {
  const VariableScope scope = {"x", "y"};
  auto Q = [&](const char* s) { return parse_poly(s, scope, QQ); };
  const std::vector<Polynomial> fiber = {Q("(d1y)^2")};
  CHECK(ideal_membership(Q("(d1y)^2"), fiber));
  CHECK_FALSE(ideal_membership(Q("d1y"), fiber));
  const std::vector<Polynomial> x2 = {P("x^2")};
  CHECK_FALSE(ideal_membership(P("x"), x2));
  const std::vector<Polynomial> j2 = {Q("y^2 - x^3"), Q("2*y*d1y - 3*x^2*d1x"),
                                      Q("(d1y)^2 + 2*y*d2y - 3*x*(d1x)^2 - 3*x^2*d2x")};
  CHECK(ideal_membership(Q("2*y*d1y - 3*x^2*d1x"), j2));
  CHECK(ideal_membership(Q("0"), x2));
}

TEST_CASE("ideal equality examples") {
  const VariableScope scope = {"x", "y"};
  auto Q = [&](const char* s) { return parse_poly(s, scope, QQ); };
  const std::vector<Polynomial> xy = {P("x"), P("y")}, yx = {P("y"), P("x")};
  CHECK(ideal_equal(xy, yx));
  const std::vector<Polynomial> x = {P("x")}, x2 = {P("x^2")};
  CHECK_FALSE(ideal_equal(x, x2));
  const std::vector<Polynomial> a = {Q("d1x")}, b = {Q("d1x"), Q("x*d1x")};
  CHECK(ideal_equal(a, b));
  const std::vector<Polynomial> empty;
  const std::vector<Polynomial> zero = {P("0")};
  CHECK(ideal_equal(empty, zero));
}

TEST_CASE("power ideals") {
  const std::vector<Polynomial> x = {P("x")}, xy = {P("x"), P("y")};
  CHECK(power_ideal(x, 2) == std::vector<Polynomial>{P("x^2")});
  const auto sq = power_ideal(xy, 2);
  CHECK(sq.size() == 3);
  CHECK(std::find(sq.begin(), sq.end(), P("x*y")) != sq.end());
  CHECK(power_ideal(xy, 3).size() == 4);
  CHECK(power_ideal(xy, 0) == std::vector<Polynomial>{P("1")});
}

TEST_CASE("monomial orders") {
  const auto grevlex = MonomialOrder::grevlex({var("y"), var("x")});
  CHECK(grevlex.variables.front() == var("x"));
  const auto xy = Monomial({{var("x"), 1}, {var("y"), 1}});
  const auto x2 = Monomial::of(var("x"), 2);
  const auto y3 = Monomial::of(var("y"), 3);
  CHECK(grevlex.greater(x2, xy));
  CHECK(grevlex.greater(y3, x2));
  const auto lex = MonomialOrder::lex({var("x"), var("y")});
  CHECK(lex.greater(x2, y3));
  CHECK(lex.greater(xy, Monomial::of(var("y"), 5)));
}

TEST_CASE("normal form is idempotent and linear") {
  std::mt19937_64 rng(41);
  const auto f5 = CoefficientRing::prime_field(5);
  const std::vector<JetVariable> vars = {var("x"), var("y"), var("z")};
  for (int n = 0; n < 30; ++n) {
    std::vector<Polynomial> gens;
    for (int g = 0; g < 2; ++g) gens.push_back(random_homogeneous(rng, f5, vars, 2, 2));
    const auto gb = buchberger(gens, MonomialOrder::grevlex(vars));
    REQUIRE(satisfies_buchberger_criterion(gb));
    const auto a = random_homogeneous(rng, f5, vars, 3, 4);
    const auto b = random_homogeneous(rng, f5, vars, 3, 4);
    REQUIRE(normal_form(normal_form(a, gb), gb) == normal_form(a, gb));
    REQUIRE(normal_form(a + b.scaled(3), gb) == normal_form(a, gb) + normal_form(b, gb).scaled(3));
    REQUIRE(ideal_membership(a - normal_form(a, gb), gens));
  }
}

TEST_CASE("membership agrees with linear algebra over finite fields") {
  std::mt19937_64 rng(2718);
  const std::vector<JetVariable> vars = {var("x"), var("y"), var("z")};
  int cases = 0, members = 0;
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const auto ring = CoefficientRing::prime_field(p);
    for (int n = 0; n < 25; ++n) {
      std::vector<Polynomial> gens;
      std::uniform_int_distribution<int> count(1, 3), deg(1, 2);
      for (int g = count(rng); g > 0; --g) gens.push_back(random_homogeneous(rng, ring, vars, deg(rng), 3));
      const std::uint32_t d = 3;
      Polynomial f = random_homogeneous(rng, ring, vars, d, 3);
      if (n % 2 == 0) {
        // Force a member half of the time.
        f = Polynomial(ring);
        for (const auto& g : gens) {
          const auto gd = static_cast<std::uint32_t>(g.is_zero() ? 0 : g.terms().begin()->first.degree());
          if (g.is_zero()) continue;
          f += g * random_homogeneous(rng, ring, vars, d - gd, 2);
        }
      }
      const bool expected = linear_algebra_membership(f, gens, vars, d, p);
      REQUIRE(ideal_membership(f, gens, nullptr) == expected);
      members += expected ? 1 : 0;
      ++cases;
    }
  }
  CHECK(cases >= 50);
  CHECK(members > 0);
  CHECK(members < cases);
}
