#include <doctest.h>

#include <random>

#include "jets/error.hpp"
#include "jets/jet_presentation.hpp"
#include "jets/random.hpp"

using namespace jets;

namespace {

const auto QQ = CoefficientRing::rationals();

Presentation cusp(const CoefficientRing& ring = QQ) { return make_presentation(ring, {"x", "y"}, {"y^2 - x^3"}); }
Presentation line(const std::string& name = "x", const CoefficientRing& ring = QQ) {
  return make_presentation(ring, {name}, {});
}

std::vector<std::string> relation_texts(const Presentation& p) {
  std::vector<std::string> out;
  for (const auto& r : p.relations) out.push_back(r.to_string());
  return out;
}

/// Tower C over B = ring[b_vars]: C's generators are c_vars, B's are constants.
Presentation tower(const std::vector<std::string>& b_vars, const std::vector<std::string>& b_rels,
                   const std::vector<std::string>& c_vars, const std::vector<std::string>& c_rels) {
  auto inner = std::make_shared<Presentation>(make_presentation(QQ, b_vars, b_rels));
  Presentation outer = make_presentation(QQ, c_vars, c_rels, b_vars);
  outer.tower = inner;
  outer.validate();
  return outer;
}

}  // namespace

TEST_CASE("jets of the cuspidal cubic") {
  const auto j1 = jet_presentation(cusp(), 1);
  CHECK(j1.jet_order == 1);
  CHECK(relation_texts(j1) == std::vector<std::string>{"-x^3 + y^2", "-3*x^2*d1x + 2*y*d1y"});
  const auto j2 = jet_presentation(cusp(), 2);
  REQUIRE(j2.relations.size() == 3);
  CHECK(j2.relations[2] == j2.parse("(d1y)^2 + 2*y*d2y - 3*x*(d1x)^2 - 3*x^2*d2x"));
  CHECK(j2.generators == std::vector<JetVariable>{var("x"), var("y"), var("x", 1), var("y", 1), var("x", 2),
                                                  var("y", 2)});
  for (std::size_t k = 0; k < j2.relations.size(); ++k) {
    const auto info = weighted_degree_info(j2.relations[k]);
    CHECK(info.is_homogeneous);
    CHECK(info.weight == k);
  }
}

TEST_CASE("jets of free algebras and m = 0") {
  const auto free = make_presentation(QQ, {"x", "y"}, {});
  const auto j3 = jet_presentation(free, 3);
  CHECK(j3.generators.size() == 8);
  CHECK(j3.relations.empty());
  const auto j0 = jet_presentation(cusp(), 0);
  CHECK(j0.generators == cusp().generators);
  CHECK(j0.relations == cusp().relations);
  CHECK(j0.jet_order == 0);
}

TEST_CASE("relative jets") {
  const auto affine_line = tower({"x"}, {}, {"u"}, {});
  const auto rel = relative_jet_presentation(affine_line, 2);
  CHECK(rel.generators == std::vector<JetVariable>{var("u"), var("u", 1), var("u", 2)});
  CHECK(rel.relations.empty());

  const auto trivial = tower({"x"}, {}, {}, {});
  const auto rel0 = relative_jet_presentation(trivial, 2);
  CHECK(rel0.generators.empty());
  CHECK(rel0.relations.empty());

  const auto cusp_over_line = tower({"x"}, {}, {"y"}, {"y^2 - x^3"});
  const auto rel1 = relative_jet_presentation(cusp_over_line, 1);
  CHECK(relation_texts(rel1) == std::vector<std::string>{"-x^3 + y^2", "2*y*d1y"});

  auto clash = tower({"x"}, {}, {"y"}, {});
  auto inner = std::make_shared<Presentation>(make_presentation(QQ, {"y"}, {}));
  clash.tower = inner;
  CHECK_THROWS_AS(relative_jet_presentation(clash, 1), DomainError);
}

TEST_CASE("truncation maps") {
  const auto c = cusp();
  CHECK(equal_on_generators(truncation_map(c, 2, 2), identity_map(jet_presentation(c, 2))));
  const auto f01 = truncation_map(c, 0, 1);
  CHECK(f01.images.size() == 2);
  CHECK(f01.images.at(var("x")) == Polynomial::variable(QQ, var("x")));
  const auto f12 = truncation_map(c, 1, 2);
  CHECK_FALSE(first_ill_defined_relation(f12).has_value());
  CHECK_THROWS_AS(truncation_map(c, 2, 1), DomainError);

  for (std::uint32_t i = 0; i <= 4; ++i)
    for (std::uint32_t j = i; j <= 4; ++j)
      for (std::uint32_t k = j; k <= 4; ++k)
        REQUIRE(equal_on_generators(truncation_map(c, i, k), compose(truncation_map(c, j, k), truncation_map(c, i, j))));
}

TEST_CASE("zero section") {
  const auto c = cusp();
  const auto s2 = zero_section_map(c, 2);
  const auto j2 = jet_presentation(c, 2);
  CHECK(s2.apply(j2.relations[1]).is_zero());
  CHECK(s2.apply(j2.relations[0]) == c.relations[0]);
  CHECK(s2.apply(j2.relations[2]).is_zero());
  CHECK_FALSE(first_ill_defined_relation(s2).has_value());
  CHECK(equal_on_generators(compose(s2, truncation_map(c, 0, 2)), identity_map(c)));
}

TEST_CASE("dilation") {
  const auto c = cusp();
  const auto j2 = jet_presentation(c, 2);
  CHECK(equal_on_generators(dilation_map(c, 2, std::nullopt, 1), identity_map(j2)));
  const auto zero = dilation_map(c, 2, std::nullopt, 0);
  CHECK(zero.images.at(var("x", 1)).is_zero());
  CHECK(zero.images.at(var("y", 2)).is_zero());
  CHECK(zero.images.at(var("y")) == Polynomial::variable(QQ, var("y")));
  CHECK(equal_on_generators(zero, compose(truncation_map(c, 0, 2), zero_section_map(c, 2))));

  const auto formal = dilation_map(c, 2, std::string("z"), 1);
  CHECK(formal.target.constants == std::vector<std::string>{"z"});
  const auto z = Polynomial::variable(QQ, var("z"));
  CHECK(formal.apply(j2.relations[2]) == z.pow(2) * j2.relations[2]);
  CHECK(formal.apply(j2.relations[1]) == z * j2.relations[1]);

  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      REQUIRE(equal_on_generators(compose(dilation_map(c, 2, std::nullopt, a), dilation_map(c, 2, std::nullopt, b)),
                                  dilation_map(c, 2, std::nullopt, a * b)));

  // Compatibility with truncation.
  for (long a = 0; a <= 3; ++a)
    REQUIRE(equal_on_generators(compose(dilation_map(c, 3, std::nullopt, a), truncation_map(c, 1, 3)),
                                compose(truncation_map(c, 1, 3), dilation_map(c, 1, std::nullopt, a))));
  CHECK(equal_on_generators(dilation_map(c, 0, std::nullopt, 5), identity_map(c)));
}

TEST_CASE("induced maps") {
  const auto l = line();
  CHECK(equal_on_generators(induced_map(identity_map(l), 3), identity_map(jet_presentation(l, 3))));
  for (int e = 2; e <= 4; ++e) {
    const auto phi = make_map(l, l, {{"x", "x^" + std::to_string(e)}});
    const auto j = induced_map(phi, 1);
    CHECK(j.images.at(var("x", 1)) == j.target.parse(std::to_string(e) + "*x^" + std::to_string(e - 1) + "*d1x"));
  }

  const auto normalization = make_map(cusp(), line("u"), {{"x", "u^2"}, {"y", "u^3"}});
  const auto jn = induced_map(normalization, 1);
  CHECK(jn.images.at(var("x", 1)) == jn.target.parse("2*u*d1u"));
  CHECK(jn.images.at(var("y", 1)) == jn.target.parse("3*u^2*d1u"));
}

TEST_CASE("ill-defined maps are rejected") {
  const auto dual = make_presentation(QQ, {"x"}, {"x^2"});
  CHECK_THROWS_AS(make_map(dual, dual, {{"x", "x + 1"}}), DomainError);
  CHECK_NOTHROW(make_map(dual, dual, {{"x", "3*x"}}));
  CHECK_THROWS_AS(make_map(line(), cusp(), {{"x", "z"}}), ParseError);
  const auto zz_dual = make_presentation(CoefficientRing::integers(), {"x"}, {"2*x"});
  CHECK_NOTHROW(make_map(zz_dual, zz_dual, {{"x", "x^2"}}));
}

TEST_CASE("functoriality on random composable maps") {
  std::mt19937_64 rng(8);
  const auto plane = make_presentation(QQ, {"x", "y"}, {});
  const auto l = line("u");
  const std::vector<JetVariable> pv = {var("x"), var("y")}, lv = {var("u")};
  for (int n = 0; n < 10; ++n) {
    std::map<std::string, std::string> phi_images = {{"x", random_polynomial(rng, QQ, lv, 2, 2).to_string()},
                                                     {"y", random_polynomial(rng, QQ, lv, 2, 2).to_string()}};
    std::map<std::string, std::string> psi_images = {{"u", random_polynomial(rng, QQ, pv, 2, 3).to_string()}};
    const auto phi = make_map(plane, l, phi_images);
    const auto psi = make_map(l, plane, psi_images);
    for (std::uint32_t m = 1; m <= 2; ++m) {
      REQUIRE(equal_on_generators(induced_map(compose(psi, phi), m), compose(induced_map(psi, m), induced_map(phi, m))));
      REQUIRE(equal_on_generators(induced_map(compose(phi, psi), m), compose(induced_map(phi, m), induced_map(psi, m))));
    }
  }
  CHECK_THROWS_AS(compose(make_map(plane, l, {{"x", "u"}, {"y", "u"}}), make_map(plane, l, {{"x", "u"}, {"y", "u"}})),
                  DomainError);
}

TEST_CASE("products") {
  const auto r = product_presentation(line("x"), line("y"), 2);
  CHECK(r.product.generators == std::vector<JetVariable>{var("x"), var("y")});
  CHECK(r.jet_of_product_equals_product_of_jets);
  CHECK(r.renamed.empty());

  const auto r2 = product_presentation(cusp(), line("t"), 2);
  CHECK(r2.jet_of_product_equals_product_of_jets);
  CHECK(jet_presentation(r2.product, 2).relations == jet_presentation(cusp(), 2).relations);

  const auto r3 = product_presentation(cusp(), cusp(), 1);
  CHECK(r3.jet_of_product_equals_product_of_jets);
  CHECK(r3.renamed.at("x") == "x_2");
  CHECK(r3.product.relations.size() == 2);
}

TEST_CASE("localization") {
  const auto l = line();
  const auto loc = localize(l, l.parse("x"));
  CHECK(loc.generators == std::vector<JetVariable>{var("x"), var("u")});
  CHECK(loc.relations == std::vector<Polynomial>{loc.parse("x*u - 1")});
  const auto j1 = jet_presentation(loc, 1);
  CHECK(j1.relations[1] == j1.parse("x*d1u + u*d1x"));
  const auto trivial = localize(l, l.parse("1"));
  CHECK(trivial.relations[0] == trivial.parse("u - 1"));
  CHECK_THROWS_AS(localize(l, l.parse("x"), "x"), DomainError);
  CHECK_THROWS_AS(localize(l, l.parse("x"), "d1u"), DomainError);
}

TEST_CASE("fibers of the cusp") {
  const std::map<std::string, Coeff> origin = {{"x", 0}, {"y", 0}};
  const auto f1 = fiber_presentation(jet_presentation(cusp(), 1), origin);
  CHECK(f1.relations.empty());
  CHECK(f1.generators == std::vector<JetVariable>{var("x", 1), var("y", 1)});
  const auto f2 = fiber_presentation(jet_presentation(cusp(), 2), origin);
  CHECK(relation_texts(f2) == std::vector<std::string>{"(d1y)^2"});
  const auto smooth = fiber_presentation(jet_presentation(cusp(), 1), {{"x", 1}, {"y", 1}});
  CHECK(smooth.relations == std::vector<Polynomial>{smooth.parse("2*d1y - 3*d1x")});
  CHECK_THROWS_AS(fiber_presentation(jet_presentation(cusp(), 1), {{"x", 1}, {"y", 0}}), DomainError);
  CHECK_THROWS_AS(fiber_presentation(jet_presentation(cusp(), 1), {{"x", 0}}), DomainError);
}

TEST_CASE("first fundamental sequence") {
  const auto trivial = tower({"x"}, {}, {}, {});
  for (std::uint32_t m = 1; m <= 2; ++m) {
    const auto r = first_sequence_check(trivial, m);
    CHECK(r.holds);
  }
  const auto plane = tower({"x"}, {}, {"y"}, {});
  const auto r1 = first_sequence_check(plane, 1);
  CHECK(r1.holds);
  CHECK(ideal_equal(r1.kernel_generators, std::vector<Polynomial>{flatten_tower(plane).parse("d1x")}));
  const auto c = tower({"x"}, {}, {"y"}, {"y^2 - x^3"});
  for (std::uint32_t m = 1; m <= 2; ++m) CHECK(first_sequence_check(c, m).holds);
  CHECK_THROWS_AS(first_sequence_check(cusp(), 1), DomainError);
}

TEST_CASE("line sheaf degrees") {
  CHECK(gg_line_sheaf_degree(0).empty_scheme);
  CHECK(gg_line_sheaf_degree(1).degree == 1);
  CHECK(gg_line_sheaf_degree(2).degree == 2);
  CHECK(gg_line_sheaf_degree(4).degree == 12);
  CHECK(gg_line_sheaf_degree(10).degree == 2520);
  CHECK_FALSE(gg_line_sheaf_degree(3).empty_scheme);
}

TEST_CASE("leading forms") {
  const auto ambient = make_presentation(QQ, {"a", "x", "y"}, {});
  CHECK(leading_form_restriction(ambient, ambient.parse("x^2"), {"x"}, 2).to_string() == "(d1x)^2");
  CHECK(leading_form_restriction(ambient, ambient.parse("x*y"), {"x", "y"}, 2).to_string() == "d1x*d1y");
  CHECK(leading_form_restriction(ambient, ambient.parse("a*x^2"), {"x"}, 2).to_string() == "a*(d1x)^2");
  CHECK_THROWS_AS(leading_form_restriction(ambient, ambient.parse("x*y"), {"x"}, 2), DomainError);
  CHECK_THROWS_AS(leading_form_restriction(cusp(), cusp().parse("x^2"), {"x"}, 2), DomainError);
  CHECK_THROWS_AS(leading_form_restriction(ambient, ambient.parse("x"), {"x"}, 0), DomainError);
}

TEST_CASE("base change commutes with jets") {
  const auto zz = CoefficientRing::integers();
  const auto p = make_presentation(zz, {"x", "y"}, {"y^2 - x^3", "6*x*y - 5", "2*x^4 + 3*y"});
  for (std::uint32_t q : {2u, 3u, 5u}) {
    const auto fq = CoefficientRing::prime_field(q);
    Presentation reduced = p;
    reduced.ring = fq;
    for (auto& r : reduced.relations) r = map_coefficients(r, fq);
    const auto a = jet_presentation(p, 3);
    const auto b = jet_presentation(reduced, 3);
    REQUIRE(a.relations.size() == b.relations.size());
    for (std::size_t k = 0; k < a.relations.size(); ++k) REQUIRE(map_coefficients(a.relations[k], fq) == b.relations[k]);
  }
}

TEST_CASE("presentation validation") {
  CHECK_THROWS_AS(make_presentation(QQ, {"x", "x"}, {}), DomainError);
  CHECK_THROWS_AS(make_presentation(QQ, {"d1x"}, {}), DomainError);
  CHECK_THROWS_AS(make_presentation(QQ, {"x"}, {}, {"x"}), DomainError);
  CHECK_THROWS_AS(make_presentation(QQ, {"x"}, {"y"}), ParseError);
  CHECK_THROWS_AS(make_presentation(QQ, {"2x"}, {}), DomainError);
  CHECK(cusp().to_string() == "ring: QQ\ngenerators: x[0] y[0]\nrelations:\n  -x^3 + y^2\n");
}
