#include "jets/jet_presentation.hpp"

#include <algorithm>
#include <set>

#include "jets/error.hpp"

namespace jets {

Presentation jet_presentation(const Presentation& base, std::uint32_t m) {
  if (base.jet_order != 0) throw DomainError("jet_presentation expects a plain presentation");
  base.validate();
  if (m == 0) return base;
  const auto ctx = ProlongationContext::for_presentation(base, m);
  Presentation out;
  out.ring = base.ring;
  out.constants = base.constants;
  out.jet_order = m;
  out.tower = base.tower;
  const auto gens = base.base_generators();
  for (std::uint32_t k = 0; k <= m; ++k)
    for (const auto& g : gens) out.generators.push_back(var(g.base, k));
  for (const auto& f : base.relations) {
    auto group = prolong_all(f, ctx);
    out.relations.insert(out.relations.end(), group.begin(), group.end());
  }
  return out;
}

Presentation relative_jet_presentation(const Presentation& tower, std::uint32_t m) {
  if (tower.tower) {
    for (const auto& g : tower.tower->base_generators())
      for (const auto& c : tower.base_generators())
        if (g.base == c.base)
          throw DomainError("generator '" + g.base + "' appears in both B and C");
  }
  Presentation out = jet_presentation(tower, m);
  if (tower.tower) {
    // C contains B, so B's own relations hold in HS^m_{C/B} at weight 0.
    for (const auto& r : tower.tower->relations) {
      if (!(r.ring() == tower.ring)) throw RingMismatch("tower rings differ");
      out.relations.push_back(r);
    }
  }
  return out;
}

CoefficientRing certification_ring(const CoefficientRing& ring) {
  return ring.kind() == CoefficientRing::Kind::integers ? CoefficientRing::rationals() : ring;
}

namespace {

Polynomial to_cert(const Polynomial& f) {
  const auto ring = certification_ring(f.ring());
  return f.ring() == ring ? f : map_coefficients(f, ring);
}

std::vector<Polynomial> to_cert(const std::vector<Polynomial>& fs) {
  std::vector<Polynomial> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(to_cert(f));
  return out;
}

/// image = c * r for a relation r and a nonzero scalar c.
bool is_scalar_multiple_of_relation(const Polynomial& image, const std::vector<Polynomial>& rels) {
  for (const auto& r : rels) {
    if (r.is_zero() || r.size() != image.size()) continue;
    const auto& [m, c] = *r.terms().begin();
    const Coeff ratio = image.ring().mul(image.coefficient(m), image.ring().inv(c));
    if (ratio != 0 && r.scaled(ratio) == image) return true;
  }
  return false;
}

}  // namespace

std::vector<Polynomial> certification_ideal(const Presentation& target) {
  return to_cert(target.relations);
}

std::optional<Polynomial> first_ill_defined_relation(const GradedAlgebraMap& map,
                                                     const BuchbergerOptions& options) {
  const auto ideal = certification_ideal(map.target);
  std::vector<std::size_t> pending;
  std::vector<Polynomial> images;
  for (std::size_t k = 0; k < map.source.relations.size(); ++k) {
    images.push_back(to_cert(map.apply(map.source.relations[k])));
    if (!images.back().is_zero() && !is_scalar_multiple_of_relation(images.back(), ideal))
      pending.push_back(k);
  }
  if (pending.empty()) return std::nullopt;
  std::vector<Polynomial> all = ideal;
  all.insert(all.end(), images.begin(), images.end());
  const GroebnerBasis gb = buchberger(ideal, MonomialOrder::grevlex_for(all), options);
  for (auto k : pending)
    if (!normal_form(images[k], gb).is_zero()) return map.source.relations[k];
  return std::nullopt;
}

void certify(const GradedAlgebraMap& map, const BuchbergerOptions& options) {
  if (auto bad = first_ill_defined_relation(map, options))
    throw DomainError("map is not well-defined: relation " + bad->to_string() +
                      " does not map into the target ideal (image " +
                      map.apply(*bad).to_string() + ")");
}

GradedAlgebraMap identity_map(const Presentation& p) {
  GradedAlgebraMap map{p, p, {}, GradedAlgebraMap::WeightRule::preserving, ""};
  for (const auto& g : p.generators) map.images.emplace(g, Polynomial::variable(p.ring, g));
  return map;
}

GradedAlgebraMap compose(const GradedAlgebraMap& outer, const GradedAlgebraMap& inner) {
  if (inner.target.generators != outer.source.generators || !(inner.target.ring == outer.source.ring))
    throw DomainError("maps are not composable: target and source presentations differ");
  GradedAlgebraMap map{inner.source, outer.target, {}, inner.weight_rule, ""};
  if (outer.weight_rule == GradedAlgebraMap::WeightRule::dilating)
    map.weight_rule = GradedAlgebraMap::WeightRule::dilating;
  for (const auto& g : inner.source.generators) {
    auto it = inner.images.find(g);
    const Polynomial img = it == inner.images.end() ? Polynomial::variable(inner.source.ring, g)
                                                    : it->second;
    map.images.emplace(g, outer.apply(img));
  }
  return map;
}

bool equal_on_generators(const GradedAlgebraMap& a, const GradedAlgebraMap& b) {
  if (a.source.generators != b.source.generators) return false;
  for (const auto& g : a.source.generators) {
    const Polynomial x = Polynomial::variable(a.source.ring, g);
    if (!(a.apply(x) == b.apply(x))) return false;
  }
  return true;
}

GradedAlgebraMap make_map(const Presentation& source, const Presentation& target,
                          const std::map<std::string, std::string>& images) {
  if (!(source.ring == target.ring)) throw RingMismatch("source and target rings differ");
  GradedAlgebraMap map{source, target, {}, GradedAlgebraMap::WeightRule::preserving, ""};
  for (const auto& [name, text] : images)
    if (!source.has_generator(var(name)))
      throw DomainError("map image given for unknown generator '" + name + "'");
  for (const auto& g : source.generators) {
    auto it = images.find(g.name());
    if (it != images.end()) {
      map.images.emplace(g, target.parse(it->second));
    } else if (target.has_generator(g)) {
      map.images.emplace(g, Polynomial::variable(target.ring, g));
    } else {
      throw DomainError("no image given for generator " + g.name());
    }
  }
  certify(map);
  return map;
}

GradedAlgebraMap truncation_map(const Presentation& base, std::uint32_t i, std::uint32_t j) {
  if (i > j)
    throw DomainError("truncation map needs i <= j, got i=" + std::to_string(i) +
                      ", j=" + std::to_string(j));
  const Presentation source = jet_presentation(base, i);
  const Presentation target = jet_presentation(base, j);
  GradedAlgebraMap map{source, target, {}, GradedAlgebraMap::WeightRule::preserving, ""};
  for (const auto& g : source.generators) map.images.emplace(g, Polynomial::variable(base.ring, g));
  certify(map);
  return map;
}

GradedAlgebraMap zero_section_map(const Presentation& base, std::uint32_t m) {
  const Presentation source = jet_presentation(base, m);
  GradedAlgebraMap map{source, base, {}, GradedAlgebraMap::WeightRule::preserving, ""};
  for (const auto& g : source.generators)
    map.images.emplace(g, g.order == 0 ? Polynomial::variable(base.ring, g) : Polynomial(base.ring));
  certify(map);
  return map;
}

GradedAlgebraMap dilation_map(const Presentation& base, std::uint32_t m,
                              const std::optional<std::string>& symbol, const Coeff& value) {
  const Presentation source = jet_presentation(base, m);
  Presentation target = source;
  Polynomial z(base.ring);
  if (symbol) {
    const auto names = source.scope();
    if (names.count(*symbol) || !is_identifier(*symbol) || looks_like_jet_symbol(*symbol))
      throw DomainError("dilation symbol '" + *symbol + "' collides or is not a valid name");
    target.constants.push_back(*symbol);
    z = Polynomial::variable(base.ring, var(*symbol));
  } else {
    z = Polynomial::constant(base.ring, base.ring.from_rational(value));
  }
  GradedAlgebraMap map{source, target, {}, GradedAlgebraMap::WeightRule::dilating,
                       symbol.value_or("")};
  for (const auto& g : source.generators)
    map.images.emplace(g, z.pow(g.weight()) * Polynomial::variable(base.ring, g));
  certify(map);
  return map;
}

GradedAlgebraMap induced_map(const GradedAlgebraMap& phi, std::uint32_t m) {
  if (phi.source.jet_order != 0 || phi.target.jet_order != 0)
    throw DomainError("induced_map expects a map between plain presentations");
  certify(phi);
  const Presentation source = jet_presentation(phi.source, m);
  const Presentation target = jet_presentation(phi.target, m);
  const auto ctx = ProlongationContext::for_presentation(phi.target, m);
  GradedAlgebraMap map{source, target, {}, GradedAlgebraMap::WeightRule::preserving, ""};
  for (const auto& g : phi.source.base_generators()) {
    const auto prolongations = prolong_all(phi.apply(Polynomial::variable(phi.source.ring, g)), ctx);
    for (std::uint32_t k = 0; k <= m; ++k) map.images.emplace(var(g.base, k), prolongations[k]);
  }
  certify(map);
  return map;
}

ProductResult product_presentation(const Presentation& p1, const Presentation& p2,
                                   std::uint32_t m) {
  if (!(p1.ring == p2.ring)) throw RingMismatch("product factors live over different rings");
  if (p1.jet_order != 0 || p2.jet_order != 0)
    throw DomainError("product_presentation expects plain presentations");
  ProductResult result;
  auto taken = p1.scope();
  std::map<JetVariable, Polynomial> rename;
  Presentation second = p2;
  for (auto& g : second.generators) {
    if (!taken.count(g.base)) {
      taken.insert(g.base);
      continue;
    }
    std::string fresh = g.base + "_2";
    while (taken.count(fresh) || p2.scope().count(fresh)) fresh += "_";
    result.renamed.emplace(g.base, fresh);
    rename.emplace(g, Polynomial::variable(p2.ring, var(fresh)));
    taken.insert(fresh);
    g.base = fresh;
  }
  for (auto& c : second.constants)
    if (std::find(p1.constants.begin(), p1.constants.end(), c) == p1.constants.end() &&
        p1.has_generator(var(c)))
      throw DomainError("constant '" + c + "' of the second factor is a generator of the first");
  for (auto& r : second.relations) r = substitute(r, rename);

  Presentation& prod = result.product;
  prod.ring = p1.ring;
  prod.constants = p1.constants;
  for (const auto& c : second.constants)
    if (std::find(prod.constants.begin(), prod.constants.end(), c) == prod.constants.end())
      prod.constants.push_back(c);
  prod.generators = p1.generators;
  prod.generators.insert(prod.generators.end(), second.generators.begin(), second.generators.end());
  prod.relations = p1.relations;
  prod.relations.insert(prod.relations.end(), second.relations.begin(), second.relations.end());
  prod.validate();

  const Presentation jet_prod = jet_presentation(prod, m);
  const Presentation jet1 = jet_presentation(p1, m);
  const Presentation jet2 = jet_presentation(second, m);
  std::vector<Polynomial> union_relations = jet1.relations;
  union_relations.insert(union_relations.end(), jet2.relations.begin(), jet2.relations.end());
  std::set<JetVariable> union_gens(jet1.generators.begin(), jet1.generators.end());
  union_gens.insert(jet2.generators.begin(), jet2.generators.end());
  result.jet_of_product_equals_product_of_jets =
      jet_prod.relations == union_relations &&
      std::set<JetVariable>(jet_prod.generators.begin(), jet_prod.generators.end()) == union_gens;
  return result;
}

Presentation localize(const Presentation& p, const Polynomial& s, const std::string& inverse_name) {
  if (p.jet_order != 0) throw DomainError("localize expects a plain presentation");
  if (!is_identifier(inverse_name) || looks_like_jet_symbol(inverse_name))
    throw DomainError("invalid inverse name '" + inverse_name + "'");
  if (p.scope().count(inverse_name))
    throw DomainError("name collision: '" + inverse_name + "' is already declared");
  Presentation out = p;
  const JetVariable u = var(inverse_name);
  out.generators.push_back(u);
  out.relations.push_back(s * Polynomial::variable(p.ring, u) - Polynomial::constant(p.ring, 1));
  out.validate();
  return out;
}

Presentation fiber_presentation(const Presentation& jet,
                                const std::map<std::string, Coeff>& point) {
  std::map<JetVariable, Polynomial> values;
  for (const auto& g : jet.base_generators()) {
    auto it = point.find(g.base);
    if (it == point.end()) throw DomainError("point does not assign generator '" + g.base + "'");
    values.emplace(g, Polynomial::constant(jet.ring, jet.ring.from_rational(it->second)));
  }
  for (const auto& [name, v] : point)
    if (!jet.has_generator(var(name)))
      throw DomainError("point assigns unknown generator '" + name + "'");

  Presentation out;
  out.ring = jet.ring;
  out.constants = jet.constants;
  out.jet_order = jet.jet_order;
  for (const auto& g : jet.generators)
    if (g.order > 0) out.generators.push_back(g);
  for (const auto& r : jet.relations) {
    const Polynomial image = substitute(r, values);
    const auto info = weighted_degree_info(r);
    if (info.is_homogeneous && info.weight == 0u && !image.is_zero())
      throw DomainError("point violates the base relation " + r.to_string());
    if (!image.is_zero()) out.relations.push_back(image);
  }
  out.validate();
  return out;
}

Presentation flatten_tower(const Presentation& tower) {
  if (!tower.tower) throw DomainError("presentation has no inner tower");
  const Presentation& inner = *tower.tower;
  if (!(inner.ring == tower.ring)) throw RingMismatch("tower rings differ");
  Presentation flat;
  flat.ring = tower.ring;
  std::set<std::string> inner_names;
  for (const auto& g : inner.base_generators()) inner_names.insert(g.base);
  for (const auto& c : inner.constants) flat.constants.push_back(c);
  for (const auto& c : tower.constants)
    if (!inner_names.count(c) &&
        std::find(flat.constants.begin(), flat.constants.end(), c) == flat.constants.end())
      flat.constants.push_back(c);
  flat.generators = inner.base_generators();
  for (const auto& g : tower.base_generators()) {
    if (inner_names.count(g.base))
      throw DomainError("generator '" + g.base + "' appears in both B and C");
    flat.generators.push_back(g);
  }
  flat.relations = inner.relations;
  flat.relations.insert(flat.relations.end(), tower.relations.begin(), tower.relations.end());
  flat.validate();
  return flat;
}

FirstSequenceReport first_sequence_check(const Presentation& tower, std::uint32_t m,
                                         const BuchbergerOptions& options) {
  const Presentation flat = flatten_tower(tower);
  const Presentation absolute = jet_presentation(flat, m);
  const Presentation relative = relative_jet_presentation(tower, m);

  FirstSequenceReport report;
  const auto absolute_relations = to_cert(absolute.relations);
  report.kernel_generators = to_cert(relative.relations);
  report.expected_generators = absolute_relations;
  const auto ring = certification_ring(flat.ring);
  const auto abs_ctx = ProlongationContext::for_presentation(flat, m);
  for (const auto& b : tower.tower->base_generators()) {
    const Polynomial bx = Polynomial::variable(ring, b);
    for (std::uint32_t i = 1; i <= m; ++i) {
      // Quotient map kills d_i b outright in HS^m_{C/B}.
      report.kernel_generators.push_back(Polynomial::variable(ring, var(b.base, i)));
      report.expected_generators.push_back(prolong(bx, i, abs_ctx));
    }
  }
  std::vector<Polynomial> everything = report.kernel_generators;
  everything.insert(everything.end(), report.expected_generators.begin(),
                    report.expected_generators.end());
  for (const auto& g : absolute.generators) everything.push_back(Polynomial::variable(ring, g));
  const auto order = MonomialOrder::grevlex_for(everything);
  report.holds = ideal_equal(report.kernel_generators, report.expected_generators, &order, options);
  const GroebnerBasis jac = buchberger(absolute_relations, order, options);
  report.kernel_is_zero = std::all_of(report.kernel_generators.begin(), report.kernel_generators.end(),
                                      [&jac](const Polynomial& k) { return normal_form(k, jac).is_zero(); });
  return report;
}

LineSheafDegree gg_line_sheaf_degree(std::uint32_t m) {
  if (m == 0) return {true, 0};
  mpz_class acc = 1;
  for (std::uint32_t k = 2; k <= m; ++k) mpz_lcm_ui(acc.get_mpz_t(), acc.get_mpz_t(), k);
  return {false, acc};
}

Polynomial leading_form_restriction(const Presentation& ambient, const Polynomial& b,
                                    const std::vector<std::string>& e_vars, std::uint32_t m,
                                    const BuchbergerOptions& options) {
  if (!ambient.relations.empty())
    throw DomainError("leading_form_restriction needs a polynomial algebra as ambient");
  if (m == 0) throw DomainError("leading_form_restriction needs m >= 1");
  std::set<std::string> e_set;
  std::vector<Polynomial> e_polys;
  for (const auto& name : e_vars) {
    if (!ambient.has_generator(var(name)))
      throw DomainError("'" + name + "' is not a generator of the ambient presentation");
    if (e_set.insert(name).second) e_polys.push_back(Polynomial::variable(ambient.ring, var(name)));
  }
  const auto power = to_cert(power_ideal(e_polys, m));
  if (!ideal_membership(to_cert(b), power, nullptr, options))
    throw DomainError(b.to_string() + " does not lie in the " + std::to_string(m) +
                      "-th power of the ideal of E");

  const auto ctx = ProlongationContext::for_presentation(ambient, m);
  std::map<JetVariable, Polynomial> on_e;
  for (const auto& name : e_set) on_e.emplace(var(name), Polynomial(ambient.ring));
  const Polynomial survivor = substitute(prolong(b, m, ctx), on_e);

  for (const auto& [mono, c] : survivor.terms()) {
    std::uint64_t e_degree = 0;
    for (const auto& [v, e] : mono.factors()) {
      const bool in_e = e_set.count(v.base) > 0;
      if (in_e && v.order == 1) {
        e_degree += e;
      } else if (in_e || v.order != 0) {
        throw DomainError("leading form survivor contains " + v.name() + ": " + survivor.to_string());
      }
    }
    if (e_degree != m)
      throw DomainError("leading form survivor is not of degree " + std::to_string(m) +
                        " in the d1 of E: " + survivor.to_string());
  }
  return survivor;
}

}  // namespace jets
