#include "jets/arc_oracle.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "jets/error.hpp"

namespace jets {

namespace {

using Series = TruncatedSeries<Residue>;

Series constant_series(std::uint32_t value, std::uint32_t p, std::uint32_t m) {
  return Series::constant(Residue(value, p), Residue(0, p), m);
}

/// Relation compiled to generator indices with F_p coefficients.
struct CompiledRelation {
  struct Term {
    std::uint32_t coeff;
    std::vector<std::pair<std::size_t, std::uint32_t>> powers;
  };
  std::vector<Term> terms;
  /// Largest generator index in the support; relations are checked as soon
  /// as this generator is assigned.  -1 for constant relations.
  long ready_level = -1;
};

std::vector<CompiledRelation> compile(const Presentation& p, const CoefficientRing& field) {
  std::vector<CompiledRelation> out;
  for (const auto& r : p.relations) {
    const Polynomial fr = r.ring() == field ? r : map_coefficients(r, field);
    CompiledRelation c;
    for (const auto& [m, coeff] : fr.terms()) {
      CompiledRelation::Term t{field.residue(coeff), {}};
      for (const auto& [v, e] : m.factors()) {
        const std::size_t idx = p.index_of(v);
        t.powers.emplace_back(idx, e);
        c.ready_level = std::max(c.ready_level, static_cast<long>(idx));
      }
      c.terms.push_back(std::move(t));
    }
    out.push_back(std::move(c));
  }
  return out;
}

Series evaluate(const CompiledRelation& rel, const std::vector<Series>& values, std::uint32_t p,
                std::uint32_t m) {
  Series total = constant_series(0, p, m);
  for (const auto& t : rel.terms) {
    Series term = constant_series(t.coeff, p, m);
    for (const auto& [idx, e] : t.powers)
      for (std::uint32_t k = 0; k < e; ++k) term = term * values[idx];
    total = total + term;
  }
  return total;
}

bool is_zero(const Series& s) {
  return std::all_of(s.coefficients().begin(), s.coefficients().end(),
                     [](const Residue& r) { return r.is_zero(); });
}

void require_prime(std::uint32_t q) {
  if (!is_prime(q))
    throw DomainError("q = " + std::to_string(q) + " is not prime (prime powers are not supported)");
}

std::vector<HomPoint> enumerate(const Presentation& source, const FiniteRing& target,
                                const EnumerationBudget& budget) {
  if (!source.constants.empty())
    throw DomainError("cannot enumerate points of a presentation with constants");
  const std::uint32_t p = target.characteristic();
  const std::uint32_t m = target.truncation();
  const Presentation pres = reduce_mod(source, p);
  const auto relations = compile(pres, pres.ring);
  const std::size_t n = pres.generators.size();

  std::vector<std::vector<const CompiledRelation*>> ready(n);
  std::vector<HomPoint> points;
  std::vector<Series> values(n, constant_series(0, p, m));
  for (const auto& r : relations) {
    if (r.ready_level < 0) {
      if (!is_zero(evaluate(r, values, p, m))) return points;
    } else {
      ready[static_cast<std::size_t>(r.ready_level)].push_back(&r);
    }
  }
  const auto elements = target.elements();
  std::uint64_t candidates = 0;

  // Iterative depth-first search; choice[level] indexes `elements`.
  std::vector<std::size_t> choice(n, 0);
  std::size_t level = 0;
  if (n == 0) {
    points.push_back(HomPoint{});
    return points;
  }
  for (;;) {
    if (choice[level] == elements.size()) {
      if (level == 0) break;
      choice[level] = 0;
      --level;
      ++choice[level];
      continue;
    }
    if (++candidates > budget.max_candidates)
      throw BudgetExceeded("enumeration budget of " + std::to_string(budget.max_candidates) +
                           " candidate assignments exceeded");
    values[level] = elements[choice[level]];
    bool ok = true;
    for (const auto* r : ready[level])
      if (!is_zero(evaluate(*r, values, p, m))) {
        ok = false;
        break;
      }
    if (!ok) {
      ++choice[level];
      continue;
    }
    if (level + 1 == n) {
      points.push_back(HomPoint{values});
      ++choice[level];
    } else {
      ++level;
    }
  }
  return points;
}

std::vector<std::uint32_t> flatten(const HomPoint& point) {
  std::vector<std::uint32_t> out;
  for (const auto& s : point.assignment)
    for (const auto& c : s.coefficients()) out.push_back(c.value());
  return out;
}

}  // namespace

FiniteRing FiniteRing::prime_field(std::uint32_t p) {
  require_prime(p);
  return FiniteRing(p, 0);
}

FiniteRing FiniteRing::truncated(std::uint32_t p, std::uint32_t m) {
  require_prime(p);
  return FiniteRing(p, m);
}

std::uint64_t FiniteRing::size() const {
  std::uint64_t s = 1;
  for (std::uint32_t k = 0; k <= m_; ++k) {
    if (s > std::numeric_limits<std::uint64_t>::max() / p_)
      throw BudgetExceeded("finite ring too large to enumerate");
    s *= p_;
  }
  return s;
}

std::vector<TruncatedSeries<Residue>> FiniteRing::elements() const {
  const std::uint64_t count = size();
  std::vector<TruncatedSeries<Residue>> out;
  out.reserve(count);
  std::vector<Residue> digits(m_ + 1, Residue(0, p_));
  for (std::uint64_t n = 0; n < count; ++n) {
    std::uint64_t rest = n;
    for (std::size_t k = m_ + 1; k-- > 0;) {
      digits[k] = Residue(rest % p_, p_);
      rest /= p_;
    }
    out.emplace_back(digits);
  }
  return out;
}

Presentation reduce_mod(const Presentation& p, std::uint32_t q) {
  require_prime(q);
  const auto field = CoefficientRing::prime_field(q);
  if (p.ring == field) return p;
  if (p.ring.kind() == CoefficientRing::Kind::prime_field)
    throw DomainError("presentation is over " + p.ring.name() + ", cannot count over F_" +
                      std::to_string(q));
  Presentation out = p;
  out.ring = field;
  for (auto& r : out.relations) r = map_coefficients(r, field);
  out.tower = nullptr;
  return out;
}

std::vector<HomPoint> enumerate_homs(const Presentation& p, const FiniteRing& target,
                                     const EnumerationBudget& budget) {
  return enumerate(p, target, budget);
}

std::vector<HomPoint> enumerate_arcs(const Presentation& p, std::uint32_t q, std::uint32_t m,
                                     const EnumerationBudget& budget) {
  if (p.jet_order != 0) throw DomainError("enumerate_arcs expects a plain presentation");
  return enumerate(p, FiniteRing::truncated(q, m), budget);
}

std::vector<std::uint32_t> residues(const HomPoint& point) {
  std::vector<std::uint32_t> out;
  out.reserve(point.assignment.size());
  for (const auto& s : point.assignment) {
    if (s.order() != 0) throw DomainError("residues() needs a field-valued point");
    out.push_back(s[0].value());
  }
  return out;
}

HomPoint field_point(const std::vector<std::uint32_t>& values, std::uint32_t p) {
  HomPoint point;
  for (auto v : values) point.assignment.push_back(constant_series(v, p, 0));
  return point;
}

HomPoint jet_point_to_arc(const Presentation& base, const Presentation& jet, const HomPoint& point) {
  HomPoint arc;
  const std::uint32_t m = jet.jet_order;
  for (const auto& g : base.base_generators()) {
    std::vector<Residue> coeffs;
    for (std::uint32_t k = 0; k <= m; ++k) coeffs.push_back(point.assignment.at(jet.index_of(var(g.base, k)))[0]);
    arc.assignment.emplace_back(std::move(coeffs));
  }
  return arc;
}

HomPoint arc_to_jet_point(const Presentation& base, const Presentation& jet, const HomPoint& arc) {
  HomPoint point;
  for (const auto& g : jet.generators) {
    const auto& series = arc.assignment.at(base.index_of(var(g.base)));
    point.assignment.push_back(Series({series[g.order]}));
  }
  return point;
}

DesideratumReport desideratum_check(const Presentation& p, std::uint32_t q, std::uint32_t m,
                                    const EnumerationBudget& budget) {
  const Presentation jet = jet_presentation(p, m);
  const auto jet_points = enumerate_homs(jet, FiniteRing::prime_field(q), budget);
  const auto arcs = enumerate_arcs(p, q, m, budget);

  DesideratumReport report;
  report.jet_points = jet_points.size();
  report.arcs = arcs.size();
  report.counts_agree = report.jet_points == report.arcs;

  std::set<std::vector<std::uint32_t>> arc_set, point_set;
  for (const auto& a : arcs) arc_set.insert(flatten(a));
  for (const auto& pt : jet_points) point_set.insert(flatten(pt));

  report.jet_to_arc_to_jet_identity = true;
  for (const auto& pt : jet_points) {
    const HomPoint arc = jet_point_to_arc(p, jet, pt);
    if (!arc_set.count(flatten(arc)) || !(arc_to_jet_point(p, jet, arc) == pt)) {
      report.jet_to_arc_to_jet_identity = false;
      break;
    }
  }
  report.arc_to_jet_to_arc_identity = true;
  for (const auto& arc : arcs) {
    const HomPoint pt = arc_to_jet_point(p, jet, arc);
    if (!point_set.count(flatten(pt)) || !(jet_point_to_arc(p, jet, pt) == arc)) {
      report.arc_to_jet_to_arc_identity = false;
      break;
    }
  }
  return report;
}

std::uint64_t count_points(const Presentation& p, std::uint32_t q, const EnumerationBudget& budget) {
  return enumerate_homs(p, FiniteRing::prime_field(q), budget).size();
}

SurjectivityReport truncation_surjectivity(const Presentation& p, std::uint32_t i, std::uint32_t j,
                                           std::uint32_t q, const EnumerationBudget& budget) {
  if (i > j) throw DomainError("truncation needs i <= j");
  const Presentation jet_i = jet_presentation(p, i);
  const Presentation jet_j = jet_presentation(p, j);
  const auto target = enumerate_homs(jet_i, FiniteRing::prime_field(q), budget);
  const auto source = enumerate_homs(jet_j, FiniteRing::prime_field(q), budget);

  std::vector<std::size_t> keep;
  for (const auto& g : jet_i.generators) keep.push_back(jet_j.index_of(g));
  std::set<std::vector<std::uint32_t>> image;
  for (const auto& pt : source) {
    const auto values = residues(pt);
    std::vector<std::uint32_t> truncated;
    for (auto k : keep) truncated.push_back(values[k]);
    image.insert(std::move(truncated));
  }

  SurjectivityReport report;
  report.source_points = source.size();
  report.target_points = target.size();
  report.image_points = image.size();
  report.target_generators = jet_i.generators;
  for (const auto& pt : target) {
    auto values = residues(pt);
    if (!image.count(values)) {
      report.witness = std::move(values);
      break;
    }
  }
  report.surjective = !report.witness.has_value();
  return report;
}

ImageReport jet_map_image(const GradedAlgebraMap& phi, std::uint32_t m, std::uint32_t q,
                          const EnumerationBudget& budget, std::size_t sample) {
  if (phi.source.jet_order != 0 || phi.target.jet_order != 0)
    throw DomainError("jet_map_image expects a map between plain presentations");
  certify(phi);
  const Presentation& b = phi.source;
  const Presentation b_prime = reduce_mod(phi.target, q);
  const Presentation jet_b = jet_presentation(b, m);

  // Images phi(x) for x a generator of B, compiled against B'.
  Presentation images_as_relations = b_prime;
  images_as_relations.relations.clear();
  for (const auto& g : b.base_generators())
    images_as_relations.relations.push_back(
        map_coefficients(phi.apply(Polynomial::variable(b.ring, g)), b_prime.ring));
  const auto compiled = compile(images_as_relations, b_prime.ring);

  const auto arcs = enumerate_arcs(b_prime, q, m, budget);
  std::set<std::vector<std::uint32_t>> image;
  for (const auto& arc : arcs) {
    HomPoint pulled;
    for (const auto& c : compiled) pulled.assignment.push_back(evaluate(c, arc.assignment, q, m));
    image.insert(residues(arc_to_jet_point(b, jet_b, pulled)));
  }

  const auto target = enumerate_homs(jet_b, FiniteRing::prime_field(q), budget);
  ImageReport report;
  report.source_points = arcs.size();
  report.target_points = target.size();
  report.image.assign(image.begin(), image.end());
  report.target_generators = jet_b.generators;
  for (const auto& pt : target) {
    if (report.non_image_sample.size() >= sample) break;
    auto values = residues(pt);
    if (!image.count(values)) report.non_image_sample.push_back(std::move(values));
  }
  return report;
}

std::vector<std::uint32_t> dilate_point(const Presentation& p, const std::vector<std::uint32_t>& point,
                                        std::uint32_t z, std::uint32_t q) {
  std::vector<std::uint32_t> out(point.size());
  for (std::size_t k = 0; k < point.size(); ++k)
    out[k] = (Residue(z, q).pow(p.generators.at(k).weight()) * Residue(point[k], q)).value();
  return out;
}

bool satisfies_relations(const Presentation& p, const std::vector<std::uint32_t>& point, std::uint32_t q) {
  const Presentation pres = reduce_mod(p, q);
  const auto relations = compile(pres, pres.ring);
  const auto values = field_point(point, q).assignment;
  return std::all_of(relations.begin(), relations.end(),
                     [&](const CompiledRelation& r) { return is_zero(evaluate(r, values, q, 0)); });
}

OrbitReport gm_orbits(const Presentation& p, std::uint32_t q, const EnumerationBudget& budget) {
  const auto points = enumerate_homs(p, FiniteRing::prime_field(q), budget);
  const Presentation pres = reduce_mod(p, q);
  const auto relations = compile(pres, pres.ring);
  auto satisfied = [&](const std::vector<std::uint32_t>& pt) {
    const auto values = field_point(pt, q).assignment;
    return std::all_of(relations.begin(), relations.end(),
                       [&](const CompiledRelation& r) { return is_zero(evaluate(r, values, q, 0)); });
  };

  OrbitReport report;
  report.points = points.size();
  report.dilation_preserves_relations = true;
  report.sizes_divide_group_order = true;
  std::set<std::vector<std::uint32_t>> seen;
  for (const auto& hp : points) {
    const auto pt = residues(hp);
    bool on_zero_section = true;
    for (std::size_t k = 0; k < pt.size(); ++k)
      if (p.generators[k].weight() > 0 && pt[k] != 0) on_zero_section = false;
    if (on_zero_section) {
      ++report.zero_section_points;
      continue;
    }
    if (seen.count(pt)) continue;
    std::set<std::vector<std::uint32_t>> orbit;
    for (std::uint32_t z = 1; z < q; ++z) {
      auto image = dilate_point(p, pt, z, q);
      if (!satisfied(image)) report.dilation_preserves_relations = false;
      orbit.insert(std::move(image));
    }
    Orbit o;
    o.representative = *orbit.begin();
    o.size = orbit.size();
    o.stabilizer = (q - 1) / o.size;
    if ((q - 1) % o.size != 0) report.sizes_divide_group_order = false;
    seen.insert(orbit.begin(), orbit.end());
    report.orbits.push_back(std::move(o));
  }
  std::sort(report.orbits.begin(), report.orbits.end(),
            [](const Orbit& a, const Orbit& b) { return a.representative < b.representative; });
  return report;
}

std::uint64_t count_arcs_with_unit(const Presentation& p, const Polynomial& s, std::uint32_t q,
                                   std::uint32_t m, const EnumerationBudget& budget) {
  const Presentation pres = reduce_mod(p, q);
  Presentation holder = pres;
  holder.relations = {map_coefficients(s, pres.ring)};
  const auto compiled = compile(holder, pres.ring);
  std::uint64_t count = 0;
  for (const auto& arc : enumerate_arcs(pres, q, m, budget))
    if (!evaluate(compiled.front(), arc.assignment, q, m)[0].is_zero()) ++count;
  return count;
}

bool jacobian_has_full_rank(const Presentation& p, const std::vector<std::uint32_t>& point,
                            std::uint32_t q) {
  const Presentation pres = reduce_mod(p, q);
  const auto& gens = pres.generators;
  if (point.size() != gens.size()) throw DomainError("point has the wrong number of coordinates");
  Presentation jac = pres;
  jac.relations.clear();
  for (const auto& r : pres.relations)
    for (const auto& g : gens) jac.relations.push_back(partial_derivative(r, g));
  const auto entries = compile(jac, pres.ring);
  const std::size_t rows = pres.relations.size();
  const std::size_t cols = gens.size();
  const HomPoint hp = field_point(point, q);

  std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      a[r][c] = evaluate(entries[r * cols + c], hp.assignment, q, 0)[0].value();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    const std::uint64_t inv = Residue(a[rank][c], q).pow(q - 2).value();
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const std::uint64_t factor = a[r][c] * inv % q;
      for (std::size_t k = 0; k < cols; ++k) a[r][k] = (a[r][k] + q - factor * a[rank][k] % q) % q;
    }
    ++rank;
  }
  return rank == rows;
}

}  // namespace jets
