#include "jets/prolong.hpp"

#include "jets/error.hpp"

namespace jets {

ProlongationContext::ProlongationContext(std::uint32_t jet_order, std::set<std::string> active,
                                         std::set<std::string> constants)
    : jet_order_(jet_order), active_(std::move(active)), constants_(std::move(constants)) {
  for (const auto& name : active_)
    if (constants_.count(name))
      throw DomainError("'" + name + "' is both active and constant");
}

ProlongationContext ProlongationContext::for_presentation(const Presentation& p,
                                                          std::uint32_t jet_order) {
  std::set<std::string> active;
  for (const auto& g : p.base_generators()) active.insert(g.base);
  return ProlongationContext(jet_order, std::move(active),
                             std::set<std::string>(p.constants.begin(), p.constants.end()));
}

namespace {

TruncatedSeries<Polynomial> series_to_order(const Polynomial& f, const ProlongationContext& ctx,
                                            std::uint32_t order) {
  const CoefficientRing& ring = f.ring();
  const Polynomial zero(ring);
  std::map<std::string, TruncatedSeries<Polynomial>> generic;
  for (const auto& v : f.variables()) {
    if (v.order != 0)
      throw DomainError("cannot prolong " + f.to_string() + ": it mentions the jet variable " +
                        v.name());
    if (ctx.constants().count(v.base)) {
      generic.emplace(v.base,
                      TruncatedSeries<Polynomial>::constant(Polynomial::variable(ring, v), zero, order));
    } else if (ctx.active().count(v.base)) {
      std::vector<Polynomial> coeffs;
      for (std::uint32_t j = 0; j <= order; ++j)
        coeffs.push_back(Polynomial::variable(ring, var(v.base, j)));
      generic.emplace(v.base, TruncatedSeries<Polynomial>(std::move(coeffs)));
    } else {
      throw DomainError("'" + v.base + "' is neither an active variable nor a constant");
    }
  }

  std::map<std::pair<std::string, std::uint32_t>, TruncatedSeries<Polynomial>> powers;
  auto power_of = [&](const std::string& name, std::uint32_t e) -> const TruncatedSeries<Polynomial>& {
    auto key = std::make_pair(name, e);
    if (auto it = powers.find(key); it != powers.end()) return it->second;
    const auto& base = generic.at(name);
    TruncatedSeries<Polynomial> result = base;
    for (std::uint32_t i = 1; i < e; ++i) result = result * base;
    return powers.emplace(key, std::move(result)).first->second;
  };

  TruncatedSeries<Polynomial> total = TruncatedSeries<Polynomial>::constant(zero, zero, order);
  for (const auto& [m, c] : f.terms()) {
    TruncatedSeries<Polynomial> t =
        TruncatedSeries<Polynomial>::constant(Polynomial::constant(ring, c), zero, order);
    for (const auto& [v, e] : m.factors()) t = t * power_of(v.base, e);
    total = total + t;
  }
  return total;
}

}  // namespace

TruncatedSeries<Polynomial> prolongation_series(const Polynomial& f,
                                                const ProlongationContext& ctx) {
  return series_to_order(f, ctx, ctx.jet_order());
}

Polynomial prolong(const Polynomial& f, std::uint32_t k, const ProlongationContext& ctx) {
  if (k > ctx.jet_order())
    throw DomainError("prolongation index " + std::to_string(k) + " exceeds jet order " +
                      std::to_string(ctx.jet_order()));
  return series_to_order(f, ctx, k)[k];
}

std::vector<Polynomial> prolong_all(const Polynomial& f, const ProlongationContext& ctx) {
  return prolongation_series(f, ctx).coefficients();
}

LeibnizVerdict leibniz_check(const Polynomial& f, const Polynomial& g, std::uint32_t k,
                             const ProlongationContext& ctx) {
  const Polynomial lhs = prolong(f * g, k, ctx);
  Polynomial rhs(f.ring());
  for (std::uint32_t i = 0; i <= k; ++i) rhs += prolong(f, i, ctx) * prolong(g, k - i, ctx);
  LeibnizVerdict v{false, lhs - rhs};
  v.holds = v.difference.is_zero();
  return v;
}

TruncatedSeries<Residue> evaluate_on_arc(const Polynomial& f, const FieldArc& arc,
                                         std::uint32_t p, std::size_t order) {
  const CoefficientRing field = CoefficientRing::prime_field(p);
  const Polynomial fp = f.ring() == field ? f : map_coefficients(f, field);
  const Residue zero(0, p);
  auto total = TruncatedSeries<Residue>::constant(zero, zero, order);
  for (const auto& [m, c] : fp.terms()) {
    auto t = TruncatedSeries<Residue>::constant(Residue(field.residue(c), p), zero, order);
    for (const auto& [v, e] : m.factors()) {
      if (v.order != 0) throw DomainError("arc evaluation needs order-0 symbols, got " + v.name());
      auto it = arc.find(v.base);
      if (it == arc.end()) throw DomainError("arc does not assign '" + v.base + "'");
      if (it->second.order() != order) throw DomainError("arc order mismatch for '" + v.base + "'");
      for (std::uint32_t i = 0; i < e; ++i) t = t * it->second;
    }
    total = total + t;
  }
  return total;
}

FieldArc derivation_to_arc(const HigherDerivation& d) {
  FieldArc arc;
  const std::uint32_t p = d.target_characteristic;
  for (const auto& [name, values] : d.components) {
    if (values.size() != d.order + 1)
      throw DomainError("derivation component for '" + name + "' has " +
                        std::to_string(values.size()) + " entries, expected " +
                        std::to_string(d.order + 1));
    std::vector<Residue> coeffs;
    for (auto v : values) coeffs.emplace_back(v, p);
    arc.emplace(name, TruncatedSeries<Residue>(std::move(coeffs)));
  }
  return arc;
}

HigherDerivation arc_to_derivation(const Presentation& source, const FieldArc& arc) {
  HigherDerivation d;
  d.source = source;
  bool first = true;
  for (const auto& [name, series] : arc) {
    if (first) {
      d.order = static_cast<std::uint32_t>(series.order());
      d.target_characteristic = series[0].modulus();
      first = false;
    }
    std::vector<std::uint32_t> values;
    for (const auto& c : series.coefficients()) values.push_back(c.value());
    d.components.emplace(name, std::move(values));
  }
  return d;
}

DerivationVerdict check_higher_derivation(const HigherDerivation& d) {
  if (!is_prime(d.target_characteristic))
    return {false, "target F_" + std::to_string(d.target_characteristic) + " is not a prime field"};
  if (d.source.ring.kind() == CoefficientRing::Kind::prime_field &&
      d.source.ring.characteristic() != d.target_characteristic)
    return {false, "source characteristic does not match the target field"};
  for (const auto& g : d.source.base_generators())
    if (!d.components.count(g.base)) return {false, "no components given for generator '" + g.base + "'"};
  for (const auto& c : d.source.constants)
    if (!d.components.count(c)) return {false, "no components given for constant '" + c + "'"};

  FieldArc arc;
  try {
    arc = derivation_to_arc(d);
  } catch (const DomainError& e) {
    return {false, e.what()};
  }
  for (const auto& c : d.source.constants) {
    const auto& s = arc.at(c);
    for (std::size_t i = 1; i <= s.order(); ++i)
      if (!s[i].is_zero())
        return {false, "constant annihilation violated: D_" + std::to_string(i) + "(" + c +
                           ") = " + std::to_string(s[i].value())};
  }
  for (const auto& r : d.source.relations) {
    const auto image = evaluate_on_arc(r, arc, d.target_characteristic, d.order);
    for (std::size_t i = 0; i <= image.order(); ++i) {
      if (image[i].is_zero()) continue;
      if (i == 0)
        return {false, "D_0 is not a ring homomorphism: relation " + r.to_string() +
                           " maps to " + std::to_string(image[0].value())};
      return {false, "Leibniz rule violated: relation " + r.to_string() + " has t^" +
                         std::to_string(i) + " coefficient " + std::to_string(image[i].value())};
    }
  }
  return {true, ""};
}

RoundTripVerdict derivation_arc_roundtrip(const HigherDerivation& d) {
  const FieldArc arc = derivation_to_arc(d);
  const HigherDerivation back = arc_to_derivation(d.source, arc);
  const FieldArc arc_again = derivation_to_arc(back);
  RoundTripVerdict v;
  v.derivation_recovered = back.order == d.order &&
                           back.target_characteristic == d.target_characteristic &&
                           back.components == d.components;
  v.arc_recovered = arc_again == arc;
  return v;
}

}  // namespace jets
