#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "jets/polynomial.hpp"

namespace jets {

/// Random polynomial in `vars` with total degree <= max_degree and at most
/// max_terms terms.  Coefficients are small integers (or small fractions over
/// QQ when `fractions` is set).
inline Polynomial random_polynomial(std::mt19937_64& rng, const CoefficientRing& ring,
                                    const std::vector<JetVariable>& vars, std::uint32_t max_degree,
                                    std::uint32_t max_terms, bool fractions = false) {
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<std::uint32_t> terms(1, max_terms);
  std::uniform_int_distribution<std::uint32_t> degree(0, max_degree);
  Polynomial f(ring);
  if (vars.empty()) return Polynomial::constant(ring, coeff(rng));
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  const std::uint32_t n = terms(rng);
  for (std::uint32_t t = 0; t < n; ++t) {
    std::vector<Monomial::Factor> factors;
    const std::uint32_t d = degree(rng);
    for (std::uint32_t k = 0; k < d; ++k) factors.emplace_back(vars[pick(rng)], 1);
    Coeff c(coeff(rng));
    if (fractions && ring.kind() == CoefficientRing::Kind::rationals) c = Coeff(coeff(rng), den(rng));
    c.canonicalize();
    f += Polynomial::term(ring, Monomial(std::move(factors)), ring.from_rational(c));
  }
  return f;
}

}  // namespace jets
