#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "jets/polynomial.hpp"

namespace jets {

/// Monomial order over an explicit variable enumeration; earlier variables
/// are larger (x > y when x is listed first).
struct MonomialOrder {
  enum class Kind { lex, grevlex };

  Kind kind = Kind::grevlex;
  std::vector<JetVariable> variables;

  /// Variables sorted canonically (base name, then order).
  static MonomialOrder grevlex(std::vector<JetVariable> vars);
  static MonomialOrder lex(std::vector<JetVariable> vars);
  /// Default order covering every variable of `polys`.
  static MonomialOrder grevlex_for(std::span<const Polynomial> polys);

  /// a > b in this order.  Both monomials must use enumerated variables only.
  bool greater(const Monomial& a, const Monomial& b) const;
};

struct BuchbergerOptions {
  /// Upper bound on processed critical pairs before BudgetExceeded.
  std::uint64_t max_pairs = 100'000;
};

/// Reduced Groebner basis: monic, interreduced, sorted by leading monomial
/// (largest first).  The zero ideal has an empty basis.
class GroebnerBasis {
 public:
  GroebnerBasis(MonomialOrder order, CoefficientRing ring, std::vector<Polynomial> basis)
      : order_(std::move(order)), ring_(ring), basis_(std::move(basis)) {}

  const MonomialOrder& order() const noexcept { return order_; }
  const CoefficientRing& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& basis() const noexcept { return basis_; }
  bool is_unit_ideal() const;

 private:
  MonomialOrder order_;
  CoefficientRing ring_;
  std::vector<Polynomial> basis_;
};

/// Throws DomainError unless the coefficients form a field (or a generator
/// uses a variable outside `order`), BudgetExceeded past the pair bound.
GroebnerBasis buchberger(std::span<const Polynomial> gens, const MonomialOrder& order,
                         const BuchbergerOptions& options = {});

/// Fully reduced remainder of f; no term is divisible by a leading monomial.
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb);

/// Leading monomial of a nonzero polynomial under `order`.
Monomial leading_monomial(const Polynomial& f, const MonomialOrder& order);

/// Re-checks that every S-polynomial of the basis reduces to zero.
bool satisfies_buchberger_criterion(const GroebnerBasis& gb);

/// f in (gens).  The order defaults to grevlex over all variables involved.
bool ideal_membership(const Polynomial& f, std::span<const Polynomial> gens,
                      const MonomialOrder* order = nullptr, const BuchbergerOptions& options = {});

/// (gens1) == (gens2), by mutual membership.
bool ideal_equal(std::span<const Polynomial> gens1, std::span<const Polynomial> gens2,
                 const MonomialOrder* order = nullptr, const BuchbergerOptions& options = {});

/// All products of m generators (with repetition), deduplicated.  m = 0
/// yields {1}.
std::vector<Polynomial> power_ideal(std::span<const Polynomial> gens, std::uint32_t m);

}  // namespace jets
