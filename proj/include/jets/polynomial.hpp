#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jets/coefficient.hpp"

namespace jets {

/// The jet symbol d<order><base>.  Order 0 is the base variable itself and
/// the weight of a jet variable always equals its order.
///
/// The default ordering (base name, then order ascending) is the canonical
/// variable enumeration used everywhere: storage order, printing and the
/// default Groebner order.
struct JetVariable {
  std::string base;
  std::uint32_t order = 0;

  std::uint32_t weight() const noexcept { return order; }
  std::string name() const;

  auto operator<=>(const JetVariable&) const = default;
  bool operator==(const JetVariable&) const = default;
};

inline JetVariable var(std::string base, std::uint32_t order = 0) {
  return JetVariable{std::move(base), order};
}

/// Power product of jet variables.  Factors are sorted by variable and every
/// stored exponent is positive; the empty product is the unit monomial.
class Monomial {
 public:
  using Factor = std::pair<JetVariable, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(std::vector<Factor> factors);  // merges and drops zero exponents
  static Monomial of(const JetVariable& v, std::uint32_t exponent = 1);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool is_one() const noexcept { return factors_.empty(); }
  std::uint32_t exponent(const JetVariable& v) const;
  std::uint64_t degree() const;
  std::uint64_t weighted_degree() const;

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;

  bool operator==(const Monomial&) const = default;
  auto operator<=>(const Monomial&) const = default;

 private:
  std::vector<Factor> factors_;
};

/// Canonical term order for storage and printing: weighted degree, then total
/// degree, then reverse lexicographic on the canonical variable enumeration.
/// `operator()` is "greater than", so maps iterate from the leading term.
struct StorageOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial over a CoefficientRing.  Values are
/// immutable in spirit: all operations return new polynomials, and no zero
/// coefficient is ever stored.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Coeff, StorageOrder>;

  explicit Polynomial(CoefficientRing ring) : ring_(ring) {}

  static Polynomial constant(const CoefficientRing& ring, const Coeff& value);
  static Polynomial constant(const CoefficientRing& ring, long value) {
    return constant(ring, ring.from_int(value));
  }
  static Polynomial variable(const CoefficientRing& ring, const JetVariable& v);
  static Polynomial term(const CoefficientRing& ring, const Monomial& m, const Coeff& c);

  const CoefficientRing& ring() const noexcept { return ring_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  /// True for the zero polynomial too.
  bool is_constant() const;

  Coeff coefficient(const Monomial& m) const;
  std::set<JetVariable> variables() const;
  std::uint64_t degree() const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other) { return *this = *this + other; }
  Polynomial& operator-=(const Polynomial& other) { return *this = *this - other; }
  Polynomial& operator*=(const Polynomial& other) { return *this = *this * other; }
  Polynomial scaled(const Coeff& c) const;
  Polynomial pow(std::uint32_t exponent) const;

  bool operator==(const Polynomial& other) const;

  /// Text form accepted back by parse_poly; the zero polynomial prints as "0".
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Coeff& c);
  void require_same_ring(const Polynomial& other) const;

  CoefficientRing ring_;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

enum class PolyOp { add, sub, mul, pow };

/// Dispatching form of the ring operations; `pow` reads its exponent from the
/// constant polynomial `b`.
Polynomial poly_arith(PolyOp op, const Polynomial& a, const Polynomial& b);

/// Ring homomorphism fixing coefficients and sending each variable to its
/// image; variables without an image map to themselves.
Polynomial substitute(const Polynomial& f, const std::map<JetVariable, Polynomial>& images);

struct WeightInfo {
  bool is_homogeneous = true;
  /// Unset for the zero polynomial, which is homogeneous of every weight.
  std::optional<std::uint64_t> weight;
};

WeightInfo weighted_degree_info(const Polynomial& f);

/// Formal partial derivative with respect to `v`.
Polynomial partial_derivative(const Polynomial& f, const JetVariable& v);

/// Applies the canonical coefficient map into `target`, dropping vanishing
/// terms.  Throws DomainError when there is no such map.
Polynomial map_coefficients(const Polynomial& f, const CoefficientRing& target);

}  // namespace jets
