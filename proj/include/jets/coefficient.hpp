#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace jets {

/// Exact coefficient value.  Which values are legal depends on the ring:
/// integers carry denominator 1 and prime-field residues live in [0, p).
using Coeff = mpq_class;

/// The ring of scalars a polynomial is defined over: QQ, ZZ or F_p.
class CoefficientRing {
 public:
  enum class Kind { rationals, integers, prime_field };

  static CoefficientRing rationals() { return CoefficientRing(Kind::rationals, 0); }
  static CoefficientRing integers() { return CoefficientRing(Kind::integers, 0); }
  /// Throws DomainError unless 2 <= p < 2^31 and p is prime.
  static CoefficientRing prime_field(std::uint64_t p);

  Kind kind() const noexcept { return kind_; }
  /// 0 for QQ and ZZ.
  std::uint32_t characteristic() const noexcept { return p_; }
  bool is_field() const noexcept { return kind_ != Kind::integers; }
  /// "QQ", "ZZ" or "F_p".
  std::string name() const;

  bool operator==(const CoefficientRing&) const = default;

  /// Canonical image of a rational number.  Throws DomainError when the
  /// value has no image (a fraction over ZZ, a denominator divisible by p).
  Coeff from_rational(const mpq_class& value) const;
  Coeff from_integer(const mpz_class& value) const;
  Coeff from_int(long value) const { return from_integer(mpz_class(value)); }

  Coeff zero() const { return Coeff(0); }
  Coeff one() const { return from_int(1); }

  Coeff add(const Coeff& a, const Coeff& b) const;
  Coeff sub(const Coeff& a, const Coeff& b) const;
  Coeff mul(const Coeff& a, const Coeff& b) const;
  Coeff neg(const Coeff& a) const;
  /// Throws DomainError for zero or for non-units of ZZ.
  Coeff inv(const Coeff& a) const;

  /// Residue of an F_p coefficient as a machine integer.
  std::uint32_t residue(const Coeff& a) const;

 private:
  CoefficientRing(Kind kind, std::uint32_t p) : kind_(kind), p_(p) {}
  Coeff reduce(const mpz_class& value) const;

  Kind kind_;
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

/// Canonical coefficient map between rings (ZZ -> QQ, ZZ -> F_p, QQ -> F_p,
/// and the identity).  Returns nullopt when no such map exists.
std::optional<Coeff> map_coefficient(const Coeff& value, const CoefficientRing& from,
                                     const CoefficientRing& to);

std::string coeff_to_string(const Coeff& value);

}  // namespace jets
