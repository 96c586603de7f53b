#include "jets/coefficient.hpp"

#include "jets/error.hpp"

namespace jets {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

CoefficientRing CoefficientRing::prime_field(std::uint64_t p) {
  if (p < 2 || p >= (std::uint64_t{1} << 31) || !is_prime(p))
    throw DomainError("prime field characteristic must be a prime in [2, 2^31), got " +
                      std::to_string(p));
  return CoefficientRing(Kind::prime_field, static_cast<std::uint32_t>(p));
}

std::string CoefficientRing::name() const {
  switch (kind_) {
    case Kind::rationals: return "QQ";
    case Kind::integers: return "ZZ";
    case Kind::prime_field: return "F_" + std::to_string(p_);
  }
  return "?";
}

Coeff CoefficientRing::reduce(const mpz_class& value) const {
  if (kind_ != Kind::prime_field) return Coeff(value);
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), p_);
  return Coeff(r);
}

Coeff CoefficientRing::from_integer(const mpz_class& value) const { return reduce(value); }

Coeff CoefficientRing::from_rational(const mpq_class& value) const {
  mpq_class v = value;
  v.canonicalize();
  switch (kind_) {
    case Kind::rationals: return v;
    case Kind::integers:
      if (v.get_den() != 1)
        throw DomainError("coefficient " + v.get_str() + " is not an integer");
      return v;
    case Kind::prime_field: {
      mpz_class den;
      mpz_fdiv_r_ui(den.get_mpz_t(), v.get_den_mpz_t(), p_);
      if (den == 0)
        throw DomainError("coefficient " + v.get_str() + " has a denominator divisible by " +
                          std::to_string(p_));
      mpz_class inv;
      mpz_class modulus(p_);
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
      return reduce(mpz_class(v.get_num() * inv));
    }
  }
  return v;
}

Coeff CoefficientRing::add(const Coeff& a, const Coeff& b) const {
  if (kind_ == Kind::prime_field) return reduce(mpz_class(a.get_num() + b.get_num()));
  return a + b;
}

Coeff CoefficientRing::sub(const Coeff& a, const Coeff& b) const {
  if (kind_ == Kind::prime_field) return reduce(mpz_class(a.get_num() - b.get_num()));
  return a - b;
}

Coeff CoefficientRing::mul(const Coeff& a, const Coeff& b) const {
  if (kind_ == Kind::prime_field) return reduce(mpz_class(a.get_num() * b.get_num()));
  return a * b;
}

Coeff CoefficientRing::neg(const Coeff& a) const {
  if (kind_ == Kind::prime_field) return reduce(mpz_class(-a.get_num()));
  return -a;
}

Coeff CoefficientRing::inv(const Coeff& a) const {
  if (a == 0) throw DomainError("division by zero in " + name());
  switch (kind_) {
    case Kind::rationals: return 1 / a;
    case Kind::integers:
      if (abs(a) != 1) throw DomainError(a.get_str() + " is not a unit in ZZ");
      return a;
    case Kind::prime_field: {
      mpz_class inv;
      mpz_class modulus(p_);
      mpz_invert(inv.get_mpz_t(), a.get_num_mpz_t(), modulus.get_mpz_t());
      return Coeff(inv);
    }
  }
  return a;
}

std::uint32_t CoefficientRing::residue(const Coeff& a) const {
  if (kind_ != Kind::prime_field) throw DomainError("residue() requires a prime field");
  return static_cast<std::uint32_t>(a.get_num().get_ui());
}

std::optional<Coeff> map_coefficient(const Coeff& value, const CoefficientRing& from,
                                     const CoefficientRing& to) {
  using K = CoefficientRing::Kind;
  if (from == to) return value;
  if (from.kind() == K::prime_field) return std::nullopt;
  if (to.kind() == K::integers) return std::nullopt;
  try {
    return to.from_rational(value);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

std::string coeff_to_string(const Coeff& value) { return value.get_str(); }

}  // namespace jets
