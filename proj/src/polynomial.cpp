#include "jets/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "jets/error.hpp"

namespace jets {

std::string JetVariable::name() const {
  if (order == 0) return base;
  return "d" + std::to_string(order) + base;
}

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.first < b.first; });
  for (auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!factors_.empty() && factors_.back().first == v)
      factors_.back().second += e;
    else
      factors_.emplace_back(std::move(v), e);
  }
}

Monomial Monomial::of(const JetVariable& v, std::uint32_t exponent) {
  return Monomial({{v, exponent}});
}

std::uint32_t Monomial::exponent(const JetVariable& v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                             [](const Factor& f, const JetVariable& x) { return f.first < x; });
  return (it != factors_.end() && it->first == v) ? it->second : 0;
}

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

std::uint64_t Monomial::weighted_degree() const {
  std::uint64_t d = 0;
  for (const auto& f : factors_) d += std::uint64_t{f.second} * f.first.weight();
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  auto it = other.factors_.begin();
  for (const auto& [v, e] : factors_) {
    while (it != other.factors_.end() && it->first < v) ++it;
    if (it == other.factors_.end() || it->first != v || it->second < e) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<Factor> merged;
  merged.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      merged.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      merged.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  Monomial m;
  m.factors_ = std::move(merged);
  return m;
}

bool StorageOrder::operator()(const Monomial& a, const Monomial& b) const {
  if (auto wa = a.weighted_degree(), wb = b.weighted_degree(); wa != wb) return wa > wb;
  if (auto da = a.degree(), db = b.degree(); da != db) return da > db;
  // Reverse lexicographic: at the last variable where the exponents differ,
  // the smaller exponent wins.
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  auto i = fa.rbegin();
  auto j = fb.rbegin();
  while (i != fa.rend() && j != fb.rend()) {
    if (i->first == j->first) {
      if (i->second != j->second) return i->second < j->second;
      ++i;
      ++j;
    } else {
      return j->first > i->first;
    }
  }
  return i == fa.rend() && j != fb.rend();
}

Polynomial Polynomial::constant(const CoefficientRing& ring, const Coeff& value) {
  return term(ring, Monomial(), value);
}

Polynomial Polynomial::variable(const CoefficientRing& ring, const JetVariable& v) {
  return term(ring, Monomial::of(v), ring.one());
}

Polynomial Polynomial::term(const CoefficientRing& ring, const Monomial& m, const Coeff& c) {
  Polynomial p(ring);
  p.add_term(m, ring.from_rational(c));
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Coeff Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Coeff(0) : it->second;
}

std::set<JetVariable> Polynomial::variables() const {
  std::set<JetVariable> out;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) out.insert(f.first);
  return out;
}

std::uint64_t Polynomial::degree() const {
  std::uint64_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void Polynomial::add_term(const Monomial& m, const Coeff& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second = ring_.add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

void Polynomial::require_same_ring(const Polynomial& other) const {
  if (!(ring_ == other.ring_))
    throw RingMismatch("coefficient rings differ: " + ring_.name() + " vs " +
                       other.ring_.name());
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  require_same_ring(other);
  Polynomial r = *this;
  for (const auto& [m, c] : other.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  require_same_ring(other);
  Polynomial r = *this;
  for (const auto& [m, c] : other.terms_) r.add_term(m, ring_.neg(c));
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(ring_);
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, ring_.neg(c));
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  require_same_ring(other);
  Polynomial r(ring_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) r.add_term(ma * mb, ring_.mul(ca, cb));
  return r;
}

Polynomial Polynomial::scaled(const Coeff& c) const {
  Polynomial r(ring_);
  const Coeff k = ring_.from_rational(c);
  for (const auto& [m, a] : terms_) r.add_term(m, ring_.mul(a, k));
  return r;
}

Polynomial Polynomial::pow(std::uint32_t exponent) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

bool Polynomial::operator==(const Polynomial& other) const {
  return ring_ == other.ring_ && terms_ == other.terms_;
}

namespace {

std::string factor_text(const JetVariable& v, std::uint32_t e) {
  if (e == 1) return v.name();
  if (v.order == 0) return v.name() + "^" + std::to_string(e);
  return "(" + v.name() + ")^" + std::to_string(e);
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    const Coeff magnitude = negative ? Coeff(-c) : c;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    std::string body;
    for (const auto& [v, e] : m.factors()) {
      if (!body.empty()) body += "*";
      body += factor_text(v, e);
    }
    if (body.empty())
      os << magnitude.get_str();
    else if (magnitude == 1)
      os << body;
    else
      os << magnitude.get_str() << "*" << body;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

Polynomial poly_arith(PolyOp op, const Polynomial& a, const Polynomial& b) {
  switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::sub: return a - b;
    case PolyOp::mul: return a * b;
    case PolyOp::pow: {
      if (!b.is_constant()) throw DomainError("exponent must be a constant");
      const Coeff e = b.coefficient(Monomial());
      if (e < 0 || e.get_den() != 1 || !e.get_num().fits_uint_p())
        throw DomainError("exponent must be a non-negative integer");
      return a.pow(static_cast<std::uint32_t>(e.get_num().get_ui()));
    }
  }
  return a;
}

Polynomial substitute(const Polynomial& f, const std::map<JetVariable, Polynomial>& images) {
  for (const auto& [v, img] : images)
    if (!(img.ring() == f.ring()))
      throw RingMismatch("image of " + v.name() + " lives over " + img.ring().name() +
                         ", expected " + f.ring().name());
  const CoefficientRing& ring = f.ring();
  std::map<std::pair<JetVariable, std::uint32_t>, Polynomial> powers;
  auto power_of = [&](const JetVariable& v, std::uint32_t e) -> const Polynomial& {
    auto key = std::make_pair(v, e);
    if (auto it = powers.find(key); it != powers.end()) return it->second;
    auto img = images.find(v);
    Polynomial base = img == images.end() ? Polynomial::variable(ring, v) : img->second;
    return powers.emplace(key, base.pow(e)).first->second;
  };
  Polynomial result(ring);
  for (const auto& [m, c] : f.terms()) {
    Polynomial t = Polynomial::constant(ring, c);
    for (const auto& [v, e] : m.factors()) {
      t = t * power_of(v, e);
      if (t.is_zero()) break;
    }
    result += t;
  }
  return result;
}

WeightInfo weighted_degree_info(const Polynomial& f) {
  WeightInfo info;
  for (const auto& [m, c] : f.terms()) {
    const auto w = m.weighted_degree();
    if (!info.weight) {
      info.weight = w;
    } else if (*info.weight != w) {
      return WeightInfo{false, std::nullopt};
    }
  }
  return info;
}

Polynomial partial_derivative(const Polynomial& f, const JetVariable& v) {
  const CoefficientRing& ring = f.ring();
  Polynomial r(ring);
  for (const auto& [m, c] : f.terms()) {
    const std::uint32_t e = m.exponent(v);
    if (e == 0) continue;
    std::vector<Monomial::Factor> factors = m.factors();
    for (auto& fac : factors)
      if (fac.first == v) --fac.second;
    r += Polynomial::term(ring, Monomial(std::move(factors)), ring.mul(c, ring.from_int(e)));
  }
  return r;
}

Polynomial map_coefficients(const Polynomial& f, const CoefficientRing& target) {
  Polynomial r(target);
  for (const auto& [m, c] : f.terms()) {
    auto image = map_coefficient(c, f.ring(), target);
    if (!image)
      throw DomainError("no canonical map " + f.ring().name() + " -> " + target.name() +
                        " for coefficient " + c.get_str());
    r += Polynomial::term(target, m, *image);
  }
  return r;
}

}  // namespace jets
