#include "jets/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "jets/error.hpp"

namespace jets {

MonomialOrder MonomialOrder::grevlex(std::vector<JetVariable> vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return MonomialOrder{Kind::grevlex, std::move(vars)};
}

MonomialOrder MonomialOrder::lex(std::vector<JetVariable> vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return MonomialOrder{Kind::lex, std::move(vars)};
}

MonomialOrder MonomialOrder::grevlex_for(std::span<const Polynomial> polys) {
  std::set<JetVariable> all;
  for (const auto& p : polys) {
    auto vs = p.variables();
    all.insert(vs.begin(), vs.end());
  }
  return grevlex(std::vector<JetVariable>(all.begin(), all.end()));
}

namespace {

using Exponents = std::vector<std::uint32_t>;

struct Term {
  Exponents exp;
  Coeff coeff;
};

/// Terms sorted from the leading one down.
using Dense = std::vector<Term>;

bool greater_exponents(MonomialOrder::Kind kind, const Exponents& a, const Exponents& b) {
  if (kind == MonomialOrder::Kind::grevlex) {
    std::uint64_t da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

Exponents quotient(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

std::uint64_t total_degree(const Exponents& a) {
  std::uint64_t d = 0;
  for (auto e : a) d += e;
  return d;
}

class Engine {
 public:
  Engine(const MonomialOrder& order, const CoefficientRing& ring) : order_(order), ring_(ring) {
    for (std::size_t i = 0; i < order.variables.size(); ++i) index_.emplace(order.variables[i], i);
  }

  bool greater(const Exponents& a, const Exponents& b) const {
    return greater_exponents(order_.kind, a, b);
  }

  Dense to_dense(const Polynomial& f) const {
    if (!(f.ring() == ring_))
      throw RingMismatch("polynomial over " + f.ring().name() + ", basis over " + ring_.name());
    Dense out;
    out.reserve(f.size());
    for (const auto& [m, c] : f.terms()) {
      Exponents e(order_.variables.size(), 0);
      for (const auto& [v, k] : m.factors()) {
        auto it = index_.find(v);
        if (it == index_.end())
          throw DomainError("variable " + v.name() + " is not covered by the monomial order");
        e[it->second] = k;
      }
      out.push_back({std::move(e), c});
    }
    std::sort(out.begin(), out.end(),
              [this](const Term& a, const Term& b) { return greater(a.exp, b.exp); });
    return out;
  }

  Polynomial to_sparse(const Dense& d) const {
    Polynomial p(ring_);
    for (const auto& t : d) {
      std::vector<Monomial::Factor> factors;
      for (std::size_t i = 0; i < t.exp.size(); ++i)
        if (t.exp[i]) factors.emplace_back(order_.variables[i], t.exp[i]);
      p += Polynomial::term(ring_, Monomial(std::move(factors)), t.coeff);
    }
    return p;
  }

  /// a - c * x^shift * g, with a taken from index `from` on.
  Dense sub_scaled(const Dense& a, std::size_t from, const Coeff& c, const Exponents& shift,
                   const Dense& g) const {
    Dense out;
    out.reserve(a.size() - from + g.size());
    std::size_t i = from, j = 0;
    Exponents shifted;
    auto shifted_exp = [&](std::size_t k) {
      shifted = g[k].exp;
      for (std::size_t v = 0; v < shifted.size(); ++v) shifted[v] += shift[v];
      return shifted;
    };
    Exponents gj;
    if (j < g.size()) gj = shifted_exp(j);
    while (i < a.size() || j < g.size()) {
      if (j == g.size() || (i < a.size() && greater(a[i].exp, gj))) {
        out.push_back(a[i++]);
      } else if (i == a.size() || greater(gj, a[i].exp)) {
        Coeff v = ring_.neg(ring_.mul(c, g[j].coeff));
        if (v != 0) out.push_back({gj, std::move(v)});
        if (++j < g.size()) gj = shifted_exp(j);
      } else {
        Coeff v = ring_.sub(a[i].coeff, ring_.mul(c, g[j].coeff));
        if (v != 0) out.push_back({a[i].exp, std::move(v)});
        ++i;
        if (++j < g.size()) gj = shifted_exp(j);
      }
    }
    return out;
  }

  void make_monic(Dense& d) const {
    if (d.empty()) return;
    const Coeff inv = ring_.inv(d.front().coeff);
    for (auto& t : d) t.coeff = ring_.mul(t.coeff, inv);
  }

  /// Full reduction of f by the monic polynomials in `basis` (skipping `skip`).
  Dense reduce(Dense f, const std::vector<Dense>& basis, std::size_t skip = SIZE_MAX) const {
    Dense remainder;
    std::size_t pos = 0;
    while (pos < f.size()) {
      const Term& lead = f[pos];
      const Dense* divisor = nullptr;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (k == skip || basis[k].empty()) continue;
        if (divides(basis[k].front().exp, lead.exp)) {
          divisor = &basis[k];
          break;
        }
      }
      if (!divisor) {
        remainder.push_back(lead);
        ++pos;
        continue;
      }
      const Exponents shift = quotient(lead.exp, divisor->front().exp);
      f = sub_scaled(f, pos, lead.coeff, shift, *divisor);
      pos = 0;
    }
    return remainder;
  }

  Dense s_polynomial(const Dense& a, const Dense& b) const {
    const Exponents l = lcm(a.front().exp, b.front().exp);
    const Exponents sa = quotient(l, a.front().exp);
    Dense scaled_a;
    scaled_a.reserve(a.size());
    for (const auto& t : a) {
      Exponents e = t.exp;
      for (std::size_t v = 0; v < e.size(); ++v) e[v] += sa[v];
      scaled_a.push_back({std::move(e), t.coeff});
    }
    return sub_scaled(scaled_a, 0, ring_.one(), quotient(l, b.front().exp), b);
  }

  const CoefficientRing& ring() const { return ring_; }

 private:
  const MonomialOrder& order_;
  CoefficientRing ring_;
  std::map<JetVariable, std::size_t> index_;
};

void require_field(const CoefficientRing& ring) {
  if (!ring.is_field())
    throw DomainError("Groebner bases need field coefficients, got " + ring.name());
}

}  // namespace

bool MonomialOrder::greater(const Monomial& a, const Monomial& b) const {
  Exponents ea(variables.size(), 0), eb(variables.size(), 0);
  auto fill = [this](const Monomial& m, Exponents& e) {
    for (const auto& [v, k] : m.factors()) {
      auto it = std::lower_bound(variables.begin(), variables.end(), v);
      if (it == variables.end() || *it != v)
        throw DomainError("variable " + v.name() + " is not covered by the monomial order");
      e[static_cast<std::size_t>(it - variables.begin())] = k;
    }
  };
  fill(a, ea);
  fill(b, eb);
  return greater_exponents(kind, ea, eb);
}

bool GroebnerBasis::is_unit_ideal() const {
  return basis_.size() == 1 && basis_.front().is_constant() && !basis_.front().is_zero();
}

Monomial leading_monomial(const Polynomial& f, const MonomialOrder& order) {
  if (f.is_zero()) throw DomainError("the zero polynomial has no leading monomial");
  const Monomial* best = nullptr;
  for (const auto& [m, c] : f.terms())
    if (!best || order.greater(m, *best)) best = &m;
  return *best;
}

GroebnerBasis buchberger(std::span<const Polynomial> gens, const MonomialOrder& order,
                         const BuchbergerOptions& options) {
  CoefficientRing ring = gens.empty() ? CoefficientRing::rationals() : gens.front().ring();
  require_field(ring);
  Engine engine(order, ring);

  std::vector<Dense> basis;
  for (const auto& g : gens) {
    Dense d = engine.to_dense(g);
    if (d.empty()) continue;
    engine.make_monic(d);
    basis.push_back(std::move(d));
  }

  // Critical pairs, processed smallest lcm degree first.
  using Pair = std::tuple<std::uint64_t, std::size_t, std::size_t>;
  std::set<Pair> pairs;
  auto add_pairs_for = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i)
      pairs.emplace(total_degree(lcm(basis[i].front().exp, basis[j].front().exp)), j, i);
  };
  for (std::size_t j = 0; j < basis.size(); ++j) add_pairs_for(j);

  std::uint64_t processed = 0;
  while (!pairs.empty()) {
    auto [deg, j, i] = *pairs.begin();
    pairs.erase(pairs.begin());
    if (++processed > options.max_pairs)
      throw BudgetExceeded("Buchberger pair bound of " + std::to_string(options.max_pairs) +
                           " exceeded");
    if (coprime(basis[i].front().exp, basis[j].front().exp)) continue;
    Dense r = engine.reduce(engine.s_polynomial(basis[i], basis[j]), basis);
    if (r.empty()) continue;
    engine.make_monic(r);
    basis.push_back(std::move(r));
    add_pairs_for(basis.size() - 1);
  }

  // Minimalize: drop elements whose leading monomial is divisible by another's.
  std::vector<Dense> minimal;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    bool redundant = false;
    for (std::size_t l = 0; l < basis.size() && !redundant; ++l) {
      if (l == k) continue;
      const auto& a = basis[l].front().exp;
      const auto& b = basis[k].front().exp;
      if (divides(a, b) && (a != b || l < k)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[k]);
  }
  // Interreduce tails.
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    Dense tail(minimal[k].begin() + 1, minimal[k].end());
    Dense reduced = engine.reduce(std::move(tail), minimal, k);
    reduced.insert(reduced.begin(), minimal[k].front());
    minimal[k] = std::move(reduced);
  }
  std::sort(minimal.begin(), minimal.end(), [&engine](const Dense& a, const Dense& b) {
    return engine.greater(a.front().exp, b.front().exp);
  });

  std::vector<Polynomial> out;
  for (const auto& d : minimal) out.push_back(engine.to_sparse(d));
  return GroebnerBasis(order, ring, std::move(out));
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb) {
  Engine engine(gb.order(), gb.ring());
  std::vector<Dense> basis;
  for (const auto& g : gb.basis()) basis.push_back(engine.to_dense(g));
  return engine.to_sparse(engine.reduce(engine.to_dense(f), basis));
}

bool satisfies_buchberger_criterion(const GroebnerBasis& gb) {
  Engine engine(gb.order(), gb.ring());
  std::vector<Dense> basis;
  for (const auto& g : gb.basis()) basis.push_back(engine.to_dense(g));
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!engine.reduce(engine.s_polynomial(basis[i], basis[j]), basis).empty()) return false;
  return true;
}

namespace {

MonomialOrder default_order(std::initializer_list<std::span<const Polynomial>> groups) {
  std::vector<Polynomial> all;
  for (auto g : groups) all.insert(all.end(), g.begin(), g.end());
  return MonomialOrder::grevlex_for(all);
}

}  // namespace

bool ideal_membership(const Polynomial& f, std::span<const Polynomial> gens,
                      const MonomialOrder* order, const BuchbergerOptions& options) {
  require_field(f.ring());
  if (f.is_zero()) return true;
  const MonomialOrder chosen =
      order ? *order : default_order({std::span<const Polynomial>(&f, 1), gens});
  return normal_form(f, buchberger(gens, chosen, options)).is_zero();
}

bool ideal_equal(std::span<const Polynomial> gens1, std::span<const Polynomial> gens2,
                 const MonomialOrder* order, const BuchbergerOptions& options) {
  const MonomialOrder chosen = order ? *order : default_order({gens1, gens2});
  if (!gens1.empty()) require_field(gens1.front().ring());
  if (!gens2.empty()) require_field(gens2.front().ring());
  auto contained = [&](std::span<const Polynomial> small, std::span<const Polynomial> big) {
    bool any_nonzero = std::any_of(small.begin(), small.end(),
                                   [](const Polynomial& p) { return !p.is_zero(); });
    if (!any_nonzero) return true;
    const GroebnerBasis gb = buchberger(big, chosen, options);
    return std::all_of(small.begin(), small.end(),
                       [&gb](const Polynomial& p) { return normal_form(p, gb).is_zero(); });
  };
  return contained(gens1, gens2) && contained(gens2, gens1);
}

std::vector<Polynomial> power_ideal(std::span<const Polynomial> gens, std::uint32_t m) {
  if (gens.empty()) return {};
  const CoefficientRing ring = gens.front().ring();
  if (m == 0) return {Polynomial::constant(ring, 1)};
  std::vector<Polynomial> out;
  // Multisets of size m as non-decreasing index sequences.
  std::vector<std::size_t> idx(m, 0);
  for (;;) {
    Polynomial prod = Polynomial::constant(ring, 1);
    for (auto k : idx) prod *= gens[k];
    if (std::find(out.begin(), out.end(), prod) == out.end()) out.push_back(std::move(prod));
    std::size_t pos = m;
    while (pos > 0 && idx[pos - 1] == gens.size() - 1) --pos;
    if (pos == 0) break;
    const std::size_t next = idx[pos - 1] + 1;
    for (std::size_t k = pos - 1; k < m; ++k) idx[k] = next;
  }
  return out;
}

}  // namespace jets
