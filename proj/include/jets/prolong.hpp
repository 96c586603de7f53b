#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "jets/polynomial.hpp"
#include "jets/presentation.hpp"
#include "jets/series.hpp"

namespace jets {

/// Which order-0 symbols get differentiated and which are killed by every
/// d_i with i >= 1.  Constants realize the image of the base ring (or of the
/// middle algebra B in a tower A -> B -> C).
class ProlongationContext {
 public:
  /// Throws DomainError if `active` and `constants` intersect.
  ProlongationContext(std::uint32_t jet_order, std::set<std::string> active,
                      std::set<std::string> constants = {});

  /// Base generators of `p` are active, its constants are constants.
  static ProlongationContext for_presentation(const Presentation& p, std::uint32_t jet_order);

  std::uint32_t jet_order() const noexcept { return jet_order_; }
  const std::set<std::string>& active() const noexcept { return active_; }
  const std::set<std::string>& constants() const noexcept { return constants_; }

 private:
  std::uint32_t jet_order_;
  std::set<std::string> active_;
  std::set<std::string> constants_;
};

/// d_k f: the t^k coefficient of f after substituting x -> sum_j x^{(j)} t^j
/// for every active x (constants stay put).  Throws DomainError when
/// k > jet_order or f mentions a symbol that is neither an active order-0
/// variable nor a constant.
Polynomial prolong(const Polynomial& f, std::uint32_t k, const ProlongationContext& ctx);

/// d_0 f, ..., d_m f from a single arc substitution.
std::vector<Polynomial> prolong_all(const Polynomial& f, const ProlongationContext& ctx);

/// The arc substitution itself, as an element of ring[vars][t]/(t^{m+1}).
TruncatedSeries<Polynomial> prolongation_series(const Polynomial& f,
                                                const ProlongationContext& ctx);

struct LeibnizVerdict {
  bool holds = false;
  /// d_k(fg) - sum_{i+j=k} d_i f * d_j g; zero iff `holds`.
  Polynomial difference;
};

LeibnizVerdict leibniz_check(const Polynomial& f, const Polynomial& g, std::uint32_t k,
                             const ProlongationContext& ctx);

/// Arc x -> sum_i D_i(x) t^i over F_p, one series per generator or constant.
using FieldArc = std::map<std::string, TruncatedSeries<Residue>>;

/// A tuple (D_0, ..., D_m) from a presented algebra B into F_p, given by its
/// values on B's generators and constants.
struct HigherDerivation {
  std::uint32_t order = 0;
  Presentation source;
  std::uint32_t target_characteristic = 2;
  /// name -> (D_0(x), ..., D_m(x)), residues in [0, p).
  std::map<std::string, std::vector<std::uint32_t>> components;
};

struct DerivationVerdict {
  bool accepted = false;
  std::string reason;  // names the violated relation or axiom when rejected
};

/// Accepts iff the arc built from D is an algebra map B -> F_p[t]/(t^{m+1}):
/// D_i kills the constants for i >= 1 and every relation maps to 0.
DerivationVerdict check_higher_derivation(const HigherDerivation& d);

FieldArc derivation_to_arc(const HigherDerivation& d);
/// Reads D_i(x) back off the t^i coefficients.
HigherDerivation arc_to_derivation(const Presentation& source, const FieldArc& arc);

struct RoundTripVerdict {
  bool derivation_recovered = false;
  bool arc_recovered = false;
};

RoundTripVerdict derivation_arc_roundtrip(const HigherDerivation& d);

/// Evaluates `f` on an F_p-valued arc (every symbol of f must be assigned).
TruncatedSeries<Residue> evaluate_on_arc(const Polynomial& f, const FieldArc& arc,
                                         std::uint32_t p, std::size_t order);

}  // namespace jets
