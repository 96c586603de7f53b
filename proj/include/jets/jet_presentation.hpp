#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "jets/groebner.hpp"
#include "jets/presentation.hpp"
#include "jets/prolong.hpp"

namespace jets {

/// HS^m of a plain presentation: generators x^{(k)} for k = 0..m (grouped by
/// order), relations d_k f_j grouped by relation then k.  m = 0 returns the
/// input unchanged.
Presentation jet_presentation(const Presentation& base, std::uint32_t m);

/// HS^m_{C/B} for a tower presentation: B's generators (the constants of
/// `tower`) are killed by every d_i, i >= 1.  Throws DomainError on a name
/// collision between B- and C-generators.
Presentation relative_jet_presentation(const Presentation& tower, std::uint32_t m);

/// Algebra map source -> target given on generators.
struct GradedAlgebraMap {
  enum class WeightRule { preserving, dilating };

  Presentation source;
  Presentation target;
  std::map<JetVariable, Polynomial> images;
  WeightRule weight_rule = WeightRule::preserving;
  /// Dilation parameter: a formal constant name, or empty for a numeric z.
  std::string dilation_symbol;

  /// Image of an arbitrary source polynomial.
  Polynomial apply(const Polynomial& f) const { return substitute(f, images); }
};

/// Coefficient ring used for ideal certification: QQ for presentations over
/// ZZ, the ring itself otherwise.
CoefficientRing certification_ring(const CoefficientRing& ring);

/// Target relations over certification_ring.
std::vector<Polynomial> certification_ideal(const Presentation& target);

/// Empty when every source relation lands in the target's relation ideal;
/// otherwise the offending source relation.
std::optional<Polynomial> first_ill_defined_relation(const GradedAlgebraMap& map,
                                                     const BuchbergerOptions& options = {});

/// Throws DomainError naming the offending relation unless the map is
/// well-defined.
void certify(const GradedAlgebraMap& map, const BuchbergerOptions& options = {});

GradedAlgebraMap identity_map(const Presentation& p);
/// outer ∘ inner.  Throws DomainError unless inner.target matches outer.source
/// on generators.
GradedAlgebraMap compose(const GradedAlgebraMap& outer, const GradedAlgebraMap& inner);
/// Exact image equality on every source generator.
bool equal_on_generators(const GradedAlgebraMap& a, const GradedAlgebraMap& b);

/// Builds a plain algebra map from textual images ("x -> u^2").  Missing
/// generators map to themselves when the target has them.  Certified.
GradedAlgebraMap make_map(const Presentation& source, const Presentation& target,
                          const std::map<std::string, std::string>& images);

/// f_ij: HS^i -> HS^j, x^{(k)} -> x^{(k)}.
GradedAlgebraMap truncation_map(const Presentation& base, std::uint32_t i, std::uint32_t j);

/// HS^m -> B: x -> x, x^{(k)} -> 0 for k >= 1.
GradedAlgebraMap zero_section_map(const Presentation& base, std::uint32_t m);

/// x^{(j)} -> z^j x^{(j)} on HS^m.  With `symbol`, z is a fresh constant of the
/// target (HS^m[z]); otherwise z is the numeric `value`.
GradedAlgebraMap dilation_map(const Presentation& base, std::uint32_t m,
                              const std::optional<std::string>& symbol, const Coeff& value = 1);

/// HS^m_phi: x^{(k)} -> d_k phi(x).  Throws DomainError if phi is ill-defined.
GradedAlgebraMap induced_map(const GradedAlgebraMap& phi, std::uint32_t m);

struct ProductResult {
  Presentation product;
  bool jet_of_product_equals_product_of_jets = false;
  /// New names given to second-factor generators that collided.
  std::map<std::string, std::string> renamed;
};

ProductResult product_presentation(const Presentation& p1, const Presentation& p2,
                                   std::uint32_t m);

/// Adds a generator `inverse_name` with relation s*u - 1.
Presentation localize(const Presentation& p, const Polynomial& s,
                      const std::string& inverse_name = "u");

/// Substitutes field values for the order-0 generators of a jet presentation
/// and keeps the weight-positive part.  Throws DomainError when the point
/// violates a weight-0 relation.
Presentation fiber_presentation(const Presentation& jet,
                                const std::map<std::string, Coeff>& point);

struct FirstSequenceReport {
  bool holds = false;
  /// Kernel of HS^m_{C/A} -> HS^m_{C/B}, pulled back to the polynomial carrier.
  std::vector<Polynomial> kernel_generators;
  /// J_{C/A} plus d_i of B's generators, i = 1..m.
  std::vector<Polynomial> expected_generators;
  /// Whether the kernel vanishes modulo the relations of HS^m_{C/A}.
  bool kernel_is_zero = false;
};

/// Compares both ideals in the polynomial carrier of HS^m_{C/A}.  `tower` is
/// C with B's generators as constants and `tower.tower` set to B.
FirstSequenceReport first_sequence_check(const Presentation& tower, std::uint32_t m,
                                         const BuchbergerOptions& options = {});

/// The C/A presentation of a tower: B's and C's generators and relations.
Presentation flatten_tower(const Presentation& tower);

struct LineSheafDegree {
  /// m = 0: the projectivization is the empty scheme.
  bool empty_scheme = false;
  mpz_class degree;
};

/// lcm(1, ..., m).
LineSheafDegree gg_line_sheaf_degree(std::uint32_t m);

/// (d_m b) restricted to E = {x_e = 0}.  `ambient` must be a polynomial
/// algebra (no relations).  Throws DomainError when b is not in (E)^m or when
/// the survivor is not a degree-m form in the d1 of E's variables.
Polynomial leading_form_restriction(const Presentation& ambient, const Polynomial& b,
                                    const std::vector<std::string>& e_vars, std::uint32_t m,
                                    const BuchbergerOptions& options = {});

}  // namespace jets
