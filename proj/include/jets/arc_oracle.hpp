#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jets/jet_presentation.hpp"
#include "jets/presentation.hpp"
#include "jets/series.hpp"

namespace jets {

/// F_p (truncation 0) or F_p[t]/(t^{m+1}) (truncation m).
class FiniteRing {
 public:
  static FiniteRing prime_field(std::uint32_t p);
  static FiniteRing truncated(std::uint32_t p, std::uint32_t m);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t truncation() const noexcept { return m_; }
  bool is_field() const noexcept { return m_ == 0; }
  /// p^{m+1}; throws BudgetExceeded when that overflows 64 bits.
  std::uint64_t size() const;
  /// Every element, in canonical order: coefficient vectors read as base-p
  /// numerals with the t^0 digit most significant.
  std::vector<TruncatedSeries<Residue>> elements() const;

 private:
  FiniteRing(std::uint32_t p, std::uint32_t m) : p_(p), m_(m) {}
  std::uint32_t p_;
  std::uint32_t m_;
};

struct EnumerationBudget {
  /// Maximum number of candidate (partial) assignments examined.
  std::uint64_t max_candidates = 10'000'000;
};

/// A ring map from a presentation into a finite ring, as values for the
/// generators in declaration order.  F_p points use truncation-0 series.
struct HomPoint {
  std::vector<TruncatedSeries<Residue>> assignment;

  bool operator==(const HomPoint&) const = default;
};

/// All assignments of the generators satisfying every relation, in
/// lexicographic order of the canonical element order.  Presentations with
/// constants are rejected (DomainError); coefficients over QQ/ZZ are mapped to
/// F_p first.  Throws BudgetExceeded.
std::vector<HomPoint> enumerate_homs(const Presentation& p, const FiniteRing& target,
                                     const EnumerationBudget& budget = {});

/// All algebra maps B -> F_q[t]/(t^{m+1}) of a plain presentation.
std::vector<HomPoint> enumerate_arcs(const Presentation& p, std::uint32_t q, std::uint32_t m,
                                     const EnumerationBudget& budget = {});

/// x -> sum_k point(x^{(k)}) t^k.  `jet` must be jet_presentation(base, m).
HomPoint jet_point_to_arc(const Presentation& base, const Presentation& jet, const HomPoint& point);
/// Reads x^{(k)} off the t^k coefficient of the arc.
HomPoint arc_to_jet_point(const Presentation& base, const Presentation& jet, const HomPoint& arc);

/// Points as plain residue vectors (truncation-0 assignments only).
std::vector<std::uint32_t> residues(const HomPoint& point);
HomPoint field_point(const std::vector<std::uint32_t>& values, std::uint32_t p);

struct DesideratumReport {
  std::uint64_t jet_points = 0;
  std::uint64_t arcs = 0;
  bool counts_agree = false;
  /// Every jet point maps to an enumerated arc and back to itself.
  bool jet_to_arc_to_jet_identity = false;
  /// Every arc maps to an enumerated jet point and back to itself.
  bool arc_to_jet_to_arc_identity = false;
  bool holds() const { return counts_agree && jet_to_arc_to_jet_identity && arc_to_jet_to_arc_identity; }
};

DesideratumReport desideratum_check(const Presentation& p, std::uint32_t q, std::uint32_t m,
                                    const EnumerationBudget& budget = {});

/// Number of F_q-points; q must be prime.
std::uint64_t count_points(const Presentation& p, std::uint32_t q,
                           const EnumerationBudget& budget = {});

struct SurjectivityReport {
  bool surjective = false;
  std::uint64_t source_points = 0;  // |J_j(F_q)|
  std::uint64_t target_points = 0;  // |J_i(F_q)|
  std::uint64_t image_points = 0;
  /// A J_i point with no preimage, when not surjective.
  std::optional<std::vector<std::uint32_t>> witness;
  /// Generators of J_i, for labeling the witness.
  std::vector<JetVariable> target_generators;
};

/// Is the point map J_j(F_q) -> J_i(F_q) (drop orders above i) onto?
SurjectivityReport truncation_surjectivity(const Presentation& p, std::uint32_t i, std::uint32_t j,
                                           std::uint32_t q, const EnumerationBudget& budget = {});

struct ImageReport {
  std::uint64_t source_points = 0;  // jets of phi's target (the domain of the point map)
  std::uint64_t target_points = 0;  // jets of phi's source
  std::vector<std::vector<std::uint32_t>> image;
  /// Up to `sample` target jet points outside the image.
  std::vector<std::vector<std::uint32_t>> non_image_sample;
  std::vector<JetVariable> target_generators;
  bool surjective() const { return image.size() == target_points; }
};

/// Point map J_m(Spec B') -> J_m(Spec B) of an algebra map phi: B -> B', by
/// composing arcs of B' with phi.
ImageReport jet_map_image(const GradedAlgebraMap& phi, std::uint32_t m, std::uint32_t q,
                          const EnumerationBudget& budget = {}, std::size_t sample = 10);

struct Orbit {
  /// Smallest point of the orbit (lexicographic residues).
  std::vector<std::uint32_t> representative;
  std::uint64_t size = 0;
  std::uint64_t stabilizer = 0;
};

struct OrbitReport {
  std::uint64_t points = 0;              // all F_q points
  std::uint64_t zero_section_points = 0;  // weight-positive coordinates all zero
  std::vector<Orbit> orbits;
  /// Every dilated point satisfied the relations again.
  bool dilation_preserves_relations = false;
  /// Every orbit size divides q - 1.
  bool sizes_divide_group_order = false;
  std::size_t orbit_count() const { return orbits.size(); }
};

/// Orbits of z in F_q^* acting by v -> z^{weight} v on the points off the
/// zero section.
OrbitReport gm_orbits(const Presentation& p, std::uint32_t q, const EnumerationBudget& budget = {});

/// Dilates a point: coordinate of weight w is multiplied by z^w.
std::vector<std::uint32_t> dilate_point(const Presentation& p, const std::vector<std::uint32_t>& point,
                                        std::uint32_t z, std::uint32_t q);

/// Does the F_q point satisfy every relation of p?
bool satisfies_relations(const Presentation& p, const std::vector<std::uint32_t>& point, std::uint32_t q);

/// Number of arcs of p whose image of s has an invertible constant term.
std::uint64_t count_arcs_with_unit(const Presentation& p, const Polynomial& s, std::uint32_t q,
                                   std::uint32_t m, const EnumerationBudget& budget = {});

/// Jacobian criterion at an F_q point of a plain presentation: does the
/// matrix of partials of the relations have rank equal to their number?
bool jacobian_has_full_rank(const Presentation& p, const std::vector<std::uint32_t>& point,
                            std::uint32_t q);

/// Coefficient ring F_q copy of p (coefficients mapped from QQ/ZZ).
Presentation reduce_mod(const Presentation& p, std::uint32_t q);

}  // namespace jets
