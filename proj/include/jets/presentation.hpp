#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "jets/parser.hpp"
#include "jets/polynomial.hpp"

namespace jets {

/// Finitely presented algebra: ring[generators] / (relations), optionally over
/// a relative base whose generator symbols are listed in `constants`.
///
/// A plain algebra has jet_order 0 and only order-0 generators.  Jet
/// presentations carry every x^{(k)}, k <= jet_order, as a generator.
/// `tower`, when set, is the inner presentation B of a tower A -> B -> C whose
/// generators are this presentation's constants.
struct Presentation {
  CoefficientRing ring = CoefficientRing::rationals();
  std::vector<std::string> constants;
  std::vector<JetVariable> generators;
  std::vector<Polynomial> relations;
  std::uint32_t jet_order = 0;
  std::shared_ptr<const Presentation> tower;

  /// Declared base names: generator bases and constants.
  VariableScope scope() const;
  /// Generators of order 0, in declaration order.
  std::vector<JetVariable> base_generators() const;
  bool has_generator(const JetVariable& v) const;
  /// Position in `generators`; throws DomainError when absent.
  std::size_t index_of(const JetVariable& v) const;

  Polynomial parse(std::string_view text) const { return parse_poly(text, scope(), ring); }

  /// Checks names and that relations only mention generators and constants.
  /// Throws DomainError.
  void validate() const;

  std::string to_string() const;
};

/// Builds and validates a plain (jet order 0) presentation from text.
Presentation make_presentation(const CoefficientRing& ring, std::vector<std::string> variables,
                               const std::vector<std::string>& relations,
                               std::vector<std::string> constants = {});

}  // namespace jets
