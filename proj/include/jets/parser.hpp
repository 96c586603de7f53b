#pragma once

#include <set>
#include <string>
#include <string_view>

#include "jets/polynomial.hpp"

namespace jets {

/// Base names an expression may mention.  A declared base `x` also admits its
/// jet symbols `d1x`, `d2x`, ... (with `d0x` meaning `x`).
using VariableScope = std::set<std::string>;

/// True for identifiers that could be confused with a jet symbol (`d` followed
/// by a digit); such names are rejected as base names.
bool looks_like_jet_symbol(std::string_view name);
bool is_identifier(std::string_view name);

/// Parses the ASCII expression grammar:
///
///   expr    := ['-'|'+'] term (('+'|'-') term)*
///   term    := power ('*' power)*
///   power   := primary ['^' integer]
///   primary := integer ['/' integer] | identifier | '(' expr ')' | '-' primary
///
/// Juxtaposition is not multiplication.  Throws ParseError (with byte
/// position) on malformed input or undeclared identifiers, and DomainError
/// when a coefficient has no image in `ring`.
Polynomial parse_poly(std::string_view text, const VariableScope& scope,
                      const CoefficientRing& ring);

}  // namespace jets
