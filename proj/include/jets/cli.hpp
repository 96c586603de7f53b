#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "jets/presentation.hpp"

namespace jets::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_check_failed = 1,
  exit_parse_error = 2,
  exit_semantic_error = 3,
  exit_budget_exceeded = 4,
};

/// Runs jetcalc on argv-style arguments; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Presentation document: a JSON object with keys ring ("QQ", "ZZ" or
/// {"Fp": p}), constants, variables, relations and an optional nested tower.
/// Throws ParseError on malformed documents and unknown keys, DomainError on
/// invalid presentations.
Presentation parse_presentation_document(std::string_view text);
Presentation load_presentation(const std::string& path);

/// Inverse of parse_presentation_document for plain presentations and towers.
std::string presentation_document(const Presentation& p);

}  // namespace jets::cli
