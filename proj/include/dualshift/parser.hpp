// Parser for `.mj` sources. Leading `//` comment blocks attach to the
// following declaration or member; other comments are discarded.

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "dualshift/ast.hpp"

namespace dualshift {

using ParseResult = std::variant<Program, std::vector<Diagnostic>>;

ParseResult parse(const std::string& source, const std::string& source_name = "<input>");

// Parses a single expression (used for CLI entry points and fragments).
std::variant<ExprPtr, std::vector<Diagnostic>> parseExpr(const std::string& source);

}  // namespace dualshift
