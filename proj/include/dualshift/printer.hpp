#pragma once

#include <string>

#include "dualshift/ast.hpp"

namespace dualshift {

// Deterministic canonical layout: 4-space indent, one blank line between
// members and declarations, LF endings. parse(pretty(p)) == p.
std::string pretty(const Program& p);

std::string printType(const Type& t);
std::string printExpr(const ExprPtr& e);
std::string printStmt(const Stmt& s);

// One-line rendering of a method declaration (plan serialization, logs).
std::string printMethodInline(const MethodDecl& m);

// Reorders every class's members into fields, constructors, methods
// (stable within each group). Idempotent.
Program canonicalize(const Program& p);

}  // namespace dualshift
