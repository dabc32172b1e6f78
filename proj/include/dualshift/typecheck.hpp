// Name resolution and type checking for MiniObj programs.
// Nominal subtyping via extends/implements; one optional type parameter per
// interface (return positions only) and per method, bound at call sites.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dualshift/ast.hpp"

namespace dualshift {

// Reports every violation found; never aborts early.
std::vector<Diagnostic> typecheck(const Program& p);

// Checks an entry expression against a program (no `this`, no locals).
// On success the expression's static type is returned through `out_type`.
std::vector<Diagnostic> typecheckEntry(const Program& p, const ExprPtr& e,
                                       Type* out_type = nullptr);

// Checks one method body as if it were declared in `class_name`.
std::vector<Diagnostic> checkMethodBody(const Program& p, const std::string& class_name,
                                        const MethodDecl& m);

// Static resolution of a call expression: the declaration the call binds to.
struct ResolvedCall {
    std::string context;       // "Class.method" path of the enclosing body
    ExprPtr call;              // the Call node
    std::string owner;         // class or interface declaring the callee
    std::string method;        // callee name
    bool via_interface = false;
};

// Walks every method body and invokes `fn` for each call whose receiver type
// and callee resolve statically. Tolerant: unresolvable calls are skipped
// (intermediate programs of a refactoring chain may be transiently ill-typed).
void forEachResolvedCall(const Program& p, const std::function<void(const ResolvedCall&)>& fn);

// Tolerant static type of `e` as it appears inside class_name (with the
// given parameter/local types in scope). nullopt when untypeable.
std::optional<Type> staticTypeInContext(const Program& p, const std::string& class_name,
                                        const std::map<std::string, Type>& scope,
                                        const ExprPtr& e);

// True when `sub` names `sup` or a transitive subtype of it (classes via
// extends, interfaces via implements on any class of the chain).
bool isSubtypeOf(const Program& p, const Type& sub, const Type& sup);

// Walks the extends chain from `cls` looking for a method declaration.
const MethodDecl* lookupMethod(const Program& p, const std::string& cls, const std::string& name,
                               std::string* found_in = nullptr);
const FieldDecl* lookupField(const Program& p, const std::string& cls, const std::string& name,
                             std::string* found_in = nullptr);

}  // namespace dualshift
