// Elementary precondition-guarded refactoring operations and the atomic plan
// executor. Every operation is a pure function Program -> Program; a failed
// plan exposes no partial result.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dualshift/ast.hpp"

namespace dualshift {

struct CreateClass {
    std::string name;
    bool is_abstract = false;
    std::optional<std::string> extends;
    std::optional<Type> implements;
};

struct CreateInterface {
    std::string name;
    std::optional<std::string> type_param;
};

struct AddMethod {
    std::string class_name;
    MethodDecl method;
};

// Adds an abstract method to a class, or a signature to an interface. When a
// concrete method of the same name exists and its body is purely delegating,
// it is replaced in place (the facade -> abstract direction).
struct AddAbstractMethod {
    std::string type_name;
    MethodDecl method;
};

struct DeleteMethod {
    std::string class_name;
    std::string method_name;
};

struct DeleteClass {
    std::string name;
};

struct DeleteInterface {
    std::string name;
};

// Receiver rewriting applied to a body as it moves between a data-subtype
// method and a visitor method. Exactly one of self_to_param / param_to_self
// is set; the field/getter maps and the accept/operation pair follow the
// same direction.
struct MoveRewrite {
    std::optional<std::string> self_to_param;             // this -> <param>
    bool param_to_self = false;                           // sole param -> this
    std::map<std::string, std::string> field_to_getter;   // this.f -> p.getF()
    std::map<std::string, std::string> getter_to_field;   // p.getF() -> this.f
    std::string op_name;                                  // the operation being moved
    std::string accept_name;                              // usually "accept"
    bool calls_to_accept = false;                         // e.op() -> e.accept(this)
    bool accept_to_calls = false;                         // e.accept(this) -> e.op()
};

// Moves the body (and attached comment) of from_class.from_method into the
// existing bodyless method to_class.to_method, applying `rewrite`. The source
// method is left abstract.
struct MoveMethodBody {
    std::string from_class, from_method;
    std::string to_class, to_method;
    MoveRewrite rewrite;
};

// Renames call sites `x.from()` to `x.to()` where x's static type is
// receiver_class or a subtype of it. Declarations are untouched.
struct RewriteCalls {
    std::string method_from, method_to;
    std::string receiver_class;
};

// Adds `public T getF() { return this.f; }` and rewrites accesses outside the
// declaring class to go through the getter.
struct EncapsulateField {
    std::string class_name, field_name;
};

// Inverse of EncapsulateField: replaces `x.getF()` by `x.f` and deletes the
// getter. Requires the getter body to be exactly `return this.f;`.
struct InlineTrivialGetter {
    std::string class_name, getter_name;
};

struct ChangeVisibility {
    std::string class_name, member_name;
    Visibility visibility = Visibility::Public;
};

// Renames a program-wide symbol (class/interface, method or field name) at
// every definition and use.
struct RenameDeclaration {
    std::string old_name, new_name;
};

// Adds a delegating method; when an abstract method of the same name exists
// it is replaced in place, keeping its position and attached comment (the
// abstract -> facade direction).
struct AddDelegatingMethod {
    std::string class_name;
    MethodDecl method;
};

using RefactoringOp =
    std::variant<CreateClass, CreateInterface, AddMethod, AddAbstractMethod, DeleteMethod,
                 DeleteClass, DeleteInterface, MoveMethodBody, RewriteCalls, EncapsulateField,
                 InlineTrivialGetter, ChangeVisibility, RenameDeclaration, AddDelegatingMethod>;

struct Plan {
    std::vector<RefactoringOp> steps;
    std::string label;
};

struct PreconditionViolation {
    std::size_t step_index = 0;
    std::string op_label;
    std::string rule;
    std::string location;
    std::string message;
};

struct ApplyReport {
    bool success = false;
    std::optional<Program> result;  // present iff success
    std::vector<PreconditionViolation> violations;
    std::size_t steps_executed = 0;
    std::vector<std::string> step_summaries;
};

std::string opLabel(const RefactoringOp& op);

std::vector<PreconditionViolation> check_preconditions(const RefactoringOp& op, const Program& p);

// Requires check_preconditions(op, p) to be empty; re-checks defensively and
// throws PlanError on violation.
struct PlanError {
    std::vector<PreconditionViolation> violations;
};
Program apply_op(const RefactoringOp& op, const Program& p);

ApplyReport apply_plan(const Plan& plan, const Program& p);

// Line-oriented debug serialization: `OpName arg=value ...`, one op per line.
std::string serializePlan(const Plan& plan);

std::string formatViolations(const std::vector<PreconditionViolation>& vs);

// True when `body` is exactly one `return <call>;` whose receiver and
// arguments are all `this`, bare variables, or argument-free `new` — the
// facade/accept shape shared by the refactoring chains and the pattern lens.
bool isDelegatingBody(const Body& body);

}  // namespace dualshift
