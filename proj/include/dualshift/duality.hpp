// The duality engine: derives refactoring plans that move a program between
// its data-oriented and function-oriented decompositions, applies them
// atomically, and checks the round trip.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dualshift/ast.hpp"
#include "dualshift/lens.hpp"
#include "dualshift/refactor.hpp"

namespace dualshift {

enum class Direction { ToVisitor, ToComposite };

// Error text on failure (wrong form, malformed visitor shape, ...).
using PlanResult = std::variant<Plan, std::string>;
PlanResult plan_to_visitor(const Program& p);
PlanResult plan_to_composite(const Program& p);

struct TransformResult {
    bool success = false;
    std::optional<Program> program;  // present iff success
    Plan plan;
    std::vector<PreconditionViolation> violations;  // step failure, if any
    std::string error;                              // planning/verification failure
};

// Plans, applies atomically, then verifies the output typechecks and that its
// classification actually flipped. On failure the input is untouched.
TransformResult transform(const Program& p, Direction d);

struct RoundTripReport {
    bool success = false;    // both transforms ran
    bool identical = false;  // canonical text came back byte-identical
    std::string diff;        // first differing line when not identical
    double elapsed_seconds = 0.0;
    std::string error;
};

// there-and-back: T_FD(T_DF(p)) from a data form, T_DF(T_FD(p)) from a
// function form. Compares the canonical text of input and result.
RoundTripReport roundtrip_check(const Program& p);

// --- modular evolution steps -----------------------------------------------

// Appends a new subtype class (parsed from a one-class fragment).
// Requires the data-oriented form.
struct AddSubtype {
    ClassDecl fragment;
};

// Appends a new visitor class and a facade `R name() { ... }` on the root.
// Requires the function-oriented (visitor) form.
struct AddOperation {
    std::string name;
    Type return_type;
    ClassDecl fragment;
};

// Replaces the declaration of the same name with the fragment.
struct EditClass {
    std::variant<ClassDecl, InterfaceDecl> fragment;
};

using Evolution = std::variant<AddSubtype, AddOperation, EditClass>;

struct EvolutionResult {
    bool success = false;
    std::optional<Program> program;
    std::string error;
};

EvolutionResult apply_evolution(const Program& p, const Evolution& e);

}  // namespace dualshift
