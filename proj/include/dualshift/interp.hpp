// Reference interpreter: call-by-value, dynamic dispatch on the receiver's
// runtime class, type parameters erased. The behavior-preservation oracle.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>

#include "dualshift/ast.hpp"

namespace dualshift {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

enum class ValueKind { Int, Str, Bool, Obj };

struct Value {
    ValueKind kind = ValueKind::Int;
    std::int64_t int_val = 0;
    std::string str_val;
    bool bool_val = false;
    std::string class_name;                  // Obj
    std::map<std::string, ValuePtr> fields;  // Obj
};

ValuePtr intValue(std::int64_t v);
ValuePtr strValue(std::string v);
ValuePtr boolValue(bool v);

bool equal(const ValuePtr& a, const ValuePtr& b);
std::string showValue(const ValuePtr& v);

enum class EvalErrorKind {
    UnresolvedMethod,
    AbstractInstantiation,
    ArityMismatch,
    TypeConfusion,
    StepLimit
};

struct EvalError {
    EvalErrorKind kind;
    std::string detail;
};

std::string describe(const EvalError& e);

constexpr std::uint64_t kDefaultStepLimit = 1'000'000;

using EvalResult = std::variant<ValuePtr, EvalError>;

// Evaluates `entry` against `p`. Deterministic; the step counter is local to
// this invocation.
EvalResult evaluate(const Program& p, const ExprPtr& entry,
                    std::uint64_t step_limit = kDefaultStepLimit);

}  // namespace dualshift
