#include "dualshift/interp.hpp"

#include <sstream>

#include "dualshift/printer.hpp"
#include "dualshift/typecheck.hpp"

namespace dualshift {

ValuePtr intValue(std::int64_t v) {
    auto p = std::make_shared<Value>();
    p->kind = ValueKind::Int;
    p->int_val = v;
    return p;
}

ValuePtr strValue(std::string v) {
    auto p = std::make_shared<Value>();
    p->kind = ValueKind::Str;
    p->str_val = std::move(v);
    return p;
}

ValuePtr boolValue(bool v) {
    auto p = std::make_shared<Value>();
    p->kind = ValueKind::Bool;
    p->bool_val = v;
    return p;
}

bool equal(const ValuePtr& a, const ValuePtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ValueKind::Int: return a->int_val == b->int_val;
        case ValueKind::Str: return a->str_val == b->str_val;
        case ValueKind::Bool: return a->bool_val == b->bool_val;
        case ValueKind::Obj: {
            if (a->class_name != b->class_name) return false;
            if (a->fields.size() != b->fields.size()) return false;
            for (const auto& [k, v] : a->fields) {
                auto it = b->fields.find(k);
                if (it == b->fields.end() || !equal(v, it->second)) return false;
            }
            return true;
        }
    }
    return false;
}

std::string showValue(const ValuePtr& v) {
    if (!v) return "<null>";
    switch (v->kind) {
        case ValueKind::Int: return std::to_string(v->int_val);
        case ValueKind::Str: return v->str_val;
        case ValueKind::Bool: return v->bool_val ? "true" : "false";
        case ValueKind::Obj: {
            std::ostringstream out;
            out << v->class_name << "{";
            bool first = true;
            for (const auto& [k, f] : v->fields) {
                if (!first) out << ", ";
                first = false;
                out << k << "=" << showValue(f);
            }
            out << "}";
            return out.str();
        }
    }
    return "<null>";
}

std::string describe(const EvalError& e) {
    const char* kind = "";
    switch (e.kind) {
        case EvalErrorKind::UnresolvedMethod: kind = "unresolved-method"; break;
        case EvalErrorKind::AbstractInstantiation: kind = "abstract-instantiation"; break;
        case EvalErrorKind::ArityMismatch: kind = "arity-mismatch"; break;
        case EvalErrorKind::TypeConfusion: kind = "type-confusion"; break;
        case EvalErrorKind::StepLimit: kind = "step-limit"; break;
    }
    return std::string(kind) + ": " + e.detail;
}

namespace {

struct EvalThrow {
    EvalError err;
};

[[noreturn]] void evalFail(EvalErrorKind kind, std::string detail) {
    throw EvalThrow{{kind, std::move(detail)}};
}

class Interp {
public:
    Interp(const Program& p, std::uint64_t limit) : p_(p), limit_(limit) {}

    ValuePtr run(const ExprPtr& entry) {
        std::map<std::string, ValuePtr> env;
        return eval(entry, env, nullptr);
    }

private:
    void step() {
        if (++steps_ > limit_)
            evalFail(EvalErrorKind::StepLimit,
                     "evaluation exceeded " + std::to_string(limit_) + " steps");
    }

    ValuePtr eval(const ExprPtr& e, std::map<std::string, ValuePtr>& env, const Value* self) {
        step();
        switch (e->kind) {
            case ExprKind::IntLit: return intValue(e->int_val);
            case ExprKind::StrLit: return strValue(e->str_val);
            case ExprKind::BoolLit: return boolValue(e->bool_val);
            case ExprKind::This: {
                if (!self) evalFail(EvalErrorKind::TypeConfusion, "'this' outside a method");
                auto v = std::make_shared<Value>(*self);
                return v;
            }
            case ExprKind::VarRef: {
                auto it = env.find(e->name);
                if (it == env.end())
                    evalFail(EvalErrorKind::TypeConfusion, "unbound name " + e->name);
                return it->second;
            }
            case ExprKind::FieldAccess: {
                ValuePtr t = eval(e->target, env, self);
                if (t->kind != ValueKind::Obj)
                    evalFail(EvalErrorKind::TypeConfusion,
                             "field access on non-object " + showValue(t));
                auto it = t->fields.find(e->name);
                if (it == t->fields.end())
                    evalFail(EvalErrorKind::TypeConfusion,
                             "no field " + e->name + " on " + t->class_name);
                return it->second;
            }
            case ExprKind::New: return construct(e, env, self);
            case ExprKind::Call: return call(e, env, self);
            case ExprKind::BinOp: return binop(e, env, self);
            case ExprKind::StrConv: {
                ValuePtr t = eval(e->target, env, self);
                if (t->kind != ValueKind::Int)
                    evalFail(EvalErrorKind::TypeConfusion, "str() expects an int");
                return strValue(std::to_string(t->int_val));
            }
        }
        evalFail(EvalErrorKind::TypeConfusion, "unreachable expression kind");
    }

    ValuePtr construct(const ExprPtr& e, std::map<std::string, ValuePtr>& env, const Value* self) {
        const ClassDecl* c = findClass(p_, e->name);
        if (!c) evalFail(EvalErrorKind::UnresolvedMethod, "unknown class " + e->name);
        if (c->is_abstract)
            evalFail(EvalErrorKind::AbstractInstantiation,
                     "cannot instantiate abstract class " + e->name);
        auto obj = std::make_shared<Value>();
        obj->kind = ValueKind::Obj;
        obj->class_name = e->name;
        const CtorDecl* ct = findCtor(*c);
        std::size_t want = ct ? ct->params.size() : 0;
        if (e->args.size() != want)
            evalFail(EvalErrorKind::ArityMismatch, "constructor of " + e->name + " expects " +
                                                       std::to_string(want) + " arguments");
        if (ct) {
            std::map<std::string, ValuePtr> ctor_env;
            for (std::size_t i = 0; i < ct->params.size(); ++i)
                ctor_env[ct->params[i].name] = eval(e->args[i], env, self);
            for (const auto& [f, prm] : ct->assigns) {
                auto it = ctor_env.find(prm);
                if (it == ctor_env.end())
                    evalFail(EvalErrorKind::TypeConfusion, "unbound constructor parameter " + prm);
                obj->fields[f] = it->second;
            }
        }
        return obj;
    }

    ValuePtr call(const ExprPtr& e, std::map<std::string, ValuePtr>& env, const Value* self) {
        ValuePtr recv = eval(e->target, env, self);
        if (recv->kind != ValueKind::Obj)
            evalFail(EvalErrorKind::TypeConfusion, "method call on non-object " + showValue(recv));
        // dynamic dispatch on the runtime class
        const MethodDecl* m = lookupMethod(p_, recv->class_name, e->name, nullptr);
        if (!m || !m->body)
            evalFail(EvalErrorKind::UnresolvedMethod,
                     "no method " + e->name + " on " + recv->class_name);
        if (e->args.size() != m->params.size())
            evalFail(EvalErrorKind::ArityMismatch, "call to " + e->name + " expects " +
                                                       std::to_string(m->params.size()) +
                                                       " arguments");
        std::map<std::string, ValuePtr> callee_env;
        for (std::size_t i = 0; i < m->params.size(); ++i)
            callee_env[m->params[i].name] = eval(e->args[i], env, self);
        for (const Stmt& s : *m->body) {
            step();
            switch (s.kind) {
                case StmtKind::Return: return eval(s.expr, callee_env, recv.get());
                case StmtKind::LocalDecl:
                    callee_env[s.name] = eval(s.expr, callee_env, recv.get());
                    break;
                case StmtKind::ExprStmt: eval(s.expr, callee_env, recv.get()); break;
            }
        }
        // void method: conventional unit result
        return boolValue(true);
    }

    ValuePtr binop(const ExprPtr& e, std::map<std::string, ValuePtr>& env, const Value* self) {
        ValuePtr l = eval(e->target, env, self);
        ValuePtr r = eval(e->rhs, env, self);
        if (e->name == "+") {
            if (l->kind == ValueKind::Int && r->kind == ValueKind::Int) {
                std::int64_t out = 0;
                if (__builtin_add_overflow(l->int_val, r->int_val, &out))
                    evalFail(EvalErrorKind::TypeConfusion, "integer overflow in +");
                return intValue(out);
            }
            if (l->kind == ValueKind::Str && r->kind == ValueKind::Str)
                return strValue(l->str_val + r->str_val);
            evalFail(EvalErrorKind::TypeConfusion, "operands of + must both be int or string");
        }
        if (e->name == "<") {
            if (l->kind != ValueKind::Int || r->kind != ValueKind::Int)
                evalFail(EvalErrorKind::TypeConfusion, "operands of < must be int");
            return boolValue(l->int_val < r->int_val);
        }
        if (e->name == "==") return boolValue(equal(l, r));
        evalFail(EvalErrorKind::TypeConfusion, "unknown operator " + e->name);
    }

    const Program& p_;
    std::uint64_t limit_;
    std::uint64_t steps_ = 0;
};

}  // namespace

EvalResult evaluate(const Program& p, const ExprPtr& entry, std::uint64_t step_limit) {
    try {
        return Interp(p, step_limit).run(entry);
    } catch (const EvalThrow& t) {
        return t.err;
    }
}

}  // namespace dualshift
