#include "dualshift/typecheck.hpp"

#include <map>
#include <set>

#include "dualshift/printer.hpp"

namespace dualshift {
namespace {

Type substVar(const Type& t, const std::string& var, const Type& repl) {
    if (t.kind == TypeKind::Var && t.name == var) return repl;
    if (t.arg) {
        Type out = t;
        out.arg = std::make_shared<Type>(substVar(*t.arg, var, repl));
        return out;
    }
    return t;
}

struct Env {
    const ClassDecl* cls = nullptr;        // enclosing class; null for entry exprs
    const MethodDecl* method = nullptr;    // enclosing method
    std::map<std::string, Type> vars;      // params + locals
};

class Checker {
public:
    explicit Checker(const Program& p) : p_(p) {
        for (const auto& d : p.decls) {
            if (const auto* c = std::get_if<ClassDecl>(&d)) classes_[c->name] = c;
            if (const auto* i = std::get_if<InterfaceDecl>(&d)) interfaces_[i->name] = i;
        }
    }

    std::vector<Diagnostic> run() {
        checkInheritance();
        for (const auto& d : p_.decls) {
            if (const auto* c = std::get_if<ClassDecl>(&d))
                checkClass(*c);
            else
                checkInterface(std::get<InterfaceDecl>(d));
        }
        return std::move(diags_);
    }

    std::vector<Diagnostic> runEntry(const ExprPtr& e, Type* out_type) {
        Env env;
        auto t = typeOf(e, env, "<entry>");
        if (t && out_type) *out_type = *t;
        return std::move(diags_);
    }

    std::optional<Type> typeInContext(const std::string& class_name,
                                      const std::map<std::string, Type>& scope, const ExprPtr& e) {
        tolerant_ = true;
        Env env;
        env.cls = findCls(class_name);
        env.vars = scope;
        return typeOf(e, env, class_name);
    }

    std::vector<Diagnostic> runBody(const std::string& class_name, const MethodDecl& m) {
        const ClassDecl* c = findCls(class_name);
        if (!c) {
            diags_.push_back({Severity::Error, class_name, "unknown class " + class_name});
        } else {
            checkMethod(*c, m);
        }
        return std::move(diags_);
    }

    void resolvedCalls(const std::function<void(const ResolvedCall&)>& fn) {
        tolerant_ = true;
        for (const auto& d : p_.decls) {
            const auto* c = std::get_if<ClassDecl>(&d);
            if (!c) continue;
            for (const auto& mem : c->members) {
                const auto* m = std::get_if<MethodDecl>(&mem);
                if (!m || !m->body) continue;
                Env env;
                env.cls = c;
                env.method = m;
                for (const auto& prm : m->params) env.vars[prm.name] = prm.type;
                std::string ctx = c->name + "." + m->name;
                for (const auto& s : *m->body) {
                    if (s.kind == StmtKind::LocalDecl) {
                        walkCalls(s.expr, env, ctx, fn);
                        env.vars[s.name] = s.type;
                    } else {
                        walkCalls(s.expr, env, ctx, fn);
                    }
                }
            }
        }
    }

    // --- shared queries -----------------------------------------------------

    const ClassDecl* findCls(const std::string& n) const {
        auto it = classes_.find(n);
        return it == classes_.end() ? nullptr : it->second;
    }
    const InterfaceDecl* findIfc(const std::string& n) const {
        auto it = interfaces_.find(n);
        return it == interfaces_.end() ? nullptr : it->second;
    }

    const MethodDecl* lookup(const std::string& cls, const std::string& name,
                             std::string* found_in) const {
        const ClassDecl* c = findCls(cls);
        std::set<std::string> seen;
        while (c && seen.insert(c->name).second) {
            if (const MethodDecl* m = findMethod(*c, name)) {
                if (found_in) *found_in = c->name;
                return m;
            }
            c = c->extends ? findCls(*c->extends) : nullptr;
        }
        return nullptr;
    }

    const FieldDecl* lookupF(const std::string& cls, const std::string& name,
                             std::string* found_in) const {
        const ClassDecl* c = findCls(cls);
        std::set<std::string> seen;
        while (c && seen.insert(c->name).second) {
            if (const FieldDecl* f = findField(*c, name)) {
                if (found_in) *found_in = c->name;
                return f;
            }
            c = c->extends ? findCls(*c->extends) : nullptr;
        }
        return nullptr;
    }

    // The instantiated interface a class (chain) implements, if any.
    std::optional<Type> implementedInterface(const std::string& cls) const {
        const ClassDecl* c = findCls(cls);
        std::set<std::string> seen;
        while (c && seen.insert(c->name).second) {
            if (c->implements) return *c->implements;
            c = c->extends ? findCls(*c->extends) : nullptr;
        }
        return std::nullopt;
    }

    bool subtype(const Type& a, const Type& b) const {
        if (a == b) return true;
        if (a.kind != TypeKind::Named || b.kind != TypeKind::Named) return false;
        if (findCls(a.name)) {
            // class chain
            const ClassDecl* c = findCls(a.name);
            std::set<std::string> seen;
            while (c && seen.insert(c->name).second) {
                if (c->name == b.name && !b.arg) return true;
                if (c->implements && *c->implements == b) return true;
                c = c->extends ? findCls(*c->extends) : nullptr;
            }
        }
        return false;
    }

    // --- checks -------------------------------------------------------------

    void checkInheritance() {
        for (const auto& [name, c] : classes_) {
            if (c->extends) {
                if (!findCls(*c->extends))
                    error(name, "unknown superclass " + *c->extends);
            }
            // cycle detection
            std::set<std::string> seen;
            const ClassDecl* cur = c;
            while (cur && cur->extends) {
                if (!seen.insert(cur->name).second) {
                    error(name, "inheritance cycle through " + cur->name);
                    break;
                }
                cur = findCls(*cur->extends);
            }
            if (c->implements) {
                if (c->implements->kind != TypeKind::Named || !findIfc(c->implements->name)) {
                    error(name, "unknown interface " + printType(*c->implements));
                } else {
                    const InterfaceDecl* i = findIfc(c->implements->name);
                    if (i->type_param && !c->implements->arg)
                        error(name, "interface " + i->name + " requires a type argument");
                    if (!i->type_param && c->implements->arg)
                        error(name, "interface " + i->name + " takes no type argument");
                }
            }
        }
    }

    void checkTypeValid(const Type& t, const std::string& where,
                        const std::optional<std::string>& type_var) {
        switch (t.kind) {
            case TypeKind::Named: {
                if (findCls(t.name)) {
                    if (t.arg) error(where, "class " + t.name + " takes no type argument");
                    return;
                }
                if (const InterfaceDecl* i = findIfc(t.name)) {
                    if (i->type_param && !t.arg)
                        error(where, "interface " + t.name + " requires a type argument");
                    if (t.arg) checkTypeValid(*t.arg, where, type_var);
                    return;
                }
                error(where, "unknown type " + t.name);
                return;
            }
            case TypeKind::Var:
                if (!type_var || *type_var != t.name)
                    error(where, "type variable " + t.name + " is not in scope");
                return;
            default: return;
        }
    }

    void checkInterface(const InterfaceDecl& i) {
        std::set<std::string> names;
        for (const auto& s : i.signatures) {
            std::string where = i.name + "." + s.name;
            if (!names.insert(s.name).second) error(where, "duplicate signature " + s.name);
            checkTypeValid(s.return_type, where, i.type_param);
            for (const auto& prm : s.params) {
                checkTypeValid(prm.type, where, std::nullopt);
                if (prm.type.kind == TypeKind::Var)
                    error(where, "the interface type parameter may appear only in return position");
            }
        }
    }

    // All abstract methods visible on a class (own + inherited, not overridden).
    std::vector<const MethodDecl*> unimplementedAbstract(const ClassDecl& c) {
        std::vector<const MethodDecl*> out;
        std::set<std::string> seen_names;
        const ClassDecl* cur = &c;
        std::set<std::string> seen_cls;
        while (cur && seen_cls.insert(cur->name).second) {
            for (const auto& mem : cur->members) {
                const auto* m = std::get_if<MethodDecl>(&mem);
                if (!m) continue;
                if (!seen_names.insert(m->name).second) continue;  // overridden below
                if (m->is_abstract) out.push_back(m);
            }
            cur = cur->extends ? findCls(*cur->extends) : nullptr;
        }
        return out;
    }

    static Type canonVar(const Type& t, const std::optional<std::string>& tp) {
        if (!tp) return t;
        return substVar(t, *tp, Type::var("$"));
    }

    static bool sameSignature(const MethodDecl& a, const MethodDecl& b) {
        if (a.name != b.name || a.params.size() != b.params.size()) return false;
        if (a.type_param.has_value() != b.type_param.has_value()) return false;
        if (canonVar(a.return_type, a.type_param) != canonVar(b.return_type, b.type_param))
            return false;
        for (std::size_t i = 0; i < a.params.size(); ++i)
            if (canonVar(a.params[i].type, a.type_param) != canonVar(b.params[i].type, b.type_param))
                return false;
        return true;
    }

    void checkClass(const ClassDecl& c) {
        std::set<std::string> member_names;
        int ctor_count = 0;
        for (const auto& mem : c.members) {
            if (const auto* f = std::get_if<FieldDecl>(&mem)) {
                if (!member_names.insert(f->name).second)
                    error(c.name, "duplicate member " + f->name);
                checkTypeValid(f->type, c.name + "." + f->name, std::nullopt);
                std::string in;
                if (c.extends && lookupF(*c.extends, f->name, &in))
                    error(c.name + "." + f->name, "field shadows " + in + "." + f->name);
            } else if (std::get_if<CtorDecl>(&mem)) {
                ++ctor_count;
            } else {
                const auto& m = std::get<MethodDecl>(mem);
                if (!member_names.insert(m.name).second)
                    error(c.name, "duplicate member " + m.name);
            }
        }
        if (ctor_count > 1) error(c.name, "at most one constructor is allowed");

        // abstract-method rules
        if (!c.is_abstract) {
            for (const auto& mem : c.members) {
                const auto* m = std::get_if<MethodDecl>(&mem);
                if (m && m->is_abstract)
                    error(c.name + "." + m->name, "abstract method in concrete class");
            }
            for (const MethodDecl* m : unimplementedAbstract(c))
                error(c.name, "abstract method " + m->name + " is not implemented");
        }

        // overriding: same signature as any inherited method of the same name
        for (const auto& mem : c.members) {
            const auto* m = std::get_if<MethodDecl>(&mem);
            if (!m || !c.extends) continue;
            std::string in;
            if (const MethodDecl* base = lookup(*c.extends, m->name, &in)) {
                if (!sameSignature(*m, *base))
                    error(c.name + "." + m->name, "override changes the signature of " + in + "." +
                                                       m->name);
            }
        }

        checkImplements(c);
        checkCtor(c);
        for (const auto& mem : c.members)
            if (const auto* m = std::get_if<MethodDecl>(&mem)) checkMethod(c, *m);
    }

    void checkImplements(const ClassDecl& c) {
        if (!c.implements || c.implements->kind != TypeKind::Named) return;
        const InterfaceDecl* i = findIfc(c.implements->name);
        if (!i) return;
        Type inst = c.implements->arg ? *c.implements->arg : Type::voidType();
        if (c.is_abstract) return;  // abstract classes may defer
        for (const auto& sig : i->signatures) {
            const MethodDecl* m = lookup(c.name, sig.name, nullptr);
            std::string where = c.name + "." + sig.name;
            if (!m || m->is_abstract) {
                error(where, "interface method " + sig.name + " is not implemented");
                continue;
            }
            Type want_ret = i->type_param ? substVar(sig.return_type, *i->type_param, inst)
                                          : sig.return_type;
            if (m->return_type != want_ret)
                error(where, "implementation return type " + printType(m->return_type) +
                                 " does not match " + printType(want_ret));
            if (m->params.size() != sig.params.size()) {
                error(where, "implementation arity does not match interface");
                continue;
            }
            for (std::size_t k = 0; k < sig.params.size(); ++k)
                if (m->params[k].type != sig.params[k].type)
                    error(where, "parameter type " + printType(m->params[k].type) +
                                     " does not match " + printType(sig.params[k].type));
        }
    }

    std::vector<const FieldDecl*> allFields(const ClassDecl& c) {
        std::vector<const FieldDecl*> out;
        const ClassDecl* cur = &c;
        std::set<std::string> seen;
        while (cur && seen.insert(cur->name).second) {
            for (const auto& mem : cur->members)
                if (const auto* f = std::get_if<FieldDecl>(&mem)) out.push_back(f);
            cur = cur->extends ? findCls(*cur->extends) : nullptr;
        }
        return out;
    }

    void checkCtor(const ClassDecl& c) {
        const CtorDecl* ct = findCtor(c);
        auto fields = allFields(c);
        if (!ct) {
            if (!c.is_abstract && !fields.empty())
                error(c.name, "class with fields requires a constructor");
            return;
        }
        std::map<std::string, Type> params;
        for (const auto& prm : ct->params) {
            checkTypeValid(prm.type, c.name + " constructor", std::nullopt);
            if (!params.emplace(prm.name, prm.type).second)
                error(c.name, "duplicate constructor parameter " + prm.name);
        }
        std::set<std::string> assigned;
        for (const auto& [fname, pname] : ct->assigns) {
            std::string where = c.name + " constructor";
            std::string in;
            const FieldDecl* f = lookupF(c.name, fname, &in);
            if (!f) {
                error(where, "assignment to unknown field " + fname);
                continue;
            }
            if (in != c.name && f->vis == Visibility::Private)
                error(where, "field " + fname + " is private to " + in);
            auto it = params.find(pname);
            if (it == params.end()) {
                error(where, "unknown constructor parameter " + pname);
                continue;
            }
            if (!subtype(it->second, f->type))
                error(where, "cannot assign " + printType(it->second) + " to field " + fname +
                                 " of type " + printType(f->type));
            if (!assigned.insert(fname).second)
                error(where, "field " + fname + " assigned twice");
        }
        for (const FieldDecl* f : fields)
            if (!assigned.count(f->name))
                error(c.name + " constructor", "field " + f->name + " is never assigned");
    }

    void checkMethod(const ClassDecl& c, const MethodDecl& m) {
        std::string where = c.name + "." + m.name;
        checkTypeValid(m.return_type, where, m.type_param);
        Env env;
        env.cls = &c;
        env.method = &m;
        std::set<std::string> names;
        for (const auto& prm : m.params) {
            checkTypeValid(prm.type, where, m.type_param);
            if (!names.insert(prm.name).second) error(where, "duplicate parameter " + prm.name);
            env.vars[prm.name] = prm.type;
        }
        if (!m.body) return;
        if (m.body->empty()) {
            error(where, "method body must not be empty");
            return;
        }
        for (std::size_t i = 0; i < m.body->size(); ++i) {
            const Stmt& s = (*m.body)[i];
            bool last = i + 1 == m.body->size();
            switch (s.kind) {
                case StmtKind::Return: {
                    if (!last) error(where, "return must be the last statement");
                    auto t = typeOf(s.expr, env, where);
                    if (t && !subtype(*t, m.return_type))
                        error(where, "cannot return " + printType(*t) + " from method of type " +
                                         printType(m.return_type));
                    break;
                }
                case StmtKind::LocalDecl: {
                    checkTypeValid(s.type, where, m.type_param);
                    auto t = typeOf(s.expr, env, where);
                    if (t && !subtype(*t, s.type))
                        error(where, "cannot initialize " + printType(s.type) + " local " + s.name +
                                         " with " + printType(*t));
                    if (!names.insert(s.name).second)
                        error(where, "duplicate local " + s.name);
                    env.vars[s.name] = s.type;
                    break;
                }
                case StmtKind::ExprStmt: typeOf(s.expr, env, where); break;
            }
        }
        if (m.return_type.kind != TypeKind::Void && m.body->back().kind != StmtKind::Return)
            error(where, "last statement must be a return");
    }

    // --- expression typing --------------------------------------------------

    std::optional<Type> typeOf(const ExprPtr& e, Env& env, const std::string& where) {
        if (!e) return std::nullopt;
        switch (e->kind) {
            case ExprKind::IntLit: return Type::intType();
            case ExprKind::StrLit: return Type::stringType();
            case ExprKind::BoolLit: return Type::boolType();
            case ExprKind::This:
                if (!env.cls) {
                    error(where, "'this' outside a class");
                    return std::nullopt;
                }
                return Type::named(env.cls->name);
            case ExprKind::VarRef: {
                auto it = env.vars.find(e->name);
                if (it == env.vars.end()) {
                    error(where, "unknown name " + e->name);
                    return std::nullopt;
                }
                return it->second;
            }
            case ExprKind::FieldAccess: {
                auto t = typeOf(e->target, env, where);
                if (!t) return std::nullopt;
                if (t->kind != TypeKind::Named || !findCls(t->name)) {
                    error(where, "field access on non-object of type " + printType(*t));
                    return std::nullopt;
                }
                std::string in;
                const FieldDecl* f = lookupF(t->name, e->name, &in);
                if (!f) {
                    error(where, "no field " + e->name + " on " + t->name);
                    return std::nullopt;
                }
                if (f->vis == Visibility::Private && (!env.cls || env.cls->name != in))
                    error(where, "field " + in + "." + e->name + " is private");
                return f->type;
            }
            case ExprKind::New: {
                const ClassDecl* c = findCls(e->name);
                if (!c) {
                    error(where, "unknown class " + e->name);
                    return std::nullopt;
                }
                const CtorDecl* ct = findCtor(*c);
                std::size_t want = ct ? ct->params.size() : 0;
                if (e->args.size() != want) {
                    error(where, "constructor of " + e->name + " expects " +
                                     std::to_string(want) + " arguments");
                }
                for (std::size_t i = 0; i < e->args.size(); ++i) {
                    auto t = typeOf(e->args[i], env, where);
                    if (t && ct && i < ct->params.size() && !subtype(*t, ct->params[i].type))
                        error(where, "argument " + std::to_string(i + 1) + " of new " + e->name +
                                         ": cannot pass " + printType(*t) + " as " +
                                         printType(ct->params[i].type));
                }
                return Type::named(e->name);
            }
            case ExprKind::BinOp: {
                auto l = typeOf(e->target, env, where);
                auto r = typeOf(e->rhs, env, where);
                if (!l || !r) return e->name == "+" ? std::nullopt
                                                   : std::optional<Type>(Type::boolType());
                if (e->name == "+") {
                    if (l->kind == TypeKind::Int && r->kind == TypeKind::Int)
                        return Type::intType();
                    if (l->kind == TypeKind::String && r->kind == TypeKind::String)
                        return Type::stringType();
                    error(where, "operands of + must both be int or both be string");
                    return std::nullopt;
                }
                if (e->name == "<") {
                    if (l->kind != TypeKind::Int || r->kind != TypeKind::Int)
                        error(where, "operands of < must be int");
                    return Type::boolType();
                }
                // ==
                bool ok = (l->kind == r->kind) &&
                          (l->kind == TypeKind::Int || l->kind == TypeKind::String ||
                           l->kind == TypeKind::Bool);
                if (!ok) error(where, "operands of == must be two ints, strings or booleans");
                return Type::boolType();
            }
            case ExprKind::StrConv: {
                auto t = typeOf(e->target, env, where);
                if (t && t->kind != TypeKind::Int) error(where, "str() expects an int");
                return Type::stringType();
            }
            case ExprKind::Call: return typeOfCall(e, env, where, nullptr);
        }
        return std::nullopt;
    }

    std::optional<Type> typeOfCall(const ExprPtr& e, Env& env, const std::string& where,
                                   ResolvedCall* resolved) {
        auto recv = typeOf(e->target, env, where);
        if (!recv) return std::nullopt;
        if (recv->kind != TypeKind::Named) {
            error(where, "method call on non-object of type " + printType(*recv));
            return std::nullopt;
        }
        std::vector<std::optional<Type>> argts;
        for (const auto& a : e->args) argts.push_back(typeOf(a, env, where));

        // interface receiver
        if (const InterfaceDecl* i = findIfc(recv->name)) {
            const MethodSig* sig = nullptr;
            for (const auto& s : i->signatures)
                if (s.name == e->name) sig = &s;
            if (!sig) {
                error(where, "no method " + e->name + " on interface " + i->name);
                return std::nullopt;
            }
            if (e->args.size() != sig->params.size()) {
                error(where, "call to " + e->name + " expects " +
                                 std::to_string(sig->params.size()) + " arguments");
                return std::nullopt;
            }
            for (std::size_t k = 0; k < argts.size(); ++k)
                if (argts[k] && !subtype(*argts[k], sig->params[k].type))
                    error(where, "argument " + std::to_string(k + 1) + " of " + e->name +
                                     ": cannot pass " + printType(*argts[k]) + " as " +
                                     printType(sig->params[k].type));
            Type ret = sig->return_type;
            if (i->type_param && recv->arg) ret = substVar(ret, *i->type_param, *recv->arg);
            if (resolved) {
                resolved->owner = i->name;
                resolved->method = e->name;
                resolved->via_interface = true;
            }
            return ret;
        }

        std::string owner;
        const MethodDecl* m = lookup(recv->name, e->name, &owner);
        if (!m) {
            error(where, "no method " + e->name + " on " + recv->name);
            return std::nullopt;
        }
        if (m->vis == Visibility::Private && (!env.cls || env.cls->name != owner))
            error(where, "method " + owner + "." + e->name + " is private");
        if (e->args.size() != m->params.size()) {
            error(where, "call to " + e->name + " expects " + std::to_string(m->params.size()) +
                             " arguments");
            return std::nullopt;
        }

        // method type parameter: infer from argument instantiation
        std::optional<Type> binding;
        if (m->type_param) {
            for (std::size_t k = 0; k < m->params.size(); ++k) {
                const Type& pt = m->params[k].type;
                if (!argts[k]) continue;
                if (pt.kind == TypeKind::Var && pt.name == *m->type_param) binding = *argts[k];
                if (pt.kind == TypeKind::Named && pt.arg && pt.arg->kind == TypeKind::Var &&
                    pt.arg->name == *m->type_param) {
                    // parameter like Visitor<T>: read T off the argument's interface
                    const Type& at = *argts[k];
                    if (at.kind == TypeKind::Named) {
                        if (at.name == pt.name && at.arg) {
                            binding = *at.arg;
                        } else if (auto impl = implementedInterface(at.name);
                                   impl && impl->name == pt.name && impl->arg) {
                            binding = *impl->arg;
                        }
                    }
                }
            }
            if (!binding) {
                error(where, "cannot infer type argument for call to " + e->name);
                return std::nullopt;
            }
        }

        for (std::size_t k = 0; k < argts.size(); ++k) {
            if (!argts[k]) continue;
            Type want = m->params[k].type;
            if (m->type_param && binding) want = substVar(want, *m->type_param, *binding);
            if (!subtype(*argts[k], want))
                error(where, "argument " + std::to_string(k + 1) + " of " + e->name +
                                 ": cannot pass " + printType(*argts[k]) + " as " +
                                 printType(want));
        }
        if (resolved) {
            resolved->owner = owner;
            resolved->method = e->name;
        }
        Type ret = m->return_type;
        if (m->type_param && binding) ret = substVar(ret, *m->type_param, *binding);
        return ret;
    }

private:
    void walkCalls(const ExprPtr& e, Env& env, const std::string& ctx,
                   const std::function<void(const ResolvedCall&)>& fn) {
        if (!e) return;
        walkCalls(e->target, env, ctx, fn);
        walkCalls(e->rhs, env, ctx, fn);
        for (const auto& a : e->args) walkCalls(a, env, ctx, fn);
        if (e->kind != ExprKind::Call) return;
        ResolvedCall rc;
        rc.context = ctx;
        rc.call = e;
        std::size_t mark = diags_.size();
        auto t = typeOfCall(e, env, ctx, &rc);
        diags_.resize(mark);  // tolerant walk: drop diagnostics
        if (t && !rc.owner.empty()) fn(rc);
    }

    void error(const std::string& where, const std::string& msg) {
        if (tolerant_) return;
        diags_.push_back({Severity::Error, where, msg});
    }

    const Program& p_;
    std::map<std::string, const ClassDecl*> classes_;
    std::map<std::string, const InterfaceDecl*> interfaces_;
    std::vector<Diagnostic> diags_;
    bool tolerant_ = false;
};

}  // namespace

std::vector<Diagnostic> typecheck(const Program& p) { return Checker(p).run(); }

std::vector<Diagnostic> typecheckEntry(const Program& p, const ExprPtr& e, Type* out_type) {
    return Checker(p).runEntry(e, out_type);
}

std::vector<Diagnostic> checkMethodBody(const Program& p, const std::string& class_name,
                                        const MethodDecl& m) {
    return Checker(p).runBody(class_name, m);
}

void forEachResolvedCall(const Program& p, const std::function<void(const ResolvedCall&)>& fn) {
    Checker(p).resolvedCalls(fn);
}

std::optional<Type> staticTypeInContext(const Program& p, const std::string& class_name,
                                        const std::map<std::string, Type>& scope,
                                        const ExprPtr& e) {
    return Checker(p).typeInContext(class_name, scope, e);
}

bool isSubtypeOf(const Program& p, const Type& sub, const Type& sup) {
    return Checker(p).subtype(sub, sup);
}

const MethodDecl* lookupMethod(const Program& p, const std::string& cls, const std::string& name,
                               std::string* found_in) {
    return Checker(p).lookup(cls, name, found_in);
}

const FieldDecl* lookupField(const Program& p, const std::string& cls, const std::string& name,
                             std::string* found_in) {
    return Checker(p).lookupF(cls, name, found_in);
}

}  // namespace dualshift
