#include "dualshift/refactor.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "dualshift/printer.hpp"
#include "dualshift/typecheck.hpp"

namespace dualshift {
namespace {

// --- small helpers ----------------------------------------------------------

ClassDecl* findClassMut(Program& p, const std::string& name) {
    for (auto& d : p.decls)
        if (auto* c = std::get_if<ClassDecl>(&d); c && c->name == name) return c;
    return nullptr;
}

InterfaceDecl* findInterfaceMut(Program& p, const std::string& name) {
    for (auto& d : p.decls)
        if (auto* i = std::get_if<InterfaceDecl>(&d); i && i->name == name) return i;
    return nullptr;
}

MethodDecl* findMethodMut(ClassDecl& c, const std::string& name) {
    for (auto& m : c.members)
        if (auto* md = std::get_if<MethodDecl>(&m); md && md->name == name) return md;
    return nullptr;
}

bool declExists(const Program& p, const std::string& name) {
    for (const auto& d : p.decls)
        if (declName(d) == name) return true;
    return false;
}

ExprPtr mapExpr(const ExprPtr& e, const std::function<ExprPtr(const ExprPtr&)>& post) {
    if (!e) return e;
    auto copy = std::make_shared<Expr>(*e);
    copy->target = mapExpr(e->target, post);
    copy->rhs = mapExpr(e->rhs, post);
    for (auto& a : copy->args) a = mapExpr(a, post);
    return post(copy);
}

// Rewrites every expression of every method body. `fn` is applied bottom-up
// and receives the enclosing class and the names in scope (for typing).
void rewriteBodies(
    Program& p,
    const std::function<ExprPtr(const ExprPtr&, const ClassDecl&, const MethodDecl&,
                                const std::map<std::string, Type>&)>& fn) {
    for (auto& d : p.decls) {
        auto* c = std::get_if<ClassDecl>(&d);
        if (!c) continue;
        for (auto& mem : c->members) {
            auto* m = std::get_if<MethodDecl>(&mem);
            if (!m || !m->body) continue;
            std::map<std::string, Type> scope;
            for (const auto& prm : m->params) scope[prm.name] = prm.type;
            for (auto& s : *m->body) {
                s.expr = mapExpr(s.expr,
                                 [&](const ExprPtr& e) { return fn(e, *c, *m, scope); });
                if (s.kind == StmtKind::LocalDecl) scope[s.name] = s.type;
            }
        }
    }
}

bool isSimpleArg(const ExprPtr& e) {
    if (e->kind == ExprKind::This || e->kind == ExprKind::VarRef) return true;
    if (e->kind == ExprKind::New && e->args.empty()) return true;
    return false;
}

std::string capitalize(const std::string& s) {
    std::string out = s;
    if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
}

bool typeMentions(const Type& t, const std::string& name) {
    if (t.kind == TypeKind::Named && t.name == name) return true;
    return t.arg && typeMentions(*t.arg, name);
}

bool exprMentionsType(const ExprPtr& e, const std::string& name) {
    if (!e) return false;
    if (e->kind == ExprKind::New && e->name == name) return true;
    if (exprMentionsType(e->target, name) || exprMentionsType(e->rhs, name)) return true;
    for (const auto& a : e->args)
        if (exprMentionsType(a, name)) return true;
    return false;
}

// Collects locations that reference a class/interface name as a type.
std::vector<std::string> typeReferences(const Program& p, const std::string& name) {
    std::vector<std::string> refs;
    auto checkType = [&](const Type& t, const std::string& where) {
        if (typeMentions(t, name)) refs.push_back(where);
    };
    for (const auto& d : p.decls) {
        if (const auto* c = std::get_if<ClassDecl>(&d)) {
            if (c->name == name) continue;
            if (c->extends && *c->extends == name) refs.push_back(c->name + " extends");
            if (c->implements) checkType(*c->implements, c->name + " implements");
            for (const auto& mem : c->members) {
                if (const auto* f = std::get_if<FieldDecl>(&mem)) {
                    checkType(f->type, c->name + "." + f->name);
                } else if (const auto* ct = std::get_if<CtorDecl>(&mem)) {
                    for (const auto& prm : ct->params)
                        checkType(prm.type, c->name + " constructor");
                } else {
                    const auto& m = std::get<MethodDecl>(mem);
                    std::string where = c->name + "." + m.name;
                    checkType(m.return_type, where);
                    for (const auto& prm : m.params) checkType(prm.type, where);
                    if (m.body)
                        for (const auto& s : *m.body) {
                            if (s.kind == StmtKind::LocalDecl) checkType(s.type, where);
                            if (exprMentionsType(s.expr, name)) refs.push_back(where);
                        }
                }
            }
        } else {
            const auto& i = std::get<InterfaceDecl>(d);
            if (i.name == name) continue;
            for (const auto& s : i.signatures) {
                std::string where = i.name + "." + s.name;
                checkType(s.return_type, where);
                for (const auto& prm : s.params) checkType(prm.type, where);
            }
        }
    }
    return refs;
}

std::string quoteArg(const std::string& s) {
    bool plain = !s.empty() && s.find_first_of(" \t\"\\") == std::string::npos;
    if (plain) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string printSig(const MethodDecl& m) { return printMethodInline(m); }

struct Violations {
    std::vector<PreconditionViolation> list;
    void add(const std::string& rule, const std::string& location, const std::string& message) {
        list.push_back({0, "", rule, location, message});
    }
    bool empty() const { return list.empty(); }
};

// --- the move rewrite -------------------------------------------------------

ExprPtr applyRewriteToVisitor(const ExprPtr& e, const MoveRewrite& rw) {
    if (!e) return e;
    if (e->kind == ExprKind::FieldAccess && e->target && e->target->kind == ExprKind::This) {
        auto it = rw.field_to_getter.find(e->name);
        if (it != rw.field_to_getter.end())
            return makeCall(makeVar(*rw.self_to_param), it->second, {});
    }
    if (e->kind == ExprKind::This) return makeVar(*rw.self_to_param);
    if (e->kind == ExprKind::Call && rw.calls_to_accept && e->name == rw.op_name &&
        e->args.empty())
        return makeCall(applyRewriteToVisitor(e->target, rw), rw.accept_name, {makeThis()});
    auto copy = std::make_shared<Expr>(*e);
    copy->target = applyRewriteToVisitor(e->target, rw);
    copy->rhs = applyRewriteToVisitor(e->rhs, rw);
    for (auto& a : copy->args) a = applyRewriteToVisitor(a, rw);
    return copy;
}

ExprPtr applyRewriteToSubtype(const ExprPtr& e, const MoveRewrite& rw,
                              const std::string& param_name) {
    if (!e) return e;
    if (e->kind == ExprKind::Call && rw.accept_to_calls && e->name == rw.accept_name &&
        e->args.size() == 1 && e->args[0]->kind == ExprKind::This)
        return makeCall(applyRewriteToSubtype(e->target, rw, param_name), rw.op_name, {});
    if (e->kind == ExprKind::Call && e->args.empty()) {
        auto it = rw.getter_to_field.find(e->name);
        if (it != rw.getter_to_field.end())
            return makeField(applyRewriteToSubtype(e->target, rw, param_name), it->second);
    }
    if (e->kind == ExprKind::VarRef && e->name == param_name) return makeThis();
    auto copy = std::make_shared<Expr>(*e);
    copy->target = applyRewriteToSubtype(e->target, rw, param_name);
    copy->rhs = applyRewriteToSubtype(e->rhs, rw, param_name);
    for (auto& a : copy->args) a = applyRewriteToSubtype(a, rw, param_name);
    return copy;
}

Body rewriteMovedBody(const Body& body, const MoveRewrite& rw, const std::string& source_param) {
    Body out;
    for (const Stmt& s : body) {
        Stmt ns = s;
        ns.expr = rw.self_to_param ? applyRewriteToVisitor(s.expr, rw)
                                   : applyRewriteToSubtype(s.expr, rw, source_param);
        out.push_back(std::move(ns));
    }
    return out;
}

// --- per-op preconditions and application -----------------------------------

class Kernel {
public:
    explicit Kernel(const Program& p) : p_(p) {}

    Violations check(const RefactoringOp& op) {
        Violations v;
        std::visit([&](const auto& o) { checkOp(o, v); }, op);
        return v;
    }

    Program apply(const RefactoringOp& op) {
        Program out = p_;
        std::visit([&](const auto& o) { applyOp(out, o); }, op);
        return out;
    }

private:
    // CreateClass
    void checkOp(const CreateClass& o, Violations& v) {
        if (declExists(p_, o.name))
            v.add("name-unused", o.name, "name " + o.name + " already declared");
        if (o.extends && !findClass(p_, *o.extends))
            v.add("superclass-exists", o.name, "unknown superclass " + *o.extends);
        if (o.implements &&
            (o.implements->kind != TypeKind::Named || !findInterface(p_, o.implements->name)))
            v.add("interface-exists", o.name, "unknown interface " + printType(*o.implements));
    }
    void applyOp(Program& p, const CreateClass& o) {
        ClassDecl c;
        c.name = o.name;
        c.is_abstract = o.is_abstract;
        c.extends = o.extends;
        c.implements = o.implements;
        p.decls.emplace_back(std::move(c));
    }

    // CreateInterface
    void checkOp(const CreateInterface& o, Violations& v) {
        if (declExists(p_, o.name))
            v.add("name-unused", o.name, "name " + o.name + " already declared");
    }
    void applyOp(Program& p, const CreateInterface& o) {
        InterfaceDecl i;
        i.name = o.name;
        i.type_param = o.type_param;
        p.decls.emplace_back(std::move(i));
    }

    // AddMethod
    void checkOp(const AddMethod& o, Violations& v) {
        const ClassDecl* c = findClass(p_, o.class_name);
        if (!c) {
            v.add("class-exists", o.class_name, "unknown class " + o.class_name);
            return;
        }
        if (findMethod(*c, o.method.name) || findField(*c, o.method.name))
            v.add("member-unused", o.class_name + "." + o.method.name,
                  "member " + o.method.name + " already exists");
        if (!o.method.body) {
            v.add("has-body", o.class_name + "." + o.method.name, "AddMethod requires a body");
            return;
        }
        for (const auto& d : checkMethodBody(p_, o.class_name, o.method))
            v.add("body-resolvable", d.location, d.message);
    }
    void applyOp(Program& p, const AddMethod& o) {
        findClassMut(p, o.class_name)->members.emplace_back(o.method);
    }

    // AddAbstractMethod
    void checkOp(const AddAbstractMethod& o, Violations& v) {
        if (const InterfaceDecl* i = findInterface(p_, o.type_name)) {
            for (const auto& s : i->signatures)
                if (s.name == o.method.name)
                    v.add("member-unused", o.type_name + "." + o.method.name,
                          "signature " + o.method.name + " already exists");
            return;
        }
        const ClassDecl* c = findClass(p_, o.type_name);
        if (!c) {
            v.add("type-exists", o.type_name, "unknown type " + o.type_name);
            return;
        }
        if (const MethodDecl* m = findMethod(*c, o.method.name)) {
            if (m->is_abstract)
                v.add("member-unused", o.type_name + "." + o.method.name,
                      "abstract method " + o.method.name + " already exists");
            else if (!m->body || !isDelegatingBody(*m->body))
                v.add("replaces-delegating", o.type_name + "." + o.method.name,
                      "existing method " + o.method.name + " is not a delegating facade");
        }
    }
    void applyOp(Program& p, const AddAbstractMethod& o) {
        if (InterfaceDecl* i = findInterfaceMut(p, o.type_name)) {
            MethodSig s;
            s.return_type = o.method.return_type;
            s.name = o.method.name;
            s.params = o.method.params;
            s.comment = o.method.comment;
            i->signatures.push_back(std::move(s));
            return;
        }
        ClassDecl* c = findClassMut(p, o.type_name);
        MethodDecl m = o.method;
        m.is_abstract = true;
        m.body.reset();
        if (MethodDecl* existing = findMethodMut(*c, o.method.name)) {
            m.comment = existing->comment;  // comments stay with the declaration
            *existing = std::move(m);
        } else {
            c->members.emplace_back(std::move(m));
        }
    }

    // DeleteMethod
    void checkOp(const DeleteMethod& o, Violations& v) {
        const ClassDecl* c = findClass(p_, o.class_name);
        if (!c) {
            v.add("class-exists", o.class_name, "unknown class " + o.class_name);
            return;
        }
        if (!findMethod(*c, o.method_name)) {
            v.add("method-exists", o.class_name + "." + o.method_name,
                  "no method " + o.method_name);
            return;
        }
        forEachResolvedCall(p_, [&](const ResolvedCall& rc) {
            if (rc.owner == o.class_name && rc.method == o.method_name)
                v.add("no-live-call-sites", rc.context,
                      "live call sites: " + rc.context + " still calls " + o.class_name + "." +
                          o.method_name);
        });
    }
    void applyOp(Program& p, const DeleteMethod& o) {
        ClassDecl* c = findClassMut(p, o.class_name);
        std::erase_if(c->members, [&](const Member& m) {
            const auto* md = std::get_if<MethodDecl>(&m);
            return md && md->name == o.method_name;
        });
    }

    // DeleteClass / DeleteInterface
    void checkOp(const DeleteClass& o, Violations& v) {
        if (!findClass(p_, o.name)) {
            v.add("class-exists", o.name, "unknown class " + o.name);
            return;
        }
        for (const auto& where : typeReferences(p_, o.name))
            v.add("no-references", where, where + " still references " + o.name);
    }
    void applyOp(Program& p, const DeleteClass& o) {
        std::erase_if(p.decls, [&](const Decl& d) {
            return std::holds_alternative<ClassDecl>(d) && declName(d) == o.name;
        });
    }
    void checkOp(const DeleteInterface& o, Violations& v) {
        if (!findInterface(p_, o.name)) {
            v.add("interface-exists", o.name, "unknown interface " + o.name);
            return;
        }
        for (const auto& where : typeReferences(p_, o.name))
            v.add("no-references", where, where + " still references " + o.name);
    }
    void applyOp(Program& p, const DeleteInterface& o) {
        std::erase_if(p.decls, [&](const Decl& d) {
            return std::holds_alternative<InterfaceDecl>(d) && declName(d) == o.name;
        });
    }

    // MoveMethodBody
    void checkOp(const MoveMethodBody& o, Violations& v) {
        const ClassDecl* fc = findClass(p_, o.from_class);
        const ClassDecl* tc = findClass(p_, o.to_class);
        std::string from = o.from_class + "." + o.from_method;
        std::string to = o.to_class + "." + o.to_method;
        if (!fc) {
            v.add("class-exists", o.from_class, "unknown class " + o.from_class);
            return;
        }
        if (!tc) {
            v.add("class-exists", o.to_class, "unknown class " + o.to_class);
            return;
        }
        const MethodDecl* fm = findMethod(*fc, o.from_method);
        const MethodDecl* tm = findMethod(*tc, o.to_method);
        if (!fm || !fm->body) {
            v.add("source-has-body", from, "source method has no body");
            return;
        }
        if (!tm || tm->body) {
            v.add("target-bodyless", to,
                  tm ? "target method already has a body" : "target method does not exist");
            return;
        }
        if (fm->return_type != tm->return_type)
            v.add("compatible-signature", to, "return types differ");
        if (o.rewrite.self_to_param) {
            if (!fm->params.empty()) v.add("compatible-signature", from, "source must be nullary");
            if (tm->params.size() != 1 || tm->params[0].name != *o.rewrite.self_to_param ||
                tm->params[0].type != Type::named(o.from_class))
                v.add("compatible-signature", to,
                      "target must take exactly one " + o.from_class + " parameter named " +
                          *o.rewrite.self_to_param);
        } else if (o.rewrite.param_to_self) {
            if (fm->params.size() != 1)
                v.add("compatible-signature", from, "source must take exactly one parameter");
            if (!tm->params.empty()) v.add("compatible-signature", to, "target must be nullary");
        }
        if (!v.empty()) return;
        // the rewritten body must resolve in its new home
        MethodDecl probe = *tm;
        probe.is_abstract = false;
        probe.body = rewriteMovedBody(*fm->body, o.rewrite,
                                      fm->params.empty() ? "" : fm->params[0].name);
        for (const auto& d : checkMethodBody(p_, o.to_class, probe))
            v.add("body-resolvable", d.location, d.message);
    }
    void applyOp(Program& p, const MoveMethodBody& o) {
        ClassDecl* fc = findClassMut(p, o.from_class);
        ClassDecl* tc = findClassMut(p, o.to_class);
        MethodDecl* fm = findMethodMut(*fc, o.from_method);
        MethodDecl* tm = findMethodMut(*tc, o.to_method);
        tm->body = rewriteMovedBody(*fm->body, o.rewrite,
                                    fm->params.empty() ? "" : fm->params[0].name);
        tm->is_abstract = false;
        if (tm->comment.empty()) tm->comment = fm->comment;
        fm->body.reset();
        fm->is_abstract = true;
        fm->comment.clear();
    }

    // RewriteCalls
    void checkOp(const RewriteCalls& o, Violations& v) {
        if (!findClass(p_, o.receiver_class) && !findInterface(p_, o.receiver_class)) {
            v.add("type-exists", o.receiver_class, "unknown type " + o.receiver_class);
            return;
        }
        if (findClass(p_, o.receiver_class) &&
            !lookupMethod(p_, o.receiver_class, o.method_to, nullptr))
            v.add("target-method-exists", o.receiver_class,
                  "no method " + o.method_to + " on " + o.receiver_class);
    }
    void applyOp(Program& p, const RewriteCalls& o) {
        const Program snapshot = p;
        rewriteBodies(p, [&](const ExprPtr& e, const ClassDecl& cls, const MethodDecl&,
                             const std::map<std::string, Type>& scope) -> ExprPtr {
            if (e->kind != ExprKind::Call || e->name != o.method_from) return e;
            auto t = staticTypeInContext(snapshot, cls.name, scope, e->target);
            if (!t || !isSubtypeOf(snapshot, *t, Type::named(o.receiver_class))) return e;
            auto copy = std::make_shared<Expr>(*e);
            copy->name = o.method_to;
            return copy;
        });
    }

    // EncapsulateField
    void checkOp(const EncapsulateField& o, Violations& v) {
        const ClassDecl* c = findClass(p_, o.class_name);
        if (!c) {
            v.add("class-exists", o.class_name, "unknown class " + o.class_name);
            return;
        }
        const FieldDecl* f = findField(*c, o.field_name);
        if (!f) {
            v.add("field-exists", o.class_name + "." + o.field_name,
                  "no field " + o.field_name);
            return;
        }
        std::string getter = getterName(o.field_name);
        if (lookupMethod(p_, o.class_name, getter, nullptr))
            v.add("getter-unused", o.class_name + "." + getter,
                  "a method named " + getter + " already exists");
    }
    void applyOp(Program& p, const EncapsulateField& o) {
        ClassDecl* c = findClassMut(p, o.class_name);
        const FieldDecl* f = findField(*c, o.field_name);
        MethodDecl g;
        g.vis = Visibility::Public;
        g.return_type = f->type;
        g.name = getterName(o.field_name);
        g.body = Body{Stmt{StmtKind::Return, {}, "", makeField(makeThis(), o.field_name)}};
        c->members.emplace_back(std::move(g));
        const Program snapshot = p;
        rewriteBodies(p, [&](const ExprPtr& e, const ClassDecl& cls, const MethodDecl&,
                             const std::map<std::string, Type>& scope) -> ExprPtr {
            if (cls.name == o.class_name) return e;  // internal accesses stay direct
            if (e->kind != ExprKind::FieldAccess || e->name != o.field_name) return e;
            auto t = staticTypeInContext(snapshot, cls.name, scope, e->target);
            if (!t || t->kind != TypeKind::Named) return e;
            std::string in;
            if (!lookupField(snapshot, t->name, o.field_name, &in) || in != o.class_name)
                return e;
            return makeCall(e->target, getterName(o.field_name), {});
        });
    }

    // InlineTrivialGetter
    void checkOp(const InlineTrivialGetter& o, Violations& v) {
        const ClassDecl* c = findClass(p_, o.class_name);
        if (!c) {
            v.add("class-exists", o.class_name, "unknown class " + o.class_name);
            return;
        }
        const MethodDecl* g = findMethod(*c, o.getter_name);
        std::string field = trivialGetterField(c, g);
        if (field.empty()) {
            v.add("trivial-getter", o.class_name + "." + o.getter_name,
                  "getter body is not exactly `return this.f;` for a declared field");
            return;
        }
        const FieldDecl* f = findField(*c, field);
        if (f->vis == Visibility::Public) return;  // every site stays legal
        forEachResolvedCall(p_, [&](const ResolvedCall& rc) {
            if (rc.owner != o.class_name || rc.method != o.getter_name) return;
            std::string caller_class = rc.context.substr(0, rc.context.find('.'));
            if (caller_class != o.class_name)
                v.add("call-sites-rewritable", rc.context,
                      "call site in " + rc.context + " cannot access private field " + field);
        });
    }
    void applyOp(Program& p, const InlineTrivialGetter& o) {
        ClassDecl* c = findClassMut(p, o.class_name);
        std::string field = trivialGetterField(c, findMethod(*c, o.getter_name));
        const Program snapshot = p;
        rewriteBodies(p, [&](const ExprPtr& e, const ClassDecl& cls, const MethodDecl& m,
                             const std::map<std::string, Type>& scope) -> ExprPtr {
            if (cls.name == o.class_name && m.name == o.getter_name) return e;
            if (e->kind != ExprKind::Call || e->name != o.getter_name || !e->args.empty())
                return e;
            auto t = staticTypeInContext(snapshot, cls.name, scope, e->target);
            if (!t || !isSubtypeOf(snapshot, *t, Type::named(o.class_name))) return e;
            return makeField(e->target, field);
        });
        ClassDecl* c2 = findClassMut(p, o.class_name);
        std::erase_if(c2->members, [&](const Member& m) {
            const auto* md = std::get_if<MethodDecl>(&m);
            return md && md->name == o.getter_name;
        });
    }

    // ChangeVisibility
    void checkOp(const ChangeVisibility& o, Violations& v) {
        const ClassDecl* c = findClass(p_, o.class_name);
        if (!c) {
            v.add("class-exists", o.class_name, "unknown class " + o.class_name);
            return;
        }
        if (!findField(*c, o.member_name) && !findMethod(*c, o.member_name))
            v.add("member-exists", o.class_name + "." + o.member_name,
                  "no member " + o.member_name);
    }
    void applyOp(Program& p, const ChangeVisibility& o) {
        ClassDecl* c = findClassMut(p, o.class_name);
        for (auto& mem : c->members) {
            if (auto* f = std::get_if<FieldDecl>(&mem); f && f->name == o.member_name)
                f->vis = o.visibility;
            if (auto* m = std::get_if<MethodDecl>(&mem); m && m->name == o.member_name)
                m->vis = o.visibility;
        }
    }

    // RenameDeclaration
    void checkOp(const RenameDeclaration& o, Violations& v) {
        bool found = declExists(p_, o.old_name);
        for (const auto& d : p_.decls) {
            if (const auto* c = std::get_if<ClassDecl>(&d)) {
                for (const auto& mem : c->members) {
                    if (const auto* f = std::get_if<FieldDecl>(&mem)) {
                        if (f->name == o.old_name) found = true;
                        if (f->name == o.new_name)
                            v.add("name-unused", c->name, "name " + o.new_name + " in use");
                    } else if (const auto* m = std::get_if<MethodDecl>(&mem)) {
                        if (m->name == o.old_name) found = true;
                        if (m->name == o.new_name)
                            v.add("name-unused", c->name, "name " + o.new_name + " in use");
                    }
                }
            } else {
                for (const auto& s : std::get<InterfaceDecl>(d).signatures) {
                    if (s.name == o.old_name) found = true;
                    if (s.name == o.new_name)
                        v.add("name-unused", declName(d), "name " + o.new_name + " in use");
                }
            }
        }
        if (declExists(p_, o.new_name))
            v.add("name-unused", o.new_name, "name " + o.new_name + " already declared");
        if (!found)
            v.add("name-exists", o.old_name, "nothing named " + o.old_name + " to rename");
    }
    void applyOp(Program& p, const RenameDeclaration& o) {
        auto rn = [&](std::string& s) {
            if (s == o.old_name) s = o.new_name;
        };
        std::function<void(Type&)> rnType = [&](Type& t) {
            if (t.kind == TypeKind::Named) rn(t.name);
            if (t.arg) {
                Type a = *t.arg;
                rnType(a);
                t.arg = std::make_shared<Type>(std::move(a));
            }
        };
        auto rnExpr = [&](const ExprPtr& e) -> ExprPtr {
            if ((e->kind == ExprKind::New || e->kind == ExprKind::VarRef) && e->name == o.old_name) {
                auto c = std::make_shared<Expr>(*e);
                c->name = o.new_name;
                return ExprPtr(c);
            }
            if ((e->kind == ExprKind::Call || e->kind == ExprKind::FieldAccess) &&
                e->name == o.old_name) {
                auto c = std::make_shared<Expr>(*e);
                c->name = o.new_name;
                return ExprPtr(c);
            }
            return e;
        };
        for (auto& d : p.decls) {
            if (auto* c = std::get_if<ClassDecl>(&d)) {
                rn(c->name);
                if (c->extends) rn(*c->extends);
                if (c->implements) rnType(*c->implements);
                for (auto& mem : c->members) {
                    if (auto* f = std::get_if<FieldDecl>(&mem)) {
                        rn(f->name);
                        rnType(f->type);
                    } else if (auto* ct = std::get_if<CtorDecl>(&mem)) {
                        rn(ct->class_name);
                        for (auto& prm : ct->params) rnType(prm.type);
                        for (auto& [f, prm] : ct->assigns) rn(f);
                    } else {
                        auto& m = std::get<MethodDecl>(mem);
                        rn(m.name);
                        rnType(m.return_type);
                        for (auto& prm : m.params) rnType(prm.type);
                        if (m.body)
                            for (auto& s : *m.body) {
                                rnType(s.type);
                                s.expr = mapExpr(s.expr, rnExpr);
                            }
                    }
                }
            } else {
                auto& i = std::get<InterfaceDecl>(d);
                rn(i.name);
                for (auto& s : i.signatures) {
                    rn(s.name);
                    rnType(s.return_type);
                    for (auto& prm : s.params) rnType(prm.type);
                }
            }
        }
    }

    // AddDelegatingMethod
    void checkOp(const AddDelegatingMethod& o, Violations& v) {
        const ClassDecl* c = findClass(p_, o.class_name);
        std::string where = o.class_name + "." + o.method.name;
        if (!c) {
            v.add("class-exists", o.class_name, "unknown class " + o.class_name);
            return;
        }
        if (!o.method.body || !isDelegatingBody(*o.method.body)) {
            v.add("delegating-body", where, "body is not a single delegating return");
            return;
        }
        if (const MethodDecl* m = findMethod(*c, o.method.name)) {
            if (!m->is_abstract)
                v.add("replaces-abstract", where,
                      "existing method " + o.method.name + " is not abstract");
            else if (m->return_type != o.method.return_type)
                v.add("compatible-signature", where, "return type differs from abstract method");
        }
        MethodDecl probe = o.method;
        for (const auto& d : checkMethodBody(p_, o.class_name, probe))
            v.add("body-resolvable", d.location, d.message);
    }
    void applyOp(Program& p, const AddDelegatingMethod& o) {
        ClassDecl* c = findClassMut(p, o.class_name);
        MethodDecl m = o.method;
        if (MethodDecl* existing = findMethodMut(*c, o.method.name)) {
            m.comment = existing->comment;
            *existing = std::move(m);
        } else {
            c->members.emplace_back(std::move(m));
        }
    }

public:
    static std::string getterName(const std::string& field) { return "get" + capitalize(field); }

    static std::string trivialGetterField(const ClassDecl* c, const MethodDecl* g) {
        if (!c || !g || !g->body || g->body->size() != 1 || !g->params.empty()) return "";
        const Stmt& s = (*g->body)[0];
        if (s.kind != StmtKind::Return || !s.expr) return "";
        if (s.expr->kind != ExprKind::FieldAccess || !s.expr->target ||
            s.expr->target->kind != ExprKind::This)
            return "";
        if (!findField(*c, s.expr->name)) return "";
        return s.expr->name;
    }

private:
    const Program& p_;
};

struct LabelVisitor {
    std::string operator()(const CreateClass& o) const { return "CreateClass " + o.name; }
    std::string operator()(const CreateInterface& o) const { return "CreateInterface " + o.name; }
    std::string operator()(const AddMethod& o) const {
        return "AddMethod " + o.class_name + "." + o.method.name;
    }
    std::string operator()(const AddAbstractMethod& o) const {
        return "AddAbstractMethod " + o.type_name + "." + o.method.name;
    }
    std::string operator()(const DeleteMethod& o) const {
        return "DeleteMethod " + o.class_name + "." + o.method_name;
    }
    std::string operator()(const DeleteClass& o) const { return "DeleteClass " + o.name; }
    std::string operator()(const DeleteInterface& o) const { return "DeleteInterface " + o.name; }
    std::string operator()(const MoveMethodBody& o) const {
        return "MoveMethodBody " + o.from_class + "." + o.from_method + " -> " + o.to_class + "." +
               o.to_method;
    }
    std::string operator()(const RewriteCalls& o) const {
        return "RewriteCalls " + o.method_from + " -> " + o.method_to + " on " + o.receiver_class;
    }
    std::string operator()(const EncapsulateField& o) const {
        return "EncapsulateField " + o.class_name + "." + o.field_name;
    }
    std::string operator()(const InlineTrivialGetter& o) const {
        return "InlineTrivialGetter " + o.class_name + "." + o.getter_name;
    }
    std::string operator()(const ChangeVisibility& o) const {
        return "ChangeVisibility " + o.class_name + "." + o.member_name;
    }
    std::string operator()(const RenameDeclaration& o) const {
        return "RenameDeclaration " + o.old_name + " -> " + o.new_name;
    }
    std::string operator()(const AddDelegatingMethod& o) const {
        return "AddDelegatingMethod " + o.class_name + "." + o.method.name;
    }
};

struct SerializeVisitor {
    std::string operator()(const CreateClass& o) const {
        std::string s = "CreateClass name=" + quoteArg(o.name);
        if (o.is_abstract) s += " abstract=true";
        if (o.extends) s += " extends=" + quoteArg(*o.extends);
        if (o.implements) s += " implements=" + quoteArg(printType(*o.implements));
        return s;
    }
    std::string operator()(const CreateInterface& o) const {
        std::string s = "CreateInterface name=" + quoteArg(o.name);
        if (o.type_param) s += " type_param=" + quoteArg(*o.type_param);
        return s;
    }
    std::string operator()(const AddMethod& o) const {
        return "AddMethod class=" + quoteArg(o.class_name) + " method=" +
               quoteArg(printSig(o.method));
    }
    std::string operator()(const AddAbstractMethod& o) const {
        return "AddAbstractMethod type=" + quoteArg(o.type_name) + " method=" +
               quoteArg(printSig(o.method));
    }
    std::string operator()(const DeleteMethod& o) const {
        return "DeleteMethod class=" + quoteArg(o.class_name) + " method=" +
               quoteArg(o.method_name);
    }
    std::string operator()(const DeleteClass& o) const {
        return "DeleteClass name=" + quoteArg(o.name);
    }
    std::string operator()(const DeleteInterface& o) const {
        return "DeleteInterface name=" + quoteArg(o.name);
    }
    std::string operator()(const MoveMethodBody& o) const {
        std::string s = "MoveMethodBody from=" + quoteArg(o.from_class + "." + o.from_method) +
                        " to=" + quoteArg(o.to_class + "." + o.to_method);
        if (o.rewrite.self_to_param) s += " param=" + quoteArg(*o.rewrite.self_to_param);
        if (o.rewrite.param_to_self) s += " param_to_self=true";
        if (!o.rewrite.op_name.empty()) s += " op=" + quoteArg(o.rewrite.op_name);
        if (!o.rewrite.accept_name.empty()) s += " accept=" + quoteArg(o.rewrite.accept_name);
        auto joinMap = [](const std::map<std::string, std::string>& m) {
            std::string out;
            for (const auto& [k, v] : m) {
                if (!out.empty()) out += ",";
                out += k + ":" + v;
            }
            return out;
        };
        if (!o.rewrite.field_to_getter.empty())
            s += " getters=" + quoteArg(joinMap(o.rewrite.field_to_getter));
        if (!o.rewrite.getter_to_field.empty())
            s += " fields=" + quoteArg(joinMap(o.rewrite.getter_to_field));
        return s;
    }
    std::string operator()(const RewriteCalls& o) const {
        return "RewriteCalls from=" + quoteArg(o.method_from) + " to=" + quoteArg(o.method_to) +
               " receiver=" + quoteArg(o.receiver_class);
    }
    std::string operator()(const EncapsulateField& o) const {
        return "EncapsulateField class=" + quoteArg(o.class_name) + " field=" +
               quoteArg(o.field_name);
    }
    std::string operator()(const InlineTrivialGetter& o) const {
        return "InlineTrivialGetter class=" + quoteArg(o.class_name) + " getter=" +
               quoteArg(o.getter_name);
    }
    std::string operator()(const ChangeVisibility& o) const {
        return "ChangeVisibility class=" + quoteArg(o.class_name) + " member=" +
               quoteArg(o.member_name) + " visibility=" +
               (o.visibility == Visibility::Public ? "public" : "private");
    }
    std::string operator()(const RenameDeclaration& o) const {
        return "RenameDeclaration old=" + quoteArg(o.old_name) + " new=" + quoteArg(o.new_name);
    }
    std::string operator()(const AddDelegatingMethod& o) const {
        return "AddDelegatingMethod class=" + quoteArg(o.class_name) + " method=" +
               quoteArg(printSig(o.method));
    }
};

}  // namespace

std::string opLabel(const RefactoringOp& op) { return std::visit(LabelVisitor{}, op); }

std::vector<PreconditionViolation> check_preconditions(const RefactoringOp& op,
                                                       const Program& p) {
    Violations v = Kernel(p).check(op);
    for (auto& x : v.list) x.op_label = opLabel(op);
    return std::move(v.list);
}

Program apply_op(const RefactoringOp& op, const Program& p) {
    auto violations = check_preconditions(op, p);
    if (!violations.empty()) throw PlanError{std::move(violations)};
    return Kernel(p).apply(op);
}

ApplyReport apply_plan(const Plan& plan, const Program& p) {
    ApplyReport report;
    Program cur = p;
    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
        const RefactoringOp& op = plan.steps[i];
        auto violations = check_preconditions(op, cur);
        if (!violations.empty()) {
            for (auto& v : violations) v.step_index = i;
            report.success = false;
            report.violations = std::move(violations);
            return report;  // input preserved: no partial result exposed
        }
        cur = Kernel(cur).apply(op);
        ++report.steps_executed;
        report.step_summaries.push_back(opLabel(op));
    }
    report.success = true;
    report.result = std::move(cur);
    return report;
}

std::string serializePlan(const Plan& plan) {
    std::ostringstream out;
    out << "# plan " << plan.label << "\n";
    for (const auto& op : plan.steps) out << std::visit(SerializeVisitor{}, op) << "\n";
    return out.str();
}

std::string formatViolations(const std::vector<PreconditionViolation>& vs) {
    std::ostringstream out;
    for (const auto& v : vs)
        out << "step " << v.step_index << " (" << v.op_label << "): rule " << v.rule << " at "
            << v.location << ": " << v.message << "\n";
    return out.str();
}

bool isDelegatingBody(const Body& body) {
    if (body.size() != 1 || body[0].kind != StmtKind::Return) return false;
    const ExprPtr& e = body[0].expr;
    if (!e || e->kind != ExprKind::Call) return false;
    if (!e->target || !isSimpleArg(e->target)) return false;
    for (const auto& a : e->args)
        if (!isSimpleArg(a)) return false;
    return true;
}

}  // namespace dualshift
