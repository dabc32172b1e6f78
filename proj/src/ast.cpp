#include "dualshift/ast.hpp"

#include <sstream>

namespace dualshift {

bool equal(const Type& a, const Type& b) {
    if (a.kind != b.kind || a.name != b.name) return false;
    if (!a.arg && !b.arg) return true;
    if (!a.arg || !b.arg) return false;
    return equal(*a.arg, *b.arg);
}

namespace {
ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
}  // namespace

ExprPtr makeInt(std::int64_t v) {
    Expr e;
    e.kind = ExprKind::IntLit;
    e.int_val = v;
    return node(std::move(e));
}

ExprPtr makeStr(std::string v) {
    Expr e;
    e.kind = ExprKind::StrLit;
    e.str_val = std::move(v);
    return node(std::move(e));
}

ExprPtr makeBool(bool v) {
    Expr e;
    e.kind = ExprKind::BoolLit;
    e.bool_val = v;
    return node(std::move(e));
}

ExprPtr makeVar(std::string name) {
    Expr e;
    e.kind = ExprKind::VarRef;
    e.name = std::move(name);
    return node(std::move(e));
}

ExprPtr makeThis() {
    Expr e;
    e.kind = ExprKind::This;
    return node(std::move(e));
}

ExprPtr makeField(ExprPtr target, std::string field) {
    Expr e;
    e.kind = ExprKind::FieldAccess;
    e.target = std::move(target);
    e.name = std::move(field);
    return node(std::move(e));
}

ExprPtr makeCall(ExprPtr target, std::string method, std::vector<ExprPtr> args) {
    Expr e;
    e.kind = ExprKind::Call;
    e.target = std::move(target);
    e.name = std::move(method);
    e.args = std::move(args);
    return node(std::move(e));
}

ExprPtr makeNew(std::string cls, std::vector<ExprPtr> args) {
    Expr e;
    e.kind = ExprKind::New;
    e.name = std::move(cls);
    e.args = std::move(args);
    return node(std::move(e));
}

ExprPtr makeBin(std::string op, ExprPtr lhs, ExprPtr rhs) {
    Expr e;
    e.kind = ExprKind::BinOp;
    e.name = std::move(op);
    e.target = std::move(lhs);
    e.rhs = std::move(rhs);
    return node(std::move(e));
}

ExprPtr makeStrConv(ExprPtr inner) {
    Expr e;
    e.kind = ExprKind::StrConv;
    e.target = std::move(inner);
    return node(std::move(e));
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a && !b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    if (a->int_val != b->int_val || a->bool_val != b->bool_val) return false;
    if (a->str_val != b->str_val || a->name != b->name) return false;
    if (!equal(a->target, b->target) || !equal(a->rhs, b->rhs)) return false;
    if (a->args.size() != b->args.size()) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!equal(a->args[i], b->args[i])) return false;
    return true;
}

bool equal(const Stmt& a, const Stmt& b) {
    return a.kind == b.kind && a.type == b.type && a.name == b.name && equal(a.expr, b.expr);
}

bool equal(const Body& a, const Body& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!equal(a[i], b[i])) return false;
    return true;
}

bool equal(const Param& a, const Param& b) { return a.type == b.type && a.name == b.name; }

namespace {
bool equalParams(const std::vector<Param>& a, const std::vector<Param>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!equal(a[i], b[i])) return false;
    return true;
}
}  // namespace

bool equal(const FieldDecl& a, const FieldDecl& b) {
    return a.vis == b.vis && a.type == b.type && a.name == b.name && a.comment == b.comment;
}

bool equal(const CtorDecl& a, const CtorDecl& b) {
    return a.vis == b.vis && a.class_name == b.class_name && equalParams(a.params, b.params) &&
           a.assigns == b.assigns && a.comment == b.comment;
}

bool equal(const MethodDecl& a, const MethodDecl& b) {
    if (a.vis != b.vis || a.is_abstract != b.is_abstract || a.type_param != b.type_param)
        return false;
    if (a.return_type != b.return_type || a.name != b.name) return false;
    if (!equalParams(a.params, b.params) || a.comment != b.comment) return false;
    if (a.body.has_value() != b.body.has_value()) return false;
    return !a.body || equal(*a.body, *b.body);
}

bool equal(const Member& a, const Member& b) {
    if (a.index() != b.index()) return false;
    return std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            return equal(x, std::get<T>(b));
        },
        a);
}

bool equal(const MethodSig& a, const MethodSig& b) {
    return a.return_type == b.return_type && a.name == b.name && equalParams(a.params, b.params) &&
           a.comment == b.comment;
}

bool equal(const ClassDecl& a, const ClassDecl& b) {
    if (a.name != b.name || a.is_abstract != b.is_abstract || a.extends != b.extends) return false;
    if (a.implements.has_value() != b.implements.has_value()) return false;
    if (a.implements && *a.implements != *b.implements) return false;
    if (a.comment != b.comment) return false;
    if (a.members.size() != b.members.size()) return false;
    for (std::size_t i = 0; i < a.members.size(); ++i)
        if (!equal(a.members[i], b.members[i])) return false;
    return true;
}

bool equal(const InterfaceDecl& a, const InterfaceDecl& b) {
    if (a.name != b.name || a.type_param != b.type_param || a.comment != b.comment) return false;
    if (a.signatures.size() != b.signatures.size()) return false;
    for (std::size_t i = 0; i < a.signatures.size(); ++i)
        if (!equal(a.signatures[i], b.signatures[i])) return false;
    return true;
}

bool equal(const Decl& a, const Decl& b) {
    if (a.index() != b.index()) return false;
    return std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            return equal(x, std::get<T>(b));
        },
        a);
}

bool equal(const Program& a, const Program& b) {
    if (a.decls.size() != b.decls.size()) return false;
    for (std::size_t i = 0; i < a.decls.size(); ++i)
        if (!equal(a.decls[i], b.decls[i])) return false;
    return true;
}

const std::string& declName(const Decl& d) {
    return std::visit([](const auto& x) -> const std::string& { return x.name; }, d);
}

const ClassDecl* findClass(const Program& p, const std::string& name) {
    for (const auto& d : p.decls)
        if (const auto* c = std::get_if<ClassDecl>(&d); c && c->name == name) return c;
    return nullptr;
}

const InterfaceDecl* findInterface(const Program& p, const std::string& name) {
    for (const auto& d : p.decls)
        if (const auto* i = std::get_if<InterfaceDecl>(&d); i && i->name == name) return i;
    return nullptr;
}

const MethodDecl* findMethod(const ClassDecl& c, const std::string& name) {
    for (const auto& m : c.members)
        if (const auto* md = std::get_if<MethodDecl>(&m); md && md->name == name) return md;
    return nullptr;
}

const FieldDecl* findField(const ClassDecl& c, const std::string& name) {
    for (const auto& m : c.members)
        if (const auto* f = std::get_if<FieldDecl>(&m); f && f->name == name) return f;
    return nullptr;
}

const CtorDecl* findCtor(const ClassDecl& c) {
    for (const auto& m : c.members)
        if (const auto* ct = std::get_if<CtorDecl>(&m)) return ct;
    return nullptr;
}

std::string formatDiagnostics(const std::vector<Diagnostic>& ds) {
    std::ostringstream out;
    for (const auto& d : ds) {
        out << (d.severity == Severity::Error ? "error" : "warning");
        if (!d.location.empty()) out << " at " << d.location;
        out << ": " << d.message << "\n";
    }
    return out.str();
}

}  // namespace dualshift
