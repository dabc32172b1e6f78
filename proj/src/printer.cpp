#include "dualshift/printer.hpp"

#include <sstream>

namespace dualshift {
namespace {

const std::string kIndent = "    ";

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

// Precedence levels: 1 comparison, 2 additive, 3 postfix/primary.
int precedence(const Expr& e) {
    if (e.kind == ExprKind::BinOp) return e.name == "+" ? 2 : 1;
    return 3;
}

void printExprTo(std::ostream& out, const ExprPtr& e, int min_prec);

void printChild(std::ostream& out, const ExprPtr& e, int min_prec) {
    if (precedence(*e) < min_prec) {
        out << "(";
        printExprTo(out, e, 1);
        out << ")";
    } else {
        printExprTo(out, e, 1);
    }
}

void printExprTo(std::ostream& out, const ExprPtr& e, int) {
    switch (e->kind) {
        case ExprKind::IntLit: out << e->int_val; break;
        case ExprKind::StrLit: out << '"' << escape(e->str_val) << '"'; break;
        case ExprKind::BoolLit: out << (e->bool_val ? "true" : "false"); break;
        case ExprKind::VarRef: out << e->name; break;
        case ExprKind::This: out << "this"; break;
        case ExprKind::FieldAccess:
            printChild(out, e->target, 3);
            out << "." << e->name;
            break;
        case ExprKind::Call: {
            printChild(out, e->target, 3);
            out << "." << e->name << "(";
            bool first = true;
            for (const auto& a : e->args) {
                if (!first) out << ", ";
                first = false;
                printChild(out, a, 1);
            }
            out << ")";
            break;
        }
        case ExprKind::New: {
            out << "new " << e->name << "(";
            bool first = true;
            for (const auto& a : e->args) {
                if (!first) out << ", ";
                first = false;
                printChild(out, a, 1);
            }
            out << ")";
            break;
        }
        case ExprKind::BinOp: {
            int p = precedence(*e);
            // comparisons are non-associative: both operands need >= additive
            printChild(out, e->target, p == 1 ? 2 : p);
            out << " " << e->name << " ";
            printChild(out, e->rhs, p + 1);
            break;
        }
        case ExprKind::StrConv:
            out << "str(";
            printChild(out, e->target, 1);
            out << ")";
            break;
    }
}

void printComment(std::ostream& out, const CommentBlock& c, int indent) {
    for (const auto& line : c) {
        for (int i = 0; i < indent; ++i) out << kIndent;
        out << "//";
        if (!line.empty()) out << " " << line;
        out << "\n";
    }
}

void printParamsTo(std::ostream& out, const std::vector<Param>& ps) {
    out << "(";
    bool first = true;
    for (const auto& p : ps) {
        if (!first) out << ", ";
        first = false;
        out << printType(p.type) << " " << p.name;
    }
    out << ")";
}

void printMethodHeader(std::ostream& out, const MethodDecl& m) {
    out << (m.vis == Visibility::Public ? "public" : "private");
    if (m.is_abstract) out << " abstract";
    if (m.type_param) out << " <" << *m.type_param << ">";
    out << " " << printType(m.return_type) << " " << m.name;
    printParamsTo(out, m.params);
}

void printMember(std::ostream& out, const Member& m) {
    if (const auto* f = std::get_if<FieldDecl>(&m)) {
        printComment(out, f->comment, 1);
        out << kIndent << (f->vis == Visibility::Public ? "public" : "private") << " "
            << printType(f->type) << " " << f->name << ";\n";
    } else if (const auto* ct = std::get_if<CtorDecl>(&m)) {
        printComment(out, ct->comment, 1);
        out << kIndent << (ct->vis == Visibility::Public ? "public" : "private") << " "
            << ct->class_name;
        printParamsTo(out, ct->params);
        out << " {\n";
        for (const auto& [f, p] : ct->assigns)
            out << kIndent << kIndent << "this." << f << " = " << p << ";\n";
        out << kIndent << "}\n";
    } else {
        const auto& md = std::get<MethodDecl>(m);
        printComment(out, md.comment, 1);
        out << kIndent;
        printMethodHeader(out, md);
        if (!md.body) {
            out << ";\n";
            return;
        }
        out << " {\n";
        for (const auto& s : *md.body) out << kIndent << kIndent << printStmt(s) << "\n";
        out << kIndent << "}\n";
    }
}

void printDecl(std::ostream& out, const Decl& d) {
    if (const auto* c = std::get_if<ClassDecl>(&d)) {
        printComment(out, c->comment, 0);
        if (c->is_abstract) out << "abstract ";
        out << "class " << c->name;
        if (c->extends) out << " extends " << *c->extends;
        if (c->implements) out << " implements " << printType(*c->implements);
        out << " {\n";
        bool first = true;
        for (const auto& m : c->members) {
            if (!first) out << "\n";
            first = false;
            printMember(out, m);
        }
        out << "}\n";
    } else {
        const auto& i = std::get<InterfaceDecl>(d);
        printComment(out, i.comment, 0);
        out << "interface " << i.name;
        if (i.type_param) out << "<" << *i.type_param << ">";
        out << " {\n";
        bool first = true;
        for (const auto& s : i.signatures) {
            if (!first) out << "\n";
            first = false;
            printComment(out, s.comment, 1);
            out << kIndent << printType(s.return_type) << " " << s.name;
            printParamsTo(out, s.params);
            out << ";\n";
        }
        out << "}\n";
    }
}

}  // namespace

std::string printType(const Type& t) {
    switch (t.kind) {
        case TypeKind::Int: return "int";
        case TypeKind::Bool: return "boolean";
        case TypeKind::String: return "string";
        case TypeKind::Void: return "void";
        case TypeKind::Var: return t.name;
        case TypeKind::Named:
            if (t.arg) return t.name + "<" + printType(*t.arg) + ">";
            return t.name;
    }
    return "void";
}

std::string printExpr(const ExprPtr& e) {
    std::ostringstream out;
    printExprTo(out, e, 1);
    return out.str();
}

std::string printStmt(const Stmt& s) {
    std::ostringstream out;
    switch (s.kind) {
        case StmtKind::Return: out << "return " << printExpr(s.expr) << ";"; break;
        case StmtKind::LocalDecl:
            out << printType(s.type) << " " << s.name << " = " << printExpr(s.expr) << ";";
            break;
        case StmtKind::ExprStmt: out << printExpr(s.expr) << ";"; break;
    }
    return out.str();
}

std::string printMethodInline(const MethodDecl& m) {
    std::ostringstream out;
    printMethodHeader(out, m);
    if (!m.body) {
        out << ";";
        return out.str();
    }
    out << " {";
    for (const auto& s : *m.body) out << " " << printStmt(s);
    out << " }";
    return out.str();
}

std::string pretty(const Program& p) {
    std::ostringstream out;
    bool first = true;
    for (const auto& d : p.decls) {
        if (!first) out << "\n";
        first = false;
        printDecl(out, d);
    }
    return out.str();
}

Program canonicalize(const Program& p) {
    Program out = p;
    for (auto& d : out.decls) {
        auto* c = std::get_if<ClassDecl>(&d);
        if (!c) continue;
        std::vector<Member> fields, ctors, methods;
        for (auto& m : c->members) {
            if (std::holds_alternative<FieldDecl>(m))
                fields.push_back(std::move(m));
            else if (std::holds_alternative<CtorDecl>(m))
                ctors.push_back(std::move(m));
            else
                methods.push_back(std::move(m));
        }
        std::vector<Member> ordered;
        ordered.reserve(c->members.size());
        for (auto& m : fields) ordered.push_back(std::move(m));
        for (auto& m : ctors) ordered.push_back(std::move(m));
        for (auto& m : methods) ordered.push_back(std::move(m));
        c->members = std::move(ordered);
    }
    return out;
}

}  // namespace dualshift
