// Abstract syntax for MiniObj, a small class-based object language.
// All nodes are immutable after construction; rewrites build new nodes.
// Structural equality ignores source positions.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dualshift {

// ---------------------------------------------------------------------------
// Types

enum class TypeKind { Int, Bool, String, Void, Named, Var };

struct Type {
    TypeKind kind = TypeKind::Void;
    std::string name;             // Named: class/interface name; Var: type variable
    std::shared_ptr<Type> arg;    // Named only: single type argument (e.g. Visitor<T>)

    static Type intType() { return {TypeKind::Int, "", nullptr}; }
    static Type boolType() { return {TypeKind::Bool, "", nullptr}; }
    static Type stringType() { return {TypeKind::String, "", nullptr}; }
    static Type voidType() { return {TypeKind::Void, "", nullptr}; }
    static Type named(std::string n) { return {TypeKind::Named, std::move(n), nullptr}; }
    static Type named(std::string n, Type a) {
        return {TypeKind::Named, std::move(n), std::make_shared<Type>(std::move(a))};
    }
    static Type var(std::string n) { return {TypeKind::Var, std::move(n), nullptr}; }
};

bool equal(const Type& a, const Type& b);
inline bool operator==(const Type& a, const Type& b) { return equal(a, b); }
inline bool operator!=(const Type& a, const Type& b) { return !equal(a, b); }

// ---------------------------------------------------------------------------
// Expressions

enum class ExprKind {
    IntLit,
    StrLit,
    BoolLit,
    VarRef,
    This,
    FieldAccess,  // target.name
    Call,         // target.name(args)
    New,          // new name(args)
    BinOp,        // target <name> rhs, name in {"+", "==", "<"}
    StrConv       // str(target)
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind = ExprKind::IntLit;
    std::int64_t int_val = 0;
    bool bool_val = false;
    std::string str_val;
    std::string name;
    ExprPtr target;
    ExprPtr rhs;
    std::vector<ExprPtr> args;
    int line = 0, col = 0;  // not part of equality
};

ExprPtr makeInt(std::int64_t v);
ExprPtr makeStr(std::string v);
ExprPtr makeBool(bool v);
ExprPtr makeVar(std::string name);
ExprPtr makeThis();
ExprPtr makeField(ExprPtr target, std::string field);
ExprPtr makeCall(ExprPtr target, std::string method, std::vector<ExprPtr> args);
ExprPtr makeNew(std::string cls, std::vector<ExprPtr> args);
ExprPtr makeBin(std::string op, ExprPtr lhs, ExprPtr rhs);
ExprPtr makeStrConv(ExprPtr e);

bool equal(const ExprPtr& a, const ExprPtr& b);

// ---------------------------------------------------------------------------
// Statements

enum class StmtKind { Return, LocalDecl, ExprStmt };

struct Stmt {
    StmtKind kind = StmtKind::ExprStmt;
    Type type;         // LocalDecl
    std::string name;  // LocalDecl
    ExprPtr expr;
    int line = 0, col = 0;
};

bool equal(const Stmt& a, const Stmt& b);
using Body = std::vector<Stmt>;
bool equal(const Body& a, const Body& b);

// ---------------------------------------------------------------------------
// Declarations

enum class Visibility { Public, Private };

struct Param {
    Type type;
    std::string name;
};
bool equal(const Param& a, const Param& b);

using CommentBlock = std::vector<std::string>;  // comment lines, no "//" prefix

struct FieldDecl {
    Visibility vis = Visibility::Private;
    Type type;
    std::string name;
    CommentBlock comment;
};

struct CtorDecl {
    Visibility vis = Visibility::Public;
    std::string class_name;
    std::vector<Param> params;
    // body is restricted to assignments `this.field = param;`
    std::vector<std::pair<std::string, std::string>> assigns;
    CommentBlock comment;
};

struct MethodDecl {
    Visibility vis = Visibility::Public;
    bool is_abstract = false;
    std::optional<std::string> type_param;  // e.g. <T>
    Type return_type;
    std::string name;
    std::vector<Param> params;
    std::optional<Body> body;  // absent iff abstract
    CommentBlock comment;
};

using Member = std::variant<FieldDecl, CtorDecl, MethodDecl>;

struct ClassDecl {
    std::string name;
    bool is_abstract = false;
    std::optional<std::string> extends;
    std::optional<Type> implements;  // interface, possibly instantiated: Visitor<int>
    std::vector<Member> members;
    CommentBlock comment;
};

struct MethodSig {
    Type return_type;
    std::string name;
    std::vector<Param> params;
    CommentBlock comment;
};

struct InterfaceDecl {
    std::string name;
    std::optional<std::string> type_param;
    std::vector<MethodSig> signatures;
    CommentBlock comment;
};

using Decl = std::variant<ClassDecl, InterfaceDecl>;

struct Program {
    std::vector<Decl> decls;
    std::string source_name;  // label only, not part of equality
};

bool equal(const FieldDecl& a, const FieldDecl& b);
bool equal(const CtorDecl& a, const CtorDecl& b);
bool equal(const MethodDecl& a, const MethodDecl& b);
bool equal(const Member& a, const Member& b);
bool equal(const MethodSig& a, const MethodSig& b);
bool equal(const ClassDecl& a, const ClassDecl& b);
bool equal(const InterfaceDecl& a, const InterfaceDecl& b);
bool equal(const Decl& a, const Decl& b);
bool equal(const Program& a, const Program& b);
inline bool operator==(const Program& a, const Program& b) { return equal(a, b); }
inline bool operator!=(const Program& a, const Program& b) { return !equal(a, b); }

const std::string& declName(const Decl& d);

// Lookup helpers; return nullptr when absent.
const ClassDecl* findClass(const Program& p, const std::string& name);
const InterfaceDecl* findInterface(const Program& p, const std::string& name);
const MethodDecl* findMethod(const ClassDecl& c, const std::string& name);
const FieldDecl* findField(const ClassDecl& c, const std::string& name);
const CtorDecl* findCtor(const ClassDecl& c);

// ---------------------------------------------------------------------------
// Diagnostics

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string location;  // "decl.member" path or "line:col"
    std::string message;
};

std::string formatDiagnostics(const std::vector<Diagnostic>& ds);

}  // namespace dualshift
