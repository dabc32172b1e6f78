#include "dualshift/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace dualshift {
namespace {

enum class Tok {
    Ident,
    IntLit,
    StrLit,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Lt,
    Gt,
    Semi,
    Comma,
    Dot,
    Assign,
    Plus,
    EqEq,
    End
};

struct PendingComment {
    int line;
    std::string text;
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::int64_t int_val = 0;
    int line = 1, col = 1;
    std::vector<PendingComment> comments;  // comments seen since previous token
};

struct LexError {
    int line, col;
    std::string message;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    std::vector<Token> run(std::vector<Diagnostic>& diags) {
        std::vector<Token> out;
        std::vector<PendingComment> pending;
        while (true) {
            skipSpace(pending);
            Token t;
            t.line = line_;
            t.col = col_;
            t.comments = std::move(pending);
            pending.clear();
            if (pos_ >= src_.size()) {
                t.kind = Tok::End;
                out.push_back(std::move(t));
                return out;
            }
            char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = pos_;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                    advance();
                t.kind = Tok::Ident;
                t.text = src_.substr(start, pos_ - start);
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t start = pos_;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    advance();
                t.kind = Tok::IntLit;
                t.int_val = std::strtoll(src_.substr(start, pos_ - start).c_str(), nullptr, 10);
            } else if (c == '"') {
                advance();
                std::string v;
                bool closed = false;
                while (pos_ < src_.size()) {
                    char d = src_[pos_];
                    if (d == '"') {
                        advance();
                        closed = true;
                        break;
                    }
                    if (d == '\\') {
                        advance();
                        if (pos_ >= src_.size()) break;
                        char e = src_[pos_];
                        advance();
                        switch (e) {
                            case 'n': v.push_back('\n'); break;
                            case 't': v.push_back('\t'); break;
                            case '\\': v.push_back('\\'); break;
                            case '"': v.push_back('"'); break;
                            default:
                                diags.push_back({Severity::Error, loc(t),
                                                 std::string("unknown escape \\") + e});
                        }
                    } else if (d == '\n') {
                        break;
                    } else {
                        v.push_back(d);
                        advance();
                    }
                }
                if (!closed)
                    diags.push_back({Severity::Error, loc(t), "unterminated string literal"});
                t.kind = Tok::StrLit;
                t.text = std::move(v);
            } else {
                advance();
                switch (c) {
                    case '{': t.kind = Tok::LBrace; break;
                    case '}': t.kind = Tok::RBrace; break;
                    case '(': t.kind = Tok::LParen; break;
                    case ')': t.kind = Tok::RParen; break;
                    case '<': t.kind = Tok::Lt; break;
                    case '>': t.kind = Tok::Gt; break;
                    case ';': t.kind = Tok::Semi; break;
                    case ',': t.kind = Tok::Comma; break;
                    case '.': t.kind = Tok::Dot; break;
                    case '+': t.kind = Tok::Plus; break;
                    case '=':
                        if (pos_ < src_.size() && src_[pos_] == '=') {
                            advance();
                            t.kind = Tok::EqEq;
                        } else {
                            t.kind = Tok::Assign;
                        }
                        break;
                    default:
                        diags.push_back(
                            {Severity::Error, loc(t), std::string("unexpected character '") + c + "'"});
                        continue;  // skip it
                }
            }
            out.push_back(std::move(t));
        }
    }

private:
    static std::string loc(const Token& t) {
        return std::to_string(t.line) + ":" + std::to_string(t.col);
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skipSpace(std::vector<PendingComment>& pending) {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                int cline = line_;
                advance();
                advance();
                if (pos_ < src_.size() && src_[pos_] == ' ') advance();
                std::string text;
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    text.push_back(src_[pos_]);
                    advance();
                }
                pending.push_back({cline, std::move(text)});
            } else {
                break;
            }
        }
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

const std::set<std::string> kKeywords = {"abstract", "class",  "interface", "extends",
                                         "implements", "public", "private",   "int",
                                         "boolean",    "string", "void",      "return",
                                         "new",        "this",   "true",      "false",
                                         "str"};

struct ParseFail {};

class Parser {
public:
    Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags)
        : toks_(std::move(toks)), diags_(diags) {}

    Program parseProgram(const std::string& source_name) {
        Program p;
        p.source_name = source_name;
        while (cur().kind != Tok::End) p.decls.push_back(parseDecl());
        std::set<std::string> seen;
        for (const auto& d : p.decls) {
            const std::string& n = declName(d);
            if (!seen.insert(n).second)
                diags_.push_back({Severity::Error, n, "duplicate declaration " + n});
        }
        return p;
    }

    ExprPtr parseEntryExpr() {
        ExprPtr e = parseExprNode();
        expect(Tok::End, "end of input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        const Token& t = cur();
        diags_.push_back({Severity::Error,
                          std::to_string(t.line) + ":" + std::to_string(t.col), msg});
        throw ParseFail{};
    }

    const Token& cur() const { return toks_[pos_]; }
    const Token& peek(std::size_t n = 1) const {
        return toks_[std::min(pos_ + n, toks_.size() - 1)];
    }
    Token take() { return toks_[pos_++]; }

    Token expect(Tok kind, const std::string& what) {
        if (cur().kind != kind) fail("expected " + what);
        return take();
    }

    bool isWord(const Token& t, const char* w) const {
        return t.kind == Tok::Ident && t.text == w;
    }
    bool atWord(const char* w) const { return isWord(cur(), w); }
    bool eatWord(const char* w) {
        if (atWord(w)) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string expectName() {
        if (cur().kind != Tok::Ident || kKeywords.count(cur().text)) fail("expected identifier");
        return take().text;
    }

    // A comment block attaches only when contiguous with the token it precedes.
    CommentBlock takeComments() {
        const Token& t = cur();
        CommentBlock out;
        std::size_t i = t.comments.size();
        int next_line = t.line;
        while (i > 0 && t.comments[i - 1].line == next_line - 1) {
            next_line = t.comments[i - 1].line;
            --i;
        }
        for (std::size_t j = i; j < t.comments.size(); ++j) out.push_back(t.comments[j].text);
        return out;
    }

    Type parseType() {
        if (eatWord("int")) return Type::intType();
        if (eatWord("boolean")) return Type::boolType();
        if (eatWord("string")) return Type::stringType();
        if (eatWord("void")) return Type::voidType();
        std::string name = expectName();
        if (cur().kind == Tok::Lt) {
            ++pos_;
            Type arg = parseType();
            expect(Tok::Gt, "'>'");
            return Type::named(std::move(name), std::move(arg));
        }
        return Type::named(std::move(name));
    }

    Decl parseDecl() {
        CommentBlock comment = takeComments();
        bool is_abstract = eatWord("abstract");
        if (eatWord("interface")) {
            if (is_abstract) fail("interfaces cannot be abstract");
            return parseInterface(std::move(comment));
        }
        if (!eatWord("class")) fail("expected 'class' or 'interface'");
        ClassDecl c;
        c.comment = std::move(comment);
        c.is_abstract = is_abstract;
        c.name = expectName();
        if (eatWord("extends")) c.extends = expectName();
        if (eatWord("implements")) c.implements = parseType();
        expect(Tok::LBrace, "'{'");
        while (cur().kind != Tok::RBrace) c.members.push_back(parseMember(c.name));
        take();
        return c;
    }

    Decl parseInterface(CommentBlock comment) {
        InterfaceDecl i;
        i.comment = std::move(comment);
        i.name = expectName();
        if (cur().kind == Tok::Lt) {
            ++pos_;
            i.type_param = expectName();
            expect(Tok::Gt, "'>'");
        }
        expect(Tok::LBrace, "'{'");
        while (cur().kind != Tok::RBrace) {
            MethodSig s;
            s.comment = takeComments();
            s.return_type = parseType();
            if (i.type_param && s.return_type.kind == TypeKind::Named &&
                s.return_type.name == *i.type_param && !s.return_type.arg)
                s.return_type = Type::var(*i.type_param);
            s.name = expectName();
            s.params = parseParams(i.type_param);
            expect(Tok::Semi, "';'");
            i.signatures.push_back(std::move(s));
        }
        take();
        return i;
    }

    std::vector<Param> parseParams(const std::optional<std::string>& type_var) {
        expect(Tok::LParen, "'('");
        std::vector<Param> ps;
        if (cur().kind != Tok::RParen) {
            while (true) {
                Param p;
                p.type = resolveTypeVar(parseType(), type_var);
                p.name = expectName();
                ps.push_back(std::move(p));
                if (cur().kind == Tok::Comma) {
                    ++pos_;
                    continue;
                }
                break;
            }
        }
        expect(Tok::RParen, "')'");
        return ps;
    }

    static Type resolveTypeVar(Type t, const std::optional<std::string>& type_var) {
        if (!type_var) return t;
        if (t.kind == TypeKind::Named && t.name == *type_var && !t.arg)
            return Type::var(*type_var);
        if (t.arg) {
            Type a = resolveTypeVar(*t.arg, type_var);
            t.arg = std::make_shared<Type>(std::move(a));
        }
        return t;
    }

    Member parseMember(const std::string& class_name) {
        CommentBlock comment = takeComments();
        Visibility vis = Visibility::Public;
        if (eatWord("private"))
            vis = Visibility::Private;
        else if (!eatWord("public"))
            fail("expected 'public' or 'private'");

        // constructor: vis ClassName ( ... )
        if (cur().kind == Tok::Ident && cur().text == class_name && peek().kind == Tok::LParen) {
            CtorDecl ct;
            ct.comment = std::move(comment);
            ct.vis = vis;
            ct.class_name = take().text;
            ct.params = parseParams(std::nullopt);
            expect(Tok::LBrace, "'{'");
            while (cur().kind != Tok::RBrace) {
                if (!eatWord("this")) fail("constructor bodies contain only 'this.f = p;'");
                expect(Tok::Dot, "'.'");
                std::string f = expectName();
                expect(Tok::Assign, "'='");
                std::string v = expectName();
                expect(Tok::Semi, "';'");
                ct.assigns.emplace_back(std::move(f), std::move(v));
            }
            take();
            return ct;
        }

        MethodDecl m;
        m.comment = std::move(comment);
        m.vis = vis;
        m.is_abstract = eatWord("abstract");
        if (cur().kind == Tok::Lt) {
            ++pos_;
            m.type_param = expectName();
            expect(Tok::Gt, "'>'");
        }
        Type t = resolveTypeVar(parseType(), m.type_param);
        if (cur().kind == Tok::Semi) {  // field: vis type name ;
            fail("expected member name");
        }
        std::string name = expectName();
        if (cur().kind == Tok::Semi && !m.is_abstract && !m.type_param) {
            ++pos_;
            FieldDecl f;
            f.comment = std::move(m.comment);
            f.vis = vis;
            f.type = std::move(t);
            f.name = std::move(name);
            return f;
        }
        m.return_type = std::move(t);
        m.name = std::move(name);
        m.params = parseParams(m.type_param);
        if (cur().kind == Tok::Semi) {
            ++pos_;
            if (!m.is_abstract) fail("non-abstract method requires a body");
            return m;
        }
        if (m.is_abstract) fail("abstract method cannot have a body");
        expect(Tok::LBrace, "'{'");
        Body body;
        while (cur().kind != Tok::RBrace) body.push_back(parseStmt());
        take();
        m.body = std::move(body);
        return m;
    }

    bool startsType() const {
        return atWord("int") || atWord("boolean") || atWord("string") || atWord("void");
    }

    Stmt parseStmt() {
        Stmt s;
        s.line = cur().line;
        s.col = cur().col;
        if (eatWord("return")) {
            s.kind = StmtKind::Return;
            s.expr = parseExprNode();
            expect(Tok::Semi, "';'");
            return s;
        }
        // Local declaration: type ID = expr ;
        bool local = false;
        if (startsType()) {
            local = true;
        } else if (cur().kind == Tok::Ident && !kKeywords.count(cur().text)) {
            if (peek().kind == Tok::Ident && peek(2).kind == Tok::Assign) local = true;
            if (peek().kind == Tok::Lt && peek(2).kind == Tok::Ident && peek(3).kind == Tok::Gt &&
                peek(4).kind == Tok::Ident && peek(5).kind == Tok::Assign)
                local = true;
        }
        if (local) {
            s.kind = StmtKind::LocalDecl;
            s.type = parseType();
            s.name = expectName();
            expect(Tok::Assign, "'='");
            s.expr = parseExprNode();
            expect(Tok::Semi, "';'");
            return s;
        }
        s.kind = StmtKind::ExprStmt;
        s.expr = parseExprNode();
        expect(Tok::Semi, "';'");
        return s;
    }

    // comparison := additive (("==" | "<") additive)?
    ExprPtr parseExprNode() {
        ExprPtr lhs = parseAdditive();
        if (cur().kind == Tok::EqEq || cur().kind == Tok::Lt) {
            std::string op = cur().kind == Tok::EqEq ? "==" : "<";
            ++pos_;
            ExprPtr rhs = parseAdditive();
            return makeBin(op, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    ExprPtr parseAdditive() {
        ExprPtr e = parsePostfix();
        while (cur().kind == Tok::Plus) {
            ++pos_;
            ExprPtr rhs = parsePostfix();
            e = makeBin("+", std::move(e), std::move(rhs));
        }
        return e;
    }

    ExprPtr parsePostfix() {
        ExprPtr e = parsePrimary();
        while (cur().kind == Tok::Dot) {
            ++pos_;
            std::string name = expectName();
            if (cur().kind == Tok::LParen) {
                e = makeCall(std::move(e), std::move(name), parseArgs());
            } else {
                e = makeField(std::move(e), std::move(name));
            }
        }
        return e;
    }

    std::vector<ExprPtr> parseArgs() {
        expect(Tok::LParen, "'('");
        std::vector<ExprPtr> args;
        if (cur().kind != Tok::RParen) {
            while (true) {
                args.push_back(parseExprNode());
                if (cur().kind == Tok::Comma) {
                    ++pos_;
                    continue;
                }
                break;
            }
        }
        expect(Tok::RParen, "')'");
        return args;
    }

    ExprPtr parsePrimary() {
        const Token& t = cur();
        int line = t.line, col = t.col;
        auto withPos = [&](ExprPtr e) {
            auto m = std::make_shared<Expr>(*e);
            m->line = line;
            m->col = col;
            return ExprPtr(m);
        };
        if (t.kind == Tok::IntLit) {
            ++pos_;
            return withPos(makeInt(t.int_val));
        }
        if (t.kind == Tok::StrLit) {
            ++pos_;
            return withPos(makeStr(t.text));
        }
        if (t.kind == Tok::LParen) {
            ++pos_;
            ExprPtr e = parseExprNode();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (eatWord("true")) return withPos(makeBool(true));
        if (eatWord("false")) return withPos(makeBool(false));
        if (eatWord("this")) return withPos(makeThis());
        if (eatWord("str")) {
            expect(Tok::LParen, "'('");
            ExprPtr inner = parseExprNode();
            expect(Tok::RParen, "')'");
            return withPos(makeStrConv(std::move(inner)));
        }
        if (eatWord("new")) {
            std::string cls = expectName();
            return withPos(makeNew(std::move(cls), parseArgs()));
        }
        if (t.kind == Tok::Ident && !kKeywords.count(t.text)) {
            ++pos_;
            return withPos(makeVar(t.text));
        }
        fail("expected expression");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<Diagnostic>& diags_;
};

}  // namespace

ParseResult parse(const std::string& source, const std::string& source_name) {
    std::vector<Diagnostic> diags;
    Lexer lexer(source);
    std::vector<Token> toks = lexer.run(diags);
    if (!diags.empty()) return diags;
    Parser parser(std::move(toks), diags);
    try {
        Program p = parser.parseProgram(source_name);
        if (!diags.empty()) return diags;
        return p;
    } catch (const ParseFail&) {
        return diags;
    }
}

std::variant<ExprPtr, std::vector<Diagnostic>> parseExpr(const std::string& source) {
    std::vector<Diagnostic> diags;
    Lexer lexer(source);
    std::vector<Token> toks = lexer.run(diags);
    if (!diags.empty()) return diags;
    Parser parser(std::move(toks), diags);
    try {
        ExprPtr e = parser.parseEntryExpr();
        if (!diags.empty()) return diags;
        return e;
    } catch (const ParseFail&) {
        return diags;
    }
}

}  // namespace dualshift
