// Seeded generators used by the property tests: random well-formed MiniObj
// programs (syntactic, for the parse/pretty fixpoint) and random entry
// expression trees over a detected hierarchy (for behavior preservation).

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dualshift/ast.hpp"
#include "dualshift/lens.hpp"

namespace dualshift::testgen {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    int below(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }
    bool chance(int percent) { return below(100) < percent; }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

// --- random entry trees over a data hierarchy -------------------------------

// Builds `new S(...)` trees: int params get small literals, string params get
// short literals, root-typed params recurse (leaf subtypes at the depth cap).
inline ExprPtr genTree(const Program& p, const HierarchyInfo& h, Rng& rng, int depth) {
    std::vector<const ClassDecl*> all, leaves;
    for (const auto& s : h.subtypes) {
        const ClassDecl* c = findClass(p, s);
        bool recursive = false;
        if (const CtorDecl* ct = findCtor(*c))
            for (const auto& prm : ct->params)
                if (prm.type == Type::named(h.root)) recursive = true;
        all.push_back(c);
        if (!recursive) leaves.push_back(c);
    }
    const auto& pool = depth <= 0 ? leaves : all;
    const ClassDecl* c = pool[rng.below(static_cast<int>(pool.size()))];
    std::vector<ExprPtr> args;
    if (const CtorDecl* ct = findCtor(*c))
        for (const auto& prm : ct->params) {
            if (prm.type == Type::named(h.root))
                args.push_back(genTree(p, h, rng, depth - 1));
            else if (prm.type == Type::intType())
                args.push_back(makeInt(rng.below(100)));
            else if (prm.type == Type::stringType())
                args.push_back(makeStr(std::string(1, static_cast<char>('a' + rng.below(26)))));
            else
                args.push_back(makeBool(rng.chance(50)));
        }
    return makeNew(c->name, args);
}

// --- random syntactic programs ----------------------------------------------

namespace detail {

inline std::string ident(Rng& rng, const char* prefix, int n) {
    return std::string(prefix) + std::to_string(n) + std::string(1, static_cast<char>('a' + rng.below(26)));
}

inline Type genType(Rng& rng, const std::vector<std::string>& classes) {
    switch (rng.below(classes.empty() ? 3 : 4)) {
        case 0: return Type::intType();
        case 1: return Type::boolType();
        case 2: return Type::stringType();
        default: return Type::named(classes[rng.below(static_cast<int>(classes.size()))]);
    }
}

inline ExprPtr genExpr(Rng& rng, const std::vector<std::string>& classes, int depth);

inline std::vector<ExprPtr> genArgs(Rng& rng, const std::vector<std::string>& classes,
                                    int depth) {
    std::vector<ExprPtr> args;
    int n = rng.below(3);
    for (int i = 0; i < n; ++i) args.push_back(genExpr(rng, classes, depth - 1));
    return args;
}

inline ExprPtr genExpr(Rng& rng, const std::vector<std::string>& classes, int depth) {
    if (depth <= 0 || rng.chance(35)) {
        switch (rng.below(5)) {
            case 0: return makeInt(rng.below(1000));
            case 1: return makeStr(std::string(1, static_cast<char>('a' + rng.below(26))) +
                                   (rng.chance(20) ? "\"\\\n\t" : ""));
            case 2: return makeBool(rng.chance(50));
            case 3: return makeThis();
            default: return makeVar(ident(rng, "v", rng.below(4)));
        }
    }
    switch (rng.below(6)) {
        case 0:
            return makeField(genExpr(rng, classes, depth - 1), ident(rng, "f", rng.below(4)));
        case 1:
            return makeCall(genExpr(rng, classes, depth - 1), ident(rng, "m", rng.below(4)),
                            genArgs(rng, classes, depth));
        case 2:
            return makeNew(classes.empty() ? "X" : classes[rng.below(static_cast<int>(classes.size()))],
                           genArgs(rng, classes, depth));
        case 3: {
            const char* ops[] = {"+", "==", "<"};
            return makeBin(ops[rng.below(3)], genExpr(rng, classes, depth - 1),
                           genExpr(rng, classes, depth - 1));
        }
        case 4:
            return makeStrConv(genExpr(rng, classes, depth - 1));
        default:
            return makeInt(rng.below(1000));
    }
}

inline CommentBlock maybeComment(Rng& rng) {
    CommentBlock c;
    if (rng.chance(30)) {
        int lines = 1 + rng.below(2);
        for (int i = 0; i < lines; ++i)
            c.push_back("note " + std::to_string(rng.below(100)));
    }
    return c;
}

inline Body genBody(Rng& rng, const std::vector<std::string>& classes) {
    Body b;
    int extra = rng.below(3);
    for (int i = 0; i < extra; ++i) {
        if (rng.chance(50)) {
            Stmt s;
            s.kind = StmtKind::LocalDecl;
            s.type = genType(rng, classes);
            s.name = ident(rng, "l", i);
            s.expr = genExpr(rng, classes, 2);
            b.push_back(std::move(s));
        } else {
            b.push_back({StmtKind::ExprStmt, {}, "", genExpr(rng, classes, 2)});
        }
    }
    b.push_back({StmtKind::Return, {}, "", genExpr(rng, classes, 3)});
    return b;
}

}  // namespace detail

// Well-formed at the grammar level only; type correctness is not attempted.
// Every shape emitted here is in the parser's image, so parse(pretty(p)) == p.
inline Program genProgram(std::uint64_t seed) {
    Rng rng(seed);
    Program p;
    int n_ifaces = rng.below(2);
    int n_classes = 1 + rng.below(4);
    std::vector<std::string> classes, ifaces;
    for (int i = 0; i < n_classes; ++i) classes.push_back("C" + std::to_string(i));
    for (int i = 0; i < n_ifaces; ++i) ifaces.push_back("I" + std::to_string(i));

    for (int i = 0; i < n_ifaces; ++i) {
        InterfaceDecl d;
        d.name = ifaces[i];
        d.comment = detail::maybeComment(rng);
        bool generic = rng.chance(50);
        if (generic) d.type_param = "T";
        int n_sigs = rng.below(3);
        for (int s = 0; s < n_sigs; ++s) {
            MethodSig sig;
            sig.comment = detail::maybeComment(rng);
            sig.return_type = generic && rng.chance(50) ? Type::var("T")
                                                        : detail::genType(rng, classes);
            sig.name = detail::ident(rng, "m", s);
            int n_params = rng.below(3);
            for (int a = 0; a < n_params; ++a)
                sig.params.push_back({detail::genType(rng, classes),
                                      detail::ident(rng, "p", a)});
            d.signatures.push_back(std::move(sig));
        }
        p.decls.emplace_back(std::move(d));
    }

    for (int i = 0; i < n_classes; ++i) {
        ClassDecl c;
        c.name = classes[i];
        c.comment = detail::maybeComment(rng);
        c.is_abstract = rng.chance(30);
        if (i > 0 && rng.chance(40)) c.extends = classes[rng.below(i)];
        if (!ifaces.empty() && rng.chance(30)) {
            const std::string& in = ifaces[rng.below(static_cast<int>(ifaces.size()))];
            c.implements = rng.chance(50)
                               ? Type::named(in, detail::genType(rng, classes))
                               : Type::named(in);
        }
        int n_fields = rng.below(3);
        std::vector<std::string> field_names;
        for (int f = 0; f < n_fields; ++f) {
            FieldDecl fd;
            fd.comment = detail::maybeComment(rng);
            fd.vis = rng.chance(70) ? Visibility::Private : Visibility::Public;
            fd.type = detail::genType(rng, classes);
            fd.name = detail::ident(rng, "f", f);
            field_names.push_back(fd.name);
            c.members.emplace_back(std::move(fd));
        }
        if (!field_names.empty() || rng.chance(40)) {
            CtorDecl ct;
            ct.comment = detail::maybeComment(rng);
            ct.class_name = c.name;
            for (const auto& fn : field_names) {
                ct.params.push_back({detail::genType(rng, classes), "p_" + fn});
                ct.assigns.emplace_back(fn, "p_" + fn);
            }
            c.members.emplace_back(std::move(ct));
        }
        int n_methods = rng.below(4);
        for (int m = 0; m < n_methods; ++m) {
            MethodDecl md;
            md.comment = detail::maybeComment(rng);
            md.vis = rng.chance(80) ? Visibility::Public : Visibility::Private;
            bool generic = rng.chance(15);
            if (generic) md.type_param = "T";
            md.return_type = generic && rng.chance(60) ? Type::var("T")
                                                       : detail::genType(rng, classes);
            md.name = detail::ident(rng, "m", m + 10);
            int n_params = rng.below(3);
            for (int a = 0; a < n_params; ++a)
                md.params.push_back({generic && rng.chance(25)
                                         ? Type::var("T")
                                         : detail::genType(rng, classes),
                                     detail::ident(rng, "q", a)});
            if (rng.chance(25)) {
                md.is_abstract = true;
            } else {
                md.body = detail::genBody(rng, classes);
            }
            c.members.emplace_back(std::move(md));
        }
        p.decls.emplace_back(std::move(c));
    }
    return p;
}

}  // namespace dualshift::testgen
