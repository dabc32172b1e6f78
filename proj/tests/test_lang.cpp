#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "dualshift/parser.hpp"
#include "dualshift/printer.hpp"
#include "dualshift/typecheck.hpp"
#include "gen.hpp"

using namespace dualshift;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Program parsed(const std::string& src) {
    auto r = parse(src, "<test>");
    if (auto* diags = std::get_if<std::vector<Diagnostic>>(&r))
        FAIL(formatDiagnostics(*diags));
    return std::get<Program>(r);
}

std::vector<Diagnostic> parseErrors(const std::string& src) {
    auto r = parse(src, "<test>");
    REQUIRE(std::holds_alternative<std::vector<Diagnostic>>(r));
    return std::get<std::vector<Diagnostic>>(r);
}

bool hasMessage(const std::vector<Diagnostic>& ds, const std::string& needle) {
    for (const auto& d : ds)
        if (d.message.find(needle) != std::string::npos) return true;
    return false;
}

const std::string kFixtures = DUALSHIFT_FIXTURE_DIR;

}  // namespace

TEST_CASE("golden fixtures are parse/pretty fixpoints") {
    for (const char* name : {"pdata.mj", "pfun.mj", "p6x6.mj", "mixed_operation.mj", "mixed_subtype.mj",
                             "pdata_clash.mj"}) {
        std::string src = slurp(kFixtures + "/" + name);
        Program p = parsed(src);
        CHECK_MESSAGE(pretty(p) == src, name);
    }
}

TEST_CASE("fixtures typecheck cleanly") {
    for (const char* name : {"pdata.mj", "pfun.mj", "p6x6.mj", "mixed_operation.mj", "mixed_subtype.mj",
                             "pdata_clash.mj"}) {
        Program p = parsed(slurp(kFixtures + "/" + name));
        auto diags = typecheck(p);
        CHECK_MESSAGE(diags.empty(), name, ": ", formatDiagnostics(diags));
    }
}

TEST_CASE("duplicate top-level declarations are rejected") {
    auto ds = parseErrors("class A {} class A {}");
    CHECK(hasMessage(ds, "duplicate declaration A"));
}

TEST_CASE("mixed operand types for + are rejected") {
    Program p = parsed(
        "class A {\n"
        "    public int m() {\n"
        "        return 1 + \"x\";\n"
        "    }\n"
        "}\n");
    auto diags = typecheck(p);
    CHECK(hasMessage(diags, "operands of + must both be int or both be string"));
}

TEST_CASE("comments attach only when contiguous") {
    Program p = parsed(
        "// attached\n"
        "class A {\n"
        "}\n"
        "\n"
        "// floating\n"
        "\n"
        "class B {\n"
        "}\n");
    const ClassDecl* a = findClass(p, "A");
    const ClassDecl* b = findClass(p, "B");
    CHECK(a->comment == CommentBlock{"attached"});
    CHECK(b->comment.empty());
}

TEST_CASE("canonicalize partitions members and is idempotent") {
    Program p = parsed(
        "class A {\n"
        "    public int m() {\n"
        "        return 1;\n"
        "    }\n"
        "\n"
        "    private int f;\n"
        "\n"
        "    public A(int f) {\n"
        "        this.f = f;\n"
        "    }\n"
        "}\n");
    Program c = canonicalize(p);
    const ClassDecl* a = findClass(c, "A");
    REQUIRE(a->members.size() == 3);
    CHECK(std::holds_alternative<FieldDecl>(a->members[0]));
    CHECK(std::holds_alternative<CtorDecl>(a->members[1]));
    CHECK(std::holds_alternative<MethodDecl>(a->members[2]));
    CHECK(pretty(canonicalize(c)) == pretty(c));
}

TEST_CASE("typecheck catches private access, ctor coverage, and bad overrides") {
    CHECK(!typecheck(parsed("class A {\n"
                            "    private int f;\n"
                            "\n"
                            "    public A(int f) {\n"
                            "        this.f = f;\n"
                            "    }\n"
                            "}\n"
                            "\n"
                            "class B {\n"
                            "    public int m(A a) {\n"
                            "        return a.f;\n"
                            "    }\n"
                            "}\n"))
               .empty());
    // ctor must assign every field
    CHECK(!typecheck(parsed("class A {\n"
                            "    private int f;\n"
                            "\n"
                            "    public A(int x) {\n"
                            "        this.f = x;\n"
                            "        this.f = x;\n"
                            "    }\n"
                            "}\n"))
               .empty());
    // override with a different signature
    CHECK(!typecheck(parsed("abstract class A {\n"
                            "    public abstract int m();\n"
                            "}\n"
                            "\n"
                            "class B extends A {\n"
                            "    public string m() {\n"
                            "        return \"x\";\n"
                            "    }\n"
                            "}\n"))
               .empty());
}

TEST_CASE("interface type arguments are substituted at call sites") {
    Program p = parsed(slurp(kFixtures + "/pfun.mj"));
    CHECK(typecheck(p).empty());
    // v.visitNum(this) must yield T, bound to int inside EvalVisitor
    auto parsedE = parseExpr("new Num(4).accept(new EvalVisitor())");
    REQUIRE(std::holds_alternative<ExprPtr>(parsedE));
    Type t;
    auto diags = typecheckEntry(p, std::get<ExprPtr>(parsedE), &t);
    CHECK(diags.empty());
    CHECK(t == Type::intType());
}

TEST_CASE("parse/pretty fixpoint on 1000 seeded random programs") {
    int failures = 0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        Program p = testgen::genProgram(seed);
        std::string text = pretty(p);
        auto r = parse(text, "<gen>");
        if (auto* diags = std::get_if<std::vector<Diagnostic>>(&r)) {
            ++failures;
            MESSAGE("seed ", seed, " does not reparse:\n", formatDiagnostics(*diags), text);
            continue;
        }
        const Program& q = std::get<Program>(r);
        if (!(p == q) || pretty(q) != text) {
            ++failures;
            MESSAGE("seed ", seed, " not a fixpoint:\n", text);
        }
    }
    CHECK(failures == 0);
}
