#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "dualshift/duality.hpp"
#include "dualshift/interp.hpp"
#include "dualshift/parser.hpp"
#include "dualshift/printer.hpp"
#include "dualshift/typecheck.hpp"
#include "gen.hpp"

using namespace dualshift;

namespace {

const std::string kFixtures = DUALSHIFT_FIXTURE_DIR;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Program load(const std::string& name) {
    auto r = parse(slurp(kFixtures + "/" + name), name);
    REQUIRE(std::holds_alternative<Program>(r));
    return std::get<Program>(r);
}

Program transformed(const Program& p, Direction d) {
    TransformResult r = transform(p, d);
    if (!r.success) FAIL(r.error, "\n", formatViolations(r.violations));
    return *r.program;
}

HierarchyInfo detected(const Program& p) {
    auto r = detect_hierarchy(p);
    REQUIRE(std::holds_alternative<HierarchyInfo>(r));
    return std::get<HierarchyInfo>(r);
}

}  // namespace

TEST_CASE("to-visitor maps the data fixture onto the visitor fixture byte-exactly") {
    Program out = transformed(load("pdata.mj"), Direction::ToVisitor);
    CHECK(pretty(out) == slurp(kFixtures + "/pfun.mj"));
}

TEST_CASE("to-composite maps the visitor fixture onto the data fixture byte-exactly") {
    Program out = transformed(load("pfun.mj"), Direction::ToComposite);
    CHECK(pretty(out) == slurp(kFixtures + "/pdata.mj"));
}

TEST_CASE("round trips are byte-identical and fast") {
    for (const char* name : {"pdata.mj", "pfun.mj", "p6x6.mj"}) {
        RoundTripReport rep = roundtrip_check(load(name));
        REQUIRE_MESSAGE(rep.success, name, ": ", rep.error);
        CHECK_MESSAGE(rep.identical, name, ": ", rep.diff);
        CHECK(rep.elapsed_seconds < 1.0);
    }
}

TEST_CASE("transform outputs typecheck and classify flipped") {
    Program fun = transformed(load("pdata.mj"), Direction::ToVisitor);
    CHECK(typecheck(fun).empty());
    CHECK(classify(coverage_matrix(fun, detected(fun))).form == Form::FunctionOriented);
    Program data = transformed(load("p6x6.mj"), Direction::ToVisitor);
    CHECK(typecheck(data).empty());
}

TEST_CASE("behavior is preserved over generated trees in both directions") {
    int mismatches = 0;
    int checked = 0;
    for (const char* name : {"pdata.mj", "p6x6.mj"}) {
        Program data = load(name);
        Program fun = transformed(data, Direction::ToVisitor);
        Program back = transformed(fun, Direction::ToComposite);
        HierarchyInfo h = detected(data);
        testgen::Rng rng(20260826);
        for (int i = 0; i < 120; ++i) {
            ExprPtr tree = testgen::genTree(data, h, rng, 6);
            for (const auto& op : h.operations) {
                ExprPtr entry = makeCall(tree, op.name, {});
                auto a = evaluate(data, entry);
                auto b = evaluate(fun, entry);
                auto c = evaluate(back, entry);
                ++checked;
                REQUIRE(std::holds_alternative<ValuePtr>(a));
                if (!std::holds_alternative<ValuePtr>(b) ||
                    !equal(std::get<ValuePtr>(a), std::get<ValuePtr>(b)))
                    ++mismatches;
                if (!std::holds_alternative<ValuePtr>(c) ||
                    !equal(std::get<ValuePtr>(a), std::get<ValuePtr>(c)))
                    ++mismatches;
            }
        }
    }
    CHECK(checked >= 200);
    CHECK(mismatches == 0);
}

TEST_CASE("6x6 transform relocates all 36 bodies into visitors") {
    Program data = load("p6x6.mj");
    Program fun = transformed(data, Direction::ToVisitor);
    HierarchyInfo h = detected(fun);
    Matrix m = coverage_matrix(fun, h);
    int relocated = 0;
    for (std::size_t i = 0; i < m.subtypes.size(); ++i)
        for (std::size_t j = 0; j < m.operations.size(); ++j) {
            // every cell owner must be the operation's visitor class
            CHECK(m.owner[i][j] == std::string(1, static_cast<char>(
                                       std::toupper(m.operations[j].name[0]))) +
                                       m.operations[j].name.substr(1) + "Visitor");
            ++relocated;
        }
    CHECK(relocated == 36);
}

TEST_CASE("wrong-direction transforms fail with input untouched") {
    Program p = load("pfun.mj");
    std::string before = pretty(p);
    TransformResult r = transform(p, Direction::ToVisitor);
    CHECK(!r.success);
    CHECK(r.error.find("not data-oriented") != std::string::npos);
    CHECK(pretty(p) == before);
}

TEST_CASE("name clash aborts the plan atomically") {
    Program p = load("pdata_clash.mj");
    TransformResult r = transform(p, Direction::ToVisitor);
    REQUIRE(!r.success);
    REQUIRE(!r.violations.empty());
    CHECK(r.violations[0].op_label == "CreateClass EvalVisitor");
    CHECK(r.violations[0].rule == "name-unused");
}

TEST_CASE("plans serialize to one op per line") {
    auto planned = plan_to_visitor(load("pdata.mj"));
    REQUIRE(std::holds_alternative<Plan>(planned));
    std::string s = serializePlan(std::get<Plan>(planned));
    CHECK(s.find("CreateInterface name=Visitor type_param=T\n") != std::string::npos);
    CHECK(s.find("MoveMethodBody from=Num.eval to=EvalVisitor.visitNum") != std::string::npos);
    CHECK(s.find("AddDelegatingMethod class=Expr") != std::string::npos);
}

TEST_CASE("add-subtype is modular in the data form only") {
    Program p = load("pdata.mj");
    auto fragParsed = parse(slurp(kFixtures + "/scenario/mult.mj"), "mult.mj");
    ClassDecl frag = std::get<ClassDecl>(std::get<Program>(fragParsed).decls[0]);
    auto ok = apply_evolution(p, AddSubtype{frag});
    REQUIRE(ok.success);
    CHECK(findClass(*ok.program, "Mult") != nullptr);
    auto wrongForm = apply_evolution(load("pfun.mj"), AddSubtype{frag});
    CHECK(!wrongForm.success);
}

TEST_CASE("add-operation is modular in the visitor form only") {
    Program fun = transformed(load("pdata.mj"), Direction::ToVisitor);
    auto fragParsed = parse(
        "class NegVisitor implements Visitor<boolean> {\n"
        "    public boolean visitNum(Num num) {\n"
        "        return num.getValue() < 0;\n"
        "    }\n"
        "\n"
        "    public boolean visitAdd(Add add) {\n"
        "        return add.getLeft().accept(this);\n"
        "    }\n"
        "}\n",
        "<frag>");
    ClassDecl frag = std::get<ClassDecl>(std::get<Program>(fragParsed).decls[0]);
    auto ok = apply_evolution(fun, AddOperation{"neg", Type::boolType(), frag});
    REQUIRE_MESSAGE(ok.success, ok.error);
    CHECK(findMethod(*findClass(*ok.program, "Expr"), "neg") != nullptr);
    auto wrongForm = apply_evolution(load("pdata.mj"), AddOperation{"neg", Type::boolType(), frag});
    CHECK(!wrongForm.success);
}

TEST_CASE("edit-class replaces a declaration wholesale") {
    Program p = load("pdata.mj");
    auto fragParsed = parse(slurp(kFixtures + "/scenario/add_edit.mj"), "add_edit.mj");
    ClassDecl frag = std::get<ClassDecl>(std::get<Program>(fragParsed).decls[0]);
    // the fragment adds a check() method Expr does not declare, but it still typechecks
    auto r = apply_evolution(p, EditClass{frag});
    REQUIRE_MESSAGE(r.success, r.error);
    CHECK(findMethod(*findClass(*r.program, "Add"), "check") != nullptr);
}
