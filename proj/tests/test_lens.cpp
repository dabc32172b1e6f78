#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dualshift/lens.hpp"
#include "dualshift/parser.hpp"

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

HierarchyInfo detected(const Program& p) {
    auto r = detect_hierarchy(p);
    if (auto* err = std::get_if<std::string>(&r)) FAIL(*err);
    return std::get<HierarchyInfo>(r);
}

std::string ownerOf(const Matrix& m, const std::string& sub, const std::string& op) {
    for (std::size_t i = 0; i < m.subtypes.size(); ++i)
        for (std::size_t j = 0; j < m.operations.size(); ++j)
            if (m.subtypes[i] == sub && m.operations[j].name == op) return m.owner[i][j];
    FAIL("no cell ", sub, ".", op);
    return "";
}

}  // namespace

TEST_CASE("pdata detects as a data-oriented Expr hierarchy") {
    Program p = load("pdata.mj");
    HierarchyInfo h = detected(p);
    CHECK(h.root == "Expr");
    CHECK(h.subtypes == std::vector<std::string>{"Num", "Add"});
    REQUIRE(h.operations.size() == 2);
    CHECK(h.operations[0].name == "eval");
    CHECK(h.operations[1].name == "show");
    CHECK(h.accept_name.empty());
    Matrix m = coverage_matrix(p, h);
    CHECK(ownerOf(m, "Num", "eval") == "Num");
    CHECK(ownerOf(m, "Add", "show") == "Add");
    CHECK(classify(m).form == Form::DataOriented);
}

TEST_CASE("pfun detects as function-oriented with a dispatcher") {
    Program p = load("pfun.mj");
    HierarchyInfo h = detected(p);
    CHECK(h.root == "Expr");
    CHECK(h.accept_name == "accept");
    CHECK(h.visitor_interface == "Visitor");
    REQUIRE(h.operations.size() == 2);  // accept is not an operation
    Matrix m = coverage_matrix(p, h);
    CHECK(ownerOf(m, "Num", "eval") == "EvalVisitor");
    CHECK(ownerOf(m, "Add", "show") == "ShowVisitor");
    CHECK(classify(m).form == Form::FunctionOriented);
    CHECK(std::find(h.visitor_classes.begin(), h.visitor_classes.end(), "EvalVisitor") !=
          h.visitor_classes.end());
}

TEST_CASE("mixed_operation is mixed with check as the offending operation") {
    Program p = load("mixed_operation.mj");
    HierarchyInfo h = detected(p);
    Matrix m = coverage_matrix(p, h);
    Classification c = classify(m);
    CHECK(c.form == Form::Mixed);
    CHECK(c.offending_operations == std::vector<std::string>{"check"});
    CHECK(c.offending_subtypes.empty());
    CHECK(ownerOf(m, "Mult", "check") == "CheckVisitor");
}

TEST_CASE("mixed_subtype is mixed with Mult as the offending subtype") {
    Program p = load("mixed_subtype.mj");
    HierarchyInfo h = detected(p);
    Matrix m = coverage_matrix(p, h);
    Classification c = classify(m);
    CHECK(c.form == Form::Mixed);
    CHECK(c.offending_subtypes == std::vector<std::string>{"Mult"});
    CHECK(ownerOf(m, "Mult", "eval") == "Mult");
    CHECK(ownerOf(m, "Num", "eval") == "EvalVisitor");
}

TEST_CASE("the 6x6 fixture fills a 36-cell data matrix") {
    Program p = load("p6x6.mj");
    HierarchyInfo h = detected(p);
    CHECK(h.subtypes.size() == 6);
    CHECK(h.operations.size() == 6);
    Matrix m = coverage_matrix(p, h);
    int cells = 0;
    for (std::size_t i = 0; i < m.subtypes.size(); ++i)
        for (std::size_t j = 0; j < m.operations.size(); ++j) {
            CHECK(m.owner[i][j] == m.subtypes[i]);
            ++cells;
        }
    CHECK(cells == 36);
    CHECK(classify(m).form == Form::DataOriented);
}

TEST_CASE("detection is insensitive to declaration order") {
    Program p = load("pfun.mj");
    Program shuffled = p;
    std::reverse(shuffled.decls.begin(), shuffled.decls.end());
    HierarchyInfo h = detected(shuffled);
    CHECK(h.root == "Expr");
    Matrix m = coverage_matrix(shuffled, h);
    CHECK(classify(m).form == Form::FunctionOriented);
    CHECK(ownerOf(m, "Num", "eval") == "EvalVisitor");
}

TEST_CASE("missing and ambiguous roots are reported") {
    auto none = parse("class A {}\n", "<t>");
    auto r1 = detect_hierarchy(std::get<Program>(none));
    REQUIRE(std::holds_alternative<std::string>(r1));
    CHECK(std::get<std::string>(r1) == "no hierarchy root found");

    auto two = parse(
        "abstract class A {}\n"
        "class A1 extends A {}\n"
        "abstract class B {}\n"
        "class B1 extends B {}\n",
        "<t>");
    auto r2 = detect_hierarchy(std::get<Program>(two));
    REQUIRE(std::holds_alternative<std::string>(r2));
    CHECK(std::get<std::string>(r2).find("multiple hierarchy root candidates") == 0);
}

TEST_CASE("matrix renderings are deterministic") {
    Program p = load("pdata.mj");
    HierarchyInfo h = detected(p);
    Matrix m = coverage_matrix(p, h);
    CHECK(render_matrix(m) ==
          "subtype  eval  show\n"
          "Num      Num   Num\n"
          "Add      Add   Add\n");
    CHECK(matrixCsv(m) ==
          "subtype,operation,owner\n"
          "Num,eval,Num\n"
          "Num,show,Num\n"
          "Add,eval,Add\n"
          "Add,show,Add\n");
}
