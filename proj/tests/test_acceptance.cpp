// The acceptance gate: one check per shipping criterion, each reported as a
// single PASS/FAIL line so the run reads as a checklist.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dualshift/cli.hpp"
#include "dualshift/duality.hpp"
#include "dualshift/interp.hpp"
#include "dualshift/parser.hpp"
#include "dualshift/printer.hpp"
#include "dualshift/scenario.hpp"
#include "dualshift/typecheck.hpp"
#include "gen.hpp"

using namespace dualshift;

namespace {

const std::string kFixtures = DUALSHIFT_FIXTURE_DIR;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Program load(const std::string& name) {
    auto r = parse(slurp(kFixtures + "/" + name), name);
    REQUIRE(std::holds_alternative<Program>(r));
    return std::get<Program>(r);
}

struct Cli {
    int code;
    std::string out, err;
};

Cli cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

void report(int n, const char* what, bool ok, const std::string& detail = "") {
    std::printf("ACCEPTANCE %d %s: %s\n", n, ok ? "PASS" : "FAIL", what);
    if (!ok && !detail.empty()) std::printf("  %s\n", detail.c_str());
    std::fflush(stdout);
    CHECK_MESSAGE(ok, what, " ", detail);
}

// behavior agreement between two programs over generated trees; returns the
// number of (tree, operation) comparisons made, or -1 on a mismatch
int agree(const Program& a, const Program& b, int trees, std::uint64_t seed) {
    auto detected = detect_hierarchy(a);
    if (!std::holds_alternative<HierarchyInfo>(detected)) return -1;
    const HierarchyInfo& h = std::get<HierarchyInfo>(detected);
    testgen::Rng rng(seed);
    int n = 0;
    for (int i = 0; i < trees; ++i) {
        ExprPtr tree = testgen::genTree(a, h, rng, 6);
        for (const auto& op : h.operations) {
            ExprPtr entry = makeCall(tree, op.name, {});
            auto ra = evaluate(a, entry);
            auto rb = evaluate(b, entry);
            if (!std::holds_alternative<ValuePtr>(ra) ||
                !std::holds_alternative<ValuePtr>(rb) ||
                !equal(std::get<ValuePtr>(ra), std::get<ValuePtr>(rb)))
                return -1;
            ++n;
        }
    }
    return n;
}

}  // namespace

TEST_CASE("1. round-trip identity on the three canonical fixtures") {
    bool ok = true;
    std::string detail;
    for (const char* name : {"pdata.mj", "pfun.mj", "p6x6.mj"}) {
        Cli r = cli({"roundtrip", kFixtures + "/" + name});
        RoundTripReport rep = roundtrip_check(load(name));
        if (r.code != 0 || !rep.identical || rep.elapsed_seconds >= 1.0) {
            ok = false;
            detail += std::string(name) + ": exit " + std::to_string(r.code) + " " + rep.diff +
                      " " + rep.error + "; ";
        }
    }
    report(1, "round-trip identity (pdata, pfun, 6x6; < 1 s each)", ok, detail);
}

TEST_CASE("2. behavior preservation over generated trees, both directions") {
    int total = 0;
    bool ok = true;
    for (const char* name : {"pdata.mj", "p6x6.mj"}) {
        Program data = load(name);
        TransformResult fun = transform(data, Direction::ToVisitor);
        if (!fun.success) {
            ok = false;
            break;
        }
        TransformResult back = transform(*fun.program, Direction::ToComposite);
        if (!back.success) {
            ok = false;
            break;
        }
        int a = agree(data, *fun.program, 120, 0xD05EED);
        int b = agree(data, *back.program, 120, 0xD05EED);
        if (a < 0 || b < 0) ok = false;
        total += a + b;
    }
    ok = ok && total >= 200;
    report(2, "behavior preservation (>= 200 trees, zero mismatches)", ok,
           "comparisons: " + std::to_string(total));
}

TEST_CASE("3. every successful transform output typechecks") {
    bool ok = true;
    std::string detail;
    auto check = [&](const char* name, Direction d) {
        TransformResult r = transform(load(name), d);
        if (!r.success) return;  // only successful transforms are in scope
        auto diags = typecheck(*r.program);
        if (!diags.empty()) {
            ok = false;
            detail += std::string(name) + ": " + formatDiagnostics(diags);
        }
        TransformResult inv = transform(
            *r.program, d == Direction::ToVisitor ? Direction::ToComposite
                                                  : Direction::ToVisitor);
        if (inv.success && !typecheck(*inv.program).empty()) ok = false;
    };
    check("pdata.mj", Direction::ToVisitor);
    check("pfun.mj", Direction::ToComposite);
    check("p6x6.mj", Direction::ToVisitor);
    report(3, "type-safety of transform outputs across the corpus", ok, detail);
}

TEST_CASE("4. classification correctness with offenders named") {
    auto formOf = [](const Program& p, Classification* out = nullptr) {
        auto d = detect_hierarchy(p);
        Classification c = classify(coverage_matrix(p, std::get<HierarchyInfo>(d)));
        if (out) *out = c;
        return c.form;
    };
    Classification c4a, c4b;
    bool ok = formOf(load("pdata.mj")) == Form::DataOriented &&
              formOf(load("pfun.mj")) == Form::FunctionOriented &&
              formOf(load("mixed_operation.mj"), &c4a) == Form::Mixed &&
              formOf(load("mixed_subtype.mj"), &c4b) == Form::Mixed &&
              c4a.offending_operations == std::vector<std::string>{"check"} &&
              c4b.offending_subtypes == std::vector<std::string>{"Mult"};
    report(4, "detect: DataOriented/FunctionOriented/Mixed with offenders named", ok);
}

TEST_CASE("5. seven-step scenario, modular footprints, final round trip") {
    Program p = load("pdata.mj");
    ScenarioResult r = run_scenario(p, slurp(kFixtures + "/scenario/maintenance.script"),
                                    kFixtures + "/scenario");
    bool ok = r.success && r.steps.size() == 7;
    std::string detail = r.error;
    auto footprint = [&](std::size_t i, std::vector<std::string> changed,
                         std::vector<std::string> added) {
        if (i >= r.steps.size()) return;
        if (r.steps[i].changed != changed || r.steps[i].added != added ||
            !r.steps[i].removed.empty()) {
            ok = false;
            detail += "step " + std::to_string(i + 1) + " footprint; ";
        }
    };
    footprint(0, {}, {"Mult"});            // add-subtype: one new class
    footprint(2, {"Expr"}, {"CheckVisitor"});  // add-operation: new class + facade
    footprint(4, {"Add"}, {});             // edit-class Add
    footprint(6, {"ShowVisitor"}, {});     // edit-class ShowVisitor
    if (ok) {
        RoundTripReport rt = roundtrip_check(*r.program);
        if (!rt.identical) {
            ok = false;
            detail += "final round trip: " + rt.diff + rt.error;
        }
        TransformResult data = transform(*r.program, Direction::ToComposite);
        // extended operation set: eval, show, check must survive the flip
        if (!data.success || agree(*r.program, *data.program, 80, 0xF165) < 0) {
            ok = false;
            detail += "extended-op behavior; ";
        }
    }
    report(5, "seven-step scenario: modular diffs, final round trip", ok, detail);
}

TEST_CASE("6. name clash fails atomically with the step named") {
    std::string input = kFixtures + "/pdata_clash.mj";
    std::string before = slurp(input);
    std::string out =
        (std::filesystem::temp_directory_path() / "acceptance_clash.mj").string();
    std::remove(out.c_str());
    Cli r = cli({"to-visitor", input, "-o", out});
    bool ok = r.code == 1 && slurp(input) == before && !std::filesystem::exists(out) &&
              r.err.find("CreateClass EvalVisitor") != std::string::npos;
    report(6, "atomic failure on EvalVisitor name clash (exit 1, input untouched)", ok,
           r.err);
}

TEST_CASE("7. 6x6 scale: both transforms, 36 bodies relocated") {
    Program data = load("p6x6.mj");
    TransformResult fun = transform(data, Direction::ToVisitor);
    bool ok = fun.success;
    int relocated = 0;
    if (ok) {
        auto d = detect_hierarchy(*fun.program);
        const HierarchyInfo& h = std::get<HierarchyInfo>(d);
        Matrix m = coverage_matrix(*fun.program, h);
        for (std::size_t i = 0; i < m.subtypes.size(); ++i)
            for (std::size_t j = 0; j < m.operations.size(); ++j) {
                std::string want = m.operations[j].name;
                want[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(want[0])));
                if (m.owner[i][j] == want + "Visitor") ++relocated;
            }
        TransformResult back = transform(*fun.program, Direction::ToComposite);
        ok = back.success && pretty(*back.program) == pretty(data);
    }
    ok = ok && relocated == 36;
    report(7, "6x6 scale check (36 bodies relocated, both transforms)", ok,
           "relocated: " + std::to_string(relocated));
}

TEST_CASE("8. parse/pretty fixpoint on 1000 seeded random programs") {
    int failures = 0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        Program p = testgen::genProgram(seed);
        std::string text = pretty(p);
        auto r = parse(text, "<gen>");
        if (!std::holds_alternative<Program>(r) || !(std::get<Program>(r) == p))
            ++failures;
    }
    report(8, "syntax round-trip on 1000 generated programs", failures == 0,
           "failures: " + std::to_string(failures));
}
