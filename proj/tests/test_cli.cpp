#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dualshift/cli.hpp"

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

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string tmpPath(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("detect prints the classification and exits 0") {
    Run r = cli({"detect", kFixtures + "/pdata.mj"});
    CHECK(r.code == 0);
    CHECK(r.out.find("DataOriented") != std::string::npos);
    CHECK(r.out.find("subtype  eval  show") != std::string::npos);
}

TEST_CASE("detect --emit-matrix-csv emits owner triples") {
    Run r = cli({"detect", kFixtures + "/pfun.mj", "--emit-matrix-csv"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "subtype,operation,owner\n"
          "Num,eval,EvalVisitor\n"
          "Num,show,ShowVisitor\n"
          "Add,eval,EvalVisitor\n"
          "Add,show,ShowVisitor\n");
}

TEST_CASE("run evaluates entry expressions") {
    Run r = cli({"run", kFixtures + "/pdata.mj", "--entry",
                 "new Add(new Num(1), new Num(2)).eval()"});
    CHECK(r.code == 0);
    CHECK(r.out == "3\n");
}

TEST_CASE("run reports type errors in the entry as exit 2") {
    Run r = cli({"run", kFixtures + "/pdata.mj", "--entry", "new Num(\"x\")"});
    CHECK(r.code == 2);
    CHECK(!r.err.empty());
}

TEST_CASE("run honors the step limit with exit 1") {
    Run r = cli({"run", kFixtures + "/pdata.mj", "--entry",
                 "new Add(new Num(1), new Num(2)).eval()", "--step-limit", "2"});
    CHECK(r.code == 1);
    CHECK(r.err.find("step-limit") != std::string::npos);
}

TEST_CASE("to-visitor writes the transformed source") {
    std::string out = tmpPath("cli_pfun.mj");
    std::remove(out.c_str());
    Run r = cli({"to-visitor", kFixtures + "/pdata.mj", "-o", out});
    CHECK(r.code == 0);
    CHECK(slurp(out) == slurp(kFixtures + "/pfun.mj"));
    std::remove(out.c_str());
}

TEST_CASE("wrong direction exits 1 with a message") {
    Run r = cli({"to-visitor", kFixtures + "/pfun.mj"});
    CHECK(r.code == 1);
    CHECK(r.err.find("program is not data-oriented") != std::string::npos);
}

TEST_CASE("name clash aborts without creating the output file") {
    std::string out = tmpPath("cli_clash.mj");
    std::remove(out.c_str());
    std::string before = slurp(kFixtures + "/pdata_clash.mj");
    Run r = cli({"to-visitor", kFixtures + "/pdata_clash.mj", "-o", out});
    CHECK(r.code == 1);
    CHECK(r.err.find("CreateClass EvalVisitor") != std::string::npos);
    CHECK(!std::filesystem::exists(out));
    CHECK(slurp(kFixtures + "/pdata_clash.mj") == before);
}

TEST_CASE("roundtrip exits 0 on the fixtures") {
    for (const char* name : {"pdata.mj", "pfun.mj", "p6x6.mj"}) {
        Run r = cli({"roundtrip", kFixtures + "/" + name});
        CHECK_MESSAGE(r.code == 0, name, ": ", r.err);
        CHECK(r.out.find("identical") != std::string::npos);
    }
}

TEST_CASE("parse errors exit 2") {
    std::string bad = tmpPath("cli_bad.mj");
    {
        std::ofstream f(bad);
        f << "class {\n";
    }
    Run r = cli({"detect", bad});
    CHECK(r.code == 2);
    std::remove(bad.c_str());
}

TEST_CASE("fmt is idempotent at the byte level") {
    Run once = cli({"fmt", kFixtures + "/pdata.mj"});
    CHECK(once.code == 0);
    std::string mid = tmpPath("cli_fmt.mj");
    {
        std::ofstream f(mid, std::ios::binary);
        f << once.out;
    }
    Run twice = cli({"fmt", mid});
    CHECK(twice.code == 0);
    CHECK(twice.out == once.out);
    std::remove(mid.c_str());
}

TEST_CASE("scenario runs the seven-step script and logs footprints") {
    std::string out = tmpPath("cli_scenario.mj");
    std::remove(out.c_str());
    Run r = cli({"scenario", kFixtures + "/pdata.mj", kFixtures + "/scenario/maintenance.script",
                 "-o", out});
    CHECK(r.code == 0);
    CHECK(r.out.find("step 7: edit-class ShowVisitor show_edit.mj -> ok") != std::string::npos);
    CHECK(r.out.find("step 1: add-subtype Mult mult.mj -> ok [data] added=Mult") !=
          std::string::npos);
    CHECK(std::filesystem::exists(out));
    std::remove(out.c_str());
}

TEST_CASE("scenario assert-form mismatch exits 1") {
    std::string script = tmpPath("cli_assert.script");
    {
        std::ofstream f(script);
        f << "assert-form function\n";
    }
    Run r = cli({"scenario", kFixtures + "/pdata.mj", script});
    CHECK(r.code == 1);
    CHECK(r.err.find("expected function form") != std::string::npos);
    std::remove(script.c_str());
}

TEST_CASE("an empty scenario leaves the program unchanged") {
    std::string script = tmpPath("cli_empty.script");
    {
        std::ofstream f(script);
        f << "# nothing\n";
    }
    Run r = cli({"scenario", kFixtures + "/pdata.mj", script});
    CHECK(r.code == 0);
    CHECK(r.out.find(slurp(kFixtures + "/pdata.mj")) != std::string::npos);
    std::remove(script.c_str());
}

TEST_CASE("usage errors exit 2") {
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"run", kFixtures + "/pdata.mj"}).code == 2);  // missing --entry
}
