#include "dualshift/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dualshift/duality.hpp"
#include "dualshift/interp.hpp"
#include "dualshift/lens.hpp"
#include "dualshift/parser.hpp"
#include "dualshift/printer.hpp"
#include "dualshift/scenario.hpp"
#include "dualshift/typecheck.hpp"

namespace dualshift {
namespace {

constexpr int kOk = 0;
constexpr int kPrecondition = 1;
constexpr int kParseOrType = 2;
constexpr int kInternal = 3;

bool readFile(const std::string& path, std::string& out, std::string& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err = "cannot read " + path;
        return false;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return true;
}

// temp file in the target directory + rename, so failures never leave a
// partially written output behind
bool writeFileAtomic(const std::string& path, const std::string& content, std::string& err) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
    fs::path tmp = dir / (target.filename().string() + ".tmp~");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            err = "cannot write " + tmp.string();
            return false;
        }
        out << content;
        if (!out) {
            err = "write failed for " + tmp.string();
            std::error_code ec;
            fs::remove(tmp, ec);
            return false;
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        err = "cannot rename " + tmp.string() + " to " + path + ": " + ec.message();
        fs::remove(tmp, ec);
        return false;
    }
    return true;
}

bool emit(const std::string& output_path, const std::string& content, std::ostream& out,
          std::ostream& err_stream, int& code) {
    if (output_path.empty()) {
        out << content;
        return true;
    }
    std::string err;
    if (!writeFileAtomic(output_path, content, err)) {
        err_stream << err << "\n";
        code = kInternal;
        return false;
    }
    return true;
}

int loadProgram(const std::string& path, Program& p, std::ostream& err) {
    std::string src, msg;
    if (!readFile(path, src, msg)) {
        err << msg << "\n";
        return kParseOrType;
    }
    auto parsed = parse(src, path);
    if (auto* diags = std::get_if<std::vector<Diagnostic>>(&parsed)) {
        err << formatDiagnostics(*diags);
        return kParseOrType;
    }
    p = std::move(std::get<Program>(parsed));
    return kOk;
}

std::string structureName(Form f) {
    switch (f) {
        case Form::DataOriented: return "DataOriented";
        case Form::FunctionOriented: return "FunctionOriented";
        default: return "Mixed";
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"dualshift: invertible data-oriented <-> function-oriented restructuring"};
    app.require_subcommand(1);

    std::string input, output, entry, script;
    std::uint64_t step_limit = kDefaultStepLimit;
    bool csv = false;

    auto* detect = app.add_subcommand("detect", "classify a program's decomposition");
    detect->add_option("input", input)->required();
    detect->add_flag("--emit-matrix-csv", csv, "print subtype,operation,owner CSV");
    detect->add_option("-o,--output", output);

    auto* tv = app.add_subcommand("to-visitor", "data-oriented -> function-oriented");
    tv->add_option("input", input)->required();
    tv->add_option("-o,--output", output);

    auto* tc = app.add_subcommand("to-composite", "function-oriented -> data-oriented");
    tc->add_option("input", input)->required();
    tc->add_option("-o,--output", output);

    auto* rt = app.add_subcommand("roundtrip", "check there-and-back byte identity");
    rt->add_option("input", input)->required();

    auto* run = app.add_subcommand("run", "evaluate an entry expression");
    run->add_option("input", input)->required();
    run->add_option("--entry", entry)->required();
    run->add_option("--step-limit", step_limit);

    auto* sc = app.add_subcommand("scenario", "execute a maintenance script");
    sc->add_option("input", input)->required();
    sc->add_option("script", script)->required();
    sc->add_option("-o,--output", output);

    auto* fmt = app.add_subcommand("fmt", "canonical pretty-print");
    fmt->add_option("input", input)->required();
    fmt->add_option("-o,--output", output);

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kParseOrType;
    }

    Program p;
    if (int rc = loadProgram(input, p, err); rc != kOk) return rc;
    int code = kOk;

    if (detect->parsed()) {
        auto detected = detect_hierarchy(p);
        if (auto* e = std::get_if<std::string>(&detected)) {
            err << *e << "\n";
            return kPrecondition;
        }
        const HierarchyInfo& h = std::get<HierarchyInfo>(detected);
        Matrix m = coverage_matrix(p, h);
        Classification c = classify(m);
        std::ostringstream text;
        if (csv) {
            text << matrixCsv(m);
        } else {
            text << "root: " << h.root << "\n";
            text << "subtypes:";
            for (const auto& s : h.subtypes) text << " " << s;
            text << "\noperations:";
            for (const auto& o : h.operations) text << " " << o.name;
            text << "\n" << render_matrix(m) << structureName(c.form) << "\n";
            for (const auto& d : c.details) text << "  " << d << "\n";
        }
        if (!emit(output, text.str(), out, err, code)) return code;
        return kOk;
    }

    if (tv->parsed() || tc->parsed()) {
        auto diags = typecheck(p);
        if (!diags.empty()) {
            err << formatDiagnostics(diags);
            return kParseOrType;
        }
        TransformResult r =
            transform(p, tv->parsed() ? Direction::ToVisitor : Direction::ToComposite);
        if (!r.success) {
            err << r.error << "\n";
            if (!r.violations.empty()) err << formatViolations(r.violations);
            return kPrecondition;
        }
        if (!emit(output, pretty(*r.program), out, err, code)) return code;
        return kOk;
    }

    if (rt->parsed()) {
        auto diags = typecheck(p);
        if (!diags.empty()) {
            err << formatDiagnostics(diags);
            return kParseOrType;
        }
        RoundTripReport rep = roundtrip_check(p);
        if (!rep.success) {
            err << rep.error << "\n";
            return kPrecondition;
        }
        out << "round trip: " << (rep.identical ? "identical" : "DIFFERS") << " ("
            << std::fixed << std::setprecision(3) << rep.elapsed_seconds << " s)\n";
        if (!rep.identical) {
            out << rep.diff << "\n";
            return kPrecondition;
        }
        return kOk;
    }

    if (run->parsed()) {
        auto diags = typecheck(p);
        if (!diags.empty()) {
            err << formatDiagnostics(diags);
            return kParseOrType;
        }
        auto parsedEntry = parseExpr(entry);
        if (auto* ds = std::get_if<std::vector<Diagnostic>>(&parsedEntry)) {
            err << formatDiagnostics(*ds);
            return kParseOrType;
        }
        const ExprPtr& e = std::get<ExprPtr>(parsedEntry);
        auto entryDiags = typecheckEntry(p, e);
        if (!entryDiags.empty()) {
            err << formatDiagnostics(entryDiags);
            return kParseOrType;
        }
        EvalResult result = evaluate(p, e, step_limit);
        if (auto* ev = std::get_if<EvalError>(&result)) {
            err << describe(*ev) << "\n";
            return kPrecondition;
        }
        out << showValue(std::get<ValuePtr>(result)) << "\n";
        return kOk;
    }

    if (sc->parsed()) {
        std::string text, msg;
        if (!readFile(script, text, msg)) {
            err << msg << "\n";
            return kParseOrType;
        }
        std::filesystem::path dir = std::filesystem::path(script).parent_path();
        ScenarioResult r = run_scenario(p, text, dir.empty() ? "." : dir.string());
        out << renderScenarioLog(r);
        if (!r.success) {
            err << r.error << "\n";
            return kPrecondition;
        }
        if (!emit(output, pretty(*r.program), out, err, code)) return code;
        return kOk;
    }

    // fmt
    if (!emit(output, pretty(canonicalize(p)), out, err, code)) return code;
    return kOk;
}

}  // namespace dualshift
