// Python bindings over the text-level API: every function takes MiniObj
// source text and returns text or plain dicts, so no AST types cross the
// boundary.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dualshift/duality.hpp"
#include "dualshift/interp.hpp"
#include "dualshift/lens.hpp"
#include "dualshift/parser.hpp"
#include "dualshift/printer.hpp"
#include "dualshift/refactor.hpp"
#include "dualshift/typecheck.hpp"

namespace py = pybind11;
using namespace dualshift;

namespace {

Program parseOrThrow(const std::string& source) {
    auto parsed = parse(source, "<python>");
    if (auto* diags = std::get_if<std::vector<Diagnostic>>(&parsed))
        throw py::value_error(formatDiagnostics(*diags));
    return std::move(std::get<Program>(parsed));
}

Direction directionOrThrow(const std::string& d) {
    if (d == "to-visitor") return Direction::ToVisitor;
    if (d == "to-composite") return Direction::ToComposite;
    throw py::value_error("direction must be 'to-visitor' or 'to-composite'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "invertible data-oriented <-> function-oriented restructuring";

    m.def("fmt", [](const std::string& source) {
        return pretty(canonicalize(parseOrThrow(source)));
    });

    m.def("typecheck", [](const std::string& source) {
        std::vector<std::string> out;
        for (const auto& d : typecheck(parseOrThrow(source)))
            out.push_back(d.location + ": " + d.message);
        return out;
    });

    m.def(
        "run",
        [](const std::string& source, const std::string& entry, std::uint64_t step_limit) {
            Program p = parseOrThrow(source);
            auto parsedEntry = parseExpr(entry);
            if (auto* diags = std::get_if<std::vector<Diagnostic>>(&parsedEntry))
                throw py::value_error(formatDiagnostics(*diags));
            auto result = evaluate(p, std::get<ExprPtr>(parsedEntry), step_limit);
            if (auto* err = std::get_if<EvalError>(&result))
                throw std::runtime_error(describe(*err));
            return showValue(std::get<ValuePtr>(result));
        },
        py::arg("source"), py::arg("entry"), py::arg("step_limit") = kDefaultStepLimit);

    m.def("detect", [](const std::string& source) {
        Program p = parseOrThrow(source);
        auto detected = detect_hierarchy(p);
        if (auto* err = std::get_if<std::string>(&detected)) throw py::value_error(*err);
        const HierarchyInfo& h = std::get<HierarchyInfo>(detected);
        Matrix mx = coverage_matrix(p, h);
        Classification c = classify(mx);
        py::dict out;
        out["form"] = formName(c.form);
        out["root"] = h.root;
        out["subtypes"] = h.subtypes;
        std::vector<std::string> ops;
        for (const auto& o : h.operations) ops.push_back(o.name);
        out["operations"] = ops;
        out["matrix_csv"] = matrixCsv(mx);
        out["offending_subtypes"] = c.offending_subtypes;
        out["offending_operations"] = c.offending_operations;
        return out;
    });

    m.def("transform", [](const std::string& source, const std::string& direction) {
        TransformResult r = transform(parseOrThrow(source), directionOrThrow(direction));
        if (!r.success) {
            std::string msg = r.error;
            if (!r.violations.empty()) msg += "\n" + formatViolations(r.violations);
            throw py::value_error(msg);
        }
        return pretty(*r.program);
    });

    m.def("plan", [](const std::string& source, const std::string& direction) {
        Program p = parseOrThrow(source);
        PlanResult planned = directionOrThrow(direction) == Direction::ToVisitor
                                 ? plan_to_visitor(p)
                                 : plan_to_composite(p);
        if (auto* err = std::get_if<std::string>(&planned)) throw py::value_error(*err);
        return serializePlan(std::get<Plan>(planned));
    });

    m.def("roundtrip", [](const std::string& source) {
        RoundTripReport rep = roundtrip_check(parseOrThrow(source));
        if (!rep.success) throw py::value_error(rep.error);
        py::dict out;
        out["identical"] = rep.identical;
        out["diff"] = rep.diff;
        out["elapsed_seconds"] = rep.elapsed_seconds;
        return out;
    });
}
