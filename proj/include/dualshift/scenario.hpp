// Scripted maintenance scenarios: a sequence of transformations and modular
// edits with a per-step log of what changed and how the program classifies.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dualshift/ast.hpp"
#include "dualshift/lens.hpp"

namespace dualshift {

// Script grammar, one command per line (# starts a comment):
//   to-visitor
//   to-composite
//   add-subtype <name> <fragment.mj>
//   add-operation <name> <return-type> <fragment.mj>
//   edit-class <name> <fragment.mj>
//   assert-form data|function
// Fragment paths are resolved against the script's directory.

struct ScenarioStep {
    std::string command;                // the script line
    bool ok = false;
    std::string message;                // failure reason, empty on success
    Form form = Form::Mixed;            // classification after the step
    std::vector<std::string> changed;   // pre-existing decls whose text changed
    std::vector<std::string> added;     // decls introduced by the step
    std::vector<std::string> removed;   // decls dropped by the step
};

struct ScenarioResult {
    bool success = false;
    std::optional<Program> program;     // state after the last successful step
    std::vector<ScenarioStep> steps;    // up to and including the failing step
    std::string error;                  // script-level problem, if any
};

ScenarioResult run_scenario(const Program& p, const std::string& script,
                            const std::string& script_dir);

std::string renderScenarioLog(const ScenarioResult& r);

}  // namespace dualshift
