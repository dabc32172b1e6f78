#include "dualshift/scenario.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "dualshift/duality.hpp"
#include "dualshift/parser.hpp"
#include "dualshift/printer.hpp"

namespace dualshift {
namespace {

std::string declText(const Decl& d) {
    Program tmp;
    tmp.decls.push_back(d);
    return pretty(tmp);
}

std::map<std::string, std::string> declTexts(const Program& p) {
    std::map<std::string, std::string> out;
    for (const auto& d : p.decls) out[declName(d)] = declText(d);
    return out;
}

void diffPrograms(const Program& before, const Program& after, ScenarioStep& step) {
    auto a = declTexts(before), b = declTexts(after);
    for (const auto& [name, text] : b) {
        auto it = a.find(name);
        if (it == a.end())
            step.added.push_back(name);
        else if (it->second != text)
            step.changed.push_back(name);
    }
    for (const auto& [name, text] : a)
        if (!b.count(name)) step.removed.push_back(name);
}

Form currentForm(const Program& p) {
    auto detected = detect_hierarchy(p);
    if (std::holds_alternative<std::string>(detected)) return Form::Mixed;
    return classify(coverage_matrix(p, std::get<HierarchyInfo>(detected))).form;
}

bool parseTypeWord(const std::string& w, Type& out) {
    if (w == "int") out = Type::intType();
    else if (w == "boolean") out = Type::boolType();
    else if (w == "string") out = Type::stringType();
    else if (!w.empty() && (std::isalpha(static_cast<unsigned char>(w[0])) || w[0] == '_'))
        out = Type::named(w);
    else return false;
    return true;
}

// Loads a fragment file holding exactly one declaration.
bool loadFragment(const std::string& dir, const std::string& file, Decl& out, std::string& err) {
    std::filesystem::path path = std::filesystem::path(dir) / file;
    std::ifstream in(path);
    if (!in) {
        err = "cannot read fragment " + path.string();
        return false;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    auto parsed = parse(buf.str(), path.string());
    if (auto* diags = std::get_if<std::vector<Diagnostic>>(&parsed)) {
        err = "fragment " + file + " does not parse:\n" + formatDiagnostics(*diags);
        return false;
    }
    Program& frag = std::get<Program>(parsed);
    if (frag.decls.size() != 1) {
        err = "fragment " + file + " must hold exactly one declaration";
        return false;
    }
    out = frag.decls[0];
    return true;
}

}  // namespace

ScenarioResult run_scenario(const Program& p, const std::string& script,
                            const std::string& script_dir) {
    ScenarioResult result;
    Program cur = p;
    std::istringstream lines(script);
    std::string line;
    while (std::getline(lines, line)) {
        std::string trimmed = line;
        if (auto pos = trimmed.find('#'); pos != std::string::npos) trimmed.resize(pos);
        std::istringstream words(trimmed);
        std::string cmd;
        if (!(words >> cmd)) continue;

        ScenarioStep step;
        step.command = trimmed.substr(trimmed.find_first_not_of(" \t"));
        while (!step.command.empty() && std::isspace(static_cast<unsigned char>(step.command.back())))
            step.command.pop_back();

        Program before = cur;
        if (cmd == "to-visitor" || cmd == "to-composite") {
            auto t = transform(cur, cmd == "to-visitor" ? Direction::ToVisitor
                                                        : Direction::ToComposite);
            if (!t.success) {
                step.message = t.error;
                if (!t.violations.empty()) step.message += "\n" + formatViolations(t.violations);
            } else {
                cur = std::move(*t.program);
                step.ok = true;
            }
        } else if (cmd == "add-subtype" || cmd == "edit-class") {
            std::string name, file;
            if (!(words >> name >> file)) {
                step.message = "usage: " + cmd + " <name> <fragment.mj>";
            } else {
                Decl frag;
                std::string err;
                if (!loadFragment(script_dir, file, frag, err)) {
                    step.message = err;
                } else if (declName(frag) != name) {
                    step.message = "fragment declares " + declName(frag) + ", expected " + name;
                } else {
                    Evolution ev;
                    if (cmd == "add-subtype") {
                        if (!std::holds_alternative<ClassDecl>(frag)) {
                            step.message = "add-subtype fragment must be a class";
                            result.steps.push_back(std::move(step));
                            result.error = result.steps.back().message;
                            return result;
                        }
                        ev = AddSubtype{std::get<ClassDecl>(frag)};
                    } else if (std::holds_alternative<ClassDecl>(frag)) {
                        ev = EditClass{std::get<ClassDecl>(frag)};
                    } else {
                        ev = EditClass{std::get<InterfaceDecl>(frag)};
                    }
                    auto r = apply_evolution(cur, ev);
                    if (!r.success) {
                        step.message = r.error;
                    } else {
                        cur = std::move(*r.program);
                        step.ok = true;
                    }
                }
            }
        } else if (cmd == "add-operation") {
            std::string name, type_word, file;
            Type ret;
            if (!(words >> name >> type_word >> file) || !parseTypeWord(type_word, ret)) {
                step.message = "usage: add-operation <name> <return-type> <fragment.mj>";
            } else {
                Decl frag;
                std::string err;
                if (!loadFragment(script_dir, file, frag, err)) {
                    step.message = err;
                } else if (!std::holds_alternative<ClassDecl>(frag)) {
                    step.message = "add-operation fragment must be a visitor class";
                } else {
                    auto r = apply_evolution(cur,
                                             AddOperation{name, ret, std::get<ClassDecl>(frag)});
                    if (!r.success) {
                        step.message = r.error;
                    } else {
                        cur = std::move(*r.program);
                        step.ok = true;
                    }
                }
            }
        } else if (cmd == "assert-form") {
            std::string want;
            words >> want;
            Form f = currentForm(cur);
            if ((want == "data" && f == Form::DataOriented) ||
                (want == "function" && f == Form::FunctionOriented)) {
                step.ok = true;
            } else {
                step.message = "expected " + want + " form, found " + formName(f);
            }
        } else {
            step.message = "unknown command " + cmd;
        }

        step.form = currentForm(cur);
        diffPrograms(before, cur, step);
        bool ok = step.ok;
        std::string msg = step.message;
        result.steps.push_back(std::move(step));
        if (!ok) {
            result.error = msg;
            return result;  // `cur` was never partially updated
        }
    }
    result.success = true;
    result.program = std::move(cur);
    return result;
}

std::string renderScenarioLog(const ScenarioResult& r) {
    std::ostringstream out;
    std::size_t n = 1;
    for (const auto& s : r.steps) {
        out << "step " << n++ << ": " << s.command << " -> "
            << (s.ok ? "ok" : "FAILED") << " [" << formName(s.form) << "]";
        auto list = [&](const char* tag, const std::vector<std::string>& v) {
            if (v.empty()) return;
            out << " " << tag << "=";
            for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
        };
        list("changed", s.changed);
        list("added", s.added);
        list("removed", s.removed);
        out << "\n";
        if (!s.message.empty()) out << "  " << s.message << "\n";
    }
    if (!r.success && !r.error.empty()) out << "scenario failed: " << r.error << "\n";
    return out.str();
}

}  // namespace dualshift
