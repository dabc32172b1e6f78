#include "dualshift/lens.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "dualshift/printer.hpp"
#include "dualshift/refactor.hpp"
#include "dualshift/typecheck.hpp"

namespace dualshift {
namespace {

// accept-shaped: generic method whose single parameter is interface-typed.
bool isAcceptShaped(const Program& p, const MethodDecl& m) {
    if (!m.type_param || m.params.size() != 1) return false;
    const Type& t = m.params[0].type;
    return t.kind == TypeKind::Named && findInterface(p, t.name);
}

}  // namespace

DetectResult detect_hierarchy(const Program& p) {
    std::vector<const ClassDecl*> roots;
    for (const auto& d : p.decls) {
        const auto* c = std::get_if<ClassDecl>(&d);
        if (!c || !c->is_abstract || c->extends) continue;
        bool has_concrete_sub = false;
        for (const auto& d2 : p.decls) {
            const auto* s = std::get_if<ClassDecl>(&d2);
            if (s && !s->is_abstract && s->extends && *s->extends == c->name)
                has_concrete_sub = true;
        }
        if (has_concrete_sub) roots.push_back(c);
    }
    if (roots.empty()) return std::string("no hierarchy root found");
    if (roots.size() > 1) {
        std::string msg = "multiple hierarchy root candidates:";
        for (const auto* r : roots) msg += " " + r->name;
        return msg;
    }
    const ClassDecl& root = *roots.front();

    HierarchyInfo h;
    h.root = root.name;
    for (const auto& d : p.decls) {
        const auto* s = std::get_if<ClassDecl>(&d);
        if (s && !s->is_abstract && s->extends && *s->extends == root.name)
            h.subtypes.push_back(s->name);
    }
    for (const auto& mem : root.members) {
        const auto* m = std::get_if<MethodDecl>(&mem);
        if (!m) continue;
        if (isAcceptShaped(p, *m)) {
            h.accept_name = m->name;
            h.visitor_interface = m->params[0].type.name;
            continue;
        }
        h.operations.push_back({m->name, m->return_type});
    }
    std::set<std::string> inside{h.root};
    inside.insert(h.subtypes.begin(), h.subtypes.end());
    for (const auto& d : p.decls) {
        const auto* c = std::get_if<ClassDecl>(&d);
        if (c && !inside.count(c->name)) h.visitor_classes.push_back(c->name);
    }
    return h;
}

namespace {

// Follows delegating bodies from subtype `sub` to the class that holds the
// business code of operation `op`. Bounded: cycles or unresolvable hops
// yield "?".
std::string resolveOwner(const Program& p, const std::string& sub, const std::string& op) {
    std::string cls = sub;
    std::string name = op;
    for (int hops = 0; hops < 8; ++hops) {
        std::string found_in;
        const MethodDecl* m = lookupMethod(p, cls, name, &found_in);
        if (!m || !m->body) return "?";
        if (!isDelegatingBody(*m->body)) return found_in;
        const ExprPtr& call = (*m->body)[0].expr;
        if (call->target->kind == ExprKind::New) {
            // `return new V().visitS(this);` — jump into the visitor class
            cls = call->target->name;
            name = call->name;
            continue;
        }
        const Expr* newArg = nullptr;
        for (const auto& a : call->args)
            if (a->kind == ExprKind::New) newArg = a.get();
        if (newArg) {
            // `return this.accept(new V());` — skip the double dispatch:
            // the visitor case for `sub` is its method taking one `sub`.
            const ClassDecl* v = findClass(p, newArg->name);
            const MethodDecl* target = nullptr;
            if (v)
                for (const auto& mem : v->members) {
                    const auto* vm = std::get_if<MethodDecl>(&mem);
                    if (vm && vm->params.size() == 1 && vm->params[0].type == Type::named(sub))
                        target = vm;
                }
            if (!target) return "?";
            cls = newArg->name;
            name = target->name;
            continue;
        }
        if (call->target->kind == ExprKind::This) {
            // plain self-delegation; dynamic dispatch stays on the subtype
            cls = sub;
            name = call->name;
            continue;
        }
        // a call on a parameter (`num.getValue()`) is business code, not a
        // dispatch we can follow
        return found_in;
    }
    return "?";
}

}  // namespace

Matrix coverage_matrix(const Program& p, const HierarchyInfo& h) {
    Matrix m;
    m.subtypes = h.subtypes;
    m.operations = h.operations;
    for (const auto& s : h.subtypes) {
        std::vector<std::string> row;
        for (const auto& o : h.operations) row.push_back(resolveOwner(p, s, o.name));
        m.owner.push_back(std::move(row));
    }
    return m;
}

Classification classify(const Matrix& m) {
    Classification c;
    std::size_t rows = m.subtypes.size(), cols = m.operations.size();

    enum class ColKind { Data, Single, Inconsistent };
    std::vector<ColKind> kinds(cols, ColKind::Data);
    std::vector<std::string> single_owner(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        bool all_row = true, all_same = rows > 0;
        for (std::size_t i = 0; i < rows; ++i) {
            if (m.owner[i][j] != m.subtypes[i]) all_row = false;
            if (m.owner[i][j] != m.owner[0][j] || m.owner[i][j] == "?") all_same = false;
        }
        if (all_row) {
            kinds[j] = ColKind::Data;
        } else if (all_same) {
            kinds[j] = ColKind::Single;
            single_owner[j] = m.owner[0][j];
        } else {
            kinds[j] = ColKind::Inconsistent;
        }
    }

    bool any_single = false, any_incons = false, all_data = true;
    for (auto k : kinds) {
        if (k != ColKind::Data) all_data = false;
        if (k == ColKind::Single) any_single = true;
        if (k == ColKind::Inconsistent) any_incons = true;
    }
    // data wins ties (a hierarchy with one subtype satisfies both readings)
    if (all_data || cols == 0 || rows == 0) {
        c.form = Form::DataOriented;
        return c;
    }
    if (any_single && !any_incons) {
        bool all_single = true;
        for (auto k : kinds)
            if (k != ColKind::Single) all_single = false;
        if (all_single) {
            c.form = Form::FunctionOriented;
            return c;
        }
    }

    c.form = Form::Mixed;
    // Offenders: the minority pattern among clean columns, plus the rows that
    // deviate inside inconsistent columns.
    std::size_t n_data = 0, n_single = 0;
    for (auto k : kinds) {
        if (k == ColKind::Data) ++n_data;
        if (k == ColKind::Single) ++n_single;
    }
    bool data_majority = n_data >= n_single;
    auto note = [&](const std::string& line) { c.details.push_back(line); };
    for (std::size_t j = 0; j < cols; ++j) {
        if (kinds[j] == ColKind::Single && data_majority) {
            c.offending_operations.push_back(m.operations[j].name);
            note("operation " + m.operations[j].name + " is function-oriented (owned by " +
                 single_owner[j] + ")");
        } else if (kinds[j] == ColKind::Data && !data_majority) {
            c.offending_operations.push_back(m.operations[j].name);
            note("operation " + m.operations[j].name + " is data-oriented");
        } else if (kinds[j] == ColKind::Inconsistent) {
            // majority owner within the column; deviating rows are offenders
            std::map<std::string, int> tally;
            for (std::size_t i = 0; i < rows; ++i) ++tally[m.owner[i][j]];
            std::string majority;
            int best = -1;
            for (const auto& [owner, n] : tally)
                if (n > best) best = n, majority = owner;
            for (std::size_t i = 0; i < rows; ++i)
                if (m.owner[i][j] != majority) {
                    if (std::find(c.offending_subtypes.begin(), c.offending_subtypes.end(),
                                  m.subtypes[i]) == c.offending_subtypes.end())
                        c.offending_subtypes.push_back(m.subtypes[i]);
                    note("cell " + m.subtypes[i] + "." + m.operations[j].name + " owned by " +
                         m.owner[i][j] + " while the rest of the column is owned by " + majority);
                }
        }
    }
    return c;
}

std::string formName(Form f) {
    switch (f) {
        case Form::DataOriented: return "data";
        case Form::FunctionOriented: return "function";
        default: return "mixed";
    }
}

std::string render_matrix(const Matrix& m) {
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> head{"subtype"};
    for (const auto& o : m.operations) head.push_back(o.name);
    grid.push_back(head);
    for (std::size_t i = 0; i < m.subtypes.size(); ++i) {
        std::vector<std::string> row{m.subtypes[i]};
        for (const auto& owner : m.owner[i]) row.push_back(owner);
        grid.push_back(row);
    }
    std::vector<std::size_t> width(head.size(), 0);
    for (const auto& row : grid)
        for (std::size_t j = 0; j < row.size(); ++j)
            width[j] = std::max(width[j], row[j].size());
    std::ostringstream out;
    for (const auto& row : grid) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << "  ";
            out << row[j];
            if (j + 1 < row.size()) out << std::string(width[j] - row[j].size(), ' ');
        }
        out << "\n";
    }
    return out.str();
}

std::string matrixCsv(const Matrix& m) {
    std::ostringstream out;
    out << "subtype,operation,owner\n";
    for (std::size_t i = 0; i < m.subtypes.size(); ++i)
        for (std::size_t j = 0; j < m.operations.size(); ++j)
            out << m.subtypes[i] << "," << m.operations[j].name << "," << m.owner[i][j] << "\n";
    return out.str();
}

}  // namespace dualshift
