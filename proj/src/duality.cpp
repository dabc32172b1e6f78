#include "dualshift/duality.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <map>
#include <sstream>

#include "dualshift/printer.hpp"
#include "dualshift/typecheck.hpp"

namespace dualshift {
namespace {

std::string lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string capitalize(const std::string& s) {
    std::string out = s;
    if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
}

std::string visitName(const std::string& subtype) { return "visit" + subtype; }
std::string visitorClassName(const std::string& op) { return capitalize(op) + "Visitor"; }
std::string getterName(const std::string& field) { return "get" + capitalize(field); }

// getter/field correspondence over the subtypes' trivial getters
std::map<std::string, std::string> getterMap(const Program& p, const HierarchyInfo& h) {
    std::map<std::string, std::string> g2f;
    for (const auto& s : h.subtypes) {
        const ClassDecl* c = findClass(p, s);
        for (const auto& mem : c->members) {
            const auto* m = std::get_if<MethodDecl>(&mem);
            if (!m || !m->body || !m->params.empty() || m->body->size() != 1) continue;
            const Stmt& st = (*m->body)[0];
            if (st.kind != StmtKind::Return || !st.expr) continue;
            if (st.expr->kind != ExprKind::FieldAccess || !st.expr->target ||
                st.expr->target->kind != ExprKind::This)
                continue;
            if (findField(*c, st.expr->name) && m->name == getterName(st.expr->name))
                g2f[m->name] = st.expr->name;
        }
    }
    return g2f;
}

MethodDecl abstractMethod(const Type& ret, const std::string& name, std::vector<Param> params,
                          std::optional<std::string> type_param = std::nullopt) {
    MethodDecl m;
    m.is_abstract = true;
    m.type_param = std::move(type_param);
    m.return_type = ret;
    m.name = name;
    m.params = std::move(params);
    return m;
}

}  // namespace

PlanResult plan_to_visitor(const Program& p) {
    auto detected = detect_hierarchy(p);
    if (auto* err = std::get_if<std::string>(&detected)) return *err;
    const HierarchyInfo& h = std::get<HierarchyInfo>(detected);

    Classification c = classify(coverage_matrix(p, h));
    if (c.form != Form::DataOriented)
        return std::string("program is not data-oriented (" + formName(c.form) + ")");
    for (const auto& op : h.operations) {
        const MethodDecl* m = findMethod(*findClass(p, h.root), op.name);
        if (!m->params.empty())
            return std::string("operation " + op.name + " is not nullary");
    }

    Plan plan;
    plan.label = "to-visitor";

    // the visitor interface, one case per subtype
    plan.steps.push_back(CreateInterface{"Visitor", std::string("T")});
    for (const auto& s : h.subtypes)
        plan.steps.push_back(AddAbstractMethod{
            "Visitor",
            abstractMethod(Type::var("T"), visitName(s), {{Type::named(s), lower(s)}})});

    // the dispatcher
    plan.steps.push_back(AddAbstractMethod{
        h.root, abstractMethod(Type::var("T"), "accept",
                               {{Type::named("Visitor", Type::var("T")), "v"}},
                               std::string("T"))});
    for (const auto& s : h.subtypes) {
        MethodDecl acc;
        acc.type_param = "T";
        acc.return_type = Type::var("T");
        acc.name = "accept";
        acc.params = {{Type::named("Visitor", Type::var("T")), "v"}};
        acc.body = Body{{StmtKind::Return, {}, "",
                         makeCall(makeVar("v"), visitName(s), {makeThis()})}};
        plan.steps.push_back(AddMethod{s, std::move(acc)});
    }

    // getters: moved bodies read fields through them
    std::map<std::string, std::string> f2g;
    for (const auto& s : h.subtypes)
        for (const auto& mem : findClass(p, s)->members)
            if (const auto* f = std::get_if<FieldDecl>(&mem);
                f && f->vis == Visibility::Private) {
                plan.steps.push_back(EncapsulateField{s, f->name});
                f2g[f->name] = getterName(f->name);
            }

    // one visitor class per operation; bodies migrate subtype by subtype
    for (const auto& op : h.operations) {
        std::string vc = visitorClassName(op.name);
        plan.steps.push_back(CreateClass{
            vc, false, std::nullopt, Type::named("Visitor", op.return_type)});
        for (const auto& s : h.subtypes)
            plan.steps.push_back(AddAbstractMethod{
                vc, abstractMethod(op.return_type, visitName(s),
                                   {{Type::named(s), lower(s)}})});
        for (const auto& s : h.subtypes) {
            MoveRewrite rw;
            rw.self_to_param = lower(s);
            rw.field_to_getter = f2g;
            rw.op_name = op.name;
            rw.accept_name = "accept";
            rw.calls_to_accept = true;
            plan.steps.push_back(MoveMethodBody{s, op.name, vc, visitName(s), std::move(rw)});
        }
        for (const auto& s : h.subtypes) plan.steps.push_back(DeleteMethod{s, op.name});
        MethodDecl facade;
        facade.return_type = op.return_type;
        facade.name = op.name;
        facade.body = Body{{StmtKind::Return, {}, "",
                            makeCall(makeThis(), "accept", {makeNew(vc, {})})}};
        plan.steps.push_back(AddDelegatingMethod{h.root, std::move(facade)});
    }
    return plan;
}

PlanResult plan_to_composite(const Program& p) {
    auto detected = detect_hierarchy(p);
    if (auto* err = std::get_if<std::string>(&detected)) return *err;
    const HierarchyInfo& h = std::get<HierarchyInfo>(detected);

    if (h.accept_name.empty() || h.visitor_interface.empty())
        return std::string("program has no visitor dispatcher on " + h.root);
    Classification c = classify(coverage_matrix(p, h));
    if (c.form != Form::FunctionOriented)
        return std::string("program is not function-oriented (" + formName(c.form) + ")");

    // resolve each operation's visitor class through its facade
    struct OpInfo {
        Operation op;
        std::string visitor;
        std::map<std::string, std::string> visit_of;  // subtype -> case method
    };
    std::vector<OpInfo> ops;
    const ClassDecl* root = findClass(p, h.root);
    for (const auto& op : h.operations) {
        const MethodDecl* m = findMethod(*root, op.name);
        std::string vc;
        if (m && m->body && isDelegatingBody(*m->body)) {
            const ExprPtr& call = (*m->body)[0].expr;
            if (call->name == h.accept_name)
                for (const auto& a : call->args)
                    if (a->kind == ExprKind::New) vc = a->name;
        }
        if (vc.empty())
            return std::string("operation " + op.name + " has no visitor facade");
        const ClassDecl* v = findClass(p, vc);
        if (!v) return std::string("unknown visitor class " + vc);
        for (const auto& mem : v->members)
            if (!std::holds_alternative<MethodDecl>(mem))
                return std::string("visitor " + vc + " is not stateless");
        OpInfo info{op, vc, {}};
        for (const auto& s : h.subtypes) {
            const MethodDecl* cs = nullptr;
            for (const auto& mem : v->members) {
                const auto* vm = std::get_if<MethodDecl>(&mem);
                if (vm && vm->params.size() == 1 && vm->params[0].type == Type::named(s))
                    cs = vm;
            }
            if (!cs)
                return std::string("incomplete visitor " + vc + ": no case for " + s);
            info.visit_of[s] = cs->name;
        }
        ops.push_back(std::move(info));
    }

    std::map<std::string, std::string> g2f = getterMap(p, h);

    Plan plan;
    plan.label = "to-composite";
    for (const auto& info : ops) {
        for (const auto& s : h.subtypes)
            plan.steps.push_back(
                AddAbstractMethod{s, abstractMethod(info.op.return_type, info.op.name, {})});
        for (const auto& s : h.subtypes) {
            MoveRewrite rw;
            rw.param_to_self = true;
            rw.getter_to_field = g2f;
            rw.op_name = info.op.name;
            rw.accept_name = h.accept_name;
            rw.accept_to_calls = true;
            plan.steps.push_back(
                MoveMethodBody{info.visitor, info.visit_of.at(s), s, info.op.name, std::move(rw)});
        }
        for (const auto& s : h.subtypes)
            plan.steps.push_back(DeleteMethod{info.visitor, info.visit_of.at(s)});
        plan.steps.push_back(
            AddAbstractMethod{h.root, abstractMethod(info.op.return_type, info.op.name, {})});
        plan.steps.push_back(DeleteClass{info.visitor});
    }
    for (const auto& s : h.subtypes) plan.steps.push_back(DeleteMethod{s, h.accept_name});
    plan.steps.push_back(DeleteMethod{h.root, h.accept_name});
    plan.steps.push_back(DeleteInterface{h.visitor_interface});
    for (const auto& s : h.subtypes) {
        std::vector<std::string> getters;
        for (const auto& mem : findClass(p, s)->members)
            if (const auto* m = std::get_if<MethodDecl>(&mem); m && g2f.count(m->name))
                getters.push_back(m->name);
        for (const auto& g : getters) plan.steps.push_back(InlineTrivialGetter{s, g});
    }
    return plan;
}

TransformResult transform(const Program& p, Direction d) {
    TransformResult r;
    PlanResult planned =
        d == Direction::ToVisitor ? plan_to_visitor(p) : plan_to_composite(p);
    if (auto* err = std::get_if<std::string>(&planned)) {
        r.error = *err;
        return r;
    }
    r.plan = std::get<Plan>(planned);
    ApplyReport report = apply_plan(r.plan, p);
    if (!report.success) {
        r.violations = std::move(report.violations);
        r.error = "plan failed at step " + std::to_string(r.violations.front().step_index) +
                  " (" + r.violations.front().op_label + ")";
        return r;
    }
    Program out = std::move(*report.result);
    auto diags = typecheck(out);
    if (!diags.empty()) {
        r.error = "transformed program does not typecheck:\n" + formatDiagnostics(diags);
        return r;
    }
    auto detected = detect_hierarchy(out);
    if (auto* err = std::get_if<std::string>(&detected)) {
        r.error = "transformed program lost its hierarchy: " + *err;
        return r;
    }
    Form want = d == Direction::ToVisitor ? Form::FunctionOriented : Form::DataOriented;
    Classification c =
        classify(coverage_matrix(out, std::get<HierarchyInfo>(detected)));
    if (c.form != want) {
        r.error = "transformed program classifies as " + formName(c.form);
        return r;
    }
    r.success = true;
    r.program = std::move(out);
    return r;
}

RoundTripReport roundtrip_check(const Program& p) {
    RoundTripReport rep;
    auto t0 = std::chrono::steady_clock::now();
    auto detected = detect_hierarchy(p);
    if (auto* err = std::get_if<std::string>(&detected)) {
        rep.error = *err;
        return rep;
    }
    Classification c = classify(coverage_matrix(p, std::get<HierarchyInfo>(detected)));
    Direction first, second;
    if (c.form == Form::DataOriented) {
        first = Direction::ToVisitor;
        second = Direction::ToComposite;
    } else if (c.form == Form::FunctionOriented) {
        first = Direction::ToComposite;
        second = Direction::ToVisitor;
    } else {
        rep.error = "mixed program has no round trip";
        return rep;
    }
    TransformResult a = transform(p, first);
    if (!a.success) {
        rep.error = a.error;
        return rep;
    }
    TransformResult b = transform(*a.program, second);
    if (!b.success) {
        rep.error = b.error;
        return rep;
    }
    rep.success = true;
    std::string before = pretty(p);
    std::string after = pretty(*b.program);
    rep.identical = before == after;
    if (!rep.identical) {
        std::istringstream sa(before), sb(after);
        std::string la, lb;
        int n = 1;
        while (true) {
            bool ga = static_cast<bool>(std::getline(sa, la));
            bool gb = static_cast<bool>(std::getline(sb, lb));
            if (!ga && !gb) break;
            if (la != lb || ga != gb) {
                rep.diff = "line " + std::to_string(n) + ": `" + (ga ? la : "<eof>") +
                           "` vs `" + (gb ? lb : "<eof>") + "`";
                break;
            }
            ++n;
            la.clear();
            lb.clear();
        }
    }
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

EvolutionResult apply_evolution(const Program& p, const Evolution& e) {
    EvolutionResult r;
    auto detected = detect_hierarchy(p);
    if (auto* err = std::get_if<std::string>(&detected)) {
        r.error = *err;
        return r;
    }
    const HierarchyInfo& h = std::get<HierarchyInfo>(detected);
    Classification c = classify(coverage_matrix(p, h));

    if (const auto* add = std::get_if<AddSubtype>(&e)) {
        if (c.form != Form::DataOriented) {
            r.error = "add-subtype is only modular in the data-oriented form (current: " +
                      formName(c.form) + ")";
            return r;
        }
        if (findClass(p, add->fragment.name) || findInterface(p, add->fragment.name)) {
            r.error = "name " + add->fragment.name + " already declared";
            return r;
        }
        if (!add->fragment.extends || *add->fragment.extends != h.root) {
            r.error = "new subtype must extend " + h.root;
            return r;
        }
        Program out = p;
        out.decls.emplace_back(add->fragment);
        auto diags = typecheck(out);
        if (!diags.empty()) {
            r.error = "evolved program does not typecheck:\n" + formatDiagnostics(diags);
            return r;
        }
        r.success = true;
        r.program = std::move(out);
        return r;
    }

    if (const auto* add = std::get_if<AddOperation>(&e)) {
        if (c.form != Form::FunctionOriented || h.accept_name.empty()) {
            r.error = "add-operation is only modular in the visitor form (current: " +
                      formName(c.form) + ")";
            return r;
        }
        if (findClass(p, add->fragment.name) || findInterface(p, add->fragment.name)) {
            r.error = "name " + add->fragment.name + " already declared";
            return r;
        }
        if (findMethod(*findClass(p, h.root), add->name)) {
            r.error = "operation " + add->name + " already exists on " + h.root;
            return r;
        }
        Program out = p;
        out.decls.emplace_back(add->fragment);
        MethodDecl facade;
        facade.return_type = add->return_type;
        facade.name = add->name;
        facade.body = Body{{StmtKind::Return, {}, "",
                            makeCall(makeThis(), h.accept_name,
                                     {makeNew(add->fragment.name, {})})}};
        for (auto& d : out.decls)
            if (auto* cd = std::get_if<ClassDecl>(&d); cd && cd->name == h.root)
                cd->members.emplace_back(std::move(facade));
        auto diags = typecheck(out);
        if (!diags.empty()) {
            r.error = "evolved program does not typecheck:\n" + formatDiagnostics(diags);
            return r;
        }
        r.success = true;
        r.program = std::move(out);
        return r;
    }

    const auto& edit = std::get<EditClass>(e);
    std::string name = std::holds_alternative<ClassDecl>(edit.fragment)
                           ? std::get<ClassDecl>(edit.fragment).name
                           : std::get<InterfaceDecl>(edit.fragment).name;
    Program out = p;
    bool replaced = false;
    for (auto& d : out.decls)
        if (declName(d) == name) {
            if (std::holds_alternative<ClassDecl>(edit.fragment))
                d = std::get<ClassDecl>(edit.fragment);
            else
                d = std::get<InterfaceDecl>(edit.fragment);
            replaced = true;
        }
    if (!replaced) {
        r.error = "no declaration named " + name + " to edit";
        return r;
    }
    auto diags = typecheck(out);
    if (!diags.empty()) {
        r.error = "evolved program does not typecheck:\n" + formatDiagnostics(diags);
        return r;
    }
    r.success = true;
    r.program = std::move(out);
    return r;
}

}  // namespace dualshift
