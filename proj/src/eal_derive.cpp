#include "ltc/eal_derive.hpp"

#include <algorithm>
#include <sstream>

namespace ltc::eal {

namespace {
DerivPtr mk_deriv(Rule rule, TriContext ctx, TermPtr subject, TypePtr type,
                  std::vector<DerivPtr> premises, TypePtr inst = nullptr) {
    return std::make_shared<Derivation>(Derivation{rule, std::move(ctx), std::move(subject),
                                                   std::move(type), std::move(premises),
                                                   std::move(inst)});
}

enum class Zone { Gamma, Delta, Theta };

Ctx& zone_of(TriContext& c, Zone z) {
    switch (z) {
        case Zone::Gamma: return c.gamma;
        case Zone::Delta: return c.delta;
        case Zone::Theta: return c.theta;
    }
    return c.gamma;
}

// Adds name:ty to the chosen zone of every node. Γ additions follow the
// function side of applications (the split stays exact); Δ and Θ are shared,
// so those go everywhere. Promotion premises are sealed: the rule already
// allows arbitrary material in its conclusion.
DerivPtr weaken_zone(const DerivPtr& d, Zone z, const std::string& name, const TypePtr& ty) {
    if (d->ctx.gamma.count(name) || d->ctx.delta.count(name) || d->ctx.theta.count(name))
        throw TypeError("weakening: '" + name + "' is already bound in the context");
    if (d->rule == Rule::ForallIntro && free_type_vars(ty).count(d->type->name))
        throw TypeError("weakening: type of '" + name + "' mentions the quantified '" +
                        d->type->name + "'");
    Derivation nd = *d;
    zone_of(nd.ctx, z).emplace(name, ty);
    switch (d->rule) {
        case Rule::Var:
        case Rule::VarTemp:
        case Rule::Promote:
            break;
        case Rule::App:
            if (z == Zone::Gamma) {
                nd.premises = {weaken_zone(d->premises[0], z, name, ty), d->premises[1]};
            } else {
                nd.premises = {weaken_zone(d->premises[0], z, name, ty),
                               weaken_zone(d->premises[1], z, name, ty)};
            }
            break;
        default:
            nd.premises = {weaken_zone(d->premises[0], z, name, ty)};
            break;
    }
    return std::make_shared<Derivation>(std::move(nd));
}
}  // namespace

DerivPtr weaken_gamma(const DerivPtr& d, const std::string& name, const TypePtr& a) {
    if (!is_linear(a)) throw TypeError("weaken_gamma: '" + name + "' needs a linear type");
    return weaken_zone(d, Zone::Gamma, name, a);
}

DerivPtr weaken_delta(const DerivPtr& d, const std::string& name, const TypePtr& bang) {
    if (bang->kind != TypeKind::Bang)
        throw TypeError("weaken_delta: '" + name + "' needs a bang type");
    return weaken_zone(d, Zone::Delta, name, bang);
}

DerivPtr weaken_theta(const DerivPtr& d, const std::string& name, const TypePtr& sigma) {
    return weaken_zone(d, Zone::Theta, name, sigma);
}

DerivPtr d_var(const std::string& name, const TypePtr& a) {
    if (!is_linear(a)) throw TypeError("d_var: '" + name + "' needs a linear type");
    TriContext ctx;
    ctx.gamma.emplace(name, a);
    return mk_deriv(Rule::Var, std::move(ctx), e_var(name), a, {});
}

DerivPtr d_var_temp(const std::string& name, const TypePtr& sigma) {
    TriContext ctx;
    ctx.theta.emplace(name, sigma);
    return mk_deriv(Rule::VarTemp, std::move(ctx), e_var(name), sigma, {});
}

DerivPtr d_abs(const std::string& name, const TypePtr& a, const DerivPtr& body) {
    if (!is_linear(a)) throw TypeError("d_abs: binder '" + name + "' needs a linear type");
    DerivPtr b = body;
    auto it = b->ctx.gamma.find(name);
    if (it == b->ctx.gamma.end()) {
        b = weaken_gamma(b, name, a);
    } else if (!type_alpha_equal(it->second, a)) {
        throw TypeError("d_abs: '" + name + "' has type " + show_type(it->second) +
                        " in the body, not " + show_type(a));
    }
    TriContext ctx = b->ctx;
    ctx.gamma.erase(name);
    return mk_deriv(Rule::AbsLinear, std::move(ctx), e_abs(name, b->subject),
                    y_lolli(a, b->type), {b});
}

DerivPtr d_abs_bang(const std::string& name, const TypePtr& bang_sigma, const DerivPtr& body) {
    if (bang_sigma->kind != TypeKind::Bang)
        throw TypeError("d_abs_bang: binder '" + name + "' needs a bang type");
    DerivPtr b = body;
    auto it = b->ctx.delta.find(name);
    if (it == b->ctx.delta.end()) {
        b = weaken_delta(b, name, bang_sigma);
    } else if (!type_alpha_equal(it->second, bang_sigma)) {
        throw TypeError("d_abs_bang: '" + name + "' has type " + show_type(it->second) +
                        " in the body, not " + show_type(bang_sigma));
    }
    TriContext ctx = b->ctx;
    ctx.delta.erase(name);
    return mk_deriv(Rule::AbsBang, std::move(ctx), e_bang_abs(name, b->subject),
                    y_lolli(bang_sigma, b->type), {b});
}

DerivPtr d_app(const DerivPtr& fn, const DerivPtr& arg) {
    if (fn->type->kind != TypeKind::Lollipop)
        throw TypeError("d_app: function type is not a lollipop: " + show_type(fn->type));
    if (!type_alpha_equal(fn->type->t1, arg->type))
        throw TypeError("d_app: argument has type " + show_type(arg->type) + ", expected " +
                        show_type(fn->type->t1));
    for (const auto& [k, v] : fn->ctx.gamma)
        if (arg->ctx.gamma.count(k))
            throw TypeError("d_app: '" + k + "' is consumed by both sides");
    DerivPtr f = fn, a = arg;
    for (const auto& [k, v] : arg->ctx.delta) {
        auto it = fn->ctx.delta.find(k);
        if (it == fn->ctx.delta.end())
            f = weaken_delta(f, k, v);
        else if (!type_alpha_equal(it->second, v))
            throw TypeError("d_app: '" + k + "' has two types in the non-linear zone");
    }
    for (const auto& [k, v] : fn->ctx.delta)
        if (!arg->ctx.delta.count(k)) a = weaken_delta(a, k, v);
    for (const auto& [k, v] : arg->ctx.theta) {
        auto it = fn->ctx.theta.find(k);
        if (it == fn->ctx.theta.end())
            f = weaken_theta(f, k, v);
        else if (!type_alpha_equal(it->second, v))
            throw TypeError("d_app: '" + k + "' has two types in the temporary zone");
    }
    for (const auto& [k, v] : fn->ctx.theta)
        if (!arg->ctx.theta.count(k)) a = weaken_theta(a, k, v);
    TriContext ctx;
    ctx.gamma = f->ctx.gamma;
    ctx.gamma.insert(a->ctx.gamma.begin(), a->ctx.gamma.end());
    ctx.delta = f->ctx.delta;
    ctx.theta = f->ctx.theta;
    return mk_deriv(Rule::App, std::move(ctx), e_app(f->subject, a->subject), fn->type->t2,
                    {f, a});
}

DerivPtr d_forall_intro(const std::string& alpha, const DerivPtr& d) {
    if (!is_strictly_linear(d->type))
        throw TypeError("d_forall_intro: premise type " + show_type(d->type) +
                        " is not strictly linear");
    auto mentions = [&](const Ctx& c) {
        return std::any_of(c.begin(), c.end(), [&](const auto& kv) {
            return free_type_vars(kv.second).count(alpha) != 0;
        });
    };
    if (mentions(d->ctx.gamma) || mentions(d->ctx.delta) || mentions(d->ctx.theta))
        throw TypeError("d_forall_intro: '" + alpha + "' occurs free in the context");
    return mk_deriv(Rule::ForallIntro, d->ctx, d->subject, y_forall(alpha, d->type), {d});
}

DerivPtr d_forall_elim(const DerivPtr& d, const TypePtr& a) {
    if (d->type->kind != TypeKind::Forall)
        throw TypeError("d_forall_elim: premise type is not a quantifier: " + show_type(d->type));
    if (!is_linear(a))
        throw TypeError("d_forall_elim: instantiation at a bang type: " + show_type(a));
    TypePtr res = type_substitute(d->type->t1, d->type->name, a);
    return mk_deriv(Rule::ForallElim, d->ctx, d->subject, res, {d}, a);
}

DerivPtr d_promote(const DerivPtr& d) {
    if (!d->ctx.gamma.empty() || !d->ctx.delta.empty())
        throw TypeError("d_promote: premise must live in the temporary zone alone");
    TriContext ctx;
    for (const auto& [k, v] : d->ctx.theta) ctx.delta.emplace(k, y_bang(v));
    return mk_deriv(Rule::Promote, std::move(ctx), e_bang(d->subject), y_bang(d->type), {d});
}

// -------- checking --------

namespace {
bool ctx_equal(const Ctx& a, const Ctx& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [k, v] : a) {
        auto it = b.find(k);
        if (it == b.end() || !type_alpha_equal(v, it->second)) return false;
    }
    return true;
}

struct Checker {
    DerivCheck result;

    bool fail(const std::string& path, const std::string& reason) {
        if (result.ok) {
            result.ok = false;
            result.path = path;
            result.reason = reason;
        }
        return false;
    }

    bool node(const DerivPtr& d, const std::string& path) {
        if (!d || !d->subject || !d->type) return fail(path, "missing node data");
        for (const auto& [k, v] : d->ctx.gamma) {
            if (d->ctx.delta.count(k) || d->ctx.theta.count(k))
                return fail(path, "'" + k + "' appears in two zones");
            if (!is_linear(v)) return fail(path, "linear zone holds bang type for '" + k + "'");
        }
        for (const auto& [k, v] : d->ctx.delta) {
            if (d->ctx.theta.count(k)) return fail(path, "'" + k + "' appears in two zones");
            if (v->kind != TypeKind::Bang)
                return fail(path, "non-linear zone holds non-bang type for '" + k + "'");
        }
        std::size_t want = d->rule == Rule::Var || d->rule == Rule::VarTemp ? 0
                           : d->rule == Rule::App                          ? 2
                                                                           : 1;
        if (d->premises.size() != want) return fail(path, "wrong premise count");
        switch (d->rule) {
            case Rule::Var: {
                if (d->subject->kind != TermKind::Var) return fail(path, "subject is not a variable");
                auto it = d->ctx.gamma.find(d->subject->name);
                if (it == d->ctx.gamma.end())
                    return fail(path, "'" + d->subject->name + "' is not in the linear zone");
                if (!type_alpha_equal(it->second, d->type))
                    return fail(path, "variable type differs from the context");
                break;
            }
            case Rule::VarTemp: {
                if (d->subject->kind != TermKind::Var) return fail(path, "subject is not a variable");
                auto it = d->ctx.theta.find(d->subject->name);
                if (it == d->ctx.theta.end())
                    return fail(path, "'" + d->subject->name + "' is not in the temporary zone");
                if (!type_alpha_equal(it->second, d->type))
                    return fail(path, "variable type differs from the context");
                break;
            }
            case Rule::AbsLinear: {
                const DerivPtr& p = d->premises[0];
                if (d->subject->kind != TermKind::Abs) return fail(path, "subject is not \\x");
                if (d->type->kind != TypeKind::Lollipop) return fail(path, "type is not a lollipop");
                if (!is_linear(d->type->t1)) return fail(path, "binder type is not linear");
                if (d->ctx.gamma.count(d->subject->name))
                    return fail(path, "binder shadows a context entry");
                Ctx expect = d->ctx.gamma;
                expect.emplace(d->subject->name, d->type->t1);
                if (!ctx_equal(expect, p->ctx.gamma))
                    return fail(path, "premise linear zone is not the conclusion plus the binder");
                if (!ctx_equal(d->ctx.delta, p->ctx.delta) || !ctx_equal(d->ctx.theta, p->ctx.theta))
                    return fail(path, "shared zones differ from the premise");
                if (!alpha_equal(d->subject->t1, p->subject))
                    return fail(path, "premise subject is not the body");
                if (!type_alpha_equal(d->type->t2, p->type))
                    return fail(path, "premise type differs from the result type");
                break;
            }
            case Rule::AbsBang: {
                const DerivPtr& p = d->premises[0];
                if (d->subject->kind != TermKind::BangAbs) return fail(path, "subject is not \\!x");
                if (d->type->kind != TypeKind::Lollipop) return fail(path, "type is not a lollipop");
                if (d->type->t1->kind != TypeKind::Bang)
                    return fail(path, "binder type is not a bang");
                if (d->ctx.delta.count(d->subject->name))
                    return fail(path, "binder shadows a context entry");
                Ctx expect = d->ctx.delta;
                expect.emplace(d->subject->name, d->type->t1);
                if (!ctx_equal(expect, p->ctx.delta))
                    return fail(path, "premise non-linear zone is not the conclusion plus the binder");
                if (!ctx_equal(d->ctx.gamma, p->ctx.gamma) || !ctx_equal(d->ctx.theta, p->ctx.theta))
                    return fail(path, "shared zones differ from the premise");
                if (!alpha_equal(d->subject->t1, p->subject))
                    return fail(path, "premise subject is not the body");
                if (!type_alpha_equal(d->type->t2, p->type))
                    return fail(path, "premise type differs from the result type");
                break;
            }
            case Rule::App: {
                const DerivPtr& f = d->premises[0];
                const DerivPtr& a = d->premises[1];
                if (d->subject->kind != TermKind::App) return fail(path, "subject is not an application");
                if (!alpha_equal(d->subject->t1, f->subject) || !alpha_equal(d->subject->t2, a->subject))
                    return fail(path, "premise subjects do not match the application");
                if (f->type->kind != TypeKind::Lollipop)
                    return fail(path, "function premise is not a lollipop");
                if (!type_alpha_equal(f->type->t1, a->type))
                    return fail(path, "argument type differs from the lollipop domain");
                if (!type_alpha_equal(f->type->t2, d->type))
                    return fail(path, "conclusion type differs from the lollipop codomain");
                if (!ctx_equal(d->ctx.delta, f->ctx.delta) || !ctx_equal(d->ctx.delta, a->ctx.delta))
                    return fail(path, "non-linear zones differ between premises");
                if (!ctx_equal(d->ctx.theta, f->ctx.theta) || !ctx_equal(d->ctx.theta, a->ctx.theta))
                    return fail(path, "temporary zones differ between premises");
                Ctx joined = f->ctx.gamma;
                for (const auto& [k, v] : a->ctx.gamma)
                    if (!joined.emplace(k, v).second)
                        return fail(path, "'" + k + "' is consumed by both premises");
                if (!ctx_equal(joined, d->ctx.gamma))
                    return fail(path, "linear zone is not the exact premise split");
                break;
            }
            case Rule::ForallIntro: {
                const DerivPtr& p = d->premises[0];
                if (d->type->kind != TypeKind::Forall) return fail(path, "type is not a quantifier");
                if (!is_strictly_linear(p->type))
                    return fail(path, "premise type is not strictly linear");
                if (!type_alpha_equal(d->type->t1, p->type))
                    return fail(path, "premise type differs from the quantifier body");
                if (!alpha_equal(d->subject, p->subject))
                    return fail(path, "premise subject differs");
                if (!ctx_equal(d->ctx.gamma, p->ctx.gamma) || !ctx_equal(d->ctx.delta, p->ctx.delta) ||
                    !ctx_equal(d->ctx.theta, p->ctx.theta))
                    return fail(path, "contexts differ from the premise");
                const std::string& alpha = d->type->name;
                for (const Ctx* c : {&d->ctx.gamma, &d->ctx.delta, &d->ctx.theta})
                    for (const auto& [k, v] : *c)
                        if (free_type_vars(v).count(alpha))
                            return fail(path, "'" + alpha + "' occurs free in the context");
                break;
            }
            case Rule::ForallElim: {
                const DerivPtr& p = d->premises[0];
                if (!d->inst) return fail(path, "missing instantiation");
                if (!is_linear(d->inst)) return fail(path, "instantiation at a bang type");
                if (p->type->kind != TypeKind::Forall)
                    return fail(path, "premise type is not a quantifier");
                if (!type_alpha_equal(d->type,
                                      type_substitute(p->type->t1, p->type->name, d->inst)))
                    return fail(path, "conclusion type is not the instantiated body");
                if (!alpha_equal(d->subject, p->subject))
                    return fail(path, "premise subject differs");
                if (!ctx_equal(d->ctx.gamma, p->ctx.gamma) || !ctx_equal(d->ctx.delta, p->ctx.delta) ||
                    !ctx_equal(d->ctx.theta, p->ctx.theta))
                    return fail(path, "contexts differ from the premise");
                break;
            }
            case Rule::Promote: {
                const DerivPtr& p = d->premises[0];
                if (d->subject->kind != TermKind::Bang) return fail(path, "subject is not a bang");
                if (d->type->kind != TypeKind::Bang) return fail(path, "type is not a bang");
                if (!p->ctx.gamma.empty() || !p->ctx.delta.empty())
                    return fail(path, "premise uses more than the temporary zone");
                if (!alpha_equal(d->subject->t1, p->subject))
                    return fail(path, "premise subject is not the body");
                if (!type_alpha_equal(d->type->t1, p->type))
                    return fail(path, "premise type differs from the banged type");
                for (const auto& [k, v] : p->ctx.theta) {
                    auto it = d->ctx.delta.find(k);
                    if (it == d->ctx.delta.end())
                        return fail(path, "'" + k + "' is not banged into the non-linear zone");
                    if (!type_alpha_equal(it->second, y_bang(v)))
                        return fail(path, "'" + k + "' changes type across promotion");
                }
                break;
            }
        }
        for (std::size_t i = 0; i < d->premises.size(); ++i)
            if (!node(d->premises[i], path + "." + std::to_string(i))) return false;
        return true;
    }
};
}  // namespace

DerivCheck check_derivation(const DerivPtr& d) {
    Checker c;
    c.node(d, "root");
    return c.result;
}

// -------- text --------

namespace {
const char* rule_name(Rule r) {
    switch (r) {
        case Rule::Var: return "var";
        case Rule::VarTemp: return "var-temp";
        case Rule::AbsLinear: return "abs";
        case Rule::AbsBang: return "abs-bang";
        case Rule::App: return "app";
        case Rule::ForallIntro: return "forall-intro";
        case Rule::ForallElim: return "forall-elim";
        case Rule::Promote: return "promote";
    }
    return "?";
}

void show_deriv_rec(const DerivPtr& d, std::size_t depth, std::string& out) {
    out.append(2 * depth, ' ');
    out += rule_name(d->rule);
    if (d->rule == Rule::App) {
        out += " {" + show_type(d->premises[1]->type) + "}";
    } else if (d->rule == Rule::ForallElim) {
        out += " {" + show_type(d->inst) + "} {" + show_type(d->premises[0]->type) + "}";
    }
    out += "\n";
    for (const DerivPtr& p : d->premises) show_deriv_rec(p, depth + 1, out);
}

struct SkelNode {
    std::string rule;
    std::vector<std::string> annots;
    std::vector<std::size_t> children;
};

std::vector<SkelNode> parse_skeleton(const std::string& src, std::size_t& root) {
    std::vector<SkelNode> nodes;
    std::vector<std::size_t> stack;  // stack[d] = last node seen at depth d
    bool have_root = false;
    std::size_t lineno = 0;
    std::istringstream in(src);
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t indent = 0;
        while (indent < line.size() && line[indent] == ' ') ++indent;
        std::size_t i = indent;
        if (i >= line.size() || line[i] == '#' || line[i] == '\r') continue;
        if (indent % 2 != 0)
            throw ParseError("derivation line " + std::to_string(lineno) + ": odd indent");
        std::size_t depth = indent / 2;
        SkelNode n;
        while (i < line.size() && (isalnum(static_cast<unsigned char>(line[i])) || line[i] == '-'))
            n.rule += line[i++];
        for (;;) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\r')) ++i;
            if (i >= line.size()) break;
            if (line[i] != '{')
                throw ParseError("derivation line " + std::to_string(lineno) + ": expected '{'");
            std::size_t close = line.find('}', i);
            if (close == std::string::npos)
                throw ParseError("derivation line " + std::to_string(lineno) + ": missing '}'");
            n.annots.push_back(line.substr(i + 1, close - i - 1));
            i = close + 1;
        }
        std::size_t id = nodes.size();
        nodes.push_back(std::move(n));
        if (depth == 0) {
            if (have_root) throw ParseError("derivation has two roots");
            have_root = true;
            root = id;
            stack.assign(1, id);
        } else {
            if (depth > stack.size())
                throw ParseError("derivation line " + std::to_string(lineno) + ": indent jump");
            stack.resize(depth);
            nodes[stack.back()].children.push_back(id);
            stack.push_back(id);
        }
    }
    if (!have_root) throw ParseError("empty derivation");
    return nodes;
}

struct Rebuilder {
    const std::vector<SkelNode>& nodes;

    DerivPtr build(std::size_t id, const TriContext& ctx, const TermPtr& subject,
                   const TypePtr& type) {
        const SkelNode& n = nodes[id];
        auto need = [&](std::size_t k, std::size_t annots) {
            if (n.children.size() != k)
                throw ParseError("derivation node '" + n.rule + "': wrong premise count");
            if (n.annots.size() != annots)
                throw ParseError("derivation node '" + n.rule + "': wrong annotation count");
        };
        if (n.rule == "var") {
            need(0, 0);
            return mk_deriv(Rule::Var, ctx, subject, type, {});
        }
        if (n.rule == "var-temp") {
            need(0, 0);
            return mk_deriv(Rule::VarTemp, ctx, subject, type, {});
        }
        if (n.rule == "abs") {
            need(1, 0);
            if (subject->kind != TermKind::Abs || type->kind != TypeKind::Lollipop)
                throw ParseError("derivation node 'abs' does not fit the subject");
            TriContext sub = ctx;
            if (!sub.gamma.emplace(subject->name, type->t1).second)
                throw ParseError("derivation binder '" + subject->name + "' shadows the context");
            return mk_deriv(Rule::AbsLinear, ctx, subject, type,
                            {build(n.children[0], sub, subject->t1, type->t2)});
        }
        if (n.rule == "abs-bang") {
            need(1, 0);
            if (subject->kind != TermKind::BangAbs || type->kind != TypeKind::Lollipop)
                throw ParseError("derivation node 'abs-bang' does not fit the subject");
            TriContext sub = ctx;
            if (!sub.delta.emplace(subject->name, type->t1).second)
                throw ParseError("derivation binder '" + subject->name + "' shadows the context");
            return mk_deriv(Rule::AbsBang, ctx, subject, type,
                            {build(n.children[0], sub, subject->t1, type->t2)});
        }
        if (n.rule == "app") {
            need(2, 1);
            if (subject->kind != TermKind::App)
                throw ParseError("derivation node 'app' does not fit the subject");
            TypePtr arg_ty = parse_type(n.annots[0]);
            TriContext fn_ctx, arg_ctx;
            fn_ctx.delta = arg_ctx.delta = ctx.delta;
            fn_ctx.theta = arg_ctx.theta = ctx.theta;
            auto arg_free = free_vars(subject->t2);
            for (const auto& [k, v] : ctx.gamma)
                (arg_free.count(k) ? arg_ctx : fn_ctx).gamma.emplace(k, v);
            DerivPtr f = build(n.children[0], fn_ctx, subject->t1, y_lolli(arg_ty, type));
            DerivPtr a = build(n.children[1], arg_ctx, subject->t2, arg_ty);
            return mk_deriv(Rule::App, ctx, subject, type, {f, a});
        }
        if (n.rule == "forall-intro") {
            need(1, 0);
            if (type->kind != TypeKind::Forall)
                throw ParseError("derivation node 'forall-intro' does not fit the type");
            return mk_deriv(Rule::ForallIntro, ctx, subject, type,
                            {build(n.children[0], ctx, subject, type->t1)});
        }
        if (n.rule == "forall-elim") {
            need(1, 2);
            TypePtr inst = parse_type(n.annots[0]);
            TypePtr prem = parse_type(n.annots[1]);
            if (prem->kind != TypeKind::Forall)
                throw ParseError("derivation node 'forall-elim': premise is not a quantifier");
            return mk_deriv(Rule::ForallElim, ctx, subject, type,
                            {build(n.children[0], ctx, subject, prem)}, inst);
        }
        if (n.rule == "promote") {
            need(1, 0);
            if (subject->kind != TermKind::Bang || type->kind != TypeKind::Bang)
                throw ParseError("derivation node 'promote' does not fit the subject");
            TriContext sub;
            auto body_free = free_vars(subject->t1);
            for (const auto& [k, v] : ctx.delta) {
                if (!body_free.count(k)) continue;
                if (v->kind != TypeKind::Bang)
                    throw ParseError("derivation node 'promote': '" + k + "' is not banged");
                sub.theta.emplace(k, v->t1);
            }
            return mk_deriv(Rule::Promote, ctx, subject, type,
                            {build(n.children[0], sub, subject->t1, type->t1)});
        }
        throw ParseError("unknown derivation rule '" + n.rule + "'");
    }
};
}  // namespace

std::string show_derivation(const DerivPtr& d) {
    std::string out;
    show_deriv_rec(d, 0, out);
    return out;
}

DerivPtr parse_derivation(const std::string& src, const TermPtr& subject, const TypePtr& type) {
    std::size_t root = 0;
    auto nodes = parse_skeleton(src, root);
    Rebuilder rb{nodes};
    return rb.build(root, TriContext{}, subject, type);
}

}  // namespace ltc::eal
