#include "ltc/stlc_compile.hpp"

namespace ltc::stlc_compile {

using namespace ltc::stlc;
using church::letter_var;
using church::node_var;

namespace {

// \t.\u.\n_a1...\n_ak.\x. n_lab (t n1 .. nk x) (u n1 .. nk x)
TermPtr node_combinator(const Alphabet& sigma, const std::string& label) {
    std::vector<TermPtr> ns;
    std::vector<std::string> binders{"t", "u"};
    for (const auto& s : sigma.symbols()) {
        binders.push_back(node_var(s));
        ns.push_back(mk_var(node_var(s)));
    }
    binders.push_back("x");
    std::vector<TermPtr> fold_args = ns;
    fold_args.push_back(mk_var("x"));
    TermPtr body = mk_apps(mk_var(node_var(label)),
                           {mk_apps(mk_var("t"), fold_args), mk_apps(mk_var("u"), fold_args)});
    return mk_abss(binders, body);
}

TermPtr identity_term() { return mk_abs("z", mk_var("z")); }

using Env = std::map<std::string, TermPtr>;

TermPtr expr_term(const trees::ExprPtr& e, const Env& tree_env, const Env& hole_env,
                  const Alphabet& sigma);

TermPtr hole_expr_term(const trees::HExprPtr& h, const Env& tree_env, const Env& hole_env,
                       const Alphabet& sigma) {
    using K = trees::HoleExpr::Kind;
    switch (h->kind) {
        case K::Hole:
            return identity_term();
        case K::Var: {
            auto it = hole_env.find(h->name);
            if (it == hole_env.end()) throw InputError("compile: unbound hole variable " + h->name);
            return it->second;
        }
        case K::NodeL:
        case K::NodeR: {
            TermPtr sub = hole_expr_term(h->h1, tree_env, hole_env, sigma);
            TermPtr other = expr_term(h->e, tree_env, hole_env, sigma);
            std::set<std::string> avoid = free_vars(sub);
            for (const auto& v : free_vars(other)) avoid.insert(v);
            std::string z = avoid.count("z") ? fresh_name("z", avoid) : "z";
            TermPtr plugged = mk_app(sub, mk_var(z));
            TermPtr node = h->kind == K::NodeL
                               ? mk_apps(node_combinator(sigma, h->label), {plugged, other})
                               : mk_apps(node_combinator(sigma, h->label), {other, plugged});
            return mk_abs(z, node);
        }
        case K::Compose: {
            TermPtr outer = hole_expr_term(h->h1, tree_env, hole_env, sigma);
            TermPtr inner = hole_expr_term(h->h2, tree_env, hole_env, sigma);
            std::set<std::string> avoid = free_vars(outer);
            for (const auto& v : free_vars(inner)) avoid.insert(v);
            std::string z = avoid.count("z") ? fresh_name("z", avoid) : "z";
            return mk_abs(z, mk_app(outer, mk_app(inner, mk_var(z))));
        }
    }
    throw InputError("compile: bad hole expression");
}

TermPtr expr_term(const trees::ExprPtr& e, const Env& tree_env, const Env& hole_env,
                  const Alphabet& sigma) {
    using K = trees::TreeExpr::Kind;
    switch (e->kind) {
        case K::Leaf:
            return church::encode_tree(trees::leaf(), sigma);
        case K::Var: {
            auto it = tree_env.find(e->name);
            if (it == tree_env.end()) throw InputError("compile: unbound tree variable " + e->name);
            return it->second;
        }
        case K::Node:
            return mk_apps(node_combinator(sigma, e->label),
                           {expr_term(e->e1, tree_env, hole_env, sigma),
                            expr_term(e->e2, tree_env, hole_env, sigma)});
        case K::Plug:
            return mk_app(hole_expr_term(e->h, tree_env, hole_env, sigma),
                          expr_term(e->e1, tree_env, hole_env, sigma));
    }
    throw InputError("compile: bad tree expression");
}

std::pair<Env, Env> positional_envs(const std::vector<std::string>& tree_vars,
                                    const std::vector<std::string>& hole_vars,
                                    std::vector<std::string>& binders) {
    Env tree_env, hole_env;
    for (std::size_t i = 0; i < tree_vars.size(); ++i) {
        std::string b = "v" + std::to_string(i + 1);
        tree_env[tree_vars[i]] = mk_var(b);
        binders.push_back(b);
    }
    for (std::size_t i = 0; i < hole_vars.size(); ++i) {
        std::string b = "w" + std::to_string(i + 1);
        hole_env[hole_vars[i]] = mk_var(b);
        binders.push_back(b);
    }
    return {tree_env, hole_env};
}

}  // namespace

TypePtr program_input_type(const TypedProgram& p) {
    switch (p.input.kind) {
        case CodecKind::String:
            return type_substitute(church::str_type(p.input.alphabet), p.input_subst);
        case CodecKind::Tree:
            return type_substitute(church::tree_type(p.input.alphabet), p.input_subst);
        case CodecKind::Boolean:
            return church::bool_type();
    }
    return t_base();
}

TypePtr program_output_type(const TypedProgram& p) {
    switch (p.output.kind) {
        case CodecKind::String:
            return church::str_type(p.output.alphabet);
        case CodecKind::Tree:
            return church::tree_type(p.output.alphabet);
        case CodecKind::Boolean:
            return church::bool_type();
    }
    return t_base();
}

TypedProgram compile_morphism(const trans::Morphism& phi) {
    validate_morphism(phi);
    std::vector<TermPtr> fs;
    std::vector<std::string> binders{"z"};
    for (const auto& c : phi.target.symbols()) {
        binders.push_back(letter_var(c));
        fs.push_back(mk_var(letter_var(c)));
    }
    std::vector<TermPtr> images;
    for (const auto& c : phi.source.symbols())
        images.push_back(mk_apps(church::encode_string(phi.image.at(c), phi.target), fs));
    TermPtr term = mk_abss(binders, mk_apps(mk_var("z"), images));

    TypedProgram p;
    p.term = term;
    p.input = {CodecKind::String, phi.source};
    p.output = {CodecKind::String, phi.target};
    p.input_subst = t_base();
    p.type = t_arrow(program_input_type(p), program_output_type(p));
    return p;
}

TypedProgram compile_hdt0l(const trans::HDT0LSystem& sys) {
    validate_hdt0l(sys);
    std::vector<TermPtr> us;
    for (const auto& c : sys.input.symbols()) us.push_back(compile_morphism(sys.rules.at(c)).term);
    us.push_back(church::encode_string(sys.init, sys.work));
    TermPtr final_term = compile_morphism(sys.final_rule).term;
    TermPtr term = mk_abs("z", mk_app(final_term, mk_apps(mk_var("z"), us)));

    TypedProgram p;
    p.term = term;
    p.input = {CodecKind::String, sys.input};
    p.output = {CodecKind::String, sys.output};
    p.input_subst = church::str_type(sys.work);
    p.type = t_arrow(program_input_type(p), program_output_type(p));
    return p;
}

TermPtr compile_hole_tree(const trees::HolePtr& h, const Alphabet& sigma) {
    using K = trees::OneHole::Kind;
    if (h->kind == K::Hole) return identity_term();
    // recursive body with the hole position replaced by the argument z
    std::function<TermPtr(const trees::HolePtr&)> walk = [&](const trees::HolePtr& c) -> TermPtr {
        switch (c->kind) {
            case K::Hole:
                return mk_var("z");
            case K::NodeL:
                return mk_apps(node_combinator(sigma, c->label),
                               {walk(c->sub), church::encode_tree(c->other, sigma)});
            case K::NodeR:
                return mk_apps(node_combinator(sigma, c->label),
                               {church::encode_tree(c->other, sigma), walk(c->sub)});
        }
        return mk_var("z");
    };
    return mk_abs("z", walk(h));
}

TermPtr compile_expr(const trees::ExprPtr& e, const std::vector<std::string>& tree_vars,
                     const std::vector<std::string>& hole_vars, const Alphabet& sigma) {
    std::vector<std::string> binders;
    auto [tree_env, hole_env] = positional_envs(tree_vars, hole_vars, binders);
    return mk_abss(binders, expr_term(e, tree_env, hole_env, sigma));
}

TermPtr compile_hole_expr(const trees::HExprPtr& h, const std::vector<std::string>& tree_vars,
                          const std::vector<std::string>& hole_vars, const Alphabet& sigma) {
    std::vector<std::string> binders;
    auto [tree_env, hole_env] = positional_envs(tree_vars, hole_vars, binders);
    return mk_abss(binders, hole_expr_term(h, tree_env, hole_env, sigma));
}

TypedProgram compile_rtt(const trees::Rtt& m) {
    trees::validate_rtt(m);
    const std::size_t nq = m.states.size();
    const std::size_t nr = m.tree_regs.size();
    const std::size_t nh = m.hole_regs.size();

    TypePtr bt = church::tree_type(m.output);
    TypePtr dbt = church::dtree_type(m.output);
    std::vector<TypePtr> b_args(nr, bt);
    b_args.insert(b_args.end(), nh, dbt);
    TypePtr b_ty = t_arrows(b_args, bt);
    TypePtr a_ty = t_arrows(std::vector<TypePtr>(nq, b_ty), bt);
    TypePtr in_ty = type_substitute(church::tree_type(m.input), a_ty);

    auto state_index = [&](const std::string& q) {
        for (std::size_t i = 0; i < nq; ++i)
            if (m.states[i] == q) return i;
        throw ValidityError(m.name + ": unknown state " + q);
    };

    // register binders of a configuration consumer (type B)
    auto reg_binders = [&](const std::string& prefix) {
        std::vector<std::pair<std::string, TypePtr>> bs;
        for (std::size_t j = 0; j < nr; ++j)
            bs.push_back({prefix + "t" + std::to_string(j + 1), bt});
        for (std::size_t j = 0; j < nh; ++j)
            bs.push_back({prefix + "h" + std::to_string(j + 1), dbt});
        return bs;
    };
    auto abs_all = [](const std::vector<std::pair<std::string, TypePtr>>& bs, TermPtr body) {
        for (auto it = bs.rbegin(); it != bs.rend(); ++it) body = mk_abs(it->first, it->second, body);
        return body;
    };
    auto tagged_envs = [&](const std::string& left_prefix, const std::string& right_prefix) {
        Env tree_env, hole_env;
        for (std::size_t j = 0; j < nr; ++j) {
            tree_env[trees::tag_left(m.tree_regs[j])] =
                mk_var(left_prefix + "t" + std::to_string(j + 1));
            tree_env[trees::tag_right(m.tree_regs[j])] =
                mk_var(right_prefix + "t" + std::to_string(j + 1));
        }
        for (std::size_t j = 0; j < nh; ++j) {
            hole_env[trees::tag_left(m.hole_regs[j])] =
                mk_var(left_prefix + "h" + std::to_string(j + 1));
            hole_env[trees::tag_right(m.hole_regs[j])] =
                mk_var(right_prefix + "h" + std::to_string(j + 1));
        }
        return std::make_pair(tree_env, hole_env);
    };

    std::vector<std::string> ks;
    for (std::size_t q = 0; q < nq; ++q) ks.push_back("k" + std::to_string(q + 1));

    // per-letter combinators N_i : A -> A -> A
    std::vector<TermPtr> ns;
    for (const auto& a : m.input.symbols()) {
        std::vector<TermPtr> hs;
        for (const auto& ql : m.states) {
            std::vector<TermPtr> ms;
            for (const auto& qr : m.states) {
                const trees::RttUpdate& u = m.delta.at({ql, qr, a});
                auto [tree_env, hole_env] = tagged_envs("l", "r");
                std::vector<TermPtr> args;
                for (const auto& reg : m.tree_regs)
                    args.push_back(expr_term(u.tree.at(reg), tree_env, hole_env, m.output));
                for (const auto& reg : m.hole_regs)
                    args.push_back(hole_expr_term(u.hole.at(reg), tree_env, hole_env, m.output));
                TermPtr body = mk_apps(mk_var(ks[state_index(u.next)]), args);
                ms.push_back(abs_all(reg_binders("r"), body));
            }
            hs.push_back(abs_all(reg_binders("l"), mk_apps(mk_var("cr"), ms)));
        }
        TermPtr inner = mk_apps(mk_var("cl"), hs);
        for (std::size_t q = nq; q-- > 0;) inner = mk_abs(ks[q], b_ty, inner);
        ns.push_back(mk_abs("cl", a_ty, mk_abs("cr", a_ty, inner)));
    }

    // leaf configuration: state q_I, empty registers, identity holes
    std::vector<TermPtr> leaf_args(nr, church::encode_tree(trees::leaf(), m.output));
    for (std::size_t j = 0; j < nh; ++j) leaf_args.push_back(identity_term());
    TermPtr l_body = mk_apps(mk_var(ks[state_index(m.initial)]), leaf_args);
    for (std::size_t q = nq; q-- > 0;) l_body = mk_abs(ks[q], b_ty, l_body);

    // output consumers u_q : B evaluate F(q) over plain register names
    std::vector<TermPtr> outs;
    for (const auto& q : m.states) {
        Env tree_env, hole_env;
        for (std::size_t j = 0; j < nr; ++j) tree_env[m.tree_regs[j]] = mk_var("t" + std::to_string(j + 1));
        for (std::size_t j = 0; j < nh; ++j) hole_env[m.hole_regs[j]] = mk_var("h" + std::to_string(j + 1));
        TermPtr body = expr_term(m.out.at(q), tree_env, hole_env, m.output);
        outs.push_back(abs_all(reg_binders(""), body));
    }

    std::vector<TermPtr> fold_args = ns;
    fold_args.push_back(l_body);
    TermPtr term = mk_abs("z", in_ty, mk_apps(mk_apps(mk_var("z"), fold_args), outs));

    TypedProgram p;
    p.term = term;
    p.input = {CodecKind::Tree, m.input};
    p.output = {CodecKind::Tree, m.output};
    p.input_subst = a_ty;
    p.type = t_arrow(in_ty, bt);
    return p;
}

TypedProgram compile_dfa(const trans::Dfa& d) {
    trans::validate_dfa(d);
    const std::size_t nq = d.states.size();
    TypePtr bool_ty = church::bool_type();
    TypePtr b_ty = t_arrows(std::vector<TypePtr>(nq, bool_ty), bool_ty);

    auto state_index = [&](const std::string& q) {
        for (std::size_t i = 0; i < nq; ++i)
            if (d.states[i] == q) return i;
        throw ValidityError(d.name + ": unknown state " + q);
    };

    // disjunction of already-Bool-typed terms; empty disjunction is false
    auto or_all = [&](const std::vector<TermPtr>& bs) -> TermPtr {
        if (bs.empty()) return church::encode_bool(false);
        TermPtr acc = bs.back();
        for (std::size_t i = bs.size() - 1; i-- > 0;) {
            TermPtr lhs = bs[i];
            acc = mk_abs("x", mk_abs("y", mk_app(mk_app(lhs, mk_var("x")),
                                                 mk_apps(acc, {mk_var("x"), mk_var("y")}))));
        }
        return acc;
    };

    std::vector<std::string> bs;
    for (std::size_t i = 0; i < nq; ++i) bs.push_back("b" + std::to_string(i + 1));

    // fold base: acceptance disjunction over the state vector
    std::vector<TermPtr> accepted;
    for (std::size_t i = 0; i < nq; ++i)
        if (d.accepting.count(d.states[i])) accepted.push_back(mk_var(bs[i]));
    TermPtr base = mk_abss(bs, or_all(accepted));

    // each letter reindexes the vector along its transition preimage
    std::vector<TermPtr> lifted;
    for (const auto& c : d.input.symbols()) {
        std::vector<TermPtr> comps;
        for (const auto& p : d.states) {
            std::vector<TermPtr> sources;
            for (std::size_t i = 0; i < nq; ++i)
                if (d.delta.at({d.states[i], c}) == p) sources.push_back(mk_var(bs[i]));
            comps.push_back(or_all(sources));
        }
        TermPtr body = mk_apps(mk_var("s"), comps);
        lifted.push_back(mk_abs("s", mk_abss(bs, body)));
    }

    std::vector<TermPtr> fold_args = lifted;
    fold_args.push_back(base);
    std::vector<TermPtr> onehot;
    for (std::size_t i = 0; i < nq; ++i)
        onehot.push_back(church::encode_bool(i == state_index(d.initial)));
    TermPtr term = mk_abs("z", mk_apps(mk_apps(mk_var("z"), fold_args), onehot));

    TypedProgram p;
    p.term = term;
    p.input = {CodecKind::String, d.input};
    p.output = {CodecKind::Boolean, {}};
    p.input_subst = b_ty;
    p.type = t_arrow(program_input_type(p), bool_ty);
    return p;
}

namespace {
TypedProgram compose_common(const TypedProgram& t, const TypedProgram& u,
                            const std::string& what) {
    if (t.output.kind != CodecKind::String || t.input.kind != CodecKind::String ||
        u.input.kind != CodecKind::String)
        throw TypeError(what + ": both programs must consume and produce strings");
    if (!(t.output.alphabet == u.input.alphabet))
        throw TypeError(what + ": output alphabet of the first program differs from the input alphabet of the second");
    TypedProgram p;
    p.term = mk_abs("x", mk_app(u.term, mk_app(t.term, mk_var("x"))));
    p.input = t.input;
    p.output = u.output;
    p.input_subst = type_substitute(t.input_subst, u.input_subst);
    p.type = t_arrow(program_input_type(p), program_output_type(p));
    return p;
}
}  // namespace

TypedProgram compose_preimage(const TypedProgram& t, const TypedProgram& u) {
    if (u.output.kind != CodecKind::Boolean)
        throw TypeError("compose_preimage: second program must produce a boolean");
    return compose_common(t, u, "compose_preimage");
}

TypedProgram compose_programs(const TypedProgram& t, const TypedProgram& u) {
    if (u.output.kind != CodecKind::String)
        throw TypeError("compose_programs: second program must produce a string");
    return compose_common(t, u, "compose_programs");
}

}  // namespace ltc::stlc_compile
