#include "ltc/eal_compile.hpp"

#include <algorithm>
#include <functional>

#include "ltc/stlc.hpp"

namespace ltc::eal_compile {

using namespace ltc::eal;

namespace {
std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += "; ";
        out += p;
    }
    return out;
}

DerivPtr d_apps(DerivPtr fn, const std::vector<DerivPtr>& args) {
    for (const DerivPtr& a : args) fn = d_app(std::move(fn), a);
    return fn;
}

// names a fresh binder must dodge: everything the derivation mentions at its
// root (deeper binders are out of scope for the combinators)
std::set<std::string> avoid_of(const DerivPtr& d) {
    std::set<std::string> s = free_vars(d->subject);
    for (const Ctx* c : {&d->ctx.gamma, &d->ctx.delta, &d->ctx.theta})
        for (const auto& [k, v] : *c) s.insert(k);
    return s;
}

std::string pick(const std::string& base, const std::set<std::string>& avoid) {
    if (!avoid.count(base)) return base;
    return stlc::fresh_name(base, avoid);
}

// \k. k t1 ... tm : forall b. (s1 -o ... -o sm -o b) -o b
DerivPtr d_tensor_intro(const std::vector<DerivPtr>& comps) {
    std::vector<TypePtr> tys;
    std::set<std::string> avoid;
    for (const DerivPtr& c : comps) {
        tys.push_back(c->type);
        auto a = avoid_of(c);
        avoid.insert(a.begin(), a.end());
    }
    TypePtr ty = tensor_type(tys);           // forall b. consumer -o b
    TypePtr consumer_ty = ty->t1->t1;        // s1 -o ... -o sm -o b
    std::string k = pick("k", avoid);
    DerivPtr body = d_apps(d_var(k, consumer_ty), comps);
    return d_forall_intro(ty->name, d_abs(k, consumer_ty, body));
}

// pair : forall b. (s⃗ -o b) -o b applied to an m-ary consumer
DerivPtr d_tensor_elim(const DerivPtr& pair, const DerivPtr& consumer, std::size_t arity) {
    TypePtr res = consumer->type;
    for (std::size_t i = 0; i < arity; ++i) res = res->t2;
    return d_app(d_forall_elim(pair, res), consumer);
}

// \k. k shared s1 ... sm with s_i : B -o A_i
DerivPtr d_with_intro(const DerivPtr& shared, const std::vector<DerivPtr>& selectors) {
    TypePtr B = shared->type;
    std::vector<TypePtr> comps;
    std::set<std::string> avoid = avoid_of(shared);
    for (const DerivPtr& s : selectors) {
        if (s->type->kind != TypeKind::Lollipop || !type_alpha_equal(s->type->t1, B))
            throw TypeError("with: selector does not consume the shared resource");
        comps.push_back(s->type->t2);
        auto a = avoid_of(s);
        avoid.insert(a.begin(), a.end());
    }
    TypePtr ty = with_type(comps);     // forall g. chooser -o g
    TypePtr chooser = ty->t1->t1;      // forall b. b -o (b -o A1) -o ... -o g
    std::string k = pick("k", avoid);
    std::vector<DerivPtr> args{shared};
    args.insert(args.end(), selectors.begin(), selectors.end());
    DerivPtr body = d_apps(d_forall_elim(d_var(k, chooser), B), args);
    return d_forall_intro(ty->name, d_abs(k, chooser, body));
}

// w (\b. \s1...\sm. s_i b) : A_i, 1-based
DerivPtr d_with_project(const DerivPtr& w, std::size_t i) {
    TypePtr ty = w->type;  // forall g. (forall b. b -o (b -o A1) -o ... -o g) -o g
    if (ty->kind != TypeKind::Forall || ty->t1->kind != TypeKind::Lollipop)
        throw TypeError("with projection from a non-menu type " + show_type(ty));
    TypePtr chooser = ty->t1->t1;
    TypePtr bv = y_var(chooser->name);
    std::vector<TypePtr> comps;
    TypePtr cur = chooser->t1->t2;  // past the leading b
    while (cur->kind == TypeKind::Lollipop) {
        comps.push_back(cur->t1->t2);  // strip the (b -o _) wrapper
        cur = cur->t2;
    }
    if (i < 1 || i > comps.size()) throw TypeError("with projection index out of range");
    TypePtr ai = comps[i - 1];
    DerivPtr body = d_app(d_var("s" + std::to_string(i), y_lolli(bv, ai)), d_var("b", bv));
    for (std::size_t j = comps.size(); j >= 1; --j)
        body = d_abs("s" + std::to_string(j), y_lolli(bv, comps[j - 1]), body);
    DerivPtr cons = d_forall_intro(chooser->name, d_abs("b", bv, body));
    return d_app(d_forall_elim(w, ai), cons);
}

// \x1...\xn. x_i : Fin(n); the quantifier dodges 'a so the projection can sit
// next to temporaries typed over 'a
DerivPtr d_fin(std::size_t i, std::size_t n) {
    TypePtr av = y_var("i");
    DerivPtr body = d_var("x" + std::to_string(i), av);
    for (std::size_t k = n; k >= 1; --k) body = d_abs("x" + std::to_string(k), av, body);
    return d_forall_intro("i", body);
}
}  // namespace

// -------- streaming string transducers --------

EalProgram compile_sst(const trans::RegisterTransducer& m, bool drop_single_state_dispatch) {
    trans::validate_rt(m);
    auto copyless = trans::check_copyless(m);
    if (!copyless.ok)
        throw ValidityError("compile_sst: " + m.name + " is not copyless: " +
                            join(copyless.violations));
    const Alphabet& gam = m.input;
    const Alphabet& sig = m.output;
    const std::size_t nq = m.states.size();
    const std::size_t nr = m.registers.size();
    const bool dispatch = !(drop_single_state_dispatch && nq == 1);

    TypePtr al = y_var("a");
    TypePtr step = y_lolli(al, al);
    TypePtr a0 = y_lollis(std::vector<TypePtr>(nr, step), step);
    TypePtr finq = fin_type(nq);
    TypePtr a = dispatch ? y_lolli(finq, a0) : a0;

    std::map<std::string, std::size_t> state_index;  // 1-based
    for (std::size_t i = 0; i < nq; ++i) state_index[m.states[i]] = i + 1;
    std::set<std::string> is_reg(m.registers.begin(), m.registers.end());
    std::map<std::string, std::string> reg_binder;
    for (std::size_t j = 0; j < nr; ++j)
        reg_binder[m.registers[j]] = "p" + std::to_string(j + 1);

    // word over output letters and registers, as a function a -o a; letters
    // come from the temporary zone, register values from the p binders
    auto word_fn = [&](const Word& u) -> DerivPtr {
        if (u.size() == 1 && is_reg.count(u[0])) return d_var(reg_binder.at(u[0]), step);
        DerivPtr acc = d_var("x", al);
        for (auto it = u.rbegin(); it != u.rend(); ++it) {
            DerivPtr head = is_reg.count(*it) ? d_var(reg_binder.at(*it), step)
                                              : d_var_temp("f_" + *it, step);
            acc = d_app(head, acc);
        }
        return d_abs("x", al, acc);
    };

    // final output per state, abstracted over the register contents
    auto omega = [&](const std::string& q) {
        DerivPtr body = word_fn(m.out.at(q));
        for (std::size_t j = nr; j >= 1; --j) body = d_abs("p" + std::to_string(j), step, body);
        return body;  // : a0
    };

    DerivPtr fhat;
    if (dispatch) {
        std::vector<DerivPtr> oms;
        for (const auto& q : m.states) oms.push_back(omega(q));
        fhat = d_abs("y", finq, d_apps(d_forall_elim(d_var("y", finq), a0), oms));
    } else {
        fhat = omega(m.states[0]);
    }

    // one transition: pick the successor continuation and feed it the
    // updated register values
    auto trans_fn = [&](const std::string& q, const std::string& letter) {
        const trans::RtUpdate& up = m.delta.at({q, letter});
        DerivPtr head = d_var("g2", a);
        if (dispatch) head = d_app(head, d_fin(state_index.at(up.next), nq));
        std::vector<DerivPtr> regs;
        for (const auto& r : m.registers) regs.push_back(word_fn(up.update.at(r)));
        DerivPtr core = d_apps(head, regs);  // : step
        for (std::size_t j = nr; j >= 1; --j) core = d_abs("p" + std::to_string(j), step, core);
        return d_abs("g2", a, core);  // : a -o a0
    };

    auto algebra = [&](const std::string& letter) -> DerivPtr {
        if (!dispatch) return trans_fn(m.states[0], letter);
        TypePtr t1 = y_lolli(a, a0);
        std::vector<DerivPtr> us;
        for (const auto& q : m.states) us.push_back(trans_fn(q, letter));
        DerivPtr sel = d_apps(d_forall_elim(d_var("y", finq), t1), us);  // : a -o a0
        return d_abs("g", a, d_abs("y", finq, d_app(sel, d_var("g", a))));
    };

    DerivPtr fold = d_forall_elim(d_var("z", str_type(gam)), a);
    for (const auto& c : gam.symbols()) fold = d_app(fold, d_promote(algebra(c)));

    DerivPtr run = d_app(d_var_temp("h", y_lolli(a, a)), fhat);
    if (dispatch) run = d_app(run, d_fin(state_index.at(m.initial), nq));
    for (std::size_t j = 0; j < nr; ++j) run = d_app(run, word_fn(Word{}));
    DerivPtr wrap = d_abs_bang("h", y_bang(y_lolli(a, a)), d_promote(run));

    DerivPtr body = d_app(wrap, fold);  // : !(a -o a)
    for (auto it = sig.symbols().rbegin(); it != sig.symbols().rend(); ++it)
        body = d_abs_bang("f_" + *it, y_bang(step), body);
    DerivPtr top = d_abs("z", str_type(gam), d_forall_intro("a", body));

    return {top->subject, top->type, top,
            Codec{CodecKind::String, gam}, Codec{CodecKind::String, sig},
            false, false};
}

// -------- promotion --------

EalProgram promote_program(const EalProgram& p) {
    if (p.banged_input || p.banged_output)
        throw TypeError("promote_program: the program is already promoted");
    if (p.type->kind != TypeKind::Lollipop)
        throw TypeError("promote_program: not a function program");
    std::string x = pick("x", all_vars(p.term));
    DerivPtr body = d_promote(d_app(p.derivation, d_var_temp(x, p.type->t1)));
    DerivPtr top = d_abs_bang(x, y_bang(p.type->t1), body);
    return {top->subject, top->type, top, p.input, p.output, true, true};
}

// -------- composition by substitution --------

EalProgram compile_cbs(const EalProgram& f, const std::vector<EalProgram>& gs) {
    if (gs.empty()) throw InputError("compile_cbs: no substitution programs");
    auto banged_string = [](const EalProgram& p) {
        return p.banged_input && p.banged_output && p.input.kind == CodecKind::String &&
               p.output.kind == CodecKind::String;
    };
    if (!banged_string(f)) throw TypeError("compile_cbs: index program must be !Str -o !Str");
    const Alphabet& idx = f.output.alphabet;
    const Alphabet& gam = f.input.alphabet;
    const Alphabet& sig = gs[0].output.alphabet;
    if (gs.size() != idx.size())
        throw TypeError("compile_cbs: need one substitution program per index letter");
    for (const EalProgram& g : gs) {
        if (!banged_string(g)) throw TypeError("compile_cbs: substitutions must be !Str -o !Str");
        if (!(g.input.alphabet == gam))
            throw TypeError("compile_cbs: substitutions must read the same source alphabet");
        if (!(g.output.alphabet == sig))
            throw TypeError("compile_cbs: substitutions must share an output alphabet");
    }

    TypePtr str_g = str_type(gam), str_i = str_type(idx), str_s = str_type(sig);
    TypePtr al = y_var("a");
    TypePtr step = y_lolli(al, al);

    // binders dodge every name of the embedded programs: weakening the shared
    // input through them must not collide
    std::set<std::string> avoid = all_vars(f.term);
    for (const EalProgram& g : gs) {
        auto av = all_vars(g.term);
        avoid.insert(av.begin(), av.end());
    }
    for (const auto& c : sig.symbols()) avoid.insert("f_" + c);
    std::string sv = pick("s", avoid);
    avoid.insert(sv);
    std::string xv = pick("x", avoid);
    avoid.insert(xv);
    std::vector<std::string> yv;
    for (std::size_t i = 1; i <= gs.size(); ++i) {
        yv.push_back(pick("y" + std::to_string(i), avoid));
        avoid.insert(yv.back());
    }

    // s' : Str_S replays the index string, substituting each index letter's
    // replacement string
    std::vector<DerivPtr> reps;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        std::vector<DerivPtr> ctors;
        for (const auto& c : sig.symbols()) ctors.push_back(d_promote(d_var_temp("f_" + c, step)));
        reps.push_back(d_apps(d_forall_elim(d_var_temp(yv[i], str_s), al), ctors));
    }
    DerivPtr core = d_apps(d_forall_elim(d_var_temp(xv, str_i), al), reps);
    for (auto it = sig.symbols().rbegin(); it != sig.symbols().rend(); ++it)
        core = d_abs_bang("f_" + *it, y_bang(step), core);
    DerivPtr sprime = d_promote(d_forall_intro("a", core));  // !s'

    DerivPtr inner = sprime;
    for (std::size_t i = gs.size(); i >= 1; --i)
        inner = d_abs_bang(yv[i - 1], y_bang(str_s), inner);
    inner = d_abs_bang(xv, y_bang(str_i), inner);

    auto bang_s = [&] { return d_promote(d_var_temp(sv, str_g)); };
    DerivPtr applied = d_app(inner, d_app(f.derivation, bang_s()));
    for (const EalProgram& g : gs) applied = d_app(applied, d_app(g.derivation, bang_s()));
    DerivPtr top = d_abs_bang(sv, y_bang(str_g), applied);

    return {top->subject, top->type, top,
            Codec{CodecKind::String, gam}, Codec{CodecKind::String, sig},
            true, true};
}

// -------- bottom-up tree transducers --------

EalProgram compile_brtt(const trees::Brtt& m) {
    trees::validate_rtt(m.rtt);
    auto rep = trees::check_brtt(m);
    if (!rep.ok)
        throw ValidityError("compile_brtt: " + m.rtt.name + ": " + join(rep.violations));
    const auto& rt = m.rtt;
    if (rt.tree_regs.size() + rt.hole_regs.size() > 8)
        throw ValidityError("compile_brtt: " + rt.name + ": more than 8 registers");

    const Alphabet& in = rt.input;
    const Alphabet& out = rt.output;
    const std::size_t nq = rt.states.size();

    TypePtr al = y_var("a");
    TypePtr step = y_lolli(al, al);
    TypePtr node_ty = y_lollis({al, al}, al);
    TypePtr finq = fin_type(nq);

    std::map<std::string, std::size_t> state_index;
    for (std::size_t i = 0; i < nq; ++i) state_index[rt.states[i]] = i + 1;
    std::set<std::string> tree_set(rt.tree_regs.begin(), rt.tree_regs.end());

    // register subsets in canonical order; a menu entry per subset
    auto subsets = trees::nonconflicting_subsets(m.conflict);
    std::map<std::set<std::string>, std::size_t> subset_index;  // 1-based
    for (std::size_t i = 0; i < subsets.size(); ++i)
        subset_index[{subsets[i].begin(), subsets[i].end()}] = i + 1;

    // components of an entry: tree registers first (declaration order), then
    // hole registers
    auto ordered = [&](const std::set<std::string>& p) {
        std::pair<std::vector<std::string>, std::vector<std::string>> r;
        for (const auto& x : rt.tree_regs)
            if (p.count(x)) r.first.push_back(x);
        for (const auto& x : rt.hole_regs)
            if (p.count(x)) r.second.push_back(x);
        return r;
    };
    auto comp_types = [&](const std::set<std::string>& p) {
        auto [ts, hs] = ordered(p);
        std::vector<TypePtr> tys(ts.size(), al);
        tys.insert(tys.end(), hs.size(), step);
        return tys;
    };
    std::vector<TypePtr> entry_tys;
    for (const auto& p : subsets) entry_tys.push_back(tensor_type(comp_types({p.begin(), p.end()})));
    TypePtr w_ty = with_type(entry_tys);
    TypePtr a_ty = tensor_type({finq, w_ty});

    // expression compiler; register occurrences resolve through the binding
    // maps, output labels and the leaf come from the temporary zone
    struct Binds {
        std::map<std::string, std::string> tree, hole;
        int counter = 0;
    };
    std::function<DerivPtr(const trees::ExprPtr&, Binds&)> ce;
    std::function<DerivPtr(const trees::HExprPtr&, Binds&)> ch;
    ce = [&](const trees::ExprPtr& e, Binds& b) -> DerivPtr {
        using K = trees::TreeExpr::Kind;
        switch (e->kind) {
            case K::Leaf:
                return d_var_temp("x", al);
            case K::Var:
                return d_var(b.tree.at(e->name), al);
            case K::Node:
                return d_apps(d_var_temp("n_" + e->label, node_ty), {ce(e->e1, b), ce(e->e2, b)});
            case K::Plug:
                return d_app(ch(e->h, b), ce(e->e1, b));
        }
        throw InputError("compile_brtt: bad expression");
    };
    ch = [&](const trees::HExprPtr& h, Binds& b) -> DerivPtr {
        using K = trees::HoleExpr::Kind;
        if (h->kind == K::Var) return d_var(b.hole.at(h->name), step);
        std::string en = "e" + std::to_string(++b.counter);
        DerivPtr arm = d_var(en, al);
        DerivPtr body;
        switch (h->kind) {
            case K::Hole:
                body = arm;
                break;
            case K::NodeL:
                body = d_apps(d_var_temp("n_" + h->label, node_ty), {d_app(ch(h->h1, b), arm),
                                                                     ce(h->e, b)});
                break;
            case K::NodeR:
                body = d_apps(d_var_temp("n_" + h->label, node_ty), {ce(h->e, b),
                                                                     d_app(ch(h->h1, b), arm)});
                break;
            case K::Compose:
                body = d_app(ch(h->h1, b), d_app(ch(h->h2, b), arm));
                break;
            default:
                throw InputError("compile_brtt: bad hole expression");
        }
        return d_abs(en, al, body);
    };

    // variable sets of an update batch, split into child sides
    auto side_sets = [&](const trees::RttUpdate& up, const std::set<std::string>& p) {
        std::set<std::string> left, right;
        std::vector<std::string> occ;
        for (const auto& r : rt.tree_regs)
            if (p.count(r)) trees::expr_var_occurrences(up.tree.at(r), occ);
        for (const auto& r : rt.hole_regs)
            if (p.count(r)) trees::hexpr_var_occurrences(up.hole.at(r), occ);
        for (const auto& v : occ) {
            auto [reg, side] = trees::split_tag(v);
            (side == '<' ? left : right).insert(reg);
        }
        return std::make_pair(left, right);
    };

    // K : W -o W -o A for a fixed (left state, right state, letter)
    auto transition = [&](const std::string& ql, const std::string& qr, const std::string& c) {
        const trees::RttUpdate& up = rt.delta.at({ql, qr, c});
        std::vector<DerivPtr> sels;
        TypePtr pair_ty = tensor_type({w_ty, w_ty});
        for (const auto& pv : subsets) {
            std::set<std::string> p(pv.begin(), pv.end());
            auto [sl, sr] = side_sets(up, p);
            std::size_t il = subset_index.at(sl), ir = subset_index.at(sr);

            Binds b;
            auto [lts, lhs] = ordered(sl);
            std::vector<std::string> lnames;
            for (std::size_t i = 0; i < lts.size() + lhs.size(); ++i)
                lnames.push_back("l" + std::to_string(i + 1));
            for (std::size_t i = 0; i < lts.size(); ++i)
                b.tree[trees::tag_left(lts[i])] = lnames[i];
            for (std::size_t i = 0; i < lhs.size(); ++i)
                b.hole[trees::tag_left(lhs[i])] = lnames[lts.size() + i];
            auto [rts_, rhs] = ordered(sr);
            std::vector<std::string> rnames;
            for (std::size_t i = 0; i < rts_.size() + rhs.size(); ++i)
                rnames.push_back("r" + std::to_string(i + 1));
            for (std::size_t i = 0; i < rts_.size(); ++i)
                b.tree[trees::tag_right(rts_[i])] = rnames[i];
            for (std::size_t i = 0; i < rhs.size(); ++i)
                b.hole[trees::tag_right(rhs[i])] = rnames[rts_.size() + i];

            std::vector<DerivPtr> updated;
            for (const auto& r : rt.tree_regs)
                if (p.count(r)) updated.push_back(ce(up.tree.at(r), b));
            for (const auto& r : rt.hole_regs)
                if (p.count(r)) updated.push_back(ch(up.hole.at(r), b));
            DerivPtr entry = d_tensor_intro(updated);

            std::vector<TypePtr> rtys = comp_types(sr);
            for (std::size_t i = rnames.size(); i >= 1; --i)
                entry = d_abs(rnames[i - 1], rtys[i - 1], entry);
            entry = d_tensor_elim(d_with_project(d_var("v2", w_ty), ir), entry, rnames.size());
            std::vector<TypePtr> ltys = comp_types(sl);
            for (std::size_t i = lnames.size(); i >= 1; --i)
                entry = d_abs(lnames[i - 1], ltys[i - 1], entry);
            entry = d_tensor_elim(d_with_project(d_var("u2", w_ty), il), entry, lnames.size());

            DerivPtr consumer = d_abs("u2", w_ty, d_abs("v2", w_ty, entry));
            sels.push_back(d_abs("b", pair_ty, d_tensor_elim(d_var("b", pair_ty), consumer, 2)));
        }
        DerivPtr shared = d_tensor_intro({d_var("u", w_ty), d_var("v", w_ty)});
        DerivPtr menu = d_with_intro(shared, sels);
        DerivPtr packed = d_tensor_intro({d_fin(state_index.at(up.next), nq), menu});
        return d_abs("u", w_ty, d_abs("v", w_ty, packed));  // : W -o W -o A
    };

    // node algebra: unpack both child configurations, dispatch on both states
    auto node_fn = [&](const std::string& c) {
        TypePtr t2 = y_lollis({w_ty, w_ty}, a_ty);
        TypePtr t1 = y_lollis({finq, w_ty, w_ty}, a_ty);
        std::vector<DerivPtr> hs;
        for (const auto& ql : rt.states) {
            std::vector<DerivPtr> ks;
            for (const auto& qr : rt.states) ks.push_back(transition(ql, qr, c));
            DerivPtr kd = d_apps(d_apps(d_forall_elim(d_var("qd", finq), t2), ks),
                                 {d_var("wl", w_ty), d_var("wr", w_ty)});
            hs.push_back(d_abs("qd", finq, d_abs("wl", w_ty, d_abs("wr", w_ty, kd))));
        }
        DerivPtr disp = d_apps(d_apps(d_forall_elim(d_var("q1", finq), t1), hs),
                               {d_var("q2", finq), d_var("w1", w_ty), d_var("w2", w_ty)});
        DerivPtr cons2 = d_abs("q2", finq, d_abs("w2", w_ty, disp));
        DerivPtr cr_app = d_app(d_forall_elim(d_var("cr", a_ty), a_ty), cons2);
        DerivPtr cons1 = d_abs("q1", finq, d_abs("w1", w_ty, cr_app));
        DerivPtr cl_app = d_app(d_forall_elim(d_var("cl", a_ty), a_ty), cons1);
        return d_abs("cl", a_ty, d_abs("cr", a_ty, cl_app));  // : A -o A -o A
    };

    // leaf configuration: initial state, leaves and identity holes; the menu
    // shares a dummy identity that every selector drops
    auto leaf_fn = [&] {
        std::vector<DerivPtr> sels;
        for (const auto& pv : subsets) {
            std::set<std::string> p(pv.begin(), pv.end());
            auto [ts, hs] = ordered(p);
            Binds b;
            std::vector<DerivPtr> comps;
            for (std::size_t i = 0; i < ts.size(); ++i) comps.push_back(d_var_temp("x", al));
            for (std::size_t i = 0; i < hs.size(); ++i) comps.push_back(ch(trees::hx_hole(), b));
            sels.push_back(d_abs("y", step, d_tensor_intro(comps)));
        }
        DerivPtr dummy = d_abs("y0", al, d_var("y0", al));
        return d_tensor_intro({d_fin(state_index.at(rt.initial), nq), d_with_intro(dummy, sels)});
    };

    // output: dispatch on the final state, project the entry holding exactly
    // the output expression's registers
    auto out_fn = [&](const std::string& q) {
        const trees::ExprPtr& f = rt.out.at(q);
        std::vector<std::string> occ;
        trees::expr_var_occurrences(f, occ);
        std::set<std::string> p(occ.begin(), occ.end());
        auto [ts, hs] = ordered(p);
        Binds b;
        std::vector<std::string> names;
        std::size_t i = 0;
        for (const auto& r : ts) {
            names.push_back("l" + std::to_string(++i));
            b.tree[r] = names.back();
        }
        for (const auto& r : hs) {
            names.push_back("l" + std::to_string(++i));
            b.hole[r] = names.back();
        }
        DerivPtr body = ce(f, b);
        std::vector<TypePtr> tys = comp_types(p);
        for (std::size_t j = names.size(); j >= 1; --j) body = d_abs(names[j - 1], tys[j - 1], body);
        body = d_tensor_elim(d_with_project(d_var("w3", w_ty), subset_index.at(p)), body,
                             names.size());
        return d_abs("w3", w_ty, body);  // : W -o a
    };

    TypePtr t3 = y_lolli(w_ty, al);
    std::vector<DerivPtr> os;
    for (const auto& q : rt.states) os.push_back(out_fn(q));
    DerivPtr odisp = d_app(d_apps(d_forall_elim(d_var("q", finq), t3), os), d_var("w", w_ty));
    DerivPtr ocons = d_abs("q", finq, d_abs("w", w_ty, odisp));
    DerivPtr out_cc = d_app(d_forall_elim(d_var_temp("cc", a_ty), al), ocons);
    DerivPtr wrap = d_abs_bang("cc", y_bang(a_ty), d_promote(out_cc));

    DerivPtr fold = d_forall_elim(d_var("z", tree_type(in)), a_ty);
    for (const auto& c : in.symbols()) fold = d_app(fold, d_promote(node_fn(c)));
    fold = d_app(fold, d_promote(leaf_fn()));

    DerivPtr body = d_app(wrap, fold);  // : !a
    body = d_abs_bang("x", y_bang(al), body);
    for (auto it = out.symbols().rbegin(); it != out.symbols().rend(); ++it)
        body = d_abs_bang("n_" + *it, y_bang(node_ty), body);
    DerivPtr top = d_abs("z", tree_type(in), d_forall_intro("a", body));

    return {top->subject, top->type, top,
            Codec{CodecKind::Tree, in}, Codec{CodecKind::Tree, out},
            false, false};
}

}  // namespace ltc::eal_compile
