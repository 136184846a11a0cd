#include "ltc/gen.hpp"

#include <algorithm>

namespace ltc::gen {

std::vector<Word> enumerate_words(const Alphabet& sigma, std::size_t max_len) {
    std::vector<Word> out{{}};
    std::size_t lo = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t hi = out.size();
        for (std::size_t i = lo; i < hi; ++i)
            for (const auto& s : sigma.symbols()) {
                Word w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        lo = hi;
    }
    return out;
}

std::vector<trees::TreePtr> enumerate_trees(const Alphabet& sigma, std::size_t max_size) {
    std::vector<std::vector<trees::TreePtr>> by_size(max_size + 1);
    if (max_size >= 1) by_size[1] = {trees::leaf()};
    for (std::size_t n = 3; n <= max_size; n += 2)
        for (std::size_t i = 1; i + 2 <= n; i += 2)
            for (const auto& lab : sigma.symbols())
                for (const auto& l : by_size[i])
                    for (const auto& r : by_size[n - 1 - i])
                        by_size[n].push_back(trees::node(lab, l, r));
    std::vector<trees::TreePtr> out;
    for (const auto& bucket : by_size)
        for (const auto& t : bucket) out.push_back(t);
    return out;
}

namespace {
std::size_t pick(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}
}  // namespace

Word random_word(Rng& rng, const Alphabet& sigma, std::size_t max_len) {
    Word w;
    std::size_t len = pick(rng, max_len + 1);
    for (std::size_t i = 0; i < len; ++i) w.push_back(sigma.at(pick(rng, sigma.size())));
    return w;
}

trans::RegisterTransducer random_rt(Rng& rng, const Alphabet& input, const Alphabet& output,
                                    std::size_t n_states, std::size_t n_registers,
                                    std::size_t max_word) {
    trans::RegisterTransducer rt;
    rt.name = "random";
    rt.input = input;
    rt.output = output;
    for (std::size_t i = 0; i < n_states; ++i) rt.states.push_back("q" + std::to_string(i));
    for (std::size_t i = 0; i < n_registers; ++i) rt.registers.push_back("R" + std::to_string(i));
    rt.initial = rt.states[0];

    auto random_mixed_word = [&](std::size_t max_len) {
        Word w;
        std::size_t len = pick(rng, max_len + 1);
        for (std::size_t i = 0; i < len; ++i) {
            std::size_t k = pick(rng, output.size() + n_registers);
            w.push_back(k < output.size() ? output.at(k) : rt.registers[k - output.size()]);
        }
        return w;
    };

    for (const auto& q : rt.states)
        for (const auto& c : input.symbols()) {
            trans::RtUpdate u;
            u.next = rt.states[pick(rng, n_states)];
            for (const auto& r : rt.registers) u.update[r] = random_mixed_word(max_word);
            rt.delta[{q, c}] = std::move(u);
        }
    for (const auto& q : rt.states) rt.out[q] = random_mixed_word(max_word);
    return rt;
}

trans::RegisterTransducer random_copyless_rt(Rng& rng, const Alphabet& input,
                                             const Alphabet& output, std::size_t n_states,
                                             std::size_t n_registers, std::size_t max_letters) {
    trans::RegisterTransducer rt;
    rt.name = "random-sst";
    rt.input = input;
    rt.output = output;
    for (std::size_t i = 0; i < n_states; ++i) rt.states.push_back("q" + std::to_string(i));
    for (std::size_t i = 0; i < n_registers; ++i) rt.registers.push_back("R" + std::to_string(i));
    rt.initial = rt.states[0];

    // distributes each source register to at most one target, then pads the
    // updates with letters
    auto random_copyless_updates = [&]() {
        std::map<std::string, Word> upd;
        std::vector<std::vector<std::string>> assigned(n_registers);
        for (const auto& r : rt.registers) {
            std::size_t slot = pick(rng, n_registers + 1);  // last value drops the register
            if (slot < n_registers) assigned[slot].push_back(r);
        }
        for (std::size_t i = 0; i < n_registers; ++i) {
            std::shuffle(assigned[i].begin(), assigned[i].end(), rng);
            Word w;
            std::size_t letters = pick(rng, max_letters + 1);
            std::size_t total = assigned[i].size() + letters;
            std::size_t next_reg = 0;
            for (std::size_t k = 0; k < total; ++k) {
                bool place_reg = next_reg < assigned[i].size() &&
                                 pick(rng, total - k) < assigned[i].size() - next_reg;
                if (place_reg)
                    w.push_back(assigned[i][next_reg++]);
                else
                    w.push_back(output.at(pick(rng, output.size())));
            }
            upd[rt.registers[i]] = std::move(w);
        }
        return upd;
    };

    for (const auto& q : rt.states)
        for (const auto& c : input.symbols()) {
            trans::RtUpdate u;
            u.next = rt.states[pick(rng, n_states)];
            u.update = random_copyless_updates();
            rt.delta[{q, c}] = std::move(u);
        }
    for (const auto& q : rt.states) {
        // register-linear output word
        std::vector<std::string> regs = rt.registers;
        std::shuffle(regs.begin(), regs.end(), rng);
        regs.resize(pick(rng, n_registers + 1));
        Word w;
        for (const auto& r : regs) {
            std::size_t letters = pick(rng, max_letters + 1);
            for (std::size_t i = 0; i < letters; ++i) w.push_back(output.at(pick(rng, output.size())));
            w.push_back(r);
        }
        rt.out[q] = std::move(w);
    }
    return rt;
}

trans::HDT0LSystem random_hdt0l(Rng& rng, const Alphabet& input, const Alphabet& work,
                                const Alphabet& output, std::size_t max_image) {
    trans::HDT0LSystem sys;
    sys.name = "random-hdt0l";
    sys.input = input;
    sys.work = work;
    sys.output = output;
    sys.init = random_word(rng, work, max_image);
    for (const auto& c : input.symbols()) {
        trans::Morphism h{work, work, {}};
        for (const auto& d : work.symbols()) h.image[d] = random_word(rng, work, max_image);
        sys.rules[c] = std::move(h);
    }
    sys.final_rule = trans::Morphism{work, output, {}};
    for (const auto& d : work.symbols()) sys.final_rule.image[d] = random_word(rng, output, max_image);
    return sys;
}

trans::Dfa random_dfa(Rng& rng, const Alphabet& input, std::size_t n_states) {
    trans::Dfa d;
    d.name = "random-dfa";
    d.input = input;
    for (std::size_t i = 0; i < n_states; ++i) d.states.push_back("q" + std::to_string(i));
    d.initial = d.states[0];
    for (const auto& q : d.states) {
        if (rng() % 2) d.accepting.insert(q);
        for (const auto& c : input.symbols()) d.delta[{q, c}] = d.states[pick(rng, n_states)];
    }
    return d;
}

stlc::TypePtr random_simple_type(Rng& rng, int depth) {
    using namespace stlc;
    if (depth <= 0 || rng() % 2 == 0) return t_base();
    return t_arrow(random_simple_type(rng, depth - 1), random_simple_type(rng, depth - 1));
}

namespace {
using namespace stlc;

struct Binding {
    std::string name;
    TypePtr type;
};

// goal-directed term search; nullptr on failure
TermPtr gen_term(Rng& rng, std::vector<Binding>& env, const TypePtr& goal, int depth,
                 int& budget) {
    if (budget-- <= 0) return nullptr;

    // candidate heads: variables whose type ends in goal after k arguments
    struct Head {
        std::size_t index;
        std::vector<TypePtr> args;
    };
    std::vector<Head> heads;
    for (std::size_t i = 0; i < env.size(); ++i) {
        TypePtr t = env[i].type;
        std::vector<TypePtr> args;
        for (;;) {
            if (type_equal(t, goal)) {
                heads.push_back({i, args});
                break;
            }
            if (t->kind != TypeKind::Arrow) break;
            args.push_back(t->lhs);
            t = t->rhs;
        }
    }

    bool can_abs = goal->kind == TypeKind::Arrow;
    // with a live budget, sometimes wrap the goal in a deliberate redex
    if (depth > 0 && rng() % 4 == 0) {
        TypePtr arg_ty = random_simple_type(rng, 1);
        TermPtr arg = gen_term(rng, env, arg_ty, depth - 1, budget);
        if (arg) {
            std::string x = "g" + std::to_string(env.size());
            env.push_back({x, arg_ty});
            TermPtr body = gen_term(rng, env, goal, depth - 1, budget);
            env.pop_back();
            if (body) return mk_app(mk_abs(x, arg_ty, body), arg);
        }
    }
    if (can_abs && (heads.empty() || depth <= 0 || rng() % 2 == 0)) {
        std::string x = "x" + std::to_string(env.size());
        env.push_back({x, goal->lhs});
        TermPtr body = gen_term(rng, env, goal->rhs, depth - 1, budget);
        env.pop_back();
        if (body) return mk_abs(x, goal->lhs, body);
    }
    if (heads.empty()) return nullptr;
    for (int attempt = 0; attempt < 3; ++attempt) {
        const Head& h = heads[rng() % heads.size()];
        if (!h.args.empty() && depth <= 0) continue;
        TermPtr t = mk_var(env[h.index].name);
        bool ok = true;
        for (const auto& a : h.args) {
            TermPtr arg = gen_term(rng, env, a, depth - 1, budget);
            if (!arg) {
                ok = false;
                break;
            }
            t = mk_app(t, arg);
        }
        if (ok) return t;
    }
    return nullptr;
}
}  // namespace

stlc::TermPtr random_typed_term(Rng& rng, const stlc::TypePtr& goal, int depth) {
    std::vector<Binding> env;
    for (int attempt = 0; attempt < 20; ++attempt) {
        int budget = 200;
        if (TermPtr t = gen_term(rng, env, goal, depth, budget)) return t;
    }
    return nullptr;
}

std::vector<stlc::TermPtr> random_term_corpus(Rng& rng, std::size_t count) {
    using namespace stlc;
    std::vector<TermPtr> out;
    while (out.size() < count) {
        TypePtr goal = t_arrow(random_simple_type(rng, 2), random_simple_type(rng, 2));
        if (TermPtr t = random_typed_term(rng, goal, 5)) out.push_back(t);
    }
    return out;
}

}  // namespace ltc::gen
