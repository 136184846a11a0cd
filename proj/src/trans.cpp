#include "ltc/trans.hpp"

#include <algorithm>

namespace ltc::trans {

// -------- morphisms --------

void validate_morphism(const Morphism& phi) {
    for (const auto& c : phi.source.symbols()) {
        auto it = phi.image.find(c);
        if (it == phi.image.end()) throw ValidityError("morphism: no image for letter " + c);
        require_word_in(it->second, phi.target, "morphism image of " + c);
    }
}

Word apply_morphism(const Morphism& phi, const Word& w) {
    Word out;
    for (const auto& c : w) {
        auto it = phi.image.find(c);
        if (it == phi.image.end()) throw InputError("morphism: letter '" + c + "' has no image");
        out.insert(out.end(), it->second.begin(), it->second.end());
    }
    return out;
}

Morphism identity_morphism(const Alphabet& sigma) {
    Morphism phi{sigma, sigma, {}};
    for (const auto& c : sigma.symbols()) phi.image[c] = {c};
    return phi;
}

// -------- register transducers --------

namespace {
bool is_register(const RegisterTransducer& rt, const std::string& s) {
    return std::find(rt.registers.begin(), rt.registers.end(), s) != rt.registers.end();
}

void check_update_word(const RegisterTransducer& rt, const Word& w, const std::string& where) {
    for (const auto& s : w)
        if (!rt.output.contains(s) && !is_register(rt, s))
            throw ValidityError(where + ": symbol '" + s + "' is neither an output letter nor a register");
}
}  // namespace

void validate_rt(const RegisterTransducer& rt) {
    if (rt.states.empty()) throw ValidityError(rt.name + ": no states");
    if (std::find(rt.states.begin(), rt.states.end(), rt.initial) == rt.states.end())
        throw ValidityError(rt.name + ": initial state not declared");
    {
        std::set<std::string> regs(rt.registers.begin(), rt.registers.end());
        if (regs.size() != rt.registers.size())
            throw ValidityError(rt.name + ": duplicate register");
        for (const auto& r : rt.registers)
            if (rt.input.contains(r) || rt.output.contains(r))
                throw ValidityError(rt.name + ": register '" + r + "' collides with an alphabet symbol");
    }
    for (const auto& q : rt.states) {
        for (const auto& c : rt.input.symbols()) {
            auto it = rt.delta.find({q, c});
            if (it == rt.delta.end())
                throw ValidityError(rt.name + ": delta not total at (" + q + "," + c + ")");
            const RtUpdate& u = it->second;
            std::string where = rt.name + ": delta(" + q + "," + c + ")";
            if (std::find(rt.states.begin(), rt.states.end(), u.next) == rt.states.end())
                throw ValidityError(where + ": unknown target state " + u.next);
            for (const auto& r : rt.registers) {
                auto w = u.update.find(r);
                if (w == u.update.end()) throw ValidityError(where + ": no update for register " + r);
                check_update_word(rt, w->second, where);
            }
        }
        auto it = rt.out.find(q);
        if (it == rt.out.end()) throw ValidityError(rt.name + ": no output word for state " + q);
        check_update_word(rt, it->second, rt.name + ": out " + q);
    }
}

RtConfig initial_config(const RegisterTransducer& rt) {
    RtConfig c;
    c.state = rt.initial;
    for (const auto& r : rt.registers) c.store[r] = {};
    return c;
}

namespace {
// substitutes register contents into a word over output+registers
Word store_apply(const RegisterTransducer& rt, const std::map<std::string, Word>& store,
                 const Word& w) {
    Word out;
    for (const auto& s : w) {
        auto it = store.find(s);
        if (it != store.end())
            out.insert(out.end(), it->second.begin(), it->second.end());
        else if (rt.output.contains(s))
            out.push_back(s);
        else
            throw InputError(rt.name + ": symbol '" + s + "' in update is neither register nor output letter");
    }
    return out;
}
}  // namespace

RtConfig rt_step(const RegisterTransducer& rt, const RtConfig& c, const std::string& letter) {
    auto it = rt.delta.find({c.state, letter});
    if (it == rt.delta.end())
        throw InputError(rt.name + ": delta undefined at (" + c.state + "," + letter + ")");
    const RtUpdate& u = it->second;
    RtConfig next;
    next.state = u.next;
    for (const auto& r : rt.registers) next.store[r] = store_apply(rt, c.store, u.update.at(r));
    return next;
}

Word run_register_transducer(const RegisterTransducer& rt, const Word& w) {
    require_word_in(w, rt.input, rt.name);
    RtConfig c = initial_config(rt);
    for (const auto& letter : w) c = rt_step(rt, c, letter);
    return store_apply(rt, c.store, rt.out.at(c.state));
}

CopylessReport check_copyless(const RegisterTransducer& rt) {
    CopylessReport rep;
    auto scan = [&](const std::vector<Word>& words, const std::string& where) {
        std::map<std::string, int> uses;
        for (const auto& w : words)
            for (const auto& s : w)
                if (is_register(rt, s)) ++uses[s];
        for (const auto& [r, n] : uses)
            if (n > 1) {
                rep.ok = false;
                rep.violations.push_back(where + ": register " + r + " used " + std::to_string(n) +
                                         " times");
            }
    };
    for (const auto& [key, u] : rt.delta) {
        std::vector<Word> words;
        for (const auto& r : rt.registers) words.push_back(u.update.at(r));
        scan(words, rt.name + ": delta(" + key.first + "," + key.second + ")");
    }
    for (const auto& [q, w] : rt.out) scan({w}, rt.name + ": out " + q);
    return rep;
}

// -------- HDT0L systems --------

void validate_hdt0l(const HDT0LSystem& sys) {
    require_word_in(sys.init, sys.work, sys.name + ": init");
    for (const auto& c : sys.input.symbols()) {
        auto it = sys.rules.find(c);
        if (it == sys.rules.end()) throw ValidityError(sys.name + ": no rule for letter " + c);
        validate_morphism(it->second);
        if (!(it->second.source == sys.work) || !(it->second.target == sys.work))
            throw ValidityError(sys.name + ": rule for " + c + " is not an endomorphism of the work alphabet");
    }
    validate_morphism(sys.final_rule);
    if (!(sys.final_rule.source == sys.work) || !(sys.final_rule.target == sys.output))
        throw ValidityError(sys.name + ": final rule has wrong alphabets");
}

Word run_hdt0l(const HDT0LSystem& sys, const Word& w) {
    require_word_in(w, sys.input, sys.name);
    Word u = sys.init;
    for (auto it = w.rbegin(); it != w.rend(); ++it) u = apply_morphism(sys.rules.at(*it), u);
    return apply_morphism(sys.final_rule, u);
}

// -------- DFAs --------

void validate_dfa(const Dfa& d) {
    if (d.states.empty()) throw ValidityError(d.name + ": no states");
    if (std::find(d.states.begin(), d.states.end(), d.initial) == d.states.end())
        throw ValidityError(d.name + ": initial state not declared");
    for (const auto& q : d.accepting)
        if (std::find(d.states.begin(), d.states.end(), q) == d.states.end())
            throw ValidityError(d.name + ": accepting state " + q + " not declared");
    for (const auto& q : d.states)
        for (const auto& c : d.input.symbols()) {
            auto it = d.delta.find({q, c});
            if (it == d.delta.end())
                throw ValidityError(d.name + ": delta not total at (" + q + "," + c + ")");
            if (std::find(d.states.begin(), d.states.end(), it->second) == d.states.end())
                throw ValidityError(d.name + ": unknown target state " + it->second);
        }
}

bool run_dfa(const Dfa& d, const Word& w) {
    require_word_in(w, d.input, d.name);
    std::string q = d.initial;
    for (const auto& c : w) q = d.delta.at({q, c});
    return d.accepting.count(q) > 0;
}

// -------- squaring --------

std::string underline(const std::string& symbol) { return "_" + symbol; }
bool is_underlined(const std::string& symbol) { return !symbol.empty() && symbol[0] == '_'; }

std::string plain(const std::string& symbol) {
    if (!is_underlined(symbol)) throw InputError("plain: symbol '" + symbol + "' is not underlined");
    return symbol.substr(1);
}

Alphabet underlined_extension(const Alphabet& gamma) {
    std::vector<std::string> symbols = gamma.symbols();
    for (const auto& c : gamma.symbols()) symbols.push_back(underline(c));
    return Alphabet(symbols);
}

Word squaring(const Alphabet& gamma, const Word& w) {
    require_word_in(w, gamma, "squaring");
    Word out;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j)
            out.push_back(i == j ? underline(w[j]) : w[j]);
    return out;
}

RegisterTransducer reverse_rt(const Alphabet& sigma) {
    RegisterTransducer rt;
    rt.name = "reverse";
    rt.input = sigma;
    rt.output = sigma;
    rt.registers = {"X", "Y"};
    rt.states = {"q"};
    rt.initial = "q";
    for (const auto& c : sigma.symbols())
        rt.delta[{"q", c}] = RtUpdate{"q", {{"X", {"X", c}}, {"Y", {c, "Y"}}}};
    rt.out["q"] = {"Y"};
    return rt;
}

RegisterTransducer xy_rt(const Alphabet& sigma) {
    RegisterTransducer rt = reverse_rt(sigma);
    rt.name = "xy";
    rt.out["q"] = {"X", "Y"};
    return rt;
}

std::vector<RegisterTransducer> squaring_pipeline(const Alphabet& gamma) {
    Alphabet ext = underlined_extension(gamma);

    // step 1: for each position i emit w1..w(i-1) followed by wi underlined
    RegisterTransducer step1;
    step1.name = "square-prefixes";
    step1.input = gamma;
    step1.output = ext;
    step1.registers = {"O", "P"};
    step1.states = {"q"};
    step1.initial = "q";
    for (const auto& c : gamma.symbols())
        step1.delta[{"q", c}] =
            RtUpdate{"q", {{"O", {"O", "P", underline(c)}}, {"P", {"P", c}}}};
    step1.out["q"] = {"O"};

    // step 3: after each underlined letter, replay the previously seen
    // underlined letters (in plain form)
    RegisterTransducer step3;
    step3.name = "square-replay";
    step3.input = ext;
    step3.output = ext;
    step3.registers = {"O", "H"};
    step3.states = {"q"};
    step3.initial = "q";
    for (const auto& c : gamma.symbols()) {
        step3.delta[{"q", c}] = RtUpdate{"q", {{"O", {"O", c}}, {"H", {"H"}}}};
        step3.delta[{"q", underline(c)}] =
            RtUpdate{"q", {{"O", {"O", "H", underline(c)}}, {"H", {"H", c}}}};
    }
    step3.out["q"] = {"O"};

    RegisterTransducer step2 = reverse_rt(ext);
    RegisterTransducer step4 = reverse_rt(ext);
    step2.name = "square-reverse-1";
    step4.name = "square-reverse-2";
    return {step1, step2, step3, step4};
}

// -------- composition by substitution --------

Word cbs(const StringFn& f, const std::map<std::string, StringFn>& family, const Word& w) {
    Word indices = f(w);
    Word out;
    for (const auto& i : indices) {
        auto it = family.find(i);
        if (it == family.end()) throw InputError("cbs: index '" + i + "' has no attached function");
        Word piece = it->second(w);
        out.insert(out.end(), piece.begin(), piece.end());
    }
    return out;
}

// -------- backward semantics --------

OutputFunction delta_o(const RegisterTransducer& rt, const std::string& a,
                       const OutputFunction& g) {
    OutputFunction result;
    for (const auto& q : rt.states) {
        const RtUpdate& u = rt.delta.at({q, a});
        const Word& src = g.at(u.next);
        Word value;
        for (const auto& s : src) {
            auto it = u.update.find(s);
            if (it != u.update.end())
                value.insert(value.end(), it->second.begin(), it->second.end());
            else
                value.push_back(s);
        }
        result[q] = std::move(value);
    }
    return result;
}

Word backward_run(const RegisterTransducer& rt, const Word& w) {
    require_word_in(w, rt.input, rt.name);
    OutputFunction g = rt.out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) g = delta_o(rt, *it, g);
    return erase_registers(g.at(rt.initial), rt.registers);
}

Word erase_registers(const Word& w, const std::vector<std::string>& registers) {
    Word out;
    for (const auto& s : w)
        if (std::find(registers.begin(), registers.end(), s) == registers.end()) out.push_back(s);
    return out;
}

}  // namespace ltc::trans
