#include "ltc/difftest.hpp"

#include <algorithm>

#include "ltc/church.hpp"
#include "ltc/eal.hpp"
#include "ltc/errors.hpp"

namespace ltc::difftest {

namespace {
std::vector<Word> words_up_to(const Alphabet& sigma, std::size_t max_len) {
    std::vector<Word> out{{}};
    std::size_t start = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = start; i < end; ++i)
            for (const auto& c : sigma.symbols()) {
                Word w = out[i];
                w.push_back(c);
                out.push_back(std::move(w));
            }
        start = end;
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Word& a, const Word& b) { return a.size() < b.size(); });
    return out;
}

std::vector<trees::TreePtr> trees_up_to(const Alphabet& sigma, std::size_t max_nodes) {
    // by total constructor count; memo[n] lists the trees of exactly n
    std::vector<std::vector<trees::TreePtr>> memo(max_nodes + 1);
    if (max_nodes >= 1) memo[1] = {trees::leaf()};
    for (std::size_t n = 3; n <= max_nodes; n += 2)
        for (std::size_t l = 1; l + 2 <= n; ++l)
            for (const auto& lt : memo[l])
                for (const auto& rt : memo[n - 1 - l])
                    for (const auto& c : sigma.symbols())
                        memo[n].push_back(trees::node(c, lt, rt));
    std::vector<trees::TreePtr> out;
    for (const auto& layer : memo) out.insert(out.end(), layer.begin(), layer.end());
    return out;
}

// step-by-step normalization; a step that deepens the ! nesting fails
eal::TermPtr normalize_watched(const eal::TermPtr& t, std::uint64_t fuel, std::string& violation) {
    return eal::beta_normalize_traced(t, fuel, [&](const eal::TermPtr& b, const eal::TermPtr& a) {
        if (violation.empty() && eal::bang_depth(a) > eal::bang_depth(b))
            violation = "a reduction step deepened the ! nesting";
    });
}

template <typename Input, typename Value, typename Run, typename Oracle, typename Show>
Report drive(const std::vector<Input>& inputs, Run run, Oracle oracle, Show show_value,
             const std::function<std::string(const Input&)>& show_input) {
    Report r;
    for (const Input& in : inputs) {
        ++r.cases;
        Value want = oracle(in);
        Value got;
        try {
            got = run(in);
        } catch (const FuelExhausted& e) {
            r.outcome = Outcome::FuelExhausted;
            r.input = show_input(in);
            r.detail = e.what();
            return r;
        } catch (const Error& e) {
            r.outcome = Outcome::Mismatch;
            r.input = show_input(in);
            r.expected = show_value(want);
            r.detail = e.what();
            return r;
        }
        if (!(got == want)) {
            r.outcome = Outcome::Mismatch;
            r.input = show_input(in);
            r.expected = show_value(want);
            r.actual = show_value(got);
            return r;
        }
    }
    return r;
}

std::string show_input_word(const Word& w) { return show_word(w); }
}  // namespace

Report diff_stlc_string(const stlc_compile::TypedProgram& p, const WordOracle& oracle,
                        std::size_t max_len, std::uint64_t fuel) {
    auto run = [&](const Word& w) {
        stlc::TermPtr applied = stlc::mk_app(p.term, church::encode_string(w, p.input.alphabet));
        return church::decode_string(applied, p.output.alphabet, fuel);
    };
    return drive<Word, Word>(words_up_to(p.input.alphabet, max_len), run, oracle, show_word,
                             show_input_word);
}

Report diff_stlc_tree(const stlc_compile::TypedProgram& p, const TreeOracle& oracle,
                      std::size_t max_nodes, std::uint64_t fuel) {
    auto run = [&](const trees::TreePtr& t) {
        stlc::TermPtr applied = stlc::mk_app(p.term, church::encode_tree(t, p.input.alphabet));
        return church::decode_tree(applied, p.output.alphabet, fuel);
    };
    auto eq_run = [&](const trees::TreePtr& t) { return run(t); };
    Report r;
    for (const auto& t : trees_up_to(p.input.alphabet, max_nodes)) {
        ++r.cases;
        trees::TreePtr want = oracle(t);
        trees::TreePtr got;
        try {
            got = eq_run(t);
        } catch (const FuelExhausted& e) {
            r.outcome = Outcome::FuelExhausted;
            r.input = trees::show_tree(t);
            r.detail = e.what();
            return r;
        } catch (const Error& e) {
            r.outcome = Outcome::Mismatch;
            r.input = trees::show_tree(t);
            r.expected = trees::show_tree(want);
            r.detail = e.what();
            return r;
        }
        if (!trees::tree_equal(got, want)) {
            r.outcome = Outcome::Mismatch;
            r.input = trees::show_tree(t);
            r.expected = trees::show_tree(want);
            r.actual = trees::show_tree(got);
            return r;
        }
    }
    return r;
}

Report diff_stlc_bool(const stlc_compile::TypedProgram& p, const BoolOracle& oracle,
                      std::size_t max_len, std::uint64_t fuel) {
    auto run = [&](const Word& w) {
        stlc::TermPtr applied = stlc::mk_app(p.term, church::encode_string(w, p.input.alphabet));
        return church::decode_bool(applied, fuel);
    };
    auto show_bool = [](bool b) { return std::string(b ? "true" : "false"); };
    return drive<Word, bool>(words_up_to(p.input.alphabet, max_len), run, oracle, show_bool,
                             show_input_word);
}

Report diff_eal_string(const eal_compile::EalProgram& p, const WordOracle& oracle,
                       std::size_t max_len, std::uint64_t fuel) {
    Report r;
    for (const Word& w : words_up_to(p.input.alphabet, max_len)) {
        ++r.cases;
        Word want = oracle(w);
        r.input = show_word(w);
        eal::TermPtr in = eal::encode_string(w, p.input.alphabet);
        if (p.banged_input) in = eal::e_bang(in);
        std::string violation;
        Word got;
        try {
            eal::TermPtr nf = normalize_watched(eal::e_app(p.term, in), fuel, violation);
            got = eal::decode_string(nf, p.output.alphabet, fuel);
        } catch (const FuelExhausted& e) {
            r.outcome = Outcome::FuelExhausted;
            r.detail = e.what();
            return r;
        } catch (const Error& e) {
            r.outcome = Outcome::Mismatch;
            r.expected = show_word(want);
            r.detail = e.what();
            return r;
        }
        if (!violation.empty()) {
            r.outcome = Outcome::Mismatch;
            r.detail = violation;
            return r;
        }
        if (got != want) {
            r.outcome = Outcome::Mismatch;
            r.expected = show_word(want);
            r.actual = show_word(got);
            return r;
        }
    }
    r.input.clear();
    return r;
}

Report diff_eal_tree(const eal_compile::EalProgram& p, const TreeOracle& oracle,
                     std::size_t max_nodes, std::uint64_t fuel) {
    Report r;
    for (const auto& t : trees_up_to(p.input.alphabet, max_nodes)) {
        ++r.cases;
        trees::TreePtr want = oracle(t);
        r.input = trees::show_tree(t);
        std::string violation;
        trees::TreePtr got;
        try {
            eal::TermPtr applied = eal::e_app(p.term, eal::encode_tree(t, p.input.alphabet));
            eal::TermPtr nf = normalize_watched(applied, fuel, violation);
            got = eal::decode_tree(nf, p.output.alphabet, fuel);
        } catch (const FuelExhausted& e) {
            r.outcome = Outcome::FuelExhausted;
            r.detail = e.what();
            return r;
        } catch (const Error& e) {
            r.outcome = Outcome::Mismatch;
            r.expected = trees::show_tree(want);
            r.detail = e.what();
            return r;
        }
        if (!violation.empty()) {
            r.outcome = Outcome::Mismatch;
            r.detail = violation;
            return r;
        }
        if (!trees::tree_equal(got, want)) {
            r.outcome = Outcome::Mismatch;
            r.expected = trees::show_tree(want);
            r.actual = trees::show_tree(got);
            return r;
        }
    }
    r.input.clear();
    return r;
}

Report diff_machine(const machine_io::Machine& m, const std::string& target, std::size_t max_len,
                    std::size_t max_nodes, std::uint64_t fuel) {
    if (target != "stlc" && target != "eal")
        throw InputError("unknown target '" + target + "' (expected stlc or eal)");
    bool eal_target = target == "eal";
    switch (m.kind) {
        case machine_io::MachineKind::RegisterTransducer: {
            if (!eal_target)
                throw InputError("register transducers compile to the affine calculus; "
                                 "use --target eal");
            auto p = eal_compile::compile_sst(m.rt);
            return diff_eal_string(
                p, [&](const Word& w) { return trans::run_register_transducer(m.rt, w); },
                max_len, fuel);
        }
        case machine_io::MachineKind::Hdt0l: {
            if (eal_target)
                throw InputError("hdt0l systems compile to the simply typed calculus; "
                                 "use --target stlc");
            auto p = stlc_compile::compile_hdt0l(m.hdt0l);
            return diff_stlc_string(
                p, [&](const Word& w) { return trans::run_hdt0l(m.hdt0l, w); }, max_len, fuel);
        }
        case machine_io::MachineKind::TreeTransducer: {
            auto oracle = [&](const trees::TreePtr& t) { return trees::run_rtt(m.brtt.rtt, t); };
            if (eal_target) return diff_eal_tree(eal_compile::compile_brtt(m.brtt), oracle, max_nodes, fuel);
            return diff_stlc_tree(stlc_compile::compile_rtt(m.brtt.rtt), oracle, max_nodes, fuel);
        }
        case machine_io::MachineKind::Dfa: {
            if (eal_target)
                throw InputError("DFAs compile to the simply typed calculus; use --target stlc");
            auto p = stlc_compile::compile_dfa(m.dfa);
            return diff_stlc_bool(
                p, [&](const Word& w) { return trans::run_dfa(m.dfa, w); }, max_len, fuel);
        }
    }
    throw InputError("unsupported machine kind");
}

}  // namespace ltc::difftest
