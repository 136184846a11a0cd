#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ltc/church.hpp"
#include "ltc/difftest.hpp"
#include "ltc/eal.hpp"
#include "ltc/eal_derive.hpp"
#include "ltc/errors.hpp"
#include "ltc/gen.hpp"
#include "ltc/machine_io.hpp"
#include "ltc/program_io.hpp"

using namespace ltc;
using machine_io::Machine;
using machine_io::MachineKind;

namespace {
constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitParse = 2;
constexpr int kExitResource = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + out_path + "'");
    out << text;
}

// the calculus a machine naturally compiles to
std::string natural_target(MachineKind k) {
    switch (k) {
        case MachineKind::RegisterTransducer: return "eal";
        case MachineKind::TreeTransducer: return "stlc";
        case MachineKind::Hdt0l:
        case MachineKind::Dfa: return "stlc";
    }
    return "stlc";
}

int cmd_run(const std::string& machine_path, const std::string& input, bool complete_delta) {
    Machine m = machine_io::parse_machine(slurp(machine_path), complete_delta);
    switch (m.kind) {
        case MachineKind::RegisterTransducer:
            std::cout << show_word(trans::run_register_transducer(
                             m.rt, parse_word(input, m.rt.input)))
                      << "\n";
            break;
        case MachineKind::Hdt0l:
            std::cout << show_word(trans::run_hdt0l(m.hdt0l, parse_word(input, m.hdt0l.input)))
                      << "\n";
            break;
        case MachineKind::TreeTransducer:
            std::cout << trees::show_tree(trees::run_rtt(
                             m.brtt.rtt, trees::parse_tree(input, m.brtt.rtt.input)))
                      << "\n";
            break;
        case MachineKind::Dfa:
            std::cout << (trans::run_dfa(m.dfa, parse_word(input, m.dfa.input)) ? "true" : "false")
                      << "\n";
            break;
    }
    return kExitOk;
}

int cmd_compile(const std::string& machine_path, std::string target, const std::string& out_path,
                bool complete_delta) {
    Machine m = machine_io::parse_machine(slurp(machine_path), complete_delta);
    if (target.empty()) target = natural_target(m.kind);
    if (target != "stlc" && target != "eal")
        throw InputError("unknown target '" + target + "' (expected stlc or eal)");
    bool eal_target = target == "eal";
    switch (m.kind) {
        case MachineKind::RegisterTransducer:
            if (!eal_target)
                throw InputError("register transducers compile to the affine calculus; "
                                 "use --target eal");
            emit(out_path, program_io::show_eal_program(eal_compile::compile_sst(m.rt)));
            break;
        case MachineKind::Hdt0l:
            if (eal_target)
                throw InputError("hdt0l systems compile to the simply typed calculus; "
                                 "use --target stlc");
            emit(out_path, program_io::show_stlc_program(stlc_compile::compile_hdt0l(m.hdt0l)));
            break;
        case MachineKind::TreeTransducer:
            if (eal_target) {
                emit(out_path, program_io::show_eal_program(eal_compile::compile_brtt(m.brtt)));
            } else {
                emit(out_path, program_io::show_stlc_program(stlc_compile::compile_rtt(m.brtt.rtt)));
            }
            break;
        case MachineKind::Dfa:
            if (eal_target)
                throw InputError("DFAs compile to the simply typed calculus; use --target stlc");
            emit(out_path, program_io::show_stlc_program(stlc_compile::compile_dfa(m.dfa)));
            break;
    }
    return kExitOk;
}

int cmd_check(const std::string& program_path) {
    std::string text = slurp(program_path);
    std::istringstream first(text);
    std::string kw, calc;
    first >> kw >> calc;
    if (calc == "eal") {
        auto p = program_io::parse_eal_program(text);
        auto lin = eal::check_linearity(p.term);
        if (!lin.ok) {
            std::cout << "linearity: failed at '" << lin.binders.front() << "'\n";
            return kExitSemantic;
        }
        auto strat = eal::check_stratification(p.term);
        if (!strat.ok) {
            std::cout << "stratification: failed at '" << strat.binders.front() << "'\n";
            return kExitSemantic;
        }
        auto dc = eal::check_derivation(p.derivation);
        if (!dc.ok) {
            std::cout << "derivation: failed at " << dc.path << ": " << dc.reason << "\n";
            return kExitSemantic;
        }
        if (!eal::alpha_equal(p.derivation->subject, p.term) ||
            !eal::type_alpha_equal(p.derivation->type, p.type)) {
            std::cout << "derivation: subject or type differs from the program\n";
            return kExitSemantic;
        }
        std::cout << "linearity: ok\nstratification: ok\nderivation: ok\n";
        return kExitOk;
    }
    auto p = program_io::parse_stlc_program(text);
    if (!stlc::check_type({}, p.term, p.type)) {
        std::cout << "type: the term does not check at the claimed type\n";
        return kExitSemantic;
    }
    std::cout << "type: ok\n";
    return kExitOk;
}

int cmd_eval(const std::string& program_path, const std::string& input, std::uint64_t fuel) {
    std::string text = slurp(program_path);
    std::istringstream first(text);
    std::string kw, calc;
    first >> kw >> calc;
    if (calc == "eal") {
        auto p = program_io::parse_eal_program(text);
        if (p.input.kind == CodecKind::Boolean)
            throw InputError("boolean inputs are not encodable");
        eal::TermPtr in = p.input.kind == CodecKind::String
                              ? eal::encode_string(parse_word(input, p.input.alphabet),
                                                   p.input.alphabet)
                              : eal::encode_tree(trees::parse_tree(input, p.input.alphabet),
                                                 p.input.alphabet);
        if (p.banged_input) in = eal::e_bang(in);
        eal::TermPtr applied = eal::e_app(p.term, in);
        if (p.output.kind == CodecKind::String) {
            std::cout << show_word(eal::decode_string(applied, p.output.alphabet, fuel)) << "\n";
        } else {
            std::cout << trees::show_tree(eal::decode_tree(applied, p.output.alphabet, fuel))
                      << "\n";
        }
        return kExitOk;
    }
    auto p = program_io::parse_stlc_program(text);
    stlc::TermPtr in = p.input.kind == CodecKind::String
                           ? church::encode_string(parse_word(input, p.input.alphabet),
                                                   p.input.alphabet)
                           : church::encode_tree(trees::parse_tree(input, p.input.alphabet),
                                                 p.input.alphabet);
    stlc::TermPtr applied = stlc::mk_app(p.term, in);
    switch (p.output.kind) {
        case CodecKind::String:
            std::cout << show_word(church::decode_string(applied, p.output.alphabet, fuel)) << "\n";
            break;
        case CodecKind::Tree:
            std::cout << trees::show_tree(church::decode_tree(applied, p.output.alphabet, fuel))
                      << "\n";
            break;
        case CodecKind::Boolean:
            std::cout << (church::decode_bool(applied, fuel) ? "true" : "false") << "\n";
            break;
    }
    return kExitOk;
}

int report_outcome(const difftest::Report& r) {
    switch (r.outcome) {
        case difftest::Outcome::Pass:
            std::cout << "ok: " << r.cases << " inputs agree\n";
            return kExitOk;
        case difftest::Outcome::Mismatch:
            std::cout << "mismatch on input \"" << r.input << "\" (case " << r.cases << ")\n";
            if (!r.detail.empty()) std::cout << "  " << r.detail << "\n";
            if (!r.expected.empty()) std::cout << "  expected: " << r.expected << "\n";
            if (!r.actual.empty()) std::cout << "  actual:   " << r.actual << "\n";
            return kExitSemantic;
        case difftest::Outcome::FuelExhausted:
            std::cout << "fuel exhausted on input \"" << r.input << "\"\n";
            return kExitResource;
    }
    return kExitSemantic;
}

int cmd_difftest(const std::string& machine_path, std::string target, const std::string& random,
                 std::uint64_t seed, std::size_t count, std::size_t max_len,
                 std::size_t max_nodes, std::uint64_t fuel, bool complete_delta) {
    if (!random.empty()) {
        gen::Rng rng(seed);
        const Alphabet in({"a", "b"});
        const Alphabet work({"x", "y"});
        for (std::size_t i = 0; i < count; ++i) {
            Machine m{};
            if (random == "rt") {
                m.kind = MachineKind::RegisterTransducer;
                m.rt = gen::random_copyless_rt(rng, in, in, 1 + i % 3, 1 + i % 2, 2);
            } else if (random == "hdt0l") {
                m.kind = MachineKind::Hdt0l;
                m.hdt0l = gen::random_hdt0l(rng, in, work, in, 2);
            } else if (random == "dfa") {
                m.kind = MachineKind::Dfa;
                m.dfa = gen::random_dfa(rng, in, 1 + i % 3);
            } else {
                throw InputError("unknown random machine kind '" + random +
                                 "' (expected rt, hdt0l or dfa)");
            }
            if (target.empty()) target = natural_target(m.kind);
            std::cout << "machine " << i + 1 << "/" << count << ": ";
            int rc = report_outcome(difftest::diff_machine(m, target, max_len, max_nodes, fuel));
            if (rc != kExitOk) return rc;
        }
        return kExitOk;
    }
    Machine m = machine_io::parse_machine(slurp(machine_path), complete_delta);
    if (target.empty()) target = natural_target(m.kind);
    return report_outcome(difftest::diff_machine(m, target, max_len, max_nodes, fuel));
}
}  // namespace

int main(int argc, char** argv) {
    stlc::reset_fresh_counter();

    CLI::App app{"transducer-to-lambda-calculus toolkit"};
    app.require_subcommand(1);

    std::string machine_path, program_path, input, target, out_path, random;
    std::uint64_t fuel = stlc::kDefaultFuel, seed = 1;
    std::size_t max_len = 4, max_nodes = 7, count = 10;
    bool complete_delta = false;

    auto* run = app.add_subcommand("run", "run a machine on one input");
    run->add_option("machine", machine_path, "machine file")->required();
    run->add_option("input", input, "word or tree literal")->required();
    run->add_flag("--complete-delta", complete_delta, "fill missing transitions");

    auto* compile = app.add_subcommand("compile", "compile a machine to a program file");
    compile->add_option("machine", machine_path, "machine file")->required();
    compile->add_option("--target", target, "stlc or eal (default: the machine's calculus)");
    compile->add_option("-o,--output", out_path, "output path (default: stdout)");
    compile->add_flag("--complete-delta", complete_delta, "fill missing transitions");

    auto* check = app.add_subcommand("check", "re-check a compiled program file");
    check->add_option("program", program_path, "program file")->required();

    auto* eval = app.add_subcommand("eval", "apply a compiled program to one input");
    eval->add_option("program", program_path, "program file")->required();
    eval->add_option("input", input, "word or tree literal")->required();
    eval->add_option("--fuel", fuel, "beta-reduction budget");

    auto* diff = app.add_subcommand("difftest", "compare a compiled program with the semantics");
    diff->add_option("machine", machine_path, "machine file (omit with --random)");
    diff->add_option("--target", target, "stlc or eal (default: the machine's calculus)");
    diff->add_option("--max-len", max_len, "word inputs up to this length");
    diff->add_option("--max-nodes", max_nodes, "tree inputs up to this constructor count");
    diff->add_option("--fuel", fuel, "beta-reduction budget");
    diff->add_option("--random", random, "generate machines instead: rt, hdt0l or dfa");
    diff->add_option("--seed", seed, "random generator seed");
    diff->add_option("--count", count, "how many random machines");
    diff->add_flag("--complete-delta", complete_delta, "fill missing transitions");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(machine_path, input, complete_delta);
        if (compile->parsed()) return cmd_compile(machine_path, target, out_path, complete_delta);
        if (check->parsed()) return cmd_check(program_path);
        if (eval->parsed()) return cmd_eval(program_path, input, fuel);
        if (diff->parsed()) {
            if (machine_path.empty() && random.empty())
                throw InputError("difftest needs a machine file or --random");
            return cmd_difftest(machine_path, target, random, seed, count, max_len, max_nodes,
                                fuel, complete_delta);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const FuelExhausted& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kExitResource;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemantic;
    }
    return kExitOk;
}
