#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "ltc/eal_compile.hpp"
#include "ltc/machine_io.hpp"
#include "ltc/stlc_compile.hpp"

// Differential drivers: run a compiled program against a semantic oracle on
// every input in a size range (length-then-lexicographic for words, node
// count then structure for trees), stopping at the first disagreement, so a
// reported counterexample is minimal. Affine-calculus runs are normalized
// step by step and a step that deepens the ! nesting is itself a failure.
namespace ltc::difftest {

enum class Outcome { Pass, Mismatch, FuelExhausted };

struct Report {
    Outcome outcome = Outcome::Pass;
    std::size_t cases = 0;  // inputs checked, including any failing one
    std::string input, expected, actual;
    std::string detail;  // non-extensional failures: decode/depth/fuel notes
};

using WordOracle = std::function<Word(const Word&)>;
using TreeOracle = std::function<trees::TreePtr(const trees::TreePtr&)>;
using BoolOracle = std::function<bool(const Word&)>;

Report diff_stlc_string(const stlc_compile::TypedProgram& p, const WordOracle& oracle,
                        std::size_t max_len, std::uint64_t fuel = stlc::kDefaultFuel);
Report diff_stlc_tree(const stlc_compile::TypedProgram& p, const TreeOracle& oracle,
                      std::size_t max_nodes, std::uint64_t fuel = stlc::kDefaultFuel);
Report diff_stlc_bool(const stlc_compile::TypedProgram& p, const BoolOracle& oracle,
                      std::size_t max_len, std::uint64_t fuel = stlc::kDefaultFuel);

Report diff_eal_string(const eal_compile::EalProgram& p, const WordOracle& oracle,
                       std::size_t max_len, std::uint64_t fuel = eal::kDefaultFuel);
Report diff_eal_tree(const eal_compile::EalProgram& p, const TreeOracle& oracle,
                     std::size_t max_nodes, std::uint64_t fuel = eal::kDefaultFuel);

// Compiles the machine for the target ("stlc" or "eal") and differences it
// against the machine's own semantics. Throws InputError when the pairing is
// unsupported (string transducers and tree transducers compile to eal, hdt0l
// systems and DFAs to stlc) and ValidityError when compilation refuses the
// machine.
Report diff_machine(const machine_io::Machine& m, const std::string& target,
                    std::size_t max_len, std::size_t max_nodes,
                    std::uint64_t fuel = stlc::kDefaultFuel);

}  // namespace ltc::difftest
