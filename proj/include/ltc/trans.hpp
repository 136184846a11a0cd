#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ltc/alphabet.hpp"
#include "ltc/errors.hpp"

namespace ltc::trans {

// -------- morphisms --------

// Monoid morphism source* -> target*, given letterwise.
struct Morphism {
    Alphabet source, target;
    std::map<std::string, Word> image;  // total on source
};

void validate_morphism(const Morphism& phi);
Word apply_morphism(const Morphism& phi, const Word& w);
Morphism identity_morphism(const Alphabet& sigma);

// -------- register transducers --------

// Update and output words range over output letters and register names;
// registers must be disjoint from both alphabets.
struct RtUpdate {
    std::string next;
    std::map<std::string, Word> update;  // per register
};

struct RegisterTransducer {
    std::string name;
    Alphabet input, output;
    std::vector<std::string> registers;
    std::vector<std::string> states;
    std::string initial;
    std::map<std::pair<std::string, std::string>, RtUpdate> delta;  // (state, letter)
    std::map<std::string, Word> out;  // F: state -> word over output+registers
};

void validate_rt(const RegisterTransducer& rt);

struct RtConfig {
    std::string state;
    std::map<std::string, Word> store;
};

RtConfig initial_config(const RegisterTransducer& rt);
RtConfig rt_step(const RegisterTransducer& rt, const RtConfig& c, const std::string& letter);
Word run_register_transducer(const RegisterTransducer& rt, const Word& w);

struct CopylessReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// SST condition: within each transition, every register appears at most once
// across all update words together; same within each output word.
CopylessReport check_copyless(const RegisterTransducer& rt);

// -------- HDT0L systems --------

struct HDT0LSystem {
    std::string name;
    Alphabet input;   // letters selecting morphisms
    Alphabet work;    // the intermediate alphabet
    Alphabet output;
    Word init;                               // over work
    std::map<std::string, Morphism> rules;   // per input letter, work* -> work*
    Morphism final_rule;                     // work* -> output*
};

void validate_hdt0l(const HDT0LSystem& sys);
// final_rule applied to rules[w1](rules[w2](... rules[wn](init)))
Word run_hdt0l(const HDT0LSystem& sys, const Word& w);

// -------- deterministic finite automata --------

struct Dfa {
    std::string name;
    Alphabet input;
    std::vector<std::string> states;
    std::string initial;
    std::set<std::string> accepting;
    std::map<std::pair<std::string, std::string>, std::string> delta;
};

void validate_dfa(const Dfa& d);
bool run_dfa(const Dfa& d, const Word& w);

// -------- squaring --------

// fresh symbol for the underlined copy of a letter; user symbols may not
// start with '_'
std::string underline(const std::string& symbol);
bool is_underlined(const std::string& symbol);
std::string plain(const std::string& symbol);
// input alphabet extended with underlined copies of every letter
Alphabet underlined_extension(const Alphabet& gamma);

// n copies of w concatenated, the i-th with its i-th letter underlined
Word squaring(const Alphabet& gamma, const Word& w);

// Four transducers whose composition (first element applied first) computes
// squaring. Steps 2 and 4 reverse their input; step 1 emits for each
// position the preceding prefix with the current letter underlined at the
// end; step 3 reinserts the underlined history after each underlined letter.
std::vector<RegisterTransducer> squaring_pipeline(const Alphabet& gamma);

// the 2-register reversal transducer over sigma (X := Xc, Y := cY, F = Y)
RegisterTransducer reverse_rt(const Alphabet& sigma);
// same registers, F = X Y: the w.reverse(w) transducer
RegisterTransducer xy_rt(const Alphabet& sigma);

// -------- composition by substitution --------

using StringFn = std::function<Word(const Word&)>;

// g_{i1}(w) ... g_{ik}(w) where f(w) = i1...ik; throws InputError when f
// emits an index with no attached function.
Word cbs(const StringFn& f, const std::map<std::string, StringFn>& family, const Word& w);

// -------- backward semantics --------

using OutputFunction = std::map<std::string, Word>;  // state -> word over output+registers

// one backward step: q |-> s_{a,q}*(G(q'_{a,q})) with delta(q,a) = (q', s);
// s* substitutes update words for registers and fixes output letters
OutputFunction delta_o(const RegisterTransducer& rt, const std::string& a,
                       const OutputFunction& g);

// iterates delta_o from F over the letters of w (rightmost first), then
// erases registers from the value at the initial state; always agrees with
// run_register_transducer
Word backward_run(const RegisterTransducer& rt, const Word& w);

Word erase_registers(const Word& w, const std::vector<std::string>& registers);

}  // namespace ltc::trans
