#pragma once

#include <random>

#include "ltc/stlc.hpp"
#include "ltc/trans.hpp"
#include "ltc/trees.hpp"

// Input enumeration and seeded random generation of machines and terms,
// shared by the differential tester and the test suite.
namespace ltc::gen {

using Rng = std::mt19937_64;

// all words up to max_len, shortest first, then by declared symbol order
std::vector<Word> enumerate_words(const Alphabet& sigma, std::size_t max_len);
// all trees up to max_size constructors, smallest first
std::vector<trees::TreePtr> enumerate_trees(const Alphabet& sigma, std::size_t max_size);

Word random_word(Rng& rng, const Alphabet& sigma, std::size_t max_len);

// General register transducer; update and output words mix letters and
// registers freely.
trans::RegisterTransducer random_rt(Rng& rng, const Alphabet& input, const Alphabet& output,
                                    std::size_t n_states, std::size_t n_registers,
                                    std::size_t max_word);

// Copyless (SST) transducer: within every transition each register feeds at
// most one update, and each output word is register-linear.
trans::RegisterTransducer random_copyless_rt(Rng& rng, const Alphabet& input,
                                             const Alphabet& output, std::size_t n_states,
                                             std::size_t n_registers, std::size_t max_letters);

trans::HDT0LSystem random_hdt0l(Rng& rng, const Alphabet& input, const Alphabet& work,
                                const Alphabet& output, std::size_t max_image);

trans::Dfa random_dfa(Rng& rng, const Alphabet& input, std::size_t n_states);

// Simple type over the base type only, with at most `depth` nested arrows.
stlc::TypePtr random_simple_type(Rng& rng, int depth);

// Closed, annotated, well-typed term of the given type, built goal-directed
// with deliberate beta redexes; returns nullptr when the type resists
// inhabitation within the attempt budget.
stlc::TermPtr random_typed_term(Rng& rng, const stlc::TypePtr& goal, int depth);

// `count` closed well-typed terms over assorted random types.
std::vector<stlc::TermPtr> random_term_corpus(Rng& rng, std::size_t count);

}  // namespace ltc::gen
