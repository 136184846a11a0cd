#pragma once

#include "ltc/alphabet.hpp"
#include "ltc/stlc.hpp"
#include "ltc/trees.hpp"

// Church encodings over the base type o. Argument order of the letter
// abstractions follows the alphabet's declared order; golden outputs
// depend on it.
namespace ltc::church {

// (o->o)^{|sigma|} -> o -> o
stlc::TypePtr str_type(const Alphabet& sigma);
// (o->o) -> o -> o, the unary-alphabet string type
stlc::TypePtr nat_type();
// o -> o -> o
stlc::TypePtr bool_type();
// (o->o->o)^{|sigma|} -> o -> o
stlc::TypePtr tree_type(const Alphabet& sigma);
// one-hole trees: tree_type(sigma) -> tree_type(sigma)
stlc::TypePtr dtree_type(const Alphabet& sigma);

// binder names used by the encoders ("f_a", "n_a", ...)
std::string letter_var(const std::string& symbol);
std::string node_var(const std::string& symbol);

// \f_a1...\f_ak.\x. f_{w1} (f_{w2} (... x)); first letter outermost
stlc::TermPtr encode_string(const Word& w, const Alphabet& sigma);
// \x.\y.x for true, \x.\y.y for false
stlc::TermPtr encode_bool(bool b);
// \n_a1...\n_ak.\x. T with leaf -> x, a<T,U> -> n_a T U
stlc::TermPtr encode_tree(const trees::TreePtr& t, const Alphabet& sigma);

// Decoders beta-normalize first. String and tree decoders accept eta-short
// forms (missing trailing abstractions are eta-expanded before matching, so
// \f.f decodes as the one-letter word). Throw DecodeError when the normal
// form does not match the encoding shape, FuelExhausted when normalization
// runs out of budget.
Word decode_string(const stlc::TermPtr& t, const Alphabet& sigma,
                   std::uint64_t fuel = stlc::kDefaultFuel);
bool decode_bool(const stlc::TermPtr& t, std::uint64_t fuel = stlc::kDefaultFuel);
trees::TreePtr decode_tree(const stlc::TermPtr& t, const Alphabet& sigma,
                           std::uint64_t fuel = stlc::kDefaultFuel);

}  // namespace ltc::church
