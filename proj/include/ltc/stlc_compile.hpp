#pragma once

#include "ltc/church.hpp"
#include "ltc/codec.hpp"
#include "ltc/stlc.hpp"
#include "ltc/trans.hpp"
#include "ltc/trees.hpp"

// Compilers from machine descriptions to simply typed terms. Every emitted
// program beta-applied to an encoded input normalizes to the encoding of the
// machine's direct semantics.
namespace ltc::stlc_compile {

using ltc::Codec;
using ltc::CodecKind;

struct TypedProgram {
    stlc::TermPtr term;
    stlc::TypePtr type;  // claimed; check_type holds
    Codec input, output;
    // The inner type A of the input's substituted encoding type (Str_G[A] or
    // BT_G[A]); the base type o when the program consumes plain encodings.
    stlc::TypePtr input_subst;
};

// Str_G[A] or BT_G[A] per the input codec.
stlc::TypePtr program_input_type(const TypedProgram& p);
stlc::TypePtr program_output_type(const TypedProgram& p);

// type Str_G -> Str_S, no substitution on the input
TypedProgram compile_morphism(const trans::Morphism& phi);

// type Str_G[Str_D] -> Str_S; the input iterates the compiled letter
// morphisms over the compiled initial word
TypedProgram compile_hdt0l(const trans::HDT0LSystem& sys);

// one-hole tree as a function BT_S -> BT_S; the hole alone compiles to \z. z
stlc::TermPtr compile_hole_tree(const trees::HolePtr& h, const Alphabet& sigma);

// Register expressions as functions BT^{|tree_vars|} -> dBT^{|hole_vars|} ->
// BT (resp. dBT); abstraction order follows the given variable lists, with
// positional binder names v1..vm, w1..wp.
stlc::TermPtr compile_expr(const trees::ExprPtr& e, const std::vector<std::string>& tree_vars,
                           const std::vector<std::string>& hole_vars, const Alphabet& sigma);
stlc::TermPtr compile_hole_expr(const trees::HExprPtr& h,
                                const std::vector<std::string>& tree_vars,
                                const std::vector<std::string>& hole_vars, const Alphabet& sigma);

// Bottom-up tree transducer as a continuation-passing fold. The input type is
// BT_G[A] with A = B^{|Q|} -> BT_S and B = BT_S^{|R|} -> dBT_S^{|R'|} -> BT_S;
// all binders are annotated.
TypedProgram compile_rtt(const trees::Rtt& m);

// Acceptance witness of type Str_S[B] -> Bool with B = Bool^{|Q|} -> Bool.
// The fold starts from the acceptance disjunction over the state vector,
// letters reindex the vector along their transition preimages, and the result
// is extracted with the one-hot vector of the initial state.
TypedProgram compile_dfa(const trans::Dfa& dfa);

// \x. u (t x) : Str_G[A[B]] -> Bool, deciding the preimage of u's language
// under t's function. Throws TypeError on codec mismatch.
TypedProgram compose_preimage(const TypedProgram& t, const TypedProgram& u);

// \x. u (t x) : Str_G[A[A']] -> Str_X, the function composition u after t.
TypedProgram compose_programs(const TypedProgram& t, const TypedProgram& u);

}  // namespace ltc::stlc_compile
