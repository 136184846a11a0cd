#pragma once

#include <vector>

#include "ltc/codec.hpp"
#include "ltc/eal.hpp"
#include "ltc/eal_derive.hpp"
#include "ltc/trans.hpp"
#include "ltc/trees.hpp"

// Compilers to affine terms. Every program carries a full typing derivation;
// emitted terms pass the linearity and stratification checks, and applied to
// an encoded input they normalize to the encoding of the direct semantics.
namespace ltc::eal_compile {

struct EalProgram {
    eal::TermPtr term;
    eal::TypePtr type;
    eal::DerivPtr derivation;  // closed; check_derivation holds
    Codec input, output;
    bool banged_input = false;   // consumes !enc(w) instead of enc(w)
    bool banged_output = false;  // produces !enc(v)
};

// Copyless register transducer to Str_G -o Str_S. The fold value turns a
// state choice and register contents into the remaining output; a transition
// consumes each register value at most once, which is exactly the copyless
// condition. Throws ValidityError otherwise. A one-state machine can skip the
// state dispatch wrapper; default is the uniform shape.
EalProgram compile_sst(const trans::RegisterTransducer& m,
                       bool drop_single_state_dispatch = false);

// \!x. !(t x) : !A -o !B from t : A -o B
EalProgram promote_program(const EalProgram& p);

// Composition by substitution: f emits indices, gs (one per index letter, in
// index alphabet order) emit the replacement strings, and the result maps w
// to g_{i1}(w) ... g_{ik}(w) where f(w) = i1...ik. All programs take and
// return banged strings over a common source alphabet; the shared input is
// duplicated strictly under a bang.
EalProgram compile_cbs(const EalProgram& f, const std::vector<EalProgram>& gs);

// Bottom-up register tree transducer with a conflict relation, to
// BT_G -o BT_S. The fold value pairs the state with a menu holding one entry
// per non-conflicting register subset; conflicting registers never coexist in
// an entry, so every entry is affine. Registers capped at 8. Throws
// ValidityError when the conflict conditions fail.
EalProgram compile_brtt(const trees::Brtt& m);

}  // namespace ltc::eal_compile
