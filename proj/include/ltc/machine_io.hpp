#pragma once

#include <string>

#include "ltc/trans.hpp"
#include "ltc/trees.hpp"

// Textual machine descriptions. One machine per file; '#' starts a comment;
// tokens are whitespace-separated with the punctuation { } ; , ( ) [ ] ~ = :
// := -> standing alone. Keywords are reserved and user symbols, states and
// registers may not start with '_' (synthesized symbols do).
//
//   register-transducer NAME
//     input a b   output a b   registers X Y
//     states q0   initial q0
//     delta q0 a -> q0 { X := X a ; Y := a Y }
//     out q0 = X Y
//
//   hdt0l NAME  input a b  work x y  output a b
//     init x
//     rule a: x -> x y, y -> y
//     final: x -> a, y -> b
//
//   tree-transducer NAME
//     input a b   output a b
//     tree-registers X   hole-registers C
//     states q   initial q
//     conflict X ~ Y
//     delta q q a -> q { X := a( X< , X> ) ; C := C< [ a( box , () ) ] }
//     out q = C [ X ]
//
//   dfa NAME  input a b  states q0 q1  initial q0  accepting q1
//     delta q0 a -> q1
//
// Words and expressions end where the next keyword begins, so the empty word
// is written by nothing at all. Tree expressions: '()' the leaf, 'box' the
// hole, 'a( E , F )' a node (one child may be a one-hole expression),
// 'E [ F ]' plugging or composition, 'X<' / 'X>' the child registers.
namespace ltc::machine_io {

enum class MachineKind { RegisterTransducer, Hdt0l, TreeTransducer, Dfa };

struct Machine {
    MachineKind kind;
    trans::RegisterTransducer rt;
    trans::HDT0LSystem hdt0l;
    trees::Brtt brtt;
    trans::Dfa dfa;
};

// Throws ParseError with a line number on malformed input and ValidityError
// when the described machine is unsound (partial delta, unknown symbols...).
// With complete_delta, missing transitions are filled before validation:
// self-loops with identity updates for string transducers and DFAs; for tree
// transducers the pair keeps the left state and every register inherits its
// left child value.
Machine parse_machine(const std::string& text, bool complete_delta = false);

std::string show_machine(const Machine& m);

}  // namespace ltc::machine_io
