#pragma once

#include <string>

#include "ltc/eal_compile.hpp"
#include "ltc/stlc_compile.hpp"

// Compiled programs as sectioned text files. A header names the calculus and
// the input/output codecs, then each section runs from a `term:`-style marker
// line to the next marker:
//
//   program stlc
//   codec input string a b
//   codec output string a b
//   input-subst:
//     o
//   term:
//     \z. ...
//   type:
//     ...
//
// The eal flavor replaces `input-subst:` with a mandatory `derivation:`
// section and marks promoted ends with `banged`, as in
// `codec input banged string a b`. '#' comments are allowed everywhere.
namespace ltc::program_io {

std::string show_stlc_program(const stlc_compile::TypedProgram& p);
stlc_compile::TypedProgram parse_stlc_program(const std::string& text);

std::string show_eal_program(const eal_compile::EalProgram& p);
eal_compile::EalProgram parse_eal_program(const std::string& text);

}  // namespace ltc::program_io
