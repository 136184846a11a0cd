#pragma once

#include "ltc/alphabet.hpp"

namespace ltc {

enum class CodecKind { String, Tree, Boolean };

// how to encode inputs / decode outputs of a compiled program
struct Codec {
    CodecKind kind;
    Alphabet alphabet;  // unused for Boolean
};

}  // namespace ltc
