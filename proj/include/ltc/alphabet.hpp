#pragma once

#include <string>
#include <vector>

#include "ltc/errors.hpp"

namespace ltc {

// A word is a sequence of symbol tokens. Symbols are strings so that
// synthesized symbols like "_1" (underlined counterparts) coexist with user
// symbols, which may not start with '_'.
using Word = std::vector<std::string>;

// Ordered alphabet; enumeration order fixes letter codes everywhere
// (encodings, compiled terms, test enumeration).
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    const std::vector<std::string>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    bool contains(const std::string& s) const;
    // 0-based code of a symbol; throws InputError if absent.
    std::size_t index_of(const std::string& s) const;
    const std::string& at(std::size_t i) const;

    bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }

private:
    std::vector<std::string> symbols_;
};

// Union preserving left-then-new-right enumeration order.
Alphabet alphabet_union(const Alphabet& a, const Alphabet& b);

// Checks every symbol of w against sigma; throws InputError otherwise.
void require_word_in(const Word& w, const Alphabet& sigma, const std::string& where);

// Compact rendering: concatenated when all symbols are single characters,
// space-separated otherwise. parse_word inverts it given the alphabet.
std::string show_word(const Word& w);
Word parse_word(const std::string& text, const Alphabet& sigma);

Word concat(const Word& a, const Word& b);

}  // namespace ltc
