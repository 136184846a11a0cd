#include "ltc/alphabet.hpp"

#include <algorithm>
#include <set>

namespace ltc {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    std::set<std::string> seen;
    for (const auto& s : symbols_) {
        if (s.empty()) throw InputError("alphabet: empty symbol");
        if (!seen.insert(s).second) throw InputError("alphabet: duplicate symbol '" + s + "'");
    }
}

bool Alphabet::contains(const std::string& s) const {
    return std::find(symbols_.begin(), symbols_.end(), s) != symbols_.end();
}

std::size_t Alphabet::index_of(const std::string& s) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), s);
    if (it == symbols_.end()) throw InputError("symbol '" + s + "' not in alphabet");
    return static_cast<std::size_t>(it - symbols_.begin());
}

const std::string& Alphabet::at(std::size_t i) const {
    if (i >= symbols_.size()) throw InputError("alphabet index out of range");
    return symbols_[i];
}

Alphabet alphabet_union(const Alphabet& a, const Alphabet& b) {
    std::vector<std::string> syms = a.symbols();
    for (const auto& s : b.symbols())
        if (std::find(syms.begin(), syms.end(), s) == syms.end()) syms.push_back(s);
    return Alphabet(syms);
}

void require_word_in(const Word& w, const Alphabet& sigma, const std::string& where) {
    for (const auto& s : w)
        if (!sigma.contains(s))
            throw InputError(where + ": symbol '" + s + "' not in alphabet");
}

std::string show_word(const Word& w) {
    bool single = std::all_of(w.begin(), w.end(), [](const std::string& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!single && i > 0) out += ' ';
        out += w[i];
    }
    return out;
}

Word parse_word(const std::string& text, const Alphabet& sigma) {
    Word w;
    bool single = true;
    for (const auto& s : sigma.symbols()) single = single && s.size() == 1;
    if (single) {
        for (char c : text) {
            if (c == ' ' || c == '\t') continue;
            std::string s(1, c);
            if (!sigma.contains(s)) throw InputError("word: symbol '" + s + "' not in alphabet");
            w.push_back(s);
        }
        return w;
    }
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        if (!sigma.contains(cur)) throw InputError("word: symbol '" + cur + "' not in alphabet");
        w.push_back(cur);
        cur.clear();
    };
    for (char c : text) {
        if (c == ' ' || c == '\t') flush();
        else cur += c;
    }
    flush();
    return w;
}

Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

}  // namespace ltc
