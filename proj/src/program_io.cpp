#include "ltc/program_io.hpp"

#include <map>
#include <sstream>

#include "ltc/eal.hpp"
#include "ltc/eal_derive.hpp"
#include "ltc/errors.hpp"
#include "ltc/stlc.hpp"

namespace ltc::program_io {

namespace {
std::string codec_line(const char* role, const Codec& c, bool banged) {
    std::string out = std::string("codec ") + role;
    if (banged) out += " banged";
    switch (c.kind) {
        case CodecKind::String: out += " string"; break;
        case CodecKind::Tree: out += " tree"; break;
        case CodecKind::Boolean: out += " bool"; break;
    }
    for (const auto& s : c.alphabet.symbols()) out += " " + s;
    return out + "\n";
}

struct Sections {
    std::string calculus;
    Codec input, output;
    bool banged_input = false, banged_output = false;
    bool saw_input = false, saw_output = false;
    std::map<std::string, std::string> bodies;
};

bool is_marker(const std::string& line, std::string& name) {
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() &&
           (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '-' || line[j] == '_'))
        ++j;
    if (j == i || j >= line.size() || line[j] != ':') return false;
    std::size_t k = j + 1;
    while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    if (k != line.size()) return false;
    name = line.substr(i, j - i);
    return true;
}

Codec parse_codec(std::istringstream& ls, bool& banged, int line_no) {
    std::string tok;
    if (!(ls >> tok)) throw ParseError("line " + std::to_string(line_no) + ": truncated codec");
    if (tok == "banged") {
        banged = true;
        if (!(ls >> tok))
            throw ParseError("line " + std::to_string(line_no) + ": truncated codec");
    }
    Codec c;
    if (tok == "string") {
        c.kind = CodecKind::String;
    } else if (tok == "tree") {
        c.kind = CodecKind::Tree;
    } else if (tok == "bool") {
        c.kind = CodecKind::Boolean;
    } else {
        throw ParseError("line " + std::to_string(line_no) + ": unknown codec kind '" + tok + "'");
    }
    std::vector<std::string> syms;
    while (ls >> tok) syms.push_back(tok);
    c.alphabet = Alphabet(syms);
    return c;
}

Sections split_sections(const std::string& text) {
    Sections s;
    std::istringstream in(text);
    std::string line;
    std::string current;  // the open section, empty while in the header
    int line_no = 0;
    bool saw_program = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string marker;
        if (is_marker(line, marker)) {
            if (s.bodies.count(marker))
                throw ParseError("line " + std::to_string(line_no) + ": duplicate section '" +
                                 marker + "'");
            current = marker;
            s.bodies[current];
            continue;
        }
        if (!current.empty()) {
            s.bodies[current] += line + "\n";
            continue;
        }
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw) || kw[0] == '#') continue;
        if (kw == "program") {
            if (!(ls >> s.calculus) || (s.calculus != "stlc" && s.calculus != "eal"))
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected 'program stlc' or 'program eal'");
            saw_program = true;
        } else if (kw == "codec") {
            std::string role;
            if (!(ls >> role) || (role != "input" && role != "output"))
                throw ParseError("line " + std::to_string(line_no) +
                                 ": codec role must be input or output");
            if (role == "input") {
                s.input = parse_codec(ls, s.banged_input, line_no);
                s.saw_input = true;
            } else {
                s.output = parse_codec(ls, s.banged_output, line_no);
                s.saw_output = true;
            }
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unexpected '" + kw +
                             "' in the program header");
        }
    }
    if (!saw_program) throw ParseError("missing 'program' header line");
    if (!s.saw_input || !s.saw_output) throw ParseError("missing codec header line");
    return s;
}

const std::string& need(const Sections& s, const std::string& name) {
    auto it = s.bodies.find(name);
    if (it == s.bodies.end()) throw ParseError("missing section '" + name + "'");
    return it->second;
}
}  // namespace

std::string show_stlc_program(const stlc_compile::TypedProgram& p) {
    std::string out = "program stlc\n";
    out += codec_line("input", p.input, false);
    out += codec_line("output", p.output, false);
    out += "input-subst:\n  " + stlc::show_type(p.input_subst) + "\n";
    out += "term:\n  " + stlc::show_term(p.term) + "\n";
    out += "type:\n  " + stlc::show_type(p.type) + "\n";
    return out;
}

stlc_compile::TypedProgram parse_stlc_program(const std::string& text) {
    Sections s = split_sections(text);
    if (s.calculus != "stlc") throw ParseError("not an stlc program file");
    if (s.banged_input || s.banged_output)
        throw ParseError("banged codecs only apply to eal programs");
    stlc_compile::TypedProgram p;
    p.input = s.input;
    p.output = s.output;
    p.input_subst = stlc::parse_type(need(s, "input-subst"));
    p.term = stlc::parse_term(need(s, "term"));
    p.type = stlc::parse_type(need(s, "type"));
    return p;
}

std::string show_eal_program(const eal_compile::EalProgram& p) {
    std::string out = "program eal\n";
    out += codec_line("input", p.input, p.banged_input);
    out += codec_line("output", p.output, p.banged_output);
    out += "term:\n  " + eal::show_term(p.term) + "\n";
    out += "type:\n  " + eal::show_type(p.type) + "\n";
    out += "derivation:\n" + eal::show_derivation(p.derivation);
    return out;
}

eal_compile::EalProgram parse_eal_program(const std::string& text) {
    Sections s = split_sections(text);
    if (s.calculus != "eal") throw ParseError("not an eal program file");
    eal_compile::EalProgram p;
    p.input = s.input;
    p.output = s.output;
    p.banged_input = s.banged_input;
    p.banged_output = s.banged_output;
    p.term = eal::parse_term(need(s, "term"));
    p.type = eal::parse_type(need(s, "type"));
    p.derivation = eal::parse_derivation(need(s, "derivation"), p.term, p.type);
    return p;
}

}  // namespace ltc::program_io
