#include "ltc/machine_io.hpp"

#include <set>
#include <sstream>

#include "ltc/errors.hpp"

namespace ltc::machine_io {

namespace {
const std::set<std::string> kKeywords = {
    "register-transducer", "hdt0l", "tree-transducer", "dfa", "input", "output",
    "work", "registers", "tree-registers", "hole-registers", "states", "initial",
    "accepting", "delta", "out", "init", "rule", "final", "conflict"};

struct Token {
    std::string text;
    int line;
};

bool is_punct(char c) { return std::string("{};,()[]~=").find(c) != std::string::npos; }

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    int line = 1;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '#') {
            while (i < s.size() && s[i] != '\n') ++i;
        } else if (is_punct(c)) {
            out.push_back({std::string(1, c), line});
            ++i;
        } else if (c == ':') {
            if (i + 1 < s.size() && s[i + 1] == '=') {
                out.push_back({":=", line});
                i += 2;
            } else {
                out.push_back({":", line});
                ++i;
            }
        } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            out.push_back({"->", line});
            i += 2;
        } else {
            std::size_t j = i;
            while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
                   !is_punct(s[j]) && s[j] != ':' && s[j] != '#' &&
                   !(s[j] == '-' && j + 1 < s.size() && s[j + 1] == '>'))
                ++j;
            out.push_back({s.substr(i, j - i), line});
            i = j;
        }
    }
    return out;
}

struct Cursor {
    std::vector<Token> toks;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg, int line) const {
        throw ParseError("line " + std::to_string(line) + ": " + msg);
    }
    int here() const { return pos < toks.size() ? toks[pos].line : (toks.empty() ? 1 : toks.back().line); }
    bool done() const { return pos >= toks.size(); }
    const std::string* peek() const { return done() ? nullptr : &toks[pos].text; }
    bool at(const std::string& t) const { return !done() && toks[pos].text == t; }
    bool at_keyword() const { return !done() && kKeywords.count(toks[pos].text) > 0; }
    std::string next(const std::string& what) {
        if (done()) fail("expected " + what + ", found end of input", here());
        return toks[pos++].text;
    }
    void expect(const std::string& t) {
        if (done() || toks[pos].text != t)
            fail("expected '" + t + "'" + (done() ? "" : ", found '" + toks[pos].text + "'"),
                 here());
        ++pos;
    }

    std::string name(const std::string& what) {
        int ln = here();
        std::string t = next(what);
        if (kKeywords.count(t)) fail("'" + t + "' is a keyword, not a " + what, ln);
        if (!t.empty() && t[0] == '_') fail("'" + t + "' starts with '_' (reserved)", ln);
        return t;
    }
    // names until the next keyword or punctuation
    std::vector<std::string> name_list(const std::string& what) {
        std::vector<std::string> out;
        while (!done() && !at_keyword() && toks[pos].text.size() &&
               std::isalnum(static_cast<unsigned char>(toks[pos].text[0])))
            out.push_back(name(what));
        return out;
    }
    Word word_until(const std::set<std::string>& stops) {
        Word w;
        while (!done() && !at_keyword() && !stops.count(toks[pos].text)) w.push_back(name("symbol"));
        return w;
    }
};

trans::RegisterTransducer parse_rt(Cursor& cur) {
    trans::RegisterTransducer m;
    m.name = cur.name("machine name");
    while (!cur.done()) {
        int ln = cur.here();
        std::string kw = cur.next("keyword");
        if (kw == "input") {
            m.input = Alphabet(cur.name_list("symbol"));
        } else if (kw == "output") {
            m.output = Alphabet(cur.name_list("symbol"));
        } else if (kw == "registers") {
            m.registers = cur.name_list("register");
        } else if (kw == "states") {
            m.states = cur.name_list("state");
        } else if (kw == "initial") {
            m.initial = cur.name("state");
        } else if (kw == "delta") {
            std::string q = cur.name("state");
            std::string c = cur.name("symbol");
            cur.expect("->");
            trans::RtUpdate up;
            up.next = cur.name("state");
            cur.expect("{");
            while (!cur.at("}")) {
                std::string r = cur.name("register");
                cur.expect(":=");
                if (up.update.count(r)) cur.fail("register '" + r + "' updated twice", ln);
                up.update[r] = cur.word_until({";", "}"});
                if (cur.at(";")) cur.expect(";");
            }
            cur.expect("}");
            if (m.delta.count({q, c})) cur.fail("duplicate transition " + q + " " + c, ln);
            m.delta[{q, c}] = std::move(up);
        } else if (kw == "out") {
            std::string q = cur.name("state");
            cur.expect("=");
            if (m.out.count(q)) cur.fail("duplicate output for state " + q, ln);
            m.out[q] = cur.word_until({});
        } else {
            cur.fail("unexpected '" + kw + "' in a register transducer", ln);
        }
    }
    return m;
}

trans::HDT0LSystem parse_hdt0l(Cursor& cur) {
    trans::HDT0LSystem m;
    m.name = cur.name("machine name");
    auto one_morphism = [&](const Alphabet& src, const Alphabet& dst) {
        trans::Morphism phi;
        phi.source = src;
        phi.target = dst;
        for (;;) {
            std::string x = cur.name("symbol");
            cur.expect("->");
            if (phi.image.count(x)) cur.fail("'" + x + "' mapped twice", cur.here());
            phi.image[x] = cur.word_until({","});
            if (cur.at(",")) {
                cur.expect(",");
            } else {
                break;
            }
        }
        return phi;
    };
    // alphabets must precede the rules that are parsed against them
    while (!cur.done()) {
        int ln = cur.here();
        std::string kw = cur.next("keyword");
        if (kw == "input") {
            m.input = Alphabet(cur.name_list("symbol"));
        } else if (kw == "work") {
            m.work = Alphabet(cur.name_list("symbol"));
        } else if (kw == "output") {
            m.output = Alphabet(cur.name_list("symbol"));
        } else if (kw == "init") {
            m.init = cur.word_until({});
        } else if (kw == "rule") {
            std::string c = cur.name("input symbol");
            cur.expect(":");
            if (m.rules.count(c)) cur.fail("duplicate rule for '" + c + "'", ln);
            m.rules[c] = one_morphism(m.work, m.work);
        } else if (kw == "final") {
            cur.expect(":");
            m.final_rule = one_morphism(m.work, m.output);
        } else {
            cur.fail("unexpected '" + kw + "' in an hdt0l system", ln);
        }
    }
    return m;
}

// tree or one-hole expression; exactly one side is set
struct EitherExpr {
    trees::ExprPtr t;
    trees::HExprPtr h;
};

struct ExprParser {
    Cursor& cur;
    const std::set<std::string>& tree_regs;
    const std::set<std::string>& hole_regs;

    EitherExpr expr() {
        EitherExpr e = primary();
        while (cur.at("[")) {
            int ln = cur.here();
            cur.expect("[");
            EitherExpr inner = expr();
            cur.expect("]");
            if (!e.h) cur.fail("only a one-hole expression can be plugged", ln);
            if (inner.t) {
                e = {trees::ex_plug(e.h, inner.t), nullptr};
            } else {
                e = {nullptr, trees::hx_compose(e.h, inner.h)};
            }
        }
        return e;
    }

    EitherExpr primary() {
        int ln = cur.here();
        if (cur.at("(")) {
            cur.expect("(");
            cur.expect(")");
            return {trees::ex_leaf(), nullptr};
        }
        if (cur.at("box")) {
            cur.expect("box");
            return {nullptr, trees::hx_hole()};
        }
        std::string id = cur.name("expression");
        if (cur.at("(")) {
            cur.expect("(");
            EitherExpr l = expr();
            cur.expect(",");
            EitherExpr r = expr();
            cur.expect(")");
            if (l.t && r.t) return {trees::ex_node(id, l.t, r.t), nullptr};
            if (l.h && r.t) return {nullptr, trees::hx_node_l(id, l.h, r.t)};
            if (l.t && r.h) return {nullptr, trees::hx_node_r(id, l.t, r.h)};
            cur.fail("a node may contain at most one hole", ln);
        }
        std::string base = id;
        if (!base.empty() && (base.back() == '<' || base.back() == '>')) base.pop_back();
        if (hole_regs.count(base)) return {nullptr, trees::hx_var(id)};
        if (tree_regs.count(base)) return {trees::ex_var(id), nullptr};
        cur.fail("unknown register '" + id + "'", ln);
    }
};

trees::Brtt parse_rtt(Cursor& cur) {
    trees::Rtt m;
    std::vector<std::pair<std::string, std::string>> conflicts;
    m.name = cur.name("machine name");
    std::set<std::string> tregs, hregs;
    while (!cur.done()) {
        int ln = cur.here();
        std::string kw = cur.next("keyword");
        if (kw == "input") {
            m.input = Alphabet(cur.name_list("symbol"));
        } else if (kw == "output") {
            m.output = Alphabet(cur.name_list("symbol"));
        } else if (kw == "tree-registers") {
            m.tree_regs = cur.name_list("register");
            tregs = {m.tree_regs.begin(), m.tree_regs.end()};
        } else if (kw == "hole-registers") {
            m.hole_regs = cur.name_list("register");
            hregs = {m.hole_regs.begin(), m.hole_regs.end()};
        } else if (kw == "states") {
            m.states = cur.name_list("state");
        } else if (kw == "initial") {
            m.initial = cur.name("state");
        } else if (kw == "conflict") {
            std::string a = cur.name("register");
            cur.expect("~");
            conflicts.emplace_back(a, cur.name("register"));
        } else if (kw == "delta") {
            std::string ql = cur.name("state");
            std::string qr = cur.name("state");
            std::string c = cur.name("symbol");
            cur.expect("->");
            trees::RttUpdate up;
            up.next = cur.name("state");
            cur.expect("{");
            ExprParser ep{cur, tregs, hregs};
            while (!cur.at("}")) {
                int rln = cur.here();
                std::string r = cur.name("register");
                cur.expect(":=");
                EitherExpr e = ep.expr();
                if (tregs.count(r)) {
                    if (!e.t) cur.fail("register '" + r + "' needs a tree expression", rln);
                    if (up.tree.count(r)) cur.fail("register '" + r + "' updated twice", rln);
                    up.tree[r] = e.t;
                } else if (hregs.count(r)) {
                    if (!e.h) cur.fail("register '" + r + "' needs a one-hole expression", rln);
                    if (up.hole.count(r)) cur.fail("register '" + r + "' updated twice", rln);
                    up.hole[r] = e.h;
                } else {
                    cur.fail("unknown register '" + r + "'", rln);
                }
                if (cur.at(";")) cur.expect(";");
            }
            cur.expect("}");
            if (m.delta.count({ql, qr, c}))
                cur.fail("duplicate transition " + ql + " " + qr + " " + c, ln);
            m.delta[{ql, qr, c}] = std::move(up);
        } else if (kw == "out") {
            std::string q = cur.name("state");
            cur.expect("=");
            if (m.out.count(q)) cur.fail("duplicate output for state " + q, ln);
            ExprParser ep{cur, tregs, hregs};
            EitherExpr e = ep.expr();
            if (!e.t) cur.fail("the output of state " + q + " must be a tree expression", ln);
            m.out[q] = e.t;
        } else {
            cur.fail("unexpected '" + kw + "' in a tree transducer", ln);
        }
    }
    std::vector<std::string> carrier = m.tree_regs;
    carrier.insert(carrier.end(), m.hole_regs.begin(), m.hole_regs.end());
    return trees::Brtt{std::move(m), trees::ConflictRelation(carrier, conflicts)};
}

trans::Dfa parse_dfa(Cursor& cur) {
    trans::Dfa m;
    m.name = cur.name("machine name");
    while (!cur.done()) {
        int ln = cur.here();
        std::string kw = cur.next("keyword");
        if (kw == "input") {
            m.input = Alphabet(cur.name_list("symbol"));
        } else if (kw == "states") {
            m.states = cur.name_list("state");
        } else if (kw == "initial") {
            m.initial = cur.name("state");
        } else if (kw == "accepting") {
            for (const auto& q : cur.name_list("state")) m.accepting.insert(q);
        } else if (kw == "delta") {
            std::string q = cur.name("state");
            std::string c = cur.name("symbol");
            cur.expect("->");
            if (m.delta.count({q, c})) cur.fail("duplicate transition " + q + " " + c, ln);
            m.delta[{q, c}] = cur.name("state");
        } else {
            cur.fail("unexpected '" + kw + "' in a dfa", ln);
        }
    }
    return m;
}

void complete_rt(trans::RegisterTransducer& m) {
    for (const auto& q : m.states)
        for (const auto& c : m.input.symbols())
            if (!m.delta.count({q, c})) {
                trans::RtUpdate up;
                up.next = q;
                for (const auto& r : m.registers) up.update[r] = {r};
                m.delta[{q, c}] = std::move(up);
            }
}

void complete_rtt(trees::Rtt& m) {
    for (const auto& ql : m.states)
        for (const auto& qr : m.states)
            for (const auto& c : m.input.symbols())
                if (!m.delta.count({ql, qr, c})) {
                    trees::RttUpdate up;
                    up.next = ql;
                    for (const auto& r : m.tree_regs)
                        up.tree[r] = trees::ex_var(trees::tag_left(r));
                    for (const auto& r : m.hole_regs)
                        up.hole[r] = trees::hx_var(trees::tag_left(r));
                    m.delta[{ql, qr, c}] = std::move(up);
                }
}

void complete_dfa(trans::Dfa& m) {
    for (const auto& q : m.states)
        for (const auto& c : m.input.symbols())
            if (!m.delta.count({q, c})) m.delta[{q, c}] = q;
}
}  // namespace

Machine parse_machine(const std::string& text, bool complete_delta) {
    Cursor cur{tokenize(text)};
    Machine m{};
    std::string kind = cur.next("machine kind");
    if (kind == "register-transducer") {
        m.kind = MachineKind::RegisterTransducer;
        m.rt = parse_rt(cur);
        if (complete_delta) complete_rt(m.rt);
        trans::validate_rt(m.rt);
    } else if (kind == "hdt0l") {
        m.kind = MachineKind::Hdt0l;
        m.hdt0l = parse_hdt0l(cur);
        trans::validate_hdt0l(m.hdt0l);
    } else if (kind == "tree-transducer") {
        m.kind = MachineKind::TreeTransducer;
        m.brtt = parse_rtt(cur);
        if (complete_delta) complete_rtt(m.brtt.rtt);
        trees::validate_rtt(m.brtt.rtt);
    } else if (kind == "dfa") {
        m.kind = MachineKind::Dfa;
        m.dfa = parse_dfa(cur);
        if (complete_delta) complete_dfa(m.dfa);
        trans::validate_dfa(m.dfa);
    } else {
        cur.fail("unknown machine kind '" + kind + "'", 1);
    }
    return m;
}

namespace {
std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (const auto& x : xs) {
        if (!out.empty()) out += ' ';
        out += x;
    }
    return out;
}

std::string join_word(const Word& w) { return join(w); }

void show_morphism(std::ostringstream& os, const trans::Morphism& phi) {
    bool first = true;
    for (const auto& [x, img] : phi.image) {
        os << (first ? " " : ", ") << x << " -> " << join_word(img);
        first = false;
    }
    os << "\n";
}
}  // namespace

std::string show_machine(const Machine& m) {
    std::ostringstream os;
    switch (m.kind) {
        case MachineKind::RegisterTransducer: {
            const auto& t = m.rt;
            os << "register-transducer " << t.name << "\n";
            os << "  input " << join(t.input.symbols()) << "  output " << join(t.output.symbols())
               << "  registers " << join(t.registers) << "\n";
            os << "  states " << join(t.states) << "  initial " << t.initial << "\n";
            for (const auto& [key, up] : t.delta) {
                os << "  delta " << key.first << " " << key.second << " -> " << up.next << " {";
                bool first = true;
                for (const auto& r : t.registers) {
                    os << (first ? " " : " ; ") << r << " := " << join_word(up.update.at(r));
                    first = false;
                }
                os << " }\n";
            }
            for (const auto& [q, w] : t.out) os << "  out " << q << " = " << join_word(w) << "\n";
            break;
        }
        case MachineKind::Hdt0l: {
            const auto& t = m.hdt0l;
            os << "hdt0l " << t.name << "\n";
            os << "  input " << join(t.input.symbols()) << "  work " << join(t.work.symbols())
               << "  output " << join(t.output.symbols()) << "\n";
            os << "  init " << join_word(t.init) << "\n";
            for (const auto& [c, phi] : t.rules) {
                os << "  rule " << c << ":";
                show_morphism(os, phi);
            }
            os << "  final:";
            show_morphism(os, t.final_rule);
            break;
        }
        case MachineKind::TreeTransducer: {
            const auto& t = m.brtt.rtt;
            os << "tree-transducer " << t.name << "\n";
            os << "  input " << join(t.input.symbols()) << "  output " << join(t.output.symbols())
               << "\n";
            if (!t.tree_regs.empty()) os << "  tree-registers " << join(t.tree_regs) << "\n";
            if (!t.hole_regs.empty()) os << "  hole-registers " << join(t.hole_regs) << "\n";
            os << "  states " << join(t.states) << "  initial " << t.initial << "\n";
            const auto& carrier = m.brtt.conflict.carrier();
            for (std::size_t i = 0; i < carrier.size(); ++i)
                for (std::size_t j = i + 1; j < carrier.size(); ++j)
                    if (m.brtt.conflict.conflicts(carrier[i], carrier[j]))
                        os << "  conflict " << carrier[i] << " ~ " << carrier[j] << "\n";
            for (const auto& [key, up] : t.delta) {
                os << "  delta " << std::get<0>(key) << " " << std::get<1>(key) << " "
                   << std::get<2>(key) << " -> " << up.next << " {";
                bool first = true;
                for (const auto& r : t.tree_regs) {
                    os << (first ? " " : " ; ") << r << " := " << trees::show_expr(up.tree.at(r));
                    first = false;
                }
                for (const auto& r : t.hole_regs) {
                    os << (first ? " " : " ; ") << r << " := " << trees::show_hexpr(up.hole.at(r));
                    first = false;
                }
                os << " }\n";
            }
            for (const auto& [q, e] : t.out)
                os << "  out " << q << " = " << trees::show_expr(e) << "\n";
            break;
        }
        case MachineKind::Dfa: {
            const auto& t = m.dfa;
            os << "dfa " << t.name << "\n";
            os << "  input " << join(t.input.symbols()) << "\n";
            os << "  states " << join(t.states) << "  initial " << t.initial << "  accepting "
               << join({t.accepting.begin(), t.accepting.end()}) << "\n";
            for (const auto& [key, q2] : t.delta)
                os << "  delta " << key.first << " " << key.second << " -> " << q2 << "\n";
            break;
        }
    }
    return os.str();
}

}  // namespace ltc::machine_io
