#include "ltc/trees.hpp"

#include <algorithm>

namespace ltc::trees {

// -------- binary trees --------

TreePtr leaf() {
    static const TreePtr l = std::make_shared<BinTree>(BinTree{"", nullptr, nullptr});
    return l;
}

TreePtr node(const std::string& label, TreePtr l, TreePtr r) {
    return std::make_shared<BinTree>(BinTree{label, std::move(l), std::move(r)});
}

bool is_leaf(const TreePtr& t) { return t->left == nullptr; }

bool tree_equal(const TreePtr& a, const TreePtr& b) {
    if (a.get() == b.get()) return true;
    if (is_leaf(a) || is_leaf(b)) return is_leaf(a) && is_leaf(b);
    return a->label == b->label && tree_equal(a->left, b->left) && tree_equal(a->right, b->right);
}

std::size_t tree_size(const TreePtr& t) {
    if (is_leaf(t)) return 1;
    return 1 + tree_size(t->left) + tree_size(t->right);
}

std::string show_tree(const TreePtr& t) {
    if (is_leaf(t)) return "()";
    return t->label + "(" + show_tree(t->left) + "," + show_tree(t->right) + ")";
}

namespace {
struct TreeParser {
    const std::string& s;
    std::size_t i = 0;
    const Alphabet& sigma;

    void ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
    }
    bool eat(char c) {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    std::string ident() {
        ws();
        std::string r;
        while (i < s.size() && (isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) r += s[i++];
        return r;
    }
    TreePtr tree() {
        ws();
        if (eat('(')) {
            if (!eat(')')) throw ParseError("tree: expected ')' after '('");
            return leaf();
        }
        std::string lab = ident();
        if (lab.empty()) throw ParseError("tree: expected '()' or label at offset " + std::to_string(i));
        if (!sigma.contains(lab)) throw InputError("tree: label '" + lab + "' not in alphabet");
        if (!eat('(')) throw ParseError("tree: expected '(' after label");
        TreePtr l = tree();
        if (!eat(',')) throw ParseError("tree: expected ','");
        TreePtr r = tree();
        if (!eat(')')) throw ParseError("tree: expected ')'");
        return node(lab, l, r);
    }
};
}  // namespace

TreePtr parse_tree(const std::string& text, const Alphabet& sigma) {
    TreeParser p{text, 0, sigma};
    TreePtr t = p.tree();
    p.ws();
    if (p.i != text.size()) throw ParseError("tree: trailing input");
    return t;
}

// -------- one-hole contexts --------

HolePtr hole() {
    static const HolePtr h =
        std::make_shared<OneHole>(OneHole{OneHole::Kind::Hole, "", nullptr, nullptr});
    return h;
}

HolePtr node_l(const std::string& label, HolePtr sub, TreePtr right) {
    return std::make_shared<OneHole>(OneHole{OneHole::Kind::NodeL, label, std::move(sub), std::move(right)});
}

HolePtr node_r(const std::string& label, TreePtr left, HolePtr sub) {
    return std::make_shared<OneHole>(OneHole{OneHole::Kind::NodeR, label, std::move(sub), std::move(left)});
}

bool hole_equal(const HolePtr& a, const HolePtr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    if (a->kind == OneHole::Kind::Hole) return true;
    return a->label == b->label && hole_equal(a->sub, b->sub) && tree_equal(a->other, b->other);
}

std::string show_hole(const HolePtr& h) {
    switch (h->kind) {
        case OneHole::Kind::Hole: return "box";
        case OneHole::Kind::NodeL:
            return h->label + "(" + show_hole(h->sub) + "," + show_tree(h->other) + ")";
        case OneHole::Kind::NodeR:
            return h->label + "(" + show_tree(h->other) + "," + show_hole(h->sub) + ")";
    }
    return "";
}

TreePtr hole_subst(const HolePtr& c, const TreePtr& t) {
    switch (c->kind) {
        case OneHole::Kind::Hole: return t;
        case OneHole::Kind::NodeL: return node(c->label, hole_subst(c->sub, t), c->other);
        case OneHole::Kind::NodeR: return node(c->label, c->other, hole_subst(c->sub, t));
    }
    return t;
}

HolePtr hole_compose(const HolePtr& outer, const HolePtr& inner) {
    switch (outer->kind) {
        case OneHole::Kind::Hole: return inner;
        case OneHole::Kind::NodeL: return node_l(outer->label, hole_compose(outer->sub, inner), outer->other);
        case OneHole::Kind::NodeR: return node_r(outer->label, outer->other, hole_compose(outer->sub, inner));
    }
    return inner;
}

// -------- expressions --------

ExprPtr ex_leaf() {
    static const ExprPtr e =
        std::make_shared<TreeExpr>(TreeExpr{TreeExpr::Kind::Leaf, "", "", nullptr, nullptr, nullptr});
    return e;
}

ExprPtr ex_var(const std::string& name) {
    return std::make_shared<TreeExpr>(TreeExpr{TreeExpr::Kind::Var, name, "", nullptr, nullptr, nullptr});
}

ExprPtr ex_node(const std::string& label, ExprPtr l, ExprPtr r) {
    return std::make_shared<TreeExpr>(
        TreeExpr{TreeExpr::Kind::Node, "", label, std::move(l), std::move(r), nullptr});
}

ExprPtr ex_plug(HExprPtr h, ExprPtr e) {
    return std::make_shared<TreeExpr>(
        TreeExpr{TreeExpr::Kind::Plug, "", "", std::move(e), nullptr, std::move(h)});
}

HExprPtr hx_hole() {
    static const HExprPtr h = std::make_shared<HoleExpr>(
        HoleExpr{HoleExpr::Kind::Hole, "", "", nullptr, nullptr, nullptr});
    return h;
}

HExprPtr hx_var(const std::string& name) {
    return std::make_shared<HoleExpr>(HoleExpr{HoleExpr::Kind::Var, name, "", nullptr, nullptr, nullptr});
}

HExprPtr hx_node_l(const std::string& label, HExprPtr sub, ExprPtr right) {
    return std::make_shared<HoleExpr>(
        HoleExpr{HoleExpr::Kind::NodeL, "", label, std::move(sub), nullptr, std::move(right)});
}

HExprPtr hx_node_r(const std::string& label, ExprPtr left, HExprPtr sub) {
    return std::make_shared<HoleExpr>(
        HoleExpr{HoleExpr::Kind::NodeR, "", label, std::move(sub), nullptr, std::move(left)});
}

HExprPtr hx_compose(HExprPtr outer, HExprPtr inner) {
    return std::make_shared<HoleExpr>(
        HoleExpr{HoleExpr::Kind::Compose, "", "", std::move(outer), std::move(inner), nullptr});
}

std::string show_expr(const ExprPtr& e) {
    switch (e->kind) {
        case TreeExpr::Kind::Leaf: return "()";
        case TreeExpr::Kind::Var: return e->name;
        case TreeExpr::Kind::Node:
            return e->label + "(" + show_expr(e->e1) + "," + show_expr(e->e2) + ")";
        case TreeExpr::Kind::Plug: return show_hexpr(e->h) + "[" + show_expr(e->e1) + "]";
    }
    return "";
}

std::string show_hexpr(const HExprPtr& h) {
    switch (h->kind) {
        case HoleExpr::Kind::Hole: return "box";
        case HoleExpr::Kind::Var: return h->name;
        case HoleExpr::Kind::NodeL:
            return h->label + "(" + show_hexpr(h->h1) + "," + show_expr(h->e) + ")";
        case HoleExpr::Kind::NodeR:
            return h->label + "(" + show_expr(h->e) + "," + show_hexpr(h->h1) + ")";
        case HoleExpr::Kind::Compose: return show_hexpr(h->h1) + "[" + show_hexpr(h->h2) + "]";
    }
    return "";
}

TreePtr eval_expr(const ExprPtr& e, const TreeEnv& rho, const HoleEnv& rho2, const Alphabet& sigma) {
    switch (e->kind) {
        case TreeExpr::Kind::Leaf: return leaf();
        case TreeExpr::Kind::Var: {
            auto it = rho.find(e->name);
            if (it == rho.end()) throw InputError("eval_expr: unbound tree variable " + e->name);
            return it->second;
        }
        case TreeExpr::Kind::Node: {
            if (!sigma.contains(e->label))
                throw InputError("eval_expr: label '" + e->label + "' not in alphabet");
            return node(e->label, eval_expr(e->e1, rho, rho2, sigma), eval_expr(e->e2, rho, rho2, sigma));
        }
        case TreeExpr::Kind::Plug:
            return hole_subst(eval_hole_expr(e->h, rho, rho2, sigma), eval_expr(e->e1, rho, rho2, sigma));
    }
    throw InputError("eval_expr: bad expression");
}

HolePtr eval_hole_expr(const HExprPtr& h, const TreeEnv& rho, const HoleEnv& rho2, const Alphabet& sigma) {
    switch (h->kind) {
        case HoleExpr::Kind::Hole: return hole();
        case HoleExpr::Kind::Var: {
            auto it = rho2.find(h->name);
            if (it == rho2.end()) throw InputError("eval_hole_expr: unbound hole variable " + h->name);
            return it->second;
        }
        case HoleExpr::Kind::NodeL: {
            if (!sigma.contains(h->label))
                throw InputError("eval_hole_expr: label '" + h->label + "' not in alphabet");
            return node_l(h->label, eval_hole_expr(h->h1, rho, rho2, sigma), eval_expr(h->e, rho, rho2, sigma));
        }
        case HoleExpr::Kind::NodeR: {
            if (!sigma.contains(h->label))
                throw InputError("eval_hole_expr: label '" + h->label + "' not in alphabet");
            return node_r(h->label, eval_expr(h->e, rho, rho2, sigma), eval_hole_expr(h->h1, rho, rho2, sigma));
        }
        case HoleExpr::Kind::Compose:
            return hole_compose(eval_hole_expr(h->h1, rho, rho2, sigma),
                                eval_hole_expr(h->h2, rho, rho2, sigma));
    }
    throw InputError("eval_hole_expr: bad expression");
}

void expr_var_occurrences(const ExprPtr& e, std::vector<std::string>& out) {
    switch (e->kind) {
        case TreeExpr::Kind::Leaf: return;
        case TreeExpr::Kind::Var: out.push_back(e->name); return;
        case TreeExpr::Kind::Node:
            expr_var_occurrences(e->e1, out);
            expr_var_occurrences(e->e2, out);
            return;
        case TreeExpr::Kind::Plug:
            hexpr_var_occurrences(e->h, out);
            expr_var_occurrences(e->e1, out);
            return;
    }
}

void hexpr_var_occurrences(const HExprPtr& h, std::vector<std::string>& out) {
    switch (h->kind) {
        case HoleExpr::Kind::Hole: return;
        case HoleExpr::Kind::Var: out.push_back(h->name); return;
        case HoleExpr::Kind::NodeL:
            hexpr_var_occurrences(h->h1, out);
            expr_var_occurrences(h->e, out);
            return;
        case HoleExpr::Kind::NodeR:
            expr_var_occurrences(h->e, out);
            hexpr_var_occurrences(h->h1, out);
            return;
        case HoleExpr::Kind::Compose:
            hexpr_var_occurrences(h->h1, out);
            hexpr_var_occurrences(h->h2, out);
            return;
    }
}

// -------- RTT running --------

std::string tag_left(const std::string& reg) { return reg + "<"; }
std::string tag_right(const std::string& reg) { return reg + ">"; }

std::pair<std::string, char> split_tag(const std::string& var) {
    if (var.size() < 2 || (var.back() != '<' && var.back() != '>'))
        throw InputError("expected side-tagged register, got '" + var + "'");
    return {var.substr(0, var.size() - 1), var.back()};
}

namespace {
void check_var_kinds_expr(const Rtt& m, const ExprPtr& e, bool tagged, const std::string& where);
void check_var_kinds_hexpr(const Rtt& m, const HExprPtr& h, bool tagged, const std::string& where);

std::string base_of(const std::string& v, bool tagged) {
    return tagged ? split_tag(v).first : v;
}

void check_var_kinds_expr(const Rtt& m, const ExprPtr& e, bool tagged, const std::string& where) {
    switch (e->kind) {
        case TreeExpr::Kind::Leaf: return;
        case TreeExpr::Kind::Var: {
            std::string b = base_of(e->name, tagged);
            if (std::find(m.tree_regs.begin(), m.tree_regs.end(), b) == m.tree_regs.end())
                throw ValidityError(where + ": '" + e->name + "' is not a tree register");
            return;
        }
        case TreeExpr::Kind::Node:
            if (!m.output.contains(e->label))
                throw ValidityError(where + ": label '" + e->label + "' not in output alphabet");
            check_var_kinds_expr(m, e->e1, tagged, where);
            check_var_kinds_expr(m, e->e2, tagged, where);
            return;
        case TreeExpr::Kind::Plug:
            check_var_kinds_hexpr(m, e->h, tagged, where);
            check_var_kinds_expr(m, e->e1, tagged, where);
            return;
    }
}

void check_var_kinds_hexpr(const Rtt& m, const HExprPtr& h, bool tagged, const std::string& where) {
    switch (h->kind) {
        case HoleExpr::Kind::Hole: return;
        case HoleExpr::Kind::Var: {
            std::string b = base_of(h->name, tagged);
            if (std::find(m.hole_regs.begin(), m.hole_regs.end(), b) == m.hole_regs.end())
                throw ValidityError(where + ": '" + h->name + "' is not a hole register");
            return;
        }
        case HoleExpr::Kind::NodeL:
        case HoleExpr::Kind::NodeR:
            if (!m.output.contains(h->label))
                throw ValidityError(where + ": label '" + h->label + "' not in output alphabet");
            check_var_kinds_hexpr(m, h->h1, tagged, where);
            check_var_kinds_expr(m, h->e, tagged, where);
            return;
        case HoleExpr::Kind::Compose:
            check_var_kinds_hexpr(m, h->h1, tagged, where);
            check_var_kinds_hexpr(m, h->h2, tagged, where);
            return;
    }
}
}  // namespace

void validate_rtt(const Rtt& m) {
    if (m.states.empty()) throw ValidityError(m.name + ": no states");
    if (std::find(m.states.begin(), m.states.end(), m.initial) == m.states.end())
        throw ValidityError(m.name + ": initial state not declared");
    for (const auto& r : m.tree_regs)
        if (std::find(m.hole_regs.begin(), m.hole_regs.end(), r) != m.hole_regs.end())
            throw ValidityError(m.name + ": register '" + r + "' declared as both tree and hole");
    for (const auto& ql : m.states)
        for (const auto& qr : m.states)
            for (const auto& a : m.input.symbols()) {
                auto it = m.delta.find({ql, qr, a});
                if (it == m.delta.end())
                    throw ValidityError(m.name + ": delta not total at (" + ql + "," + qr + "," + a + ")");
                const RttUpdate& u = it->second;
                std::string where = m.name + ": delta(" + ql + "," + qr + "," + a + ")";
                if (std::find(m.states.begin(), m.states.end(), u.next) == m.states.end())
                    throw ValidityError(where + ": unknown target state " + u.next);
                for (const auto& r : m.tree_regs) {
                    auto e = u.tree.find(r);
                    if (e == u.tree.end()) throw ValidityError(where + ": no update for register " + r);
                    check_var_kinds_expr(m, e->second, true, where);
                }
                for (const auto& r : m.hole_regs) {
                    auto e = u.hole.find(r);
                    if (e == u.hole.end()) throw ValidityError(where + ": no update for hole register " + r);
                    check_var_kinds_hexpr(m, e->second, true, where);
                }
            }
    for (const auto& q : m.states) {
        auto it = m.out.find(q);
        if (it == m.out.end()) throw ValidityError(m.name + ": no output expression for state " + q);
        check_var_kinds_expr(m, it->second, false, m.name + ": out " + q);
    }
}

RttConfig rtt_fold(const Rtt& m, const TreePtr& t) {
    if (is_leaf(t)) {
        RttConfig c;
        c.state = m.initial;
        for (const auto& r : m.tree_regs) c.trees[r] = leaf();
        for (const auto& r : m.hole_regs) c.holes[r] = hole();
        return c;
    }
    RttConfig cl = rtt_fold(m, t->left);
    RttConfig cr = rtt_fold(m, t->right);
    auto it = m.delta.find({cl.state, cr.state, t->label});
    if (it == m.delta.end())
        throw ValidityError(m.name + ": delta undefined at (" + cl.state + "," + cr.state + "," +
                            t->label + ")");
    const RttUpdate& u = it->second;
    TreeEnv rho;
    HoleEnv rho2;
    for (const auto& r : m.tree_regs) {
        rho[tag_left(r)] = cl.trees.at(r);
        rho[tag_right(r)] = cr.trees.at(r);
    }
    for (const auto& r : m.hole_regs) {
        rho2[tag_left(r)] = cl.holes.at(r);
        rho2[tag_right(r)] = cr.holes.at(r);
    }
    RttConfig c;
    c.state = u.next;
    for (const auto& r : m.tree_regs) c.trees[r] = eval_expr(u.tree.at(r), rho, rho2, m.output);
    for (const auto& r : m.hole_regs) c.holes[r] = eval_hole_expr(u.hole.at(r), rho, rho2, m.output);
    return c;
}

TreePtr run_rtt(const Rtt& m, const TreePtr& t) {
    RttConfig c = rtt_fold(m, t);
    auto it = m.out.find(c.state);
    if (it == m.out.end()) throw ValidityError(m.name + ": no output expression for state " + c.state);
    return eval_expr(it->second, c.trees, c.holes, m.output);
}

// -------- conflicts --------

ConflictRelation::ConflictRelation(std::vector<std::string> carrier,
                                   std::vector<std::pair<std::string, std::string>> pairs)
    : carrier_(std::move(carrier)) {
    std::set<std::string> in_carrier(carrier_.begin(), carrier_.end());
    if (in_carrier.size() != carrier_.size()) throw InputError("conflict relation: duplicate carrier entry");
    for (auto& [a, b] : pairs) {
        if (!in_carrier.count(a) || !in_carrier.count(b))
            throw InputError("conflict relation: pair element not in carrier");
        if (a == b) continue;  // reflexivity is implicit
        pairs_.insert({std::min(a, b), std::max(a, b)});
    }
}

bool ConflictRelation::conflicts(const std::string& a, const std::string& b) const {
    if (a == b) return true;
    return pairs_.count({std::min(a, b), std::max(a, b)}) > 0;
}

ConsistencyReport check_consistency(const ExprPtr& e, const ConflictRelation& rel) {
    std::vector<std::string> occ;
    expr_var_occurrences(e, occ);
    ConsistencyReport rep;
    std::set<std::string> seen;
    for (const auto& v : occ)
        if (!seen.insert(v).second) {
            rep.ok = false;
            rep.violations.push_back("variable " + v + " occurs more than once");
        }
    for (auto i = seen.begin(); i != seen.end(); ++i)
        for (auto j = std::next(i); j != seen.end(); ++j)
            if (rel.conflicts(*i, *j)) {
                rep.ok = false;
                rep.violations.push_back("conflicting variables " + *i + " and " + *j);
            }
    return rep;
}

ConsistencyReport check_consistency_hole(const HExprPtr& h, const ConflictRelation& rel) {
    std::vector<std::string> occ;
    hexpr_var_occurrences(h, occ);
    ConsistencyReport rep;
    std::set<std::string> seen;
    for (const auto& v : occ)
        if (!seen.insert(v).second) {
            rep.ok = false;
            rep.violations.push_back("variable " + v + " occurs more than once");
        }
    for (auto i = seen.begin(); i != seen.end(); ++i)
        for (auto j = std::next(i); j != seen.end(); ++j)
            if (rel.conflicts(*i, *j)) {
                rep.ok = false;
                rep.violations.push_back("conflicting variables " + *i + " and " + *j);
            }
    return rep;
}

std::vector<std::vector<std::string>> nonconflicting_subsets(const ConflictRelation& rel) {
    const auto& xs = rel.carrier();
    if (xs.size() > 16)
        throw InputError("nonconflicting_subsets: carrier larger than 16 registers");
    std::vector<std::vector<std::string>> out;
    for (std::uint32_t mask = 0; mask < (1u << xs.size()); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i < xs.size() && ok; ++i)
            if (mask & (1u << i))
                for (std::size_t j = i + 1; j < xs.size() && ok; ++j)
                    if ((mask & (1u << j)) && rel.conflicts(xs[i], xs[j])) ok = false;
        if (!ok) continue;
        std::vector<std::string> subset;
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (mask & (1u << i)) subset.push_back(xs[i]);
        out.push_back(std::move(subset));
    }
    return out;
}

namespace {
// conflict on side-tagged names: same side and conflicting bases;
// never across sides
bool tagged_conflicts(const ConflictRelation& rel, const std::string& a, const std::string& b) {
    auto [ba, sa] = split_tag(a);
    auto [bb, sb] = split_tag(b);
    if (sa != sb) return false;
    if (a == b) return true;
    return rel.conflicts(ba, bb);
}

std::vector<std::string> update_occurrences(const Rtt& m, const RttUpdate& u, const std::string& y) {
    std::vector<std::string> occ;
    if (std::find(m.tree_regs.begin(), m.tree_regs.end(), y) != m.tree_regs.end())
        expr_var_occurrences(u.tree.at(y), occ);
    else
        hexpr_var_occurrences(u.hole.at(y), occ);
    return occ;
}

std::string delta_name(const std::tuple<std::string, std::string, std::string>& k) {
    return "delta(" + std::get<0>(k) + "," + std::get<1>(k) + "," + std::get<2>(k) + ")";
}
}  // namespace

ConsistencyReport check_brtt(const Brtt& m) {
    ConsistencyReport rep;
    const Rtt& r = m.rtt;
    for (const auto& [q, e] : r.out) {
        ConsistencyReport c = check_consistency(e, m.conflict);
        if (!c.ok) {
            rep.ok = false;
            for (const auto& v : c.violations) rep.violations.push_back("out " + q + ": " + v);
        }
    }
    auto subsets = nonconflicting_subsets(m.conflict);
    for (const auto& [key, u] : r.delta) {
        // linearity of each update expression
        std::vector<std::string> regs = r.tree_regs;
        regs.insert(regs.end(), r.hole_regs.begin(), r.hole_regs.end());
        for (const auto& y : regs) {
            std::vector<std::string> occ = update_occurrences(r, u, y);
            std::set<std::string> seen;
            for (const auto& v : occ)
                if (!seen.insert(v).second) {
                    rep.ok = false;
                    rep.violations.push_back(delta_name(key) + ": update of " + y + " uses " + v +
                                             " more than once");
                }
        }
        for (const auto& P : subsets) {
            std::set<std::string> unionset;
            bool disjoint = true;
            for (const auto& y : P) {
                std::vector<std::string> occ = update_occurrences(r, u, y);
                for (const auto& v : occ)
                    if (!unionset.insert(v).second) disjoint = false;
            }
            if (!disjoint) {
                rep.ok = false;
                std::string ps;
                for (const auto& y : P) ps += (ps.empty() ? "" : ",") + y;
                rep.violations.push_back(delta_name(key) + ": updates of {" + ps +
                                         "} share a source register");
                continue;
            }
            for (auto i = unionset.begin(); i != unionset.end(); ++i)
                for (auto j = std::next(i); j != unionset.end(); ++j)
                    if (tagged_conflicts(m.conflict, *i, *j)) {
                        rep.ok = false;
                        std::string ps;
                        for (const auto& y : P) ps += (ps.empty() ? "" : ",") + y;
                        rep.violations.push_back(delta_name(key) + ": sources " + *i + " and " + *j +
                                                 " conflict for subset {" + ps + "}");
                    }
        }
    }
    return rep;
}

ConsistencyReport check_brtt_original(const Brtt& m) {
    ConsistencyReport rep;
    const Rtt& r = m.rtt;
    for (const auto& [q, e] : r.out) {
        ConsistencyReport c = check_consistency(e, m.conflict);
        if (!c.ok) {
            rep.ok = false;
            for (const auto& v : c.violations) rep.violations.push_back("out " + q + ": " + v);
        }
    }
    std::vector<std::string> regs = r.tree_regs;
    regs.insert(regs.end(), r.hole_regs.begin(), r.hole_regs.end());
    for (const auto& [key, u] : r.delta) {
        // each update expression consistent wrt the side-tagged relation
        for (const auto& y : regs) {
            std::vector<std::string> occ = update_occurrences(r, u, y);
            std::set<std::string> seen;
            for (const auto& v : occ)
                if (!seen.insert(v).second) {
                    rep.ok = false;
                    rep.violations.push_back(delta_name(key) + ": update of " + y + " uses " + v +
                                             " more than once");
                }
            for (auto i = seen.begin(); i != seen.end(); ++i)
                for (auto j = std::next(i); j != seen.end(); ++j)
                    if (tagged_conflicts(m.conflict, *i, *j)) {
                        rep.ok = false;
                        rep.violations.push_back(delta_name(key) + ": update of " + y +
                                                 " reads conflicting sources " + *i + " and " + *j);
                    }
        }
        // conflicting sources on the same side force conflicting targets
        for (std::size_t i = 0; i < regs.size(); ++i)
            for (std::size_t j = i + 1; j < regs.size(); ++j) {
                const std::string& y1 = regs[i];
                const std::string& y2 = regs[j];
                if (m.conflict.conflicts(y1, y2)) continue;
                std::vector<std::string> occ1 = update_occurrences(r, u, y1);
                std::vector<std::string> occ2 = update_occurrences(r, u, y2);
                for (const auto& v1 : occ1)
                    for (const auto& v2 : occ2)
                        if (tagged_conflicts(m.conflict, v1, v2)) {
                            rep.ok = false;
                            rep.violations.push_back(delta_name(key) + ": " + y1 + " and " + y2 +
                                                     " both read " + v1 + "/" + v2 +
                                                     " but do not conflict");
                        }
            }
    }
    return rep;
}

}  // namespace ltc::trees
