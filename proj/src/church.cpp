#include "ltc/church.hpp"

#include <algorithm>

namespace ltc::church {

using namespace ltc::stlc;

TypePtr str_type(const Alphabet& sigma) {
    TypePtr o = t_base();
    TypePtr oo = t_arrow(o, o);
    std::vector<TypePtr> args(sigma.size(), oo);
    return t_arrows(args, oo);
}

TypePtr nat_type() {
    TypePtr o = t_base();
    return t_arrow(t_arrow(o, o), t_arrow(o, o));
}

TypePtr bool_type() {
    TypePtr o = t_base();
    return t_arrow(o, t_arrow(o, o));
}

TypePtr tree_type(const Alphabet& sigma) {
    TypePtr o = t_base();
    TypePtr ooo = t_arrow(o, t_arrow(o, o));
    std::vector<TypePtr> args(sigma.size(), ooo);
    return t_arrows(args, t_arrow(o, o));
}

TypePtr dtree_type(const Alphabet& sigma) {
    TypePtr bt = tree_type(sigma);
    return t_arrow(bt, bt);
}

std::string letter_var(const std::string& symbol) { return "f_" + symbol; }
std::string node_var(const std::string& symbol) { return "n_" + symbol; }

TermPtr encode_string(const Word& w, const Alphabet& sigma) {
    if (sigma.size() == 0) throw InputError("encode_string: empty alphabet");
    require_word_in(w, sigma, "encode_string");
    TermPtr body = mk_var("x");
    for (auto it = w.rbegin(); it != w.rend(); ++it) body = mk_app(mk_var(letter_var(*it)), body);
    std::vector<std::string> binders;
    for (const auto& s : sigma.symbols()) binders.push_back(letter_var(s));
    binders.push_back("x");
    return mk_abss(binders, body);
}

TermPtr encode_bool(bool b) {
    return mk_abs("x", mk_abs("y", mk_var(b ? "x" : "y")));
}

namespace {
TermPtr encode_tree_body(const trees::TreePtr& t, const Alphabet& sigma) {
    if (trees::is_leaf(t)) return mk_var("x");
    if (!sigma.contains(t->label))
        throw InputError("encode_tree: label '" + t->label + "' not in alphabet");
    return mk_apps(mk_var(node_var(t->label)),
                   {encode_tree_body(t->left, sigma), encode_tree_body(t->right, sigma)});
}
}  // namespace

TermPtr encode_tree(const trees::TreePtr& t, const Alphabet& sigma) {
    std::vector<std::string> binders;
    for (const auto& s : sigma.symbols()) binders.push_back(node_var(s));
    binders.push_back("x");
    return mk_abss(binders, encode_tree_body(t, sigma));
}

namespace {

// Peels up to `want` leading abstractions from a beta-normal term, renaming
// shadowed binders apart and eta-expanding when fewer are present. Returns
// the distinct binder names and the (still normal) body.
std::pair<std::vector<std::string>, TermPtr> peel_binders(TermPtr t, std::size_t want) {
    std::vector<std::string> names;
    std::set<std::string> used;
    while (names.size() < want && t->kind == TermKind::Abs) {
        std::string n = t->name;
        TermPtr body = t->t1;
        if (used.count(n)) {
            std::set<std::string> avoid = used;
            for (const auto& v : free_vars(body)) avoid.insert(v);
            std::string fresh = fresh_name(n, avoid);
            body = substitute(body, n, mk_var(fresh));
            n = fresh;
        }
        names.push_back(n);
        used.insert(n);
        t = body;
    }
    if (names.size() < want) {
        std::set<std::string> avoid = used;
        for (const auto& v : free_vars(t)) avoid.insert(v);
        std::vector<TermPtr> extra;
        while (names.size() < want) {
            std::string fresh = fresh_name("v", avoid);
            avoid.insert(fresh);
            names.push_back(fresh);
            used.insert(fresh);
            extra.push_back(mk_var(fresh));
        }
        t = mk_apps(t, extra);
    }
    return {names, t};
}

// spine view: head variable plus arguments, left to right
std::pair<TermPtr, std::vector<TermPtr>> spine(TermPtr t) {
    std::vector<TermPtr> args;
    while (t->kind == TermKind::App) {
        args.push_back(t->t2);
        t = t->t1;
    }
    std::reverse(args.begin(), args.end());
    return {t, args};
}

}  // namespace

Word decode_string(const TermPtr& t, const Alphabet& sigma, std::uint64_t fuel) {
    if (sigma.size() == 0) throw InputError("decode_string: empty alphabet");
    TermPtr n = beta_normalize(t, fuel);
    auto [names, body] = peel_binders(n, sigma.size() + 1);
    std::map<std::string, std::size_t> letter;
    for (std::size_t i = 0; i < sigma.size(); ++i) letter[names[i]] = i;
    const std::string& end = names.back();

    Word w;
    TermPtr cur = body;
    for (;;) {
        auto [head, args] = spine(cur);
        if (head->kind != TermKind::Var)
            throw DecodeError("not a string encoding: abstraction inside the spine");
        if (head->name == end) {
            if (!args.empty()) throw DecodeError("not a string encoding: applied string tail");
            return w;
        }
        auto it = letter.find(head->name);
        if (it == letter.end())
            throw DecodeError("not a string encoding: free variable " + head->name);
        if (args.size() != 1)
            throw DecodeError("not a string encoding: letter applied to " +
                              std::to_string(args.size()) + " arguments");
        w.push_back(sigma.at(it->second));
        cur = args[0];
    }
}

bool decode_bool(const TermPtr& t, std::uint64_t fuel) {
    TermPtr n = beta_normalize(t, fuel);
    if (alpha_equal(n, encode_bool(true))) return true;
    if (alpha_equal(n, encode_bool(false))) return false;
    throw DecodeError("not a boolean encoding: " + show_term(n));
}

namespace {
trees::TreePtr decode_tree_body(const TermPtr& cur, const std::map<std::string, std::size_t>& ctor,
                                const std::string& end, const Alphabet& sigma) {
    auto [head, args] = spine(cur);
    if (head->kind != TermKind::Var)
        throw DecodeError("not a tree encoding: abstraction inside the spine");
    if (head->name == end) {
        if (!args.empty()) throw DecodeError("not a tree encoding: applied leaf");
        return trees::leaf();
    }
    auto it = ctor.find(head->name);
    if (it == ctor.end()) throw DecodeError("not a tree encoding: free variable " + head->name);
    if (args.size() != 2)
        throw DecodeError("not a tree encoding: node applied to " + std::to_string(args.size()) +
                          " arguments");
    return trees::node(sigma.at(it->second), decode_tree_body(args[0], ctor, end, sigma),
                       decode_tree_body(args[1], ctor, end, sigma));
}
}  // namespace

trees::TreePtr decode_tree(const TermPtr& t, const Alphabet& sigma, std::uint64_t fuel) {
    TermPtr n = beta_normalize(t, fuel);
    auto [names, body] = peel_binders(n, sigma.size() + 1);
    std::map<std::string, std::size_t> ctor;
    for (std::size_t i = 0; i < sigma.size(); ++i) ctor[names[i]] = i;
    return decode_tree_body(body, ctor, names.back(), sigma);
}

}  // namespace ltc::church
