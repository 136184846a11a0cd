#include "ltc/eal.hpp"

#include <algorithm>
#include <cctype>

#include "ltc/stlc.hpp"

namespace ltc::eal {

using stlc::fresh_name;

// -------- constructors --------

TermPtr e_var(const std::string& name) {
    return std::make_shared<EalTerm>(EalTerm{TermKind::Var, name, nullptr, nullptr});
}

TermPtr e_abs(const std::string& binder, TermPtr body) {
    return std::make_shared<EalTerm>(EalTerm{TermKind::Abs, binder, std::move(body), nullptr});
}

TermPtr e_bang_abs(const std::string& binder, TermPtr body) {
    return std::make_shared<EalTerm>(EalTerm{TermKind::BangAbs, binder, std::move(body), nullptr});
}

TermPtr e_app(TermPtr fn, TermPtr arg) {
    return std::make_shared<EalTerm>(EalTerm{TermKind::App, "", std::move(fn), std::move(arg)});
}

TermPtr e_apps(TermPtr fn, const std::vector<TermPtr>& args) {
    TermPtr t = std::move(fn);
    for (const TermPtr& a : args) t = e_app(t, a);
    return t;
}

TermPtr e_bang(TermPtr body) {
    return std::make_shared<EalTerm>(EalTerm{TermKind::Bang, "", std::move(body), nullptr});
}

// -------- traversals --------

namespace {
void free_vars_rec(const TermPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (t->kind) {
        case TermKind::Var:
            if (!bound.count(t->name)) out.insert(t->name);
            return;
        case TermKind::Abs:
        case TermKind::BangAbs: {
            bool fresh_here = bound.insert(t->name).second;
            free_vars_rec(t->t1, bound, out);
            if (fresh_here) bound.erase(t->name);
            return;
        }
        case TermKind::App:
            free_vars_rec(t->t1, bound, out);
            free_vars_rec(t->t2, bound, out);
            return;
        case TermKind::Bang:
            free_vars_rec(t->t1, bound, out);
            return;
    }
}

void all_vars_rec(const TermPtr& t, std::set<std::string>& out) {
    switch (t->kind) {
        case TermKind::Var:
            out.insert(t->name);
            return;
        case TermKind::Abs:
        case TermKind::BangAbs:
            out.insert(t->name);
            all_vars_rec(t->t1, out);
            return;
        case TermKind::App:
            all_vars_rec(t->t1, out);
            all_vars_rec(t->t2, out);
            return;
        case TermKind::Bang:
            all_vars_rec(t->t1, out);
            return;
    }
}
}  // namespace

std::set<std::string> free_vars(const TermPtr& t) {
    std::set<std::string> bound, out;
    free_vars_rec(t, bound, out);
    return out;
}

std::set<std::string> all_vars(const TermPtr& t) {
    std::set<std::string> out;
    all_vars_rec(t, out);
    return out;
}

std::size_t term_size(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var:
            return 1;
        case TermKind::Abs:
        case TermKind::BangAbs:
        case TermKind::Bang:
            return 1 + term_size(t->t1);
        case TermKind::App:
            return 1 + term_size(t->t1) + term_size(t->t2);
    }
    return 0;
}

std::size_t bang_depth(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var:
            return 0;
        case TermKind::Abs:
        case TermKind::BangAbs:
            return bang_depth(t->t1);
        case TermKind::App:
            return std::max(bang_depth(t->t1), bang_depth(t->t2));
        case TermKind::Bang:
            return 1 + bang_depth(t->t1);
    }
    return 0;
}

// -------- alpha equivalence --------

namespace {
using NameMap = std::map<std::string, int>;

bool alpha_rec(const TermPtr& a, const TermPtr& b, NameMap& ma, NameMap& mb, int& next) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case TermKind::Var: {
            auto ia = ma.find(a->name), ib = mb.find(b->name);
            if (ia != ma.end() || ib != mb.end())
                return ia != ma.end() && ib != mb.end() && ia->second == ib->second;
            return a->name == b->name;
        }
        case TermKind::Abs:
        case TermKind::BangAbs: {
            int id = next++;
            auto olda = ma.find(a->name) == ma.end() ? -1 : ma[a->name];
            auto oldb = mb.find(b->name) == mb.end() ? -1 : mb[b->name];
            ma[a->name] = id;
            mb[b->name] = id;
            bool ok = alpha_rec(a->t1, b->t1, ma, mb, next);
            if (olda < 0) ma.erase(a->name); else ma[a->name] = olda;
            if (oldb < 0) mb.erase(b->name); else mb[b->name] = oldb;
            return ok;
        }
        case TermKind::App:
            return alpha_rec(a->t1, b->t1, ma, mb, next) && alpha_rec(a->t2, b->t2, ma, mb, next);
        case TermKind::Bang:
            return alpha_rec(a->t1, b->t1, ma, mb, next);
    }
    return false;
}
}  // namespace

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
    NameMap ma, mb;
    int next = 0;
    return alpha_rec(a, b, ma, mb, next);
}

// -------- substitution --------

namespace {
bool occurs_free(const TermPtr& t, const std::string& x) {
    switch (t->kind) {
        case TermKind::Var:
            return t->name == x;
        case TermKind::Abs:
        case TermKind::BangAbs:
            return t->name != x && occurs_free(t->t1, x);
        case TermKind::App:
            return occurs_free(t->t1, x) || occurs_free(t->t2, x);
        case TermKind::Bang:
            return occurs_free(t->t1, x);
    }
    return false;
}

TermPtr mk_binder(TermKind k, const std::string& name, TermPtr body) {
    return k == TermKind::Abs ? e_abs(name, std::move(body)) : e_bang_abs(name, std::move(body));
}

TermPtr subst_rec(const TermPtr& t, const std::string& x, const TermPtr& u,
                  const std::set<std::string>& fv_u) {
    switch (t->kind) {
        case TermKind::Var:
            return t->name == x ? u : t;
        case TermKind::Abs:
        case TermKind::BangAbs: {
            if (t->name == x) return t;
            if (fv_u.count(t->name) && occurs_free(t->t1, x)) {
                std::set<std::string> avoid = fv_u;
                avoid.insert(x);
                all_vars_rec(t->t1, avoid);
                std::string y = fresh_name(t->name, avoid);
                TermPtr renamed = subst_rec(t->t1, t->name, e_var(y), {y});
                return mk_binder(t->kind, y, subst_rec(renamed, x, u, fv_u));
            }
            return mk_binder(t->kind, t->name, subst_rec(t->t1, x, u, fv_u));
        }
        case TermKind::App:
            return e_app(subst_rec(t->t1, x, u, fv_u), subst_rec(t->t2, x, u, fv_u));
        case TermKind::Bang:
            return e_bang(subst_rec(t->t1, x, u, fv_u));
    }
    return t;
}
}  // namespace

TermPtr substitute(const TermPtr& t, const std::string& name, const TermPtr& u) {
    return subst_rec(t, name, u, free_vars(u));
}

// -------- reduction --------

std::optional<TermPtr> beta_step(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var:
            return std::nullopt;
        case TermKind::Abs:
        case TermKind::BangAbs: {
            if (auto b = beta_step(t->t1)) return mk_binder(t->kind, t->name, *b);
            return std::nullopt;
        }
        case TermKind::Bang: {
            if (auto b = beta_step(t->t1)) return e_bang(*b);
            return std::nullopt;
        }
        case TermKind::App: {
            if (t->t1->kind == TermKind::Abs)
                return substitute(t->t1->t1, t->t1->name, t->t2);
            // the non-linear redex waits for a bang-headed argument
            if (t->t1->kind == TermKind::BangAbs && t->t2->kind == TermKind::Bang)
                return substitute(t->t1->t1, t->t1->name, t->t2->t1);
            if (auto f = beta_step(t->t1)) return e_app(*f, t->t2);
            if (auto a = beta_step(t->t2)) return e_app(t->t1, *a);
            return std::nullopt;
        }
    }
    return std::nullopt;
}

namespace {
struct Budget {
    std::uint64_t left;
    void spend() {
        if (left == 0) throw FuelExhausted("beta_normalize: fuel exhausted");
        --left;
    }
};

TermPtr whnf(TermPtr t, Budget& b);

// Weak head normal form. A \!x redex fires only after its argument's head
// stabilizes to a bang; head constructors are stable under further reduction,
// so a non-bang whnf head means the application is permanently stuck.
TermPtr whnf(TermPtr t, Budget& b) {
    std::vector<TermPtr> args;  // back() = innermost (next-consumed) argument
    for (;;) {
        while (t->kind == TermKind::App) {
            args.push_back(t->t2);
            t = t->t1;
        }
        if (t->kind == TermKind::Abs && !args.empty()) {
            b.spend();
            TermPtr arg = args.back();
            args.pop_back();
            t = substitute(t->t1, t->name, arg);
            continue;
        }
        if (t->kind == TermKind::BangAbs && !args.empty()) {
            TermPtr arg = whnf(args.back(), b);
            if (arg->kind == TermKind::Bang) {
                b.spend();
                args.pop_back();
                t = substitute(t->t1, t->name, arg->t1);
                continue;
            }
            args.back() = arg;
        }
        break;
    }
    for (auto it = args.rbegin(); it != args.rend(); ++it) t = e_app(t, *it);
    return t;
}

TermPtr nf(const TermPtr& t, Budget& b) {
    TermPtr w = whnf(t, b);
    switch (w->kind) {
        case TermKind::Var:
            return w;
        case TermKind::Abs:
        case TermKind::BangAbs:
            return mk_binder(w->kind, w->name, nf(w->t1, b));
        case TermKind::Bang:
            return e_bang(nf(w->t1, b));
        case TermKind::App:
            // stuck spine: variable head or a \!x waiting forever
            return e_app(nf(w->t1, b), nf(w->t2, b));
    }
    return w;
}
}  // namespace

TermPtr beta_normalize(const TermPtr& t, std::uint64_t fuel) {
    Budget b{fuel};
    return nf(t, b);
}

TermPtr beta_normalize_traced(const TermPtr& t, std::uint64_t fuel,
                              const std::function<void(const TermPtr&, const TermPtr&)>& on_step) {
    TermPtr cur = t;
    for (std::uint64_t i = 0; i < fuel; ++i) {
        auto next = beta_step(cur);
        if (!next) return cur;
        if (on_step) on_step(cur, *next);
        cur = *next;
    }
    if (!beta_step(cur)) return cur;
    throw FuelExhausted("beta_normalize_traced: fuel exhausted");
}

// -------- syntactic checks --------

namespace {
std::size_t count_free(const TermPtr& t, const std::string& x) {
    switch (t->kind) {
        case TermKind::Var:
            return t->name == x ? 1 : 0;
        case TermKind::Abs:
        case TermKind::BangAbs:
            return t->name == x ? 0 : count_free(t->t1, x);
        case TermKind::App:
            return count_free(t->t1, x) + count_free(t->t2, x);
        case TermKind::Bang:
            return count_free(t->t1, x);
    }
    return 0;
}

void linearity_rec(const TermPtr& t, CheckReport& r) {
    switch (t->kind) {
        case TermKind::Var:
            return;
        case TermKind::Abs:
            if (count_free(t->t1, t->name) > 1) {
                r.ok = false;
                r.binders.push_back(t->name);
            }
            linearity_rec(t->t1, r);
            return;
        case TermKind::BangAbs:
            linearity_rec(t->t1, r);
            return;
        case TermKind::App:
            linearity_rec(t->t1, r);
            linearity_rec(t->t2, r);
            return;
        case TermKind::Bang:
            linearity_rec(t->t1, r);
            return;
    }
}

// bang depths of x's free occurrences within t, relative to t
void occurrence_depths(const TermPtr& t, const std::string& x, std::size_t d,
                       std::vector<std::size_t>& out) {
    switch (t->kind) {
        case TermKind::Var:
            if (t->name == x) out.push_back(d);
            return;
        case TermKind::Abs:
        case TermKind::BangAbs:
            if (t->name != x) occurrence_depths(t->t1, x, d, out);
            return;
        case TermKind::App:
            occurrence_depths(t->t1, x, d, out);
            occurrence_depths(t->t2, x, d, out);
            return;
        case TermKind::Bang:
            occurrence_depths(t->t1, x, d + 1, out);
            return;
    }
}

void stratification_rec(const TermPtr& t, CheckReport& r) {
    switch (t->kind) {
        case TermKind::Var:
            return;
        case TermKind::Abs:
        case TermKind::BangAbs: {
            std::vector<std::size_t> ds;
            occurrence_depths(t->t1, t->name, 0, ds);
            std::size_t want = t->kind == TermKind::Abs ? 0 : 1;
            if (std::any_of(ds.begin(), ds.end(), [&](std::size_t d) { return d != want; })) {
                r.ok = false;
                r.binders.push_back(t->name);
            }
            stratification_rec(t->t1, r);
            return;
        }
        case TermKind::App:
            stratification_rec(t->t1, r);
            stratification_rec(t->t2, r);
            return;
        case TermKind::Bang:
            stratification_rec(t->t1, r);
            return;
    }
}
}  // namespace

CheckReport check_linearity(const TermPtr& t) {
    CheckReport r;
    linearity_rec(t, r);
    return r;
}

CheckReport check_stratification(const TermPtr& t) {
    CheckReport r;
    stratification_rec(t, r);
    return r;
}

// -------- types --------

TypePtr y_var(const std::string& name) {
    return std::make_shared<EalType>(EalType{TypeKind::Var, name, nullptr, nullptr});
}

TypePtr y_lolli(TypePtr a, TypePtr b) {
    return std::make_shared<EalType>(EalType{TypeKind::Lollipop, "", std::move(a), std::move(b)});
}

TypePtr y_lollis(const std::vector<TypePtr>& args, TypePtr res) {
    TypePtr t = std::move(res);
    for (auto it = args.rbegin(); it != args.rend(); ++it) t = y_lolli(*it, t);
    return t;
}

TypePtr y_forall(const std::string& binder, TypePtr body) {
    return std::make_shared<EalType>(EalType{TypeKind::Forall, binder, std::move(body), nullptr});
}

TypePtr y_bang(TypePtr body) {
    return std::make_shared<EalType>(EalType{TypeKind::Bang, "", std::move(body), nullptr});
}

bool is_linear(const TypePtr& t) { return t->kind != TypeKind::Bang; }

bool is_strictly_linear(const TypePtr& t) {
    return t->kind == TypeKind::Lollipop || t->kind == TypeKind::Forall;
}

namespace {
bool type_alpha_rec(const TypePtr& a, const TypePtr& b, NameMap& ma, NameMap& mb, int& next) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case TypeKind::Var: {
            auto ia = ma.find(a->name), ib = mb.find(b->name);
            if (ia != ma.end() || ib != mb.end())
                return ia != ma.end() && ib != mb.end() && ia->second == ib->second;
            return a->name == b->name;
        }
        case TypeKind::Lollipop:
            return type_alpha_rec(a->t1, b->t1, ma, mb, next) &&
                   type_alpha_rec(a->t2, b->t2, ma, mb, next);
        case TypeKind::Forall: {
            int id = next++;
            auto olda = ma.find(a->name) == ma.end() ? -1 : ma[a->name];
            auto oldb = mb.find(b->name) == mb.end() ? -1 : mb[b->name];
            ma[a->name] = id;
            mb[b->name] = id;
            bool ok = type_alpha_rec(a->t1, b->t1, ma, mb, next);
            if (olda < 0) ma.erase(a->name); else ma[a->name] = olda;
            if (oldb < 0) mb.erase(b->name); else mb[b->name] = oldb;
            return ok;
        }
        case TypeKind::Bang:
            return type_alpha_rec(a->t1, b->t1, ma, mb, next);
    }
    return false;
}

void free_type_vars_rec(const TypePtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (t->kind) {
        case TypeKind::Var:
            if (!bound.count(t->name)) out.insert(t->name);
            return;
        case TypeKind::Lollipop:
            free_type_vars_rec(t->t1, bound, out);
            free_type_vars_rec(t->t2, bound, out);
            return;
        case TypeKind::Forall: {
            bool fresh_here = bound.insert(t->name).second;
            free_type_vars_rec(t->t1, bound, out);
            if (fresh_here) bound.erase(t->name);
            return;
        }
        case TypeKind::Bang:
            free_type_vars_rec(t->t1, bound, out);
            return;
    }
}

void all_type_vars_rec(const TypePtr& t, std::set<std::string>& out) {
    switch (t->kind) {
        case TypeKind::Var:
            out.insert(t->name);
            return;
        case TypeKind::Lollipop:
            all_type_vars_rec(t->t1, out);
            all_type_vars_rec(t->t2, out);
            return;
        case TypeKind::Forall:
            out.insert(t->name);
            all_type_vars_rec(t->t1, out);
            return;
        case TypeKind::Bang:
            all_type_vars_rec(t->t1, out);
            return;
    }
}

bool type_occurs_free(const TypePtr& t, const std::string& x) {
    switch (t->kind) {
        case TypeKind::Var:
            return t->name == x;
        case TypeKind::Lollipop:
            return type_occurs_free(t->t1, x) || type_occurs_free(t->t2, x);
        case TypeKind::Forall:
            return t->name != x && type_occurs_free(t->t1, x);
        case TypeKind::Bang:
            return type_occurs_free(t->t1, x);
    }
    return false;
}

TypePtr type_subst_rec(const TypePtr& t, const std::string& x, const TypePtr& u,
                       const std::set<std::string>& fv_u) {
    switch (t->kind) {
        case TypeKind::Var:
            return t->name == x ? u : t;
        case TypeKind::Lollipop:
            return y_lolli(type_subst_rec(t->t1, x, u, fv_u), type_subst_rec(t->t2, x, u, fv_u));
        case TypeKind::Forall: {
            if (t->name == x) return t;
            if (fv_u.count(t->name) && type_occurs_free(t->t1, x)) {
                std::set<std::string> avoid = fv_u;
                avoid.insert(x);
                all_type_vars_rec(t->t1, avoid);
                std::string y = fresh_name(t->name, avoid);
                TypePtr renamed = type_subst_rec(t->t1, t->name, y_var(y), {y});
                return y_forall(y, type_subst_rec(renamed, x, u, fv_u));
            }
            return y_forall(t->name, type_subst_rec(t->t1, x, u, fv_u));
        }
        case TypeKind::Bang:
            return y_bang(type_subst_rec(t->t1, x, u, fv_u));
    }
    return t;
}
}  // namespace

bool type_alpha_equal(const TypePtr& a, const TypePtr& b) {
    NameMap ma, mb;
    int next = 0;
    return type_alpha_rec(a, b, ma, mb, next);
}

std::set<std::string> free_type_vars(const TypePtr& t) {
    std::set<std::string> bound, out;
    free_type_vars_rec(t, bound, out);
    return out;
}

TypePtr type_substitute(const TypePtr& t, const std::string& name, const TypePtr& repl) {
    return type_subst_rec(t, name, repl, free_type_vars(repl));
}

// -------- text --------

namespace {
struct Lexer {
    enum class Kind { Ident, TVar, Lambda, Bang, Dot, LParen, RParen, Lolli, End };
    struct Tok {
        Kind kind;
        std::string text;
        std::size_t pos;
    };

    explicit Lexer(const std::string& s) : src(s) { advance(); }

    const Tok& peek() const { return tok; }
    Tok take() {
        Tok t = tok;
        advance();
        return t;
    }

private:
    void advance() {
        while (i < src.size()) {
            char c = src[i];
            if (c == '#') {
                while (i < src.size() && src[i] != '\n') ++i;
            } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                ++i;
            } else {
                break;
            }
        }
        std::size_t start = i;
        if (i >= src.size()) {
            tok = {Kind::End, "", start};
            return;
        }
        char c = src[i];
        if (c == '\\') { ++i; tok = {Kind::Lambda, "\\", start}; return; }
        if (c == '!') { ++i; tok = {Kind::Bang, "!", start}; return; }
        if (c == '.') { ++i; tok = {Kind::Dot, ".", start}; return; }
        if (c == '(') { ++i; tok = {Kind::LParen, "(", start}; return; }
        if (c == ')') { ++i; tok = {Kind::RParen, ")", start}; return; }
        if (c == '-' && i + 1 < src.size() && src[i + 1] == 'o') {
            i += 2;
            tok = {Kind::Lolli, "-o", start};
            return;
        }
        if (c == '\'') {
            ++i;
            std::string name = lex_ident_chars();
            if (name.empty()) throw ParseError("expected identifier after ' at offset " + std::to_string(start));
            tok = {Kind::TVar, name, start};
            return;
        }
        if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
            tok = {Kind::Ident, lex_ident_chars(), start};
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "' at offset " + std::to_string(start));
    }

    std::string lex_ident_chars() {
        std::string s;
        while (i < src.size()) {
            char c = src[i];
            if (isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
                s += c;
                ++i;
            } else {
                break;
            }
        }
        return s;
    }

    const std::string& src;
    std::size_t i = 0;
    Tok tok{Kind::End, "", 0};
};

TermPtr parse_term_expr(Lexer& lx);

TermPtr parse_lambda(Lexer& lx) {
    lx.take();  // backslash
    bool bang = false;
    if (lx.peek().kind == Lexer::Kind::Bang) {
        lx.take();
        bang = true;
    }
    auto id = lx.take();
    if (id.kind != Lexer::Kind::Ident) throw ParseError("expected binder after '\\'");
    if (lx.take().kind != Lexer::Kind::Dot) throw ParseError("expected '.' after binder");
    TermPtr body = parse_term_expr(lx);
    return bang ? e_bang_abs(id.text, body) : e_abs(id.text, body);
}

// !t binds tighter than application and reaches only one atom
TermPtr parse_banged_atom(Lexer& lx);

TermPtr parse_term_atom(Lexer& lx) {
    auto& p = lx.peek();
    switch (p.kind) {
        case Lexer::Kind::Ident:
            return e_var(lx.take().text);
        case Lexer::Kind::Bang:
            return parse_banged_atom(lx);
        case Lexer::Kind::LParen: {
            lx.take();
            TermPtr inner = parse_term_expr(lx);
            if (lx.take().kind != Lexer::Kind::RParen) throw ParseError("expected ')'");
            return inner;
        }
        default:
            throw ParseError("expected a term at offset " + std::to_string(p.pos));
    }
}

TermPtr parse_banged_atom(Lexer& lx) {
    lx.take();  // bang
    return e_bang(parse_term_atom(lx));
}

TermPtr parse_term_expr(Lexer& lx) {
    if (lx.peek().kind == Lexer::Kind::Lambda) return parse_lambda(lx);
    TermPtr acc;
    for (;;) {
        auto& p = lx.peek();
        TermPtr atom;
        if (p.kind == Lexer::Kind::Ident || p.kind == Lexer::Kind::Bang ||
            p.kind == Lexer::Kind::LParen) {
            atom = parse_term_atom(lx);
        } else if (p.kind == Lexer::Kind::Lambda) {
            atom = parse_lambda(lx);  // lambda extends to the end: final argument
            acc = acc ? e_app(acc, atom) : atom;
            break;
        } else {
            break;
        }
        acc = acc ? e_app(acc, atom) : atom;
    }
    if (!acc) throw ParseError("expected a term at offset " + std::to_string(lx.peek().pos));
    return acc;
}

TypePtr parse_type_expr(Lexer& lx);

TypePtr parse_type_atom(Lexer& lx) {
    auto t = lx.take();
    switch (t.kind) {
        case Lexer::Kind::TVar:
            return y_var(t.text);
        case Lexer::Kind::Ident: {
            if (t.text != "forall")
                throw ParseError("unknown type name '" + t.text + "' (expected forall)");
            auto v = lx.take();
            if (v.kind != Lexer::Kind::TVar) throw ParseError("expected 'a after forall");
            if (lx.take().kind != Lexer::Kind::Dot) throw ParseError("expected '.' after forall binder");
            return y_forall(v.text, parse_type_expr(lx));
        }
        case Lexer::Kind::LParen: {
            TypePtr inner = parse_type_expr(lx);
            if (lx.take().kind != Lexer::Kind::RParen) throw ParseError("expected ')' in type");
            return inner;
        }
        default:
            throw ParseError("expected a type at offset " + std::to_string(t.pos));
    }
}

TypePtr parse_type_unary(Lexer& lx) {
    if (lx.peek().kind == Lexer::Kind::Bang) {
        lx.take();
        return y_bang(parse_type_unary(lx));
    }
    return parse_type_atom(lx);
}

TypePtr parse_type_expr(Lexer& lx) {
    TypePtr lhs = parse_type_unary(lx);
    if (lx.peek().kind == Lexer::Kind::Lolli) {
        lx.take();
        return y_lolli(lhs, parse_type_expr(lx));
    }
    return lhs;
}
}  // namespace

TermPtr parse_term(const std::string& src) {
    Lexer lx(src);
    TermPtr t = parse_term_expr(lx);
    if (lx.peek().kind != Lexer::Kind::End)
        throw ParseError("trailing input after term at offset " + std::to_string(lx.peek().pos));
    return t;
}

TypePtr parse_type(const std::string& src) {
    Lexer lx(src);
    TypePtr t = parse_type_expr(lx);
    if (lx.peek().kind != Lexer::Kind::End)
        throw ParseError("trailing input after type at offset " + std::to_string(lx.peek().pos));
    return t;
}

namespace {
void show_term_rec(const TermPtr& t, std::string& out, bool fn_pos, bool arg_pos) {
    switch (t->kind) {
        case TermKind::Var:
            out += t->name;
            return;
        case TermKind::Abs:
        case TermKind::BangAbs: {
            bool parens = fn_pos || arg_pos;
            if (parens) out += "(";
            out += t->kind == TermKind::Abs ? "\\" : "\\!";
            out += t->name + ". ";
            show_term_rec(t->t1, out, false, false);
            if (parens) out += ")";
            return;
        }
        case TermKind::App: {
            bool parens = arg_pos;
            if (parens) out += "(";
            show_term_rec(t->t1, out, true, false);
            out += " ";
            show_term_rec(t->t2, out, false, true);
            if (parens) out += ")";
            return;
        }
        case TermKind::Bang:
            out += "!";
            show_term_rec(t->t1, out, false, true);
            return;
    }
}

void show_type_rec(const TypePtr& t, std::string& out, bool left_of_lolli, bool under_bang) {
    switch (t->kind) {
        case TypeKind::Var:
            out += "'" + t->name;
            return;
        case TypeKind::Lollipop: {
            bool parens = left_of_lolli || under_bang;
            if (parens) out += "(";
            show_type_rec(t->t1, out, true, false);
            out += " -o ";
            show_type_rec(t->t2, out, false, false);
            if (parens) out += ")";
            return;
        }
        case TypeKind::Forall: {
            bool parens = left_of_lolli || under_bang;
            if (parens) out += "(";
            out += "forall '" + t->name + ". ";
            show_type_rec(t->t1, out, false, false);
            if (parens) out += ")";
            return;
        }
        case TypeKind::Bang:
            out += "!";
            show_type_rec(t->t1, out, false, true);
            return;
    }
}
}  // namespace

std::string show_term(const TermPtr& t) {
    std::string out;
    show_term_rec(t, out, false, false);
    return out;
}

std::string show_type(const TypePtr& t) {
    std::string out;
    show_type_rec(t, out, false, false);
    return out;
}

// -------- standard types --------

namespace {
std::string pick_name(const std::string& base, const std::set<std::string>& avoid) {
    if (!avoid.count(base)) return base;
    return fresh_name(base, avoid);
}
}  // namespace

TypePtr str_type_at(const Alphabet& sigma, const TypePtr& a) {
    std::vector<TypePtr> args(sigma.size(), y_bang(y_lolli(a, a)));
    return y_lollis(args, y_bang(y_lolli(a, a)));
}

TypePtr str_type(const Alphabet& sigma) {
    return y_forall("a", str_type_at(sigma, y_var("a")));
}

TypePtr fin_type(std::size_t n) {
    std::vector<TypePtr> args(n, y_var("a"));
    return y_forall("a", y_lollis(args, y_var("a")));
}

TypePtr bool_type() { return fin_type(2); }

TypePtr tree_type_at(const Alphabet& sigma, const TypePtr& a) {
    std::vector<TypePtr> args(sigma.size(), y_bang(y_lollis({a, a}, a)));
    args.push_back(y_bang(a));
    return y_lollis(args, y_bang(a));
}

TypePtr tree_type(const Alphabet& sigma) {
    return y_forall("a", tree_type_at(sigma, y_var("a")));
}

TypePtr tensor_type(const std::vector<TypePtr>& components) {
    std::set<std::string> avoid;
    for (const TypePtr& c : components) {
        auto fv = free_type_vars(c);
        avoid.insert(fv.begin(), fv.end());
    }
    std::string b = pick_name("b", avoid);
    std::vector<TypePtr> args = components;
    return y_forall(b, y_lolli(y_lollis(args, y_var(b)), y_var(b)));
}

TypePtr with_type(const std::vector<TypePtr>& components) {
    std::set<std::string> avoid;
    for (const TypePtr& c : components) {
        auto fv = free_type_vars(c);
        avoid.insert(fv.begin(), fv.end());
    }
    std::string g = pick_name("g", avoid);
    avoid.insert(g);
    std::string b = pick_name("b", avoid);
    std::vector<TypePtr> sel_args{y_var(b)};
    for (const TypePtr& c : components) sel_args.push_back(y_lolli(y_var(b), c));
    TypePtr chooser = y_forall(b, y_lollis(sel_args, y_var(g)));
    return y_forall(g, y_lolli(chooser, y_var(g)));
}

// -------- encodings --------

TermPtr encode_string(const Word& w, const Alphabet& sigma) {
    TermPtr spine = e_var("x");
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (!sigma.contains(*it)) throw InputError("encode_string: symbol '" + *it + "' not in alphabet");
        spine = e_app(e_var("f_" + *it), spine);
    }
    TermPtr t = e_bang(e_abs("x", spine));
    for (auto it = sigma.symbols().rbegin(); it != sigma.symbols().rend(); ++it)
        t = e_bang_abs("f_" + *it, t);
    return t;
}

TermPtr fin_encode(std::size_t i, std::size_t n) {
    if (i < 1 || i > n) throw InputError("fin_encode: index out of range");
    TermPtr t = e_var("x" + std::to_string(i));
    for (std::size_t k = n; k >= 1; --k) t = e_abs("x" + std::to_string(k), t);
    return t;
}

TermPtr encode_tree(const trees::TreePtr& t, const Alphabet& sigma) {
    std::function<TermPtr(const trees::TreePtr&)> walk = [&](const trees::TreePtr& u) -> TermPtr {
        if (trees::is_leaf(u)) return e_var("x");
        if (!sigma.contains(u->label))
            throw InputError("encode_tree: symbol '" + u->label + "' not in alphabet");
        return e_apps(e_var("n_" + u->label), {walk(u->left), walk(u->right)});
    };
    TermPtr body = e_bang_abs("x", e_bang(walk(t)));
    for (auto it = sigma.symbols().rbegin(); it != sigma.symbols().rend(); ++it)
        body = e_bang_abs("n_" + *it, body);
    return body;
}

namespace {
// Peels \!f_1...\!f_k and returns the positional binder-name map; a name
// bound twice resolves to the later (inner) position.
TermPtr peel_bang_abs(TermPtr t, const std::vector<std::string>& symbols,
                      std::map<std::string, std::string>& name_to_symbol, const char* what) {
    for (const std::string& sym : symbols) {
        if (t->kind != TermKind::BangAbs)
            throw DecodeError(std::string(what) + ": expected a \\! binder for symbol '" + sym + "'");
        name_to_symbol[t->name] = sym;
        t = t->t1;
    }
    return t;
}
}  // namespace

Word decode_string(const TermPtr& t, const Alphabet& sigma, std::uint64_t fuel) {
    TermPtr nf = beta_normalize(t, fuel);
    if (nf->kind == TermKind::Bang) nf = nf->t1;
    std::map<std::string, std::string> letters;
    TermPtr body = peel_bang_abs(nf, sigma.symbols(), letters, "decode_string");
    if (body->kind != TermKind::Bang) throw DecodeError("decode_string: expected ! after binders");
    body = body->t1;
    if (body->kind != TermKind::Abs) throw DecodeError("decode_string: expected \\x. inside !");
    std::string x = body->name;
    TermPtr cur = body->t1;
    Word w;
    for (;;) {
        if (cur->kind == TermKind::Var && cur->name == x) return w;
        if (cur->kind == TermKind::App && cur->t1->kind == TermKind::Var && cur->t1->name != x) {
            auto it = letters.find(cur->t1->name);
            if (it == letters.end())
                throw DecodeError("decode_string: unbound head '" + cur->t1->name + "'");
            w.push_back(it->second);
            cur = cur->t2;
            continue;
        }
        throw DecodeError("decode_string: not a string spine: " + show_term(cur));
    }
}

trees::TreePtr decode_tree(const TermPtr& t, const Alphabet& sigma, std::uint64_t fuel) {
    TermPtr nf = beta_normalize(t, fuel);
    if (nf->kind == TermKind::Bang) nf = nf->t1;
    std::map<std::string, std::string> nodes;
    TermPtr body = peel_bang_abs(nf, sigma.symbols(), nodes, "decode_tree");
    if (body->kind != TermKind::BangAbs) throw DecodeError("decode_tree: expected \\!x for the leaf");
    std::string x = body->name;
    nodes.erase(x);
    body = body->t1;
    if (body->kind != TermKind::Bang) throw DecodeError("decode_tree: expected ! after binders");
    std::function<trees::TreePtr(const TermPtr&)> walk = [&](const TermPtr& u) -> trees::TreePtr {
        if (u->kind == TermKind::Var && u->name == x) return trees::leaf();
        if (u->kind == TermKind::App && u->t1->kind == TermKind::App &&
            u->t1->t1->kind == TermKind::Var && u->t1->t1->name != x) {
            auto it = nodes.find(u->t1->t1->name);
            if (it == nodes.end())
                throw DecodeError("decode_tree: unbound head '" + u->t1->t1->name + "'");
            trees::TreePtr l = walk(u->t1->t2);
            trees::TreePtr r = walk(u->t2);
            return trees::node(it->second, l, r);
        }
        throw DecodeError("decode_tree: not a tree spine: " + show_term(u));
    };
    return walk(body->t1);
}

// -------- linear data plumbing --------

TermPtr tensor_intro(const std::vector<TermPtr>& components) {
    std::set<std::string> avoid;
    for (const TermPtr& c : components) {
        auto fv = free_vars(c);
        avoid.insert(fv.begin(), fv.end());
    }
    std::string k = pick_name("k", avoid);
    return e_abs(k, e_apps(e_var(k), components));
}

TermPtr tensor_elim(const TermPtr& pair, const TermPtr& consumer) {
    return e_app(pair, consumer);
}

TermPtr with_intro(const TermPtr& shared, const std::vector<TermPtr>& selectors) {
    std::set<std::string> avoid = free_vars(shared);
    for (const TermPtr& s : selectors) {
        auto fv = free_vars(s);
        avoid.insert(fv.begin(), fv.end());
    }
    std::string k = pick_name("k", avoid);
    std::vector<TermPtr> args{shared};
    args.insert(args.end(), selectors.begin(), selectors.end());
    return e_abs(k, e_apps(e_var(k), args));
}

TermPtr with_project(const TermPtr& w, std::size_t i, std::size_t m) {
    if (i < 1 || i > m) throw InputError("with_project: index out of range");
    TermPtr body = e_app(e_var("s" + std::to_string(i)), e_var("b"));
    for (std::size_t k = m; k >= 1; --k) body = e_abs("s" + std::to_string(k), body);
    return e_app(w, e_abs("b", body));
}

TermPtr with_tensor_distribute(std::size_t m, std::size_t n) {
    std::vector<TermPtr> selectors;
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            TermPtr pair = tensor_intro({with_project(e_var("x2"), i, m),
                                         with_project(e_var("y2"), j, n)});
            TermPtr sel = e_abs("b", tensor_elim(e_var("b"), e_abs("x2", e_abs("y2", pair))));
            selectors.push_back(sel);
        }
    }
    TermPtr body = with_intro(tensor_intro({e_var("x"), e_var("y")}), selectors);
    return e_abs("p", e_app(e_var("p"), e_abs("x", e_abs("y", body))));
}

TermPtr bang_promote(const TermPtr& t) {
    std::string x = pick_name("x", all_vars(t));
    return e_bang_abs(x, e_bang(e_app(t, e_var(x))));
}

}  // namespace ltc::eal
