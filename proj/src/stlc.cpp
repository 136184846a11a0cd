#include "ltc/stlc.hpp"

#include <atomic>
#include <cassert>
#include <sstream>

namespace ltc::stlc {

// -------- types --------

TypePtr t_base() {
    static const TypePtr o = std::make_shared<Type>(Type{TypeKind::Base, "", nullptr, nullptr});
    return o;
}

TypePtr t_var(const std::string& name) {
    return std::make_shared<Type>(Type{TypeKind::Var, name, nullptr, nullptr});
}

TypePtr t_arrow(TypePtr a, TypePtr b) {
    return std::make_shared<Type>(Type{TypeKind::Arrow, "", std::move(a), std::move(b)});
}

TypePtr t_arrows(const std::vector<TypePtr>& args, TypePtr res) {
    TypePtr r = std::move(res);
    for (auto it = args.rbegin(); it != args.rend(); ++it) r = t_arrow(*it, r);
    return r;
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case TypeKind::Base: return true;
        case TypeKind::Var: return a->name == b->name;
        case TypeKind::Arrow: return type_equal(a->lhs, b->lhs) && type_equal(a->rhs, b->rhs);
    }
    return false;
}

static void show_type_rec(const TypePtr& t, std::string& out, bool left_of_arrow) {
    switch (t->kind) {
        case TypeKind::Base: out += "o"; return;
        case TypeKind::Var: out += "'" + t->name; return;
        case TypeKind::Arrow:
            if (left_of_arrow) out += "(";
            show_type_rec(t->lhs, out, true);
            out += " -> ";
            show_type_rec(t->rhs, out, false);
            if (left_of_arrow) out += ")";
            return;
    }
}

std::string show_type(const TypePtr& t) {
    std::string out;
    show_type_rec(t, out, false);
    return out;
}

TypePtr type_substitute(const TypePtr& a, const TypePtr& b) {
    switch (a->kind) {
        case TypeKind::Base: return b;
        case TypeKind::Var: return a;
        case TypeKind::Arrow: {
            TypePtr l = type_substitute(a->lhs, b), r = type_substitute(a->rhs, b);
            if (l.get() == a->lhs.get() && r.get() == a->rhs.get()) return a;
            return t_arrow(l, r);
        }
    }
    return a;
}

void free_type_vars(const TypePtr& t, std::set<std::string>& out) {
    switch (t->kind) {
        case TypeKind::Base: return;
        case TypeKind::Var: out.insert(t->name); return;
        case TypeKind::Arrow:
            free_type_vars(t->lhs, out);
            free_type_vars(t->rhs, out);
            return;
    }
}

// -------- terms --------

TermPtr mk_var(const std::string& name) {
    return std::make_shared<Term>(Term{TermKind::Var, name, std::nullopt, nullptr, nullptr});
}

TermPtr mk_abs(const std::string& binder, TermPtr body) {
    return std::make_shared<Term>(Term{TermKind::Abs, binder, std::nullopt, std::move(body), nullptr});
}

TermPtr mk_abs(const std::string& binder, TypePtr annot, TermPtr body) {
    return std::make_shared<Term>(Term{TermKind::Abs, binder, std::move(annot), std::move(body), nullptr});
}

TermPtr mk_app(TermPtr fn, TermPtr arg) {
    return std::make_shared<Term>(Term{TermKind::App, "", std::nullopt, std::move(fn), std::move(arg)});
}

TermPtr mk_apps(TermPtr fn, const std::vector<TermPtr>& args) {
    TermPtr r = std::move(fn);
    for (const auto& a : args) r = mk_app(r, a);
    return r;
}

TermPtr mk_abss(const std::vector<std::string>& binders, TermPtr body) {
    TermPtr r = std::move(body);
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) r = mk_abs(*it, r);
    return r;
}

static void free_vars_rec(const TermPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (t->kind) {
        case TermKind::Var:
            if (!bound.count(t->name)) out.insert(t->name);
            return;
        case TermKind::Abs: {
            bool fresh = bound.insert(t->name).second;
            free_vars_rec(t->t1, bound, out);
            if (fresh) bound.erase(t->name);
            return;
        }
        case TermKind::App:
            free_vars_rec(t->t1, bound, out);
            free_vars_rec(t->t2, bound, out);
            return;
    }
}

std::set<std::string> free_vars(const TermPtr& t) {
    std::set<std::string> bound, out;
    free_vars_rec(t, bound, out);
    return out;
}

std::size_t term_size(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var: return 1;
        case TermKind::Abs: return 1 + term_size(t->t1);
        case TermKind::App: return 1 + term_size(t->t1) + term_size(t->t2);
    }
    return 1;
}

static std::atomic<std::uint64_t> g_fresh_counter{0};

void reset_fresh_counter() { g_fresh_counter.store(0); }

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    for (;;) {
        std::string cand = base + "_" + std::to_string(++g_fresh_counter);
        if (!avoid.count(cand)) return cand;
    }
}

// -------- substitution --------

static bool occurs_free(const TermPtr& t, const std::string& x) {
    switch (t->kind) {
        case TermKind::Var: return t->name == x;
        case TermKind::Abs: return t->name != x && occurs_free(t->t1, x);
        case TermKind::App: return occurs_free(t->t1, x) || occurs_free(t->t2, x);
    }
    return false;
}

static TermPtr subst_rec(const TermPtr& t, const std::string& x, const TermPtr& u,
                         const std::set<std::string>& fv_u) {
    switch (t->kind) {
        case TermKind::Var:
            return t->name == x ? u : t;
        case TermKind::App: {
            TermPtr f = subst_rec(t->t1, x, u, fv_u);
            TermPtr a = subst_rec(t->t2, x, u, fv_u);
            if (f.get() == t->t1.get() && a.get() == t->t2.get()) return t;
            return mk_app(f, a);
        }
        case TermKind::Abs: {
            if (t->name == x) return t;
            if (fv_u.count(t->name) && occurs_free(t->t1, x)) {
                std::set<std::string> avoid = fv_u;
                {
                    std::set<std::string> bound;
                    free_vars_rec(t->t1, bound, avoid);
                }
                avoid.insert(x);
                avoid.insert(t->name);
                std::string y = fresh_name(t->name, avoid);
                TermPtr body = subst_rec(t->t1, t->name, mk_var(y), {y});
                body = subst_rec(body, x, u, fv_u);
                return t->annot ? mk_abs(y, *t->annot, body) : mk_abs(y, body);
            }
            TermPtr body = subst_rec(t->t1, x, u, fv_u);
            if (body.get() == t->t1.get()) return t;
            return t->annot ? mk_abs(t->name, *t->annot, body) : mk_abs(t->name, body);
        }
    }
    return t;
}

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& u) {
    return subst_rec(t, x, u, free_vars(u));
}

// -------- reduction --------

TermPtr beta_step(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var:
            return nullptr;
        case TermKind::Abs: {
            TermPtr b = beta_step(t->t1);
            if (!b) return nullptr;
            return t->annot ? mk_abs(t->name, *t->annot, b) : mk_abs(t->name, b);
        }
        case TermKind::App: {
            if (t->t1->kind == TermKind::Abs)
                return substitute(t->t1->t1, t->t1->name, t->t2);
            if (TermPtr f = beta_step(t->t1)) return mk_app(f, t->t2);
            if (TermPtr a = beta_step(t->t2)) return mk_app(t->t1, a);
            return nullptr;
        }
    }
    return nullptr;
}

namespace {
struct Budget {
    std::uint64_t left;
    void spend() {
        if (left == 0) throw FuelExhausted("beta_normalize: fuel exhausted");
        --left;
    }
};

// Weak head normal form; fires the same contractions leftmost-outermost
// normalization would fire on the head spine.
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
        break;
    }
    for (auto it = args.rbegin(); it != args.rend(); ++it) t = mk_app(t, *it);
    return t;
}

TermPtr nf(const TermPtr& t, Budget& b) {
    TermPtr w = whnf(t, b);
    switch (w->kind) {
        case TermKind::Var:
            return w;
        case TermKind::Abs: {
            TermPtr body = nf(w->t1, b);
            return w->annot ? mk_abs(w->name, *w->annot, body) : mk_abs(w->name, body);
        }
        case TermKind::App: {
            // stuck spine, head variable: normalize both sides
            return mk_app(nf(w->t1, b), nf(w->t2, b));
        }
    }
    return w;
}
}  // namespace

TermPtr beta_normalize(const TermPtr& t, std::uint64_t fuel) {
    Budget b{fuel};
    return nf(t, b);
}

TermPtr beta_normalize_traced(const TermPtr& t, std::uint64_t fuel,
                              const std::function<void(const TermPtr&)>& on_step) {
    TermPtr cur = t;
    for (std::uint64_t i = 0; i < fuel; ++i) {
        TermPtr next = beta_step(cur);
        if (!next) return cur;
        cur = next;
        if (on_step) on_step(cur);
    }
    if (!beta_step(cur)) return cur;
    throw FuelExhausted("beta_normalize_traced: fuel exhausted");
}

// -------- alpha / eta --------

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
        case TermKind::Abs: {
            // binder annotations are checking aids, not part of term identity
            int id = next++;
            auto olda = ma.find(a->name) == ma.end() ? -1 : ma[a->name];
            auto oldb = mb.find(b->name) == mb.end() ? -1 : mb[b->name];
            ma[a->name] = id;
            mb[b->name] = id;
            bool r = alpha_rec(a->t1, b->t1, ma, mb, next);
            if (olda < 0) ma.erase(a->name); else ma[a->name] = olda;
            if (oldb < 0) mb.erase(b->name); else mb[b->name] = oldb;
            return r;
        }
        case TermKind::App:
            return alpha_rec(a->t1, b->t1, ma, mb, next) && alpha_rec(a->t2, b->t2, ma, mb, next);
    }
    return false;
}

bool alpha_eta_rec(const TermPtr& a, const TermPtr& b, NameMap& ma, NameMap& mb, int& next);

// a is an Abs, b is not: compare a against the eta-expansion of b.
bool eta_mismatch(const TermPtr& a, const TermPtr& b, NameMap& ma, NameMap& mb, int& next) {
    int id = next++;
    std::string marker = "#eta" + std::to_string(id);
    auto olda = ma.find(a->name) == ma.end() ? -1 : ma[a->name];
    ma[a->name] = id;
    mb[marker] = id;
    bool r = alpha_eta_rec(a->t1, mk_app(b, mk_var(marker)), ma, mb, next);
    if (olda < 0) ma.erase(a->name); else ma[a->name] = olda;
    mb.erase(marker);
    return r;
}

bool alpha_eta_rec(const TermPtr& a, const TermPtr& b, NameMap& ma, NameMap& mb, int& next) {
    if (a->kind == TermKind::Abs && b->kind != TermKind::Abs) return eta_mismatch(a, b, ma, mb, next);
    if (b->kind == TermKind::Abs && a->kind != TermKind::Abs) {
        // mirror: swap the roles
        int id = next++;
        std::string marker = "#eta" + std::to_string(id);
        auto oldb = mb.find(b->name) == mb.end() ? -1 : mb[b->name];
        mb[b->name] = id;
        ma[marker] = id;
        bool r = alpha_eta_rec(mk_app(a, mk_var(marker)), b->t1, ma, mb, next);
        if (oldb < 0) mb.erase(b->name); else mb[b->name] = oldb;
        ma.erase(marker);
        return r;
    }
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case TermKind::Var: {
            auto ia = ma.find(a->name), ib = mb.find(b->name);
            if (ia != ma.end() || ib != mb.end())
                return ia != ma.end() && ib != mb.end() && ia->second == ib->second;
            return a->name == b->name;
        }
        case TermKind::Abs: {
            int id = next++;
            auto olda = ma.find(a->name) == ma.end() ? -1 : ma[a->name];
            auto oldb = mb.find(b->name) == mb.end() ? -1 : mb[b->name];
            ma[a->name] = id;
            mb[b->name] = id;
            bool r = alpha_eta_rec(a->t1, b->t1, ma, mb, next);
            if (olda < 0) ma.erase(a->name); else ma[a->name] = olda;
            if (oldb < 0) mb.erase(b->name); else mb[b->name] = oldb;
            return r;
        }
        case TermKind::App:
            return alpha_eta_rec(a->t1, b->t1, ma, mb, next) &&
                   alpha_eta_rec(a->t2, b->t2, ma, mb, next);
    }
    return false;
}
}  // namespace

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
    NameMap ma, mb;
    int next = 0;
    return alpha_rec(a, b, ma, mb, next);
}

bool alpha_eta_equal(const TermPtr& a, const TermPtr& b) {
    NameMap ma, mb;
    int next = 0;
    return alpha_eta_rec(a, b, ma, mb, next);
}

// -------- inference --------

namespace {
// Unification metavariables are Var types named "?N"; user type variables
// (no '?' prefix) act as constants.
struct Unifier {
    std::map<std::string, TypePtr> subst;
    int next = 0;

    TypePtr fresh() { return t_var("?" + std::to_string(next++)); }

    static bool is_meta(const TypePtr& t) {
        return t->kind == TypeKind::Var && !t->name.empty() && t->name[0] == '?';
    }

    TypePtr walk(TypePtr t) {
        while (is_meta(t)) {
            auto it = subst.find(t->name);
            if (it == subst.end()) break;
            t = it->second;
        }
        return t;
    }

    TypePtr resolve(const TypePtr& t) {
        TypePtr w = walk(t);
        if (w->kind == TypeKind::Arrow) {
            TypePtr l = resolve(w->lhs), r = resolve(w->rhs);
            if (l.get() == w->lhs.get() && r.get() == w->rhs.get()) return w;
            return t_arrow(l, r);
        }
        return w;
    }

    bool occurs(const std::string& v, const TypePtr& t) {
        TypePtr w = walk(t);
        switch (w->kind) {
            case TypeKind::Base: return false;
            case TypeKind::Var: return w->name == v;
            case TypeKind::Arrow: return occurs(v, w->lhs) || occurs(v, w->rhs);
        }
        return false;
    }

    void unify(const TypePtr& a0, const TypePtr& b0) {
        TypePtr a = walk(a0), b = walk(b0);
        if (is_meta(a)) {
            if (is_meta(b) && b->name == a->name) return;
            if (occurs(a->name, b))
                throw TypeError("not typable: occurs check fails for " + a->name);
            subst[a->name] = b;
            return;
        }
        if (is_meta(b)) {
            unify(b, a);
            return;
        }
        if (a->kind != b->kind)
            throw TypeError("not typable: cannot unify " + show_type(a) + " with " + show_type(b));
        switch (a->kind) {
            case TypeKind::Base: return;
            case TypeKind::Var:
                if (a->name != b->name)
                    throw TypeError("not typable: distinct rigid type variables '" + a->name +
                                    " and '" + b->name);
                return;
            case TypeKind::Arrow:
                unify(a->lhs, b->lhs);
                unify(a->rhs, b->rhs);
                return;
        }
    }

    TypePtr infer(std::map<std::string, TypePtr>& env, const TermPtr& t) {
        switch (t->kind) {
            case TermKind::Var: {
                auto it = env.find(t->name);
                if (it == env.end())
                    throw TypeError("not typable: unbound variable " + t->name);
                return it->second;
            }
            case TermKind::Abs: {
                TypePtr a = t->annot ? *t->annot : fresh();
                auto old = env.find(t->name) == env.end()
                               ? std::optional<TypePtr>{}
                               : std::optional<TypePtr>{env[t->name]};
                env[t->name] = a;
                TypePtr body = infer(env, t->t1);
                if (old) env[t->name] = *old; else env.erase(t->name);
                return t_arrow(a, body);
            }
            case TermKind::App: {
                TypePtr f = infer(env, t->t1);
                TypePtr a = infer(env, t->t2);
                TypePtr r = fresh();
                unify(f, t_arrow(a, r));
                return r;
            }
        }
        throw TypeError("not typable");
    }
};

std::string canonical_var_name(int i) {
    std::string s(1, static_cast<char>('a' + i % 26));
    if (i >= 26) s += std::to_string(i / 26);
    return s;
}

TypePtr canonicalize(const TypePtr& t, std::map<std::string, TypePtr>& renames,
                     const std::set<std::string>& taken, int& next) {
    switch (t->kind) {
        case TypeKind::Base: return t;
        case TypeKind::Var: {
            if (t->name.empty() || t->name[0] != '?') return t;  // rigid user variable
            auto it = renames.find(t->name);
            if (it != renames.end()) return it->second;
            std::string nm;
            do {
                nm = canonical_var_name(next++);
            } while (taken.count(nm));
            TypePtr v = t_var(nm);
            renames[t->name] = v;
            return v;
        }
        case TypeKind::Arrow: {
            TypePtr l = canonicalize(t->lhs, renames, taken, next);
            TypePtr r = canonicalize(t->rhs, renames, taken, next);
            return t_arrow(l, r);
        }
    }
    return t;
}
}  // namespace

TypePtr infer_type(const TypingContext& ctx, const TermPtr& t) {
    Unifier u;
    std::map<std::string, TypePtr> env(ctx.begin(), ctx.end());
    TypePtr raw = u.infer(env, t);
    TypePtr solved = u.resolve(raw);
    std::set<std::string> taken;
    free_type_vars(solved, taken);  // keep rigid names distinct from canonical ones
    std::map<std::string, TypePtr> renames;
    int next = 0;
    return canonicalize(solved, renames, taken, next);
}

namespace {
// One-way matching: pattern variables come from the principal type.
bool match_instance(const TypePtr& pat, const TypePtr& target,
                    std::map<std::string, TypePtr>& theta) {
    switch (pat->kind) {
        case TypeKind::Base:
            return target->kind == TypeKind::Base;
        case TypeKind::Var: {
            auto it = theta.find(pat->name);
            if (it != theta.end()) return type_equal(it->second, target);
            theta[pat->name] = target;
            return true;
        }
        case TypeKind::Arrow:
            return target->kind == TypeKind::Arrow &&
                   match_instance(pat->lhs, target->lhs, theta) &&
                   match_instance(pat->rhs, target->rhs, theta);
    }
    return false;
}
}  // namespace

bool check_type(const TypingContext& ctx, const TermPtr& t, const TypePtr& a) {
    TypePtr principal;
    try {
        principal = infer_type(ctx, t);
    } catch (const TypeError&) {
        return false;
    }
    std::map<std::string, TypePtr> theta;
    return match_instance(principal, a, theta);
}

// -------- text --------

namespace {
struct Lexer {
    enum class Kind { Ident, TVar, Lambda, Dot, LParen, RParen, Colon, Arrow, End };
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
        if (c == '.') { ++i; tok = {Kind::Dot, ".", start}; return; }
        if (c == '(') { ++i; tok = {Kind::LParen, "(", start}; return; }
        if (c == ')') { ++i; tok = {Kind::RParen, ")", start}; return; }
        if (c == ':') { ++i; tok = {Kind::Colon, ":", start}; return; }
        if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
            i += 2;
            tok = {Kind::Arrow, "->", start};
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

TypePtr parse_type_expr(Lexer& lx);

TypePtr parse_type_atom(Lexer& lx) {
    auto t = lx.take();
    switch (t.kind) {
        case Lexer::Kind::Ident:
            if (t.text == "o") return t_base();
            throw ParseError("unknown type name '" + t.text + "' (expected o)");
        case Lexer::Kind::TVar:
            return t_var(t.text);
        case Lexer::Kind::LParen: {
            TypePtr inner = parse_type_expr(lx);
            if (lx.take().kind != Lexer::Kind::RParen) throw ParseError("expected ')' in type");
            return inner;
        }
        default:
            throw ParseError("expected a type at offset " + std::to_string(t.pos));
    }
}

TypePtr parse_type_expr(Lexer& lx) {
    TypePtr lhs = parse_type_atom(lx);
    if (lx.peek().kind == Lexer::Kind::Arrow) {
        lx.take();
        return t_arrow(lhs, parse_type_expr(lx));
    }
    return lhs;
}

TermPtr parse_term_expr(Lexer& lx);

TermPtr parse_lambda(Lexer& lx) {
    lx.take();  // backslash
    auto id = lx.take();
    if (id.kind != Lexer::Kind::Ident) throw ParseError("expected binder after '\\'");
    std::optional<TypePtr> annot;
    if (lx.peek().kind == Lexer::Kind::Colon) {
        lx.take();
        annot = parse_type_expr(lx);
    }
    if (lx.take().kind != Lexer::Kind::Dot) throw ParseError("expected '.' after binder");
    TermPtr body = parse_term_expr(lx);
    return annot ? mk_abs(id.text, *annot, body) : mk_abs(id.text, body);
}

TermPtr parse_term_expr(Lexer& lx) {
    if (lx.peek().kind == Lexer::Kind::Lambda) return parse_lambda(lx);
    TermPtr acc;
    for (;;) {
        auto& p = lx.peek();
        TermPtr atom;
        if (p.kind == Lexer::Kind::Ident) {
            atom = mk_var(lx.take().text);
        } else if (p.kind == Lexer::Kind::LParen) {
            lx.take();
            atom = parse_term_expr(lx);
            if (lx.take().kind != Lexer::Kind::RParen) throw ParseError("expected ')'");
        } else if (p.kind == Lexer::Kind::Lambda) {
            atom = parse_lambda(lx);  // lambda extends to the end: final argument
            acc = acc ? mk_app(acc, atom) : atom;
            break;
        } else {
            break;
        }
        acc = acc ? mk_app(acc, atom) : atom;
    }
    if (!acc) throw ParseError("expected a term at offset " + std::to_string(lx.peek().pos));
    return acc;
}
}  // namespace

TermPtr parse_term(const std::string& text) {
    Lexer lx(text);
    TermPtr t = parse_term_expr(lx);
    if (lx.peek().kind != Lexer::Kind::End)
        throw ParseError("trailing input after term at offset " + std::to_string(lx.peek().pos));
    return t;
}

TypePtr parse_type(const std::string& text) {
    Lexer lx(text);
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
        case TermKind::Abs: {
            bool parens = fn_pos || arg_pos;
            if (parens) out += "(";
            out += "\\" + t->name;
            if (t->annot) out += " : " + show_type(*t->annot);
            out += ". ";
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
    }
}
}  // namespace

std::string show_term(const TermPtr& t) {
    std::string out;
    show_term_rec(t, out, false, false);
    return out;
}

}  // namespace ltc::stlc
