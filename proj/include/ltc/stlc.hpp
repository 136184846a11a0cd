#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ltc/errors.hpp"

namespace ltc::stlc {

// -------- types --------

enum class TypeKind { Base, Var, Arrow };

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
    TypeKind kind;
    std::string name;  // Var only
    TypePtr lhs, rhs;  // Arrow only
};

TypePtr t_base();
TypePtr t_var(const std::string& name);
TypePtr t_arrow(TypePtr a, TypePtr b);
// a1 -> a2 -> ... -> res, right associated
TypePtr t_arrows(const std::vector<TypePtr>& args, TypePtr res);

bool type_equal(const TypePtr& a, const TypePtr& b);
std::string show_type(const TypePtr& t);
// substitutes the base type o by b everywhere (type variables untouched)
TypePtr type_substitute(const TypePtr& a, const TypePtr& b);
void free_type_vars(const TypePtr& t, std::set<std::string>& out);

// -------- terms --------

enum class TermKind { Var, Abs, App };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    TermKind kind;
    std::string name;       // Var name or Abs binder
    std::optional<TypePtr> annot;  // Abs binder annotation
    TermPtr t1, t2;         // Abs: t1 = body;  App: t1 = fn, t2 = arg
};

TermPtr mk_var(const std::string& name);
TermPtr mk_abs(const std::string& binder, TermPtr body);
TermPtr mk_abs(const std::string& binder, TypePtr annot, TermPtr body);
TermPtr mk_app(TermPtr fn, TermPtr arg);
TermPtr mk_apps(TermPtr fn, const std::vector<TermPtr>& args);
TermPtr mk_abss(const std::vector<std::string>& binders, TermPtr body);

std::set<std::string> free_vars(const TermPtr& t);
std::size_t term_size(const TermPtr& t);

// Globally monotone fresh-name supply; names are base + primes + counter so
// printed terms stay readable and runs are reproducible.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);
void reset_fresh_counter();  // CLI entry points call this for byte-identical output

// Capture-avoiding substitution t{x := u}.
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& u);

// One leftmost-outermost beta step; nullptr when t is already normal.
TermPtr beta_step(const TermPtr& t);

// Full beta-normalization, normal (leftmost-outermost) order. Throws
// FuelExhausted when more than `fuel` contractions are needed.
// The default budget matches the CLI default.
inline constexpr std::uint64_t kDefaultFuel = 10'000'000;
TermPtr beta_normalize(const TermPtr& t, std::uint64_t fuel = kDefaultFuel);

// Same normal form, but invokes `on_step` with each intermediate term
// (after each contraction). Used for subject-reduction style checks.
TermPtr beta_normalize_traced(const TermPtr& t, std::uint64_t fuel,
                              const std::function<void(const TermPtr&)>& on_step);

bool alpha_equal(const TermPtr& a, const TermPtr& b);
// Alpha equivalence modulo eta; inputs are expected to be beta-normal.
bool alpha_eta_equal(const TermPtr& a, const TermPtr& b);

// -------- typing --------

using TypingContext = std::map<std::string, TypePtr>;

// Principal type of t under ctx (may contain type variables 'a, 'b, ...,
// canonically named in first-occurrence order). Binder annotations are hard
// constraints. Throws TypeError when untypable.
TypePtr infer_type(const TypingContext& ctx, const TermPtr& t);

// True iff t admits type a under ctx, i.e. a is a substitution instance of
// the principal type (type variables in `a` are treated as constants).
bool check_type(const TypingContext& ctx, const TermPtr& t, const TypePtr& a);

// -------- text --------

// Grammar:  t ::= ident | '\' ident [':' type] '.' t | t t | '(' t ')'
//           type ::= 'o' | 'ident | type '->' type | '(' type ')'
// Applications associate left, arrows right; '#' starts a line comment.
std::string show_term(const TermPtr& t);
TermPtr parse_term(const std::string& text);
TypePtr parse_type(const std::string& text);

}  // namespace ltc::stlc
