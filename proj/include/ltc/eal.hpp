#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ltc/alphabet.hpp"
#include "ltc/errors.hpp"
#include "ltc/trees.hpp"

// Elementary affine λ-calculus: β fires a non-linear redex (\!x. t)(!u) only
// when the argument is bang-headed, so normal forms may contain stuck
// applications (\!x. t) v. Duplication is confined to !-marked subterms and
// kept one bang level down, which is what the two syntactic checks enforce.
namespace ltc::eal {

// -------- terms --------

enum class TermKind { Var, Abs, BangAbs, App, Bang };

struct EalTerm;
using TermPtr = std::shared_ptr<const EalTerm>;

struct EalTerm {
    TermKind kind;
    std::string name;  // Var name or Abs/BangAbs binder
    TermPtr t1, t2;    // Abs/BangAbs/Bang: t1 = body;  App: t1 = fn, t2 = arg
};

TermPtr e_var(const std::string& name);
TermPtr e_abs(const std::string& binder, TermPtr body);
TermPtr e_bang_abs(const std::string& binder, TermPtr body);
TermPtr e_app(TermPtr fn, TermPtr arg);
TermPtr e_apps(TermPtr fn, const std::vector<TermPtr>& args);
TermPtr e_bang(TermPtr body);

std::set<std::string> free_vars(const TermPtr& t);
// free and bound variable names; used to pick binders that cannot clash
std::set<std::string> all_vars(const TermPtr& t);
std::size_t term_size(const TermPtr& t);
// deepest nesting of ! constructors
std::size_t bang_depth(const TermPtr& t);
bool alpha_equal(const TermPtr& a, const TermPtr& b);
TermPtr substitute(const TermPtr& t, const std::string& name, const TermPtr& u);

inline constexpr std::uint64_t kDefaultFuel = 10'000'000;

// one normal-order step; nullopt when t is normal
std::optional<TermPtr> beta_step(const TermPtr& t);
TermPtr beta_normalize(const TermPtr& t, std::uint64_t fuel = kDefaultFuel);
// on_step(before, after) fires for every step taken
TermPtr beta_normalize_traced(const TermPtr& t, std::uint64_t fuel,
                              const std::function<void(const TermPtr&, const TermPtr&)>& on_step);

// -------- syntactic checks --------

struct CheckReport {
    bool ok = true;
    std::vector<std::string> binders;  // offending binder names, outermost first
};

// every \x binder occurs at most once in its body
CheckReport check_linearity(const TermPtr& t);
// every \x-bound occurrence sits under no ! within the body, every \!x-bound
// occurrence under exactly one
CheckReport check_stratification(const TermPtr& t);

// -------- types --------

enum class TypeKind { Var, Lollipop, Forall, Bang };

struct EalType;
using TypePtr = std::shared_ptr<const EalType>;

struct EalType {
    TypeKind kind;
    std::string name;  // Var name or Forall binder
    TypePtr t1, t2;    // Lollipop: t1 -o t2;  Forall/Bang: t1 = body
};

TypePtr y_var(const std::string& name);
TypePtr y_lolli(TypePtr a, TypePtr b);
TypePtr y_lollis(const std::vector<TypePtr>& args, TypePtr res);
TypePtr y_forall(const std::string& binder, TypePtr body);
TypePtr y_bang(TypePtr body);

// linear: head connective is not a bang; strictly linear: lollipop or forall
bool is_linear(const TypePtr& t);
bool is_strictly_linear(const TypePtr& t);
bool type_alpha_equal(const TypePtr& a, const TypePtr& b);
std::set<std::string> free_type_vars(const TypePtr& t);
TypePtr type_substitute(const TypePtr& t, const std::string& name, const TypePtr& repl);

// -------- printing and parsing --------

std::string show_term(const TermPtr& t);
std::string show_type(const TypePtr& t);
// t ::= atom+   atom ::= ident | !atom | \ ident . t | \! ident . t | ( t )
TermPtr parse_term(const std::string& src);
// T ::= U | U -o T   U ::= !U | 'ident | forall 'ident . T | ( T )
TypePtr parse_type(const std::string& src);

// -------- standard types --------

// Str = forall a. Str[a],  Str[A] = (!(A -o A))^{|S|} -o !(A -o A)
TypePtr str_type(const Alphabet& sigma);
TypePtr str_type_at(const Alphabet& sigma, const TypePtr& a);
// Fin(n) = forall a. a^n -o a; Bool = Fin(2)
TypePtr fin_type(std::size_t n);
TypePtr bool_type();
// BT = forall a. BT[a],  BT[A] = (!(A -o A -o A))^{|S|} -o !A -o !A
TypePtr tree_type(const Alphabet& sigma);
TypePtr tree_type_at(const Alphabet& sigma, const TypePtr& a);
// s1 * ... * sm = forall b. (s1 -o ... -o sm -o b) -o b
TypePtr tensor_type(const std::vector<TypePtr>& components);
// A1 & ... & Am = forall g. (forall b. b -o (b -o A1) -o ... -o (b -o Am) -o g) -o g
TypePtr with_type(const std::vector<TypePtr>& components);

// -------- encodings --------

// w = \!f_1...\!f_k. !(\x. f_{w1} (... (f_{wn} x)))
TermPtr encode_string(const Word& w, const Alphabet& sigma);
// normalizes first; tolerates one surrounding bang (for !Str results)
Word decode_string(const TermPtr& t, const Alphabet& sigma,
                   std::uint64_t fuel = kDefaultFuel);
// i-th of n projections, 1-based: \x1...\xn. x_i
TermPtr fin_encode(std::size_t i, std::size_t n);
TermPtr encode_tree(const trees::TreePtr& t, const Alphabet& sigma);
trees::TreePtr decode_tree(const TermPtr& t, const Alphabet& sigma,
                           std::uint64_t fuel = kDefaultFuel);

// -------- linear data plumbing --------

// \k. k t1 ... tm
TermPtr tensor_intro(const std::vector<TermPtr>& components);
// pair applied to a consumer \x1...\xm. body
TermPtr tensor_elim(const TermPtr& pair, const TermPtr& consumer);
// \k. k shared s1 ... sm; each s_i : b -o A_i consumes the shared resource
TermPtr with_intro(const TermPtr& shared, const std::vector<TermPtr>& selectors);
// w (\b.\s1...\sm. s_i b), 1-based
TermPtr with_project(const TermPtr& w, std::size_t i, std::size_t m);
// (A1&...&Am) * (B1&...&Bn) -o &_{i,j} (Ai * Bj), components row-major in i
TermPtr with_tensor_distribute(std::size_t m, std::size_t n);
// \!x. !(t x) : !A -o !B for closed t : A -o B
TermPtr bang_promote(const TermPtr& t);

}  // namespace ltc::eal
