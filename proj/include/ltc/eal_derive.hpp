#pragma once

#include "ltc/eal.hpp"

// Typing derivations. Judgments are Γ | Δ | Θ ⊢ t : σ with linear (Γ),
// non-linear (Δ, bang types only) and temporary (Θ) zones; weakening is
// admissible everywhere, so the builder combinators silently widen contexts
// when combining premises, but refuse name clashes instead of α-renaming.
namespace ltc::eal {

using Ctx = std::map<std::string, TypePtr>;

struct TriContext {
    Ctx gamma, delta, theta;
};

enum class Rule { Var, VarTemp, AbsLinear, AbsBang, App, ForallIntro, ForallElim, Promote };

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct Derivation {
    Rule rule;
    TriContext ctx;
    TermPtr subject;
    TypePtr type;
    std::vector<DerivPtr> premises;
    TypePtr inst;  // ForallElim only: the instantiating linear type
};

// leaf rules
DerivPtr d_var(const std::string& name, const TypePtr& a);
DerivPtr d_var_temp(const std::string& name, const TypePtr& sigma);
// abstractions discharge the binder from the stated zone, weakening it in
// when the body does not use it
DerivPtr d_abs(const std::string& name, const TypePtr& a, const DerivPtr& body);
DerivPtr d_abs_bang(const std::string& name, const TypePtr& bang_sigma, const DerivPtr& body);
// splits Γ between the premises as built; Δ and Θ are unified by weakening
DerivPtr d_app(const DerivPtr& fn, const DerivPtr& arg);
DerivPtr d_forall_intro(const std::string& alpha, const DerivPtr& d);
DerivPtr d_forall_elim(const DerivPtr& d, const TypePtr& a);
// premise must use only the temporary zone; conclusion moves !Θ into Δ
DerivPtr d_promote(const DerivPtr& d);

// context weakening transformers; promotion premises are left untouched
DerivPtr weaken_gamma(const DerivPtr& d, const std::string& name, const TypePtr& a);
DerivPtr weaken_delta(const DerivPtr& d, const std::string& name, const TypePtr& bang);
DerivPtr weaken_theta(const DerivPtr& d, const std::string& name, const TypePtr& sigma);

struct DerivCheck {
    bool ok = true;
    std::string path;  // first offending node, e.g. "root.1.0"
    std::string reason;
};

DerivCheck check_derivation(const DerivPtr& d);

// One node per line, two-space indent per depth. Application nodes carry the
// argument type, quantifier eliminations the instantiation and premise type,
// each in braces. Reconstruction is deterministic given the rule skeleton,
// the subject term and the root type.
std::string show_derivation(const DerivPtr& d);
DerivPtr parse_derivation(const std::string& src, const TermPtr& subject, const TypePtr& type);

}  // namespace ltc::eal
