#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ltc/alphabet.hpp"
#include "ltc/errors.hpp"

namespace ltc::trees {

// -------- binary trees and one-hole contexts --------

struct BinTree;
using TreePtr = std::shared_ptr<const BinTree>;

// Leaves are unlabeled; internal nodes carry a label and two children.
struct BinTree {
    std::string label;
    TreePtr left, right;
};

TreePtr leaf();
TreePtr node(const std::string& label, TreePtr l, TreePtr r);
bool is_leaf(const TreePtr& t);
bool tree_equal(const TreePtr& a, const TreePtr& b);
// total constructor count (leaves + internal nodes); always odd
std::size_t tree_size(const TreePtr& t);
// '()' for leaves, label(l,r) for nodes
std::string show_tree(const TreePtr& t);
TreePtr parse_tree(const std::string& text, const Alphabet& sigma);

struct OneHole;
using HolePtr = std::shared_ptr<const OneHole>;

// Exactly one path from the root leads to the hole.
struct OneHole {
    enum class Kind { Hole, NodeL, NodeR } kind;  // NodeL: hole in left child
    std::string label;
    HolePtr sub;    // the child containing the hole
    TreePtr other;  // the plain-tree child
};

HolePtr hole();
HolePtr node_l(const std::string& label, HolePtr sub, TreePtr right);
HolePtr node_r(const std::string& label, TreePtr left, HolePtr sub);
bool hole_equal(const HolePtr& a, const HolePtr& b);
std::string show_hole(const HolePtr& h);

// C[T]: plug t into the hole of c.
TreePtr hole_subst(const HolePtr& c, const TreePtr& t);
// C[C']: composition, again a one-hole context.
HolePtr hole_compose(const HolePtr& outer, const HolePtr& inner);

// -------- register expressions --------

struct TreeExpr;
struct HoleExpr;
using ExprPtr = std::shared_ptr<const TreeExpr>;
using HExprPtr = std::shared_ptr<const HoleExpr>;

struct TreeExpr {
    enum class Kind { Leaf, Var, Node, Plug } kind;
    std::string name;   // Var
    std::string label;  // Node
    ExprPtr e1, e2;     // Node children
    HExprPtr h;         // Plug: h[e1]
};

struct HoleExpr {
    enum class Kind { Hole, Var, NodeL, NodeR, Compose } kind;
    std::string name;
    std::string label;
    HExprPtr h1, h2;  // NodeL/NodeR: h1 is the hole child; Compose: h1[h2]
    ExprPtr e;        // NodeL/NodeR: the plain child
};

ExprPtr ex_leaf();
ExprPtr ex_var(const std::string& name);
ExprPtr ex_node(const std::string& label, ExprPtr l, ExprPtr r);
ExprPtr ex_plug(HExprPtr h, ExprPtr e);
HExprPtr hx_hole();
HExprPtr hx_var(const std::string& name);
HExprPtr hx_node_l(const std::string& label, HExprPtr sub, ExprPtr right);
HExprPtr hx_node_r(const std::string& label, ExprPtr left, HExprPtr sub);
HExprPtr hx_compose(HExprPtr outer, HExprPtr inner);

std::string show_expr(const ExprPtr& e);
std::string show_hexpr(const HExprPtr& h);

using TreeEnv = std::map<std::string, TreePtr>;
using HoleEnv = std::map<std::string, HolePtr>;

// Evaluation under register valuations; throws InputError on unbound
// variables or labels outside sigma.
TreePtr eval_expr(const ExprPtr& e, const TreeEnv& rho, const HoleEnv& rho2, const Alphabet& sigma);
HolePtr eval_hole_expr(const HExprPtr& h, const TreeEnv& rho, const HoleEnv& rho2, const Alphabet& sigma);

// All variable occurrences (tree and hole registers), in left-to-right order,
// with multiplicity.
void expr_var_occurrences(const ExprPtr& e, std::vector<std::string>& out);
void hexpr_var_occurrences(const HExprPtr& h, std::vector<std::string>& out);

// -------- register tree transducers --------

struct RttUpdate {
    std::string next;
    std::map<std::string, ExprPtr> tree;  // per tree register
    std::map<std::string, HExprPtr> hole;  // per hole register
};

// Bottom-up transducer on binary trees. Update expressions refer to the two
// child configurations through variables "R<" (left) and "R>" (right).
struct Rtt {
    std::string name;
    Alphabet input, output;
    std::vector<std::string> tree_regs, hole_regs;
    std::vector<std::string> states;
    std::string initial;
    std::map<std::tuple<std::string, std::string, std::string>, RttUpdate> delta;
    std::map<std::string, ExprPtr> out;  // F, over plain register names
};

// Structural sanity: nonempty states, initial present, delta total on
// states x states x input, updates cover every register, out covers every
// state, expression variables well formed. Throws ValidityError.
void validate_rtt(const Rtt& m);

struct RttConfig {
    std::string state;
    TreeEnv trees;
    HoleEnv holes;
};

RttConfig rtt_fold(const Rtt& m, const TreePtr& t);
TreePtr run_rtt(const Rtt& m, const TreePtr& t);

// side-tagged register name helpers ("X<" / "X>")
std::string tag_left(const std::string& reg);
std::string tag_right(const std::string& reg);
// splits a tagged name; side is '<' or '>'
std::pair<std::string, char> split_tag(const std::string& var);

// -------- conflict relations and BRTTs --------

// Reflexive, symmetric relation over the registers R union R'.
class ConflictRelation {
public:
    ConflictRelation() = default;
    ConflictRelation(std::vector<std::string> carrier,
                     std::vector<std::pair<std::string, std::string>> pairs);

    const std::vector<std::string>& carrier() const { return carrier_; }
    bool conflicts(const std::string& a, const std::string& b) const;

private:
    std::vector<std::string> carrier_;
    std::set<std::pair<std::string, std::string>> pairs_;  // symmetric closure, distinct names
};

struct Brtt {
    Rtt rtt;
    ConflictRelation conflict;
};

struct ConsistencyReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// consistent = linear (each variable at most once) and the variable set is
// non-conflicting
ConsistencyReport check_consistency(const ExprPtr& e, const ConflictRelation& rel);
ConsistencyReport check_consistency_hole(const HExprPtr& h, const ConflictRelation& rel);

// All non-conflicting subsets of the carrier, in canonical bitmask order
// (bit i = carrier[i]); includes the empty set. Carrier capped at 16.
std::vector<std::vector<std::string>> nonconflicting_subsets(const ConflictRelation& rel);

// Validity via the non-conflicting-subset condition: output expressions
// consistent, updates linear, and for every non-conflicting P the variable
// sets of the updates of P's registers are pairwise disjoint with a
// non-conflicting union in the side-tagged relation.
ConsistencyReport check_brtt(const Brtt& m);
// The two-clause original definition; agrees with check_brtt.
ConsistencyReport check_brtt_original(const Brtt& m);

}  // namespace ltc::trees
