#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ltc/gen.hpp"
#include "ltc/stlc_compile.hpp"
#include "test_util.hpp"

using namespace ltc;
using namespace ltc::stlc;
using namespace ltc::stlc_compile;
using trans::Dfa;
using trans::HDT0LSystem;
using trans::Morphism;

namespace {

const Alphabet kAB({"a", "b"});

Word run_on_word(const TypedProgram& p, const Word& w) {
    TermPtr in = church::encode_string(w, p.input.alphabet);
    return church::decode_string(mk_app(p.term, in), p.output.alphabet);
}

bool accepts(const TypedProgram& p, const Word& w) {
    TermPtr in = church::encode_string(w, p.input.alphabet);
    return church::decode_bool(mk_app(p.term, in));
}

trees::TreePtr run_on_tree(const TypedProgram& p, const trees::TreePtr& t) {
    TermPtr in = church::encode_tree(t, p.input.alphabet);
    return church::decode_tree(mk_app(p.term, in), p.output.alphabet);
}

bool well_typed(const TypedProgram& p) {
    return check_type({}, p.term, p.type) && type_equal(p.type, t_arrow(program_input_type(p), program_output_type(p)));
}

HDT0LSystem doubling_system() {
    HDT0LSystem sys;
    sys.name = "doubling";
    sys.input = kAB;
    sys.work = Alphabet({"x"});
    sys.output = Alphabet({"a"});
    sys.init = {"x"};
    for (const auto& c : sys.input.symbols())
        sys.rules[c] = Morphism{sys.work, sys.work, {{"x", {"x", "x"}}}};
    sys.final_rule = Morphism{sys.work, sys.output, {{"x", {"a"}}}};
    return sys;
}

// f(w) = reverse(w) . w, built by rewriting around a center marker
HDT0LSystem revcat_system() {
    HDT0LSystem sys;
    sys.name = "revcat";
    sys.input = kAB;
    sys.work = Alphabet({"a", "b", "m"});
    sys.output = kAB;
    sys.init = {"m"};
    for (const auto& c : sys.input.symbols())
        sys.rules[c] = Morphism{sys.work, sys.work, {{"a", {"a"}}, {"b", {"b"}}, {"m", {c, "m", c}}}};
    sys.final_rule = Morphism{sys.work, sys.output, {{"a", {"a"}}, {"b", {"b"}}, {"m", {}}}};
    return sys;
}

Dfa even_a_dfa() {
    Dfa d;
    d.name = "even-a";
    d.input = kAB;
    d.states = {"e", "o"};
    d.initial = "e";
    d.accepting = {"e"};
    d.delta[{"e", "a"}] = "o";
    d.delta[{"o", "a"}] = "e";
    d.delta[{"e", "b"}] = "e";
    d.delta[{"o", "b"}] = "o";
    return d;
}

Dfa first_a_dfa() {
    Dfa d;
    d.name = "first-a";
    d.input = kAB;
    d.states = {"s", "y", "n"};
    d.initial = "s";
    d.accepting = {"y"};
    d.delta[{"s", "a"}] = "y";
    d.delta[{"s", "b"}] = "n";
    for (const auto& q : {"y", "n"})
        for (const auto& c : kAB.symbols()) d.delta[{q, c}] = q;
    return d;
}

trees::ExprPtr rand_expr(std::mt19937_64& rng, int depth, std::size_t nv, std::size_t nh);

trees::HExprPtr rand_hexpr(std::mt19937_64& rng, int depth, std::size_t nv, std::size_t nh) {
    using namespace trees;
    if (depth == 0) return hx_hole();
    switch (rng() % (nh > 0 ? 5 : 4)) {
        case 0:
            return hx_hole();
        case 1:
            return hx_node_l(rng() % 2 ? "a" : "b", rand_hexpr(rng, depth - 1, nv, nh),
                             rand_expr(rng, depth - 1, nv, nh));
        case 2:
            return hx_node_r(rng() % 2 ? "a" : "b", rand_expr(rng, depth - 1, nv, nh),
                             rand_hexpr(rng, depth - 1, nv, nh));
        case 3:
            return hx_compose(rand_hexpr(rng, depth - 1, nv, nh), rand_hexpr(rng, depth - 1, nv, nh));
        default:
            return hx_var("C" + std::to_string(rng() % nh + 1));
    }
}

trees::ExprPtr rand_expr(std::mt19937_64& rng, int depth, std::size_t nv, std::size_t nh) {
    using namespace trees;
    if (depth == 0) return ex_leaf();
    switch (rng() % (nv > 0 ? 4 : 3)) {
        case 0:
            return ex_leaf();
        case 1:
            return ex_node(rng() % 2 ? "a" : "b", rand_expr(rng, depth - 1, nv, nh),
                           rand_expr(rng, depth - 1, nv, nh));
        case 2:
            return ex_plug(rand_hexpr(rng, depth - 1, nv, nh), rand_expr(rng, depth - 1, nv, nh));
        default:
            return ex_var("X" + std::to_string(rng() % nv + 1));
    }
}

trees::TreePtr rand_tree(std::mt19937_64& rng, int depth) {
    if (depth == 0 || rng() % 3 == 0) return trees::leaf();
    return trees::node(rng() % 2 ? "a" : "b", rand_tree(rng, depth - 1), rand_tree(rng, depth - 1));
}

trees::HolePtr rand_hole(std::mt19937_64& rng, int depth) {
    if (depth == 0 || rng() % 3 == 0) return trees::hole();
    std::string lab = rng() % 2 ? "a" : "b";
    if (rng() % 2 == 0) return trees::node_l(lab, rand_hole(rng, depth - 1), rand_tree(rng, depth - 1));
    return trees::node_r(lab, rand_tree(rng, depth - 1), rand_hole(rng, depth - 1));
}

}  // namespace

TEST_CASE("compiled morphisms agree with direct application") {
    Morphism phi{kAB, kAB, {{"a", parse_word("ab", kAB)}, {"b", {}}}};
    TypedProgram p = compile_morphism(phi);
    CHECK(well_typed(p));
    CHECK(type_equal(p.type, t_arrow(church::str_type(kAB), church::str_type(kAB))));
    CHECK(run_on_word(p, parse_word("ba", kAB)) == parse_word("ab", kAB));
    for (const auto& w : all_words(kAB, 4)) CHECK(run_on_word(p, w) == apply_morphism(phi, w));

    TypedProgram id = compile_morphism(trans::identity_morphism(kAB));
    CHECK(well_typed(id));
    for (const auto& w : all_words(kAB, 4)) CHECK(run_on_word(id, w) == w);
}

TEST_CASE("compiled morphisms across distinct alphabets") {
    Alphabet target({"c", "d", "e"});
    Morphism phi{kAB, target, {{"a", parse_word("cde", target)}, {"b", parse_word("dd", target)}}};
    TypedProgram p = compile_morphism(phi);
    CHECK(well_typed(p));
    for (const auto& w : all_words(kAB, 4)) CHECK(run_on_word(p, w) == apply_morphism(phi, w));
}

TEST_CASE("compiled hdt0l systems iterate their rules") {
    HDT0LSystem sys = doubling_system();
    TypedProgram p = compile_hdt0l(sys);
    CHECK(well_typed(p));
    // the input is consumed at the substituted string type
    TypePtr in_ty = type_substitute(church::str_type(sys.input), church::str_type(sys.work));
    CHECK(type_equal(program_input_type(p), in_ty));
    CHECK(run_on_word(p, {}) == Word{"a"});
    CHECK(run_on_word(p, parse_word("bb", kAB)) == parse_word("aaaa", sys.output));
    for (const auto& w : all_words(kAB, 4)) {
        CHECK(run_on_word(p, w) == trans::run_hdt0l(sys, w));
        CHECK(run_on_word(p, w).size() == (std::size_t{1} << w.size()));
    }
}

TEST_CASE("plain encodings inhabit every substituted string type") {
    // the property making compiled programs composable: the encoding of w is
    // typable at Str[A] for any A, not just at Str
    for (const auto& w : all_words(kAB, 3)) {
        TermPtr enc = church::encode_string(w, kAB);
        CHECK(check_type({}, enc, church::str_type(kAB)));
        CHECK(check_type({}, enc, type_substitute(church::str_type(kAB), church::bool_type())));
        CHECK(check_type({}, enc, type_substitute(church::str_type(kAB), church::str_type(kAB))));
    }
}

TEST_CASE("compiled hdt0l agrees on random systems") {
    gen::Rng rng(2026);
    Alphabet work({"x", "y"});
    for (int i = 0; i < 8; ++i) {
        HDT0LSystem sys = gen::random_hdt0l(rng, kAB, work, kAB, 3);
        TypedProgram p = compile_hdt0l(sys);
        CHECK(well_typed(p));
        for (const auto& w : all_words(kAB, 3)) CHECK(run_on_word(p, w) == trans::run_hdt0l(sys, w));
    }
}

TEST_CASE("one-hole trees compile to plugging functions") {
    using namespace trees;
    CHECK(alpha_equal(compile_hole_tree(hole(), kAB), parse_term("\\z. z")));

    HolePtr c = node_l("a", hole(), parse_tree("b((),())", kAB));
    for (const auto& t : all_trees(kAB, 5)) {
        TermPtr applied = mk_app(compile_hole_tree(c, kAB), church::encode_tree(t, kAB));
        CHECK(tree_equal(church::decode_tree(applied, kAB), hole_subst(c, t)));
    }

    std::mt19937_64 rng(7);
    for (int i = 0; i < 40; ++i) {
        HolePtr h1 = rand_hole(rng, 3), h2 = rand_hole(rng, 3);
        TreePtr t = rand_tree(rng, 3);
        // compiling a composite is extensionally composing the compilations
        TermPtr lhs = mk_app(compile_hole_tree(hole_compose(h1, h2), kAB), church::encode_tree(t, kAB));
        TermPtr rhs = mk_app(compile_hole_tree(h1, kAB),
                             mk_app(compile_hole_tree(h2, kAB), church::encode_tree(t, kAB)));
        CHECK(tree_equal(church::decode_tree(lhs, kAB), church::decode_tree(rhs, kAB)));
        CHECK(tree_equal(church::decode_tree(lhs, kAB), hole_subst(h1, hole_subst(h2, t))));
    }
}

TEST_CASE("compiled register expressions agree with evaluation") {
    using namespace trees;
    std::vector<std::string> tvars{"X1", "X2"}, hvars{"C1"};

    // variable projection picks the right positional argument
    TermPtr proj = compile_expr(ex_var("X2"), tvars, hvars, kAB);
    TreePtr t1 = parse_tree("a((),())", kAB), t2 = parse_tree("b((),a((),()))", kAB);
    TermPtr picked = mk_apps(proj, {church::encode_tree(t1, kAB), church::encode_tree(t2, kAB),
                                    compile_hole_tree(hole(), kAB)});
    CHECK(tree_equal(church::decode_tree(picked, kAB), t2));

    std::mt19937_64 rng(11);
    for (int i = 0; i < 60; ++i) {
        ExprPtr e = rand_expr(rng, 3, tvars.size(), hvars.size());
        TreeEnv rho{{"X1", rand_tree(rng, 3)}, {"X2", rand_tree(rng, 3)}};
        HolePtr c1 = rand_hole(rng, 3);
        HoleEnv rho2{{"C1", c1}};
        TermPtr term = compile_expr(e, tvars, hvars, kAB);
        TermPtr applied = mk_apps(term, {church::encode_tree(rho.at("X1"), kAB),
                                         church::encode_tree(rho.at("X2"), kAB),
                                         compile_hole_tree(c1, kAB)});
        CHECK(tree_equal(church::decode_tree(applied, kAB), eval_expr(e, rho, rho2, kAB)));
    }
}

TEST_CASE("compiled hole expressions agree with evaluation") {
    using namespace trees;
    std::vector<std::string> tvars{"X1"}, hvars{"C1", "C2"};
    std::mt19937_64 rng(13);
    for (int i = 0; i < 60; ++i) {
        HExprPtr h = rand_hexpr(rng, 3, tvars.size(), hvars.size());
        TreeEnv rho{{"X1", rand_tree(rng, 3)}};
        HoleEnv rho2{{"C1", rand_hole(rng, 3)}, {"C2", rand_hole(rng, 3)}};
        TreePtr plug = rand_tree(rng, 3);
        TermPtr term = compile_hole_expr(h, tvars, hvars, kAB);
        TermPtr applied = mk_app(mk_apps(term, {church::encode_tree(rho.at("X1"), kAB),
                                                compile_hole_tree(rho2.at("C1"), kAB),
                                                compile_hole_tree(rho2.at("C2"), kAB)}),
                                 church::encode_tree(plug, kAB));
        TreePtr expect = hole_subst(eval_hole_expr(h, rho, rho2, kAB), plug);
        CHECK(tree_equal(church::decode_tree(applied, kAB), expect));
    }
}

TEST_CASE("compiled identity transducer returns its input") {
    trees::Rtt m = identity_rtt(kAB);
    TypedProgram p = compile_rtt(m);
    CHECK(well_typed(p));
    // annotations survive a print/parse round trip
    CHECK(alpha_equal(parse_term(show_term(p.term)), p.term));
    for (const auto& t : all_trees(kAB, 9)) CHECK(tree_equal(run_on_tree(p, t), t));
}

TEST_CASE("compiled mirror transducer agrees with the direct run") {
    trees::Rtt m = mirror_rtt(kAB);
    TypedProgram p = compile_rtt(m);
    CHECK(well_typed(p));
    for (const auto& t : all_trees(kAB, 9)) {
        CHECK(tree_equal(run_on_tree(p, t), trees::run_rtt(m, t)));
        CHECK(tree_equal(run_on_tree(p, t), mirror_oracle(t)));
    }
}

TEST_CASE("compiled transducer dispatches on child states") {
    using namespace trees;
    // two states distinguishing leaves from proper trees; output at a leaf
    // comes from the initial register store
    Rtt m;
    m.name = "leaf-or-node";
    m.input = kAB;
    m.output = kAB;
    m.tree_regs = {"X"};
    m.states = {"ql", "qn"};
    m.initial = "ql";
    for (const auto& lab : kAB.symbols())
        for (const auto& q1 : m.states)
            for (const auto& q2 : m.states)
                m.delta[{q1, q2, lab}] =
                    RttUpdate{"qn", {{"X", ex_node(lab, ex_var("X<"), ex_var("X>"))}}, {}};
    m.out["ql"] = ex_node("b", ex_leaf(), ex_leaf());
    m.out["qn"] = ex_var("X");
    validate_rtt(m);

    TypedProgram p = compile_rtt(m);
    CHECK(well_typed(p));
    for (const auto& t : all_trees(kAB, 9)) CHECK(tree_equal(run_on_tree(p, t), run_rtt(m, t)));
}

TEST_CASE("compiled transducer threads hole registers") {
    using namespace trees;
    // H accumulates the one-hole context of the leftmost position
    Rtt m;
    m.name = "leftmost";
    m.input = kAB;
    m.output = kAB;
    m.tree_regs = {"X"};
    m.hole_regs = {"H"};
    m.states = {"q"};
    m.initial = "q";
    for (const auto& lab : kAB.symbols())
        m.delta[{"q", "q", lab}] = RttUpdate{
            "q",
            {{"X", ex_node(lab, ex_var("X<"), ex_var("X>"))}},
            {{"H", hx_compose(hx_var("H<"), hx_node_l(lab, hx_hole(), ex_var("X>")))}}};
    m.out["q"] = ex_plug(hx_var("H"), ex_node("b", ex_leaf(), ex_leaf()));
    validate_rtt(m);

    TypedProgram p = compile_rtt(m);
    CHECK(well_typed(p));
    for (const auto& t : all_trees(kAB, 9)) CHECK(tree_equal(run_on_tree(p, t), run_rtt(m, t)));
}

TEST_CASE("compiled dfa decides its language") {
    Dfa d = even_a_dfa();
    TypedProgram p = compile_dfa(d);
    CHECK(well_typed(p));
    CHECK(accepts(p, parse_word("aba", kAB)));
    CHECK(accepts(p, {}));
    CHECK_FALSE(accepts(p, parse_word("a", kAB)));
    for (const auto& w : all_words(kAB, 6)) CHECK(accepts(p, w) == trans::run_dfa(d, w));
}

TEST_CASE("compiled random dfas agree with direct runs") {
    gen::Rng rng(99);
    for (int i = 0; i < 6; ++i) {
        Dfa d = gen::random_dfa(rng, kAB, 1 + rng() % 4);
        TypedProgram p = compile_dfa(d);
        CHECK(well_typed(p));
        for (const auto& w : all_words(kAB, 4)) CHECK(accepts(p, w) == trans::run_dfa(d, w));
    }
}

TEST_CASE("preimage composition decides inverse images") {
    HDT0LSystem sys = revcat_system();
    for (const auto& w : all_words(kAB, 4))
        REQUIRE(trans::run_hdt0l(sys, w) == concat(Word(w.rbegin(), w.rend()), w));

    TypedProgram f = compile_hdt0l(sys);
    // every letter occurs an even number of times in reverse(w).w
    TypedProgram even = compose_preimage(f, compile_dfa(even_a_dfa()));
    CHECK(well_typed(even));
    for (const auto& w : all_words(kAB, 5)) CHECK(accepts(even, w));

    TypedProgram first = compose_preimage(f, compile_dfa(first_a_dfa()));
    CHECK(well_typed(first));
    for (const auto& w : all_words(kAB, 5)) {
        bool direct = trans::run_dfa(first_a_dfa(), trans::run_hdt0l(sys, w));
        CHECK(accepts(first, w) == direct);
        CHECK(accepts(first, w) == (!w.empty() && w.back() == "a"));
    }
}

TEST_CASE("preimage under the identity is the language itself") {
    TypedProgram id = compile_morphism(trans::identity_morphism(kAB));
    TypedProgram p = compose_preimage(id, compile_dfa(first_a_dfa()));
    CHECK(well_typed(p));
    for (const auto& w : all_words(kAB, 5)) CHECK(accepts(p, w) == trans::run_dfa(first_a_dfa(), w));
}

TEST_CASE("preimage composition on random machine pairs") {
    gen::Rng rng(4242);
    Alphabet mid({"c", "d"});
    for (int i = 0; i < 6; ++i) {
        HDT0LSystem sys = gen::random_hdt0l(rng, kAB, Alphabet({"x", "y"}), mid, 2);
        Dfa d = gen::random_dfa(rng, mid, 1 + rng() % 3);
        TypedProgram p = compose_preimage(compile_hdt0l(sys), compile_dfa(d));
        CHECK(well_typed(p));
        for (const auto& w : all_words(kAB, 4))
            CHECK(accepts(p, w) == trans::run_dfa(d, trans::run_hdt0l(sys, w)));
    }
}

TEST_CASE("function composition chains compiled programs") {
    Morphism phi{kAB, kAB, {{"a", parse_word("ab", kAB)}, {"b", parse_word("b", kAB)}}};
    Morphism psi{kAB, kAB, {{"a", parse_word("ba", kAB)}, {"b", {}}}};
    TypedProgram p = compose_programs(compile_morphism(phi), compile_morphism(psi));
    CHECK(well_typed(p));
    for (const auto& w : all_words(kAB, 4))
        CHECK(run_on_word(p, w) == apply_morphism(psi, apply_morphism(phi, w)));

    // doubling after doubling squares the growth
    TypedProgram dd = compose_programs(compile_morphism(phi), compile_hdt0l(doubling_system()));
    CHECK(well_typed(dd));
    for (const auto& w : all_words(kAB, 3))
        CHECK(run_on_word(dd, w) == trans::run_hdt0l(doubling_system(), apply_morphism(phi, w)));
}

TEST_CASE("composition rejects mismatched programs") {
    TypedProgram f = compile_morphism(trans::identity_morphism(kAB));
    TypedProgram d = compile_dfa(even_a_dfa());
    TypedProgram g = compile_morphism(trans::identity_morphism(Alphabet({"c"})));
    CHECK_THROWS_AS(compose_preimage(f, g), TypeError);    // not a language
    CHECK_THROWS_AS(compose_programs(f, d), TypeError);    // not a string program
    CHECK_THROWS_AS(compose_preimage(d, d), TypeError);    // boolean is not a string
    CHECK_THROWS_AS(compose_programs(f, g), TypeError);    // alphabet mismatch
    CHECK_THROWS_AS(compose_preimage(g, d), TypeError);    // alphabet mismatch
}
