#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ltc/eal_compile.hpp"

#include "ltc/eal.hpp"
#include "ltc/eal_derive.hpp"
#include "ltc/gen.hpp"
#include "ltc/trans.hpp"
#include "ltc/trees.hpp"
#include "test_util.hpp"

using namespace ltc;
using namespace ltc::eal;
using namespace ltc::eal_compile;

namespace {
const Alphabet kAB({"a", "b"});

constexpr std::uint64_t kBigFuel = 50'000'000;

// every program leaving a compiler must be closed, affine, stratified, and
// carry a derivation that checks and matches its term and type
void check_hygiene(const EalProgram& p) {
    CHECK(free_vars(p.term).empty());
    auto lin = check_linearity(p.term);
    CHECK(lin.ok);
    if (!lin.ok) CAPTURE(lin.binders.front());
    auto str = check_stratification(p.term);
    CHECK(str.ok);
    auto dc = check_derivation(p.derivation);
    CHECK(dc.ok);
    if (!dc.ok) {
        CAPTURE(dc.path);
        CAPTURE(dc.reason);
    }
    CHECK(alpha_equal(p.derivation->subject, p.term));
    CHECK(type_alpha_equal(p.derivation->type, p.type));
}

Word run_compiled(const EalProgram& p, const Word& w) {
    TermPtr in = encode_string(w, p.input.alphabet);
    if (p.banged_input) in = e_bang(in);
    return decode_string(e_app(p.term, in), p.output.alphabet, kBigFuel);
}

trees::TreePtr run_compiled_tree(const EalProgram& p, const trees::TreePtr& t) {
    TermPtr in = encode_tree(t, p.input.alphabet);
    return decode_tree(e_app(p.term, in), p.output.alphabet, kBigFuel);
}

// single-state copyless transducer mapping every input letter to a fixed
// image word; image may mention the register X at most once
trans::RegisterTransducer image_rt(const std::string& name, const Alphabet& in,
                                   const Alphabet& out,
                                   const std::map<std::string, Word>& image) {
    trans::RegisterTransducer m;
    m.name = name;
    m.input = in;
    m.output = out;
    m.registers = {"X"};
    m.states = {"q"};
    m.initial = "q";
    for (const auto& c : in.symbols()) {
        Word u{"X"};
        const Word& img = image.at(c);
        u.insert(u.end(), img.begin(), img.end());
        m.delta[{"q", c}] = trans::RtUpdate{"q", {{"X", u}}};
    }
    m.out["q"] = {"X"};
    return m;
}

// flips the root label (a <-> b), leaves the rest of the tree alone; register
// Y rebuilds the flipped tree from the same child values X uses, which is
// only consistent because X and Y are declared in conflict
trees::Brtt root_flip_brtt() {
    using namespace ltc::trees;
    Rtt m;
    m.name = "root-flip";
    m.input = kAB;
    m.output = kAB;
    m.tree_regs = {"X", "Y"};
    m.states = {"q"};
    m.initial = "q";
    auto other = [](const std::string& c) { return c == "a" ? std::string("b") : std::string("a"); };
    for (const auto& lab : kAB.symbols())
        m.delta[{"q", "q", lab}] =
            RttUpdate{"q",
                      {{"X", ex_node(lab, ex_var("X<"), ex_var("X>"))},
                       {"Y", ex_node(other(lab), ex_var("X<"), ex_var("X>"))}},
                      {}};
    m.out["q"] = ex_var("Y");
    return Brtt{m, ConflictRelation({"X", "Y"}, {{"X", "Y"}})};
}

trees::Brtt plain_brtt(const trees::Rtt& m) {
    std::vector<std::string> carrier = m.tree_regs;
    carrier.insert(carrier.end(), m.hole_regs.begin(), m.hole_regs.end());
    return trees::Brtt{m, trees::ConflictRelation(carrier, {})};
}
}  // namespace

TEST_CASE("reverse-concatenation transducer runs under the affine encoding") {
    EalProgram p = compile_sst(trans::xy_rt(kAB));
    check_hygiene(p);
    CHECK(show_type(p.type) == "(" + show_type(str_type(kAB)) + ") -o " + show_type(str_type(kAB)));
    for (const Word& w : all_words(kAB, 6)) {
        Word want = concat(w, Word(w.rbegin(), w.rend()));
        CHECK(run_compiled(p, w) == want);
    }
}

TEST_CASE("single-state dispatch can be elided without changing behavior") {
    EalProgram full = compile_sst(trans::xy_rt(kAB));
    EalProgram slim = compile_sst(trans::xy_rt(kAB), true);
    check_hygiene(slim);
    CHECK(term_size(slim.term) < term_size(full.term));
    for (const Word& w : all_words(kAB, 4)) CHECK(run_compiled(slim, w) == run_compiled(full, w));
}

TEST_CASE("random copyless transducers agree with direct runs") {
    gen::Rng rng(20260814);
    const Alphabet in3({"a", "b", "c"});
    for (int i = 0; i < 10; ++i) {
        auto m = gen::random_copyless_rt(rng, in3, kAB, 1 + i % 3, 1 + (i / 2) % 3, 2);
        EalProgram p = compile_sst(m);
        check_hygiene(p);
        for (const Word& w : all_words(in3, 3))
            CHECK(run_compiled(p, w) == trans::run_register_transducer(m, w));
    }
}

TEST_CASE("transition algebra tracks the backward output construction") {
    // dig the letter algebras and the output dispatcher out of the compiled
    // term, then drive them directly: the fold of a suffix, pointed at a
    // state and fed register words, must produce the backward-constructed
    // output for that state
    trans::RegisterTransducer m = trans::xy_rt(kAB);
    EalProgram p = compile_sst(m);

    TermPtr t = p.term;
    REQUIRE(t->kind == TermKind::Abs);
    t = t->t1;  // body under z
    for (std::size_t i = 0; i < kAB.size(); ++i) {
        REQUIRE(t->kind == TermKind::BangAbs);
        t = t->t1;
    }
    REQUIRE(t->kind == TermKind::App);
    TermPtr wrap = t->t1;
    std::map<std::string, TermPtr> algebra;
    TermPtr fold = t->t2;
    for (auto it = m.input.symbols().rbegin(); it != m.input.symbols().rend(); ++it) {
        REQUIRE(fold->kind == TermKind::App);
        REQUIRE(fold->t2->kind == TermKind::Bang);
        algebra[*it] = fold->t2->t1;
        fold = fold->t1;
    }
    REQUIRE(wrap->kind == TermKind::BangAbs);
    REQUIRE(wrap->t1->kind == TermKind::Bang);
    TermPtr core = wrap->t1->t1;  // h Fhat pi id...
    std::vector<TermPtr> spine;
    while (core->kind == TermKind::App) {
        spine.push_back(core->t2);
        core = core->t1;
    }
    REQUIRE(spine.size() == 2 + m.registers.size());
    TermPtr fhat = spine.back();

    auto word_term = [&](const Word& u) {
        TermPtr acc = e_var("x");
        for (auto it = u.rbegin(); it != u.rend(); ++it) acc = e_app(e_var("f_" + *it), acc);
        return e_abs("x", acc);
    };
    auto fin_term = [&](std::size_t i, std::size_t n) {
        TermPtr body = e_var("x" + std::to_string(i));
        for (std::size_t k = n; k >= 1; --k) body = e_abs("x" + std::to_string(k), body);
        return body;
    };
    auto decode_open = [&](TermPtr r) {
        for (auto it = kAB.symbols().rbegin(); it != kAB.symbols().rend(); ++it)
            r = e_bang_abs("f_" + *it, r);
        return decode_string(r, kAB, kBigFuel);
    };

    std::map<std::string, Word> reg_vals{{"X", {"a", "b"}}, {"Y", {"b"}}};
    auto subst_regs = [&](const Word& u) {
        Word out;
        for (const auto& s : u) {
            if (reg_vals.count(s)) {
                out.insert(out.end(), reg_vals[s].begin(), reg_vals[s].end());
            } else {
                out.push_back(s);
            }
        }
        return out;
    };

    for (const Word& v : all_words(kAB, 3)) {
        trans::OutputFunction g = m.out;
        for (auto it = v.rbegin(); it != v.rend(); ++it) g = trans::delta_o(m, *it, g);
        TermPtr chain = fhat;
        for (auto it = v.rbegin(); it != v.rend(); ++it) chain = e_app(algebra[*it], chain);
        for (std::size_t qi = 0; qi < m.states.size(); ++qi) {
            TermPtr applied = e_app(chain, fin_term(qi + 1, m.states.size()));
            for (const auto& r : m.registers) applied = e_app(applied, word_term(reg_vals[r]));
            CHECK(decode_open(e_bang(applied)) == subst_regs(g.at(m.states[qi])));
        }
    }
}

TEST_CASE("promotion shifts a program to banged strings") {
    EalProgram p = promote_program(compile_sst(trans::xy_rt(kAB)));
    check_hygiene(p);
    CHECK(p.banged_input);
    CHECK(p.banged_output);
    CHECK(p.type->kind == TypeKind::Lollipop);
    CHECK(p.type->t1->kind == TypeKind::Bang);
    CHECK(p.type->t2->kind == TypeKind::Bang);
    for (const Word& w : all_words(kAB, 4)) {
        Word want = concat(w, Word(w.rbegin(), w.rend()));
        CHECK(run_compiled(p, w) == want);
    }
    CHECK_THROWS_AS(promote_program(p), TypeError);
}

TEST_CASE("composition by substitution repeats the input its own length") {
    const Alphabet idx({"i"});
    EalProgram f = promote_program(
        compile_sst(image_rt("collapse", kAB, idx, {{"a", {"i"}}, {"b", {"i"}}})));
    EalProgram g = promote_program(
        compile_sst(image_rt("copy", kAB, kAB, {{"a", {"a"}}, {"b", {"b"}}})));
    EalProgram h = compile_cbs(f, {g});
    check_hygiene(h);
    for (const Word& w : all_words(kAB, 4)) {
        Word want;
        for (std::size_t i = 0; i < w.size(); ++i) want = concat(want, w);
        CHECK(run_compiled(h, w) == want);
    }
}

TEST_CASE("composition by substitution agrees with the direct oracle") {
    gen::Rng rng(77);
    const Alphabet idx({"1", "2"});
    for (int round = 0; round < 5; ++round) {
        auto fm = gen::random_copyless_rt(rng, kAB, idx, 1 + round % 2, 1 + round % 2, 2);
        std::map<std::string, trans::StringFn> family;
        std::vector<EalProgram> gs;
        std::vector<trans::RegisterTransducer> gms;
        for (const auto& c : idx.symbols()) {
            gms.push_back(gen::random_copyless_rt(rng, kAB, kAB, 1 + round % 2, 1, 2));
            family[c] = [&gms, i = gms.size() - 1](const Word& w) {
                return trans::run_register_transducer(gms[i], w);
            };
            gs.push_back(promote_program(compile_sst(gms.back())));
        }
        EalProgram h = compile_cbs(promote_program(compile_sst(fm)), gs);
        check_hygiene(h);
        trans::StringFn ff = [&](const Word& w) { return trans::run_register_transducer(fm, w); };
        for (const Word& w : all_words(kAB, 3))
            CHECK(run_compiled(h, w) == trans::cbs(ff, family, w));
    }
}

TEST_CASE("composition by substitution rejects ill-matched programs") {
    EalProgram id_ab =
        promote_program(compile_sst(image_rt("copy", kAB, kAB, {{"a", {"a"}}, {"b", {"b"}}})));
    CHECK_THROWS_AS(compile_cbs(id_ab, {}), InputError);
    // index alphabet has two letters, only one substitution given
    CHECK_THROWS_AS(compile_cbs(id_ab, {id_ab}), TypeError);
    // unpromoted index program
    EalProgram plain = compile_sst(trans::xy_rt(kAB));
    CHECK_THROWS_AS(compile_cbs(plain, {id_ab, id_ab}), TypeError);
    // substitutions reading the wrong source alphabet
    const Alphabet cd({"c", "d"});
    EalProgram id_cd =
        promote_program(compile_sst(image_rt("copy2", cd, kAB, {{"c", {"a"}}, {"d", {"b"}}})));
    CHECK_THROWS_AS(compile_cbs(id_ab, {id_cd, id_cd}), TypeError);
}

TEST_CASE("non-copyless transducers are rejected with the offending register") {
    trans::RegisterTransducer m = trans::xy_rt(kAB);
    m.delta[{"q", "a"}].update["X"] = {"X", "a", "X"};
    CHECK_THROWS_WITH_AS(compile_sst(m), doctest::Contains("X"), ValidityError);
}

TEST_CASE("tree transducers compile to the affine calculus") {
    auto trees9 = all_trees(kAB, 9);
    for (const trees::Rtt& m : {identity_rtt(kAB), mirror_rtt(kAB)}) {
        EalProgram p = compile_brtt(plain_brtt(m));
        check_hygiene(p);
        CHECK(type_alpha_equal(p.type, y_lolli(tree_type(kAB), tree_type(kAB))));
        for (const auto& t : trees9)
            CHECK(trees::tree_equal(run_compiled_tree(p, t), trees::run_rtt(m, t)));
    }
}

TEST_CASE("conflicting registers may consume the same child value") {
    trees::Brtt b = root_flip_brtt();
    REQUIRE(trees::check_brtt(b).ok);
    EalProgram p = compile_brtt(b);
    check_hygiene(p);
    for (const auto& t : all_trees(kAB, 9))
        CHECK(trees::tree_equal(run_compiled_tree(p, t), trees::run_rtt(b.rtt, t)));

    // without the declared conflict the same machine is rejected
    trees::Brtt bad{b.rtt, trees::ConflictRelation({"X", "Y"}, {})};
    CHECK(!trees::check_brtt(bad).ok);
    CHECK_THROWS_AS(compile_brtt(bad), ValidityError);
}

TEST_CASE("hole registers move subtrees through contexts") {
    // rotate: the output plugs the left subtree into a context accumulated
    // from right children; exercises hole composition and plugging
    using namespace ltc::trees;
    Rtt m;
    m.name = "spine-context";
    m.input = kAB;
    m.output = kAB;
    m.tree_regs = {"X"};
    m.hole_regs = {"C"};
    m.states = {"q"};
    m.initial = "q";
    for (const auto& lab : kAB.symbols())
        m.delta[{"q", "q", lab}] = RttUpdate{
            "q",
            {{"X", ex_var("X>")}},
            {{"C", hx_compose(hx_var("C<"), hx_node_l(lab, hx_hole(), ex_var("X<")))}}};
    m.out["q"] = ex_plug(hx_var("C"), ex_var("X"));
    validate_rtt(m);
    EalProgram p = compile_brtt(plain_brtt(m));
    check_hygiene(p);
    for (const auto& t : all_trees(kAB, 7))
        CHECK(trees::tree_equal(run_compiled_tree(p, t), trees::run_rtt(m, t)));
}
