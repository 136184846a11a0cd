#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ltc/gen.hpp"
#include "ltc/trans.hpp"
#include "test_util.hpp"

using namespace ltc;
using namespace ltc::trans;

namespace {
const Alphabet kAB({"a", "b"});

Word rev(Word w) {
    std::reverse(w.begin(), w.end());
    return w;
}

Word operator+(Word a, const Word& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

HDT0LSystem doubling_system() {
    // one work letter, every input letter doubles it, output letter a
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

Word run_pipeline(const std::vector<RegisterTransducer>& steps, Word w) {
    for (const auto& rt : steps) w = run_register_transducer(rt, w);
    return w;
}
}  // namespace

TEST_CASE("xy transducer computes w . reverse(w)") {
    RegisterTransducer rt = xy_rt(kAB);
    validate_rt(rt);
    CHECK(run_register_transducer(rt, parse_word("ab", kAB)) == parse_word("abba", kAB));
    for (const auto& w : all_words(kAB, 6))
        CHECK(run_register_transducer(rt, w) == w + rev(w));
    CHECK(check_copyless(rt).ok);
}

TEST_CASE("empty input yields the output word with registers erased") {
    RegisterTransducer rt = xy_rt(kAB);
    rt.out["q"] = {"a", "X", "b", "Y"};
    CHECK(run_register_transducer(rt, {}) == parse_word("ab", kAB));
}

TEST_CASE("register doubling from empty stays empty") {
    RegisterTransducer rt;
    rt.name = "dup";
    rt.input = kAB;
    rt.output = kAB;
    rt.registers = {"X"};
    rt.states = {"q"};
    rt.initial = "q";
    for (const auto& c : kAB.symbols()) rt.delta[{"q", c}] = RtUpdate{"q", {{"X", {"X", "X"}}}};
    rt.out["q"] = {"X"};
    validate_rt(rt);
    for (const auto& w : all_words(kAB, 5)) CHECK(run_register_transducer(rt, w).empty());
    CHECK_FALSE(check_copyless(rt).ok);
}

TEST_CASE("copyless check localizes violations") {
    RegisterTransducer rt = xy_rt(kAB);
    auto rep = check_copyless(rt);
    CHECK(rep.ok);

    rt.out["q"] = {"X", "X"};
    rep = check_copyless(rt);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].find("out q") != std::string::npos);
    CHECK(rep.violations[0].find("register X") != std::string::npos);

    // a register may feed two different registers only once in total
    rt = xy_rt(kAB);
    rt.delta[{"q", "a"}].update["Y"] = {"X"};
    rep = check_copyless(rt);
    CHECK_FALSE(rep.ok);
    CHECK(rep.violations[0].find("delta(q,a)") != std::string::npos);
}

TEST_CASE("morphism application") {
    Morphism phi{kAB, kAB, {{"a", parse_word("ab", kAB)}, {"b", {}}}};
    validate_morphism(phi);
    CHECK(apply_morphism(phi, parse_word("ba", kAB)) == parse_word("ab", kAB));
    CHECK(apply_morphism(phi, {}) == Word{});
    Morphism id = identity_morphism(kAB);
    for (const auto& w : all_words(kAB, 4)) CHECK(apply_morphism(id, w) == w);

    Morphism bad{kAB, kAB, {{"a", {"a"}}}};
    CHECK_THROWS_AS(validate_morphism(bad), ValidityError);
}

TEST_CASE("hdt0l doubling system") {
    HDT0LSystem sys = doubling_system();
    validate_hdt0l(sys);
    CHECK(run_hdt0l(sys, {}) == Word{"a"});
    CHECK(run_hdt0l(sys, parse_word("bb", kAB)) == parse_word("aaaa", sys.output));
    for (const auto& w : all_words(kAB, 4))
        CHECK(run_hdt0l(sys, w).size() == (std::size_t{1} << w.size()));
}

TEST_CASE("hdt0l applies the morphisms in word order") {
    // h_a sends x to xy, h_b sends x to yx (and fixes y); the two orders of
    // "ab" produce different words, pinning the composition direction
    HDT0LSystem sys;
    sys.name = "order";
    sys.input = kAB;
    sys.work = Alphabet({"x", "y"});
    sys.output = Alphabet({"x", "y"});
    sys.init = {"x"};
    sys.rules["a"] = Morphism{sys.work, sys.work, {{"x", {"x", "y"}}, {"y", {"y"}}}};
    sys.rules["b"] = Morphism{sys.work, sys.work, {{"x", {"y", "x"}}, {"y", {"y"}}}};
    sys.final_rule = identity_morphism(sys.work);
    validate_hdt0l(sys);
    // h_a(h_b(x)) = h_a(yx) = y xy
    CHECK(run_hdt0l(sys, parse_word("ab", sys.input)) == parse_word("yxy", sys.work));
    // h_b(h_a(x)) = h_b(xy) = yx y
    CHECK(run_hdt0l(sys, parse_word("ba", sys.input)) == parse_word("yxy", sys.work));

    gen::Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        HDT0LSystem s = gen::random_hdt0l(rng, kAB, Alphabet({"x", "y"}), kAB, 2);
        validate_hdt0l(s);
        Word w = gen::random_word(rng, kAB, 3), v = gen::random_word(rng, kAB, 3);
        // morphism property: the w.v run factors through the v run's work word
        Word u = s.init;
        for (auto it = v.rbegin(); it != v.rend(); ++it) u = apply_morphism(s.rules.at(*it), u);
        for (auto it = w.rbegin(); it != w.rend(); ++it) u = apply_morphism(s.rules.at(*it), u);
        CHECK(run_hdt0l(s, w + v) == apply_morphism(s.final_rule, u));
    }
}

TEST_CASE("squaring underlines the diagonal") {
    const Alphabet digits({"1", "2", "3", "4"});
    Word w = parse_word("1234", digits);
    Word expect;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            std::string s = std::to_string(j);
            expect.push_back(i == j ? underline(s) : s);
        }
    CHECK(squaring(digits, w) == expect);
    CHECK(squaring(digits, {}) == Word{});
    const Alphabet bin({"1", "2"});
    for (const auto& v : all_words(bin, 6)) CHECK(squaring(bin, v).size() == v.size() * v.size());
}

TEST_CASE("squaring pipeline composes to squaring") {
    const Alphabet digits({"1", "2", "3", "4"});
    auto steps = squaring_pipeline(digits);
    REQUIRE(steps.size() == 4);
    for (const auto& rt : steps) validate_rt(rt);
    CHECK(run_pipeline(steps, parse_word("1234", digits)) ==
          squaring(digits, parse_word("1234", digits)));
    CHECK(run_pipeline(steps, {}) == Word{});

    const Alphabet bin({"1", "2"});
    auto bsteps = squaring_pipeline(bin);
    for (const auto& w : all_words(bin, 5)) CHECK(run_pipeline(bsteps, w) == squaring(bin, w));

    // steps 2 and 4 are the copyless reversal transducer
    CHECK(check_copyless(steps[1]).ok);
    CHECK(check_copyless(steps[3]).ok);
    for (const auto& w : all_words(bin, 5))
        CHECK(run_register_transducer(reverse_rt(bin), w) == rev(w));
}

TEST_CASE("underline helpers") {
    CHECK(underline("a") == "_a");
    CHECK(is_underlined("_a"));
    CHECK_FALSE(is_underlined("a"));
    CHECK(plain("_a") == "a");
    CHECK_THROWS_AS(plain("a"), InputError);
    Alphabet ext = underlined_extension(kAB);
    CHECK(ext.symbols() == std::vector<std::string>{"a", "b", "_a", "_b"});
}

TEST_CASE("composition by substitution") {
    StringFn length_in_as = [](const Word& w) { return Word(w.size(), "i"); };
    StringFn id = [](const Word& w) { return w; };
    std::map<std::string, StringFn> family{{"i", id}};

    CHECK(cbs(length_in_as, family, parse_word("ab", kAB)) == parse_word("abab", kAB));
    CHECK(cbs([](const Word&) { return Word{}; }, family, parse_word("ab", kAB)) == Word{});

    // output length is the sum over emitted indices
    StringFn two = [](const Word&) { return Word{"i", "j"}; };
    std::map<std::string, StringFn> fam2{{"i", id}, {"j", [](const Word& w) { return Word(2 * w.size(), "a"); }}};
    for (const auto& w : all_words(kAB, 4)) CHECK(cbs(two, fam2, w).size() == 3 * w.size());

    CHECK_THROWS_AS(cbs(two, family, parse_word("a", kAB)), InputError);
}

TEST_CASE("one backward step substitutes updates into the next output") {
    RegisterTransducer rt = xy_rt(kAB);
    OutputFunction g = delta_o(rt, "a", rt.out);
    CHECK(g.at("q") == Word{"X", "a", "a", "Y"});

    OutputFunction empty{{"q", {}}};
    CHECK(delta_o(rt, "a", empty).at("q") == Word{});

    // register-free output functions are just relabeled along delta
    RegisterTransducer two;
    two.name = "two";
    two.input = Alphabet({"a"});
    two.output = kAB;
    two.registers = {};
    two.states = {"p", "r"};
    two.initial = "p";
    two.delta[{"p", "a"}] = RtUpdate{"r", {}};
    two.delta[{"r", "a"}] = RtUpdate{"r", {}};
    two.out["p"] = parse_word("a", kAB);
    two.out["r"] = parse_word("b", kAB);
    validate_rt(two);
    OutputFunction g2 = delta_o(two, "a", two.out);
    CHECK(g2.at("p") == two.out.at("r"));
    CHECK(g2.at("r") == two.out.at("r"));
}

TEST_CASE("backward run agrees with the forward semantics") {
    RegisterTransducer rt = xy_rt(kAB);
    for (const auto& w : all_words(kAB, 6))
        CHECK(backward_run(rt, w) == run_register_transducer(rt, w));

    gen::Rng rng(42);
    for (int i = 0; i < 20; ++i) {
        RegisterTransducer r = gen::random_rt(rng, kAB, kAB, 2, 2, 3);
        validate_rt(r);
        for (const auto& w : all_words(kAB, 5))
            CHECK(backward_run(r, w) == run_register_transducer(r, w));
    }
}

TEST_CASE("copyless transducers grow at most linearly") {
    gen::Rng rng(7);
    for (int i = 0; i < 15; ++i) {
        RegisterTransducer rt = gen::random_copyless_rt(rng, kAB, kAB, 2, 3, 2);
        validate_rt(rt);
        REQUIRE(check_copyless(rt).ok);
        std::size_t per_step = 0, at_out = 0;
        for (const auto& [k, u] : rt.delta) {
            std::size_t n = 0;
            for (const auto& [r, word] : u.update) n += word.size();
            per_step = std::max(per_step, n);
        }
        for (const auto& [q, word] : rt.out) at_out = std::max(at_out, word.size());
        std::size_t c = 2 * per_step + at_out + 1;
        for (const auto& w : all_words(kAB, 8))
            CHECK(run_register_transducer(rt, w).size() <= c * (w.size() + 1));
    }
}

TEST_CASE("validation rejects malformed transducers") {
    RegisterTransducer rt = xy_rt(kAB);
    rt.delta.erase({"q", "b"});
    CHECK_THROWS_AS(validate_rt(rt), ValidityError);

    rt = xy_rt(kAB);
    rt.registers.push_back("a");  // collides with an input/output letter
    CHECK_THROWS_AS(validate_rt(rt), ValidityError);

    rt = xy_rt(kAB);
    rt.delta[{"q", "a"}].update.erase("Y");
    CHECK_THROWS_AS(validate_rt(rt), ValidityError);

    rt = xy_rt(kAB);
    rt.out["q"] = {"Z"};
    CHECK_THROWS_AS(validate_rt(rt), ValidityError);

    rt = xy_rt(kAB);
    rt.delta[{"q", "a"}].next = "nowhere";
    CHECK_THROWS_AS(validate_rt(rt), ValidityError);
}

TEST_CASE("dfa runs") {
    // odd number of a's
    Dfa d;
    d.name = "odd-a";
    d.input = kAB;
    d.states = {"even", "odd"};
    d.initial = "even";
    d.accepting = {"odd"};
    d.delta[{"even", "a"}] = "odd";
    d.delta[{"odd", "a"}] = "even";
    d.delta[{"even", "b"}] = "even";
    d.delta[{"odd", "b"}] = "odd";
    validate_dfa(d);
    for (const auto& w : all_words(kAB, 6)) {
        std::size_t as = 0;
        for (const auto& c : w) as += (c == "a");
        CHECK(run_dfa(d, w) == (as % 2 == 1));
    }
    d.delta.erase({"odd", "b"});
    CHECK_THROWS_AS(validate_dfa(d), ValidityError);
}

TEST_CASE("generated machines are valid") {
    gen::Rng rng(99);
    for (int i = 0; i < 10; ++i) {
        validate_rt(gen::random_rt(rng, kAB, kAB, 3, 2, 3));
        RegisterTransducer sst = gen::random_copyless_rt(rng, kAB, kAB, 2, 2, 2);
        validate_rt(sst);
        CHECK(check_copyless(sst).ok);
        validate_hdt0l(gen::random_hdt0l(rng, kAB, Alphabet({"x", "y"}), kAB, 2));
        validate_dfa(gen::random_dfa(rng, kAB, 3));
    }
}
