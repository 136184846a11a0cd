#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ltc/church.hpp"
#include "test_util.hpp"

using namespace ltc;
using namespace ltc::stlc;
using namespace ltc::church;

namespace {
const Alphabet kAB({"a", "b"});
const Alphabet kOne({"1"});
}  // namespace

TEST_CASE("string encodings have the documented shape") {
    CHECK(alpha_equal(encode_string({}, kAB), parse_term(R"(\f.\g.\x. x)")));
    CHECK(alpha_equal(encode_string(parse_word("ab", kAB), kAB),
                      parse_term(R"(\f.\g.\x. f (g x))")));
    CHECK(alpha_equal(encode_string(parse_word("ba", kAB), kAB),
                      parse_term(R"(\f.\g.\x. g (f x))")));
    // over a unary alphabet the encoding of "11" is the numeral 2
    CHECK(alpha_equal(encode_string(parse_word("11", kOne), kOne),
                      parse_term(R"(\f.\x. f (f x))")));
    CHECK(show_term(encode_string(parse_word("ab", kAB), kAB)) ==
          R"(\f_a. \f_b. \x. f_a (f_b x))");
    CHECK_THROWS_AS(encode_string({"c"}, kAB), InputError);
}

TEST_CASE("string encodings are well typed, also at substituted types") {
    TypePtr str = str_type(kAB);
    CHECK(show_type(str) == "(o -> o) -> (o -> o) -> o -> o");
    for (const auto& w : all_words(kAB, 3)) {
        TermPtr t = encode_string(w, kAB);
        CHECK(check_type({}, t, str));
        CHECK(check_type({}, t, type_substitute(str, t_arrow(t_base(), t_base()))));
        CHECK(check_type({}, t, type_substitute(str, bool_type())));
        CHECK(check_type({}, t, type_substitute(str, str)));
    }
    // a string over {a,b} is not a plain endofunction
    CHECK_FALSE(check_type({}, encode_string(parse_word("ab", kAB), kAB),
                           t_arrow(t_base(), t_base())));
}

TEST_CASE("string decode inverts encode") {
    for (const auto& w : all_words(kAB, 6)) CHECK(decode_string(encode_string(w, kAB), kAB) == w);
    const Alphabet abc({"a", "b", "c"});
    for (const auto& w : all_words(abc, 4)) CHECK(decode_string(encode_string(w, abc), abc) == w);
}

TEST_CASE("string decode accepts eta-short normal forms") {
    CHECK(decode_string(parse_term(R"(\f. f)"), kOne) == parse_word("1", kOne));
    CHECK(decode_string(parse_term(R"(\f.\g. g)"), kAB) == parse_word("b", kAB));
    // missing only the endpoint abstraction
    CHECK(decode_string(parse_term(R"(\f.\g. f)"), kAB) == parse_word("a", kAB));
}

TEST_CASE("string decode rejects non-encodings") {
    CHECK_THROWS_AS(decode_string(parse_term(R"(\f.\x. x f)"), kOne), DecodeError);
    CHECK_THROWS_AS(decode_string(parse_term(R"(\f.\x. f x x)"), kOne), DecodeError);
    CHECK_THROWS_AS(decode_string(parse_term(R"(\f.\x. f (y x))"), kOne), DecodeError);
    CHECK_THROWS_AS(decode_string(parse_term(R"(\f.\x. f (\y. y))"), kOne), DecodeError);
    // diverging input exhausts fuel instead of looping
    TermPtr omega = parse_term(R"((\x. x x) (\x. x x))");
    CHECK_THROWS_AS(decode_string(omega, kOne, 1000), FuelExhausted);
}

TEST_CASE("string decode normalizes first") {
    // the concatenation combinator: \f.\g.\x. u f g (v f g x)
    TermPtr u = encode_string(parse_word("ab", kAB), kAB);
    TermPtr v = encode_string(parse_word("ba", kAB), kAB);
    TermPtr cat = parse_term(R"(\u.\v.\f.\g.\x. u f g (v f g x))");
    CHECK(decode_string(mk_apps(cat, {u, v}), kAB) == parse_word("abba", kAB));

    // decode is blind to binder shadowing
    CHECK(decode_string(parse_term(R"(\f.\f.\x. f x)"), kAB) == parse_word("b", kAB));
}

TEST_CASE("boolean encode and decode") {
    CHECK(decode_bool(encode_bool(true)) == true);
    CHECK(decode_bool(encode_bool(false)) == false);
    CHECK(check_type({}, encode_bool(true), bool_type()));
    CHECK(check_type({}, encode_bool(false), bool_type()));

    // if-then-else by application
    TermPtr picked = mk_apps(encode_bool(true), {encode_bool(false), encode_bool(true)});
    CHECK(decode_bool(picked) == false);

    CHECK_THROWS_AS(decode_bool(parse_term(R"(\x.\y. x y)")), DecodeError);
    CHECK_THROWS_AS(decode_bool(parse_term(R"(\x. x)")), DecodeError);
}

TEST_CASE("tree encodings have the documented shape") {
    CHECK(alpha_equal(encode_tree(trees::leaf(), kAB), parse_term(R"(\n.\m.\x. x)")));
    const Alphabet one_lab({"a"});
    trees::TreePtr t = trees::node("a", trees::leaf(), trees::leaf());
    CHECK(alpha_equal(encode_tree(t, one_lab), parse_term(R"(\f.\x. f x x)")));
    CHECK(show_term(encode_tree(t, one_lab)) == R"(\n_a. \x. n_a x x)");

    trees::TreePtr t2 = trees::parse_tree("a(b((),()),())", kAB);
    CHECK(alpha_equal(encode_tree(t2, kAB), parse_term(R"(\f.\g.\x. f (g x x) x)")));
    CHECK_THROWS_AS(encode_tree(t2, one_lab), InputError);
}

TEST_CASE("tree encodings are well typed, also at substituted types") {
    TypePtr bt = tree_type(kAB);
    CHECK(show_type(bt) == "(o -> o -> o) -> (o -> o -> o) -> o -> o");
    CHECK(show_type(dtree_type(kOne)) ==
          "((o -> o -> o) -> o -> o) -> (o -> o -> o) -> o -> o");
    for (const auto& t : all_trees(kAB, 7)) {
        TermPtr enc = encode_tree(t, kAB);
        CHECK(check_type({}, enc, bt));
        CHECK(check_type({}, enc, type_substitute(bt, bool_type())));
    }
}

TEST_CASE("tree decode inverts encode") {
    for (const auto& t : all_trees(kAB, 11))
        CHECK(trees::tree_equal(decode_tree(encode_tree(t, kAB), kAB), t));
}

TEST_CASE("tree decode rejects non-encodings and accepts eta-short forms") {
    const Alphabet one_lab({"a"});
    CHECK_THROWS_AS(decode_tree(parse_term(R"(\n.\x. n x)"), one_lab), DecodeError);
    CHECK_THROWS_AS(decode_tree(parse_term(R"(\n.\x. x n n)"), one_lab), DecodeError);
    CHECK_THROWS_AS(decode_tree(parse_term(R"(\n.\x. n x (y x))"), one_lab), DecodeError);
    // eta-short leaf
    CHECK(trees::is_leaf(decode_tree(parse_term(R"(\n.\x. x)"), one_lab)));
    CHECK(trees::is_leaf(decode_tree(parse_term(R"(\n.\m.\x. x)"), kAB)));
}
