#include "meadow/errors.hpp"
#include "meadow/syntax.hpp"
#include "support/generators.hpp"

#include <doctest.h>

using namespace meadow;

namespace {

const Term x = Term::var("x");
const Term y = Term::var("y");
const Term one = Term::one();

// Every way of deleting one matching pair of parentheses from s.
std::vector<std::string> without_one_pair(const std::string& s) {
    std::vector<std::string> out;
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') open.push_back(i);
        if (s[i] == ')') {
            const std::size_t j = open.back();
            open.pop_back();
            if (j >= 3 && std::string_view(s).substr(j - 3, 3) == "inv") continue;
            std::string t = s;
            t.erase(i, 1);
            t.erase(j, 1);
            out.push_back(t);
        }
    }
    return out;
}

}  // namespace

TEST_SUITE("syntax") {

TEST_CASE("parse examples") {
    CHECK(parse("1 + 1/2") == add(one, div(one, mk_numeral(2))));
    CHECK(parse("x^2 - x") == add(mul(mul(one, x), x), neg(x)));
    CHECK(parse("1/(1/x)") == div(one, div(one, x)));
    CHECK(parse("0") == Term::zero());
    CHECK(parse("-2") == mk_numeral(-2));
    CHECK(parse("x - y - 1") == add(add(x, neg(y)), neg(one)));
    CHECK(parse("x / y * 2") == mul(div(x, y), mk_numeral(2)));
    CHECK(parse("-x^2") == neg(mul(mul(one, x), x)));
    CHECK(parse("x^0") == one);
    CHECK(parse("inv(x) * y", Signature::Inversive) == mul(inv(x), y));
    CHECK(parse("  x\n+\ty ") == add(x, y));
    CHECK(parse("12345678901234567890") == mk_numeral(BigInt("12345678901234567890")));
}

TEST_CASE("print examples") {
    CHECK(print(div(one, Term::zero())) == "1/0");
    CHECK(print(mk_numeral(3)) == "3");
    CHECK(print(neg(div(x, y))) == "-(x/y)");
    CHECK(print(mk_numeral(-2)) == "-2");
    CHECK(print(add(x, neg(y))) == "x - y");
    CHECK(print(add(x, neg(add(y, one)))) == "x - (y + 1)");
    CHECK(print(mul(x, add(y, one))) == "x*(y + 1)");
    CHECK(print(div(x, mul(y, x))) == "x/(y*x)");
    CHECK(print(inv(add(x, one))) == "inv(x + 1)");
    CHECK(print(mk_numeral(1)) == "0 + 1");
}

TEST_CASE("parse errors carry positions") {
    try {
        parse("1 + * 2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 5);
        CHECK(e.found() == "'*'");
        CHECK(std::string(e.what()) == "1:5: expected term, found '*'");
    }
    try {
        parse("x +\n (y");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse("x $ y"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("x)"), ParseError);
    CHECK_THROWS_AS(parse("x^y"), ParseError);
    // the same input always yields the same message
    std::string first, second;
    try { parse("(x + ) "); } catch (const ParseError& e) { first = e.what(); }
    try { parse("(x + ) "); } catch (const ParseError& e) { second = e.what(); }
    CHECK(first == second);
    CHECK_FALSE(first.empty());
}

TEST_CASE("signature errors") {
    CHECK_THROWS_AS(parse("inv(x)"), SignatureError);
    CHECK_THROWS_AS(parse("x/y", Signature::Inversive), SignatureError);
    try {
        parse("1 + x/y", Signature::Inversive);
    } catch (const SignatureError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 6);
    }
}

TEST_CASE("round trip on random terms") {
    for (bool inversive : {false, true}) {
        gen::TermShape shape;
        shape.vars = {"x", "y", "long_name"};
        shape.leaf_lo = -30;
        shape.leaf_hi = 30;
        shape.allow_inverse = inversive;
        gen::TermGenerator g(inversive ? 21 : 20, shape);
        const Signature sig = inversive ? Signature::Inversive : Signature::Divisive;
        for (int i = 0; i < 2000; ++i) {
            const Term t = g.next();
            const std::string text = print(t);
            CHECK_MESSAGE(parse(text, sig) == t, text);
        }
    }
}

TEST_CASE("printer emits no removable parentheses") {
    gen::TermShape shape;
    shape.vars = {"x", "y"};
    shape.max_depth = 5;
    gen::TermGenerator g(22, shape);
    for (int i = 0; i < 500; ++i) {
        const Term t = g.next();
        const std::string text = print(t);
        for (const auto& candidate : without_one_pair(text)) {
            bool same = false;
            try {
                same = parse(candidate) == t;
            } catch (const Error&) {
            }
            CHECK_MESSAGE(!same, text << " still parses without parentheses: " << candidate);
        }
    }
}

TEST_CASE("json encoding") {
    const Term t = parse("1 + 3/x");
    const Json j = to_json(t);
    CHECK(j.dump() ==
          R"({"op":"add","args":[{"op":"one"},{"op":"div","args":[{"op":"numeral","value":"3"},{"op":"var","name":"x"}]}]})");
    CHECK(term_from_json(j) == t);
    gen::TermShape shape;
    shape.vars = {"x", "y"};
    gen::TermGenerator g(23, shape);
    for (int i = 0; i < 500; ++i) {
        const Term u = g.next();
        CHECK(term_from_json(Json::parse(to_json(u).dump())) == u);
    }
    CHECK_THROWS_AS(term_from_json(Json{{"op", "pow"}}), Error);
}

}  // TEST_SUITE
