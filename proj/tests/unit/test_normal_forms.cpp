#include "meadow/errors.hpp"
#include "meadow/normal_forms.hpp"
#include "meadow/syntax.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

using namespace meadow;

namespace {

SignedFraction sf(bool negative, long long n, long long m) { return {negative, BigInt(n), BigInt(m)}; }

oracle::Q q0_value(const Term& t) { return oracle::evaluate(oracle::RationalOps{}, t, {}); }

// A one-hole context of the given depth around `hole`, siblings drawn from g.
Term wrap_in_context(const Term& hole, int depth, gen::TermGenerator& g) {
    Term t = hole;
    for (int i = 0; i < depth; ++i) {
        const Term other = g.next();
        const bool left = g.rng()() % 2 == 0;
        switch (g.rng()() % 4) {
            case 0: t = left ? add(t, other) : add(other, t); break;
            case 1: t = left ? mul(t, other) : mul(other, t); break;
            case 2: t = neg(t); break;
            default: t = left ? div(t, other) : div(other, t); break;
        }
    }
    return t;
}

}  // namespace

TEST_SUITE("normal-forms") {

TEST_CASE("basic term examples") {
    CHECK(to_basic(parse("1")).summands == std::vector<SignedFraction>{sf(false, 1, 1)});
    CHECK(to_basic(parse("1")).str() == "[+ 1/1]");
    CHECK(to_basic(parse("1/0")).summands.empty());
    CHECK(to_basic(parse("1/0")).str() == "[]");
    CHECK(print(to_basic(parse("1/0")).render()) == "0");
    CHECK(to_basic(parse("(1+1)/((1+1)+1)")).str() == "[+ 2/3]");
    CHECK(to_basic(parse("-(1/2)")).str() == "[- 1/2]");
    CHECK(to_basic(parse("0")).summands.empty());
    CHECK_THROWS_AS(to_basic(parse("x + 1")), OpenTerm);
    CHECK_THROWS_AS(to_basic(parse("inv(2)", Signature::Inversive)), MixedSignature);
}

TEST_CASE("basic term grammar") {
    CHECK(is_basic_term(parse("0")));
    CHECK(is_basic_term(parse("2/3")));
    CHECK(is_basic_term(parse("-(2/3) + 4/5")));
    CHECK(is_basic_term(parse("2/3 - 4/5")));  // a + -(b) is the same tree
    CHECK_FALSE(is_basic_term(parse("2/0")));
    CHECK_FALSE(is_basic_term(parse("0/3")));
    CHECK_FALSE(is_basic_term(parse("2")));
    CHECK_FALSE(is_basic_term(parse("(2/3)*(1/5)")));
    CHECK_FALSE(is_basic_term(parse("x/3")));
    CHECK_FALSE(is_basic_term(parse("1/3")));  // the constant 1 is not the numeral 0 + 1
    CHECK(is_basic_term(div(mk_numeral(1), mk_numeral(3))));
    CHECK(is_basic_term(parse("4/5 + (2/3 + 4/7)")));  // B is closed under any sum
}

TEST_CASE("ring normal form") {
    CHECK(cr_normal(parse("1 + -1")) == 0);
    CHECK(cr_normal(parse("(1+1)*(1+1)")) == 4);
    CHECK(cr_normal(parse("-(1+1)")) == -2);
    CHECK(cr_normal(mk_numeral(BigInt("123456789012345678901234567890"))) == BigInt("123456789012345678901234567890"));
    CHECK_THROWS_AS(cr_normal(parse("x")), OpenTerm);
    CHECK_THROWS_AS(cr_normal(parse("1/2")), NotRingTerm);

    gen::TermShape shape;
    shape.allow_division = false;
    gen::TermGenerator g(3, shape);
    for (int i = 0; i < 500; ++i) {
        const Term t = g.next();
        CHECK(oracle::Q(cr_normal(t)) == q0_value(t));
        CHECK(check_eq(*mk(30), t, mk_numeral(cr_normal(t)), Exhaustive{}).verdict == Verdict::Valid);
    }
}

TEST_CASE("to_basic is sound and stays in the grammar") {
    gen::TermShape shape;
    shape.max_depth = 8;
    gen::TermGenerator g(11, shape);
    const std::vector<ModelPtr> models{mk(2), mk(6), gf(2, 2)};
    for (int i = 0; i < 400; ++i) {
        const Term t = g.next();
        const BasicTerm b = to_basic(t);
        const Term r = b.render();
        CHECK(is_basic_term(r));
        CHECK(q0_value(r) == q0_value(t));
        for (const auto& m : models) CHECK(eval(*m, r) == eval(*m, t));
        for (const auto& s : b.summands) {
            CHECK(s.num >= 1);
            CHECK(s.den >= 1);
        }
    }
}

TEST_CASE("tidy") {
    const BasicTerm b{{sf(false, 4, 6), sf(true, 3, 9)}};
    const BasicTerm t = tidy(b, *mk(5));
    CHECK(t.str() == "[+ 2/3, - 1/3]");
    CHECK(q0_value(t.render()) == q0_value(b.render()));
    // in M2 the fraction 2/4 is 0 while 1/2 is 0 too; 3/9 = 1 vs 1/3 = 1
    const BasicTerm u = tidy(BasicTerm{{sf(false, 2, 4)}}, *mk(2));
    CHECK(eval(*mk(2), u.render()) == eval(*mk(2), BasicTerm{{sf(false, 2, 4)}}.render()));
    // cancelling 2 from 2/6 changes the value in M2 (0 vs 1/3 = 1), so it is kept
    const BasicTerm v = tidy(BasicTerm{{sf(false, 2, 6)}}, *mk(2));
    CHECK(v.str() == "[+ 2/6]");

    gen::TermShape shape;
    shape.max_depth = 6;
    gen::TermGenerator g(19, shape);
    for (int i = 0; i < 200; ++i) {
        const BasicTerm raw = to_basic(g.next());
        const BasicTerm neat = tidy(raw, *mk(6));
        CHECK(is_basic_term(neat.render()));
        CHECK(q0_value(neat.render()) == q0_value(raw.render()));
        CHECK(eval(*mk(6), neat.render()) == eval(*mk(6), raw.render()));
    }
}

TEST_CASE("guards") {
    CHECK(eval(*q0(), guard(mk_numeral(2))) == Value(Rational(1)));
    for (const auto& m : {q0(), mk(2), mk(6), gf(2, 2)}) CHECK(eval(*m, guard(Term::zero())) == m->zero());
    CHECK(eval(*mk(2), guard(Term::var("x")), {{"x", std::uint64_t{1}}}) == Value(std::uint64_t{1}));

    gen::TermShape shape;
    shape.vars = {"x", "y"};
    shape.max_depth = 4;
    gen::TermGenerator g(29, shape);
    const std::vector<ModelPtr> finite{mk(6), gf(2, 2), mk(5)};
    for (int i = 0; i < 150; ++i) {
        const Term r = g.next();
        const Term s = g.next();
        const Term e = guard(r);
        for (const auto& m : finite) CHECK(check_eq(*m, mul(e, e), e, Exhaustive{}).verdict == Verdict::Valid);
        CHECK(check_eq(*q0(), mul(e, e), e, Sampled{300, 0}).verdict == Verdict::SampledOk);

        const Term hole = Term::var("_");
        const Term ctx = wrap_in_context(hole, 1 + static_cast<int>(g.rng()() % 5), g);
        const Term lhs = mul(e, substitute(ctx, {{"_", s}}));
        const Term rhs = mul(e, substitute(ctx, {{"_", mul(e, s)}}));
        for (const auto& m : finite) CHECK(check_eq(*m, lhs, rhs, Exhaustive{}).verdict == Verdict::Valid);
        CHECK(check_eq(*q0(), lhs, rhs, Sampled{300, 0}).verdict == Verdict::SampledOk);
    }
}

}  // TEST_SUITE
