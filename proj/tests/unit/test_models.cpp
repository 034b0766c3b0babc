#include "meadow/errors.hpp"
#include "meadow/identities.hpp"
#include "meadow/models.hpp"
#include "meadow/syntax.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

using namespace meadow;

namespace {

std::uint64_t idx(const Value& v) { return std::get<std::uint64_t>(v); }
Rational rat(const Value& v) { return std::get<Rational>(v); }

Rational to_rational(const oracle::Q& q) {
    return Rational(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("q0 arithmetic") {
    const auto q = q0();
    CHECK(rat(q->div(Rational(3, 2), Rational(0))) == Rational(0));
    CHECK(rat(q->div(Rational(1), Rational(3))) == Rational(1, 3));
    CHECK(rat(q->div(Rational(2, 3), Rational(2, 3))) == Rational(1));
    CHECK(rat(eval(*q, parse("1/0"))) == Rational(0));
    CHECK(rat(eval(*q, parse("1 + 1/2"))) == Rational(3, 2));
    CHECK(q->format(Rational(-6, 4)) == "-3/2");
    CHECK(rat(q->parse_value("-6/4")) == Rational(-3, 2));
    CHECK_THROWS_AS(q->parse_value("1/0"), BadSpecifier);
    CHECK_THROWS_AS(q->parse_value("x"), BadSpecifier);
}

TEST_CASE("residue meadows") {
    const auto m6 = mk(6);
    CHECK(idx(m6->div(std::uint64_t{1}, std::uint64_t{2})) == 2);
    CHECK(idx(mk(2)->div(std::uint64_t{1}, std::uint64_t{0})) == 0);
    CHECK(idx(eval(*mk(2), parse("1 + 1/2"))) == 1);
    CHECK_THROWS_AS(mk(4), NonSquareFree);
    CHECK_THROWS_AS(mk(12), NonSquareFree);
    CHECK_THROWS_AS(mk(1), NonSquareFree);
    CHECK_THROWS_AS(mk(0), NonSquareFree);
    CHECK_FALSE(weak_inverse_search(4, 2).has_value());
    CHECK(*weak_inverse_search(6, 2) == 2);
    CHECK_THROWS_AS(m6->parse_value("6"), BadSpecifier);
    CHECK(idx(m6->from_integer(-1)) == 5);
}

TEST_CASE("crt decomposition") {
    const CrtDecomposition six = crt_decompose(6);
    CHECK(six.primes() == std::vector<std::uint64_t>{2, 3});
    CHECK(six.to_components(5) == std::vector<std::uint64_t>{1, 2});
    CHECK(crt_decompose(30).primes() == std::vector<std::uint64_t>{2, 3, 5});
    CHECK(crt_decompose(2).primes() == std::vector<std::uint64_t>{2});
    CHECK_THROWS_AS(crt_decompose(18), NonSquareFree);
    for (std::uint64_t k : {6, 10, 15, 30}) {
        const ResidueMeadow m(k);
        const oracle::ResidueOps ref{static_cast<std::int64_t>(k)};
        for (std::uint64_t r = 0; r < k; ++r) {
            const auto c = m.crt().to_components(r);
            CHECK(m.crt().from_components(c) == r);
        }
        for (std::uint64_t a = 0; a < k; ++a)
            for (std::uint64_t b = 0; b < k; ++b) {
                const std::uint64_t d = idx(m.div(a, b));
                CHECK(d == m.crt().componentwise_div(a, b));
                CHECK(static_cast<std::int64_t>(d) == ref.div(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)));
            }
    }
}

TEST_CASE("galois fields") {
    const GaloisMeadow f4(2, 2);
    CHECK(f4.modulus() == std::vector<std::uint64_t>{1, 1, 1});  // x^2 + x + 1
    const std::uint64_t a = f4.generator();
    CHECK(f4.format(a) == "a");
    CHECK(f4.format(f4.mul(a, a)) == "a + 1");
    CHECK(f4.mul(a, a) != Value(a));
    CHECK(f4.format(f4.div(std::uint64_t{1}, a)) == "a + 1");
    CHECK(idx(GaloisMeadow(3, 1).div(std::uint64_t{1}, std::uint64_t{2})) == 2);
    CHECK(GaloisMeadow(3, 2).modulus() == std::vector<std::uint64_t>{1, 0, 1});  // x^2 + 1
    CHECK(first_irreducible(2, 3) == std::vector<std::uint64_t>{1, 0, 1, 1});  // x^3 + x^2 + 1; x^3 + 1 has the root 1
    CHECK_THROWS_AS(gf(4, 1), NotPrime);
    CHECK_THROWS_AS(parse_model("gf:6^2"), NotPrime);
    // every nonzero element has an inverse, zero maps to zero
    for (auto [p, n] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 3}, {3, 2}, {5, 2}, {7, 1}, {2, 8}}) {
        const GaloisMeadow f(p, n);
        CHECK(f.div(std::uint64_t{1}, std::uint64_t{0}) == Value(std::uint64_t{0}));
        for (std::uint64_t e = 1; e < f.order(); ++e) CHECK(f.mul(e, f.div(std::uint64_t{1}, e)) == f.one());
    }
    // values are written over the generator
    CHECK(f4.parse_value("a + 1") == f4.mul(a, a));
    CHECK(GaloisMeadow(3, 2).format(GaloisMeadow(3, 2).parse_value("2*a^2 + a")) == "a + 1");
    CHECK_THROWS_AS(f4.parse_value("b"), BadSpecifier);
}

TEST_CASE("gf(4) agrees with its hand-written table") {
    const auto f4 = gf(2, 2);
    const oracle::Gf4Ops ref;
    for (std::uint64_t a = 0; a < 4; ++a)
        for (std::uint64_t b = 0; b < 4; ++b) {
            CHECK(idx(f4->mul(a, b)) == static_cast<std::uint64_t>(ref.mul(int(a), int(b))));
            CHECK(idx(f4->add(a, b)) == static_cast<std::uint64_t>(ref.add(int(a), int(b))));
            CHECK(idx(f4->div(a, b)) == static_cast<std::uint64_t>(ref.div(int(a), int(b))));
        }
}

TEST_CASE("model specifiers") {
    CHECK(parse_model("q0")->name() == "q0");
    CHECK(parse_model("mk:30")->name() == "mk:30");
    CHECK(parse_model("gf:2^2")->name() == "gf:2^2");
    CHECK(parse_model("gf:5")->name() == "gf:5^1");
    for (const char* bad : {"", "q1", "mk:", "mk:x", "gf:2^", "gf:2^0", "zz:3"})
        CHECK_THROWS_AS(parse_model(bad), BadSpecifier);
    const auto q = q0();
    const Assignment a = parse_assignment(*q, "x=3/4, y=-2");
    CHECK(rat(a.at("x")) == Rational(3, 4));
    CHECK(rat(a.at("y")) == Rational(-2));
    CHECK_THROWS_AS(parse_assignment(*q, "x"), BadSpecifier);
    const auto f4 = gf(2, 2);
    CHECK(f4->format(parse_assignment(*f4, "x=a+1").at("x")) == "a + 1");
}

TEST_CASE("evaluation") {
    const auto q = q0();
    CHECK_THROWS_AS(eval(*q, parse("x + 1")), UnboundVariable);
    CHECK(rat(eval(*q, parse("inv(x) * 2", Signature::Inversive), {{"x", Rational(4)}})) == Rational(1, 2));
    CHECK_THROWS_AS(eval(*q, add(inv(Term::var("x")), div(Term::one(), Term::var("x"))), {{"x", Rational(1)}}),
                    MixedSignature);
}

TEST_CASE("evaluation agrees with independent oracles") {
    gen::TermShape shape;
    shape.vars = {"x", "y"};
    gen::TermGenerator g(31, shape);
    const auto q = q0();
    const auto m6 = mk(6);
    const auto m30 = mk(30);
    const auto f4 = gf(2, 2);
    for (int i = 0; i < 300; ++i) {
        const Term t = g.next();
        const Rational qx(BigInt(i % 7 - 3), BigInt(i % 5 + 1));
        const Rational qy(BigInt(i % 3), BigInt(2));
        const oracle::Q ox(boost::multiprecision::cpp_int(i % 7 - 3), boost::multiprecision::cpp_int(i % 5 + 1));
        const oracle::Q oy(boost::multiprecision::cpp_int(i % 3), boost::multiprecision::cpp_int(2));
        CHECK(rat(eval(*q, t, {{"x", qx}, {"y", qy}})) ==
              to_rational(oracle::evaluate(oracle::RationalOps{}, t, {{"x", ox}, {"y", oy}})));
        const std::int64_t a = i % 6, b = (i / 6) % 6;
        CHECK(static_cast<std::int64_t>(idx(eval(*m6, t, {{"x", std::uint64_t(a)}, {"y", std::uint64_t(b)}}))) ==
              oracle::evaluate(oracle::ResidueOps{6}, t, {{"x", a}, {"y", b}}));
        const std::int64_t c = i % 30, d = (i * 7) % 30;
        CHECK(static_cast<std::int64_t>(idx(eval(*m30, t, {{"x", std::uint64_t(c)}, {"y", std::uint64_t(d)}}))) ==
              oracle::evaluate(oracle::ResidueOps{30}, t, {{"x", c}, {"y", d}}));
        const int e = i % 4, f = (i / 4) % 4;
        CHECK(static_cast<int>(idx(eval(*f4, t, {{"x", std::uint64_t(e)}, {"y", std::uint64_t(f)}}))) ==
              oracle::evaluate(oracle::Gf4Ops{}, t, {{"x", e}, {"y", f}}));
    }
}

TEST_CASE("check_eq examples") {
    const auto r = check_eq(*mk(6), parse("(x/y)*(z/w)"), parse("(x*z)/(y*w)"), Exhaustive{});
    CHECK(r.verdict == Verdict::Valid);
    CHECK(r.evaluations == 1296);
    CHECK_FALSE(r.counterexample.has_value());

    const auto f4 = gf(2, 2);
    const auto r2 = check_eq(*f4, parse("x^2"), parse("x"), Exhaustive{});
    REQUIRE(r2.verdict == Verdict::Refuted);
    CHECK(f4->format(r2.counterexample->at("x")) == "a");
    CHECK(r2.evaluations == 3);
    CHECK(*r2.lhs_value != *r2.rhs_value);

    CHECK(check_eq(*mk(2), parse("x^2"), parse("x"), Exhaustive{}).verdict == Verdict::Valid);
    CHECK_THROWS_AS(check_eq(*q0(), parse("x"), parse("x"), Exhaustive{}), InfiniteExhaustive);

    const auto r3 = check_eq(*q0(), parse("x/x"), parse("1"), Sampled{10000, 0});
    REQUIRE(r3.verdict == Verdict::Refuted);
    CHECK(rat(r3.counterexample->at("x")) == Rational(0));
    CHECK(*r3.seed == 0);
}

TEST_CASE("counterexamples are least and independent of workers") {
    const auto m30 = mk(30);
    const Term lhs = parse("x*y*z");
    const Term rhs = parse("x*y*z + (x - 7)*(y - 29)*(z - 13)*(x - 8)");
    const auto one_worker = check_eq(*m30, lhs, rhs, Exhaustive{}, 1);
    REQUIRE(one_worker.verdict == Verdict::Refuted);
    for (unsigned w : {2u, 3u, 8u}) {
        const auto many = check_eq(*m30, lhs, rhs, Exhaustive{}, w);
        CHECK(many.evaluations == one_worker.evaluations);
        CHECK(*many.counterexample == *one_worker.counterexample);
    }
    // brute-force least counterexample in scan order (x most significant)
    std::uint64_t expect = 0;
    bool found = false;
    for (std::uint64_t x = 0; x < 30 && !found; ++x)
        for (std::uint64_t y = 0; y < 30 && !found; ++y)
            for (std::uint64_t z = 0; z < 30 && !found; ++z) {
                const std::int64_t v = ((std::int64_t(x) - 7) * (std::int64_t(y) - 29) * (std::int64_t(z) - 13) *
                                        (std::int64_t(x) - 8)) % 30;
                if (v != 0) {
                    found = true;
                    expect = x * 900 + y * 30 + z;
                    CHECK(idx(one_worker.counterexample->at("x")) == x);
                    CHECK(idx(one_worker.counterexample->at("y")) == y);
                    CHECK(idx(one_worker.counterexample->at("z")) == z);
                }
            }
    CHECK(one_worker.evaluations == expect + 1);
}

TEST_CASE("sampled checks are reproducible") {
    const Term lhs = parse("x/y + 1/(x - y)");
    const Term rhs = parse("(x*(x - y) + y)/(y*(x - y))");
    const auto a = check_eq(*q0(), lhs, rhs, Sampled{5000, 42});
    const auto b = check_eq(*q0(), lhs, rhs, Sampled{5000, 42});
    CHECK(a.verdict == b.verdict);
    CHECK(a.evaluations == b.evaluations);
    CHECK(a.counterexample == b.counterexample);
    SampleRng r1(7), r2(7);
    for (int i = 0; i < 1000; ++i) {
        const auto v = r1.uniform(-99, 99);
        CHECK(v == r2.uniform(-99, 99));
        CHECK(v >= -99);
        CHECK(v <= 99);
    }
}

TEST_CASE("characteristic") {
    CHECK(*characteristic(*mk(6)) == 6);
    CHECK(*characteristic(*gf(2, 2)) == 2);
    CHECK(*characteristic(*gf(3, 2)) == 3);
    CHECK(*characteristic(*q0()) == 0);
    CHECK(*characteristic(*mk(30), 1) == 30);
}

TEST_CASE("axioms and derived identities in every shipped model") {
    const std::vector<ModelPtr> finite{mk(2), mk(3), mk(5), mk(6), mk(7), gf(2, 2), gf(3, 2)};
    std::vector<NamedEquation> all = ring_axioms();
    for (auto& e : divisive_axioms()) all.push_back(e);
    for (auto& e : division_identities()) all.push_back(e);
    for (auto& e : guard_lemmas()) all.push_back(e);
    for (const auto& eq : all) {
        for (const auto& m : finite)
            CHECK_MESSAGE(check_eq(*m, eq.lhs, eq.rhs, Exhaustive{}).verdict == Verdict::Valid, eq.name, " in ",
                          m->name());
        CHECK_MESSAGE(check_eq(*q0(), eq.lhs, eq.rhs, Sampled{2000, 0}).verdict == Verdict::SampledOk, eq.name);
    }
    for (const auto& eq : inversive_axioms()) {
        for (const auto& m : finite) CHECK(check_eq(*m, eq.lhs, eq.rhs, Exhaustive{}).verdict == Verdict::Valid);
        CHECK(check_eq(*q0(), eq.lhs, eq.rhs, Sampled{2000, 0}).verdict == Verdict::SampledOk);
    }
    for (const auto& m : finite) {
        for (std::uint64_t i = 0; i < *m->carrier_size(); ++i)
            CHECK(m->div(m->element(i), m->zero()) == m->zero());
    }
}

TEST_CASE("prime fields satisfy x^p = x") {
    for (std::uint64_t p : {2, 3, 5, 7}) {
        const Term lhs = power(Term::var("x"), p);
        CHECK(check_eq(*mk(p), lhs, Term::var("x"), Exhaustive{}).verdict == Verdict::Valid);
    }
    CHECK(check_eq(*mk(6), power(Term::var("x"), 2), Term::var("x"), Exhaustive{}).verdict == Verdict::Refuted);
}

TEST_CASE("a non-cancellation identity holds only where it should") {
    // (x/x) * x = x holds in every meadow, but x/x = 1 only away from zero.
    CHECK(check_eq(*mk(6), parse("x/x"), parse("1"), Exhaustive{}).verdict == Verdict::Refuted);
    CHECK(check_eq(*mk(7), parse("x/x*(x/x)"), parse("x/x"), Exhaustive{}).verdict == Verdict::Valid);
}

}  // TEST_SUITE
