#include "meadow/fraction_transforms.hpp"

#include "meadow/errors.hpp"
#include "meadow/normal_forms.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace meadow {

// ---------------------------------------------------------------- closed fractions over Q0

Rational SimpleClosedFraction::value() const {
    return Rational(negative ? BigInt(-num) : num, den);
}

Term SimpleClosedFraction::render() const {
    Term n = mk_numeral(num);
    if (negative) n = neg(n);
    return div(n, mk_numeral(den));
}

std::string SimpleClosedFraction::str() const {
    return (negative ? "-" : "") + to_string(num) + "/" + to_string(den);
}

namespace {

SimpleClosedFraction from_rational(const Rational& r) {
    return {r.sign() < 0, meadow::abs(r.num()), r.den()};
}

}  // namespace

SimpleClosedFraction closed_to_simple_fraction_q0(const Term& p) {
    if (!is_closed(p)) throw OpenTerm("closed_to_simple_fraction_q0 needs a closed term");
    return from_rational(std::get<Rational>(eval(*q0(), p)));
}

SimpleClosedFraction closed_to_simple_fraction_q0_inductive(const Term& p) {
    const BasicTerm b = to_basic(p);
    // Running sum kept as an unreduced pair (n, m); in Q0, n/m + n'/m' = (n m' + n' m)/(m m').
    BigInt n = 0;
    BigInt m = 1;
    for (const auto& s : b.summands) {
        const BigInt sn = s.negative ? BigInt(-s.num) : s.num;
        n = n * s.den + sn * m;
        m = m * s.den;
    }
    const BigInt g = meadow::gcd(n, m);
    if (n == 0) return {false, 0, 1};
    return {n < 0, meadow::abs(n) / g, m / g};
}

// ---------------------------------------------------------------- finite models

namespace {

std::vector<std::uint64_t> carrier_indices(const MeadowModel& model) {
    const std::uint64_t q = *model.carrier_size();
    std::vector<std::uint64_t> out(q);
    for (std::uint64_t i = 0; i < q; ++i) out[i] = std::get<std::uint64_t>(model.element(i));
    return out;
}

std::uint64_t hash_values(const std::vector<std::uint64_t>& v) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t x : v) h = (h ^ x) * 1099511628211ull;
    return h;
}

}  // namespace

ExponentPair find_annihilating_exponents(const MeadowModel& model) {
    if (!model.is_finite())
        throw InfiniteCarrier("find_annihilating_exponents needs a finite carrier, got " + model.name());
    const std::vector<std::uint64_t> xs = carrier_indices(model);
    auto power_function = [&](std::uint64_t k) {
        std::vector<std::uint64_t> out(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            Value acc = xs[i];
            for (std::uint64_t j = 1; j < k; ++j) acc = model.mul(acc, xs[i]);
            out[i] = std::get<std::uint64_t>(acc);
        }
        return out;
    };
    // x^1, x^2, ... are distinct until the first repeat x^n = x^m, and that
    // m is unique, so the first repeat is the least pair.
    std::unordered_multimap<std::uint64_t, std::uint64_t> seen;
    std::vector<std::uint64_t> current(xs.begin(), xs.end());
    const std::uint64_t bound = xs.size() * xs.size() + 2;
    for (std::uint64_t n = 1; n <= bound; ++n) {
        if (n > 1)
            for (std::size_t i = 0; i < xs.size(); ++i)
                current[i] = std::get<std::uint64_t>(model.mul(current[i], xs[i]));
        const std::uint64_t h = hash_values(current);
        auto [lo, hi] = seen.equal_range(h);
        std::uint64_t best = 0;
        for (auto it = lo; it != hi; ++it)
            if (power_function(it->second) == current && (best == 0 || it->second < best)) best = it->second;
        if (best != 0) return {n, best};
        seen.emplace(h, n);
    }
    throw std::logic_error("no exponent pair found for " + model.name());
}

ExponentPair exponent_pair_for(const MeadowModel& model) {
    if (const auto* field = dynamic_cast<const GaloisMeadow*>(&model)) return {field->order(), 1};
    return find_annihilating_exponents(model);
}

Term eliminate_division(const MeadowModel& model, const Term& t) {
    if (!model.is_finite())
        throw InfiniteCarrier("eliminate_division needs a finite carrier, got " + model.name());
    if (!t.is_divisive() && !t.is_inversive())
        throw MixedSignature("eliminate_division: term mixes '/' and 'inv'");
    const std::uint64_t e = exponent_pair_for(model).inverse_exponent();

    std::unordered_map<const void*, Term> memo;
    auto go = [&](auto& self, const Term& u) -> Term {
        if (!u.contains(Op::Div) && !u.contains(Op::Inv)) return u;
        if (auto it = memo.find(u.identity()); it != memo.end()) return it->second;
        Term out;
        switch (u.op()) {
            case Op::Add: out = add(self(self, u.lhs()), self(self, u.rhs())); break;
            case Op::Mul: out = mul(self(self, u.lhs()), self(self, u.rhs())); break;
            case Op::Neg: out = neg(self(self, u.arg())); break;
            case Op::Inv: out = repeated_product(self(self, u.arg()), e); break;
            case Op::Div: {
                const Term inverse = repeated_product(self(self, u.rhs()), e);
                out = u.lhs().op() == Op::One ? inverse : mul(self(self, u.lhs()), inverse);
                break;
            }
            default: out = u; break;
        }
        memo.emplace(u.identity(), out);
        return out;
    };
    return go(go, t);
}

Term to_simple_fraction_finite(const MeadowModel& model, const Term& t) {
    return wrap_as_fraction(eliminate_division(model, t));
}

// ---------------------------------------------------------------- sums of simple fractions

Term SumOfSimpleFractions::render() const {
    std::optional<Term> acc;
    for (const auto& f : summands) {
        const Term q = div(f.num.to_term(), f.den.to_term());
        acc = acc ? add(*acc, q) : q;
    }
    return acc ? *acc : Term::zero();
}

std::string SumOfSimpleFractions::str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < summands.size(); ++i) {
        if (i) out += ", ";
        out += "(" + summands[i].num.str() + ", " + summands[i].den.str() + ")";
    }
    return out + "]";
}

namespace {

using Fractions = std::vector<PolyFraction>;

constexpr std::size_t kMaxInvertedSummands = 12;

// Drops fractions that are 0 (zero numerator or zero denominator) and adds
// numerators over equal denominators, keeping first-occurrence order.
Fractions tidy_fractions(const Fractions& in) {
    Fractions out;
    for (const auto& f : in) {
        if (f.num.is_zero() || f.den.is_zero()) continue;
        auto it = std::find_if(out.begin(), out.end(), [&](const PolyFraction& g) { return g.den == f.den; });
        if (it == out.end()) {
            out.push_back(f);
        } else {
            it->num = it->num + f.num;
        }
    }
    std::erase_if(out, [](const PolyFraction& f) { return f.num.is_zero(); });
    return out;
}

Fractions product(const Fractions& a, const Fractions& b) {
    Fractions out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) out.push_back({x.num * y.num, x.den * y.den});
    return out;
}

bool is_unit_constant(const MultiPoly& p) {
    const auto c = p.constant_value();
    return c && (*c == 1 || *c == -1);
}

Fractions invert(const Fractions& raw) {
    const Fractions s = tidy_fractions(raw);
    const std::size_t n = s.size();
    if (n == 0) return {};
    if (n > kMaxInvertedSummands)
        throw Error("inverting a sum of " + std::to_string(n) + " fractions exceeds the supported " +
                    std::to_string(kMaxInvertedSummands));

    // A denominator of +-1 has guard 1, so every piece without it vanishes.
    std::uint32_t forced = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (is_unit_constant(s[i].den)) forced |= 1u << i;

    Fractions out;
    const std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t S = 1; S <= full; ++S) {
        if ((S & forced) != forced) continue;
        MultiPoly d = MultiPoly::constant(1);
        for (std::size_t i = 0; i < n; ++i)
            if (S & (1u << i)) d = d * s[i].den;
        MultiPoly num;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(S & (1u << i))) continue;
            MultiPoly term = s[i].num;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && (S & (1u << j))) term = term * s[j].den;
            num = num + term;
        }
        if (num.is_zero()) continue;  // pi_S * (D/0) = 0

        // pi_S = sum over U within the complement of S of (-1)^|U| prod_{S u U} e_i.
        const std::uint32_t rest = full & ~S;
        for (std::uint32_t U = rest;; U = (U - 1) & rest) {
            MultiPoly g = MultiPoly::constant(1);
            for (std::size_t i = 0; i < n; ++i)
                if (((S | U) & (1u << i)) && !is_unit_constant(s[i].den)) g = g * s[i].den;
            const bool odd = std::popcount(U) % 2 == 1;
            MultiPoly top = g * d;
            if (odd) top = -top;
            out.push_back({std::move(top), g * num});
            if (U == 0) break;
        }
    }
    return out;
}

}  // namespace

SumOfSimpleFractions to_sum_of_simple_fractions(const Term& t) {
    require_divisive(t, "to_sum_of_simple_fractions");
    std::unordered_map<const void*, Fractions> memo;
    auto go = [&](auto& self, const Term& u) -> Fractions {
        if (auto it = memo.find(u.identity()); it != memo.end()) return it->second;
        Fractions out;
        if (auto c = u.numeral_value()) {
            if (*c != 0) out.push_back({MultiPoly::constant(*c), MultiPoly::constant(1)});
        } else {
            switch (u.op()) {
                case Op::Zero: break;
                case Op::One: out.push_back({MultiPoly::constant(1), MultiPoly::constant(1)}); break;
                case Op::Var: out.push_back({MultiPoly::variable(u.name()), MultiPoly::constant(1)}); break;
                case Op::Add: {
                    out = self(self, u.lhs());
                    const Fractions r = self(self, u.rhs());
                    out.insert(out.end(), r.begin(), r.end());
                    break;
                }
                case Op::Neg:
                    out = self(self, u.arg());
                    for (auto& f : out) f.num = -f.num;
                    break;
                case Op::Mul: out = product(self(self, u.lhs()), self(self, u.rhs())); break;
                case Op::Div: out = product(self(self, u.lhs()), invert(self(self, u.rhs()))); break;
                case Op::Inv: throw MixedSignature("to_sum_of_simple_fractions expects a divisive term");
            }
        }
        memo.emplace(u.identity(), out);
        return out;
    };
    return SumOfSimpleFractions{tidy_fractions(go(go, t))};
}

// ---------------------------------------------------------------- falsifier

FalsifierWitness falsify_simple_fraction_claim(const UniPoly& f, const UniPoly& g) {
    auto lhs_at = [](const Rational& q) { return Rational(1) + Rational(1) / q; };
    auto rhs_at = [&](const Rational& q) { return f.eval(q) / g.eval(q); };

    const Rational zero;
    if (lhs_at(zero) != rhs_at(zero)) return {zero, lhs_at(zero), rhs_at(zero)};

    // Here f(0)/g(0) = 1, so g(0) != 0. On [0, eps], |g| >= |g(0)|/2 = b
    // and |f| <= a, so |f/g| <= a/b < 1 + 1/q for q small enough.
    const BigInt g0 = meadow::abs(g.coefficient(0));
    BigInt slope = 0;
    for (std::size_t i = 1; i < g.coefficients().size(); ++i) slope += BigInt(i) * meadow::abs(g.coefficients()[i]);
    Rational eps = 1;
    if (slope != 0) eps = std::min(Rational(1), Rational(g0, 2 * slope));

    Rational a;
    Rational eps_power = 1;
    for (const auto& c : f.coefficients()) {
        a = a + Rational(meadow::abs(c)) * eps_power;
        eps_power = eps_power * eps;
    }
    const Rational b(g0, 2);

    const Rational ratio = Rational(2) * a / Rational(g0);
    BigInt ceiling = ratio.num() / ratio.den();
    if (ceiling * ratio.den() < ratio.num()) ceiling += 1;
    const Rational q = std::min(eps / Rational(2), Rational(BigInt(1), ceiling + 1));

    const Rational lhs = lhs_at(q);
    const Rational rhs = rhs_at(q);
    if (!(lhs > a / b) || lhs == rhs)
        throw NoWitnessConstructed("no refuting point found for (" + f.str() + ")/(" + g.str() + ")");
    return {q, lhs, rhs};
}

}  // namespace meadow
