#include "meadow/normal_forms.hpp"

#include "meadow/errors.hpp"
#include "meadow/syntax.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace meadow {

Term BasicTerm::render() const {
    std::optional<Term> acc;
    for (const auto& s : summands) {
        Term f = div(mk_numeral(s.num), mk_numeral(s.den));
        if (s.negative) f = neg(f);
        acc = acc ? add(*acc, f) : f;
    }
    return acc ? *acc : Term::zero();
}

std::string BasicTerm::str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < summands.size(); ++i) {
        if (i) out += ", ";
        const auto& s = summands[i];
        out += s.negative ? "- " : "+ ";
        out += to_string(s.num) + "/" + to_string(s.den);
    }
    return out + "]";
}

namespace {

using Summands = std::vector<SignedFraction>;

Summands negate(Summands s) {
    for (auto& f : s) f.negative = !f.negative;
    return s;
}

// (x/y)(z/w) = (xz)/(yw), signs multiplied.
Summands product(const Summands& a, const Summands& b) {
    Summands out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) out.push_back({x.negative != y.negative, x.num * y.num, x.den * y.den});
    return out;
}

// n1/m + n2/m = (n1 + n2)/m; keeps the first-occurrence order of denominators
// and drops summands whose numerators cancel.
Summands merge_denominators(const Summands& s) {
    std::vector<std::pair<BigInt, BigInt>> acc;  // (den, signed numerator)
    for (const auto& f : s) {
        const BigInt n = f.negative ? BigInt(-f.num) : f.num;
        auto it = std::find_if(acc.begin(), acc.end(), [&](const auto& e) { return e.first == f.den; });
        if (it == acc.end()) {
            acc.emplace_back(f.den, n);
        } else {
            it->second += n;
        }
    }
    Summands out;
    for (const auto& [den, n] : acc)
        if (n != 0) out.push_back({n < 0, meadow::abs(n), den});
    return out;
}

// Pairwise coprime numbers > 1 such that every input is a product of their powers.
std::vector<BigInt> coprime_base(std::vector<BigInt> xs) {
    std::erase_if(xs, [](const BigInt& x) { return x <= 1; });
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        for (std::size_t i = 0; i < xs.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < xs.size() && !changed; ++j) {
                const BigInt g = meadow::gcd(xs[i], xs[j]);
                if (g == 1) continue;
                std::vector<BigInt> next{g, xs[i] / g, xs[j] / g};
                for (std::size_t k = 0; k < xs.size(); ++k)
                    if (k != i && k != j) next.push_back(xs[k]);
                std::erase_if(next, [](const BigInt& x) { return x <= 1; });
                xs = std::move(next);
                changed = true;
            }
        }
    }
    return xs;
}

constexpr std::size_t kMaxBaseSize = 16;

// 1 / s for a summand list, as a summand list.
//
// For several summands the denominators are split over a coprime base
// b_1..b_r with guards e_j = b_j/b_j. Then 1 = prod_j (e_j + (1 - e_j)),
// and on the piece pi_T = prod_{j in T} e_j * prod_{j not in T} (1 - e_j)
// exactly the summands whose denominators are built from T survive, giving
// pi_T * (1/s) = pi_T * (L_T / N_T) for their common denominator L_T and
// combined numerator N_T.
Summands inverse(const Summands& raw) {
    const Summands s = merge_denominators(raw);
    if (s.empty()) return {};
    if (s.size() == 1) return {{s[0].negative, s[0].den, s[0].num}};

    std::vector<BigInt> dens;
    for (const auto& f : s) dens.push_back(f.den);
    const std::vector<BigInt> base = coprime_base(dens);
    if (base.size() > kMaxBaseSize)
        throw Error("quotient needs a case split over " + std::to_string(base.size()) +
                    " coprime denominator factors");

    // support[i]: bitmask of base elements dividing s[i].den.
    std::vector<std::uint32_t> support(s.size(), 0);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < base.size(); ++j)
            if (s[i].den % base[j] == 0) support[i] |= 1u << j;

    Summands out;
    const std::uint32_t full = (1u << base.size()) - 1;
    for (std::uint32_t T = 0; T <= full; ++T) {
        BigInt lcm = 1;
        for (std::size_t i = 0; i < s.size(); ++i)
            if ((support[i] & ~T) == 0) lcm = lcm / meadow::gcd(lcm, s[i].den) * s[i].den;
        BigInt n = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if ((support[i] & ~T) != 0) continue;
            const BigInt term = s[i].num * (lcm / s[i].den);
            n += s[i].negative ? BigInt(-term) : term;
        }
        if (n == 0) continue;  // pi_T * (L/0) = 0

        Summands piece{{n < 0, lcm, meadow::abs(n)}};
        for (std::size_t j = 0; j < base.size(); ++j) {
            const SignedFraction e{false, base[j], base[j]};
            if (T & (1u << j)) {
                piece = product(Summands{e}, piece);
            } else {
                piece = product(Summands{{false, 1, 1}, {true, base[j], base[j]}}, piece);
            }
        }
        out.insert(out.end(), piece.begin(), piece.end());
    }
    return out;
}

}  // namespace

BasicTerm to_basic(const Term& p) {
    std::unordered_map<const void*, Summands> memo;
    auto go = [&](auto& self, const Term& u) -> Summands {
        if (auto it = memo.find(u.identity()); it != memo.end()) return it->second;
        Summands out;
        if (auto n = u.numeral_value()) {
            if (*n != 0) out.push_back({false, *n, 1});
        } else {
            switch (u.op()) {
                case Op::Zero: break;
                case Op::One: out.push_back({false, 1, 1}); break;
                case Op::Var: throw OpenTerm("to_basic needs a closed term, found variable '" + u.name() + "'");
                case Op::Inv: throw MixedSignature("to_basic needs a divisive term, found inv");
                case Op::Add: {
                    out = self(self, u.lhs());
                    const Summands r = self(self, u.rhs());
                    out.insert(out.end(), r.begin(), r.end());
                    break;
                }
                case Op::Neg: out = negate(self(self, u.arg())); break;
                case Op::Mul: out = product(self(self, u.lhs()), self(self, u.rhs())); break;
                case Op::Div: out = product(self(self, u.lhs()), inverse(self(self, u.rhs()))); break;
            }
        }
        out = merge_denominators(out);
        memo.emplace(u.identity(), out);
        return out;
    };
    if (p.contains(Op::Inv)) throw MixedSignature("to_basic needs a divisive term, found inv");
    return BasicTerm{go(go, p)};
}

bool is_basic_term(const Term& t) {
    auto numeral_ge1 = [](const Term& u) {
        const auto n = u.numeral_value();
        return n && *n >= 1;
    };
    auto fraction = [&](const Term& u) {
        return u.op() == Op::Div && numeral_ge1(u.lhs()) && numeral_ge1(u.rhs());
    };
    // Walk the sum spine iteratively; the summands themselves are shallow.
    std::vector<Term> stack{t};
    while (!stack.empty()) {
        const Term u = stack.back();
        stack.pop_back();
        if (u.op() == Op::Zero) continue;
        if (fraction(u)) continue;
        if (u.op() == Op::Neg && fraction(u.arg())) continue;
        if (u.op() == Op::Add && !u.numeral_value()) {
            stack.push_back(u.lhs());
            stack.push_back(u.rhs());
            continue;
        }
        return false;
    }
    return true;
}

BasicTerm tidy(const BasicTerm& b, const MeadowModel& check) {
    const auto& q = *q0();
    auto same = [&](const Term& x, const Term& y) {
        return eval(q, x) == eval(q, y) && eval(check, x) == eval(check, y);
    };
    BasicTerm out = b;
    for (auto& s : out.summands) {
        const BigInt g = meadow::gcd(s.num, s.den);
        if (g == 1) continue;
        SignedFraction reduced{s.negative, s.num / g, s.den / g};
        if (same(BasicTerm{{s}}.render(), BasicTerm{{reduced}}.render())) s = reduced;
    }
    std::stable_sort(out.summands.begin(), out.summands.end(), [](const auto& x, const auto& y) {
        if (x.den != y.den) return x.den < y.den;
        if (x.negative != y.negative) return !x.negative;
        return x.num < y.num;
    });
    if (!same(b.render(), out.render()))
        throw std::logic_error("tidy changed the value of a basic term");
    return out;
}

BigInt cr_normal(const Term& p) {
    std::unordered_map<const void*, BigInt> memo;
    auto go = [&](auto& self, const Term& u) -> BigInt {
        if (auto it = memo.find(u.identity()); it != memo.end()) return it->second;
        BigInt out = 0;
        if (auto n = u.numeral_value()) {
            out = *n;
        } else {
            switch (u.op()) {
                case Op::Zero: break;
                case Op::One: out = 1; break;
                case Op::Var: throw OpenTerm("cr_normal needs a closed term, found variable '" + u.name() + "'");
                case Op::Div:
                case Op::Inv: throw NotRingTerm("cr_normal needs a term without division: " + print(u));
                case Op::Add: out = self(self, u.lhs()) + self(self, u.rhs()); break;
                case Op::Mul: out = self(self, u.lhs()) * self(self, u.rhs()); break;
                case Op::Neg: out = -self(self, u.arg()); break;
            }
        }
        memo.emplace(u.identity(), out);
        return out;
    };
    return go(go, p);
}

Term guard(const Term& r) { return div(r, r); }

}  // namespace meadow
