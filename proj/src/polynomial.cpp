#include "meadow/polynomial.hpp"

#include "meadow/errors.hpp"
#include "meadow/syntax.hpp"

#include <unordered_map>

namespace meadow {

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(std::vector<BigInt> coefficients, std::string var)
    : coeffs_(std::move(coefficients)), var_(std::move(var)) {
    trim();
}

void UniPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UniPoly UniPoly::constant(const BigInt& c, std::string var) { return UniPoly({c}, std::move(var)); }

UniPoly UniPoly::variable(std::string var) { return UniPoly({0, 1}, std::move(var)); }

BigInt UniPoly::coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

std::optional<std::size_t> UniPoly::degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
}

UniPoly UniPoly::operator-() const {
    UniPoly out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) + b.coefficient(i);
    return UniPoly(std::move(c), a.var_);
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly({}, a.var_);
    std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UniPoly(std::move(c), a.var_);
}

Rational UniPoly::eval(const Rational& at) const {
    Rational acc;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * at + Rational(coeffs_[i]);
    return acc;
}

Value UniPoly::eval(const MeadowModel& model, const Value& at) const {
    Value acc = model.zero();
    for (std::size_t i = coeffs_.size(); i-- > 0;)
        acc = model.add(model.mul(acc, at), model.from_integer(coeffs_[i]));
    return acc;
}

Term UniPoly::to_term() const {
    const Term x = Term::var(var_);
    std::optional<Term> acc;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const BigInt& c = coeffs_[i];
        if (c == 0) continue;
        const BigInt mag = meadow::abs(c);
        Term mono;
        if (i == 0) {
            mono = mk_numeral(mag);
        } else {
            mono = repeated_product(x, i);
            if (mag != 1) mono = mul(mk_numeral(mag), mono);
        }
        if (!acc) {
            acc = c < 0 ? neg(mono) : mono;
        } else {
            acc = c < 0 ? sub(*acc, mono) : add(*acc, mono);
        }
    }
    return acc ? *acc : Term::zero();
}

namespace {

// Appends "c*m" (or "m", or "c") with the sign folded into the separator.
void append_signed(std::string& out, const BigInt& c, const std::string& mono) {
    const bool negative = c < 0;
    const BigInt mag = meadow::abs(c);
    if (out.empty()) {
        if (negative) out += "-";
    } else {
        out += negative ? " - " : " + ";
    }
    if (mono.empty()) {
        out += to_string(mag);
    } else if (mag == 1) {
        out += mono;
    } else {
        out += to_string(mag) + "*" + mono;
    }
}

}  // namespace

std::string UniPoly::str() const {
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] == 0) continue;
        std::string mono;
        if (i == 1) mono = var_;
        if (i > 1) mono = var_ + "^" + std::to_string(i);
        append_signed(out, coeffs_[i], mono);
    }
    return out.empty() ? "0" : out;
}

UniPoly to_canonical(const Term& t, const std::string& var) {
    std::unordered_map<const void*, UniPoly> memo;
    auto go = [&](auto& self, const Term& u) -> UniPoly {
        if (auto it = memo.find(u.identity()); it != memo.end()) return it->second;
        UniPoly out({}, var);
        if (auto n = u.numeral_value()) {
            out = UniPoly::constant(*n, var);
        } else {
            switch (u.op()) {
                case Op::Zero: break;
                case Op::One: out = UniPoly::constant(1, var); break;
                case Op::Var:
                    if (u.name() != var)
                        throw NotPolynomial("variable '" + u.name() + "' in a polynomial in '" + var + "'");
                    out = UniPoly::variable(var);
                    break;
                case Op::Add: out = self(self, u.lhs()) + self(self, u.rhs()); break;
                case Op::Mul: out = self(self, u.lhs()) * self(self, u.rhs()); break;
                case Op::Neg: out = -self(self, u.arg()); break;
                case Op::Div:
                case Op::Inv: throw NotPolynomial("division in '" + print(u) + "'");
            }
        }
        memo.emplace(u.identity(), out);
        return out;
    };
    return go(go, t);
}

// ---------------------------------------------------------------- model-relative notions

bool non_trivial_over(const MeadowModel& model, const UniPoly& f) {
    const Value zero = model.zero();
    for (const auto& c : f.coefficients())
        if (model.from_integer(c) != zero) return true;
    return false;
}

bool constant_over(const MeadowModel& model, const UniPoly& f) {
    if (!non_trivial_over(model, f)) return false;
    if (!model.is_finite()) {
        // An infinite field: the function is constant iff every a_i, i >= 1, vanishes.
        for (std::size_t i = 1; i < f.coefficients().size(); ++i)
            if (model.from_integer(f.coefficients()[i]) != model.zero()) return false;
        return true;
    }
    const std::uint64_t size = *model.carrier_size();
    const Value first = f.eval(model, model.element(0));
    for (std::uint64_t i = 1; i < size; ++i)
        if (f.eval(model, model.element(i)) != first) return false;
    // The constant must be a numeral value, i.e. lie in the prime subring.
    const auto p = characteristic(model);
    Value k = model.zero();
    for (std::uint64_t n = 0; n < *p; ++n) {
        if (k == first) return true;
        k = model.add(k, model.one());
    }
    return false;
}

std::optional<std::size_t> degree_over(const MeadowModel& model, const UniPoly& f) {
    if (!non_trivial_over(model, f)) return std::nullopt;
    if (constant_over(model, f)) return 0;
    const auto& c = f.coefficients();
    for (std::size_t i = c.size(); i-- > 1;)
        if (model.from_integer(c[i]) != model.zero()) return i;
    return 0;
}

std::vector<Value> roots_over(const MeadowModel& model, const UniPoly& f) {
    const auto size = model.carrier_size();
    if (!size) throw InfiniteCarrier("roots_over needs a finite carrier, got " + model.name());
    std::vector<Value> out;
    for (std::uint64_t i = 0; i < *size; ++i) {
        const Value v = model.element(i);
        if (f.eval(model, v) == model.zero()) out.push_back(v);
    }
    return out;
}

UniPoly annihilator(const UniPoly& f, const UniPoly& g) {
    const std::string& var = f.var();
    const UniPoly x = UniPoly::variable(var);
    const UniPoly g_renamed(g.coefficients(), var);
    const UniPoly x2 = x * x;
    const UniPoly g2 = g_renamed * g_renamed;
    return x2 * g2 + x * g2 - f * x2 * g_renamed;
}

UniPoly verified_annihilator(const MeadowModel& model, const UniPoly& f, const UniPoly& g) {
    const std::string& var = f.var();
    const Term x = Term::var(var);
    const Term lhs = add(Term::one(), div(Term::one(), x));
    const Term rhs = div(f.to_term(), UniPoly(g.coefficients(), var).to_term());
    Strategy strategy = Exhaustive{};
    if (!model.is_finite()) strategy = Sampled{};
    const CheckReport report = check_eq(model, lhs, rhs, strategy);
    if (report.verdict == Verdict::Refuted)
        throw PremiseFailed(model.name() + " does not satisfy " + print(lhs) + " = " + print(rhs));
    if (model.from_integer(g.coefficient(0)) == model.zero())
        throw PremiseFailed("g(0) = " + to_string(g.coefficient(0)) + " vanishes in " + model.name());
    return annihilator(f, g);
}

// ---------------------------------------------------------------- MultiPoly

bool GradedLex::operator()(const Monomial& a, const Monomial& b) const {
    std::uint64_t da = 0, db = 0;
    for (const auto& [v, e] : a) da += e;
    for (const auto& [v, e] : b) db += e;
    if (da != db) return da < db;
    // Walk both in variable order; the first variable with differing
    // exponent decides, the larger exponent being the larger monomial.
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) return false;  // a has more of an earlier var
        if (ia == a.end() || ib->first < ia->first) return true;
        if (ia->second != ib->second) return ia->second < ib->second;
        ++ia;
        ++ib;
    }
    return false;
}

MultiPoly MultiPoly::constant(const BigInt& c) {
    MultiPoly out;
    out.add_term({}, c);
    return out;
}

MultiPoly MultiPoly::variable(const std::string& name) {
    MultiPoly out;
    out.add_term({{name, 1}}, 1);
    return out;
}

void MultiPoly::add_term(const Monomial& m, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

std::optional<BigInt> MultiPoly::constant_value() const {
    if (terms_.empty()) return BigInt(0);
    if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
    return std::nullopt;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m = ma;
            for (const auto& [v, e] : mb) m[v] += e;
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

Value MultiPoly::eval(const MeadowModel& model, const Assignment& a) const {
    Value acc = model.zero();
    for (const auto& [m, c] : terms_) {
        Value prod = model.from_integer(c);
        for (const auto& [v, e] : m) {
            auto it = a.find(v);
            if (it == a.end()) throw UnboundVariable(v);
            for (std::uint32_t k = 0; k < e; ++k) prod = model.mul(prod, it->second);
        }
        acc = model.add(acc, prod);
    }
    return acc;
}

Term MultiPoly::to_term() const {
    std::optional<Term> acc;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        const BigInt mag = meadow::abs(c);
        std::optional<Term> mono;
        if (mag != 1 || m.empty()) mono = mk_numeral(mag);
        for (const auto& [v, e] : m) {
            for (std::uint32_t k = 0; k < e; ++k) {
                const Term x = Term::var(v);
                mono = mono ? mul(*mono, x) : x;
            }
        }
        if (!acc) {
            acc = c < 0 ? neg(*mono) : *mono;
        } else {
            acc = c < 0 ? sub(*acc, *mono) : add(*acc, *mono);
        }
    }
    return acc ? *acc : Term::zero();
}

std::string MultiPoly::str() const {
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        std::string mono;
        for (const auto& [v, e] : it->first) {
            if (!mono.empty()) mono += "*";
            mono += v;
            if (e > 1) mono += "^" + std::to_string(e);
        }
        append_signed(out, it->second, mono);
    }
    return out.empty() ? "0" : out;
}

MultiPoly to_multi_poly(const Term& t) {
    std::unordered_map<const void*, MultiPoly> memo;
    auto go = [&](auto& self, const Term& u) -> MultiPoly {
        if (auto it = memo.find(u.identity()); it != memo.end()) return it->second;
        MultiPoly out;
        if (auto n = u.numeral_value()) {
            out = MultiPoly::constant(*n);
        } else {
            switch (u.op()) {
                case Op::Zero: break;
                case Op::One: out = MultiPoly::constant(1); break;
                case Op::Var: out = MultiPoly::variable(u.name()); break;
                case Op::Add: out = self(self, u.lhs()) + self(self, u.rhs()); break;
                case Op::Mul: out = self(self, u.lhs()) * self(self, u.rhs()); break;
                case Op::Neg: out = -self(self, u.arg()); break;
                case Op::Div:
                case Op::Inv: throw NotPolynomial("division in '" + print(u) + "'");
            }
        }
        memo.emplace(u.identity(), out);
        return out;
    };
    return go(go, t);
}

}  // namespace meadow
