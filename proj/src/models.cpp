#include "meadow/models.hpp"

#include "meadow/errors.hpp"
#include "meadow/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <atomic>
#include <limits>
#include <thread>
#include <unordered_map>

namespace meadow {

namespace {

const Rational& rat(const Value& v) { return std::get<Rational>(v); }
std::uint64_t idx(const Value& v) { return std::get<std::uint64_t>(v); }

std::uint64_t parse_u64(std::string_view s, const char* what) {
    if (s.empty() || s.size() > 18) throw BadSpecifier(std::string("malformed ") + what);
    std::uint64_t v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw BadSpecifier(std::string("malformed ") + what + " '" + std::string(s) + "'");
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
}

std::vector<std::uint64_t> prime_factors_with_multiplicity(std::uint64_t k) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= k; ++p) {
        while (k % p == 0) {
            out.push_back(p);
            k /= p;
        }
    }
    if (k > 1) out.push_back(k);
    return out;
}

// Modular inverse of a (mod p), p prime, a != 0 mod p.
std::uint64_t inverse_mod_prime(std::uint64_t a, std::uint64_t p) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

constexpr std::uint64_t kMaxResidueModulus = 10'000'000;
constexpr std::uint64_t kMaxFieldOrder = 1u << 20;
constexpr std::uint64_t kWeakInverseCrossCheckBound = 2048;
constexpr std::uint64_t kMulTableBound = 256;

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Value MeadowModel::element(std::uint64_t index) const {
    const auto size = carrier_size();
    if (!size) throw InfiniteCarrier(name() + " has no enumerable carrier");
    if (index >= *size) throw std::out_of_range("element index out of range");
    return index;
}

// ---------------------------------------------------------------- Q0

Value RationalMeadow::add(const Value& a, const Value& b) const { return rat(a) + rat(b); }
Value RationalMeadow::mul(const Value& a, const Value& b) const { return rat(a) * rat(b); }
Value RationalMeadow::neg(const Value& a) const { return -rat(a); }
Value RationalMeadow::div(const Value& a, const Value& b) const { return rat(a) / rat(b); }
std::string RationalMeadow::format(const Value& v) const { return rat(v).str(); }
Value RationalMeadow::parse_value(std::string_view text) const { return Rational::parse(text); }

// ---------------------------------------------------------------- CRT

CrtDecomposition::CrtDecomposition(std::uint64_t k) : k_(k) {
    if (k < 2) throw NonSquareFree(k);
    const auto factors = prime_factors_with_multiplicity(k);
    for (std::size_t i = 1; i < factors.size(); ++i)
        if (factors[i] == factors[i - 1]) throw NonSquareFree(k);
    primes_ = factors;
    for (std::uint64_t p : primes_) {
        const std::uint64_t rest = k / p;
        // rest * (rest^-1 mod p) is 1 mod p and 0 mod every other prime.
        const std::uint64_t lift = inverse_mod_prime(rest % p, p);
        basis_.push_back(static_cast<std::uint64_t>((static_cast<unsigned __int128>(rest) * lift) % k));
    }
}

std::vector<std::uint64_t> CrtDecomposition::to_components(std::uint64_t r) const {
    std::vector<std::uint64_t> out;
    out.reserve(primes_.size());
    for (std::uint64_t p : primes_) out.push_back(r % p);
    return out;
}

std::uint64_t CrtDecomposition::from_components(std::span<const std::uint64_t> components) const {
    if (components.size() != primes_.size())
        throw std::invalid_argument("component count does not match the decomposition");
    unsigned __int128 acc = 0;
    for (std::size_t i = 0; i < primes_.size(); ++i)
        acc = (acc + static_cast<unsigned __int128>(components[i] % primes_[i]) * basis_[i]) % k_;
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t CrtDecomposition::componentwise_div(std::uint64_t a, std::uint64_t b) const {
    auto ca = to_components(a);
    const auto cb = to_components(b);
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        const std::uint64_t p = primes_[i];
        ca[i] = cb[i] == 0 ? 0 : (ca[i] * inverse_mod_prime(cb[i], p)) % p;
    }
    return from_components(ca);
}

CrtDecomposition crt_decompose(std::uint64_t k) { return CrtDecomposition(k); }

std::optional<std::uint64_t> weak_inverse_search(std::uint64_t k, std::uint64_t b) {
    auto mulk = [k](std::uint64_t x, std::uint64_t y) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % k);
    };
    b %= k;
    for (std::uint64_t w = 0; w < k; ++w) {
        if (mulk(mulk(b, w), b) == b && mulk(mulk(w, b), w) == w) return w;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- M_k

ResidueMeadow::ResidueMeadow(std::uint64_t k) : k_(k), crt_(k) {
    if (k > kMaxResidueModulus)
        throw BadSpecifier("mk:" + std::to_string(k) + " exceeds the supported modulus " +
                           std::to_string(kMaxResidueModulus));
    winv_.resize(k);
    for (std::uint64_t b = 0; b < k; ++b) winv_[b] = crt_.componentwise_div(1, b);
    if (k <= kWeakInverseCrossCheckBound) {
        for (std::uint64_t b = 0; b < k; ++b) {
            const auto w = weak_inverse_search(k, b);
            if (!w || *w != winv_[b])
                throw std::logic_error("weak inverse search disagrees with CRT inverse in " + name());
        }
    }
}

Value ResidueMeadow::element(std::uint64_t index) const {
    if (index >= k_) throw std::out_of_range("element index out of range");
    return index;
}

Value ResidueMeadow::add(const Value& a, const Value& b) const { return (idx(a) + idx(b)) % k_; }

Value ResidueMeadow::mul(const Value& a, const Value& b) const { return (idx(a) * idx(b)) % k_; }

Value ResidueMeadow::neg(const Value& a) const { return (k_ - idx(a)) % k_; }

Value ResidueMeadow::div(const Value& a, const Value& b) const {
    return (idx(a) * winv_[idx(b)]) % k_;
}

Value ResidueMeadow::from_integer(const BigInt& n) const {
    return static_cast<std::uint64_t>(mod_floor(n, BigInt(k_)));
}

std::string ResidueMeadow::format(const Value& v) const { return std::to_string(idx(v)); }

Value ResidueMeadow::parse_value(std::string_view text) const {
    const std::uint64_t v = parse_u64(text, "carrier index");
    if (v >= k_)
        throw BadSpecifier("carrier index " + std::string(text) + " out of range for " + name());
    return v;
}

// ---------------------------------------------------------------- GF(p^n)

namespace {

using Poly = std::vector<std::uint64_t>;  // low-to-high over F_p

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
    trim(a);
    const std::uint64_t lead_inv = inverse_mod_prime(m.back(), p);
    while (a.size() >= m.size()) {
        const std::uint64_t c = (a.back() * lead_inv) % p;
        const std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = (a[shift + i] + (p - c) * m[i] % p) % p;
        trim(a);
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    trim(out);
    return out;
}

Poly poly_sub(const Poly& a, const Poly& b, std::uint64_t p) {
    Poly out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::uint64_t x = i < a.size() ? a[i] : 0;
        const std::uint64_t y = i < b.size() ? b[i] : 0;
        out[i] = (x + p - y) % p;
    }
    trim(out);
    return out;
}

// Quotient and remainder of a by b (b nonzero).
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, std::uint64_t p) {
    trim(a);
    Poly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
    const std::uint64_t lead_inv = inverse_mod_prime(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint64_t c = (a.back() * lead_inv) % p;
        const std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = (a[shift + i] + (p - c) * b[i] % p) % p;
        trim(a);
    }
    trim(q);
    return {q, a};
}

// All monic polynomials of the given degree, in low-to-high lexicographic order.
std::vector<Poly> monic_of_degree(std::uint64_t p, unsigned d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    std::vector<Poly> out;
    out.reserve(count);
    for (std::uint64_t code = 0; code < count; ++code) {
        Poly f(d + 1, 0);
        std::uint64_t c = code;
        // Lexicographic low-to-high: coefficient 0 is the most significant digit.
        for (unsigned i = d; i-- > 0;) {
            f[i] = c % p;
            c /= p;
        }
        f[d] = 1;
        out.push_back(std::move(f));
    }
    return out;
}

bool is_irreducible(const Poly& f, std::uint64_t p) {
    const unsigned n = static_cast<unsigned>(f.size() - 1);
    for (unsigned d = 1; d <= n / 2; ++d)
        for (const Poly& g : monic_of_degree(p, d))
            if (poly_mod(f, g, p).empty()) return false;
    return true;
}

}  // namespace

std::vector<std::uint64_t> first_irreducible(std::uint64_t p, unsigned n) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    if (n == 0) throw std::invalid_argument("field degree must be positive");
    for (const Poly& f : monic_of_degree(p, n))
        if (is_irreducible(f, p)) return f;
    throw std::logic_error("no irreducible polynomial found");
}

GaloisMeadow::GaloisMeadow(std::uint64_t p, unsigned n) : p_(p), n_(n), q_(1) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    if (n == 0) throw BadSpecifier("field degree must be positive");
    for (unsigned i = 0; i < n; ++i) {
        q_ *= p;
        if (q_ > kMaxFieldOrder)
            throw BadSpecifier("GF(" + std::to_string(p) + "^" + std::to_string(n) +
                               ") exceeds the supported order " + std::to_string(kMaxFieldOrder));
    }
    modulus_ = first_irreducible(p, n);
    if (q_ <= kMulTableBound) {
        std::vector<std::uint32_t> table(q_ * q_);
        for (std::uint64_t a = 0; a < q_; ++a)
            for (std::uint64_t b = 0; b < q_; ++b)
                table[a * q_ + b] = static_cast<std::uint32_t>(mul_index(a, b));
        mul_table_ = std::move(table);
    }
    inverse_.resize(q_);
    for (std::uint64_t a = 0; a < q_; ++a) {
        inverse_[a] = inverse_by_euclid(a);
        if (a != 0 && mul_index(a, inverse_[a]) != 1)
            throw std::logic_error("extended Euclid produced a wrong inverse in " + name());
    }
}

std::string GaloisMeadow::name() const {
    return "gf:" + std::to_string(p_) + "^" + std::to_string(n_);
}

std::uint64_t GaloisMeadow::generator() const {
    // For n = 1 the class of x is the root of the linear modulus x + c.
    return n_ == 1 ? (p_ - modulus_[0]) % p_ : p_;
}

std::vector<std::uint64_t> GaloisMeadow::coefficients(std::uint64_t index) const {
    std::vector<std::uint64_t> c(n_, 0);
    for (unsigned i = 0; i < n_; ++i) {
        c[i] = index % p_;
        index /= p_;
    }
    return c;
}

std::uint64_t GaloisMeadow::index_of(std::span<const std::uint64_t> coefficients) const {
    std::uint64_t out = 0;
    for (std::size_t i = coefficients.size(); i-- > 0;) out = out * p_ + coefficients[i] % p_;
    return out;
}

std::uint64_t GaloisMeadow::mul_index(std::uint64_t a, std::uint64_t b) const {
    if (!mul_table_.empty()) return mul_table_[a * q_ + b];
    Poly pa = coefficients(a);
    Poly pb = coefficients(b);
    trim(pa);
    trim(pb);
    Poly r = poly_mod(poly_mul(pa, pb, p_), modulus_, p_);
    r.resize(n_, 0);
    return index_of(r);
}

std::uint64_t GaloisMeadow::inverse_by_euclid(std::uint64_t a) const {
    if (a == 0) return 0;
    // Extended Euclid on (modulus, a): track s with s * a = r (mod modulus).
    Poly r0 = modulus_;
    Poly r1 = coefficients(a);
    trim(r1);
    Poly s0;
    Poly s1{1};
    while (!r1.empty()) {
        auto [q, r] = poly_divmod(r0, r1, p_);
        Poly s = poly_sub(s0, poly_mul(q, s1, p_), p_);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    // r0 is a nonzero constant c; s0 * a = c.
    const std::uint64_t c_inv = inverse_mod_prime(r0[0], p_);
    for (auto& c : s0) c = (c * c_inv) % p_;
    s0.resize(n_, 0);
    return index_of(s0);
}

Value GaloisMeadow::element(std::uint64_t index) const {
    if (index >= q_) throw std::out_of_range("element index out of range");
    return index;
}

Value GaloisMeadow::add(const Value& a, const Value& b) const {
    std::uint64_t x = idx(a), y = idx(b), out = 0, scale = 1;
    for (unsigned i = 0; i < n_; ++i) {
        out += ((x % p_ + y % p_) % p_) * scale;
        x /= p_;
        y /= p_;
        scale *= p_;
    }
    return out;
}

Value GaloisMeadow::neg(const Value& a) const {
    std::uint64_t x = idx(a), out = 0, scale = 1;
    for (unsigned i = 0; i < n_; ++i) {
        out += ((p_ - x % p_) % p_) * scale;
        x /= p_;
        scale *= p_;
    }
    return out;
}

Value GaloisMeadow::mul(const Value& a, const Value& b) const { return mul_index(idx(a), idx(b)); }

Value GaloisMeadow::div(const Value& a, const Value& b) const {
    return mul_index(idx(a), inverse_[idx(b)]);
}

Value GaloisMeadow::from_integer(const BigInt& n) const {
    return static_cast<std::uint64_t>(mod_floor(n, BigInt(p_)));
}

std::string GaloisMeadow::format(const Value& v) const {
    const auto c = coefficients(idx(v));
    std::string out;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += std::to_string(c[i]);
            continue;
        }
        if (c[i] != 1) out += std::to_string(c[i]) + "*";
        out += "a";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

Value GaloisMeadow::parse_value(std::string_view text) const {
    const Term t = parse(text, Signature::Divisive);
    for (const auto& v : variables(t))
        if (v != "a")
            throw BadSpecifier("field elements are written over the generator 'a', found '" + v + "'");
    return eval(*this, t, Assignment{{"a", Value(generator())}});
}

// ---------------------------------------------------------------- factories

ModelPtr q0() {
    static const ModelPtr model = std::make_shared<const RationalMeadow>();
    return model;
}

ModelPtr mk(std::uint64_t k) { return std::make_shared<const ResidueMeadow>(k); }

ModelPtr gf(std::uint64_t p, unsigned n) { return std::make_shared<const GaloisMeadow>(p, n); }

ModelPtr parse_model(std::string_view spec) {
    if (spec == "q0") return q0();
    if (spec.starts_with("mk:")) return mk(parse_u64(spec.substr(3), "modulus"));
    if (spec.starts_with("gf:")) {
        const std::string_view body = spec.substr(3);
        const auto caret = body.find('^');
        const std::uint64_t p = parse_u64(body.substr(0, caret), "characteristic");
        const std::uint64_t n =
            caret == std::string_view::npos ? 1 : parse_u64(body.substr(caret + 1), "degree");
        if (n == 0 || n > 64) throw BadSpecifier("field degree must be in [1, 64]");
        return gf(p, static_cast<unsigned>(n));
    }
    throw BadSpecifier("unknown model '" + std::string(spec) + "' (expected q0, mk:<k> or gf:<p>^<n>)");
}

Assignment parse_assignment(const MeadowModel& model, std::string_view text) {
    Assignment out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string_view item =
            text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw BadSpecifier("malformed binding '" + std::string(item) + "' (expected name=value)");
        auto strip = [](std::string_view s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
            return s;
        };
        const std::string name(strip(item.substr(0, eq)));
        if (name.empty()) throw BadSpecifier("empty variable name in assignment");
        out[name] = model.parse_value(strip(item.substr(eq + 1)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

// ---------------------------------------------------------------- evaluation

bool values_equal(const Value& a, const Value& b) { return a == b; }

CompiledTerm::CompiledTerm(const MeadowModel& model, const Term& t,
                           std::span<const std::string> slots)
    : model_(&model) {
    if (!t.is_divisive() && !t.is_inversive())
        throw MixedSignature("cannot evaluate a term that mixes '/' and 'inv'");
    std::unordered_map<const void*, std::uint32_t> seen;
    std::unordered_map<std::string, std::uint32_t> slot_of;
    for (std::uint32_t i = 0; i < slots.size(); ++i) slot_of.emplace(slots[i], i);

    // Iterative post-order to keep deep chains off the call stack.
    struct Frame {
        Term term;
        bool expanded;
    };
    std::vector<Frame> stack{{t, false}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        const Term& u = f.term;
        if (seen.count(u.identity())) continue;
        const auto numeral = u.numeral_value();
        const bool leaf = numeral || u.op() == Op::One || u.op() == Op::Var;
        if (!leaf && !f.expanded) {
            stack.push_back({u, true});
            if (u.op() == Op::Neg || u.op() == Op::Inv) {
                stack.push_back({u.arg(), false});
            } else {
                stack.push_back({u.rhs(), false});
                stack.push_back({u.lhs(), false});
            }
            continue;
        }
        Instr in{u.op()};
        if (numeral) {
            in.op = Op::Zero;  // constant load
            in.a = static_cast<std::uint32_t>(constants_.size());
            constants_.push_back(model.from_integer(*numeral));
        } else if (u.op() == Op::One) {
            in.op = Op::Zero;
            in.a = static_cast<std::uint32_t>(constants_.size());
            constants_.push_back(model.one());
        } else if (u.op() == Op::Var) {
            auto it = slot_of.find(u.name());
            if (it == slot_of.end()) throw UnboundVariable(u.name());
            in.a = it->second;
        } else if (u.op() == Op::Neg || u.op() == Op::Inv) {
            in.a = seen.at(u.arg().identity());
        } else {
            in.a = seen.at(u.lhs().identity());
            in.b = seen.at(u.rhs().identity());
        }
        seen.emplace(u.identity(), static_cast<std::uint32_t>(code_.size()));
        code_.push_back(in);
    }
}

Value CompiledTerm::run(std::span<const Value> env, std::vector<Value>& regs) const {
    regs.resize(code_.size());
    const MeadowModel& m = *model_;
    for (std::size_t i = 0; i < code_.size(); ++i) {
        const Instr& in = code_[i];
        switch (in.op) {
            case Op::Zero: regs[i] = constants_[in.a]; break;
            case Op::Var: regs[i] = env[in.a]; break;
            case Op::Add: regs[i] = m.add(regs[in.a], regs[in.b]); break;
            case Op::Mul: regs[i] = m.mul(regs[in.a], regs[in.b]); break;
            case Op::Div: regs[i] = m.div(regs[in.a], regs[in.b]); break;
            case Op::Neg: regs[i] = m.neg(regs[in.a]); break;
            case Op::Inv: regs[i] = m.div(m.one(), regs[in.a]); break;
            case Op::One: regs[i] = m.one(); break;
        }
    }
    return regs.back();
}

Value eval(const MeadowModel& model, const Term& t, const Assignment& a) {
    const auto vars = variables(t);
    std::vector<std::string> slots(vars.begin(), vars.end());
    std::vector<Value> env;
    env.reserve(slots.size());
    for (const auto& name : slots) {
        auto it = a.find(name);
        if (it == a.end()) throw UnboundVariable(name);
        env.push_back(it->second);
    }
    std::vector<Value> regs;
    return CompiledTerm(model, t, slots).run(env, regs);
}

// ---------------------------------------------------------------- checking

const char* verdict_name(Verdict v) noexcept {
    switch (v) {
        case Verdict::Valid: return "Valid";
        case Verdict::Refuted: return "Refuted";
        case Verdict::SampledOk: return "SampledOk";
    }
    return "?";
}

SampleRng::SampleRng(std::uint64_t seed) : engine_(seed) {}

std::int64_t SampleRng::uniform(std::int64_t lo, std::int64_t hi) {
    // Rejection sampling on the raw engine output: std::uniform_int_distribution
    // is implementation-defined, and reports must be reproducible everywhere.
    const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t draw;
    do {
        draw = engine_();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % range);
}

namespace {

constexpr std::uint64_t kMaxExhaustiveAssignments = std::uint64_t{1} << 32;

struct Checker {
    const MeadowModel& model;
    std::vector<std::string> slots;
    CompiledTerm lhs;
    CompiledTerm rhs;

    Checker(const MeadowModel& m, const Term& l, const Term& r, std::vector<std::string> names)
        : model(m), slots(std::move(names)), lhs(m, l, slots), rhs(m, r, slots) {}

    struct Scratch {
        std::vector<Value> regs;
        std::vector<Value> env;
    };

    bool agrees(Scratch& s) const {
        const Value a = lhs.run(s.env, s.regs);
        const Value b = rhs.run(s.env, s.regs);
        return a == b;
    }

    Assignment assignment(std::span<const Value> env) const {
        Assignment out;
        for (std::size_t i = 0; i < slots.size(); ++i) out.emplace(slots[i], env[i]);
        return out;
    }

    void fill_refutation(CheckReport& report, std::span<const Value> env) const {
        Scratch s;
        s.env.assign(env.begin(), env.end());
        report.verdict = Verdict::Refuted;
        report.counterexample = assignment(env);
        report.lhs_value = lhs.run(s.env, s.regs);
        report.rhs_value = rhs.run(s.env, s.regs);
    }
};

std::vector<std::string> joint_variables(const Term& lhs, const Term& rhs) {
    auto vars = variables(lhs);
    for (auto& v : variables(rhs)) vars.insert(v);
    return {vars.begin(), vars.end()};
}

// Decodes assignment number `code`; the first variable is the most significant digit.
void decode(const MeadowModel& model, std::uint64_t q, std::uint64_t code, std::vector<Value>& env) {
    for (std::size_t i = env.size(); i-- > 0;) {
        env[i] = model.element(code % q);
        code /= q;
    }
}

CheckReport check_exhaustive(const Checker& c, unsigned workers) {
    const std::uint64_t q = *c.model.carrier_size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < c.slots.size(); ++i) {
        if (total > kMaxExhaustiveAssignments / q)
            throw Error("exhaustive check over " + c.model.name() + " with " +
                        std::to_string(c.slots.size()) + " variables is too large");
        total *= q;
    }

    std::atomic<std::uint64_t> least{total};
    auto scan = [&](std::uint64_t begin, std::uint64_t end) {
        Checker::Scratch s;
        s.env.resize(c.slots.size());
        for (std::uint64_t code = begin; code < end; ++code) {
            if (code >= least.load(std::memory_order_relaxed)) return;
            decode(c.model, q, code, s.env);
            if (!c.agrees(s)) {
                std::uint64_t cur = least.load();
                while (code < cur && !least.compare_exchange_weak(cur, code)) {
                }
                return;
            }
        }
    };

    workers = std::max(1u, workers);
    if (workers == 1 || total < 4096) {
        scan(0, total);
    } else {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = (total + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = std::min(total, w * chunk);
            const std::uint64_t end = std::min(total, begin + chunk);
            pool.emplace_back(scan, begin, end);
        }
    }

    CheckReport report;
    report.model = c.model.name();
    const std::uint64_t hit = least.load();
    if (hit == total) {
        report.verdict = Verdict::Valid;
        report.evaluations = total;
        return report;
    }
    std::vector<Value> env(c.slots.size());
    decode(c.model, q, hit, env);
    c.fill_refutation(report, env);
    report.evaluations = hit + 1;
    return report;
}

CheckReport check_sampled(const Checker& c, const Sampled& how) {
    SampleRng rng(how.seed);
    const auto size = c.model.carrier_size();
    auto draw = [&]() -> Value {
        if (size) return c.model.element(static_cast<std::uint64_t>(rng.uniform(0, static_cast<std::int64_t>(*size - 1))));
        const std::int64_t num = rng.uniform(-99, 99);
        const std::int64_t den = rng.uniform(1, 99);
        return Rational(BigInt(num), BigInt(den));
    };

    CheckReport report;
    report.model = c.model.name();
    report.seed = how.seed;
    Checker::Scratch s;
    s.env.resize(c.slots.size());
    for (std::uint64_t i = 0; i < how.count; ++i) {
        for (auto& v : s.env) v = draw();
        if (!c.agrees(s)) {
            c.fill_refutation(report, s.env);
            report.evaluations = i + 1;
            return report;
        }
    }
    report.verdict = Verdict::SampledOk;
    report.evaluations = how.count;
    return report;
}

}  // namespace

CheckReport check_eq(const MeadowModel& model, const Term& lhs, const Term& rhs,
                     const Strategy& strategy, unsigned workers) {
    const Checker checker(model, lhs, rhs, joint_variables(lhs, rhs));
    if (std::holds_alternative<Exhaustive>(strategy)) {
        if (!model.is_finite())
            throw InfiniteExhaustive("exhaustive check requested on infinite model " + model.name());
        return check_exhaustive(checker, workers);
    }
    return check_sampled(checker, std::get<Sampled>(strategy));
}

std::optional<std::uint64_t> characteristic(const MeadowModel& model, std::uint64_t search_bound) {
    if (auto known = model.known_characteristic()) return known;
    const Value zero = model.zero();
    const Value one = model.one();
    std::uint64_t bound = search_bound;
    if (auto size = model.carrier_size()) bound = std::max(bound, *size);
    Value acc = zero;
    for (std::uint64_t k = 1; k <= bound; ++k) {
        acc = model.add(acc, one);
        if (acc == zero) return k;
    }
    return std::nullopt;
}

}  // namespace meadow
