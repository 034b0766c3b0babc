#pragma once

#include "meadow/rational.hpp"
#include "meadow/term.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace meadow {

/// A model element: a carrier index for finite models, an exact rational for Q0.
using Value = std::variant<std::uint64_t, Rational>;

using Assignment = std::map<std::string, Value>;

/// A divisive meadow given by its operations. Division is total; x / 0 = 0.
///
/// Finite models enumerate their carrier as indices 0 .. size-1; that
/// order is the order used for lexicographically least counterexamples.
class MeadowModel {
public:
    virtual ~MeadowModel() = default;

    /// Model specifier: "q0", "mk:<k>" or "gf:<p>^<n>".
    virtual std::string name() const = 0;
    /// Number of elements, or nullopt for an infinite carrier.
    virtual std::optional<std::uint64_t> carrier_size() const = 0;
    bool is_finite() const { return carrier_size().has_value(); }

    /// Carrier element by enumeration index (finite models only).
    virtual Value element(std::uint64_t index) const;

    virtual Value zero() const = 0;
    virtual Value one() const = 0;
    virtual Value add(const Value& a, const Value& b) const = 0;
    virtual Value mul(const Value& a, const Value& b) const = 0;
    virtual Value neg(const Value& a) const = 0;
    virtual Value div(const Value& a, const Value& b) const = 0;

    /// Value of the numeral n (n * 1).
    virtual Value from_integer(const BigInt& n) const = 0;

    virtual std::string format(const Value& v) const = 0;
    virtual Value parse_value(std::string_view text) const = 0;

    /// Characteristic known by construction (Q0: 0), if any.
    virtual std::optional<std::uint64_t> known_characteristic() const { return std::nullopt; }
};

using ModelPtr = std::shared_ptr<const MeadowModel>;

/// Q0: the zero-totalized field of rationals.
class RationalMeadow final : public MeadowModel {
public:
    std::string name() const override { return "q0"; }
    std::optional<std::uint64_t> carrier_size() const override { return std::nullopt; }
    Value zero() const override { return Rational(); }
    Value one() const override { return Rational(1); }
    Value add(const Value& a, const Value& b) const override;
    Value mul(const Value& a, const Value& b) const override;
    Value neg(const Value& a) const override;
    Value div(const Value& a, const Value& b) const override;
    Value from_integer(const BigInt& n) const override { return Rational(n); }
    std::string format(const Value& v) const override;
    Value parse_value(std::string_view text) const override;
    std::optional<std::uint64_t> known_characteristic() const override { return 0; }
};

/// Componentwise view of Z/kZ for square-free k as a product of prime fields.
class CrtDecomposition {
public:
    explicit CrtDecomposition(std::uint64_t k);

    std::uint64_t modulus() const noexcept { return k_; }
    const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }

    /// r -> (r mod p_1, ..., r mod p_s).
    std::vector<std::uint64_t> to_components(std::uint64_t r) const;
    /// Inverse of `to_components`.
    std::uint64_t from_components(std::span<const std::uint64_t> components) const;

    /// Division in Z/kZ computed componentwise in the zero-totalized prime fields.
    std::uint64_t componentwise_div(std::uint64_t a, std::uint64_t b) const;

private:
    std::uint64_t k_;
    std::vector<std::uint64_t> primes_;
    std::vector<std::uint64_t> basis_;  // CRT idempotent lifts: basis_[i] = 1 mod p_i, 0 mod p_j
};

/// Throws NonSquareFree unless k >= 2 is a product of distinct primes.
CrtDecomposition crt_decompose(std::uint64_t k);

/// Brute-force weak inverse of b in Z/kZ: the w with b*w*b = b and w*b*w = w.
std::optional<std::uint64_t> weak_inverse_search(std::uint64_t k, std::uint64_t b);

/// M_k: the minimal divisive meadow Z/kZ for square-free k.
class ResidueMeadow final : public MeadowModel {
public:
    explicit ResidueMeadow(std::uint64_t k);

    std::uint64_t modulus() const noexcept { return k_; }
    const CrtDecomposition& crt() const noexcept { return crt_; }
    std::uint64_t weak_inverse(std::uint64_t b) const { return winv_.at(b); }

    std::string name() const override { return "mk:" + std::to_string(k_); }
    std::optional<std::uint64_t> carrier_size() const override { return k_; }
    Value element(std::uint64_t index) const override;
    Value zero() const override { return std::uint64_t{0}; }
    Value one() const override { return std::uint64_t{1 % k_}; }
    Value add(const Value& a, const Value& b) const override;
    Value mul(const Value& a, const Value& b) const override;
    Value neg(const Value& a) const override;
    Value div(const Value& a, const Value& b) const override;
    Value from_integer(const BigInt& n) const override;
    std::string format(const Value& v) const override;
    Value parse_value(std::string_view text) const override;

private:
    std::uint64_t k_;
    CrtDecomposition crt_;
    std::vector<std::uint64_t> winv_;
};

/// GF(p^n) with x/0 = 0. Elements are coefficient vectors c_0 + c_1 a + ...
/// (a the class of x modulo the fixed irreducible polynomial) encoded as
/// the index sum c_i p^i.
class GaloisMeadow final : public MeadowModel {
public:
    GaloisMeadow(std::uint64_t p, unsigned n);

    std::uint64_t characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return n_; }
    std::uint64_t order() const noexcept { return q_; }
    /// Monic modulus, coefficients low-to-high (size degree() + 1).
    const std::vector<std::uint64_t>& modulus() const noexcept { return modulus_; }
    /// The class of x, printed as `a`.
    std::uint64_t generator() const;

    std::vector<std::uint64_t> coefficients(std::uint64_t index) const;
    std::uint64_t index_of(std::span<const std::uint64_t> coefficients) const;

    std::string name() const override;
    std::optional<std::uint64_t> carrier_size() const override { return q_; }
    Value element(std::uint64_t index) const override;
    Value zero() const override { return std::uint64_t{0}; }
    Value one() const override { return std::uint64_t{1}; }
    Value add(const Value& a, const Value& b) const override;
    Value mul(const Value& a, const Value& b) const override;
    Value neg(const Value& a) const override;
    Value div(const Value& a, const Value& b) const override;
    Value from_integer(const BigInt& n) const override;
    std::string format(const Value& v) const override;
    Value parse_value(std::string_view text) const override;

private:
    std::uint64_t mul_index(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inverse_by_euclid(std::uint64_t a) const;

    std::uint64_t p_;
    unsigned n_;
    std::uint64_t q_;
    std::vector<std::uint64_t> modulus_;
    std::vector<std::uint64_t> inverse_;
    std::vector<std::uint32_t> mul_table_;  // filled for small fields only
};

/// Lexicographically first monic irreducible polynomial of degree n over F_p,
/// comparing coefficient sequences low-to-high.
std::vector<std::uint64_t> first_irreducible(std::uint64_t p, unsigned n);

bool is_prime(std::uint64_t n);

ModelPtr q0();
/// Throws NonSquareFree for k < 2 or k with a repeated prime factor.
ModelPtr mk(std::uint64_t k);
/// Throws NotPrime unless p is prime; n >= 1.
ModelPtr gf(std::uint64_t p, unsigned n);

/// Parses "q0", "mk:<k>", "gf:<p>^<n>" (or "gf:<p>").
ModelPtr parse_model(std::string_view spec);

/// Parses "x=3/4,y=-2"; values go through the model's `parse_value`.
Assignment parse_assignment(const MeadowModel& model, std::string_view text);

/// Evaluates a divisive term (an inversive one is translated first).
/// Throws UnboundVariable if `a` misses a variable of t.
Value eval(const MeadowModel& model, const Term& t, const Assignment& a = {});

bool values_equal(const Value& a, const Value& b);

/// A term flattened for repeated evaluation in one model: shared subterms are
/// evaluated once, numerals are pre-converted, variables are read from slots.
class CompiledTerm {
public:
    CompiledTerm(const MeadowModel& model, const Term& t, std::span<const std::string> slots);

    Value run(std::span<const Value> env, std::vector<Value>& scratch) const;

private:
    struct Instr {
        Op op;
        std::uint32_t a = 0;
        std::uint32_t b = 0;
    };
    const MeadowModel* model_;
    std::vector<Instr> code_;
    std::vector<Value> constants_;  // index by Instr::a for Zero/One/numerals
};

struct Exhaustive {};
struct Sampled {
    std::uint64_t count = 10000;
    std::uint64_t seed = 0;
};
using Strategy = std::variant<Exhaustive, Sampled>;

enum class Verdict { Valid, Refuted, SampledOk };
const char* verdict_name(Verdict v) noexcept;

struct CheckReport {
    std::string model;
    Verdict verdict = Verdict::Valid;
    std::optional<Assignment> counterexample;
    std::optional<Value> lhs_value;  // at the counterexample
    std::optional<Value> rhs_value;
    std::uint64_t evaluations = 0;
    std::optional<std::uint64_t> seed;
};

/// Checks lhs = rhs in the model.
///
/// Exhaustive scans assignments in lexicographic order (variables sorted by
/// name, elements by index) and reports the least counterexample; its
/// `evaluations` is the number of assignments up to and including that
/// counterexample, so the report does not depend on `workers`.
/// Sampled draws `count` assignments from a seeded generator; Q0 values
/// are n/d with n uniform in [-99, 99] and d uniform in [1, 99].
CheckReport check_eq(const MeadowModel& model, const Term& lhs, const Term& rhs,
                     const Strategy& strategy, unsigned workers = 1);

/// The characteristic: exact for finite models, 0 for Q0, nullopt if
/// unknown within `search_bound`.
std::optional<std::uint64_t> characteristic(const MeadowModel& model,
                                            std::uint64_t search_bound = 1u << 20);

/// Deterministic bounded draw used by the sampled strategy.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed);
    /// Uniform in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);

private:
    std::mt19937_64 engine_;
};

}  // namespace meadow
