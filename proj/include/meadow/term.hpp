#pragma once

#include "meadow/bigint.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>

namespace meadow {

/// Node kinds of the meadow signatures. `Div` belongs to the divisive
/// signature, `Inv` to the inversive one; everything else is shared.
enum class Op : std::uint8_t { Zero, One, Var, Add, Mul, Neg, Div, Inv };

const char* op_name(Op op) noexcept;

/// Immutable term over the divisive/inversive meadow signatures.
///
/// Terms are cheap to copy (a shared pointer to an immutable node) and
/// compare structurally. The numeral n (n >= 1) is the left-nested chain
/// ((0 + 1) + 1) ... + 1; such chains are stored compactly, but every
/// accessor presents them exactly as that chain, so a numeral built by
/// `mk_numeral` and the same chain spelled out with `add` are equal.
class Term {
public:
    /// The constant 0.
    Term();

    static Term zero();
    static Term one();
    static Term var(std::string name);

    friend Term add(Term lhs, Term rhs);
    friend Term mul(Term lhs, Term rhs);
    friend Term neg(Term arg);
    friend Term div(Term lhs, Term rhs);
    friend Term inv(Term arg);
    friend Term mk_numeral(const BigInt& n);

    Op op() const noexcept;

    /// Children. `lhs`/`rhs` require a binary node, `arg` a unary one.
    Term lhs() const;
    Term rhs() const;
    Term arg() const;
    /// Variable name; requires `op() == Op::Var`.
    const std::string& name() const;

    /// n if this term is the numeral n for some n >= 0 (0 is `Zero`).
    std::optional<BigInt> numeral_value() const;

    /// Number of Add/Mul/... nodes counting each numeral chain at full length.
    BigInt size() const;

    bool contains(Op op) const;
    bool is_divisive() const { return !contains(Op::Inv); }
    bool is_inversive() const { return !contains(Op::Div); }
    bool is_division_free() const { return !contains(Op::Div) && !contains(Op::Inv); }

    /// Identity of the underlying node; used to share work across DAG-shaped terms.
    const void* identity() const noexcept { return node_.get(); }

    friend bool operator==(const Term& a, const Term& b);
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Term numeral_chain(BigInt n);

    std::shared_ptr<const Node> node_;
};

Term add(Term lhs, Term rhs);
Term mul(Term lhs, Term rhs);
Term neg(Term arg);
Term div(Term lhs, Term rhs);
Term inv(Term arg);

/// p - q, which is sugar for p + (-q).
inline Term sub(Term lhs, Term rhs) { return add(std::move(lhs), neg(std::move(rhs))); }

/// The numeral of n: 0 for n = 0, (n-1) + 1 for n > 0, -(|n|) for n < 0.
Term mk_numeral(const BigInt& n);

/// t^0 = 1, t^(n+1) = t^n * t.
Term power(const Term& t, std::uint64_t n);

/// t * t * ... * t with n >= 1 factors (left-nested); ring-equal to `power`.
Term repeated_product(const Term& t, std::uint64_t n);

bool is_fraction(const Term& t);
bool is_simple_fraction(const Term& t);
bool is_closed(const Term& t);

/// Div(t, 1).
Term wrap_as_fraction(const Term& t);

using Binding = std::map<std::string, Term>;

/// Simultaneous replacement of variables; unbound variables are kept.
Term substitute(const Term& t, const Binding& binding);

/// Every Div(p, q) becomes p * inv(q).
Term to_inversive(const Term& t);
/// Every Inv(p) becomes 1 / p.
Term to_divisive(const Term& t);

/// Variables of t, in lexicographic order.
std::set<std::string> variables(const Term& t);

/// Throws MixedSignature unless t is free of Inv.
void require_divisive(const Term& t, const char* operation);

}  // namespace meadow
