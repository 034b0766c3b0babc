#pragma once

#include "meadow/bigint.hpp"
#include "meadow/models.hpp"
#include "meadow/rational.hpp"
#include "meadow/term.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace meadow {

/// Integer polynomial in one variable, coefficients stored low-to-high.
/// The zero polynomial has no coefficients; otherwise the last one is nonzero.
class UniPoly {
public:
    explicit UniPoly(std::vector<BigInt> coefficients = {}, std::string var = "x");

    static UniPoly constant(const BigInt& c, std::string var = "x");
    static UniPoly variable(std::string var = "x");

    const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }
    /// a_i, or 0 past the end.
    BigInt coefficient(std::size_t i) const;
    const std::string& var() const noexcept { return var_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// Degree over the integers; nullopt for the zero polynomial.
    std::optional<std::size_t> degree() const;

    UniPoly operator-() const;
    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend bool operator==(const UniPoly& a, const UniPoly& b) = default;

    Rational eval(const Rational& at) const;
    Value eval(const MeadowModel& model, const Value& at) const;

    /// a_n * x*...*x + ... + a_1 * x + a_0, negative coefficients as subtraction.
    Term to_term() const;
    /// High-to-low text in the term grammar, e.g. "-x^3 + x".
    std::string str() const;

private:
    void trim();

    std::vector<BigInt> coeffs_;
    std::string var_;
};

/// Expands a division-free term in `var` by the ring axioms.
/// Throws NotPolynomial on `/`, `inv` or any other variable.
UniPoly to_canonical(const Term& t, const std::string& var = "x");

/// True iff some canonical coefficient is nonzero in the model.
bool non_trivial_over(const MeadowModel& model, const UniPoly& f);
/// Non-trivial, and the induced function is the value of a numeral.
bool constant_over(const MeadowModel& model, const UniPoly& f);
/// Degree over the model; nullopt where the degree is undefined (f not non-trivial).
std::optional<std::size_t> degree_over(const MeadowModel& model, const UniPoly& f);

/// All carrier elements v with f(v) = 0, in carrier order. Throws InfiniteCarrier.
std::vector<Value> roots_over(const MeadowModel& model, const UniPoly& f);

/// h = x^2 g^2 + x g^2 - f x^2 g. If the model satisfies 1 + 1/x = f/g and
/// g(0) is nonzero in it, every element is a root of h and its linear
/// coefficient is g(0)^2.
UniPoly annihilator(const UniPoly& f, const UniPoly& g);

/// `annihilator` after checking both premises exhaustively in the (finite)
/// model. Throws PremiseFailed if either fails.
UniPoly verified_annihilator(const MeadowModel& model, const UniPoly& f, const UniPoly& g);

/// Exponents of one monomial, keyed by variable name; no zero exponents.
using Monomial = std::map<std::string, std::uint32_t>;

/// Graded lexicographic order: total degree first, then exponents compared
/// variable by variable in name order.
struct GradedLex {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Integer polynomial in several variables; no zero coefficients are stored.
class MultiPoly {
public:
    MultiPoly() = default;

    static MultiPoly constant(const BigInt& c);
    static MultiPoly variable(const std::string& name);

    const std::map<Monomial, BigInt, GradedLex>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// The constant c if this polynomial is c.
    std::optional<BigInt> constant_value() const;

    MultiPoly operator-() const;
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) = default;

    Value eval(const MeadowModel& model, const Assignment& a) const;

    /// Monomials in descending graded-lex order; coefficient 1 omitted,
    /// x^2 y written x*x*y.
    Term to_term() const;
    /// Text in the term grammar, e.g. "x^2*y - 2*y + 1".
    std::string str() const;

private:
    void add_term(const Monomial& m, const BigInt& c);

    std::map<Monomial, BigInt, GradedLex> terms_;
};

/// Expands a division-free term into a multivariate polynomial.
/// Throws NotPolynomial on `/` or `inv`.
MultiPoly to_multi_poly(const Term& t);

}  // namespace meadow
