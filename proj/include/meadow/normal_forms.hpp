#pragma once

#include "meadow/bigint.hpp"
#include "meadow/models.hpp"
#include "meadow/rational.hpp"
#include "meadow/term.hpp"

#include <string>
#include <vector>

namespace meadow {

/// One summand of a basic term: n/m or -(n/m) with n, m >= 1.
struct SignedFraction {
    bool negative = false;
    BigInt num = 1;
    BigInt den = 1;

    friend bool operator==(const SignedFraction&, const SignedFraction&) = default;
};

/// A sum of signed numeral fractions; no summands means the numeral 0.
struct BasicTerm {
    std::vector<SignedFraction> summands;

    /// Left-nested sum of n/m and -(n/m) over numerals; 0 when empty.
    Term render() const;
    /// E.g. "[+ 2/3, - 1/1]".
    std::string str() const;

    friend bool operator==(const BasicTerm&, const BasicTerm&) = default;
};

/// Closed divisive term to an equal basic term, by structural induction:
/// sums concatenate, negation flips signs, products multiply summandwise,
/// and a quotient multiplies by the inverse of the denominator's summand list.
/// After each step, summands over the same denominator are added
/// (n/m + n'/m = (n + n')/m) and cancelled ones dropped; fractions are
/// never reduced.
/// Throws OpenTerm on variables and MixedSignature on `inv`.
BasicTerm to_basic(const Term& p);

/// Membership in the basic-term grammar: 0, n/m, -(n/m), p + q with
/// n, m numerals >= 1.
bool is_basic_term(const Term& t);

/// Sorts summands and cancels common factors, keeping each rewrite only
/// if the result still evaluates identically in Q0 and in `check`.
BasicTerm tidy(const BasicTerm& b, const MeadowModel& check);

/// The integer v with p = v for a closed term without division.
/// Throws OpenTerm or NotRingTerm.
BigInt cr_normal(const Term& p);

/// r / r: 1 where r is invertible, 0 where it vanishes.
Term guard(const Term& r);

}  // namespace meadow
