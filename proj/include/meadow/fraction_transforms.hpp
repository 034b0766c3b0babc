#pragma once

#include "meadow/bigint.hpp"
#include "meadow/models.hpp"
#include "meadow/polynomial.hpp"
#include "meadow/rational.hpp"
#include "meadow/term.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace meadow {

/// Sign, numerator and denominator of a closed simple fraction in lowest terms.
struct SimpleClosedFraction {
    bool negative = false;
    BigInt num = 0;
    BigInt den = 1;

    Rational value() const;
    /// n/m, (-n)/m for negatives, 0/1 for zero (numerals throughout).
    Term render() const;
    /// "3/2", "-1/4", "0/1".
    std::string str() const;

    friend bool operator==(const SimpleClosedFraction&, const SimpleClosedFraction&) = default;
};

/// Closed term to a simple fraction equal to it in Q0, via exact evaluation.
/// Throws OpenTerm.
SimpleClosedFraction closed_to_simple_fraction_q0(const Term& p);

/// Same result reached through the basic term of p, merging summands by
/// n/m + n'/m' = (n m' + n' m)/(m m') and cancelling.
SimpleClosedFraction closed_to_simple_fraction_q0_inductive(const Term& p);

/// n > m >= 1 with x^n = x^m in a finite model.
struct ExponentPair {
    std::uint64_t n = 0;
    std::uint64_t m = 0;

    /// e = 2(n - m) - 1, for which 1/x = x^e holds.
    std::uint64_t inverse_exponent() const { return 2 * (n - m) - 1; }

    friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

/// Least (n, m), ordered by n then m, with x^n = x^m valid in the model.
/// Throws InfiniteCarrier.
ExponentPair find_annihilating_exponents(const MeadowModel& model);

/// The pair used for division elimination: (q, 1) for a field of order q,
/// the searched pair otherwise.
ExponentPair exponent_pair_for(const MeadowModel& model);

/// Replaces p/q by p * q^e and 1/q by q^e bottom-up (inv(q) like 1/q).
/// The result is division-free and equal to t in the model. Throws InfiniteCarrier.
Term eliminate_division(const MeadowModel& model, const Term& t);

/// eliminate_division wrapped as `(...)/1`.
Term to_simple_fraction_finite(const MeadowModel& model, const Term& t);

/// One simple fraction num/den over integer polynomials.
struct PolyFraction {
    MultiPoly num;
    MultiPoly den;

    friend bool operator==(const PolyFraction&, const PolyFraction&) = default;
};

struct SumOfSimpleFractions {
    std::vector<PolyFraction> summands;

    /// Left-nested sum of num/den terms; 0 when empty.
    Term render() const;
    /// E.g. "[(x^2, x), (1, y)]".
    std::string str() const;
};

/// Any divisive term as a sum of simple fractions equal to it in every
/// meadow. A quotient multiplies by the inverse of the denominator's
/// fraction list, which is split by the guards e_i = g_i/g_i:
///
///     1/s = sum over nonempty S of pi_S * (D_S / N_S),
///     pi_S = prod_{i in S} e_i * prod_{j not in S} (1 - e_j),
///
/// with D_S the product of the g_i in S and N_S the numerator of their sum.
/// Each pi_S is expanded and merged into single fractions; zero fractions
/// are dropped and equal denominators combined. Throws MixedSignature.
SumOfSimpleFractions to_sum_of_simple_fractions(const Term& t);

/// A rational point refuting Q0 |= 1 + 1/x = f/g, with both values there.
struct FalsifierWitness {
    Rational point;
    Rational lhs_value;  // 1 + 1/point
    Rational rhs_value;  // f(point)/g(point)
};

/// Constructs the refuting point: 0 if the sides differ there, otherwise a
/// point so close to 0 that 1 + 1/q exceeds every value of |f/g| near 0.
/// Throws NoWitnessConstructed if the final exact check fails.
FalsifierWitness falsify_simple_fraction_claim(const UniPoly& f, const UniPoly& g);

}  // namespace meadow
