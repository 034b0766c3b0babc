#pragma once

#include "meadow/term.hpp"

#include <string>
#include <vector>

namespace meadow {

struct NamedEquation {
    std::string name;
    Term lhs;
    Term rhs;
};

/// Commutative ring with unit: associativity, commutativity, units,
/// additive inverse and distributivity.
std::vector<NamedEquation> ring_axioms();
/// The three equations that make a commutative ring a divisive meadow.
std::vector<NamedEquation> divisive_axioms();
/// The two equations of inversive meadows, over `inv`.
std::vector<NamedEquation> inversive_axioms();
/// Consequences for division: 1/0 = 0, 1/1 = 1, sign, products and quotients.
std::vector<NamedEquation> division_identities();
/// Guard facts behind the sum-of-fractions inversion (e = g/g).
std::vector<NamedEquation> guard_lemmas();

}  // namespace meadow
