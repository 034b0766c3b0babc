#include "meadow/identities.hpp"

#include "meadow/syntax.hpp"

namespace meadow {

namespace {

std::vector<NamedEquation> from_text(
    std::initializer_list<std::tuple<const char*, const char*, const char*>> rows,
    Signature signature = Signature::Divisive) {
    std::vector<NamedEquation> out;
    for (const auto& [name, lhs, rhs] : rows) out.push_back({name, parse(lhs, signature), parse(rhs, signature)});
    return out;
}

}  // namespace

std::vector<NamedEquation> ring_axioms() {
    return from_text({
        {"add-assoc", "(x + y) + z", "x + (y + z)"},
        {"add-comm", "x + y", "y + x"},
        {"add-zero", "x + 0", "x"},
        {"add-inverse", "x + (-x)", "0"},
        {"mul-assoc", "(x * y) * z", "x * (y * z)"},
        {"mul-comm", "x * y", "y * x"},
        {"mul-one", "x * 1", "x"},
        {"distrib", "x * (y + z)", "x * y + x * z"},
    });
}

std::vector<NamedEquation> divisive_axioms() {
    return from_text({
        {"div-involution", "1 / (1 / x)", "x"},
        {"div-square", "(x * x) / x", "x"},
        {"div-as-mul", "x / y", "x * (1 / y)"},
    });
}

std::vector<NamedEquation> inversive_axioms() {
    return from_text({
                         {"inv-involution", "inv(inv(x))", "x"},
                         {"inv-weak", "x * (x * inv(x))", "x"},
                     },
                     Signature::Inversive);
}

std::vector<NamedEquation> division_identities() {
    return from_text({
        {"inverse-of-zero", "1 / 0", "0"},
        {"inverse-of-one", "1 / 1", "1"},
        {"inverse-of-neg", "1 / (-x)", "-(1 / x)"},
        {"inverse-of-product", "1 / (x * y)", "(1 / x) * (1 / y)"},
        {"fraction-product", "(x / y) * (z / w)", "(x * z) / (y * w)"},
        {"fraction-quotient", "(x / y) / (z / w)", "(x * w) / (y * z)"},
    });
}

std::vector<NamedEquation> guard_lemmas() {
    return from_text({
        {"guard-idempotent", "(x / x) * (x / x)", "x / x"},
        {"guard-absorbs", "(x / x) * x", "x"},
        {"guard-complement", "(y / x) * (1 - x / x)", "0"},
        {"guard-product", "(x * y) / (x * y)", "(x / x) * (y / y)"},
        // On the piece where both denominators are invertible.
        {"guard-piece-both", "(x / x) * (y / y) * (1 / (a / x + b / y))",
         "(x / x) * (y / y) * ((x * y) / (y * a + x * b))"},
        // Where only x is invertible, the y-summand drops out.
        {"guard-piece-one", "(x / x) * (1 - y / y) * (1 / (a / x + b / y))",
         "(x / x) * (1 - y / y) * (x / a)"},
        {"guard-piece-none", "(1 - x / x) * (1 - y / y) * (1 / (a / x + b / y))", "0"},
    });
}

}  // namespace meadow
