#pragma once

#include "meadow/term.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace meadow {

enum class Signature { Divisive, Inversive };

/// Parses the infix term grammar
///
///     term  := sum
///     sum   := prod (("+" | "-") prod)*
///     prod  := unary (("*" | "/") unary)*
///     unary := "-" unary | atom ("^" nat)?
///     atom  := int | ident | "(" term ")" | "inv" "(" term ")"
///
/// `0` and `1` are the constants; larger literals n are the numeral of n.
/// `p - q` is read as p + (-q) and `p^k` as the k-fold product 1*p*...*p.
/// `/` is only legal in divisive mode and `inv` only in inversive mode.
Term parse(std::string_view input, Signature signature = Signature::Divisive);

/// Infix rendering with the fewest parentheses that re-parse to the same tree.
std::string print(const Term& t);

using Json = nlohmann::ordered_json;

/// Tree-shaped encoding: {"op": "add", "args": [...]}, {"op": "var", "name": "x"},
/// {"op": "numeral", "value": "12"} for the numeral chain of 12.
Json to_json(const Term& t);
Term term_from_json(const Json& j);

}  // namespace meadow
