#pragma once

// Seeded random term generators for property tests.

#include "meadow/term.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace gen {

struct TermShape {
    int max_depth = 6;
    std::vector<std::string> vars;       // empty: closed terms
    int leaf_lo = -9;                    // integer leaves in [leaf_lo, leaf_hi]
    int leaf_hi = 9;
    double leaf_bias = 0.25;             // extra chance of stopping early at each level
    int max_divisions = 1 << 30;         // cap on Div nodes per term
    bool allow_division = true;
    bool allow_inverse = false;          // emit inv(...) instead of a/b
};

class TermGenerator {
public:
    TermGenerator(std::uint64_t seed, TermShape shape) : rng_(seed), shape_(std::move(shape)) {}

    meadow::Term next() {
        divisions_ = 0;
        return build(shape_.max_depth);
    }

    std::mt19937_64& rng() { return rng_; }

private:
    int pick(int lo, int hi) {
        return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool chance(double p) { return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p; }

    meadow::Term leaf() {
        if (!shape_.vars.empty() && chance(0.5))
            return meadow::Term::var(shape_.vars[static_cast<std::size_t>(pick(0, static_cast<int>(shape_.vars.size()) - 1))]);
        switch (pick(0, 5)) {
            case 0: return meadow::Term::zero();
            case 1: return meadow::Term::one();
            default: return meadow::mk_numeral(pick(shape_.leaf_lo, shape_.leaf_hi));
        }
    }

    meadow::Term build(int depth) {
        if (depth <= 0 || chance(shape_.leaf_bias)) return leaf();
        const bool can_divide = shape_.allow_division && divisions_ < shape_.max_divisions;
        switch (pick(0, can_divide ? 4 : 3)) {
            case 0: return meadow::add(build(depth - 1), build(depth - 1));
            case 1: return meadow::mul(build(depth - 1), build(depth - 1));
            case 2: return meadow::neg(build(depth - 1));
            case 3: return chance(0.5) ? meadow::sub(build(depth - 1), build(depth - 1)) : leaf();
            default:
                ++divisions_;
                if (shape_.allow_inverse) return meadow::inv(build(depth - 1));
                return meadow::div(build(depth - 1), build(depth - 1));
        }
    }

    std::mt19937_64 rng_;
    TermShape shape_;
    int divisions_ = 0;
};

}  // namespace gen
