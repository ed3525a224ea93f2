// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <vector>

#include "absint/interval.hpp"
#include "absint/sign.hpp"
#include "support/random_programs.hpp"

namespace absint::testing {

/// Mostly small finite intervals, with infinite bounds and bottom mixed in.
inline Interval random_interval(std::mt19937& rng, int span = 10) {
    if (uniform(rng, 0, 15) == 0) {
        return Interval::bottom();
    }
    const int a = uniform(rng, -span, span);
    const int b = uniform(rng, a, span);
    Bound lo = uniform(rng, 0, 5) == 0 ? Bound::minus_infinity() : Bound(a);
    Bound hi = uniform(rng, 0, 5) == 0 ? Bound::plus_infinity() : Bound(b);
    return {lo, hi};
}

inline Interval random_finite_interval(std::mt19937& rng, int lo, int hi) {
    const int a = uniform(rng, lo, hi);
    return Interval::range(a, uniform(rng, a, hi));
}

inline Sign random_sign(std::mt19937& rng) { return Sign(static_cast<Sign::Tag>(uniform(rng, 0, 4))); }

inline std::vector<Integer> random_set(std::mt19937& rng, int lo, int hi, int max_size) {
    std::vector<Integer> out;
    const int n = uniform(rng, 0, max_size);
    for (int i = 0; i < n; ++i) {
        const Integer v = uniform(rng, lo, hi);
        if (std::find(out.begin(), out.end(), v) == out.end()) {
            out.push_back(v);
        }
    }
    return out;
}

inline const std::vector<Sign>& all_signs() {
    static const std::vector<Sign> s{Sign::bottom(), Sign::neg(), Sign::zero(), Sign::pos(), Sign::top()};
    return s;
}

} // namespace absint::testing
