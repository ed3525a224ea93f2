// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace absint {

/// Program integers are mathematical integers.
using Integer = boost::multiprecision::cpp_int;

enum class OverflowPolicy {
    unbounded, ///< exact arithmetic over Z (default)
    wrap64,    ///< two's complement 64-bit wraparound, for experiments only
};

inline std::string to_string(const Integer& v) { return v.str(); }

/// Parses an optionally signed decimal literal. Throws std::invalid_argument on bad input.
Integer parse_integer(std::string_view text);

/// Reduces `v` into the signed 64-bit range modulo 2^64.
Integer wrap_to_int64(const Integer& v);

inline Integer apply_overflow(Integer v, OverflowPolicy policy) {
    if (policy == OverflowPolicy::wrap64) {
        return wrap_to_int64(v);
    }
    return v;
}

} // namespace absint
