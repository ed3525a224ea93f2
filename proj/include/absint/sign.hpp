// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "absint/lattice.hpp"

namespace absint {

/// The five-point sign lattice: bottom < {neg, zero, pos} < top.
class Sign {
  public:
    enum class Tag : std::uint8_t { bottom, neg, zero, pos, top };

    static constexpr std::string_view domain_name = "sign";

    constexpr Sign() = default;
    constexpr explicit Sign(Tag t) : tag_(t) {}

    static constexpr Sign bottom() { return Sign(Tag::bottom); }
    static constexpr Sign top() { return Sign(Tag::top); }
    static constexpr Sign neg() { return Sign(Tag::neg); }
    static constexpr Sign zero() { return Sign(Tag::zero); }
    static constexpr Sign pos() { return Sign(Tag::pos); }
    static Sign of(const Integer& v);

    constexpr Tag tag() const { return tag_; }
    constexpr bool is_bottom() const { return tag_ == Tag::bottom; }
    constexpr bool is_top() const { return tag_ == Tag::top; }

    bool leq(const Sign& o) const;
    Sign join(const Sign& o) const;
    Sign meet(const Sign& o) const;
    Sign widen(const Sign& o) const { return join(o); }
    Sign narrow(const Sign& o) const { return meet(o); }

    friend constexpr bool operator==(Sign, Sign) = default;

  private:
    Tag tag_ = Tag::bottom;
};

/// "bot", "-", "0", "+", "top".
std::string to_string(Sign s);
/// Inverse of to_string. Throws std::invalid_argument.
Sign parse_sign(std::string_view text);

Sign sign_mul(Sign a, Sign b);
Sign sign_add(Sign a, Sign b);
Sign sign_neg(Sign a);
Sign sign_sub(Sign a, Sign b);

Sign sign_alpha(std::span<const Integer> values);
SetDescriptor sign_gamma(Sign s);
GaloisConnection<Sign> sign_connection();

} // namespace absint
