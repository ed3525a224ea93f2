// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "absint/lattice.hpp"

namespace absint {

/// An integer or one of the two infinities.
class Bound {
  public:
    enum class Kind : std::uint8_t { neg_inf, finite, pos_inf };

    Bound(Integer v) : kind_(Kind::finite), value_(std::move(v)) {}
    Bound(int v) : Bound(Integer(v)) {}
    static Bound minus_infinity() { return Bound(Kind::neg_inf); }
    static Bound plus_infinity() { return Bound(Kind::pos_inf); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_minus_infinity() const { return kind_ == Kind::neg_inf; }
    bool is_plus_infinity() const { return kind_ == Kind::pos_inf; }
    /// Precondition: is_finite().
    const Integer& value() const { return value_; }

    friend bool operator==(const Bound& a, const Bound& b) {
        return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.value_ == b.value_);
    }
    friend std::strong_ordering operator<=>(const Bound& a, const Bound& b);

    Bound operator-() const;
    /// Undefined sums (-inf + +inf) throw ContractError.
    friend Bound operator+(const Bound& a, const Bound& b);
    friend Bound operator-(const Bound& a, const Bound& b) { return a + -b; }
    /// Infinity times zero is zero.
    friend Bound operator*(const Bound& a, const Bound& b);

  private:
    explicit Bound(Kind k) : kind_(k) {}
    Kind kind_;
    Integer value_;
};

std::string to_string(const Bound& b);

/// Integer interval [lo..hi] over Z extended with infinities; the empty interval is canonical.
class Interval {
  public:
    static constexpr std::string_view domain_name = "interval";

    /// The empty interval.
    Interval();
    /// Canonicalizes: lo > hi, lo = +inf, or hi = -inf give the empty interval.
    Interval(Bound lo, Bound hi);

    static Interval bottom() { return {}; }
    static Interval top() { return {Bound::minus_infinity(), Bound::plus_infinity()}; }
    static Interval singleton(const Integer& v) { return {v, v}; }
    static Interval range(const Integer& lo, const Integer& hi) { return {lo, hi}; }
    static Interval at_least(const Integer& lo) { return {lo, Bound::plus_infinity()}; }
    static Interval at_most(const Integer& hi) { return {Bound::minus_infinity(), hi}; }

    bool is_bottom() const { return empty_; }
    bool is_top() const { return !empty_ && lo_.is_minus_infinity() && hi_.is_plus_infinity(); }
    /// Precondition for lo()/hi(): !is_bottom().
    const Bound& lo() const { return lo_; }
    const Bound& hi() const { return hi_; }
    bool is_singleton() const { return !empty_ && lo_ == hi_; }
    bool contains(const Integer& v) const;
    bool is_finite() const { return !empty_ && lo_.is_finite() && hi_.is_finite(); }

    bool leq(const Interval& o) const;
    Interval join(const Interval& o) const;
    Interval meet(const Interval& o) const;
    Interval widen(const Interval& o) const;
    /// Precondition o.leq(*this), otherwise ContractError.
    Interval narrow(const Interval& o) const;

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.empty_ == b.empty_ && (a.empty_ || (a.lo_ == b.lo_ && a.hi_ == b.hi_));
    }

  private:
    bool empty_ = true;
    Bound lo_ = Bound::plus_infinity();
    Bound hi_ = Bound::minus_infinity();
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);

/// "[lo..hi]" with "-inf"/"+inf", or "[]".
std::string to_string(const Interval& i);
/// Inverse of to_string. Throws std::invalid_argument.
Interval parse_interval(std::string_view text);

Interval ivl_alpha(std::span<const Integer> values);
SetDescriptor ivl_gamma(const Interval& i);
GaloisConnection<Interval> interval_connection();

} // namespace absint
