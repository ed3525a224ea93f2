// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "absint/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace absint {

std::strong_ordering operator<=>(const Bound& a, const Bound& b) {
    if (a.kind_ != b.kind_) {
        return a.kind_ <=> b.kind_;
    }
    if (a.kind_ != Bound::Kind::finite) {
        return std::strong_ordering::equal;
    }
    return a.value_ < b.value_ ? std::strong_ordering::less
           : a.value_ == b.value_ ? std::strong_ordering::equal
                                  : std::strong_ordering::greater;
}

Bound Bound::operator-() const {
    switch (kind_) {
    case Kind::neg_inf: return plus_infinity();
    case Kind::pos_inf: return minus_infinity();
    case Kind::finite: return Bound(Integer(-value_));
    }
    return *this;
}

Bound operator+(const Bound& a, const Bound& b) {
    if (a.is_finite() && b.is_finite()) {
        return Bound(Integer(a.value_ + b.value_));
    }
    if ((a.is_minus_infinity() && b.is_plus_infinity()) || (a.is_plus_infinity() && b.is_minus_infinity())) {
        throw ContractError("undefined bound sum -inf + +inf");
    }
    return a.is_finite() ? b : a;
}

Bound operator*(const Bound& a, const Bound& b) {
    if (a.is_finite() && b.is_finite()) {
        return Bound(Integer(a.value_ * b.value_));
    }
    auto sign = [](const Bound& x) {
        if (!x.is_finite()) {
            return x.is_plus_infinity() ? 1 : -1;
        }
        return x.value_ < 0 ? -1 : x.value_ == 0 ? 0 : 1;
    };
    const int s = sign(a) * sign(b);
    if (s == 0) {
        return Bound(0);
    }
    return s > 0 ? Bound::plus_infinity() : Bound::minus_infinity();
}

std::string to_string(const Bound& b) {
    switch (b.kind()) {
    case Bound::Kind::neg_inf: return "-inf";
    case Bound::Kind::pos_inf: return "+inf";
    case Bound::Kind::finite: return b.value().str();
    }
    return "?";
}

Interval::Interval() = default;

Interval::Interval(Bound lo, Bound hi) {
    if (lo.is_plus_infinity() || hi.is_minus_infinity() || lo > hi) {
        return;
    }
    empty_ = false;
    lo_ = std::move(lo);
    hi_ = std::move(hi);
}

bool Interval::contains(const Integer& v) const { return !empty_ && lo_ <= Bound(v) && Bound(v) <= hi_; }

bool Interval::leq(const Interval& o) const {
    if (empty_) {
        return true;
    }
    return !o.empty_ && lo_ >= o.lo_ && hi_ <= o.hi_;
}

Interval Interval::join(const Interval& o) const {
    if (empty_) {
        return o;
    }
    if (o.empty_) {
        return *this;
    }
    return {std::min(lo_, o.lo_), std::max(hi_, o.hi_)};
}

Interval Interval::meet(const Interval& o) const {
    if (empty_ || o.empty_) {
        return {};
    }
    return {std::max(lo_, o.lo_), std::min(hi_, o.hi_)};
}

Interval Interval::widen(const Interval& o) const {
    if (empty_) {
        return o;
    }
    if (o.empty_) {
        return *this;
    }
    return {o.lo_ < lo_ ? Bound::minus_infinity() : lo_, o.hi_ > hi_ ? Bound::plus_infinity() : hi_};
}

Interval Interval::narrow(const Interval& o) const {
    if (!o.leq(*this)) {
        throw ContractError("narrowing " + to_string(*this) + " with " + to_string(o) + ", which is not below it");
    }
    if (o.empty_) {
        return {};
    }
    return {lo_.is_minus_infinity() ? o.lo_ : lo_, hi_.is_plus_infinity() ? o.hi_ : hi_};
}

Interval operator+(const Interval& a, const Interval& b) {
    if (a.is_bottom() || b.is_bottom()) {
        return {};
    }
    return {a.lo() + b.lo(), a.hi() + b.hi()};
}

Interval operator-(const Interval& a) {
    if (a.is_bottom()) {
        return {};
    }
    return {-a.hi(), -a.lo()};
}

Interval operator-(const Interval& a, const Interval& b) { return a + -b; }

Interval operator*(const Interval& a, const Interval& b) {
    if (a.is_bottom() || b.is_bottom()) {
        return {};
    }
    const Bound p[] = {a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()};
    return {*std::min_element(std::begin(p), std::end(p)), *std::max_element(std::begin(p), std::end(p))};
}

std::string to_string(const Interval& i) {
    if (i.is_bottom()) {
        return "[]";
    }
    return "[" + to_string(i.lo()) + ".." + to_string(i.hi()) + "]";
}

static Bound parse_bound(std::string_view t) {
    if (t == "-inf") {
        return Bound::minus_infinity();
    }
    if (t == "+inf") {
        return Bound::plus_infinity();
    }
    return Bound(parse_integer(t));
}

Interval parse_interval(std::string_view text) {
    if (text == "[]") {
        return {};
    }
    const auto dots = text.find("..");
    if (text.size() < 6 || text.front() != '[' || text.back() != ']' || dots == std::string_view::npos) {
        throw std::invalid_argument("not an interval: '" + std::string(text) + "'");
    }
    Bound lo = parse_bound(text.substr(1, dots - 1));
    Bound hi = parse_bound(text.substr(dots + 2, text.size() - dots - 3));
    if (lo.is_plus_infinity() || hi.is_minus_infinity() || lo > hi) {
        throw std::invalid_argument("not a canonical interval: '" + std::string(text) + "'");
    }
    return {std::move(lo), std::move(hi)};
}

Interval ivl_alpha(std::span<const Integer> values) {
    if (values.empty()) {
        return {};
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return {*lo, *hi};
}

SetDescriptor ivl_gamma(const Interval& i) {
    if (i.is_bottom()) {
        return SetDescriptor::empty();
    }
    auto member = [i](const Integer& v) { return i.contains(v); };
    if (!i.is_finite()) {
        return SetDescriptor(member, std::nullopt);
    }
    const Integer lo = i.lo().value();
    const Integer hi = i.hi().value();
    return SetDescriptor(member, Integer(hi - lo + 1), [lo, hi] {
        std::vector<Integer> out;
        for (Integer v = lo; v <= hi; ++v) {
            out.push_back(v);
        }
        return out;
    });
}

GaloisConnection<Interval> interval_connection() { return {ivl_alpha, ivl_gamma}; }

} // namespace absint
