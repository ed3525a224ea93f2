// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "absint/sign.hpp"

#include <stdexcept>

namespace absint {

using Tag = Sign::Tag;

Sign Sign::of(const Integer& v) { return v < 0 ? neg() : v == 0 ? zero() : pos(); }

bool Sign::leq(const Sign& o) const { return tag_ == Tag::bottom || o.tag_ == Tag::top || tag_ == o.tag_; }

Sign Sign::join(const Sign& o) const {
    if (leq(o)) {
        return o;
    }
    if (o.leq(*this)) {
        return *this;
    }
    return top();
}

Sign Sign::meet(const Sign& o) const {
    if (leq(o)) {
        return *this;
    }
    if (o.leq(*this)) {
        return o;
    }
    return bottom();
}

std::string to_string(Sign s) {
    switch (s.tag()) {
    case Tag::bottom: return "bot";
    case Tag::neg: return "-";
    case Tag::zero: return "0";
    case Tag::pos: return "+";
    case Tag::top: return "top";
    }
    return "?";
}

Sign parse_sign(std::string_view text) {
    for (const Sign s : {Sign::bottom(), Sign::neg(), Sign::zero(), Sign::pos(), Sign::top()}) {
        if (to_string(s) == text) {
            return s;
        }
    }
    throw std::invalid_argument("not a sign: '" + std::string(text) + "'");
}

Sign sign_mul(Sign a, Sign b) {
    if (a.is_bottom() || b.is_bottom()) {
        return Sign::bottom();
    }
    if (a == Sign::zero() || b == Sign::zero()) {
        return Sign::zero();
    }
    if (a.is_top() || b.is_top()) {
        return Sign::top();
    }
    return a == b ? Sign::pos() : Sign::neg();
}

Sign sign_add(Sign a, Sign b) {
    if (a.is_bottom() || b.is_bottom()) {
        return Sign::bottom();
    }
    if (a == Sign::zero()) {
        return b;
    }
    if (b == Sign::zero()) {
        return a;
    }
    return a == b ? a : Sign::top();
}

Sign sign_neg(Sign a) {
    switch (a.tag()) {
    case Tag::neg: return Sign::pos();
    case Tag::pos: return Sign::neg();
    default: return a;
    }
}

Sign sign_sub(Sign a, Sign b) { return sign_add(a, sign_neg(b)); }

Sign sign_alpha(std::span<const Integer> values) {
    Sign out = Sign::bottom();
    for (const auto& v : values) {
        out = out.join(Sign::of(v));
    }
    return out;
}

SetDescriptor sign_gamma(Sign s) {
    switch (s.tag()) {
    case Tag::bottom: return SetDescriptor::empty();
    case Tag::zero:
        return SetDescriptor([](const Integer& v) { return v == 0; }, Integer(1),
                             [] { return std::vector<Integer>{Integer(0)}; });
    case Tag::neg: return SetDescriptor([](const Integer& v) { return v < 0; }, std::nullopt);
    case Tag::pos: return SetDescriptor([](const Integer& v) { return v > 0; }, std::nullopt);
    case Tag::top: return SetDescriptor([](const Integer&) { return true; }, std::nullopt);
    }
    return SetDescriptor::empty();
}

GaloisConnection<Sign> sign_connection() { return {sign_alpha, sign_gamma}; }

} // namespace absint
