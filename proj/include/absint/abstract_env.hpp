// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "absint/lattice.hpp"

namespace absint {

using VarList = std::shared_ptr<const std::vector<std::string>>;

inline VarList make_var_list(std::vector<std::string> vars) {
    return std::make_shared<const std::vector<std::string>>(std::move(vars));
}

/// Pointwise lifting of a value lattice to a fixed variable list. A bottom slot makes the
/// whole environment bottom, and a bottom environment stores bottom in every slot. Bottom is
/// tracked separately so that an environment over zero variables still has a bottom.
template <Lattice V>
class Env {
  public:
    static constexpr std::string_view domain_name = V::domain_name;

    Env() : vars_(make_var_list({})) {}

    static Env top(VarList vars) { return Env(std::move(vars), false); }
    static Env bottom(VarList vars) { return Env(std::move(vars), true); }
    static Env of(VarList vars, std::vector<V> values) {
        if (values.size() != vars->size()) {
            throw std::invalid_argument("environment size does not match variable list");
        }
        Env e(std::move(vars), false);
        e.values_ = std::move(values);
        e.canonicalize();
        return e;
    }

    const VarList& vars() const { return vars_; }
    std::size_t size() const { return values_.size(); }
    bool is_bottom() const { return bottom_; }

    int index_of(const std::string& name) const {
        const auto it = std::find(vars_->begin(), vars_->end(), name);
        return it == vars_->end() ? -1 : static_cast<int>(it - vars_->begin());
    }
    const V& get(std::size_t i) const { return values_.at(i); }
    const V& get(const std::string& name) const { return values_.at(checked_index(name)); }
    void set(std::size_t i, V v) {
        if (bottom_) {
            return;
        }
        values_.at(i) = std::move(v);
        canonicalize();
    }
    void set(const std::string& name, V v) { set(checked_index(name), std::move(v)); }
    const std::vector<V>& values() const { return values_; }

    bool leq(const Env& o) const {
        if (bottom_) {
            return true;
        }
        if (o.bottom_) {
            return false;
        }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!values_[i].leq(o.values_[i])) {
                return false;
            }
        }
        return true;
    }
    Env join(const Env& o) const {
        if (bottom_) {
            return o;
        }
        if (o.bottom_) {
            return *this;
        }
        return pointwise(o, [](const V& a, const V& b) { return a.join(b); });
    }
    Env meet(const Env& o) const {
        if (bottom_ || o.bottom_) {
            return bottom(vars_);
        }
        return pointwise(o, [](const V& a, const V& b) { return a.meet(b); });
    }
    Env widen(const Env& o) const {
        if (bottom_) {
            return o;
        }
        if (o.bottom_) {
            return *this;
        }
        return pointwise(o, [](const V& a, const V& b) { return a.widen(b); });
    }
    Env narrow(const Env& o) const {
        if (!o.leq(*this)) {
            throw ContractError("narrowing an environment with one that is not below it");
        }
        if (o.bottom_) {
            return o;
        }
        return pointwise(o, [](const V& a, const V& b) { return a.narrow(b); });
    }

    friend bool operator==(const Env& a, const Env& b) {
        return a.bottom_ == b.bottom_ && (a.bottom_ || a.values_ == b.values_);
    }

  private:
    Env(VarList vars, bool bottom)
        : vars_(std::move(vars)), values_(vars_->size(), bottom ? V::bottom() : V::top()), bottom_(bottom) {}

    std::size_t checked_index(const std::string& name) const {
        const int i = index_of(name);
        if (i < 0) {
            throw std::out_of_range("variable '" + name + "' is not in the environment");
        }
        return static_cast<std::size_t>(i);
    }

    void canonicalize() {
        bottom_ = bottom_ || std::any_of(values_.begin(), values_.end(), [](const V& v) { return v == V::bottom(); });
        if (bottom_) {
            std::fill(values_.begin(), values_.end(), V::bottom());
        }
    }

    template <typename F>
    Env pointwise(const Env& o, F f) const {
        Env out = *this;
        for (std::size_t i = 0; i < values_.size(); ++i) {
            out.values_[i] = f(values_[i], o.values_[i]);
        }
        out.canonicalize();
        return out;
    }

    VarList vars_;
    std::vector<V> values_;
    bool bottom_ = false;
};

/// "{x: [0..10], y: [3..3]}", or "bot" for the bottom environment.
template <Lattice V>
std::string to_string(const Env<V>& e) {
    if (e.is_bottom()) {
        return "bot";
    }
    std::string out = "{";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += (*e.vars())[i] + ": " + to_string(e.get(i));
    }
    return out + "}";
}

} // namespace absint
