// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "absint/lattice.hpp"

#include <cctype>

namespace absint {

SetDescriptor::SetDescriptor(Membership contains, std::optional<Integer> size, Enumerator enumerate)
    : contains_(std::move(contains)), size_(std::move(size)), enumerate_(std::move(enumerate)) {}

SetDescriptor SetDescriptor::empty() {
    return SetDescriptor([](const Integer&) { return false; }, Integer(0), [] { return std::vector<Integer>{}; });
}

bool SetDescriptor::enumerable(std::size_t max_size) const {
    return size_.has_value() && enumerate_ && *size_ <= max_size;
}

std::vector<Integer> SetDescriptor::enumerate(std::size_t max_size) const {
    if (!size_) {
        throw NotEnumerable("set is infinite");
    }
    if (!enumerate_ || *size_ > max_size) {
        throw NotEnumerable("set has " + size_->str() + " elements, above the enumeration limit");
    }
    return enumerate_();
}

std::string_view to_string(LawStatus s) {
    switch (s) {
    case LawStatus::pass: return "pass";
    case LawStatus::fail: return "fail";
    case LawStatus::skipped: return "skipped";
    }
    return "?";
}

std::size_t LawReport::count(LawStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [&](const LawResult& r) { return r.status == s; }));
}

const LawResult* LawReport::first_failure() const {
    for (const auto& r : results) {
        if (r.status == LawStatus::fail) {
            return &r;
        }
    }
    return nullptr;
}

void LawReport::add(std::string law, std::string_view domain, std::string sample, bool ok, std::string witness) {
    LawResult r;
    r.law = std::move(law);
    r.domain = std::string(domain);
    r.sample = std::move(sample);
    r.status = ok ? LawStatus::pass : LawStatus::fail;
    if (!ok) {
        r.witness = std::move(witness);
    }
    results.push_back(std::move(r));
}

void LawReport::append(const LawReport& other) {
    results.insert(results.end(), other.results.begin(), other.results.end());
    warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

void LawReport::sort() {
    auto key = [](const std::string& id) {
        std::size_t digits = id.size();
        while (digits > 0 && std::isdigit(static_cast<unsigned char>(id[digits - 1]))) {
            --digits;
        }
        const std::string prefix = id.substr(0, digits);
        const std::size_t n = digits < id.size() ? std::stoul(id.substr(digits)) : 0;
        return std::pair{prefix, n};
    };
    std::stable_sort(results.begin(), results.end(),
                     [&](const LawResult& a, const LawResult& b) { return key(a.sample) < key(b.sample); });
}

} // namespace absint
