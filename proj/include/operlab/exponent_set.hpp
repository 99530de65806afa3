#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "operlab/exactalg.hpp"

namespace operlab {

/// A set of distinct elements of F_p, kept sorted.
class ExponentSet {
   public:
    explicit ExponentSet(Prime p) : p_(p) {}
    ExponentSet(Prime p, std::vector<std::int64_t> elements) : p_(p) {
        e_.reserve(elements.size());
        for (auto v : elements) e_.push_back(modp::reduce(v, p.value()));
        std::sort(e_.begin(), e_.end());
        if (std::adjacent_find(e_.begin(), e_.end()) != e_.end())
            throw Error(Errc::InvalidArgument, "exponent set has repeated elements");
    }

    static ExponentSet full(Prime p) {
        ExponentSet s(p);
        for (std::uint32_t c = 0; c < p.value(); ++c) s.e_.push_back(c);
        return s;
    }

    Prime prime() const noexcept { return p_; }
    std::size_t size() const noexcept { return e_.size(); }
    const std::vector<std::uint32_t>& elements() const noexcept { return e_; }
    bool contains(std::uint32_t c) const { return std::binary_search(e_.begin(), e_.end(), c % p_.value()); }

    std::uint32_t sum() const noexcept {
        std::uint32_t s = 0;
        for (auto v : e_) s = modp::add(s, v, p_.value());
        return s;
    }

    ExponentSet translated(std::int64_t c) const {
        const std::uint32_t cc = modp::reduce(c, p_.value());
        ExponentSet r(p_);
        r.e_.reserve(e_.size());
        for (auto v : e_) r.e_.push_back(modp::add(v, cc, p_.value()));
        std::sort(r.e_.begin(), r.e_.end());
        return r;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(e_[i]);
        }
        return s;
    }

    bool operator==(const ExponentSet& o) const { return p_ == o.p_ && e_ == o.e_; }
    bool operator<(const ExponentSet& o) const { return e_ < o.e_; }

   private:
    Prime p_;
    std::vector<std::uint32_t> e_;
};

}  // namespace operlab
