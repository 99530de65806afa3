#pragma once

// Exponent sets modulo simultaneous translation (radii) and the involutions
// neg (e -> -e), comp (e -> F_p \ e) and tri = neg o comp.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "operlab/exponent_set.hpp"

namespace operlab {

/// Translation class of an exponent set. The representative is the
/// lexicographically smallest sorted translate, so it always contains 0.
class RadiusClass {
   public:
    Prime prime() const noexcept { return rep_.prime(); }
    std::size_t size() const noexcept { return rep_.size(); }
    const ExponentSet& rep() const noexcept { return rep_; }
    std::string to_string() const { return rep_.to_string(); }

    bool operator==(const RadiusClass& o) const { return rep_ == o.rep_; }
    bool operator<(const RadiusClass& o) const { return rep_ < o.rep_; }

   private:
    explicit RadiusClass(ExponentSet rep) : rep_(std::move(rep)) {}
    friend RadiusClass canonicalize(const ExponentSet& e);

    ExponentSet rep_;
};

inline RadiusClass canonicalize(const ExponentSet& e) {
    ExponentSet best = e;
    for (std::uint32_t c = 1; c < e.prime().value(); ++c) {
        ExponentSet t = e.translated(c);
        if (t < best) best = std::move(t);
    }
    return RadiusClass(std::move(best));
}

using RadiusTuple = std::vector<RadiusClass>;

inline ExponentSet involution_neg(const ExponentSet& e) {
    std::vector<std::int64_t> v;
    v.reserve(e.size());
    for (auto x : e.elements()) v.push_back(-static_cast<std::int64_t>(x));
    return ExponentSet(e.prime(), std::move(v));
}

inline ExponentSet involution_comp(const ExponentSet& e) {
    const std::uint32_t p = e.prime().value();
    if (e.size() >= p) throw Error(Errc::FullSet, "complement of the full set F_p");
    std::vector<std::int64_t> v;
    v.reserve(p - e.size());
    for (std::uint32_t c = 0; c < p; ++c)
        if (!e.contains(c)) v.push_back(c);
    return ExponentSet(e.prime(), std::move(v));
}

inline ExponentSet involution_tri(const ExponentSet& e) { return involution_neg(involution_comp(e)); }

inline RadiusClass involution_neg(const RadiusClass& rho) { return canonicalize(involution_neg(rho.rep())); }
inline RadiusClass involution_comp(const RadiusClass& rho) { return canonicalize(involution_comp(rho.rep())); }
inline RadiusClass involution_tri(const RadiusClass& rho) { return canonicalize(involution_tri(rho.rep())); }

/// True iff some translate of the representative is stable under negation.
inline bool is_symmetric(const RadiusClass& rho) {
    for (std::uint32_t c = 0; c < rho.prime().value(); ++c) {
        ExponentSet t = rho.rep().translated(c);
        if (involution_neg(t) == t) return true;
    }
    return false;
}

/// Same predicate via the class map: rho is fixed by neg.
inline bool is_symmetric_algebraic(const RadiusClass& rho) { return involution_neg(rho) == rho; }

/// The translate of the representative whose elements sum to target.
/// Unique because |e| is invertible mod p.
inline ExponentSet pinned_representative(const RadiusClass& rho, std::uint32_t target) {
    const std::uint32_t p = rho.prime().value();
    const auto n = static_cast<std::uint32_t>(rho.size() % p);
    if (n == 0) throw Error(Errc::InvalidArgument, "cannot pin the sum of a set of size divisible by p");
    const std::uint32_t shift = modp::mul(modp::sub(target % p, rho.rep().sum(), p), modp::inv(n, p), p);
    return rho.rep().translated(shift);
}

/// All classes of n-subsets of F_p (optionally only neg-fixed ones), in
/// lexicographic order of representatives.
inline std::vector<RadiusClass> enumerate_classes(Prime p, std::size_t n, bool symmetric_only) {
    const std::uint32_t pv = p.value();
    if (n < 1 || n >= pv) throw Error(Errc::InvalidArgument, "need 1 <= n < p");
    std::vector<RadiusClass> out;
    // Representatives contain 0; walk (n-1)-subsets of {1, ..., p-1} in lex order.
    std::vector<std::uint32_t> idx(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) idx[i] = static_cast<std::uint32_t>(i + 1);
    while (true) {
        std::vector<std::int64_t> elems{0};
        for (auto v : idx) elems.push_back(v);
        ExponentSet e(p, std::move(elems));
        RadiusClass c = canonicalize(e);
        if (c.rep() == e && (!symmetric_only || is_symmetric(c))) out.push_back(std::move(c));
        // next combination
        std::size_t k = idx.size();
        while (k > 0 && idx[k - 1] == pv - 1 - (idx.size() - k)) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

/// "0,1;0,2;0,1" for a tuple of classes.
inline std::string radii_key(const RadiusTuple& rho) {
    std::string s;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        if (i) s += ';';
        s += rho[i].to_string();
    }
    return s;
}

inline ExponentSet parse_exponent_set(Prime p, const std::string& text) {
    std::vector<std::int64_t> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            v.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw Error(Errc::Parse, "bad exponent '" + item + "'");
        }
    }
    return ExponentSet(p, std::move(v));
}

inline RadiusTuple parse_radii_key(Prime p, const std::string& key) {
    RadiusTuple out;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ';')) out.push_back(canonicalize(parse_exponent_set(p, part)));
    return out;
}

}  // namespace operlab
