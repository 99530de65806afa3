#pragma once

// The dual D -> D^ (right quotient of the central element by D), self-duality
// detection and the orthogonal <-> symplectic exchange.

#include <algorithm>
#include <string>
#include <vector>

#include "operlab/dormancy.hpp"
#include "operlab/radii.hpp"

namespace operlab {

struct DualPair {
    OreOperator d;
    OreOperator d_dual;
};

enum class SelfDualityKind { None, Orthogonal, Symplectic };

inline const char* kind_name(SelfDualityKind k) noexcept {
    switch (k) {
        case SelfDualityKind::Orthogonal: return "orthogonal";
        case SelfDualityKind::Symplectic: return "symplectic";
        default: return "none";
    }
}

inline SelfDualityKind parse_kind(const std::string& s) {
    if (s == "none") return SelfDualityKind::None;
    if (s == "orthogonal" || s == "so") return SelfDualityKind::Orthogonal;
    if (s == "symplectic" || s == "sp") return SelfDualityKind::Symplectic;
    throw Error(Errc::Parse, "unknown self-duality kind '" + s + "'");
}

inline DualPair dualize(const OreOperator& d) {
    detail::require_oper_shape(d);
    if (d.order() >= static_cast<int>(d.prime().value()))
        throw Error(Errc::InvalidArgument, "dualize needs order < p");
    auto qr = ore_divmod_right(central_element(d.prime(), d.gauge()), d);
    if (!qr.rem.is_zero()) throw Error(Errc::NotDormant, to_string(d));
    return {d, std::move(qr.quot)};
}

/// adj(d) == (-1)^n d exactly; the parity of n then fixes the kind.
inline SelfDualityKind self_duality_kind(const OreOperator& d) {
    if (!d.is_monic()) throw Error(Errc::NotMonic, to_string(d));
    const bool odd = d.order() % 2 == 1;
    const OreOperator a = ore_adjoint(d);
    if (a != (odd ? -d : d)) return SelfDualityKind::None;
    return odd ? SelfDualityKind::Orthogonal : SelfDualityKind::Symplectic;
}

/// exponents(d_dual, pt) + shift == F_p \ exponents(d, pt), where n = order(d).
inline std::uint32_t dual_exponent_shift(Prime p, Gauge g, ProjPoint pt, int n) {
    const std::uint32_t pv = p.value();
    const std::uint32_t nn = static_cast<std::uint32_t>(n) % pv;
    if (g == Gauge::Partial) return pt.infinite ? modp::neg(nn, pv) : nn;
    if (pt.infinite || pt.value == 0) return 0;
    return nn;
}

/// Points where the complement law is checked: 0, infinity and every finite
/// singularity of either operator.
inline std::vector<ProjPoint> dual_check_points(const DualPair& pair) {
    std::vector<ProjPoint> pts{ProjPoint::at(0)};
    for (const auto* op : {&pair.d, &pair.d_dual})
        for (auto c : finite_singular_points(*op))
            if (std::find(pts.begin(), pts.end(), ProjPoint::at(c)) == pts.end()) pts.push_back(ProjPoint::at(c));
    std::sort(pts.begin(), pts.end());
    pts.push_back(ProjPoint::infinity());
    return pts;
}

/// True iff the exponent complement law holds at the point.
inline bool complement_law_at(const DualPair& pair, ProjPoint pt) {
    const ExponentSet e = exponent_set_of(indicial_polynomial(pair.d, pt));
    const ExponentSet f = exponent_set_of(indicial_polynomial(pair.d_dual, pt));
    const auto shift = dual_exponent_shift(pair.d.prime(), pair.d.gauge(), pt, pair.d.order());
    return f.translated(shift) == involution_comp(e);
}

inline bool two_sided(const DualPair& pair) {
    const OreOperator c = central_element(pair.d.prime(), pair.d.gauge());
    return pair.d_dual * pair.d == c && pair.d * pair.d_dual == c;
}

inline DualPair bc_dualize(const OreOperator& d) {
    const SelfDualityKind k = self_duality_kind(d);
    if (k == SelfDualityKind::None) throw Error(Errc::NotSelfDual, to_string(d));
    DualPair pair = dualize(d);
    const SelfDualityKind kd = self_duality_kind(pair.d_dual);
    const SelfDualityKind want =
        k == SelfDualityKind::Orthogonal ? SelfDualityKind::Symplectic : SelfDualityKind::Orthogonal;
    if (kd != want)
        throw Error(Errc::Internal, "dual of " + to_string(d) + " has kind " + kind_name(kd));
    for (const auto& pt : dual_check_points(pair))
        if (!complement_law_at(pair, pt))
            throw Error(Errc::Internal, "exponent complement law fails at " + pt.to_string() + " for " + to_string(d));
    return pair;
}

/// d^{p-1} or t^{p-1} - 1.
inline OreOperator canonical_sp_full(Prime p, Gauge g) {
    OreOperator d = OreOperator::generator_power(p, g, p.value() - 1);
    if (g == Gauge::Theta) d = d - OreOperator::from_constants(p, g, {1});
    return d;
}

}  // namespace operlab
