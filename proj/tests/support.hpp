#pragma once

#include <random>
#include <vector>

#include "operlab/operlab.hpp"

namespace testing_support {

using namespace operlab;

inline Poly random_poly(Prime p, int max_deg, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> c(0, p.value() - 1);
    std::uniform_int_distribution<int> d(0, max_deg);
    std::vector<std::int64_t> v(static_cast<std::size_t>(d(rng)) + 1);
    for (auto& x : v) x = c(rng);
    return Poly::from_signed(p, v);
}

inline Poly random_monic(Prime p, int deg, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> c(0, p.value() - 1);
    std::vector<std::int64_t> v(static_cast<std::size_t>(deg) + 1);
    for (auto& x : v) x = c(rng);
    v.back() = 1;
    return Poly::from_signed(p, v);
}

inline RationalFunction random_ratfn(Prime p, std::mt19937_64& rng, int max_deg = 2) {
    std::uniform_int_distribution<int> d(0, max_deg);
    return RationalFunction(random_poly(p, max_deg, rng), random_monic(p, d(rng), rng));
}

/// Monic operator with random rational coefficients.
inline OreOperator random_operator(Prime p, Gauge g, int order, std::mt19937_64& rng, int max_deg = 2) {
    std::vector<RationalFunction> c;
    for (int i = 0; i < order; ++i) c.push_back(random_ratfn(p, rng, max_deg));
    c.push_back(RationalFunction::constant(p, 1));
    return OreOperator(p, g, std::move(c));
}

/// L(f) for an operator acting on functions through its derivation.
inline RationalFunction apply(const OreOperator& l, const RationalFunction& f) {
    RationalFunction acc(l.prime()), der = f;
    for (std::size_t i = 0; i < l.coeffs().size(); ++i) {
        acc += l.coeffs()[i] * der;
        der = derive(der, l.gauge());
    }
    return acc;
}

/// Monic operator whose solution space over the constants F_p(x^p) is
/// spanned by n random polynomials; dormant by construction.
inline OreOperator random_dormant(Prime p, Gauge g, int order, std::mt19937_64& rng, int max_deg = 2) {
    std::uniform_int_distribution<std::size_t> ex(0, p.value() - 1);
    while (true) {
        OreOperator l = OreOperator::from_constants(p, g, {1});
        bool ok = true;
        for (int k = 0; k < order && ok; ++k) {
            bool found = false;
            for (int attempt = 0; attempt < 20 && !found; ++attempt) {
                Poly f = random_poly(p, max_deg, rng).shifted_up(ex(rng));
                if (f.is_zero()) continue;
                const RationalFunction h = apply(l, RationalFunction(f));
                if (h.is_zero()) continue;
                const OreOperator step(p, g, {-(derive(h, g) / h), RationalFunction::constant(p, 1)});
                l = step * l;
                found = true;
            }
            ok = found;
        }
        if (ok) return l;
    }
}

/// (x - t_1)...(x - t_k) acting as multiplication.
inline Poly from_roots(Prime p, const std::vector<std::int64_t>& roots) {
    Poly f = Poly::constant(p, 1);
    for (auto r : roots) f *= Poly(p, {-r, 1});
    return f;
}

/// Symmetrization (M + (-1)^n adj M) / 2, which is self-dual.
inline OreOperator symmetrize(const OreOperator& m) {
    const OreOperator a = ore_adjoint(m);
    const OreOperator s = m + (m.order() % 2 == 0 ? a : -a);
    const std::uint32_t half = modp::inv(2, m.prime().value());
    return scale_left(RationalFunction::constant(m.prime(), half), s);
}

}  // namespace testing_support
