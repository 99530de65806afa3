#pragma once

// Dormancy (vanishing p-curvature) by three independent routes, and local
// exponents read from indicial polynomials.

#include <cstdint>
#include <string>
#include <vector>

#include "operlab/exponent_set.hpp"
#include "operlab/ore.hpp"

namespace operlab {

/// d^p in the partial gauge, t^p - t in the theta gauge. Both are central.
inline OreOperator central_element(Prime p, Gauge g) {
    OreOperator c = OreOperator::generator_power(p, g, p.value());
    if (g == Gauge::Theta) c = c - OreOperator::generator(p, g);
    return c;
}

namespace detail {

inline void require_oper_shape(const OreOperator& d) {
    if (!d.is_monic()) throw Error(Errc::NotMonic, "operator must be monic: " + to_string(d));
    if (d.order() < 1 || d.order() > static_cast<int>(d.prime().value()))
        throw Error(Errc::InvalidArgument, "order must lie in [1, p]");
}

}  // namespace detail

inline bool dormant_by_division(const OreOperator& d) {
    detail::require_oper_shape(d);
    return ore_divmod_right(central_element(d.prime(), d.gauge()), d).rem.is_zero();
}

/// Dense square matrix of rational functions, row-major.
struct RatMatrix {
    std::size_t n = 0;
    std::vector<RationalFunction> entries;

    RatMatrix(Prime p, std::size_t size) : n(size), entries(size * size, RationalFunction(p)) {}

    RationalFunction& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
    const RationalFunction& at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
    bool is_zero() const {
        for (const auto& e : entries)
            if (!e.is_zero()) return false;
        return true;
    }
};

struct PCurvature {
    bool flag;
    RatMatrix psi;
};

/// Companion system Y' = A Y in the basis (y, gen y, ..., gen^{n-1} y), then
/// A_{k+1} = delta(A_k) + A_k A up to k = p. psi is A_p for d = d/dx and
/// A_p - A for t = x d/dx (whose p-th symbolic power is t itself).
inline PCurvature dormant_by_pcurvature(const OreOperator& d) {
    detail::require_oper_shape(d);
    const Prime p = d.prime();
    const auto n = static_cast<std::size_t>(d.order());
    RatMatrix a(p, n);
    for (std::size_t i = 0; i + 1 < n; ++i) a.at(i, i + 1) = RationalFunction::constant(p, 1);
    for (std::size_t j = 0; j < n; ++j) a.at(n - 1, j) = -d.coeffs()[j];

    RatMatrix ak = a;
    for (std::uint32_t k = 1; k < p.value(); ++k) {
        RatMatrix next(p, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                // (A_k A)(r, c) = A_k(r, c-1) - A_k(r, n-1) a_c
                RationalFunction v = derive(ak.at(r, c), d.gauge());
                if (c >= 1) v += ak.at(r, c - 1);
                v -= ak.at(r, n - 1) * d.coeffs()[c];
                next.at(r, c) = std::move(v);
            }
        }
        ak = std::move(next);
    }
    if (d.gauge() == Gauge::Theta)
        for (std::size_t i = 0; i < ak.entries.size(); ++i) ak.entries[i] -= a.entries[i];
    const bool flag = ak.is_zero();
    return {flag, std::move(ak)};
}

namespace detail {

/// Rank of a dense matrix over F_p (rows x cols, row-major), destroys input.
inline std::size_t rank_mod_p(std::vector<std::uint32_t>& m, std::size_t rows, std::size_t cols, std::uint32_t p) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m[piv * cols + col] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[rank * cols + j]);
        const std::uint32_t inv = modp::inv(m[rank * cols + col], p);
        for (std::size_t j = col; j < cols; ++j) m[rank * cols + j] = modp::mul(m[rank * cols + j], inv, p);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r * cols + col] == 0) continue;
            const std::uint32_t f = m[r * cols + col];
            for (std::size_t j = col; j < cols; ++j)
                m[r * cols + j] = modp::sub(m[r * cols + j], modp::mul(f, m[rank * cols + j], p), p);
        }
        ++rank;
    }
    return rank;
}

/// Dimension over F_p of the truncated power-series solution space:
/// y mod x^N with L(y) = 0 mod x^{N-n}.
inline std::size_t truncated_kernel_dim(const std::vector<std::vector<std::uint32_t>>& series, std::size_t n,
                                        std::size_t big_n, std::uint32_t p) {
    const std::size_t rows = big_n - n;
    std::vector<std::uint32_t> m(rows * big_n, 0);
    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t k = 0; k < rows; ++k) {
            for (std::size_t j = 0; j <= k; ++j) {
                // x^k coefficient of a_i * y^{(i)} picks a_i[k-j] * (j+1)...(j+i) y_{j+i}
                const std::uint32_t ai = series[i][k - j];
                if (ai == 0 || j + i >= big_n) continue;
                std::uint32_t ff = 1;
                for (std::size_t t = 1; t <= i; ++t) ff = modp::mul(ff, static_cast<std::uint32_t>((j + t) % p), p);
                std::uint32_t& cell = m[k * big_n + j + i];
                cell = modp::add(cell, modp::mul(ai, ff, p), p);
            }
        }
    }
    return big_n - rank_mod_p(m, rows, big_n, p);
}

}  // namespace detail

/// Smallest c in F_p where every coefficient of the partial-gauge form of d is
/// regular; throws NoOrdinaryPoint if all of F_p is singular.
inline std::uint32_t ordinary_point(const OreOperator& d) {
    const OreOperator dp = make_monic(to_partial(d));
    for (std::uint32_t c = 0; c < d.prime().value(); ++c) {
        bool ok = true;
        for (const auto& f : dp.coeffs()) ok = ok && f.is_regular_at(c);
        if (ok) return c;
    }
    throw Error(Errc::NoOrdinaryPoint, "every point of F_p is singular for " + to_string(d));
}

/// Rank over F_p((x^p)) of the power-series solutions at an ordinary point.
/// The truncated kernel grows by exactly that rank per block of p
/// coefficients once the truncation is past the transient; three truncations
/// at degree_bound, +p, +2p must agree.
inline std::size_t solution_rank(const OreOperator& d, std::size_t degree_bound) {
    detail::require_oper_shape(d);
    const Prime p = d.prime();
    const std::uint32_t pv = p.value();
    const auto n = static_cast<std::size_t>(d.order());
    if (degree_bound < n * pv)
        throw Error(Errc::DegreeBoundTooSmall, "degree bound must be at least n*p = " + std::to_string(n * pv));
    const OreOperator dp = make_monic(to_partial(d));
    const std::uint32_t c = ordinary_point(d);

    const std::size_t n1 = (degree_bound + pv - 1) / pv * pv;
    const std::size_t top = n1 + 2 * pv;
    std::vector<std::vector<std::uint32_t>> series;
    series.reserve(n + 1);
    for (const auto& f : dp.coeffs()) series.push_back(f.shifted(c).series(top));

    const std::size_t k0 = detail::truncated_kernel_dim(series, n, n1, pv);
    const std::size_t k1 = detail::truncated_kernel_dim(series, n, n1 + pv, pv);
    const std::size_t k2 = detail::truncated_kernel_dim(series, n, n1 + 2 * pv, pv);
    if (k1 < k0 || k2 < k1 || k1 - k0 != k2 - k1)
        throw Error(Errc::DegreeBoundTooSmall, "truncated kernel dimension has not stabilized");
    return k1 - k0;
}

inline bool dormant_by_solution_rank(const OreOperator& d, std::size_t degree_bound) {
    if (d.order() >= static_cast<int>(d.prime().value()))
        throw Error(Errc::InvalidArgument, "solution-rank test needs order < p");
    return solution_rank(d, degree_bound) == static_cast<std::size_t>(d.order());
}

/// Precision for the one-argument test: (h + n + 1) blocks of p, where h is
/// the largest degree in the operator with denominators cleared. An ordinary
/// point can be a zero of the p-curvature to x^p-order at most h, so the
/// kernel growth has settled well before that.
inline std::size_t default_rank_bound(const OreOperator& d) {
    const OreOperator dp = make_monic(to_partial(d));
    Poly den = Poly::constant(d.prime(), 1);
    for (const auto& f : dp.coeffs()) den = den / poly_gcd(den, f.den()) * f.den();
    int h = den.degree();
    for (const auto& f : dp.coeffs())
        if (!f.is_zero()) h = std::max(h, f.num().degree() + den.degree() - f.den().degree());
    const auto n = static_cast<std::size_t>(d.order());
    return std::max<std::size_t>(n, static_cast<std::size_t>(h) + n + 1) * d.prime().value();
}

inline bool dormant_by_solution_rank(const OreOperator& d) { return dormant_by_solution_rank(d, default_rank_bound(d)); }

/// Constant-in-x part of the local theta form at the point. Throws
/// NotRegularSingular if some coefficient of that form has a pole there.
inline Poly indicial_polynomial(const OreOperator& d, ProjPoint point) {
    const OreOperator local = gauge_convert_at(d, point);
    std::vector<std::uint32_t> c;
    c.reserve(local.coeffs().size());
    for (const auto& f : local.coeffs()) {
        if (!f.is_regular_at(0))
            throw Error(Errc::NotRegularSingular, "irregular singularity at " + point.to_string());
        c.push_back(f(0));
    }
    return Poly(d.prime(), std::move(c));
}

/// Roots of an indicial polynomial as a set; repeated or non-F_p roots are
/// hard errors.
inline ExponentSet exponent_set_of(const Poly& indicial) {
    const Prime p = indicial.prime();
    if (indicial.degree() < 1) return ExponentSet(p);
    if (poly_gcd(indicial, indicial.derivative()).degree() > 0)
        throw Error(Errc::MultipleRoots, "indicial polynomial " + to_string(indicial, "t") + " has repeated roots");
    auto roots = poly_roots(indicial);
    if (roots.size() != static_cast<std::size_t>(indicial.degree()))
        throw Error(Errc::IndicialNotSplit, "indicial polynomial " + to_string(indicial, "t") + " does not split");
    std::vector<std::int64_t> e(roots.begin(), roots.end());
    return ExponentSet(p, std::move(e));
}

inline ExponentSet exponents_at(const OreOperator& d, ProjPoint point) {
    if (!dormant_by_division(d)) throw Error(Errc::NotDormant, to_string(d));
    return exponent_set_of(indicial_polynomial(d, point));
}

/// Finite poles of the partial-gauge coefficients of d that lie in F_p.
inline std::vector<std::uint32_t> finite_singular_points(const OreOperator& d) {
    const OreOperator dp = make_monic(to_partial(d));
    std::vector<std::uint32_t> pts;
    for (std::uint32_t c = 0; c < d.prime().value(); ++c) {
        for (const auto& f : dp.coeffs()) {
            if (!f.is_regular_at(c)) {
                pts.push_back(c);
                break;
            }
        }
    }
    return pts;
}

}  // namespace operlab
