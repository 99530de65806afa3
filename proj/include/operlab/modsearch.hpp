#pragma once

// Exhaustive search for dormant opers on the projective line with r marked
// points. The ansatz is
//     D = d^n + sum_{i=2}^{n} P_i(x) / W(x)^i * d^{n-i},   W = prod (x - t_j),
// with deg P_i <= i (r - 2), which is exactly the space of opers with poles of
// order <= i at the marked points (infinity included). Local exponents are
// fixed first: for each choice of radii the indicial polynomials and (if
// requested) self-duality are linear conditions on the coefficients of the P_i.
// What remains is an affine grid over F_p that is scanned for dormancy.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "operlab/dormancy.hpp"
#include "operlab/duality.hpp"
#include "operlab/radii.hpp"

namespace operlab {

struct SearchSpec {
    Prime prime;
    int n = 2;
    std::vector<ProjPoint> points;
    std::optional<RadiusTuple> radii;
    SelfDualityKind self_dual = SelfDualityKind::None;

    std::size_t r() const noexcept { return points.size(); }

    void validate() const {
        const std::uint32_t p = prime.value();
        if (n < 1 || n >= static_cast<int>(p)) throw Error(Errc::InvalidSpec, "need 1 <= n < p");
        if (points.size() < 3) throw Error(Errc::InvalidSpec, "need at least three marked points");
        std::vector<ProjPoint> sorted = points;
        std::sort(sorted.begin(), sorted.end());
        for (const auto& pt : sorted)
            if (!pt.infinite && pt.value >= p) throw Error(Errc::InvalidSpec, "marked point outside F_p");
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(Errc::InvalidSpec, "marked points must be distinct");
        if (!sorted.back().infinite) throw Error(Errc::InvalidSpec, "infinity must be a marked point");
        if (self_dual == SelfDualityKind::Orthogonal && n % 2 == 0)
            throw Error(Errc::InvalidSpec, "orthogonal self-duality needs odd order");
        if (self_dual == SelfDualityKind::Symplectic && n % 2 == 1)
            throw Error(Errc::InvalidSpec, "symplectic self-duality needs even order");
        if (radii) {
            if (radii->size() != points.size()) throw Error(Errc::InvalidSpec, "one radius per marked point");
            for (const auto& rho : *radii) {
                require_same_prime(prime, rho.prime());
                if (rho.size() != static_cast<std::size_t>(n))
                    throw Error(Errc::InvalidSpec, "radius " + rho.to_string() + " has the wrong size");
                if (self_dual != SelfDualityKind::None && !is_symmetric(rho))
                    throw Error(Errc::InconsistentRadiiFilter,
                                "radius " + rho.to_string() + " is not symmetric but self-duality is required");
            }
        }
    }
};

inline const char* table_kind(SelfDualityKind k) noexcept {
    switch (k) {
        case SelfDualityKind::Orthogonal: return "so";
        case SelfDualityKind::Symplectic: return "sp";
        default: return "sl";
    }
}

/// Sum of the pinned exponent representative at a point.
inline std::uint32_t exponent_sum_target(Prime p, int n, ProjPoint pt) {
    const auto t = static_cast<std::int64_t>(n) * (n - 1) / 2;
    return modp::reduce(pt.infinite ? -t : t, p.value());
}

class OperAnsatz {
   public:
    struct Param {
        int i;        // coefficient of d^{n-i}
        std::size_t deg;
    };

    OperAnsatz(Prime p, int n, const std::vector<ProjPoint>& points)
        : p_(p), n_(n), r_(points.size()), w_(Poly::constant(p, 1)) {
        for (const auto& pt : points)
            if (!pt.infinite) w_ *= Poly(p, {-static_cast<std::int64_t>(pt.value), 1});
        wpow_.push_back(Poly::constant(p, 1));
        for (int i = 1; i <= n; ++i) wpow_.push_back(wpow_.back() * w_);
        const std::size_t r = points.size();
        for (int i = 2; i <= n; ++i)
            for (std::size_t d = 0; d <= static_cast<std::size_t>(i) * (r - 2); ++d) params_.push_back({i, d});
    }

    Prime prime() const noexcept { return p_; }
    int order() const noexcept { return n_; }
    std::size_t num_points() const noexcept { return r_; }
    std::size_t dim() const noexcept { return params_.size(); }
    const std::vector<Param>& params() const noexcept { return params_; }
    const Poly& w() const noexcept { return w_; }
    const Poly& w_power(int i) const { return wpow_[static_cast<std::size_t>(i)]; }

    /// Numerator P_i for the parameter vector u.
    Poly numerator(const std::vector<std::uint32_t>& u, int i) const {
        std::vector<std::uint32_t> c;
        for (std::size_t k = 0; k < params_.size(); ++k) {
            if (params_[k].i != i) continue;
            if (c.size() <= params_[k].deg) c.resize(params_[k].deg + 1, 0);
            c[params_[k].deg] = u[k];
        }
        return Poly(p_, std::move(c));
    }

    OreOperator build(const std::vector<std::uint32_t>& u) const {
        std::vector<RationalFunction> c(static_cast<std::size_t>(n_) + 1, RationalFunction(p_));
        c[static_cast<std::size_t>(n_)] = RationalFunction::constant(p_, 1);
        for (int i = 2; i <= n_; ++i)
            c[static_cast<std::size_t>(n_ - i)] = RationalFunction(numerator(u, i), wpow_[static_cast<std::size_t>(i)]);
        return OreOperator(p_, Gauge::Partial, std::move(c));
    }

   private:
    Prime p_;
    int n_;
    std::size_t r_;
    Poly w_;
    std::vector<Poly> wpow_;
    std::vector<Param> params_;
};

namespace detail {

/// u0 + span(kernel) is the solution set of A u = b over F_p.
struct AffineSolution {
    std::vector<std::uint32_t> u0;
    std::vector<std::vector<std::uint32_t>> kernel;
};

inline std::optional<AffineSolution> solve_affine(std::vector<std::vector<std::uint32_t>> a, std::vector<std::uint32_t> b,
                                                  std::size_t dim, std::uint32_t p) {
    const std::size_t rows = a.size();
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < dim && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        std::swap(b[piv], b[rank]);
        const std::uint32_t inv = modp::inv(a[rank][col], p);
        for (auto& v : a[rank]) v = modp::mul(v, inv, p);
        b[rank] = modp::mul(b[rank], inv, p);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            const std::uint32_t f = a[r][col];
            for (std::size_t j = 0; j < dim; ++j) a[r][j] = modp::sub(a[r][j], modp::mul(f, a[rank][j], p), p);
            b[r] = modp::sub(b[r], modp::mul(f, b[rank], p), p);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (b[r] != 0) return std::nullopt;

    AffineSolution sol;
    sol.u0.assign(dim, 0);
    for (std::size_t r = 0; r < rank; ++r) sol.u0[pivot_col[r]] = b[r];
    std::vector<bool> is_pivot(dim, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    for (std::size_t f = 0; f < dim; ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::uint32_t> v(dim, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < rank; ++r) v[pivot_col[r]] = modp::neg(a[r][f], p);
        sol.kernel.push_back(std::move(v));
    }
    return sol;
}

/// Value at 0 and the linear part of an affine map F_p^dim -> F_p^m given as
/// a black box.
struct AffineMap {
    std::vector<std::uint32_t> offset;
    std::vector<std::vector<std::uint32_t>> cols;
};

inline AffineMap linearize(std::size_t dim, std::uint32_t p,
                           const std::function<std::vector<std::uint32_t>(const std::vector<std::uint32_t>&)>& f) {
    AffineMap m;
    std::vector<std::uint32_t> u(dim, 0);
    m.offset = f(u);
    std::vector<std::vector<std::uint32_t>> raw;
    std::size_t len = m.offset.size();
    for (std::size_t k = 0; k < dim; ++k) {
        u[k] = 1;
        raw.push_back(f(u));
        u[k] = 0;
        len = std::max(len, raw.back().size());
    }
    m.offset.resize(len, 0);
    for (auto& c : raw) {
        c.resize(len, 0);
        for (std::size_t j = 0; j < len; ++j) c[j] = modp::sub(c[j], m.offset[j], p);
        m.cols.push_back(std::move(c));
    }
    return m;
}

/// Coefficients of W^n (adj D - (-1)^n D), flattened with a fixed stride.
inline std::vector<std::uint32_t> self_duality_defect(const OperAnsatz& ans, const std::vector<std::uint32_t>& u) {
    const OreOperator d = ans.build(u);
    const OreOperator sign = ans.order() % 2 == 1 ? -d : d;
    const OreOperator diff = ore_adjoint(d) - sign;
    const RationalFunction wn(ans.w_power(ans.order()));
    const auto n = static_cast<std::size_t>(ans.order());
    const std::size_t stride = n * static_cast<std::size_t>(ans.w().degree()) + n * (ans.num_points() - 2) + 1;
    std::vector<std::uint32_t> out(stride * (n + 1), 0);
    for (std::size_t i = 0; i < diff.coeffs().size(); ++i) {
        const RationalFunction f = diff.coeffs()[i] * wn;
        if (!f.is_polynomial()) throw Error(Errc::Internal, "self-duality defect is not polynomial after clearing W^n");
        const auto& c = f.num().coeffs();
        if (c.size() > stride) throw Error(Errc::Internal, "self-duality defect exceeds its degree bound");
        for (std::size_t k = 0; k < c.size(); ++k) out[i * stride + k] = c[k];
    }
    return out;
}

inline std::vector<std::uint32_t> indicial_coeffs(const OperAnsatz& ans, ProjPoint pt,
                                                  const std::vector<std::uint32_t>& u) {
    const Poly ind = indicial_polynomial(ans.build(u), pt);
    std::vector<std::uint32_t> out(static_cast<std::size_t>(ans.order()), 0);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = ind.coeff(k);
    return out;
}

/// Product of (t - e) over the set, lowest coefficient first.
inline std::vector<std::uint32_t> root_poly(const ExponentSet& e) {
    const Prime p = e.prime();
    Poly f = Poly::constant(p, 1);
    for (auto v : e.elements()) f *= Poly(p, {-static_cast<std::int64_t>(v), 1});
    return f.coeffs();
}

inline std::vector<std::vector<std::uint32_t>> cartesian_indices(const std::vector<std::size_t>& sizes) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> idx(sizes.size(), 0);
    for (auto s : sizes)
        if (s == 0) return out;
    while (true) {
        out.push_back(idx);
        std::size_t k = sizes.size();
        while (k > 0) {
            --k;
            if (++idx[k] < sizes[k]) break;
            idx[k] = 0;
            if (k == 0) return out;
        }
        if (sizes.empty()) return out;
    }
}

/// Taylor data for the fast dormancy filter at one ordinary point: for every
/// ansatz parameter, the series of x^deg / W^i at c to precision p + 1.
struct PointSeries {
    std::uint32_t c;
    std::vector<std::vector<std::uint32_t>> per_param;
};

/// First row of the p-curvature at x = c: remainders of d^k modulo D as
/// truncated Taylor series, losing one order per derivative.
inline bool pcurvature_row_vanishes_at(const std::vector<std::vector<std::uint32_t>>& alpha, std::size_t n,
                                       std::uint32_t p) {
    const std::size_t prec = p + 1;
    std::vector<std::vector<std::uint32_t>> s(n, std::vector<std::uint32_t>(prec, 0)), t = s;
    s[0][0] = 1;
    std::size_t len = prec;
    for (std::uint32_t k = 0; k < p; ++k) {
        const std::size_t nl = len - 1;
        const std::vector<std::uint32_t> top = s[n - 1];
        for (std::size_t i = 0; i < n; ++i) {
            auto& out = t[i];
            for (std::size_t m = 0; m < nl; ++m) {
                std::uint64_t v = static_cast<std::uint64_t>(s[i][m + 1]) * ((m + 1) % p);
                if (i >= 1) v += s[i - 1][m];
                const auto& a = alpha[i];
                std::uint64_t conv = 0;
                for (std::size_t j = 0; j <= m; ++j) conv += static_cast<std::uint64_t>(top[j]) * a[m - j];
                out[m] = static_cast<std::uint32_t>((v % p + p - conv % p) % p);
            }
        }
        std::swap(s, t);
        len = nl;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (s[i][0] != 0) return false;
    return true;
}

/// Polynomial in x with coefficients in F_p[s]; index = power of x.
using BiPoly = std::vector<Poly>;

inline void bi_trim(BiPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline BiPoly bi_add(BiPoly a, const BiPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Poly(b.front().prime()));
    for (std::size_t k = 0; k < b.size(); ++k) a[k] = a[k] + b[k];
    bi_trim(a);
    return a;
}

/// a(x, s) * (f0(x) + s f1(x)).
inline BiPoly bi_mul(const BiPoly& a, const Poly& f0, const Poly& f1) {
    if (a.empty()) return a;
    const Prime p = a.front().prime();
    const std::size_t len = a.size() + static_cast<std::size_t>(std::max(f0.degree(), f1.degree()));
    BiPoly out(len, Poly(p));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        const Poly up = a[i].shifted_up(1);
        for (std::size_t j = 0; j < f0.coeffs().size(); ++j)
            if (f0.coeffs()[j]) out[i + j] = out[i + j] + a[i].scaled(f0.coeffs()[j]);
        for (std::size_t j = 0; j < f1.coeffs().size(); ++j)
            if (f1.coeffs()[j]) out[i + j] = out[i + j] + up.scaled(f1.coeffs()[j]);
    }
    bi_trim(out);
    return out;
}

inline BiPoly bi_derivative(const BiPoly& a) {
    if (a.size() <= 1) return {};
    const std::uint32_t p = a.front().modulus();
    BiPoly out(a.size() - 1, Poly(a.front().prime()));
    for (std::size_t k = 1; k < a.size(); ++k) out[k - 1] = a[k].scaled(static_cast<std::uint32_t>(k % p));
    bi_trim(out);
    return out;
}

/// The dormant locus on the line u0 + s v, s over the algebraic closure of
/// F_p: it is cut out by g(s), the gcd of all coefficients of the remainder
/// of d^p. Reports the distinct roots, the length deg g and the F_p-rational
/// roots. Runs the remainder recursion for d^k modulo D with denominators
/// cleared: with s_k = sigma_k / W^{nk} and alpha_i = Q_i / W^n,
///   sigma_{k+1,i} = (sigma_{k,i}' W - nk W' sigma_{k,i}) W^{n-1}
///                   + sigma_{k,i-1} W^n - sigma_{k,n-1} Q_i.
struct LineCount {
    std::size_t distinct;
    std::size_t length;
    std::size_t rational;
};

inline LineCount dormant_points_on_line(const OperAnsatz& ans, const std::vector<std::uint32_t>& u0,
                                        const std::vector<std::uint32_t>& v) {
    const Prime p = ans.prime();
    const std::uint32_t pv = p.value();
    const auto n = static_cast<std::size_t>(ans.order());
    const Poly& w = ans.w();
    const Poly dw = w.derivative();
    const Poly zero(p);
    std::vector<Poly> q0(n, zero), q1(n, zero);
    for (std::size_t i = 0; i + 2 <= n; ++i) {
        const int idx = static_cast<int>(n - i);
        q0[i] = ans.numerator(u0, idx) * ans.w_power(static_cast<int>(i));
        q1[i] = ans.numerator(v, idx) * ans.w_power(static_cast<int>(i));
    }
    const Poly& wn = ans.w_power(static_cast<int>(n));
    const Poly& wn1 = ans.w_power(static_cast<int>(n) - 1);

    std::vector<BiPoly> sigma(n);
    sigma[0] = {Poly::constant(p, 1)};
    for (std::uint32_t k = 0; k < pv; ++k) {
        const std::uint32_t nk = static_cast<std::uint32_t>((n * k) % pv);
        std::vector<BiPoly> next(n);
        for (std::size_t i = 0; i < n; ++i) {
            BiPoly t = bi_mul(bi_derivative(sigma[i]), w, zero);
            if (nk) t = bi_add(std::move(t), bi_mul(sigma[i], dw.scaled(modp::neg(nk, pv)), zero));
            t = bi_mul(t, wn1, zero);
            if (i >= 1) t = bi_add(std::move(t), bi_mul(sigma[i - 1], wn, zero));
            if (!q0[i].is_zero() || !q1[i].is_zero())
                t = bi_add(std::move(t), bi_mul(sigma[n - 1], -q0[i], -q1[i]));
            next[i] = std::move(t);
        }
        sigma = std::move(next);
    }
    Poly g(p);
    for (const auto& row : sigma)
        for (const auto& c : row) g = poly_gcd(g, c);
    if (g.is_zero()) throw Error(Errc::Internal, "dormant locus contains a whole line of the ansatz");
    const Poly rad = poly_radical(g);
    return {static_cast<std::size_t>(rad.degree()), static_cast<std::size_t>(g.degree()), poly_roots(rad).size()};
}

}  // namespace detail

struct FoundOper {
    OreOperator op;
    std::vector<ExponentSet> exponents;  // pinned representatives, one per marked point
    RadiusTuple radii;
};

struct SearchOptions {
    std::uint64_t budget = 100000000;
    unsigned workers = 1;
    bool closure_counts = false;  // count one-parameter cells over the algebraic closure, with multiplicity
    std::function<void(const std::string&)> log;
};

struct SearchResult {
    std::vector<FoundOper> operators;                          // F_p-rational, in grid order
    std::vector<std::pair<RadiusTuple, std::uint64_t>> counts;  // every scanned radii tuple
    bool closure = true;  // counts are over the algebraic closure, not just F_p
    std::uint64_t candidates = 0;
};

inline SearchResult run_search(const SearchSpec& spec, const SearchOptions& opt = {}) {
    spec.validate();
    const Prime p = spec.prime;
    const std::uint32_t pv = p.value();
    const auto n = static_cast<std::size_t>(spec.n);
    const std::size_t r = spec.r();
    const OperAnsatz ans(p, spec.n, spec.points);
    const std::size_t dim = ans.dim();
    auto log = [&](const std::string& s) {
        if (opt.log) opt.log(s);
    };

    // Linear constraints shared by every radii choice.
    std::vector<std::vector<std::uint32_t>> base_rows;
    std::vector<std::uint32_t> base_rhs;
    if (spec.self_dual != SelfDualityKind::None) {
        const auto m = detail::linearize(dim, pv, [&](const auto& u) { return detail::self_duality_defect(ans, u); });
        for (std::size_t j = 0; j < m.offset.size(); ++j) {
            std::vector<std::uint32_t> row(dim);
            bool nz = m.offset[j] != 0;
            for (std::size_t k = 0; k < dim; ++k) {
                row[k] = m.cols[k][j];
                nz = nz || row[k] != 0;
            }
            if (!nz) continue;
            base_rows.push_back(std::move(row));
            base_rhs.push_back(modp::neg(m.offset[j], pv));
        }
    }
    std::vector<detail::AffineMap> ind_maps;
    for (const auto& pt : spec.points)
        ind_maps.push_back(detail::linearize(dim, pv, [&](const auto& u) { return detail::indicial_coeffs(ans, pt, u); }));

    // Candidate radii per point.
    std::vector<std::vector<RadiusClass>> choices;
    for (std::size_t j = 0; j < r; ++j) {
        if (spec.radii) choices.push_back({(*spec.radii)[j]});
        else choices.push_back(enumerate_classes(p, n, spec.self_dual != SelfDualityKind::None));
    }
    std::vector<std::size_t> sizes;
    for (const auto& c : choices) sizes.push_back(c.size());

    struct Cell {
        RadiusTuple radii;
        std::vector<ExponentSet> exps;
        detail::AffineSolution sol;
        std::uint64_t count;
        std::uint64_t first;
        std::size_t slot;  // index into result.counts
    };
    std::vector<Cell> cells;
    SearchResult result;
    std::uint64_t total = 0;
    for (const auto& idx : detail::cartesian_indices(sizes)) {
        RadiusTuple radii;
        std::vector<ExponentSet> exps;
        auto rows = base_rows;
        auto rhs = base_rhs;
        for (std::size_t j = 0; j < r; ++j) {
            radii.push_back(choices[j][idx[j]]);
            exps.push_back(pinned_representative(radii.back(), exponent_sum_target(p, spec.n, spec.points[j])));
            const auto target = detail::root_poly(exps.back());
            const auto& m = ind_maps[j];
            for (std::size_t k = 0; k < n; ++k) {
                std::vector<std::uint32_t> row(dim);
                for (std::size_t q = 0; q < dim; ++q) row[q] = m.cols[q][k];
                rows.push_back(std::move(row));
                rhs.push_back(modp::sub(target[k], m.offset[k], pv));
            }
        }
        auto sol = detail::solve_affine(std::move(rows), std::move(rhs), dim, pv);
        if (!sol) {
            result.counts.emplace_back(std::move(radii), 0);
            continue;
        }
        std::uint64_t cnt = 1;
        for (std::size_t k = 0; k < sol->kernel.size(); ++k) {
            if (cnt > std::numeric_limits<std::uint64_t>::max() / pv) {
                cnt = std::numeric_limits<std::uint64_t>::max();
                break;
            }
            cnt *= pv;
        }
        if (cnt > opt.budget || total > opt.budget - cnt)
            throw Error(Errc::BudgetExceeded, "search needs more than " + std::to_string(opt.budget) + " candidates");
        result.counts.emplace_back(radii, 0);
        cells.push_back({std::move(radii), std::move(exps), std::move(*sol), cnt, total, result.counts.size() - 1});
        total += cnt;
    }
    result.candidates = total;
    log("search: " + std::to_string(cells.size()) + " radii cells, " + std::to_string(total) + " candidates");

    // Taylor data at the ordinary points of F_p.
    std::vector<detail::PointSeries> pts;
    for (std::uint32_t c = 0; c < pv; ++c) {
        if (ans.w()(c) == 0) continue;
        detail::PointSeries ps{c, {}};
        for (const auto& prm : ans.params())
            ps.per_param.push_back(
                RationalFunction(Poly::monomial(p, 1, prm.deg), ans.w_power(prm.i)).shifted(c).series(pv + 1));
        pts.push_back(std::move(ps));
    }

    auto params_of = [&](const Cell& cell, std::uint64_t local) {
        std::vector<std::uint32_t> u = cell.sol.u0;
        for (const auto& kv : cell.sol.kernel) {
            const auto coord = static_cast<std::uint32_t>(local % pv);
            local /= pv;
            if (coord == 0) continue;
            for (std::size_t q = 0; q < dim; ++q) u[q] = modp::add(u[q], modp::mul(coord, kv[q], pv), pv);
        }
        return u;
    };

    auto passes_filter = [&](const std::vector<std::uint32_t>& u) {
        std::vector<std::vector<std::uint32_t>> alpha(n, std::vector<std::uint32_t>(pv + 1, 0));
        for (const auto& ps : pts) {
            for (auto& a : alpha) std::fill(a.begin(), a.end(), 0);
            for (std::size_t k = 0; k < dim; ++k) {
                if (u[k] == 0) continue;
                auto& a = alpha[n - static_cast<std::size_t>(ans.params()[k].i)];
                const auto& s = ps.per_param[k];
                for (std::size_t m = 0; m <= pv; ++m) a[m] = modp::add(a[m], modp::mul(u[k], s[m], pv), pv);
            }
            if (!detail::pcurvature_row_vanishes_at(alpha, n, pv)) return false;
        }
        return true;
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(opt.workers, static_cast<unsigned>(std::max<std::uint64_t>(total, 1))));
    std::vector<std::vector<std::uint64_t>> hits(workers);
    auto work = [&](unsigned w) {
        const std::uint64_t lo = total * w / workers, hi = total * (w + 1) / workers;
        std::size_t ci = 0;
        for (std::uint64_t g = lo; g < hi; ++g) {
            while (cells[ci].first + cells[ci].count <= g) ++ci;
            if (passes_filter(params_of(cells[ci], g - cells[ci].first))) hits[w].push_back(g);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    std::size_t ci = 0;
    for (const auto& hv : hits) {
        for (auto g : hv) {
            while (cells[ci].first + cells[ci].count <= g) ++ci;
            const Cell& cell = cells[ci];
            OreOperator op = ans.build(params_of(cell, g - cell.first));
            if (!dormant_by_division(op)) continue;
            if (!dormant_by_pcurvature(op).flag)
                throw Error(Errc::Internal, "division and p-curvature disagree on " + to_string(op));
            if (spec.self_dual != SelfDualityKind::None && self_duality_kind(op) != spec.self_dual)
                throw Error(Errc::Internal, "self-duality constraint not honoured by " + to_string(op));
            result.operators.push_back({std::move(op), cell.exps, cell.radii});
            ++result.counts[cell.slot].second;
        }
    }
    for (const auto& cell : cells) {
        const std::size_t k = cell.sol.kernel.size();
        if (k == 0) continue;
        if (k > 1 || !opt.closure_counts) {
            result.closure = false;
            continue;
        }
        const auto lc = detail::dormant_points_on_line(ans, cell.sol.u0, cell.sol.kernel[0]);
        if (lc.rational != result.counts[cell.slot].second)
            throw Error(Errc::Internal, "grid scan and line count disagree at " + radii_key(cell.radii));
        result.counts[cell.slot].second = lc.length;
    }
    log("search: " + std::to_string(result.operators.size()) + " dormant operators");
    return result;
}

inline std::vector<FoundOper> enumerate_dormant(const SearchSpec& spec, const SearchOptions& opt = {}) {
    return run_search(spec, opt).operators;
}

/// Counts keyed by the ordered tuple of radii over the marked points; every
/// scanned tuple appears, zeros included.
struct DegreeTable {
    Prime prime;
    int n = 0;
    std::string kind = "sl";
    std::size_t r = 0;
    bool closure = true;
    std::map<std::string, std::uint64_t> entries;

    std::uint64_t at(const RadiusTuple& rho) const {
        auto it = entries.find(radii_key(rho));
        if (it == entries.end()) throw Error(Errc::IncompleteTable, "no entry for " + radii_key(rho));
        return it->second;
    }
};

inline DegreeTable table_from(const SearchSpec& spec, const SearchResult& res) {
    DegreeTable t{spec.prime, spec.n, table_kind(spec.self_dual), spec.r(), res.closure, {}};
    for (const auto& [rho, c] : res.counts) t.entries[radii_key(rho)] = c;
    return t;
}

inline DegreeTable count_by_radii(const SearchSpec& spec, const SearchOptions& opt = {}) {
    if (spec.radii) throw Error(Errc::InvalidSpec, "count_by_radii scans all radii; leave the filter unset");
    SearchOptions o = opt;
    o.closure_counts = true;
    return table_from(spec, run_search(spec, o));
}

/// 0, 1, ..., r-2, infinity.
inline std::vector<ProjPoint> standard_points(Prime p, std::size_t r) {
    if (r < 3 || r - 1 > p.value()) throw Error(Errc::InvalidSpec, "need 3 <= r <= p + 1");
    std::vector<ProjPoint> pts;
    for (std::size_t j = 0; j + 1 < r; ++j) pts.push_back(ProjPoint::at(static_cast<std::uint32_t>(j)));
    pts.push_back(ProjPoint::infinity());
    return pts;
}

struct BcReport {
    bool bijection = false;
    std::size_t count_orthogonal = 0;
    std::size_t count_symplectic = 0;
    std::map<std::string, std::pair<std::size_t, std::size_t>> per_radii;  // orthogonal key -> (so, sp at tri-key)
    std::vector<std::string> mismatches;
    std::vector<FoundOper> orthogonal;
    std::vector<FoundOper> symplectic;
};

inline BcReport verify_bc_bijection(Prime p, int ell, int m, std::size_t r, const SearchOptions& opt = {}) {
    if (ell < 1 || m < 1 || static_cast<std::int64_t>(p.value()) - 1 != 2 * (static_cast<std::int64_t>(ell) + m))
        throw Error(Errc::ArityMismatch, "need p - 1 = 2 (ell + m) with ell, m >= 1");
    const auto pts = standard_points(p, r);
    const SearchSpec so{p, 2 * ell + 1, pts, std::nullopt, SelfDualityKind::Orthogonal};
    const SearchSpec sp{p, 2 * m, pts, std::nullopt, SelfDualityKind::Symplectic};
    BcReport rep;
    rep.orthogonal = enumerate_dormant(so, opt);
    rep.symplectic = enumerate_dormant(sp, opt);
    rep.count_orthogonal = rep.orthogonal.size();
    rep.count_symplectic = rep.symplectic.size();

    std::map<std::string, std::size_t> sp_count;
    for (const auto& f : rep.symplectic) ++sp_count[radii_key(f.radii)];
    const auto classes = enumerate_classes(p, so.n, true);
    for (const auto& idx : detail::cartesian_indices(std::vector<std::size_t>(r, classes.size()))) {
        RadiusTuple t;
        for (auto i : idx) t.push_back(classes[i]);
        RadiusTuple tri;
        for (const auto& c : t) tri.push_back(involution_tri(c));
        rep.per_radii[radii_key(t)] = {0, sp_count[radii_key(tri)]};
    }

    std::vector<bool> hit(rep.symplectic.size(), false);
    bool ok = true;
    for (const auto& f : rep.orthogonal) {
        RadiusTuple tri;
        for (const auto& c : f.radii) tri.push_back(involution_tri(c));
        ++rep.per_radii[radii_key(f.radii)].first;
        const DualPair pair = bc_dualize(f.op);
        auto it = std::find_if(rep.symplectic.begin(), rep.symplectic.end(),
                               [&](const FoundOper& g) { return g.op == pair.d_dual; });
        if (it == rep.symplectic.end()) {
            ok = false;
            rep.mismatches.push_back("dual of " + to_string(f.op) + " not found among symplectic operators");
            continue;
        }
        const auto k = static_cast<std::size_t>(it - rep.symplectic.begin());
        if (hit[k]) {
            ok = false;
            rep.mismatches.push_back("two orthogonal operators share the dual " + to_string(it->op));
        }
        hit[k] = true;
        if (it->radii != tri) {
            ok = false;
            rep.mismatches.push_back("radii of " + to_string(it->op) + " are " + radii_key(it->radii) +
                                     ", expected " + radii_key(tri));
        }
    }
    for (std::size_t k = 0; k < hit.size(); ++k) {
        if (!hit[k]) {
            ok = false;
            rep.mismatches.push_back("symplectic operator " + to_string(rep.symplectic[k].op) + " is not a dual");
        }
    }
    for (const auto& [key, c] : rep.per_radii) {
        if (c.first != c.second) {
            ok = false;
            rep.mismatches.push_back("count mismatch at " + key);
        }
    }
    rep.bijection = ok;
    return rep;
}

}  // namespace operlab
