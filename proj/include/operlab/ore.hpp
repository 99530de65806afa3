#pragma once

// Skew algebra of differential operators over F_p(x). Two generators are
// supported: the derivation d = d/dx (Gauge::Partial) with d f = f d + f', and
// the Euler operator t = x d/dx (Gauge::Theta) with t f = f t + x f'.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "operlab/exactalg.hpp"

namespace operlab {

enum class Gauge { Partial, Theta };

inline const char* gauge_name(Gauge g) noexcept { return g == Gauge::Partial ? "partial" : "theta"; }

/// A point of P^1(F_p).
struct ProjPoint {
    bool infinite = false;
    std::uint32_t value = 0;

    static ProjPoint at(std::uint32_t v) { return {false, v}; }
    static ProjPoint infinity() { return {true, 0}; }

    auto operator<=>(const ProjPoint&) const = default;

    std::string to_string() const { return infinite ? "inf" : std::to_string(value); }
};

class OreOperator {
   public:
    OreOperator(Prime p, Gauge g) : p_(p), gauge_(g) {}
    OreOperator(Prime p, Gauge g, std::vector<RationalFunction> coeffs)
        : p_(p), gauge_(g), c_(std::move(coeffs)) {
        for (const auto& c : c_) require_same_prime(p_, c.prime());
        trim();
    }

    /// Operator with constant coefficients, lowest power first.
    static OreOperator from_constants(Prime p, Gauge g, std::initializer_list<std::int64_t> coeffs) {
        std::vector<RationalFunction> c;
        for (auto v : coeffs) c.push_back(RationalFunction::constant(p, v));
        return OreOperator(p, g, std::move(c));
    }
    static OreOperator scalar(const RationalFunction& f, Gauge g) {
        return OreOperator(f.prime(), g, std::vector<RationalFunction>{f});
    }
    static OreOperator generator(Prime p, Gauge g) { return from_constants(p, g, {0, 1}); }
    static OreOperator generator_power(Prime p, Gauge g, std::size_t k) {
        std::vector<RationalFunction> c(k + 1, RationalFunction(p));
        c[k] = RationalFunction::constant(p, 1);
        return OreOperator(p, g, std::move(c));
    }

    Prime prime() const noexcept { return p_; }
    Gauge gauge() const noexcept { return gauge_; }
    int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<RationalFunction>& coeffs() const noexcept { return c_; }
    RationalFunction coeff(std::size_t i) const { return i < c_.size() ? c_[i] : RationalFunction(p_); }
    const RationalFunction& leading() const { return c_.back(); }
    bool is_monic() const noexcept { return !c_.empty() && c_.back().is_one(); }
    bool has_constant_coefficients() const noexcept {
        for (const auto& c : c_)
            if (!c.is_constant()) return false;
        return true;
    }

    bool operator==(const OreOperator&) const = default;

   private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    Prime p_;
    Gauge gauge_;
    std::vector<RationalFunction> c_;
};

inline void require_compatible(const OreOperator& a, const OreOperator& b) {
    require_same_prime(a.prime(), b.prime());
    if (a.gauge() != b.gauge())
        throw Error(Errc::GaugeMismatch, std::string(gauge_name(a.gauge())) + " vs " + gauge_name(b.gauge()));
}

/// The derivation attached to the gauge: f' or x f'.
inline RationalFunction derive(const RationalFunction& f, Gauge g) {
    RationalFunction d = f.derivative();
    if (g == Gauge::Theta) return RationalFunction::x(f.prime()) * d;
    return d;
}

inline OreOperator operator+(const OreOperator& a, const OreOperator& b) {
    require_compatible(a, b);
    std::vector<RationalFunction> c(std::max(a.coeffs().size(), b.coeffs().size()), RationalFunction(a.prime()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return OreOperator(a.prime(), a.gauge(), std::move(c));
}
inline OreOperator operator-(const OreOperator& a) {
    std::vector<RationalFunction> c;
    c.reserve(a.coeffs().size());
    for (const auto& f : a.coeffs()) c.push_back(-f);
    return OreOperator(a.prime(), a.gauge(), std::move(c));
}
inline OreOperator operator-(const OreOperator& a, const OreOperator& b) { return a + (-b); }

/// f * a (left multiplication by a function).
inline OreOperator scale_left(const RationalFunction& f, const OreOperator& a) {
    std::vector<RationalFunction> c;
    c.reserve(a.coeffs().size());
    for (const auto& ai : a.coeffs()) c.push_back(f * ai);
    return OreOperator(a.prime(), a.gauge(), std::move(c));
}

/// gen * a.
inline OreOperator times_generator(const OreOperator& a) {
    if (a.is_zero()) return a;
    const auto& ac = a.coeffs();
    std::vector<RationalFunction> c(ac.size() + 1, RationalFunction(a.prime()));
    for (std::size_t i = 0; i < ac.size(); ++i) {
        c[i] += derive(ac[i], a.gauge());
        c[i + 1] += ac[i];
    }
    return OreOperator(a.prime(), a.gauge(), std::move(c));
}

inline OreOperator ore_mul(const OreOperator& a, const OreOperator& b) {
    require_compatible(a, b);
    OreOperator result(a.prime(), a.gauge());
    OreOperator shifted = b;  // gen^i * b
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (!a.coeffs()[i].is_zero()) result = result + scale_left(a.coeffs()[i], shifted);
        if (i + 1 < a.coeffs().size()) shifted = times_generator(shifted);
    }
    return result;
}

inline OreOperator operator*(const OreOperator& a, const OreOperator& b) { return ore_mul(a, b); }

struct OreDivMod {
    OreOperator quot;
    OreOperator rem;
};

/// a = quot * b + rem with order(rem) < order(b).
inline OreDivMod ore_divmod_right(const OreOperator& a, const OreOperator& b) {
    require_compatible(a, b);
    if (b.is_zero()) throw Error(Errc::ZeroDivisor, "right division by the zero operator");
    const int nb = b.order();
    OreOperator rem = a;
    if (rem.order() < nb) return {OreOperator(a.prime(), a.gauge()), rem};

    const std::size_t span = static_cast<std::size_t>(rem.order() - nb);
    std::vector<OreOperator> shifted{b};  // shifted[k] = gen^k * b
    for (std::size_t k = 1; k <= span; ++k) shifted.push_back(times_generator(shifted.back()));

    const RationalFunction inv_lead = b.leading().inverse();
    std::vector<RationalFunction> q(span + 1, RationalFunction(a.prime()));
    while (!rem.is_zero() && rem.order() >= nb) {
        const auto k = static_cast<std::size_t>(rem.order() - nb);
        RationalFunction c = rem.leading() * inv_lead;
        q[k] = c;
        rem = rem - scale_left(c, shifted[k]);
    }
    return {OreOperator(a.prime(), a.gauge(), std::move(q)), rem};
}

/// Formal adjoint: sum a_i gen^i  |->  sum (-gen)^i a_i. With d* = -d in the
/// partial gauge and t* = -t in the theta gauge the formula is the same.
inline OreOperator ore_adjoint(const OreOperator& a) {
    if (a.is_zero()) return a;
    const auto& c = a.coeffs();
    OreOperator r = OreOperator::scalar(c.back(), a.gauge());
    for (std::size_t i = c.size() - 1; i-- > 0;)
        r = -times_generator(r) + OreOperator::scalar(c[i], a.gauge());
    return r;
}

inline OreOperator make_monic(const OreOperator& a) {
    if (a.is_zero()) throw Error(Errc::ZeroDivisor, "cannot normalize the zero operator");
    if (a.is_monic()) return a;
    return scale_left(a.leading().inverse(), a);
}

/// g^{-1} * a * g.
inline OreOperator gauge_twist(const OreOperator& a, const RationalFunction& g) {
    if (g.is_zero()) throw Error(Errc::ZeroTwist, "twist by the zero function");
    return scale_left(g.inverse(), ore_mul(a, OreOperator::scalar(g, a.gauge())));
}

namespace detail {

/// Coefficients in t of t(t-1)...(t-k+1) (sign = -1) or t(t+1)...(t+k-1) (sign = +1).
inline Poly factorial_poly(Prime p, std::size_t k, int sign) {
    Poly r = Poly::constant(p, 1);
    for (std::size_t j = 0; j < k; ++j) r *= Poly(p, {sign * static_cast<std::int64_t>(j), 1});
    return r;
}

}  // namespace detail

/// Rewrites a theta-gauge operator in the partial gauge (t = x d), monic.
inline OreOperator to_partial(const OreOperator& a) {
    if (a.gauge() == Gauge::Partial) return a;
    const Prime p = a.prime();
    const OreOperator t = OreOperator(p, Gauge::Partial, {RationalFunction(p), RationalFunction::x(p)});
    OreOperator result(p, Gauge::Partial);
    OreOperator power = OreOperator::from_constants(p, Gauge::Partial, {1});
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        result = result + scale_left(a.coeffs()[i], power);
        if (i + 1 < a.coeffs().size()) power = ore_mul(t, power);
    }
    return make_monic(result);
}

/// Local theta form at a point: substitute x -> x + center (or x -> 1/x at
/// infinity), multiply by x^n and rewrite x^k d^k = t(t-1)...(t-k+1). The
/// result is a monic theta-gauge operator in the local coordinate.
inline OreOperator gauge_convert_at(const OreOperator& a, ProjPoint center) {
    const OreOperator src = make_monic(to_partial(a));
    const Prime p = a.prime();
    const auto n = static_cast<std::size_t>(src.order());
    std::vector<RationalFunction> out(n + 1, RationalFunction(p));

    for (std::size_t i = 0; i <= n; ++i) {
        const RationalFunction& ai = src.coeffs()[i];
        if (ai.is_zero()) continue;
        RationalFunction local(p);
        Poly fact(p);
        if (!center.infinite) {
            // a_i(x + c) x^{n-i}
            local = ai.shifted(center.value) * RationalFunction(Poly::monomial(p, 1, n - i));
            fact = detail::factorial_poly(p, i, -1);
        } else {
            // x = 1/y, x d/dx = -t_y:  a_i(1/y) y^{i-n} (-1)^i t(t+1)...(t+i-1)
            local = ai.inverted_variable() /
                    RationalFunction(Poly::monomial(p, 1, n - i));
            fact = detail::factorial_poly(p, i, +1);
            if ((i + n) % 2 == 1) fact = -fact;  // (-1)^i, times (-1)^n to keep it monic
        }
        for (std::size_t k = 0; k <= i; ++k) {
            if (fact.coeff(k) == 0) continue;
            out[k] += local.scaled(fact.coeff(k));
        }
    }
    return OreOperator(p, Gauge::Theta, std::move(out));
}

inline std::string to_string(const OreOperator& a) {
    if (a.is_zero()) return "0";
    const char* g = a.gauge() == Gauge::Partial ? "D" : "T";
    std::string s;
    for (int i = a.order(); i >= 0; --i) {
        const RationalFunction& c = a.coeffs()[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        if (!s.empty()) s += " + ";
        const bool unit = c.is_one();
        if (!unit || i == 0) s += c.is_polynomial() && c.num().degree() <= 0 ? to_string(c) : "[" + to_string(c) + "]";
        if (i >= 1) s += g;
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
}

}  // namespace operlab
