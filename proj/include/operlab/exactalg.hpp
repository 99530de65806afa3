#pragma once

// Prime field F_p, dense univariate polynomials over F_p and reduced rational
// functions. Everything is an immutable value type.

#include <algorithm>
#include <climits>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "operlab/error.hpp"

namespace operlab {

namespace modp {

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept {
    std::uint32_t s = a + b;  // p < 2^31, no wrap
    return s >= p ? s - p : s;
}
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept {
    return a >= b ? a - b : a + (p - b);
}
inline std::uint32_t neg(std::uint32_t a, std::uint32_t p) noexcept { return a == 0 ? 0 : p - a; }
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}
inline std::uint32_t reduce(std::int64_t v, std::uint32_t p) noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}
inline std::uint32_t pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) noexcept {
    std::uint32_t r = 1 % p;
    while (e != 0) {
        if (e & 1U) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1U;
    }
    return r;
}
inline std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
    if (a % p == 0) throw Error(Errc::ZeroInverse, "inverse of zero in F_" + std::to_string(p));
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = a % p;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    return reduce(t, p);
}

}  // namespace modp

/// An odd prime 3 <= p < 2^31, checked on construction.
class Prime {
   public:
    explicit Prime(std::int64_t p) : p_(checked(p)) {}

    std::uint32_t value() const noexcept { return p_; }
    bool operator==(const Prime&) const = default;

   private:
    static std::uint32_t checked(std::int64_t p) {
        if (p < 3 || p >= (std::int64_t{1} << 31) || p % 2 == 0)
            throw Error(Errc::NotPrime, std::to_string(p) + " is not an odd prime below 2^31");
        for (std::int64_t d = 3; d * d <= p; d += 2)
            if (p % d == 0) throw Error(Errc::NotPrime, std::to_string(p) + " is composite");
        return static_cast<std::uint32_t>(p);
    }

    std::uint32_t p_;
};

inline void require_same_prime(Prime a, Prime b) {
    if (!(a == b))
        throw Error(Errc::PrimeMismatch,
                    "F_" + std::to_string(a.value()) + " vs F_" + std::to_string(b.value()));
}

class Fp {
   public:
    Fp(Prime p, std::int64_t v) : p_(p), v_(modp::reduce(v, p.value())) {}

    static Fp zero(Prime p) { return Fp(p, 0); }
    static Fp one(Prime p) { return Fp(p, 1); }

    std::uint32_t value() const noexcept { return v_; }
    Prime prime() const noexcept { return p_; }
    bool is_zero() const noexcept { return v_ == 0; }

    Fp operator-() const { return raw(p_, modp::neg(v_, p_.value())); }
    friend Fp operator+(const Fp& a, const Fp& b) {
        require_same_prime(a.p_, b.p_);
        return raw(a.p_, modp::add(a.v_, b.v_, a.p_.value()));
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        require_same_prime(a.p_, b.p_);
        return raw(a.p_, modp::sub(a.v_, b.v_, a.p_.value()));
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        require_same_prime(a.p_, b.p_);
        return raw(a.p_, modp::mul(a.v_, b.v_, a.p_.value()));
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

    Fp inverse() const { return raw(p_, modp::inv(v_, p_.value())); }
    Fp pow(std::uint64_t e) const { return raw(p_, modp::pow(v_, e, p_.value())); }

    bool operator==(const Fp&) const = default;

   private:
    static Fp raw(Prime p, std::uint32_t v) {
        Fp r(p, 0);
        r.v_ = v;
        return r;
    }

    Prime p_;
    std::uint32_t v_;
};

inline Fp fp_inv(const Fp& a) { return a.inverse(); }

/// Dense polynomial over F_p, lowest degree first, no trailing zeros.
/// The zero polynomial has an empty coefficient array and degree -1.
class Poly {
   public:
    explicit Poly(Prime p) : p_(p) {}
    Poly(Prime p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
        for (auto& c : c_) c %= p_.value();
        trim();
    }
    Poly(Prime p, std::initializer_list<std::int64_t> coeffs) : p_(p) {
        c_.reserve(coeffs.size());
        for (auto c : coeffs) c_.push_back(modp::reduce(c, p_.value()));
        trim();
    }

    static Poly from_signed(Prime p, std::span<const std::int64_t> coeffs) {
        std::vector<std::uint32_t> c;
        c.reserve(coeffs.size());
        for (auto v : coeffs) c.push_back(modp::reduce(v, p.value()));
        return Poly(p, std::move(c));
    }
    static Poly constant(Prime p, std::int64_t c) { return Poly(p, {c}); }
    static Poly x(Prime p) { return Poly(p, {0, 1}); }
    static Poly monomial(Prime p, std::int64_t c, std::size_t k) {
        std::vector<std::uint32_t> v(k + 1, 0);
        v[k] = modp::reduce(c, p.value());
        return Poly(p, std::move(v));
    }

    Prime prime() const noexcept { return p_; }
    std::uint32_t modulus() const noexcept { return p_.value(); }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    std::uint32_t coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    std::uint32_t lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
    const std::vector<std::uint32_t>& coeffs() const noexcept { return c_; }

    std::uint32_t operator()(std::uint32_t at) const noexcept {
        std::uint32_t r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            r = modp::add(modp::mul(r, at, modulus()), *it, modulus());
        return r;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.c_) c = modp::neg(c, modulus());
        return r;
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        require_same_prime(a.p_, b.p_);
        const std::uint32_t p = a.modulus();
        Poly r(a.p_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = modp::add(a.coeff(i), b.coeff(i), p);
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        require_same_prime(a.p_, b.p_);
        const std::uint32_t p = a.modulus();
        Poly r(a.p_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = modp::sub(a.coeff(i), b.coeff(i), p);
        r.trim();
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        require_same_prime(a.p_, b.p_);
        if (a.is_zero() || b.is_zero()) return Poly(a.p_);
        const std::uint64_t p = a.modulus();
        // At most three 62-bit products pile up before a reduction.
        std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
        std::vector<std::uint8_t> pending(acc.size(), 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                std::size_t k = i + j;
                acc[k] += static_cast<std::uint64_t>(a.c_[i]) * b.c_[j];
                if (++pending[k] == 3) {
                    acc[k] %= p;
                    pending[k] = 0;
                }
            }
        }
        Poly r(a.p_);
        r.c_.resize(acc.size());
        for (std::size_t k = 0; k < acc.size(); ++k) r.c_[k] = static_cast<std::uint32_t>(acc[k] % p);
        r.trim();
        return r;
    }
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    Poly scaled(std::uint32_t s) const {
        Poly r = *this;
        for (auto& c : r.c_) c = modp::mul(c, s % modulus(), modulus());
        r.trim();
        return r;
    }
    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(modp::inv(lead(), modulus()));
    }
    Poly derivative() const {
        Poly r(p_);
        if (c_.size() <= 1) return r;
        r.c_.resize(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.c_[i - 1] = modp::mul(c_[i], static_cast<std::uint32_t>(i % modulus()), modulus());
        r.trim();
        return r;
    }
    /// f(x + c).
    Poly shifted(std::uint32_t c) const {
        Poly r(p_);
        if (c % modulus() == 0) return *this;
        const Poly lin(p_, {static_cast<std::int64_t>(c % modulus()), 1});
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + Poly(p_, {*it});
        return r;
    }
    /// x^k f(1/x); requires k >= degree.
    Poly reversed(std::size_t k) const {
        std::vector<std::uint32_t> v(k + 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) v[k - i] = c_[i];
        return Poly(p_, std::move(v));
    }
    /// Multiplication by x^k.
    Poly shifted_up(std::size_t k) const {
        if (is_zero()) return *this;
        std::vector<std::uint32_t> v(k, 0);
        v.insert(v.end(), c_.begin(), c_.end());
        return Poly(p_, std::move(v));
    }
    /// Largest k with x^k | f; 0 for the zero polynomial.
    std::size_t valuation() const noexcept {
        std::size_t k = 0;
        while (k < c_.size() && c_[k] == 0) ++k;
        return c_.empty() ? 0 : k;
    }
    Poly pow(std::uint64_t e) const {
        Poly r = Poly::constant(p_, 1), b = *this;
        while (e != 0) {
            if (e & 1U) r *= b;
            e >>= 1U;
            if (e != 0) b *= b;
        }
        return r;
    }

    bool operator==(const Poly&) const = default;

   private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    Prime p_;
    std::vector<std::uint32_t> c_;
};

struct PolyDivMod {
    Poly quot;
    Poly rem;
};

inline PolyDivMod poly_divmod(const Poly& a, const Poly& b) {
    require_same_prime(a.prime(), b.prime());
    if (b.is_zero()) throw Error(Errc::DivisionByZeroPoly, "polynomial division by zero");
    const std::uint32_t p = a.modulus();
    if (a.degree() < b.degree()) return {Poly(a.prime()), a};
    std::vector<std::uint32_t> r = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    const std::uint32_t inv_lead = modp::inv(b.lead(), p);
    std::vector<std::uint32_t> q(r.size() - db, 0);
    for (std::size_t k = r.size(); k-- > db;) {
        std::uint32_t c = modp::mul(r[k], inv_lead, p);
        q[k - db] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j)
            r[k - db + j] = modp::sub(r[k - db + j], modp::mul(c, bc[j], p), p);
    }
    r.resize(db);
    return {Poly(a.prime(), std::move(q)), Poly(a.prime(), std::move(r))};
}

inline Poly operator/(const Poly& a, const Poly& b) { return poly_divmod(a, b).quot; }
inline Poly operator%(const Poly& a, const Poly& b) { return poly_divmod(a, b).rem; }

/// Monic gcd; gcd(0, 0) = 0.
inline Poly poly_gcd(Poly a, Poly b) {
    require_same_prime(a.prime(), b.prime());
    while (!b.is_zero()) {
        Poly r = poly_divmod(a, b).rem;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Product of the distinct monic irreducible factors of f (f != 0).
inline Poly poly_radical(const Poly& f) {
    if (f.is_zero()) throw Error(Errc::DivisionByZeroPoly, "radical of the zero polynomial");
    const Prime p = f.prime();
    if (f.degree() <= 0) return Poly::constant(p, 1);
    const Poly d = f.derivative();
    if (d.is_zero()) {
        // f(x) = g(x^p) = g(x)^p over F_p
        std::vector<std::uint32_t> g;
        for (std::size_t k = 0; k < f.coeffs().size(); k += p.value()) g.push_back(f.coeffs()[k]);
        return poly_radical(Poly(p, std::move(g)));
    }
    const Poly c = poly_gcd(f, d);
    const Poly w = (f / c).monic();
    const Poly rc = poly_radical(c);
    return (w * rc / poly_gcd(w, rc)).monic();
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly& mod) {
    Poly r = Poly::constant(base.prime(), 1) % mod;
    base = base % mod;
    while (e != 0) {
        if (e & 1U) r = (r * base) % mod;
        e >>= 1U;
        if (e != 0) base = (base * base) % mod;
    }
    return r;
}

namespace detail {

inline void split_roots(const Poly& f, std::vector<std::uint32_t>& out, std::uint32_t seed) {
    // f is monic, squarefree and splits into distinct linear factors.
    const std::uint32_t p = f.modulus();
    if (f.degree() <= 0) return;
    if (f.degree() == 1) {
        out.push_back(modp::neg(f.coeff(0), p));
        return;
    }
    for (std::uint32_t a = seed;; ++a) {
        Poly shift(f.prime(), {static_cast<std::int64_t>(a % p), 1});
        Poly h = poly_powmod(shift, (p - 1) / 2, f) - Poly::constant(f.prime(), 1);
        Poly g = poly_gcd(h, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            split_roots(g, out, a + 1);
            split_roots(f / g, out, a + 1);
            return;
        }
    }
}

}  // namespace detail

/// Distinct roots of f in F_p, sorted ascending.
inline std::vector<std::uint32_t> poly_roots(const Poly& f) {
    std::vector<std::uint32_t> out;
    if (f.degree() <= 0) return out;
    const std::uint32_t p = f.modulus();
    if (p < (1U << 12)) {
        for (std::uint32_t c = 0; c < p; ++c)
            if (f(c) == 0) out.push_back(c);
        return out;
    }
    Poly m = f.monic();
    Poly xp = poly_powmod(Poly::x(f.prime()), p, m) - Poly::x(f.prime());
    Poly split = poly_gcd(xp, m);
    detail::split_roots(split, out, 1);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::string to_string(const Poly& f, const char* var = "x") {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        std::uint32_t c = f.coeff(static_cast<std::size_t>(i));
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (c != 1 || i == 0) os << c;
        if (i >= 1) os << var;
        if (i >= 2) os << '^' << i;
    }
    return os.str();
}

/// num/den with gcd(num, den) = 1 and den monic; zero is 0/1.
class RationalFunction {
   public:
    explicit RationalFunction(Prime p) : num_(p), den_(Poly::constant(p, 1)) {}
    RationalFunction(Poly num)  // NOLINT: polynomials embed implicitly
        : num_(std::move(num)), den_(Poly::constant(num_.prime(), 1)) {}
    RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RationalFunction constant(Prime p, std::int64_t c) { return RationalFunction(Poly::constant(p, c)); }
    static RationalFunction x(Prime p) { return RationalFunction(Poly::x(p)); }

    const Poly& num() const noexcept { return num_; }
    const Poly& den() const noexcept { return den_; }
    Prime prime() const noexcept { return num_.prime(); }
    std::uint32_t modulus() const noexcept { return num_.modulus(); }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const noexcept { return den_.is_one(); }
    bool is_constant() const noexcept { return den_.is_one() && num_.is_constant(); }
    std::uint32_t constant_value() const noexcept { return num_.coeff(0); }

    RationalFunction operator-() const { return raw(-num_, den_); }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) {
            if (a.den_.is_one()) return raw(a.num_ + b.num_, a.den_);
            return RationalFunction(a.num_ + b.num_, a.den_);
        }
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero() || b.is_zero()) return RationalFunction(a.prime());
        if (a.den_.is_one() && b.den_.is_one()) return raw(a.num_ * b.num_, a.den_);
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw Error(Errc::DivisionByZeroPoly, "rational function division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
    RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
    RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }

    RationalFunction scaled(std::uint32_t s) const {
        if (s % modulus() == 0) return RationalFunction(prime());
        return raw(num_.scaled(s), den_);
    }
    RationalFunction inverse() const { return constant(prime(), 1) / *this; }

    RationalFunction derivative() const {
        if (den_.is_one()) return raw(num_.derivative(), den_);
        return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    bool is_regular_at(std::uint32_t c) const noexcept { return den_(c % modulus()) != 0; }
    std::uint32_t operator()(std::uint32_t c) const {
        std::uint32_t d = den_(c % modulus());
        if (d == 0) throw Error(Errc::DivisionByZeroPoly, "evaluation at a pole");
        return modp::mul(num_(c % modulus()), modp::inv(d, modulus()), modulus());
    }

    /// Valuation at x = c; INT_MAX for zero.
    int order_at(std::uint32_t c) const {
        if (is_zero()) return INT_MAX;
        return static_cast<int>(num_.shifted(c).valuation()) - static_cast<int>(den_.shifted(c).valuation());
    }
    /// Valuation at infinity (in 1/x); INT_MAX for zero.
    int order_at_infinity() const noexcept {
        if (is_zero()) return INT_MAX;
        return den_.degree() - num_.degree();
    }

    /// f(x + c).
    RationalFunction shifted(std::uint32_t c) const {
        if (c % modulus() == 0) return *this;
        return RationalFunction(num_.shifted(c), den_.shifted(c));
    }
    /// f(1/x).
    RationalFunction inverted_variable() const {
        if (is_zero()) return *this;
        const int dn = num_.degree(), dd = den_.degree();
        const int k = std::max(dn, dd);
        Poly n = num_.reversed(static_cast<std::size_t>(k));
        Poly d = den_.reversed(static_cast<std::size_t>(k));
        return RationalFunction(std::move(n), std::move(d));
    }

    /// Taylor coefficients at x = 0 up to (excluding) x^prec; requires den(0) != 0.
    std::vector<std::uint32_t> series(std::size_t prec) const {
        const std::uint32_t p = modulus();
        if (den_.coeff(0) == 0) throw Error(Errc::DivisionByZeroPoly, "series expansion at a pole");
        const std::uint32_t inv0 = modp::inv(den_.coeff(0), p);
        std::vector<std::uint32_t> s(prec, 0);
        for (std::size_t k = 0; k < prec; ++k) {
            std::uint32_t acc = num_.coeff(k);
            const std::size_t jmax = std::min<std::size_t>(k, static_cast<std::size_t>(std::max(den_.degree(), 0)));
            for (std::size_t j = 1; j <= jmax; ++j) acc = modp::sub(acc, modp::mul(den_.coeff(j), s[k - j], p), p);
            s[k] = modp::mul(acc, inv0, p);
        }
        return s;
    }

    bool operator==(const RationalFunction&) const = default;

   private:
    static RationalFunction raw(Poly n, Poly d) {
        RationalFunction r(n.prime());
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        if (r.num_.is_zero()) r.den_ = Poly::constant(r.num_.prime(), 1);
        return r;
    }

    void normalize() {
        require_same_prime(num_.prime(), den_.prime());
        if (den_.is_zero()) throw Error(Errc::DivisionByZeroPoly, "zero denominator");
        if (num_.is_zero()) {
            den_ = Poly::constant(num_.prime(), 1);
            return;
        }
        if (den_.degree() > 0) {
            Poly g = poly_gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = num_ / g;
                den_ = den_ / g;
            }
        }
        const std::uint32_t lc = den_.lead();
        if (lc != 1) {
            const std::uint32_t s = modp::inv(lc, modulus());
            num_ = num_.scaled(s);
            den_ = den_.scaled(s);
        }
    }

    Poly num_;
    Poly den_;
};

inline RationalFunction ratfn_normalize(const Poly& num, const Poly& den) { return RationalFunction(num, den); }
inline RationalFunction ratfn_derivative(const RationalFunction& f) { return f.derivative(); }

inline std::string to_string(const RationalFunction& f) {
    if (f.is_polynomial()) return to_string(f.num());
    return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

}  // namespace operlab
