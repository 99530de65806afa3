#include <gtest/gtest.h>

#include "support.hpp"

using namespace operlab;
using testing_support::random_monic;
using testing_support::random_poly;
using testing_support::random_ratfn;

TEST(Prime, RejectsCompositeEvenAndSmall) {
    EXPECT_NO_THROW(Prime(3));
    EXPECT_NO_THROW(Prime(2147483647));
    for (std::int64_t bad : std::initializer_list<std::int64_t>{-5, 0, 1, 2, 4, 9, 91, 2147483648LL}) {
        try {
            Prime p(bad);
            FAIL() << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::NotPrime);
        }
    }
}

TEST(Fp, FieldAxiomsByExhaustion) {
    for (int pv : {3, 5, 7, 13}) {
        const Prime p(pv);
        for (int a = 0; a < pv; ++a) {
            const Fp x(p, a);
            if (a) {
                EXPECT_EQ((x * x.inverse()).value(), 1u);
            }
            for (int b = 0; b < pv; ++b) {
                const Fp y(p, b);
                EXPECT_EQ((x * y).value(), static_cast<std::uint32_t>(a * b % pv));
                EXPECT_EQ((x - y + y), x);
            }
        }
    }
}

TEST(Fp, InverseOfZeroThrows) {
    try {
        fp_inv(Fp(Prime(5), 0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ZeroInverse);
    }
}

TEST(Fp, MixedPrimesThrow) {
    try {
        auto z = Fp(Prime(5), 1) + Fp(Prime(7), 1);
        (void)z;
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::PrimeMismatch);
    }
}

TEST(Fp, FermatsLittleTheorem) {
    const Prime p(101);
    for (int a = 1; a < 101; ++a) EXPECT_EQ(Fp(p, a).pow(100).value(), 1u);
}

TEST(Poly, NegativeCoefficientsReduce) {
    const Prime p(5);
    EXPECT_EQ(Poly(p, {-1, 0, 1}), Poly(p, {4, 0, 1}));
    EXPECT_EQ(Poly(p, {5, 0, 0}).degree(), -1);
}

TEST(Poly, ProductMatchesPointwiseProduct) {
    std::mt19937_64 rng(1);
    for (int pv : {3, 5, 7, 31}) {
        const Prime p(pv);
        for (int trial = 0; trial < 50; ++trial) {
            const Poly a = random_poly(p, 6, rng), b = random_poly(p, 6, rng);
            const Poly c = a * b;
            for (int x = 0; x < pv; ++x)
                EXPECT_EQ(c(static_cast<std::uint32_t>(x)), modp::mul(a(x), b(x), pv));
            // schoolbook convolution
            std::vector<std::uint64_t> conv(a.coeffs().size() + b.coeffs().size() + 1, 0);
            for (std::size_t i = 0; i < a.coeffs().size(); ++i)
                for (std::size_t j = 0; j < b.coeffs().size(); ++j) conv[i + j] += std::uint64_t{a.coeff(i)} * b.coeff(j);
            for (std::size_t k = 0; k < conv.size(); ++k) EXPECT_EQ(c.coeff(k), conv[k] % pv);
        }
    }
}

TEST(Poly, LargePrimeMultiplicationDoesNotOverflow) {
    const Prime p(2147483629);
    std::vector<std::int64_t> big(40, 2147483628);
    const Poly a = Poly::from_signed(p, big);
    const Poly sq = a * a;
    // (-1)(-1) summed over k+1 terms
    for (std::size_t k = 0; k < 40; ++k) EXPECT_EQ(sq.coeff(k), k + 1);
}

TEST(Poly, DivisionIdentity) {
    std::mt19937_64 rng(2);
    for (int pv : {3, 7, 13}) {
        const Prime p(pv);
        for (int trial = 0; trial < 100; ++trial) {
            const Poly a = random_poly(p, 8, rng);
            Poly b = random_poly(p, 4, rng);
            if (b.is_zero()) b = Poly::constant(p, 1);
            const auto qr = poly_divmod(a, b);
            EXPECT_EQ(qr.quot * b + qr.rem, a);
            EXPECT_LT(qr.rem.degree(), b.degree());
        }
    }
}

TEST(Poly, DivisionByZeroThrows) {
    try {
        poly_divmod(Poly(Prime(5), {1, 1}), Poly(Prime(5)));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DivisionByZeroPoly);
    }
}

TEST(Poly, GcdDividesAndIsMaximal) {
    std::mt19937_64 rng(3);
    const Prime p(7);
    for (int trial = 0; trial < 100; ++trial) {
        const Poly common = random_monic(p, 2, rng);
        const Poly a = common * random_poly(p, 3, rng), b = common * random_poly(p, 3, rng);
        const Poly g = poly_gcd(a, b);
        if (a.is_zero() && b.is_zero()) continue;
        EXPECT_TRUE((a % g).is_zero());
        EXPECT_TRUE((b % g).is_zero());
        EXPECT_TRUE((g % common).is_zero() || a.is_zero() || b.is_zero());
        EXPECT_EQ(g.lead(), 1u);
    }
}

TEST(Poly, RootsMatchBruteForce) {
    std::mt19937_64 rng(4);
    for (int pv : {5, 11}) {
        const Prime p(pv);
        for (int trial = 0; trial < 100; ++trial) {
            const Poly f = random_poly(p, 6, rng);
            if (f.degree() < 1) continue;
            std::vector<std::uint32_t> brute;
            for (int x = 0; x < pv; ++x)
                if (f(x) == 0) brute.push_back(x);
            EXPECT_EQ(poly_roots(f), brute);
        }
    }
}

TEST(Poly, CantorZassenhausOnLargePrime) {
    const Prime p(1000003);
    const Poly f = testing_support::from_roots(p, {5, 17, 999999, 123456}) * Poly(p, {1, 0, 1});
    // x^2 + 1 has no roots since p = 3 mod 4
    EXPECT_EQ(poly_roots(f), (std::vector<std::uint32_t>{5, 17, 123456, 999999}));
}

TEST(Poly, RadicalKeepsEachFactorOnce) {
    const Prime p(5);
    const Poly a = testing_support::from_roots(p, {1, 1, 1, 2, 3, 3});
    EXPECT_EQ(poly_radical(a), testing_support::from_roots(p, {1, 2, 3}));
    // multiplicity p: g(x^p) shape
    const Poly b = testing_support::from_roots(p, {2, 2, 2, 2, 2, 4});
    EXPECT_EQ(poly_radical(b), testing_support::from_roots(p, {2, 4}));
    const Poly irr = Poly(p, {2, 0, 1});  // x^2 + 2 is irreducible mod 5
    EXPECT_EQ(poly_radical(irr * irr * Poly(p, {1, 1})), irr * Poly(p, {1, 1}));
}

TEST(Poly, DerivativeOfXpVanishes) {
    const Prime p(7);
    EXPECT_TRUE(Poly::monomial(p, 1, 7).derivative().is_zero());
    EXPECT_EQ(Poly::monomial(p, 3, 8).derivative(), Poly::monomial(p, 24, 7));
}

TEST(Poly, ShiftMatchesComposition) {
    std::mt19937_64 rng(5);
    const Prime p(11);
    for (int trial = 0; trial < 30; ++trial) {
        const Poly f = random_poly(p, 5, rng);
        for (std::uint32_t c = 0; c < 11; ++c)
            for (std::uint32_t x = 0; x < 11; ++x) EXPECT_EQ(f.shifted(c)(x), f((x + c) % 11));
    }
}

TEST(RationalFunction, ExamplesReduce) {
    const Prime p(5);
    const RationalFunction f(Poly(p, {-1, 0, 1}), Poly(p, {-1, 1}));
    EXPECT_EQ(f, RationalFunction(Poly(p, {1, 1})));
    const RationalFunction g(Poly(p, {1}), Poly(p, {0, 2}));
    EXPECT_EQ(g.den(), Poly(p, {0, 1}));
    EXPECT_EQ(g.num(), Poly(p, {3}));
}

TEST(RationalFunction, FieldIdentities) {
    std::mt19937_64 rng(6);
    const Prime p(7);
    for (int trial = 0; trial < 100; ++trial) {
        const RationalFunction a = random_ratfn(p, rng), b = random_ratfn(p, rng);
        if (b.is_zero()) continue;
        EXPECT_EQ(a * b / b, a);
        EXPECT_EQ(a + b - b, a);
        EXPECT_EQ((a * b).derivative(), a.derivative() * b + a * b.derivative());
        for (std::uint32_t c = 0; c < 7; ++c) {
            if (!a.is_regular_at(c) || !b.is_regular_at(c)) continue;
            EXPECT_EQ((a + b)(c), modp::add(a(c), b(c), 7));
        }
    }
}

TEST(RationalFunction, DivisionByZeroThrows) {
    const Prime p(5);
    try {
        auto z = RationalFunction::x(p) / RationalFunction(p);
        (void)z;
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DivisionByZeroPoly);
    }
}

TEST(RationalFunction, SeriesSatisfiesDefiningRelation) {
    std::mt19937_64 rng(7);
    const Prime p(13);
    for (int trial = 0; trial < 50; ++trial) {
        const RationalFunction f = random_ratfn(p, rng, 3);
        if (!f.is_regular_at(0)) continue;
        const auto s = f.series(12);
        const Poly sp(p, std::vector<std::uint32_t>(s.begin(), s.end()));
        const Poly lhs = sp * f.den() - f.num();
        for (std::size_t k = 0; k < 12; ++k) EXPECT_EQ(lhs.coeff(k), 0u);
    }
}

TEST(RationalFunction, OrdersAndInversion) {
    const Prime p(5);
    const RationalFunction f(Poly(p, {0, 0, 1}), Poly(p, {-1, 1}).pow(3));
    EXPECT_EQ(f.order_at(0), 2);
    EXPECT_EQ(f.order_at(1), -3);
    EXPECT_EQ(f.order_at_infinity(), 1);
    EXPECT_EQ(f.inverted_variable().inverted_variable(), f);
    EXPECT_EQ(f.inverted_variable().order_at(0), f.order_at_infinity());
}

TEST(Examples, Inverses) {
    EXPECT_EQ(fp_inv(Fp(Prime(5), 2)).value(), 3u);
    EXPECT_EQ(fp_inv(Fp(Prime(7), 1)).value(), 1u);
    EXPECT_EQ(fp_inv(Fp(Prime(7), 3)).value(), 5u);
}

TEST(Examples, Division) {
    const Prime p5(5), p3(3);
    auto qr = poly_divmod(Poly(p5, {-1, 0, 1}), Poly(p5, {-1, 1}));
    EXPECT_EQ(qr.quot, Poly(p5, {1, 1}));
    EXPECT_TRUE(qr.rem.is_zero());
    qr = poly_divmod(Poly::x(p5), Poly::monomial(p5, 1, 2));
    EXPECT_TRUE(qr.quot.is_zero());
    EXPECT_EQ(qr.rem, Poly::x(p5));
    qr = poly_divmod(Poly(p3, {0, -1, 0, 1}), Poly::x(p3));
    EXPECT_EQ(qr.quot, Poly(p3, {-1, 0, 1}));
    EXPECT_TRUE(qr.rem.is_zero());
}

TEST(Examples, Normalize) {
    const Prime p5(5), p7(7);
    EXPECT_EQ(ratfn_normalize(Poly(p5, {-1, 0, 1}), Poly(p5, {-1, 1})), RationalFunction(Poly(p5, {1, 1})));
    const auto h = ratfn_normalize(Poly::x(p5), Poly(p5, {0, 2}));
    EXPECT_EQ(h.num(), Poly(p5, {3}));
    EXPECT_TRUE(h.den().is_one());
    const auto z = ratfn_normalize(Poly(p7), Poly::x(p7));
    EXPECT_TRUE(z.is_zero());
    EXPECT_TRUE(z.den().is_one());
    try {
        ratfn_normalize(Poly::x(p7), Poly(p7));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DivisionByZeroPoly);
    }
}

TEST(Examples, Derivatives) {
    const Prime p(5);
    EXPECT_EQ(ratfn_derivative(RationalFunction(Poly(p, {0, 0, 1}))), RationalFunction(Poly(p, {0, 2})));
    EXPECT_TRUE(ratfn_derivative(RationalFunction(Poly::monomial(p, 1, 5))).is_zero());
    EXPECT_EQ(ratfn_derivative(RationalFunction(Poly::constant(p, 1), Poly::x(p))),
              RationalFunction(Poly::constant(p, 4), Poly::monomial(p, 1, 2)));
}

TEST(Poly, FrobeniusIsAdditive) {
    std::mt19937_64 rng(8);
    for (int pv : {3, 5, 7}) {
        const Prime p(pv);
        for (int trial = 0; trial < 30; ++trial) {
            const Poly f = random_poly(p, 4, rng), g = random_poly(p, 4, rng);
            EXPECT_EQ((f + g).pow(pv), f.pow(pv) + g.pow(pv));
        }
    }
}

TEST(RationalFunction, DerivativeKernelIsFunctionsOfXp) {
    std::mt19937_64 rng(9);
    const Prime p(3);
    auto only_xp = [](const Poly& f) {
        for (std::size_t k = 0; k < f.coeffs().size(); ++k)
            if (f.coeff(k) != 0 && k % 3 != 0) return false;
        return true;
    };
    int constants = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const RationalFunction f = random_ratfn(p, rng, 4);
        const bool flat = f.derivative().is_zero();
        EXPECT_EQ(flat, only_xp(f.num()) && only_xp(f.den())) << to_string(f);
        constants += flat;
    }
    // x^3-type constants must actually occur in the draw
    const RationalFunction c(Poly(p, {1, 0, 0, 1}), Poly(p, {2, 0, 0, 0, 0, 0, 1}));
    EXPECT_TRUE(c.derivative().is_zero());
    EXPECT_GT(constants, 0);
}
