#pragma once

// Pseudo-fusion ring on the radii set built from a genus-0 three-point degree
// table, its complex characters and the Verlinde-type degree formula
//     deg(g; rho_1..rho_r) = sum_chi chi(Cas)^{g-1} prod_i chi(rho_i).

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "operlab/modsearch.hpp"
#include "operlab/radii.hpp"

namespace operlab {

using Complex = std::complex<double>;

class FusionRing {
   public:
    /// n3[(a k + b) k + c] = N(a, b, c) over the basis.
    FusionRing(std::vector<RadiusClass> basis, std::vector<std::uint64_t> n3)
        : basis_(std::move(basis)), n3_(std::move(n3)) {
        const std::size_t k = basis_.size();
        if (n3_.size() != k * k * k) throw Error(Errc::IncompleteTable, "structure tensor has the wrong size");
        for (std::size_t a = 0; a < k; ++a) tilde_.push_back(index_of(involution_neg(basis_[a])));
        check_symmetric();
        check_associative();
    }

    std::size_t rank() const noexcept { return basis_.size(); }
    const std::vector<RadiusClass>& basis() const noexcept { return basis_; }

    std::size_t index_of(const RadiusClass& c) const {
        auto it = std::find(basis_.begin(), basis_.end(), c);
        if (it == basis_.end()) throw Error(Errc::InvalidArgument, "radius " + c.to_string() + " is not in the basis");
        return static_cast<std::size_t>(it - basis_.begin());
    }
    /// Index of the gluing-dual class (the negation of the class).
    std::size_t tilde(std::size_t a) const { return tilde_[a]; }

    std::uint64_t n(std::size_t a, std::size_t b, std::size_t c) const {
        const std::size_t k = rank();
        return n3_[(a * k + b) * k + c];
    }
    /// Coefficient of lambda in a * b.
    std::uint64_t c(std::size_t a, std::size_t b, std::size_t lambda) const { return n(a, b, tilde_[lambda]); }

    /// Left multiplication by basis element a on the unitized basis (index 0 = unit).
    Eigen::MatrixXd matrix(std::size_t a) const {
        const std::size_t k = rank();
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k + 1), static_cast<Eigen::Index>(k + 1));
        m(static_cast<Eigen::Index>(a + 1), 0) = 1.0;
        for (std::size_t b = 0; b < k; ++b)
            for (std::size_t l = 0; l < k; ++l)
                m(static_cast<Eigen::Index>(l + 1), static_cast<Eigen::Index>(b + 1)) = static_cast<double>(c(a, b, l));
        return m;
    }

   private:
    void check_symmetric() const {
        const std::size_t k = rank();
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                for (std::size_t l = 0; l < k; ++l) {
                    const auto v = n(a, b, l);
                    if (v != n(b, a, l) || v != n(a, l, b) || v != n(l, b, a))
                        throw Error(Errc::AsymmetricTable, "table not symmetric at (" + basis_[a].to_string() + ";" +
                                                               basis_[b].to_string() + ";" + basis_[l].to_string() + ")");
                }
    }

    void check_associative() const {
        const std::size_t k = rank();
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                for (std::size_t g = 0; g < k; ++g)
                    for (std::size_t d = 0; d < k; ++d) {
                        std::uint64_t lhs = 0, rhs = 0;
                        for (std::size_t mu = 0; mu < k; ++mu) {
                            lhs += c(a, b, mu) * c(mu, g, d);
                            rhs += c(b, g, mu) * c(a, mu, d);
                        }
                        if (lhs != rhs)
                            throw Error(Errc::AssociativityFailure,
                                        "(a*b)*c != a*(b*c) for " + basis_[a].to_string() + ", " + basis_[b].to_string() +
                                            ", " + basis_[g].to_string());
                    }
    }

    std::vector<RadiusClass> basis_;
    std::vector<std::uint64_t> n3_;
    std::vector<std::size_t> tilde_;
};

/// Ring on the radii classes of the table's type: all classes for sl, the
/// symmetric ones for so and sp.
inline FusionRing build_ring(const DegreeTable& table) {
    if (table.r != 3) throw Error(Errc::IncompleteTable, "the ring needs a three-point table");
    std::vector<RadiusClass> basis = enumerate_classes(table.prime, static_cast<std::size_t>(table.n), table.kind != "sl");
    const std::size_t k = basis.size();
    std::vector<std::uint64_t> n3(k * k * k, 0);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            for (std::size_t c = 0; c < k; ++c) n3[(a * k + b) * k + c] = table.at({basis[a], basis[b], basis[c]});
    return FusionRing(std::move(basis), std::move(n3));
}

struct Character {
    std::vector<Complex> values;  // one per basis element
    Complex cas;                  // chi(Cas) = sum_lambda chi(lambda)^2
};

/// Characters with chi(Cas) != 0, from the left eigenvectors of a seeded
/// random combination of the multiplication matrices.
inline std::vector<Character> characters(const FusionRing& ring, std::uint64_t seed = 42) {
    const std::size_t k = ring.rank();
    std::vector<Character> out;
    if (k == 0) return out;
    std::vector<Eigen::MatrixXd> mats;
    for (std::size_t a = 0; a < k; ++a) mats.push_back(ring.matrix(a));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(1.0, 2.0);
    Eigen::MatrixXd comb = Eigen::MatrixXd::Zero(mats[0].rows(), mats[0].cols());
    for (const auto& m : mats) comb += coef(rng) * m;

    Eigen::EigenSolver<Eigen::MatrixXd> es(comb.transpose());
    if (es.info() != Eigen::Success) throw Error(Errc::DegenerateEigenproblem, "eigensolver did not converge");
    const Eigen::VectorXcd ev = es.eigenvalues();
    const Eigen::MatrixXcd vec = es.eigenvectors();
    const double scale = std::max(1.0, comb.cwiseAbs().maxCoeff());

    for (Eigen::Index j = 0; j < ev.size(); ++j) {
        if (std::abs(ev(j)) < 1e-9 * scale) continue;
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            if (i != j && std::abs(ev(i) - ev(j)) < 1e-7 * scale)
                throw Error(Errc::DegenerateEigenproblem, "repeated nonzero eigenvalue; the ring is not split semisimple");
        const Eigen::VectorXcd w = vec.col(j);
        if (std::abs(w(0)) < 1e-12 * w.norm()) throw Error(Errc::DegenerateEigenproblem, "eigenvector vanishes on the unit");
        Character chi;
        for (std::size_t a = 0; a < k; ++a) chi.values.push_back(w(static_cast<Eigen::Index>(a + 1)) / w(0));
        for (std::size_t a = 0; a < k; ++a) {
            const Eigen::RowVectorXcd lhs = w.transpose() * mats[a].cast<Complex>();
            if ((lhs - chi.values[a] * w.transpose()).norm() > 1e-8 * w.norm() * scale)
                throw Error(Errc::DegenerateEigenproblem, "eigenvector is not common to all multiplication maps");
        }
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) {
                Complex rhs = 0;
                for (std::size_t l = 0; l < k; ++l) rhs += static_cast<double>(ring.c(a, b, l)) * chi.values[l];
                if (std::abs(chi.values[a] * chi.values[b] - rhs) > 1e-9 * std::max(1.0, std::abs(rhs)))
                    throw Error(Errc::DegenerateEigenproblem, "character is not multiplicative");
            }
        chi.cas = 0;
        for (const auto& v : chi.values) chi.cas += v * v;
        if (std::abs(chi.cas) < 1e-9) continue;
        out.push_back(std::move(chi));
    }
    auto key = [](const Character& c) {
        std::vector<double> v;
        for (const auto& z : c.values) {
            v.push_back(std::round(z.real() * 1e9) / 1e9);
            v.push_back(std::round(z.imag() * 1e9) / 1e9);
        }
        return v;
    };
    std::sort(out.begin(), out.end(), [&](const Character& a, const Character& b) { return key(a) < key(b); });
    return out;
}

struct VerlindeValue {
    std::uint64_t value;
    double raw;
};

inline VerlindeValue verlinde_degree(const FusionRing& ring, const std::vector<Character>& chars, int g,
                                     const RadiusTuple& rho) {
    if (g < 0 || 2 * g - 2 + static_cast<int>(rho.size()) <= 0)
        throw Error(Errc::InvalidArgument, "need g >= 0 and 2g - 2 + r > 0");
    std::vector<std::size_t> idx;
    for (const auto& c : rho) idx.push_back(ring.index_of(c));
    Complex sum = 0;
    for (const auto& chi : chars) {
        Complex term = std::pow(chi.cas, g - 1);
        for (auto i : idx) term *= chi.values[i];
        sum += term;
    }
    const double rounded = std::round(sum.real());
    if (std::abs(sum.imag()) > 1e-6 || std::abs(sum.real() - rounded) > 1e-6 || rounded < 0)
        throw Error(Errc::NonIntegralResult, "Verlinde sum " + std::to_string(sum.real()) + " + " +
                                                 std::to_string(sum.imag()) + "i is not a nonnegative integer");
    return {static_cast<std::uint64_t>(rounded), sum.real()};
}

inline VerlindeValue verlinde_degree(const FusionRing& ring, int g, const RadiusTuple& rho) {
    return verlinde_degree(ring, characters(ring), g, rho);
}

struct FactorizationReport {
    bool ok = true;
    std::size_t checked = 0;
    std::vector<std::string> mismatches;
};

/// Compares a four-point table with the gluing sum over the three-point
/// table and with the Verlinde formula.
inline FactorizationReport factorization_check(const FusionRing& ring, const DegreeTable& table4) {
    FactorizationReport rep;
    if (table4.r != 4) {
        rep.ok = false;
        rep.mismatches.push_back("table has " + std::to_string(table4.r) + " points, expected 4");
        return rep;
    }
    const auto chars = characters(ring);
    for (const auto& [key, count] : table4.entries) {
        const RadiusTuple rho = parse_radii_key(table4.prime, key);
        std::vector<std::size_t> i;
        for (const auto& c : rho) i.push_back(ring.index_of(c));
        std::uint64_t glued = 0;
        for (std::size_t l = 0; l < ring.rank(); ++l) glued += ring.n(i[0], i[1], l) * ring.n(ring.tilde(l), i[2], i[3]);
        ++rep.checked;
        if (glued != count) {
            rep.ok = false;
            rep.mismatches.push_back(key + ": count " + std::to_string(count) + ", glued " + std::to_string(glued));
        }
        try {
            const auto v = verlinde_degree(ring, chars, 0, rho);
            if (v.value != count) {
                rep.ok = false;
                rep.mismatches.push_back(key + ": count " + std::to_string(count) + ", Verlinde " +
                                         std::to_string(v.value));
            }
        } catch (const Error& e) {
            rep.ok = false;
            rep.mismatches.push_back(key + ": " + e.what());
        }
    }
    return rep;
}

}  // namespace operlab
