#ifndef KONTIN_POLYNOMIAL_HPP
#define KONTIN_POLYNOMIAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Eigenvalues>

#include <kontin/core.hpp>

namespace kontin
{

// Univariate polynomial, coefficients in ascending order.
using UPoly = std::vector<Complex>;

inline Complex horner(std::span<const Complex> coeffs, Complex z)
{
    Complex acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

inline UPoly derivative(std::span<const Complex> coeffs)
{
    if (coeffs.size() <= 1) {
        return {Complex(0.0)};
    }
    UPoly out(coeffs.size() - 1);
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        out[k - 1] = static_cast<double>(k) * coeffs[k];
    }
    return out;
}

// Coefficients of p(z0 + h) in powers of h.
inline UPoly taylor_shift(std::span<const Complex> coeffs, Complex z0)
{
    UPoly c(coeffs.begin(), coeffs.end());
    const auto n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t k = n - 1; k > i; --k) {
            c[k - 1] += z0 * c[k];
        }
    }
    return c;
}

inline std::size_t effective_degree(std::span<const Complex> coeffs)
{
    std::size_t deg = coeffs.size();
    while (deg > 0 && coeffs[deg - 1] == Complex(0.0)) {
        --deg;
    }
    return deg == 0 ? 0 : deg - 1;
}

struct Root {
    Complex value;
    int multiplicity = 1;
};

// Roots by companion-matrix eigenvalues, one Newton polish step where the
// derivative is not degenerate, clustered within `merge_tol`, ordered by
// principal argument (ties broken by modulus).
inline std::vector<Root> roots(std::span<const Complex> coeffs, double merge_tol = 1e-6)
{
    const auto deg = effective_degree(coeffs);
    require(std::any_of(coeffs.begin(), coeffs.end(), [](Complex c) { return c != Complex(0.0); }),
            "roots: zero polynomial");
    if (deg == 0) {
        return {};
    }
    const Complex lead = coeffs[deg];
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
    for (std::size_t i = 1; i < deg; ++i) {
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    }
    for (std::size_t i = 0; i < deg; ++i) {
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -coeffs[i] / lead;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<Complex> raw(solver.eigenvalues().begin(), solver.eigenvalues().end());

    std::span<const Complex> p(coeffs.data(), deg + 1);
    const auto dp = derivative(p);
    for (auto &z : raw) {
        for (int it = 0; it < 3; ++it) {
            const Complex d = horner(dp, z);
            if (std::abs(d) < 1e-8 * (1.0 + std::abs(z))) {
                break;
            }
            const Complex step = horner(p, z) / d;
            z -= step;
            if (std::abs(step) < 1e-16 * (1.0 + std::abs(z))) {
                break;
            }
        }
    }

    std::vector<Root> out;
    std::vector<bool> used(raw.size(), false);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (used[i]) {
            continue;
        }
        Complex sum = raw[i];
        int mult = 1;
        used[i] = true;
        for (std::size_t j = i + 1; j < raw.size(); ++j) {
            if (!used[j] && std::abs(raw[j] - raw[i]) < merge_tol) {
                used[j] = true;
                sum += raw[j];
                ++mult;
            }
        }
        out.push_back({sum / static_cast<double>(mult), mult});
    }
    std::sort(out.begin(), out.end(), [](const Root &a, const Root &b) {
        const double aa = std::arg(a.value);
        const double ab = std::arg(b.value);
        if (aa != ab) {
            return aa < ab;
        }
        return std::abs(a.value) < std::abs(b.value);
    });
    return out;
}

// All roots with multiplicity expanded, same ordering.
inline std::vector<Complex> root_values(std::span<const Complex> coeffs)
{
    std::vector<Complex> out;
    for (const auto &r : roots(coeffs, 0.0)) {
        out.push_back(r.value);
    }
    return out;
}

// Sparse multivariate polynomial sum c_m z^m.
class MPoly
{
public:
    struct Term {
        std::vector<int> exponents;
        Complex coeff;
    };

    MPoly(std::size_t nvars, std::vector<Term> terms) : m_nvars(nvars), m_terms(std::move(terms))
    {
        for (const auto &t : m_terms) {
            require(t.exponents.size() == nvars, "MPoly: exponent length mismatch");
        }
    }

    [[nodiscard]] std::size_t nvars() const noexcept { return m_nvars; }
    [[nodiscard]] const std::vector<Term> &terms() const noexcept { return m_terms; }

    [[nodiscard]] Complex operator()(const CPoint &z) const
    {
        require(z.dim() == m_nvars, "MPoly: dimension mismatch");
        Complex acc = 0.0;
        for (const auto &t : m_terms) {
            Complex mono = t.coeff;
            for (std::size_t i = 0; i < m_nvars; ++i) {
                for (int e = 0; e < t.exponents[i]; ++e) {
                    mono *= z[i];
                }
            }
            acc += mono;
        }
        return acc;
    }

    // Lipschitz constant w.r.t. the polydisk metric on {max_i |z_i| <= bound}.
    [[nodiscard]] double lipschitz_bound(double bound) const
    {
        double lip = 0.0;
        for (const auto &t : m_terms) {
            int order = 0;
            for (int e : t.exponents) {
                order += e;
            }
            if (order > 0) {
                lip += std::abs(t.coeff) * order * std::pow(bound, order - 1);
            }
        }
        return lip;
    }

    // Random polynomial with every monomial of total degree <= degree and
    // coefficients uniform in the unit square.
    template <typename Rng>
    static MPoly random(std::size_t nvars, int degree, Rng &rng)
    {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<Term> terms;
        std::vector<int> e(nvars, 0);
        auto rec = [&](auto &&self, std::size_t i, int left) -> void {
            if (i == nvars) {
                terms.push_back({e, Complex(u(rng), u(rng))});
                return;
            }
            for (int k = 0; k <= left; ++k) {
                e[i] = k;
                self(self, i + 1, left - k);
            }
            e[i] = 0;
        };
        rec(rec, 0, degree);
        return MPoly(nvars, std::move(terms));
    }

private:
    std::size_t m_nvars;
    std::vector<Term> m_terms;
};

} // namespace kontin

#endif
