#ifndef KONTIN_GERMS_HPP
#define KONTIN_GERMS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include <kontin/core.hpp>
#include <kontin/geometry.hpp>
#include <kontin/polynomial.hpp>

namespace kontin
{

using MultiIndex = std::vector<int>;

inline int order(const MultiIndex &m)
{
    int s = 0;
    for (int e : m) {
        s += e;
    }
    return s;
}

// All multi-indices of n variables with |m| <= N, graded by order and then
// reverse-lexicographic within an order.
class MultiIndexSet
{
public:
    MultiIndexSet(std::size_t n, int cap) : m_n(n), m_cap(cap)
    {
        require(n >= 1, "MultiIndexSet: n must be >= 1");
        require(cap >= 0, "MultiIndexSet: degree cap must be >= 0");
        MultiIndex e(n, 0);
        for (int k = 0; k <= cap; ++k) {
            auto rec = [&](auto &&self, std::size_t i, int left) -> void {
                if (i + 1 == n) {
                    e[i] = left;
                    m_list.push_back(e);
                    return;
                }
                for (int v = left; v >= 0; --v) {
                    e[i] = v;
                    self(self, i + 1, left - v);
                }
            };
            rec(rec, 0, k);
        }
        for (std::size_t i = 0; i < m_list.size(); ++i) {
            m_pos.emplace(m_list[i], i);
            m_orders.push_back(order(m_list[i]));
        }
    }

    [[nodiscard]] std::size_t nvars() const noexcept { return m_n; }
    [[nodiscard]] int degree_cap() const noexcept { return m_cap; }
    [[nodiscard]] std::size_t size() const noexcept { return m_list.size(); }
    [[nodiscard]] const MultiIndex &operator[](std::size_t i) const { return m_list[i]; }
    [[nodiscard]] int order_of(std::size_t i) const { return m_orders[i]; }

    [[nodiscard]] std::optional<std::size_t> position(const MultiIndex &m) const
    {
        const auto it = m_pos.find(m);
        if (it == m_pos.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    // Shared, immutable instance per (n, N).
    static std::shared_ptr<const MultiIndexSet> get(std::size_t n, int cap)
    {
        static std::mutex mtx;
        static std::map<std::pair<std::size_t, int>, std::shared_ptr<const MultiIndexSet>> cache;
        std::lock_guard lock(mtx);
        auto &slot = cache[{n, cap}];
        if (!slot) {
            slot = std::make_shared<const MultiIndexSet>(n, cap);
        }
        return slot;
    }

private:
    std::size_t m_n;
    int m_cap;
    std::vector<MultiIndex> m_list;
    std::vector<int> m_orders;
    std::map<MultiIndex, std::size_t> m_pos;
};

// Cauchy envelope: |a_m| <= bound / radius^|m|.
struct Envelope {
    double bound = 0.0;
    double radius = 0.0;

    friend bool operator==(const Envelope &, const Envelope &) = default;
};

// Truncated power series sum_{|m| <= N} a_m (z - center)^m.
class TaylorGerm
{
public:
    // Relative slack accepted when checking stored coefficients against the envelope.
    static constexpr double envelope_tolerance = 1e-9;

    TaylorGerm(CPoint center, int degree_cap, std::vector<Complex> coeffs, std::optional<Envelope> env = std::nullopt)
        : m_center(std::move(center)),
          m_index(MultiIndexSet::get(m_center.dim(), degree_cap)),
          m_coeffs(std::move(coeffs)),
          m_env(env)
    {
        require(m_coeffs.size() == m_index->size(), "TaylorGerm: coefficient count does not match degree cap");
        if (m_env) {
            require(m_env->bound >= 0.0 && std::isfinite(m_env->bound), "TaylorGerm: envelope bound must be >= 0");
            require(m_env->radius > 0.0 && std::isfinite(m_env->radius), "TaylorGerm: envelope radius must be > 0");
            const auto worst = envelope_violation();
            if (worst > envelope_tolerance) {
                throw InvalidArgument("TaylorGerm: coefficient violates its Cauchy envelope (excess ratio " +
                                      std::to_string(worst) + ")");
            }
        }
    }

    // Constant germ in n variables.
    static TaylorGerm constant(CPoint center, int degree_cap, Complex value, std::optional<Envelope> env = std::nullopt)
    {
        const auto idx = MultiIndexSet::get(center.dim(), degree_cap);
        std::vector<Complex> c(idx->size(), Complex(0.0));
        c[0] = value;
        return TaylorGerm(std::move(center), degree_cap, std::move(c), env);
    }

    [[nodiscard]] const CPoint &center() const noexcept { return m_center; }
    [[nodiscard]] std::size_t dim() const noexcept { return m_center.dim(); }
    [[nodiscard]] int degree_cap() const noexcept { return m_index->degree_cap(); }
    [[nodiscard]] const MultiIndexSet &indices() const noexcept { return *m_index; }
    [[nodiscard]] std::span<const Complex> coeffs() const noexcept { return m_coeffs; }
    [[nodiscard]] const std::optional<Envelope> &envelope() const noexcept { return m_env; }
    [[nodiscard]] Complex value() const { return m_coeffs[0]; }

    [[nodiscard]] Complex coeff(const MultiIndex &m) const
    {
        const auto pos = m_index->position(m);
        if (!pos) {
            throw InvalidArgument("TaylorGerm: multi-index outside the stored range");
        }
        return m_coeffs[*pos];
    }

    // max_m (|a_m| d^|m| - M) / M, i.e. <= 0 when the envelope holds.
    [[nodiscard]] double envelope_violation() const
    {
        if (!m_env) {
            return 0.0;
        }
        double worst = -1.0;
        const double scale = std::max(m_env->bound, std::numeric_limits<double>::min());
        for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
            const double lhs = std::abs(m_coeffs[i]) * std::pow(m_env->radius, m_index->order_of(i));
            worst = std::max(worst, (lhs - m_env->bound) / scale);
        }
        return worst;
    }

    [[nodiscard]] TaylorGerm with_envelope(std::optional<Envelope> env) const
    {
        return TaylorGerm(m_center, degree_cap(), m_coeffs, env);
    }

    [[nodiscard]] TaylorGerm negated() const
    {
        std::vector<Complex> c(m_coeffs);
        for (auto &v : c) {
            v = -v;
        }
        return TaylorGerm(m_center, degree_cap(), std::move(c), m_env);
    }

private:
    CPoint m_center;
    std::shared_ptr<const MultiIndexSet> m_index;
    std::vector<Complex> m_coeffs;
    std::optional<Envelope> m_env;
};

namespace detail
{

inline double binomial(int n, int k)
{
    if (k < 0 || k > n) {
        return 0.0;
    }
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

// Number of multi-indices of n variables with order exactly k.
inline double count_of_order(std::size_t n, int k)
{
    return binomial(k + static_cast<int>(n) - 1, static_cast<int>(n) - 1);
}

inline std::vector<std::vector<Complex>> powers(const CPoint &delta, int cap)
{
    std::vector<std::vector<Complex>> pw(delta.dim(), std::vector<Complex>(static_cast<std::size_t>(cap) + 1));
    for (std::size_t i = 0; i < delta.dim(); ++i) {
        pw[i][0] = 1.0;
        for (int k = 1; k <= cap; ++k) {
            pw[i][static_cast<std::size_t>(k)] = pw[i][static_cast<std::size_t>(k) - 1] * delta[i];
        }
    }
    return pw;
}

} // namespace detail

// M * sum_{|m| > N} ratio^|m| for n variables: the truncation tail of the
// majorant M / prod(1 - x_i / d) at polydisk ratio r/d.
inline double tail_bound(double bound, double ratio, std::size_t n, int cap)
{
    require(ratio >= 0.0 && ratio < 1.0, "tail_bound: ratio must lie in [0, 1)");
    if (ratio == 0.0 || bound == 0.0) {
        return 0.0;
    }
    // Summing the tail directly avoids cancellation for small ratios.
    double sum = 0.0;
    double term = detail::count_of_order(n, cap + 1) * std::pow(ratio, cap + 1);
    for (int k = cap + 1; k < cap + 100000; ++k) {
        sum += term;
        const double next = term * ratio * (k + static_cast<double>(n)) / (k + 1.0);
        if (next < 1e-18 * sum) {
            return bound * sum;
        }
        term = next;
    }
    double head = 0.0;
    for (int k = 0; k <= cap; ++k) {
        head += detail::count_of_order(n, k) * std::pow(ratio, k);
    }
    return bound * std::max(0.0, std::pow(1.0 - ratio, -static_cast<double>(n)) - head);
}

struct Evaluation {
    Complex value;
    double tail = 0.0;
};

// Truncated sum at z and a rigorous bound on the omitted tail.
inline Evaluation evaluate(const TaylorGerm &g, const CPoint &z)
{
    require(g.envelope().has_value(), "evaluate: germ has no envelope");
    const auto &env = *g.envelope();
    const double r = polydisk_dist(z, g.center());
    if (r >= env.radius) {
        throw OutsideEnvelope("evaluate: point outside the certified polydisk");
    }
    const auto pw = detail::powers(z - g.center(), g.degree_cap());
    const auto &idx = g.indices();
    Complex sum = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        Complex mono = g.coeffs()[i];
        for (std::size_t v = 0; v < g.dim(); ++v) {
            mono *= pw[v][static_cast<std::size_t>(idx[i][v])];
        }
        sum += mono;
    }
    return {sum, tail_bound(env.bound, r / env.radius, g.dim(), g.degree_cap())};
}

// Envelope from samples of |f| on the distinguished boundary of a polydisk of
// radius d; `slack_rel`/`slack_abs` account for what the sampling may miss.
inline Envelope cauchy_certificate(std::span<const Complex> values, double d, double slack_rel = 0.0,
                                   double slack_abs = 0.0)
{
    require(!values.empty(), "cauchy_certificate: no samples");
    require(d > 0.0, "cauchy_certificate: radius must be positive");
    require(slack_rel >= 0.0 && slack_abs >= 0.0, "cauchy_certificate: slack must be nonnegative");
    double m = 0.0;
    for (const auto &v : values) {
        m = std::max(m, std::abs(v));
    }
    return {m * (1.0 + slack_rel) + slack_abs, d};
}

// M (d+ / (d+ - r))^n: bound for |f| at polydisk distance r from the center.
inline double majorant_bound(double bound, double dplus, double r, std::size_t n)
{
    require(r >= 0.0, "majorant_bound: r must be nonnegative");
    if (r >= dplus) {
        throw OutsideEnvelope("majorant_bound: r must be smaller than the envelope radius");
    }
    return bound * std::pow(dplus / (dplus - r), static_cast<double>(n));
}

// Re-expansion of the truncated polynomial at q. The truncation is exact for a
// polynomial of degree N, so only the envelope degrades: (majorant, d - rho).
inline TaylorGerm recenter(const TaylorGerm &g, const CPoint &q)
{
    require(g.envelope().has_value(), "recenter: germ has no envelope");
    const auto &env = *g.envelope();
    const double rho = polydisk_dist(q, g.center());
    if (rho >= env.radius) {
        throw OutsideEnvelope("recenter: new center outside the certified polydisk");
    }
    if (rho == 0.0) {
        return g;
    }
    const int cap = g.degree_cap();
    const auto &idx = g.indices();
    const auto pw = detail::powers(q - g.center(), cap);
    std::vector<std::vector<double>> binom(static_cast<std::size_t>(cap) + 1,
                                           std::vector<double>(static_cast<std::size_t>(cap) + 1, 0.0));
    for (int a = 0; a <= cap; ++a) {
        for (int b = 0; b <= a; ++b) {
            binom[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = detail::binomial(a, b);
        }
    }
    std::vector<Complex> out(idx.size(), Complex(0.0));
    const auto n = g.dim();
    for (std::size_t mi = 0; mi < idx.size(); ++mi) {
        const auto &m = idx[mi];
        Complex acc = 0.0;
        for (std::size_t ki = mi; ki < idx.size(); ++ki) {
            const auto &k = idx[ki];
            Complex term = g.coeffs()[ki];
            bool dominated = true;
            for (std::size_t v = 0; v < n; ++v) {
                if (k[v] < m[v]) {
                    dominated = false;
                    break;
                }
                term *= binom[static_cast<std::size_t>(k[v])][static_cast<std::size_t>(m[v])] *
                        pw[v][static_cast<std::size_t>(k[v] - m[v])];
            }
            if (dominated) {
                acc += term;
            }
        }
        out[mi] = acc;
    }
    const Envelope next{majorant_bound(env.bound, env.radius, rho, n), env.radius - rho};
    return TaylorGerm(q, cap, std::move(out), next);
}

// Coefficient distance between two germs after recentering both to the
// midpoint of their centers. Orders are weighted by w^|m| with w the common
// certified radius capped at 1, so that truncation noise in high orders of
// small germs does not dominate.
inline double germ_separation(const TaylorGerm &g1, const TaylorGerm &g2)
{
    require(g1.dim() == g2.dim(), "germ_separation: dimension mismatch");
    require(g1.envelope() && g2.envelope(), "germ_separation: both germs need envelopes");
    const CPoint mid = lerp(g1.center(), g2.center(), 0.5);
    const double rho1 = polydisk_dist(mid, g1.center());
    const double rho2 = polydisk_dist(mid, g2.center());
    if (rho1 >= g1.envelope()->radius || rho2 >= g2.envelope()->radius) {
        throw OutsideEnvelope("germ_separation: centers not mutually within envelopes");
    }
    const auto h1 = recenter(g1, mid);
    const auto h2 = recenter(g2, mid);
    const int cap = std::min(g1.degree_cap(), g2.degree_cap());
    const double w = std::min(1.0, std::min(h1.envelope()->radius, h2.envelope()->radius));
    // graded order does not depend on the cap, so the smaller set is a prefix of both
    const auto &idx = MultiIndexSet::get(g1.dim(), cap);
    std::vector<double> wpow(static_cast<std::size_t>(cap) + 1, 1.0);
    for (std::size_t k = 1; k < wpow.size(); ++k) {
        wpow[k] = wpow[k - 1] * w;
    }
    double sep = 0.0;
    for (std::size_t i = 0; i < idx->size(); ++i) {
        const double diff = std::abs(h1.coeffs()[i] - h2.coeffs()[i]);
        sep = std::max(sep, diff * wpow[static_cast<std::size_t>(idx->order_of(i))]);
    }
    return sep;
}

// Taylor coefficients of f at `center` by the trapezoidal rule on the
// polycircle of the given radius (nodes_per_circle nodes per variable); the
// envelope is the Cauchy certificate of the sampled values.
inline TaylorGerm germ_from_samples(const std::function<Complex(const CPoint &)> &f, const CPoint &center,
                                    double radius, int degree_cap, int nodes_per_circle = 0, double slack_rel = 0.0)
{
    require(radius > 0.0, "germ_from_samples: radius must be positive");
    if (nodes_per_circle <= 0) {
        nodes_per_circle = 4 * std::max(degree_cap, 1);
    }
    require(nodes_per_circle > degree_cap, "germ_from_samples: need more nodes than the degree cap");
    const auto n = center.dim();
    const auto K = static_cast<std::size_t>(nodes_per_circle);
    std::vector<Complex> roots_of_unity(K);
    for (std::size_t j = 0; j < K; ++j) {
        roots_of_unity[j] = std::polar(1.0, 2 * pi * static_cast<double>(j) / static_cast<double>(K));
    }
    std::size_t total = 1;
    for (std::size_t v = 0; v < n; ++v) {
        total *= K;
    }
    // Sample on the torus; node multi-index j encoded in base K.
    std::vector<Complex> values(total);
    std::vector<Complex> z(n);
    for (std::size_t lin = 0; lin < total; ++lin) {
        std::size_t rest = lin;
        for (std::size_t v = 0; v < n; ++v) {
            z[v] = center[v] + radius * roots_of_unity[rest % K];
            rest /= K;
        }
        values[lin] = f(CPoint(z));
    }
    // Separable DFT: transform one variable at a time, keeping frequencies <= N.
    const auto cap = static_cast<std::size_t>(degree_cap);
    std::vector<Complex> cur = values;
    std::vector<std::size_t> extent(n, K);
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t inner = 1;
        for (std::size_t u = 0; u < v; ++u) {
            inner *= extent[u];
        }
        std::size_t outer = 1;
        for (std::size_t u = v + 1; u < n; ++u) {
            outer *= extent[u];
        }
        std::vector<Complex> next(inner * (cap + 1) * outer, Complex(0.0));
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t i = 0; i < inner; ++i) {
                for (std::size_t m = 0; m <= cap; ++m) {
                    Complex acc = 0.0;
                    for (std::size_t j = 0; j < K; ++j) {
                        acc += cur[i + inner * (j + K * o)] * std::conj(roots_of_unity[(m * j) % K]);
                    }
                    next[i + inner * (m + (cap + 1) * o)] = acc / (static_cast<double>(K) * std::pow(radius, m));
                }
            }
        }
        cur = std::move(next);
        extent[v] = cap + 1;
    }
    const auto idx = MultiIndexSet::get(n, degree_cap);
    std::vector<Complex> coeffs(idx->size());
    for (std::size_t i = 0; i < idx->size(); ++i) {
        std::size_t lin = 0;
        std::size_t stride = 1;
        for (std::size_t v = 0; v < n; ++v) {
            lin += static_cast<std::size_t>((*idx)[i][v]) * stride;
            stride *= cap + 1;
        }
        coeffs[i] = cur[lin];
    }
    // Rounding in the transform can nudge a coefficient past max|f|; the slack
    // below covers that at the level of the quadrature's own accuracy.
    const auto env = cauchy_certificate(values, radius, slack_rel + 1e-12);
    return TaylorGerm(center, degree_cap, std::move(coeffs), env);
}

// Germs of a branch of sqrt(g(z)) for a univariate polynomial g: the analytic
// element used to regenerate a germ after each continuation step. The envelope
// radius is `radius_fraction` times the distance to the nearest zero of g.
class SqrtGermSource
{
public:
    explicit SqrtGermSource(UPoly g, int degree_cap = 24, double radius_fraction = 0.5, double slack_rel = 1e-2)
        : m_g(std::move(g)), m_cap(degree_cap), m_fraction(radius_fraction), m_slack(slack_rel)
    {
        require(effective_degree(m_g) >= 1, "SqrtGermSource: g must be non-constant");
        require(radius_fraction > 0.0 && radius_fraction < 1.0, "SqrtGermSource: radius fraction must lie in (0, 1)");
        for (const auto &r : roots(m_g)) {
            m_zeros.push_back(r.value);
        }
    }

    [[nodiscard]] const UPoly &radicand() const noexcept { return m_g; }
    [[nodiscard]] std::span<const Complex> branch_points() const noexcept { return m_zeros; }
    [[nodiscard]] int degree_cap() const noexcept { return m_cap; }

    [[nodiscard]] double branch_distance(Complex z) const
    {
        double d = std::numeric_limits<double>::infinity();
        for (const auto &b : m_zeros) {
            d = std::min(d, std::abs(z - b));
        }
        return d;
    }

    // Both values of sqrt(g(z)), principal first.
    [[nodiscard]] std::pair<Complex, Complex> values(Complex z) const
    {
        const Complex s = std::sqrt(horner(m_g, z));
        return {s, -s};
    }

    // Germ at z0 of the branch whose value is nearest to `hint`.
    [[nodiscard]] TaylorGerm germ(Complex z0, Complex hint) const
    {
        const double dist = branch_distance(z0);
        if (!(dist > 0.0)) {
            throw OutsideEnvelope("SqrtGermSource: center on a branch point");
        }
        const double d = m_fraction * dist;
        const auto [s_plus, s_minus] = values(z0);
        const Complex s0 = std::abs(s_plus - hint) <= std::abs(s_minus - hint) ? s_plus : s_minus;

        const auto shifted = taylor_shift(m_g, z0);
        const auto cap = static_cast<std::size_t>(m_cap);
        std::vector<Complex> s(cap + 1, Complex(0.0));
        s[0] = s0;
        for (std::size_t k = 1; k <= cap; ++k) {
            Complex acc = k < shifted.size() ? shifted[k] : Complex(0.0);
            for (std::size_t j = 1; j < k; ++j) {
                acc -= s[j] * s[k - j];
            }
            s[k] = acc / (2.0 * s0);
        }
        const auto K = 4 * std::max<std::size_t>(cap, 1);
        std::vector<Complex> samples(K);
        for (std::size_t j = 0; j < K; ++j) {
            const Complex z = z0 + std::polar(d, 2 * pi * static_cast<double>(j) / static_cast<double>(K));
            samples[j] = std::sqrt(std::abs(horner(m_g, z)));
        }
        const auto env = cauchy_certificate(samples, d, m_slack);
        return TaylorGerm(CPoint{z0}, m_cap, std::move(s), env);
    }

private:
    UPoly m_g;
    int m_cap;
    double m_fraction;
    double m_slack;
    std::vector<Complex> m_zeros;
};

} // namespace kontin

#endif
