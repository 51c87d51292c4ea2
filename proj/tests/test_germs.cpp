#include <catch2/catch_amalgamated.hpp>

#include <kontin/germs.hpp>

#include <cmath>
#include <random>
#include <vector>

using namespace kontin;

namespace
{

// Germ of 1/(1-z) at 0: a_m = 1, bounded by 1/(1-d) on |z| <= d.
TaylorGerm geometric_germ(int cap, double d)
{
    std::vector<Complex> c(static_cast<std::size_t>(cap) + 1, Complex(1.0));
    return TaylorGerm(CPoint{0.0}, cap, c, Envelope{1.0 / (1.0 - d), d});
}

// binomial(1/2, m) by the product formula
double half_binomial(int m)
{
    double r = 1.0;
    for (int k = 0; k < m; ++k) {
        r *= (0.5 - k) / (k + 1.0);
    }
    return r;
}

} // namespace

TEST_CASE("evaluate at the center returns a_0 with zero tail", "[germs]")
{
    const auto g = geometric_germ(24, 0.5);
    const auto e = evaluate(g, CPoint{0.0});
    CHECK(e.value == Complex(1.0));
    CHECK(e.tail == 0.0);
}

TEST_CASE("evaluate 1/(1-z) at 1/4 within the tail bound", "[germs]")
{
    std::vector<Complex> c(25, Complex(1.0));
    const TaylorGerm g(CPoint{0.0}, 24, c, Envelope{2.0, 0.5});
    const auto e = evaluate(g, CPoint{0.25});
    CHECK(std::abs(e.value - 4.0 / 3.0) <= e.tail);
    // tail = 2 * sum_{m > 24} 2^{-m}
    CHECK(e.tail == Catch::Approx(2.0 * std::pow(2.0, -24)).epsilon(1e-12));
    REQUIRE_THROWS_AS(evaluate(g, CPoint{0.5}), OutsideEnvelope);
}

TEST_CASE("constant germ evaluates exactly", "[germs]")
{
    const auto g = TaylorGerm::constant(CPoint{1.0, 2.0}, 6, Complex(3.0, -1.0), Envelope{std::abs(Complex(3, -1)), 2.0});
    const auto e = evaluate(g, CPoint{Complex(1.5, 0.5), 1.2});
    CHECK(e.value == Complex(3.0, -1.0));
}

TEST_CASE("germ construction enforces the Cauchy envelope", "[germs]")
{
    std::vector<Complex> c{1.0, 3.0};
    REQUIRE_THROWS_AS(TaylorGerm(CPoint{0.0}, 1, c, Envelope{1.0, 1.0}), InvalidArgument);
    REQUIRE_THROWS_AS(TaylorGerm(CPoint{0.0}, 2, c), InvalidArgument);
    REQUIRE_NOTHROW(TaylorGerm(CPoint{0.0}, 1, c, Envelope{3.0, 1.0}));
}

TEST_CASE("tail bound vanishes at r = 0 and grows with r", "[germs][property]")
{
    for (std::size_t n = 1; n <= 3; ++n) {
        double prev = 0.0;
        CHECK(tail_bound(2.0, 0.0, n, 8) == 0.0);
        for (int i = 1; i < 99; ++i) {
            const double t = tail_bound(2.0, i / 100.0, n, 8);
            CHECK(t >= prev);
            prev = t;
        }
    }
    // n = 1 closed form: M r^{N+1} / (1 - r)
    CHECK(tail_bound(1.0, 0.5, 1, 10) == Catch::Approx(std::pow(0.5, 11) / 0.5).epsilon(1e-12));
}

TEST_CASE("cauchy_certificate examples", "[germs]")
{
    std::vector<Complex> samples;
    const int K = 64;
    for (int j = 0; j < K; ++j) {
        samples.push_back(std::polar(1.0, 2 * pi * j / K));
    }
    // f == c
    std::vector<Complex> constant(K, Complex(0.0, -2.0));
    CHECK(cauchy_certificate(constant, 0.3).bound == 2.0);
    // f(z) = z on the unit circle
    const auto env = cauchy_certificate(samples, 1.0);
    CHECK(env.bound == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(env.radius == 1.0);
    REQUIRE_THROWS_AS(cauchy_certificate(samples, 0.0), InvalidArgument);
    REQUIRE_THROWS_AS(cauchy_certificate(std::vector<Complex>{}, 1.0), InvalidArgument);

    // f(z) = 1/(2 - z) on |z| = 1: M = 1 and a_m = 2^{-m-1} <= 1
    const auto g = germ_from_samples([](const CPoint &z) { return 1.0 / (2.0 - z[0]); }, CPoint{0.0}, 1.0, 20);
    CHECK(g.envelope()->bound == Catch::Approx(1.0).epsilon(1e-11));
    for (int m = 0; m <= 20; ++m) {
        CHECK(std::abs(g.coeff({m}) - std::pow(2.0, -m - 1)) < 1e-12);
        CHECK(std::abs(g.coeff({m})) <= g.envelope()->bound);
    }
}

TEST_CASE("majorant_bound examples", "[germs]")
{
    CHECK(majorant_bound(3.0, 2.0, 0.0, 2) == 3.0);
    CHECK(majorant_bound(1.0, 2.0, 1.0, 3) == 8.0);
    REQUIRE_THROWS_AS(majorant_bound(1.0, 2.0, 2.0, 1), OutsideEnvelope);
}

TEST_CASE("majorant dominates |sum| + tail for random certified germs", "[germs][property]")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
        const int cap = 6;
        const double d = 0.5 + std::abs(u(rng));
        const double M = 1.0 + std::abs(u(rng));
        const auto idx = MultiIndexSet::get(n, cap);
        std::vector<Complex> c(idx->size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] = std::polar(M * std::abs(u(rng)), pi * u(rng)) / std::pow(d, idx->order_of(i));
        }
        std::vector<Complex> center(n), z(n);
        for (std::size_t v = 0; v < n; ++v) {
            center[v] = Complex(u(rng), u(rng));
            z[v] = center[v] + std::polar(0.95 * d * std::abs(u(rng)), pi * u(rng));
        }
        const TaylorGerm g(CPoint(center), cap, c, Envelope{M, d});
        const auto e = evaluate(g, CPoint(z));
        const double r = polydisk_dist(CPoint(z), g.center());
        CHECK(std::abs(e.value) + e.tail <= majorant_bound(M, d, r, n) * (1 + 1e-12));
    }
}

TEST_CASE("recenter at the center is the identity", "[germs]")
{
    const auto g = geometric_germ(12, 0.9);
    const auto h = recenter(g, CPoint{0.0});
    CHECK(std::vector<Complex>(h.coeffs().begin(), h.coeffs().end()) ==
          std::vector<Complex>(g.coeffs().begin(), g.coeffs().end()));
    REQUIRE_THROWS_AS(recenter(g, CPoint{0.9}), OutsideEnvelope);
}

TEST_CASE("recentering 1/(1-z) to 1/2 reproduces 2^{m+1}", "[germs]")
{
    const int cap = 80;
    const double d = 0.9;
    const double M = 1.0 / (1.0 - d);
    const auto g = geometric_germ(cap, d);
    const auto h = recenter(g, CPoint{0.5});
    REQUIRE(h.envelope()->radius == Catch::Approx(0.4));
    REQUIRE(h.envelope()->bound == Catch::Approx(majorant_bound(M, d, 0.5, 1)));
    for (int m = 0; m <= 10; ++m) {
        // omitted part of sum_k C(k,m) rho^{k-m} a_k, bounded through the envelope
        double omitted = 0.0;
        for (int k = cap + 1; k < cap + 2000; ++k) {
            omitted += M * std::exp(std::lgamma(k + 1.0) - std::lgamma(m + 1.0) - std::lgamma(k - m + 1.0)) *
                       std::pow(0.5, k - m) / std::pow(d, k);
        }
        const double exact = std::pow(2.0, m + 1);
        CHECK(std::abs(h.coeff({m}) - exact) <= omitted + 1e-12 * exact);
    }
}

TEST_CASE("recenter round trip reproduces the coefficients", "[germs]")
{
    const auto g = germ_from_samples([](const CPoint &z) { return 1.0 / ((1.7 - z[0]) * (2.0 + z[1])); },
                                     CPoint{0.0, 0.0}, 1.0, 10);
    const auto there = recenter(g, CPoint{Complex(0.2, 0.1), Complex(-0.1, 0.15)});
    const auto back = recenter(there, CPoint{0.0, 0.0});
    double worst = 0.0;
    for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
        worst = std::max(worst, std::abs(g.coeffs()[i] - back.coeffs()[i]));
    }
    CHECK(worst < 1e-10);
    CHECK(germ_separation(g, back) < 1e-8);
}

TEST_CASE("evaluation is compatible with recentering", "[germs][property]")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 2);
        std::vector<Complex> poles(n);
        for (auto &p : poles) {
            p = std::polar(1.6 + 0.5 * std::abs(u(rng)), pi * u(rng));
        }
        auto f = [poles](const CPoint &z) {
            Complex v = 1.0;
            for (std::size_t i = 0; i < z.dim(); ++i) {
                v /= poles[i] - z[i];
            }
            return v;
        };
        // enough nodes that quadrature aliasing (~(1/1.6)^K) is far below the tails
        const auto g = germ_from_samples(f, CPoint(std::vector<Complex>(n, 0.0)), 1.0, n == 1 ? 24 : 12, 128);
        std::vector<Complex> q(n), z(n);
        for (std::size_t v = 0; v < n; ++v) {
            q[v] = std::polar(0.35 * std::abs(u(rng)), pi * u(rng));
            z[v] = q[v] + std::polar(0.3 * std::abs(u(rng)), pi * u(rng));
        }
        const auto h = recenter(g, CPoint(q));
        const auto e1 = evaluate(g, CPoint(z));
        const auto e2 = evaluate(h, CPoint(z));
        CHECK(std::abs(e1.value - e2.value) <= e1.tail + e2.tail + 1e-13);
        CHECK(std::abs(e1.value - f(CPoint(z))) <= e1.tail + 1e-13);
        CHECK(h.envelope_violation() <= 0.0);
    }
}

TEST_CASE("contour quadrature matches closed-form coefficients", "[germs]")
{
    const auto geo = germ_from_samples([](const CPoint &z) { return 1.0 / (1.0 - z[0]); }, CPoint{0.0}, 0.7, 24);
    const auto root = germ_from_samples([](const CPoint &z) { return std::sqrt(1.0 + z[0]); }, CPoint{0.0}, 0.7, 24);
    for (int m = 0; m <= 20; ++m) {
        CHECK(std::abs(geo.coeff({m}) - 1.0) < 1e-10);
        CHECK(std::abs(root.coeff({m}) - half_binomial(m)) < 1e-10);
    }
    // first derivative against a central difference
    const double h = 1e-5;
    const Complex fd = (std::sqrt(1.0 + h) - std::sqrt(1.0 - h)) / (2 * h);
    CHECK(std::abs(root.coeff({1}) - fd) < 1e-9);

    // three variables, total degree 12
    const auto tri = germ_from_samples(
        [](const CPoint &z) { return 1.0 / ((2.0 - z[0]) * (2.0 - z[1]) * (2.0 - z[2])); }, CPoint{0.0, 0.0, 0.0}, 1.0,
        12);
    for (std::size_t i = 0; i < tri.indices().size(); ++i) {
        const auto &m = tri.indices()[i];
        const double exact = std::pow(2.0, -(m[0] + 1)) * std::pow(2.0, -(m[1] + 1)) * std::pow(2.0, -(m[2] + 1));
        CHECK(std::abs(tri.coeffs()[i] - exact) < 1e-12);
    }
}

TEST_CASE("germ_separation examples", "[germs]")
{
    const SqrtGermSource src({1.0, 1.0});
    const auto plus = src.germ(0.0, 1.0);
    const auto minus = src.germ(0.0, -1.0);
    CHECK(plus.value() == Complex(1.0));
    CHECK(minus.value() == Complex(-1.0));
    CHECK(germ_separation(plus, plus) == 0.0);
    CHECK(germ_separation(plus, minus) >= 2.0);
    for (int m = 0; m <= 20; ++m) {
        CHECK(std::abs(plus.coeff({m}) - half_binomial(m)) < 1e-14);
    }
    // nearby centers on the same branch
    const auto near = src.germ(0.05, 1.0);
    CHECK(germ_separation(plus, near) < 1e-6);
    CHECK(germ_separation(minus, near) >= 2.0 - 1e-6);
    // too far apart
    const auto far = src.germ(5.0, 1.0);
    REQUIRE_THROWS_AS(germ_separation(plus, far), OutsideEnvelope);
}

TEST_CASE("SqrtGermSource germs satisfy their envelope", "[germs][property]")
{
    const SqrtGermSource src({0.0, 0.0, 1.0, 1.0}); // z^3 + z^2 with a double zero at 0
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Complex z(u(rng), u(rng));
        if (src.branch_distance(z) < 1e-3) {
            continue;
        }
        const auto g = src.germ(z, 1.0);
        CHECK(g.envelope_violation() <= 0.0);
        CHECK(std::abs(g.value() * g.value() - (z * z * z + z * z)) < 1e-10 * (1 + std::abs(z * z * z)));
    }
    REQUIRE_THROWS_AS(src.germ(-1.0, 1.0), OutsideEnvelope);
}
