#include <catch2/catch_amalgamated.hpp>

#include <kontin/fixtures.hpp>

#include <cmath>
#include <random>
#include <set>

using namespace kontin;

TEST_CASE("phi examples", "[fixtures]")
{
    const NodalConstants c;
    CHECK(polydisk_dist(phi(c, 1.0, 0.0), CPoint{0.0, 0.0, 0.0}) == 0.0);
    CHECK(polydisk_dist(phi(c, -1.0, 0.0), CPoint{0.0, 0.0, 0.0}) == 0.0);
    CHECK(polydisk_dist(phi(c, 0.0, c.eps), CPoint{-1.0, 0.0, 0.0}) == 0.0);
    REQUIRE_THROWS_AS(phi(c, 11.0, 0.0), InvalidArgument);
    REQUIRE_THROWS_AS(phi(c, 1.0, 2 * c.eps), InvalidArgument);
    REQUIRE_THROWS_AS(phi(c, 1.0, -c.eps), InvalidArgument);
}

TEST_CASE("constants are validated", "[fixtures]")
{
    CHECK_NOTHROW(NodalConstants{}.validate());
    REQUIRE_THROWS_AS((NodalConstants{9.0, 0.1, 0.001}.validate()), InvalidArgument);
    REQUIRE_THROWS_AS((NodalConstants{10.0, 0.1, 0.01}.validate()), InvalidArgument);
    REQUIRE_THROWS_AS((NodalConstants{10.0, 0.0, 0.001}.validate()), InvalidArgument);
    auto fam = CurveFamily::param_3d(NodalConstants{});
    fam.t_max = 1.0;
    REQUIRE_THROWS_AS(fam.validate(), InvalidArgument);
}

TEST_CASE("node_check reports the transverse double point", "[fixtures]")
{
    const auto r = node_check();
    CHECK(r.residual < 1e-12);
    CHECK(r.tangents[0][0] == Complex(2.0));
    CHECK(r.tangents[0][1] == Complex(2.0));
    CHECK(r.tangents[1][0] == Complex(-2.0));
    CHECK(r.tangents[1][1] == Complex(2.0));
    CHECK(r.determinant == Complex(8.0));
    CHECK(r.transverse());
}

TEST_CASE("cone_contains examples", "[fixtures]")
{
    const double delta = 0.1;
    const Complex lambda = std::polar(3.0, 0.7);
    CHECK(cone_contains(lambda, delta, 0.02 * lambda));
    CHECK_FALSE(cone_contains(lambda, delta, -0.02 * lambda));
    CHECK_FALSE(cone_contains(lambda, delta, std::polar(delta, 0.7)));
    CHECK(cone_contains(0.0, delta, 0.0));
    REQUIRE_THROWS_AS(cone_contains(0.0, delta, 0.01), InvalidArgument);
    // rotated just inside / outside the aperture
    CHECK(cone_contains(lambda, delta, std::polar(0.05, 0.7 + 0.99 * std::asin(delta))));
    CHECK_FALSE(cone_contains(lambda, delta, std::polar(0.05, 0.7 + 1.01 * std::asin(delta))));
}

TEST_CASE("cone claim holds on the whole grid", "[fixtures]")
{
    const NodalConstants c;
    const auto grid = make_polar_grid(c.R, GridSpec{});
    for (std::size_t j = 0; j < grid.radii.size(); ++j) {
        for (int k = 0; k < grid.angle_counts[j]; ++k) {
            const Complex lambda = grid.node(j, k);
            for (int i = 1; i <= 20; ++i) {
                const double t = c.eps * i / 20.0;
                REQUIRE(cone_contains(lambda, c.delta, phi(c, lambda, t)[2]));
            }
        }
    }
}

TEST_CASE("algebraic_fiber examples and residual", "[fixtures]")
{
    auto [a, b] = algebraic_fiber(0.0, 0.0);
    CHECK(a == Complex(0.0));
    CHECK(b == Complex(0.0));
    std::tie(a, b) = algebraic_fiber(0.0, -0.25);
    CHECK(std::abs(a - Complex(0.0, 0.5)) < 1e-15);
    CHECK(std::abs(b - Complex(0.0, -0.5)) < 1e-15);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 500; ++i) {
        const Complex z(u(rng), u(rng));
        const double t = u(rng) * 0.01;
        const auto [w1, w2] = algebraic_fiber(z, t);
        const Complex g = z * z * z + z * z + t;
        CHECK(std::abs(w1 * w1 - g) < 1e-12 * std::max(1.0, std::abs(g)));
        CHECK(std::abs(w2 * w2 - g) < 1e-12 * std::max(1.0, std::abs(g)));
    }
}

TEST_CASE("polar grid layout", "[fixtures]")
{
    const auto g = make_polar_grid(10.0, GridSpec{});
    REQUIRE(g.radii.back() == 10.0);
    CHECK(std::find(g.radii.begin(), g.radii.end(), 1.0) != g.radii.end());
    for (std::size_t j = 0; j < g.radii.size(); ++j) {
        CHECK(g.angle_counts[j] % 2 == 0);
        CHECK(g.boundary_angles() % g.angle_counts[j] == 0);
        if (j > 0) {
            CHECK(g.radii[j] > g.radii[j - 1]);
        }
    }
}

TEST_CASE("sample_family on the parameterized family", "[fixtures]")
{
    const NodalConstants c;
    const auto fam = CurveFamily::param_3d(c);
    const auto s0 = sample_family(fam, 0.0);
    s0.set.validate();
    CHECK(set_dist(std::vector<CPoint>{CPoint{0.0, 0.0, 0.0}}, s0.set.closure_samples) <= s0.set.mesh);
    // node samples coincide exactly
    CHECK(set_dist(std::vector<CPoint>{CPoint{0.0, 0.0, 0.0}}, s0.set.closure_samples) == 0.0);
    for (auto i : s0.boundary_of) {
        CHECK(std::abs(std::abs(s0.params[i]) - c.R) < 1e-12);
    }
    for (const auto &p : s0.set.closure_samples) {
        CHECK(p[2] == Complex(0.0));
    }
    REQUIRE_THROWS_AS(sample_family(fam, -0.001), InvalidArgument);
}

TEST_CASE("pair_hausdorff of C_{1/k} against C_0 obeys the parameterization bound", "[fixtures]")
{
    const NodalConstants c;
    const auto s0 = sample_nodal(c, 0.0);
    for (int k : {4, 16, 64, 256}) {
        const double t = 1.0 / k;
        const auto sk = sample_nodal(c, t, GridSpec{}, true);
        const auto [dc, db] = pair_hausdorff(sk.set, s0.set);
        // direct oracle: same grid, so the offset is |t lambda| <= R t
        double direct = 0.0;
        for (std::size_t i = 0; i < sk.params.size(); ++i) {
            direct = std::max(direct, polydisk_dist(sk.set.closure_samples[i], s0.set.closure_samples[i]));
        }
        CHECK(direct <= c.R * t + 1e-12);
        CHECK(dc <= direct);
        CHECK(db <= direct);
        CHECK(dc <= c.R * t + 2 * s0.set.mesh);
    }
}

TEST_CASE("algebraic samples satisfy their equation and stay close to C_0", "[fixtures]")
{
    const NodalConstants c;
    const auto s0 = sample_nodal(c, 0.0);
    for (double t : {-c.eps, -c.eps / 4, -1e-6}) {
        const auto s = sample_nodal(c, t);
        for (const auto &p : s.set.closure_samples) {
            const Complex g = p[0] * p[0] * p[0] + p[0] * p[0] + t;
            REQUIRE(std::abs(p[1] * p[1] - g) < 1e-12 * std::max(1.0, std::abs(g)));
            REQUIRE(p[2] == Complex(0.0));
        }
        const auto [dc, db] = pair_hausdorff(s.set, s0.set);
        CHECK(dc <= std::sqrt(std::abs(t)) + 1e-12);
        CHECK(db <= dc);
    }
}

TEST_CASE("the node is the only self-intersection of Phi_0", "[fixtures]")
{
    const auto g = make_polar_grid(10.0, GridSpec{});
    std::vector<Complex> params;
    for (std::size_t j = 0; j < g.radii.size(); ++j) {
        for (int k = 0; k < g.angle_counts[j]; ++k) {
            params.push_back(g.node(j, k));
        }
    }
    // dense patch around +-1 and a coarse uniform scatter elsewhere
    for (int a = -10; a <= 10; ++a) {
        for (int b = -10; b <= 10; ++b) {
            params.emplace_back(1.0 + 0.01 * a, 0.01 * b);
            params.emplace_back(-1.0 + 0.01 * a, 0.01 * b);
        }
    }
    const auto hits = find_self_intersections(params, 0.05, 0.5);
    REQUIRE_FALSE(hits.empty());
    for (const auto &[l, m] : hits) {
        const bool near_node = (std::abs(l - 1.0) < 0.1 && std::abs(m + 1.0) < 0.1) ||
                               (std::abs(l + 1.0) < 0.1 && std::abs(m - 1.0) < 0.1);
        CHECK(near_node);
    }
}

TEST_CASE("quadric fixture", "[fixtures]")
{
    const auto [a, b] = quadric_fiber(0.0, -0.25);
    CHECK(std::abs(a - Complex(0.0, 0.5)) < 1e-15);
    CHECK(std::abs(b + a) == 0.0);
    CHECK(a.real() == 0.0);

    for (double t : {-0.5, -0.25, -0.01, 0.0, 0.01, 0.25, 0.5}) {
        const auto s = sample_family(CurveFamily::quadric_2d(NodalConstants{}), t);
        for (const auto &p : s.set.closure_samples) {
            REQUIRE(std::abs(p[0] * p[0] + p[1] * p[1] - t) < 1e-12);
            REQUIRE(std::norm(p[0]) + std::norm(p[1]) <= 1.0 + 1e-12);
        }
        for (const auto &p : s.set.boundary_samples) {
            REQUIRE(std::abs(std::norm(p[0]) + std::norm(p[1]) - 1.0) < 1e-12);
        }
        const auto r = removability_report(t);
        CHECK(r.boundary_in_compact);
        CHECK(r.has_real_points == (t >= 0.0));
        if (t < 0.0) {
            // |Im z|^2 >= -t on C_t, since |Re z|^2 - |Im z|^2 = t
            CHECK(r.min_imag_norm_sq >= -t - 1e-12);
        }
    }
}

TEST_CASE("essential singularity fixture", "[fixtures]")
{
    CHECK(essential_fn(Complex(0.3, 0.2), 0.0) == Complex(1.0));
    REQUIRE_THROWS_AS(essential_fn(0.0, 1.0), SingularLocus);
    for (double s : {0.5, 0.1, 0.01}) {
        CHECK(std::abs(std::abs(essential_fn(Complex(0.0, s), 1.0)) - 1.0) < 1e-12);
        CHECK(std::abs(essential_log_modulus(s, 1.0) - 1.0 / s) < 1e-12 / s);
    }
    CHECK(std::isinf(essential_threshold(1)));
    CHECK(std::isinf(essential_threshold(2)));
    for (int k = 3; k <= 10; ++k) {
        const double s0 = essential_threshold(k);
        REQUIRE(s0 > 0.0);
        REQUIRE(s0 < 1.0 / k);
        // the threshold is a root of 1/s = k log(1/s)
        CHECK(std::abs(1.0 / s0 - k * std::log(1.0 / s0)) < 1e-8 / s0);
        for (double f : {0.999, 0.5, 0.1, 1e-3}) {
            const double s = s0 * f;
            CHECK(essential_log_modulus(s, 1.0) > k * std::log(1.0 / s));
        }
    }
}

TEST_CASE("max_modulus_report", "[fixtures]")
{
    const NodalConstants c;
    const auto s = sample_nodal(c, 1.0 / 16, GridSpec{}, true);
    auto constant = [](const CPoint &) { return Complex(2.0, 1.0); };
    const auto rc = max_modulus_report(s.set, constant, 0.0);
    CHECK(rc.ok);
    CHECK(rc.max_interior == rc.max_boundary);
    auto z1 = [](const CPoint &p) { return p[0]; };
    CHECK(max_modulus_report(s.set, z1, 1.0).ok);

    // negative control: a function peaking inside fails
    auto bump = [](const CPoint &p) { return Complex(1.0) / (Complex(0.01) + p[0] * std::conj(p[0])); };
    CHECK_FALSE(max_modulus_report(s.set, bump, 0.0).ok);
}

TEST_CASE("iterated_max_refine", "[fixtures]")
{
    const std::vector<CPoint> single{{Complex(0.3, 0.1), 2.0}};
    const auto c1 = iterated_max_refine(single);
    REQUIRE(c1.levels.size() == 3);
    for (const auto &lvl : c1.levels) {
        CHECK(lvl.size() == 1);
    }
    CHECK(c1.final_diameter == 0.0);

    // closed bidisk: interior points plus the torus
    std::vector<CPoint> bidisk;
    for (int a = 0; a <= 4; ++a) {
        for (int b = 0; b <= 4; ++b) {
            for (int i = 0; i < 8; ++i) {
                for (int j = 0; j < 8; ++j) {
                    bidisk.emplace_back(std::vector<Complex>{std::polar(a / 4.0, 2 * pi * i / 8), std::polar(b / 4.0, 2 * pi * j / 8)});
                }
            }
        }
    }
    const auto c2 = iterated_max_refine(bidisk);
    for (auto i : c2.levels.back()) {
        CHECK(std::abs(std::abs(bidisk[i][0]) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(bidisk[i][1]) - 1.0) < 1e-12);
    }
    CHECK(c2.levels.back().size() == 64);

    // C_0: the chain ends on boundary samples
    const auto s = sample_nodal(NodalConstants{}, 0.0);
    const auto c3 = iterated_max_refine(s.set.closure_samples);
    const std::set<std::size_t> boundary(s.boundary_of.begin(), s.boundary_of.end());
    for (auto i : c3.levels.back()) {
        CHECK(boundary.count(i) == 1);
    }
}
