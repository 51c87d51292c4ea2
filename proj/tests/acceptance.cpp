// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <kontin/degeneration.hpp>
#include <kontin/envelope.hpp>
#include <kontin/fixtures.hpp>
#include <kontin/geometry.hpp>
#include <kontin/germs.hpp>

using namespace kontin;

namespace
{

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

// Plain double loop over the polydisk metric, independent of the library's search.
double oracle_hausdorff(const std::vector<CPoint> &a, const std::vector<CPoint> &b)
{
    auto side = [](const std::vector<CPoint> &x, const std::vector<CPoint> &y) {
        double sup = 0.0;
        for (const auto &p : x) {
            double inf = std::numeric_limits<double>::infinity();
            for (const auto &q : y) {
                double d = 0.0;
                for (std::size_t i = 0; i < p.dim(); ++i) {
                    d = std::max(d, std::abs(p[i] - q[i]));
                }
                inf = std::min(inf, d);
            }
            sup = std::max(sup, inf);
        }
        return sup;
    };
    return std::max(side(a, b), side(b, a));
}

Outcome hausdorff_suite()
{
    std::mt19937_64 rng(500);
    std::uniform_int_distribution<std::size_t> size(1, 200);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<std::vector<CPoint>> sets(500);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const std::size_t n = 1 + i % 4;
        const auto count = size(rng);
        for (std::size_t k = 0; k < count; ++k) {
            std::vector<Complex> c(n);
            for (auto &v : c) {
                v = Complex(g(rng), g(rng));
            }
            sets[i].emplace_back(std::move(c));
        }
    }
    std::size_t mismatches = 0;
    std::size_t axiom_failures = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto &a = sets[i];
        const auto &b = sets[(i + 4) % sets.size()];
        const auto &c = sets[(i + 8) % sets.size()];
        const double ab = hausdorff_dist(a, b);
        const double ref = oracle_hausdorff(a, b);
        mismatches += (ab != ref) + (hausdorff_dist_indexed(a, b) != ref);
        const bool axioms = hausdorff_dist(a, a) == 0.0 && ab == hausdorff_dist(b, a) && ab > 0.0 &&
                            hausdorff_dist(a, c) <= ab + hausdorff_dist(b, c) + 1e-12;
        axiom_failures += !axioms;
    }
    return {mismatches == 0 && axiom_failures == 0,
            "500 sets; oracle mismatches " + std::to_string(mismatches) + ", axiom failures " + std::to_string(axiom_failures)};
}

Outcome node_fixture()
{
    const auto r = node_check();
    const bool ok = r.residual < 1e-12 && r.tangents[0][0] == Complex(2.0) && r.tangents[0][1] == Complex(2.0) &&
                    r.tangents[1][0] == Complex(-2.0) && r.tangents[1][1] == Complex(2.0) && r.determinant == Complex(8.0);
    return {ok, fmt("residual %.3g, det %.17g", r.residual, r.determinant.real())};
}

Outcome cone_claim()
{
    const NodalConstants c;
    const auto grid = make_polar_grid(c.R, GridSpec{});
    std::size_t checked = 0;
    std::size_t bad = 0;
    for (int i = 1; i <= 20; ++i) {
        const double t = c.eps * i / 20.0;
        for (std::size_t j = 0; j < grid.radii.size(); ++j) {
            for (int k = 0; k < grid.angle_counts[j]; ++k) {
                const Complex lambda = grid.node(j, k);
                if (lambda == Complex(0.0)) {
                    continue;
                }
                ++checked;
                bad += !cone_contains(lambda, c.delta, phi(c, lambda, t)[2]);
            }
        }
    }
    return {bad == 0 && checked > 0, std::to_string(checked) + " (lambda, t) pairs, " + std::to_string(bad) + " outside the cone"};
}

Outcome monodromy_check()
{
    const auto src = tag_source();
    const auto g = src.germ(0.0, 1.0);
    const auto once = continue_tag(src, g, circle_path(-1.0, 1.0, 0.0, 1.0, 64));
    const auto twice = continue_tag(src, g, circle_path(-1.0, 1.0, 0.0, 2.0, 128));
    const double sep_neg = germ_separation(once, g.negated());
    const double sep_twice = germ_separation(twice, g);
    const auto nv = two_values_at_node();
    const double e_plus = std::abs(nv.via_plus - 1.0);
    const double e_minus = std::abs(nv.via_minus + 1.0);
    const bool ok = sep_neg < 1e-6 && sep_twice < 1e-6 && e_plus < 1e-6 && e_minus < 1e-6;
    return {ok, fmt("sep(loop, -germ) %.2e, sep(double loop, germ) %.2e, node values off by %.2e / %.2e", sep_neg, sep_twice,
                    e_plus, e_minus)};
}

Outcome discrete_lift()
{
    const NodalConstants c;
    const std::vector<int> ks{4, 8, 16, 32, 64, 128, 256};
    const auto rep = discrete_convergence_experiment(ks, c);
    double worst = 0.0;
    for (const auto &r : rep.rows) {
        worst = std::max(worst, r.sheet_distance / r.bound);
    }
    return {rep.ok(), fmt("mesh %.3g, max dist/bound %.3g, ", rep.mesh, worst) +
                          "sheets over origin " + std::to_string(rep.sheets_over_origin) + ", decreasing " +
                          (rep.decreasing ? "yes" : "no") + ", collar single-sheeted " +
                          (rep.collar_single_sheeted ? "yes" : "no")};
}

Outcome breakdown()
{
    const NodalConstants c;
    const std::vector<double> ts{-c.eps, -c.eps / 2, -c.eps / 4, -c.eps / 8, -c.eps / 16};
    const auto rep = continuity_breakdown_experiment(ts, c);
    return {rep.ok(), fmt("mesh %.3g, sup base %.3g (< 3 mesh = %.3g), min sheet-aware %.3g", rep.mesh,
                          rep.sup_base_negative, 3 * rep.mesh, rep.min_sheet_negative)};
}

Outcome degeneration()
{
    bool chi_ok = true;
    std::vector<double> x;
    std::vector<double> y;
    for (double t = -1e-2; t <= -1e-6 * 0.999; t /= std::sqrt(10.0)) {
        chi_ok = chi_ok && euler_characteristic(t) == -1 && branch_points_in_disk(t, 10.0).size() == 3;
        x.push_back(-t);
        y.push_back(vanishing_cycle_scale(t));
    }
    for (double t : {1e-6, 1e-4, 1e-3, 0.005}) {
        chi_ok = chi_ok && euler_characteristic(t) == 1;
    }
    const auto fit = loglog_fit(x, y);
    const std::vector<double> grid{-0.005, -0.00125, 0.0, 0.00125, 0.005};
    const bool jump = gromov_report(grid).discontinuity;
    return {chi_ok && std::abs(fit.slope - 0.5) <= 0.1 && jump,
            fmt("slope %.4f over %.0f values of t, ", fit.slope, static_cast<double>(x.size())) + "chi -1 | 1 " +
                (chi_ok ? "ok" : "violated") + ", discontinuity at 0 " + (jump ? "declared" : "missing")};
}

Outcome max_modulus()
{
    const NodalConstants c;
    const std::vector<double> ts{-c.eps, -c.eps / 2, 0.0, c.eps / 2, c.eps};
    std::vector<FamilySample> samples;
    for (double t : ts) {
        samples.push_back(sample_nodal(c, t));
    }
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> deg(0, 3);
    std::size_t fails = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int d = deg(rng);
        for (const auto &s : samples) {
            const auto p = MPoly::random(s.set.ambient_dim, d, rng);
            double bound = 0.0;
            for (const auto &q : s.set.closure_samples) {
                for (const auto &z : q.coords()) {
                    bound = std::max(bound, std::abs(z));
                }
            }
            const auto r = max_modulus_report(s.set, [&](const CPoint &q) { return p(q); }, p.lipschitz_bound(bound));
            fails += !r.ok;
            if (r.max_boundary > 0.0) {
                worst = std::max(worst, r.max_interior / r.max_boundary);
            }
        }
    }
    return {fails == 0, "500 (polynomial, t) pairs, " + std::to_string(fails) + " violations, " +
                            fmt("max interior / max boundary %.6g", worst)};
}

Outcome essential()
{
    bool ok = true;
    double min_margin = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 10; ++k) {
        const double s0 = essential_threshold(k);
        const double base = std::isfinite(s0) ? s0 : 1.0;
        for (double f : {0.999, 0.5, 0.1, 0.01, 1e-3}) {
            const double s = base * f;
            const double lm = essential_log_modulus(s, 1.0);
            ok = ok && std::abs(lm - 1.0 / s) <= 1e-12 / s;
            min_margin = std::min(min_margin, lm + k * std::log(s));
            ok = ok && lm > -k * std::log(s);
            // direct evaluation where e^{1/s} is representable
            if (1.0 / s < 700.0) {
                ok = ok && std::abs(essential_fn(s, 1.0)) > std::pow(s, -k);
            }
        }
    }
    return {ok, fmt("k = 1..10, min log-margin below s0 %.3g", min_margin)};
}

double half_binomial(int m)
{
    double r = 1.0;
    for (int k = 0; k < m; ++k) {
        r *= (0.5 - k) / (k + 1.0);
    }
    return r;
}

Outcome germ_engine()
{
    bool ok = true;
    double worst_coeff = 0.0;
    // contour quadrature against closed forms, orders <= 20
    const auto geo = germ_from_samples([](const CPoint &z) { return 1.0 / (1.0 - z[0]); }, CPoint{0.0}, 0.7, 24);
    const auto root = germ_from_samples([](const CPoint &z) { return std::sqrt(1.0 + z[0]); }, CPoint{0.0}, 0.7, 24);
    for (int m = 0; m <= 20; ++m) {
        worst_coeff = std::max({worst_coeff, std::abs(geo.coeff({m}) - 1.0), std::abs(root.coeff({m}) - half_binomial(m))});
    }
    ok = ok && worst_coeff < 1e-10;

    // evaluation and recentering round trips within the reported tails
    double worst_excess = -std::numeric_limits<double>::infinity();
    const std::vector<std::pair<std::function<Complex(Complex)>, const TaylorGerm *>> oracles{
        {[](Complex z) { return 1.0 / (1.0 - z); }, &geo}, {[](Complex z) { return std::sqrt(1.0 + z); }, &root}};
    for (const auto &[f, g] : oracles) {
        for (Complex z : {Complex(0.2), Complex(-0.3, 0.1), Complex(0.0, 0.35)}) {
            const auto e = evaluate(*g, CPoint{z});
            worst_excess = std::max(worst_excess, std::abs(e.value - f(z)) - e.tail);
        }
        const CPoint q{Complex(0.15, -0.1)};
        const auto there = recenter(*g, q);
        const auto back = recenter(there, CPoint{0.0});
        for (Complex z : {Complex(0.1, 0.05), Complex(-0.05, -0.1)}) {
            const auto e1 = evaluate(there, CPoint{z});
            const auto e2 = evaluate(back, CPoint{z});
            worst_excess = std::max(worst_excess, std::abs(e1.value - f(z)) - e1.tail);
            worst_excess = std::max(worst_excess, std::abs(e2.value - f(z)) - e2.tail);
        }
        ok = ok && germ_separation(*g, back) < 1e-8;
    }
    ok = ok && worst_excess <= 1e-13;
    return {ok, fmt("max coefficient error %.2e, max (error - tail) %.2e", worst_coeff, worst_excess)};
}

Outcome removability()
{
    bool ok = true;
    double min_imag = std::numeric_limits<double>::infinity();
    for (double t : {-0.5, -0.4, -0.3, -0.2, -0.1, -0.05, -0.01, -1e-3}) {
        const auto r = removability_report(t);
        ok = ok && !r.has_real_points && r.min_imag_norm_sq > 0.0;
        min_imag = std::min(min_imag, r.min_imag_norm_sq);
    }
    const auto pos = removability_report(0.25);
    return {ok, fmt("min |Im z|^2 over t < 0: %.3g", min_imag) + "; reported only: t = 0.25 has real points " +
                    (pos.has_real_points ? "yes" : "no")};
}

} // namespace

int main()
{
    struct Criterion {
        const char *name;
        std::function<Outcome()> run;
        double time_limit; // seconds, or 0 for none
    };
    const std::vector<Criterion> criteria{
        {"hausdorff metric suite", hausdorff_suite, 5.0},
        {"node fixture", node_fixture, 0.0},
        {"cone claim", cone_claim, 1.0},
        {"monodromy", monodromy_check, 0.0},
        {"discrete lift convergence", discrete_lift, 0.0},
        {"continuity breakdown", breakdown, 0.0},
        {"degeneration diagnostics", degeneration, 0.0},
        {"maximum modulus", max_modulus, 0.0},
        {"essential singularity", essential, 0.0},
        {"germ engine", germ_engine, 0.0},
        {"removability fixture", removability, 0.0},
    };
    int failed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (criteria[i].time_limit > 0.0 && secs >= criteria[i].time_limit) {
            o.pass = false;
            o.detail += fmt("; over the %.0f s budget", criteria[i].time_limit);
        }
        failed += !o.pass;
        std::printf("%s %2zu %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d/%zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(), total);
    return failed == 0 ? 0 : 1;
}
