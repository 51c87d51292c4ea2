#ifndef KONTIN_EXPERIMENTS_HPP
#define KONTIN_EXPERIMENTS_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <kontin/config.hpp>
#include <kontin/covers.hpp>
#include <kontin/degeneration.hpp>
#include <kontin/envelope.hpp>
#include <kontin/fixtures.hpp>
#include <kontin/serialize.hpp>
#include <kontin/svg.hpp>

namespace kontin
{

inline constexpr const char *version = "0.1.0";

struct ExperimentResult {
    std::string experiment;
    json results = json::object();
    json tolerances = json::object();
    std::vector<Table> tables;
    std::vector<std::pair<std::string, std::string>> plots; // file stem, SVG text
    std::vector<std::string> failures;                      // names of violated invariants

    [[nodiscard]] bool passed() const { return failures.empty(); }

    void check(bool ok, const std::string &invariant)
    {
        if (!ok) {
            failures.push_back(invariant);
        }
    }
};

inline json config_to_json(const ExperimentConfig &cfg)
{
    json j{{"experiment", cfg.experiment},
           {"R", cfg.constants.R},
           {"delta", cfg.constants.delta},
           {"eps", cfg.constants.eps},
           {"degree_cap", cfg.degree_cap},
           {"clearance", cfg.clearance},
           {"mesh_target", cfg.grid.mesh_target},
           {"max_radial_step", cfg.grid.max_radial_step},
           {"inner_radius", cfg.grid.inner_radius},
           {"seed", cfg.seed},
           {"trials", cfg.trials}};
    j["t_grid"] = cfg.t_grid ? json(*cfg.t_grid) : json(nullptr);
    j["k_grid"] = cfg.k_grid ? json(*cfg.k_grid) : json(nullptr);
    return j;
}

inline json provenance(const ExperimentConfig &cfg, const json &tolerances)
{
    json modules = json::object();
    for (const char *m : {"geometry", "germs", "fixtures", "covers", "envelope", "degeneration", "cli"}) {
        modules[m] = version;
    }
    return {{"tool", "kontin"}, {"version", version}, {"modules", modules}, {"config", config_to_json(cfg)},
            {"tolerances", tolerances}};
}

inline json to_json(const ExperimentResult &r, const ExperimentConfig &cfg)
{
    return {{"experiment", r.experiment},
            {"passed", r.passed()},
            {"failures", r.failures},
            {"provenance", provenance(cfg, r.tolerances)},
            {"results", r.results}};
}

namespace detail
{

inline LiftCurveOptions lift_options(const ExperimentConfig &cfg)
{
    LiftCurveOptions o;
    o.degree_cap = cfg.degree_cap;
    o.clearance = cfg.clearance;
    o.grid = cfg.grid;
    return o;
}

inline std::vector<int> default_k_grid() { return {4, 8, 16, 32, 64, 128, 256}; }

inline std::vector<double> t_grid_or(const ExperimentConfig &cfg, std::vector<double> fallback)
{
    return cfg.t_grid ? *cfg.t_grid : std::move(fallback);
}

inline std::string fmt(double x) { return format_number(x); }

inline void run_hausdorff_sweep(const ExperimentConfig &cfg, ExperimentResult &res)
{
    const auto &c = cfg.constants;
    const auto ks = cfg.k_grid ? *cfg.k_grid : default_k_grid();
    res.tolerances = {{"bound", "dist_H(C_{1/k}, C_0) <= R/k"}, {"relative_slack", 1e-12}};
    const auto s0 = sample_nodal(c, 0.0, cfg.grid);
    Table tab{"hausdorff_sweep", {"k", "t", "closure_distance", "boundary_distance", "bound"}, {}};
    PlotSeries dist{"dist_H(C_t, C_0)", {}, {}};
    PlotSeries bound{"R t", {}, {}};
    json rows = json::array();
    double prev = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    bool within = true;
    for (int k : ks) {
        const double t = 1.0 / k;
        const auto [dc, db] = pair_hausdorff(sample_nodal(c, t, cfg.grid, true).set, s0.set);
        const double b = c.R * t;
        within = within && dc <= b * (1 + 1e-12) && db <= b * (1 + 1e-12);
        decreasing = decreasing && dc < prev;
        prev = dc;
        tab.add({std::to_string(k), fmt(t), fmt(dc), fmt(db), fmt(b)});
        rows.push_back({{"k", k}, {"t", t}, {"closure_distance", dc}, {"boundary_distance", db}, {"bound", b}});
        dist.x.push_back(k);
        dist.y.push_back(std::max(dc, 1e-300));
        bound.x.push_back(k);
        bound.y.push_back(b);
    }
    res.results = {{"mesh", s0.set.mesh}, {"rows", rows}};
    res.check(within, "hausdorff-sweep: dist_H(C_{1/k}, C_0) <= R/k");
    res.check(decreasing, "hausdorff-sweep: distances decrease in k");
    res.tables.push_back(std::move(tab));
    const std::vector<PlotSeries> series{dist, bound};
    res.plots.emplace_back("hausdorff_sweep",
                           emit_plot(series, {"Hausdorff distance to C_0", "k", "distance", true, true}));
}

inline void run_node_check(const ExperimentConfig &, ExperimentResult &res)
{
    const auto r = node_check();
    res.tolerances = {{"residual", 1e-12}, {"tangents", "exact"}, {"determinant", "exact"}};
    res.results = {{"points", json::array({to_json(r.points[0]), to_json(r.points[1])})},
                   {"residual", r.residual},
                   {"tangents", json::array({json::array({to_json(r.tangents[0][0]), to_json(r.tangents[0][1])}),
                                             json::array({to_json(r.tangents[1][0]), to_json(r.tangents[1][1])})})},
                   {"determinant", to_json(r.determinant)}};
    res.check(r.residual < 1e-12, "node-check: Phi_0(+-1) = 0 within 1e-12");
    res.check(r.tangents[0][0] == Complex(2.0) && r.tangents[0][1] == Complex(2.0), "node-check: tangent at +1 is (2, 2)");
    res.check(r.tangents[1][0] == Complex(-2.0) && r.tangents[1][1] == Complex(2.0), "node-check: tangent at -1 is (-2, 2)");
    res.check(r.determinant == Complex(8.0), "node-check: transversality determinant is 8");
    Table tab{"node_check", {"lambda", "residual", "tangent_z", "tangent_w"}, {}};
    for (int i = 0; i < 2; ++i) {
        tab.add({i == 0 ? "1" : "-1", fmt(polydisk_dist(r.points[static_cast<std::size_t>(i)], CPoint{0.0, 0.0, 0.0})),
                 fmt(r.tangents[static_cast<std::size_t>(i)][0].real()), fmt(r.tangents[static_cast<std::size_t>(i)][1].real())});
    }
    res.tables.push_back(std::move(tab));
}

inline void run_cone_claim(const ExperimentConfig &cfg, ExperimentResult &res)
{
    const auto &c = cfg.constants;
    std::vector<double> fallback;
    for (int i = 1; i <= 20; ++i) {
        fallback.push_back(c.eps * i / 20.0);
    }
    const auto ts = t_grid_or(cfg, fallback);
    res.tolerances = {{"cone", "strict: |u| < delta and |Arg u - Arg lambda| < arcsin delta"}};
    const auto grid = make_polar_grid(c.R, cfg.grid);
    Table tab{"cone_claim", {"t", "checked", "violations", "max_abs_u"}, {}};
    std::size_t total = 0;
    std::size_t bad = 0;
    bool t_in_range = true;
    for (double t : ts) {
        t_in_range = t_in_range && t > 0.0 && t <= c.eps;
        std::size_t checked = 0;
        std::size_t viol = 0;
        double umax = 0.0;
        for (std::size_t j = 0; j < grid.radii.size(); ++j) {
            for (int k = 0; k < grid.angle_counts[j]; ++k) {
                const Complex lambda = grid.node(j, k);
                const Complex u = phi(lambda, t)[2];
                umax = std::max(umax, std::abs(u));
                ++checked;
                if (!cone_contains(lambda, c.delta, u)) {
                    ++viol;
                }
            }
        }
        total += checked;
        bad += viol;
        tab.add({fmt(t), std::to_string(checked), std::to_string(viol), fmt(umax)});
    }
    res.results = {{"grid_points", grid.size()}, {"t_count", ts.size()}, {"checked", total}, {"violations", bad}};
    res.check(t_in_range, "cone-claim: every t lies in (0, eps]");
    res.check(bad == 0, "cone-claim: Phi_t(lambda) lies in the cone at lambda for all grid lambda != 0");
    res.tables.push_back(std::move(tab));
}

inline void run_monodromy(const ExperimentConfig &cfg, ExperimentResult &res)
{
    res.tolerances = {{"germ_separation", same_sheet_tol}, {"node_value", 1e-6}};
    const auto src = tag_source(cfg.degree_cap);
    const auto g = src.germ(0.0, 1.0);
    const auto once = continue_tag(src, g, circle_path(-1.0, 1.0, 0.0, 1.0, 64));
    const auto twice = continue_tag(src, g, circle_path(-1.0, 1.0, 0.0, 2.0, 128));
    const double sep_neg = germ_separation(once, g.negated());
    const double sep_twice = germ_separation(twice, g);
    const auto nv = two_values_at_node(cfg.constants, cfg.degree_cap, cfg.clearance);
    // the same loop in the nodal cover at t = 0 (radius 1/2 keeps the double point outside)
    const auto perm = monodromy(nodal_cover(0.0), circle_path(-1.0, 0.5, 0.0, 1.0, 128));

    res.results = {{"start_germ", to_json(g)},
                   {"after_one_loop", to_json(once)},
                   {"separation_from_negated", sep_neg},
                   {"separation_after_double_loop", sep_twice},
                   {"node_value_plus", to_json(nv.via_plus)},
                   {"node_value_minus", to_json(nv.via_minus)},
                   {"node_germ_separation", nv.separation},
                   {"cover_permutation_around_minus_one", permutation_to_json(perm)}};
    res.check(sep_neg < same_sheet_tol, "monodromy: one loop around z = -1 negates the tag germ");
    res.check(sep_twice < same_sheet_tol, "monodromy: the double loop returns the original germ");
    res.check(std::abs(nv.via_plus - 1.0) < 1e-6, "monodromy: continuation via lambda = +1 gives +1");
    res.check(std::abs(nv.via_minus + 1.0) < 1e-6, "monodromy: continuation via lambda = -1 gives -1");
    res.check(perm == std::vector<int>{1, 0}, "monodromy: the cover loop around -1 swaps the sheets");
    Table tab{"monodromy", {"quantity", "value"}, {}};
    tab.add({"separation_from_negated", fmt(sep_neg)});
    tab.add({"separation_after_double_loop", fmt(sep_twice)});
    tab.add({"node_value_plus_re", fmt(nv.via_plus.real())});
    tab.add({"node_value_minus_re", fmt(nv.via_minus.real())});
    res.tables.push_back(std::move(tab));
}

inline void run_lift_discrete(const ExperimentConfig &cfg, ExperimentResult &res)
{
    const auto ks = cfg.k_grid ? *cfg.k_grid : default_k_grid();
    const auto rep = discrete_convergence_experiment(ks, cfg.constants, lift_options(cfg));
    res.tolerances = {{"bound", "R/k + 3 mesh"}, {"same_sheet", same_sheet_tol}};
    Table tab{"lift_discrete", {"k", "t", "sheet_distance", "sheet_boundary", "base_distance", "bound"}, {}};
    json rows = json::array();
    PlotSeries sd{"sheet-aware dist_H", {}, {}};
    PlotSeries bd{"R/k + 3 mesh", {}, {}};
    for (const auto &r : rep.rows) {
        tab.add({std::to_string(r.k), fmt(r.t), fmt(r.sheet_distance), fmt(r.sheet_boundary), fmt(r.base_distance), fmt(r.bound)});
        rows.push_back({{"k", r.k}, {"t", r.t}, {"sheet_distance", r.sheet_distance}, {"sheet_boundary", r.sheet_boundary},
                        {"base_distance", r.base_distance}, {"bound", r.bound}});
        sd.x.push_back(r.k);
        sd.y.push_back(std::max(r.sheet_distance, 1e-300));
        bd.x.push_back(r.k);
        bd.y.push_back(r.bound);
    }
    res.results = {{"mesh", rep.mesh},
                   {"sheets_over_origin", rep.sheets_over_origin},
                   {"multi_sheet_sites", rep.multi_sheet_sites},
                   {"collar_single_sheeted", rep.collar_single_sheeted},
                   {"rows", rows}};
    res.check(rep.within_bound, "lift-discrete: sheet-aware distance <= R/k + 3 mesh");
    res.check(rep.decreasing, "lift-discrete: sheet-aware distances decrease in k");
    res.check(rep.sheets_over_origin == 2, "lift-discrete: exactly two sheet points over the origin");
    res.check(rep.multi_sheet_sites == 1 && rep.max_sheets <= 2, "lift-discrete: no other multi-sheeted site");
    res.check(rep.collar_single_sheeted, "lift-discrete: boundary collar is single-sheeted");
    res.tables.push_back(std::move(tab));
    const std::vector<PlotSeries> series{sd, bd};
    res.plots.emplace_back("lift_discrete", emit_plot(series, {"Lifts of C_{1/k} against the lift of C_0", "k", "distance", true, true}));
}

inline void run_lift_breakdown(const ExperimentConfig &cfg, ExperimentResult &res)
{
    const auto &c = cfg.constants;
    const auto ts = t_grid_or(cfg, {-c.eps, -c.eps / 2, -c.eps / 4, -c.eps / 8, -c.eps / 16, c.eps / 16, c.eps / 4, c.eps});
    const auto rep = continuity_breakdown_experiment(ts, c, lift_options(cfg));
    res.tolerances = {{"base", "sup over t < 0 of dist_H(C_t, C_0) < 3 mesh"}, {"floor", "sheet-aware distance >= 10 x base"}};
    Table tab{"lift_breakdown", {"t", "base_distance", "sheet_distance", "proper", "neck_tag_flipped"}, {}};
    json rows = json::array();
    PlotSeries base{"base dist_H", {}, {}};
    PlotSeries sheet{"sheet-aware dist_H", {}, {}};
    bool negative_improper = true;
    bool any_negative = false;
    for (const auto &r : rep.rows) {
        const bool flipped = r.neck && r.neck->tag_flipped;
        tab.add({fmt(r.t), fmt(r.base_distance), fmt(r.sheet_distance), r.proper ? "1" : "0", flipped ? "1" : "0"});
        json row{{"t", r.t}, {"base_distance", r.base_distance}, {"sheet_distance", r.sheet_distance}, {"proper", r.proper}};
        if (r.neck) {
            row["neck"] = {{"closed_in_curve", r.neck->closed_in_curve},
                           {"tag_flipped", r.neck->tag_flipped},
                           {"w_return_error", r.neck->w_return_error},
                           {"flip_separation", r.neck->flip_separation},
                           {"boundary_checks", r.neck->boundary_checks},
                           {"boundary_transport_ok", r.neck->boundary_transport_ok}};
        }
        rows.push_back(row);
        if (r.t < 0.0) {
            any_negative = true;
            negative_improper = negative_improper && !r.proper && flipped;
        }
        base.x.push_back(r.t);
        base.y.push_back(r.base_distance);
        sheet.x.push_back(r.t);
        sheet.y.push_back(r.sheet_distance);
    }
    res.results = {{"mesh", rep.mesh},
                   {"sup_base_negative", rep.sup_base_negative},
                   {"min_sheet_negative", rep.min_sheet_negative},
                   {"max_sheet_positive", rep.max_sheet_positive},
                   {"max_base_positive", rep.max_base_positive},
                   {"rows", rows}};
    res.check(any_negative, "lift-breakdown: the t grid contains negative values");
    res.check(rep.sup_base_negative < 3 * rep.mesh, "lift-breakdown: base distance below 3 mesh for t < 0");
    res.check(rep.min_sheet_negative >= 10 * rep.sup_base_negative, "lift-breakdown: lift gap >= 10 x base convergence");
    res.check(negative_improper, "lift-breakdown: lifts for t < 0 gain a second sheet through the neck");
    res.tables.push_back(std::move(tab));
    const std::vector<PlotSeries> series{base, sheet};
    res.plots.emplace_back("lift_breakdown", emit_plot(series, {"Base against sheet-aware distance to the t = 0 lift", "t", "distance"}));
}

inline void run_gromov_diag(const ExperimentConfig &cfg, ExperimentResult &res)
{
    const auto &c = cfg.constants;
    const auto ts = t_grid_or(cfg, {-1e-2, -c.eps, -1e-3, -1e-4, -1e-5, -1e-6, 0.0, 1e-6, 1e-4, 1e-3, c.eps});
    const auto rep = gromov_report(ts, c, cfg.grid);
    res.tolerances = {{"slope", "0.5 +- 0.1"}, {"hausdorff", "innermost member within 3 mesh of C_0"}};
    Table tab{"gromov_diag", {"t", "b", "chi", "vanishing_scale", "hausdorff_to_c0", "node_count"}, {}};
    json rows = json::array();
    PlotSeries chi{"Euler characteristic", {}, {}};
    PlotSeries scale{"vanishing-cycle scale", {}, {}};
    std::vector<double> fx;
    std::vector<double> fy;
    bool chi_neg_ok = true;
    bool chi_pos_ok = true;
    for (const auto &r : rep.records) {
        const auto b = r.branch_points_in_disk.size();
        tab.add({fmt(r.t), std::to_string(b), r.euler_char ? std::to_string(*r.euler_char) : "",
                 r.vanishing_cycle_scale ? fmt(*r.vanishing_cycle_scale) : "",
                 r.hausdorff_to_c0 ? fmt(*r.hausdorff_to_c0) : "", std::to_string(r.node_count)});
        json row{{"t", r.t}, {"kind", to_string(r.kind)}, {"node_count", r.node_count}};
        json bp = json::array();
        for (auto z : r.branch_points_in_disk) {
            bp.push_back(to_json(z));
        }
        row["branch_points_in_disk"] = bp;
        row["euler_char"] = r.euler_char ? json(*r.euler_char) : json(nullptr);
        row["vanishing_cycle_scale"] = r.vanishing_cycle_scale ? json(*r.vanishing_cycle_scale) : json(nullptr);
        row["hausdorff_to_c0"] = r.hausdorff_to_c0 ? json(*r.hausdorff_to_c0) : json(nullptr);
        rows.push_back(row);
        if (r.euler_char) {
            chi.x.push_back(r.t);
            chi.y.push_back(*r.euler_char);
            if (r.t < 0.0) {
                chi_neg_ok = chi_neg_ok && *r.euler_char == -1;
            } else {
                chi_pos_ok = chi_pos_ok && *r.euler_char == 1;
            }
        }
        if (r.vanishing_cycle_scale) {
            fx.push_back(-r.t);
            fy.push_back(*r.vanishing_cycle_scale);
        }
    }
    std::optional<SlopeFit> fit;
    if (fx.size() >= 2) {
        fit = loglog_fit(fx, fy);
    }
    res.results = {{"mesh", rep.mesh},
                   {"chi_jumps", rep.chi_jumps},
                   {"chi_locally_constant", rep.chi_locally_constant},
                   {"hausdorff_to_zero", rep.hausdorff_to_zero},
                   {"discontinuity_at_zero", rep.discontinuity},
                   {"conditions", rep.conditions},
                   {"slope", fit ? json(fit->slope) : json(nullptr)},
                   {"intercept", fit ? json(fit->intercept) : json(nullptr)},
                   {"records", rows}};
    res.check(chi_neg_ok, "gromov-diag: chi = -1 for t < 0");
    res.check(chi_pos_ok, "gromov-diag: chi = 1 for t > 0");
    res.check(rep.discontinuity, "gromov-diag: discontinuity at t = 0 (chi jumps while dist_H -> 0)");
    res.check(fit && std::abs(fit->slope - 0.5) <= 0.1, "gromov-diag: vanishing-cycle log-log slope 0.5 +- 0.1");
    res.tables.push_back(std::move(tab));
    if (!chi.x.empty()) {
        PlotStyle st{"Euler characteristic across t = 0", "t", "chi"};
        st.step = true;
        res.plots.emplace_back("gromov_chi", emit_plot(chi, st));
    }
    if (fit) {
        std::vector<PlotSeries> series;
        for (std::size_t i = 0; i < fx.size(); ++i) {
            scale.x.push_back(fx[i]);
            scale.y.push_back(fy[i]);
        }
        PlotSeries line{"fit, slope " + tick_label(fit->slope), {}, {}};
        for (double x : fx) {
            line.x.push_back(x);
            line.y.push_back(std::exp(fit->intercept) * std::pow(x, fit->slope));
        }
        series.push_back(scale);
        series.push_back(line);
        res.plots.emplace_back("gromov_vanishing", emit_plot(series, {"Vanishing-cycle scale", "|t|", "root distance", true, true}));
    }
}

inline void run_removability(const ExperimentConfig &cfg, ExperimentResult &res)
{
    const auto ts = t_grid_or(cfg, {-0.5, -0.375, -0.25, -0.125, -0.01, 0.01, 0.25, 0.5});
    res.tolerances = {{"real_points", "exact criterion 0 <= t <= 1"}, {"assert_range", "[-1/2, 0)"}};
    Table tab{"removability", {"t", "has_real_points", "min_imag_norm_sq", "boundary_in_compact", "asserted"}, {}};
    json rows = json::array();
    for (double t : ts) {
        const auto r = removability_report(t, cfg.grid);
        const bool asserted = t >= -0.5 && t < 0.0;
        if (asserted) {
            res.check(!r.has_real_points && r.min_imag_norm_sq > 0.0,
                      "removability: C_t has no real points for t = " + format_number(t));
        }
        tab.add({fmt(t), r.has_real_points ? "1" : "0", fmt(r.min_imag_norm_sq), r.boundary_in_compact ? "1" : "0",
                 asserted ? "1" : "0"});
        rows.push_back({{"t", t}, {"has_real_points", r.has_real_points}, {"min_imag_norm_sq", r.min_imag_norm_sq},
                        {"boundary_in_compact", r.boundary_in_compact}, {"boundary_samples", r.boundary_samples},
                        {"asserted", asserted}});
    }
    res.results = {{"rows", rows}, {"note", "t > 0 members are reported only; they do contain real points"}};
    res.tables.push_back(std::move(tab));
}

inline void run_essential_sing(const ExperimentConfig &cfg, ExperimentResult &res)
{
    std::vector<int> ks;
    if (cfg.k_grid) {
        ks = *cfg.k_grid;
    } else {
        for (int k = 1; k <= 10; ++k) {
            ks.push_back(k);
        }
    }
    res.tolerances = {{"closed_form", "log|f(s, 1)| = 1/s, relative 1e-12"}, {"probe", "s = s0 x {0.99, 0.5, 0.1, 0.01}"}};
    Table tab{"essential_sing", {"k", "s0", "min_margin_below_s0", "sharp_above_s0"}, {}};
    json rows = json::array();
    for (int k : ks) {
        require(k >= 1, "essential-sing: k must be >= 1");
        const double s0 = essential_threshold(k);
        const double base = std::isfinite(s0) ? s0 : 1.0;
        double margin = std::numeric_limits<double>::infinity();
        bool closed_form = true;
        for (double f : {0.99, 0.5, 0.1, 0.01}) {
            const double s = base * f;
            const double lm = essential_log_modulus(s, 1.0);
            closed_form = closed_form && std::abs(lm - 1.0 / s) <= 1e-12 * (1.0 / s);
            margin = std::min(margin, lm + k * std::log(s)); // log|f| - log s^{-k}
        }
        // just above s0 the bound fails when s0 is finite
        bool sharp = true;
        if (std::isfinite(s0) && 1.01 * s0 < 1.0 / k) {
            const double s = 1.01 * s0;
            sharp = 1.0 / s + k * std::log(s) < 0.0;
        }
        res.check(closed_form, "essential-sing: log|f| matches 1/s for k = " + std::to_string(k));
        res.check(margin > 0.0, "essential-sing: |f| > s^-k below s0 for k = " + std::to_string(k));
        res.check(sharp, "essential-sing: threshold s0 is sharp for k = " + std::to_string(k));
        tab.add({std::to_string(k), std::isfinite(s0) ? fmt(s0) : "inf", fmt(margin), sharp ? "1" : "0"});
        rows.push_back({{"k", k}, {"s0", std::isfinite(s0) ? json(s0) : json("inf")}, {"min_margin_below_s0", margin}, {"sharp", sharp}});
    }
    res.results = {{"rows", rows}};
    res.tables.push_back(std::move(tab));
}

inline void run_max_modulus(const ExperimentConfig &cfg, ExperimentResult &res)
{
    const auto &c = cfg.constants;
    const auto ts = t_grid_or(cfg, {-c.eps, -c.eps / 2, 0.0, c.eps / 2, c.eps});
    res.tolerances = {{"inequality", "max interior <= max boundary (1 + 1e-6) + Lip mesh"}, {"max_degree", 3}};
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> deg(0, 3);
    std::vector<FamilySample> samples;
    for (double t : ts) {
        samples.push_back(sample_nodal(c, t, cfg.grid));
    }
    Table tab{"max_modulus", {"trial", "degree", "t", "max_interior", "max_boundary", "lipschitz", "ok"}, {}};
    std::size_t failed = 0;
    double worst_ratio = 0.0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        const int d = deg(rng);
        std::vector<MPoly> polys;
        for (const auto &s : samples) {
            auto p = MPoly::random(s.set.ambient_dim, d, rng);
            double bound = 0.0;
            for (const auto &q : s.set.closure_samples) {
                for (const auto &z : q.coords()) {
                    bound = std::max(bound, std::abs(z));
                }
            }
            const double lip = p.lipschitz_bound(bound);
            const auto r = max_modulus_report(s.set, [&](const CPoint &q) { return p(q); }, lip);
            if (!r.ok) {
                ++failed;
            }
            if (r.max_boundary > 0.0) {
                worst_ratio = std::max(worst_ratio, r.max_interior / r.max_boundary);
            }
            tab.add({std::to_string(trial), std::to_string(d), fmt(s.t), fmt(r.max_interior), fmt(r.max_boundary), fmt(lip),
                     r.ok ? "1" : "0"});
        }
    }
    res.results = {{"trials", cfg.trials}, {"t_count", ts.size()}, {"failures", failed}, {"max_interior_over_boundary", worst_ratio}};
    res.check(failed == 0, "max-modulus: max interior <= max boundary (1 + 1e-6) + Lip mesh");
    res.tables.push_back(std::move(tab));
}

} // namespace detail

// Runs one experiment; invalid configurations raise InvalidArgument.
inline ExperimentResult run_experiment(const ExperimentConfig &cfg)
{
    cfg.validate();
    ExperimentResult res;
    res.experiment = cfg.experiment;
    const auto &e = cfg.experiment;
    if (e == "hausdorff-sweep") {
        detail::run_hausdorff_sweep(cfg, res);
    } else if (e == "node-check") {
        detail::run_node_check(cfg, res);
    } else if (e == "cone-claim") {
        detail::run_cone_claim(cfg, res);
    } else if (e == "monodromy") {
        detail::run_monodromy(cfg, res);
    } else if (e == "lift-discrete") {
        detail::run_lift_discrete(cfg, res);
    } else if (e == "lift-breakdown") {
        detail::run_lift_breakdown(cfg, res);
    } else if (e == "gromov-diag") {
        detail::run_gromov_diag(cfg, res);
    } else if (e == "removability") {
        detail::run_removability(cfg, res);
    } else if (e == "essential-sing") {
        detail::run_essential_sing(cfg, res);
    } else {
        detail::run_max_modulus(cfg, res);
    }
    return res;
}

} // namespace kontin

#endif
