#ifndef KONTIN_ENVELOPE_HPP
#define KONTIN_ENVELOPE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <kontin/core.hpp>
#include <kontin/covers.hpp>
#include <kontin/fixtures.hpp>
#include <kontin/geometry.hpp>
#include <kontin/germs.hpp>

namespace kontin
{

class ContinuationObstructed : public Error
{
public:
    ContinuationObstructed(const std::string &what, double tau) : Error(what), m_tau(tau) {}
    [[nodiscard]] double tau() const noexcept { return m_tau; }

private:
    double m_tau;
};

// Germs at or below this separation are the same sheet.
inline constexpr double same_sheet_tol = 1e-6;

// The tag Lambda = w / z satisfies Lambda^2 = z + 1 on C_0, so its germs are
// branches of sqrt(z + 1) in the base coordinate z.
inline SqrtGermSource tag_source(int degree_cap = 24) { return SqrtGermSource(UPoly{1.0, 1.0}, degree_cap); }

struct ContinueOptions {
    double step_fraction = 0.5; // step length / envelope radius
    std::size_t max_steps = 1'000'000;
    double min_radius = 1e-10; // relative to 1 + |center|; smaller certified disks obstruct
    double tol = 1e-8;
};

// Weierstrass continuation along a base path (first coordinate). Each step
// moves at most step_fraction * d inside the current certified disk; the
// continued value predicted by evaluating the current germ selects the branch
// of the regenerated germ, and the step is refused unless that choice is
// unambiguous (the other branch lies outside the tail bound).
inline TaylorGerm continue_tag(const SqrtGermSource &src, const TaylorGerm &germ, const PathSample &path,
                               const ContinueOptions &opt = {})
{
    path.validate();
    require(germ.dim() == 1 && path.front().dim() == 1, "continue_tag: one-dimensional germs and paths only");
    require(germ.envelope().has_value(), "continue_tag: germ needs an envelope");
    require(std::abs(germ.center()[0] - path.front()[0]) < 1e-12, "continue_tag: path must start at the germ center");
    TaylorGerm cur = germ;
    std::size_t steps = 0;
    for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
        const Complex a = path.points[i][0];
        const Complex b = path.points[i + 1][0];
        const double len = std::abs(b - a);
        double s = 0.0; // arclength done on this segment
        while (len > 0.0 && s < len) {
            const double tau = path.tau[i] + (s / len) * (path.tau[i + 1] - path.tau[i]);
            if (++steps > opt.max_steps) {
                throw ContinuationObstructed("continue_tag: too many steps (path too close to a branch point)", tau);
            }
            const double d = cur.envelope()->radius;
            if (d < opt.min_radius * (1.0 + std::abs(cur.center()[0]))) {
                throw ContinuationObstructed("continue_tag: certified radius collapsed near a branch point", tau);
            }
            const double step = std::min(len - s, opt.step_fraction * d);
            const double s_next = (step == len - s) ? len : s + step;
            const Complex q = s_next == len ? b : a + (b - a) * (s_next / len);
            if (std::abs(q - cur.center()[0]) >= d) {
                throw ContinuationObstructed("continue_tag: step exits the certified polydisk", tau);
            }
            const auto pred = evaluate(cur, CPoint{q});
            TaylorGerm next = [&] {
                try {
                    return src.germ(q, pred.value);
                } catch (const OutsideEnvelope &) {
                    throw ContinuationObstructed("continue_tag: path meets a branch point", tau);
                }
            }();
            const Complex v = next.value();
            const double err = std::abs(v - pred.value);
            const double other = std::abs(-v - pred.value);
            const double allowed = pred.tail + opt.tol * std::max(1.0, std::abs(v));
            if (err > allowed || other <= allowed) {
                throw ContinuationObstructed("continue_tag: ambiguous branch after step", tau);
            }
            cur = std::move(next);
            s = s_next;
        }
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Sheet points

struct SheetPoint {
    CPoint base;
    TaylorGerm tag; // centered at the base's z coordinate
    int sheet_label = 0;
    Complex param;  // lambda of the sample
};

inline constexpr int canonical_sheet = 0;

// Capped germ distance: 1 when the germs cannot be compared on a common disk.
inline double capped_separation(const TaylorGerm &a, const TaylorGerm &b)
{
    try {
        return std::min(1.0, germ_separation(a, b));
    } catch (const OutsideEnvelope &) {
        return 1.0;
    }
}

// max(base polydisk distance, min(1, germ separation))
inline double sheet_distance(const SheetPoint &a, const SheetPoint &b)
{
    return std::max(polydisk_dist(a.base, b.base), capped_separation(a.tag, b.tag));
}

struct SheetedCurve {
    std::vector<SheetPoint> points;
    std::vector<SheetPoint> boundary;       // i(dC_t): canonical sheet over the boundary samples
    std::vector<SheetPoint> extra_boundary; // other sheets over boundary samples
    std::vector<std::size_t> gaps;          // sample indices where continuation was obstructed
    double source_t = 0.0;
    double mesh = 0.0;
    double R = 0.0;
    double collar_width = 0.0;
};

namespace detail
{

// Sheet-aware directed Hausdorff distance, indexed on the widest base coordinate.
inline double directed_sheet_hausdorff(std::span<const SheetPoint> a, std::span<const SheetPoint> b)
{
    std::vector<CPoint> bases;
    for (const auto &p : b) {
        bases.push_back(p.base);
    }
    const auto axis = widest_coordinate(bases);
    PlaneIndex<SheetPoint> index(b, [&](const SheetPoint &p) { return p.base[axis]; });
    double sup = 0.0;
    for (const auto &p : a) {
        const Complex key = p.base[axis];
        // the capped germ term is <= 1, so the base-nearest point bounds the answer
        const double base_best = index.nearest(p, key, [](const SheetPoint &x, const SheetPoint &y, double) {
            return polydisk_dist(x.base, y.base);
        });
        double d = base_best;
        if (base_best < 1.0) {
            d = index.nearest(
                p, key,
                [](const SheetPoint &x, const SheetPoint &y, double best) {
                    const double base = polydisk_dist(x.base, y.base);
                    if (base >= best) {
                        return base;
                    }
                    return std::max(base, capped_separation(x.tag, y.tag));
                },
                1.0);
        }
        sup = std::max(sup, d);
    }
    return sup;
}

} // namespace detail

inline double sheet_hausdorff(std::span<const SheetPoint> a, std::span<const SheetPoint> b)
{
    require(!a.empty() && !b.empty(), "sheet_hausdorff: empty input");
    return std::max(detail::directed_sheet_hausdorff(a, b), detail::directed_sheet_hausdorff(b, a));
}

// (closure distance, boundary distance) for sheeted curves; the boundary part
// compares all sheets over the boundary samples.
inline std::pair<double, double> sheet_pair_hausdorff(const SheetedCurve &a, const SheetedCurve &b)
{
    auto all_boundary = [](const SheetedCurve &c) {
        auto v = c.boundary;
        v.insert(v.end(), c.extra_boundary.begin(), c.extra_boundary.end());
        return v;
    };
    return {sheet_hausdorff(a.points, b.points), sheet_hausdorff(all_boundary(a), all_boundary(b))};
}

struct MultiSheetSite {
    CPoint base;
    std::size_t sheets = 0;
};

// Groups points whose bases coincide within base_tol and counts distinct
// germs among each group; returns the groups carrying more than one sheet.
inline std::vector<MultiSheetSite> multi_sheet_sites(const SheetedCurve &c, double base_tol = 1e-9)
{
    std::vector<std::size_t> order(c.points.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    auto key = [&](std::size_t i) { return c.points[i].base[0].real(); };
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return key(x) < key(y); });
    std::vector<bool> used(c.points.size(), false);
    std::vector<MultiSheetSite> out;
    for (std::size_t a = 0; a < order.size(); ++a) {
        const auto i = order[a];
        if (used[i]) {
            continue;
        }
        std::vector<std::size_t> group{i};
        used[i] = true;
        for (std::size_t b = a + 1; b < order.size() && key(order[b]) - key(i) < base_tol; ++b) {
            const auto j = order[b];
            if (!used[j] && polydisk_dist(c.points[i].base, c.points[j].base) < base_tol) {
                group.push_back(j);
                used[j] = true;
            }
        }
        if (group.size() < 2) {
            continue;
        }
        std::vector<std::size_t> distinct;
        for (auto g : group) {
            const bool seen = std::any_of(distinct.begin(), distinct.end(), [&](std::size_t d) {
                return capped_separation(c.points[g].tag, c.points[d].tag) < same_sheet_tol;
            });
            if (!seen) {
                distinct.push_back(g);
            }
        }
        if (distinct.size() > 1) {
            out.push_back({c.points[i].base, distinct.size()});
        }
    }
    return out;
}

// True iff every point whose parameter lies within the collar width of the
// parameter boundary carries the canonical sheet label.
inline bool properness_and_boundary_check(const SheetedCurve &c)
{
    for (const auto &p : c.points) {
        if (std::abs(p.param) >= c.R - c.collar_width && p.sheet_label != canonical_sheet) {
            return false;
        }
    }
    for (const auto &p : c.boundary) {
        if (p.sheet_label != canonical_sheet) {
            return false;
        }
    }
    return c.extra_boundary.empty();
}

// Collar biholomorphism proxy: every collar base sample carries exactly one
// point, on the canonical sheet, and no two collar points share a base.
inline bool collar_bijective(const SheetedCurve &c, std::size_t collar_samples)
{
    SheetedCurve collar;
    for (const auto &p : c.points) {
        if (std::abs(p.param) >= c.R - c.collar_width) {
            if (p.sheet_label != canonical_sheet) {
                return false;
            }
            collar.points.push_back(p);
        }
    }
    return collar.points.size() == collar_samples && multi_sheet_sites(collar).empty();
}

// ---------------------------------------------------------------------------
// The two values over the node

struct NodeValues {
    Complex via_plus;
    Complex via_minus;
    TaylorGerm germ_plus;
    TaylorGerm germ_minus;
    double separation = 0.0;
};

namespace detail
{

// Base (z) path of the in-curve path lambda(s) = a + s (b - a).
inline PathSample lambda_segment_image(Complex a, Complex b, std::size_t n)
{
    PathSample p;
    p.tau = uniform_tau(n);
    for (double s : p.tau) {
        const Complex l = a + s * (b - a);
        p.points.emplace_back(std::vector<Complex>{l * l - 1.0});
    }
    return p;
}

inline TaylorGerm boundary_tag(const SqrtGermSource &src, const CPoint &boundary_sample)
{
    const Complex z = boundary_sample[0];
    const Complex w = boundary_sample[1];
    return src.germ(z, w / z);
}

} // namespace detail

// Continue the boundary-determined tag from Phi_0(iR) to the origin along the
// images of the parameter segments iR -> +1 and iR -> -1.
inline NodeValues two_values_at_node(const NodalConstants &c = {}, int degree_cap = 24, double clearance = 1e-3)
{
    c.validate();
    const auto src = tag_source(degree_cap);
    const Complex lb(0.0, c.R);
    const CPoint start = phi(lb, 0.0);
    const auto g0 = detail::boundary_tag(src, start);
    const std::vector<Complex> tag_branch(src.branch_points().begin(), src.branch_points().end());
    auto run = [&](Complex target) {
        const auto path = perturb_avoid(detail::lambda_segment_image(lb, target, 400), tag_branch, clearance);
        return continue_tag(src, g0, path.path);
    };
    NodeValues v{0.0, 0.0, run(1.0), run(-1.0), 0.0};
    v.via_plus = v.germ_plus.value();
    v.via_minus = v.germ_minus.value();
    v.separation = germ_separation(v.germ_plus, v.germ_minus);
    return v;
}

// ---------------------------------------------------------------------------
// Lifting a member of the nodal family

struct LiftCurveOptions {
    int degree_cap = 24;
    double clearance = 1e-3;
    double collar_width = 0.5;
    GridSpec grid;
    bool allow_outside = false; // parameterized members with t > eps
};

struct NeckLoopReport {
    bool closed_in_curve = false; // w returns to its start
    bool tag_flipped = false;     // the tag returns negated
    double w_return_error = 0.0;
    double flip_separation = 0.0;
    std::size_t boundary_checks = 0; // transported germs compared on the boundary
    bool boundary_transport_ok = false;
};

struct LiftResult {
    SheetedCurve curve;
    FamilySample sample;
    std::optional<NeckLoopReport> neck;
    std::size_t collar_samples = 0;
};

namespace detail
{

// Continue `start` inward along the ray of boundary index kb and record one
// SheetPoint per ring node of that ray (the boundary node included).
inline void continue_ray(const SqrtGermSource &src, const PolarGrid &grid, const FamilySample &s,
                         const std::vector<std::size_t> &offset, int kb, TaylorGerm start, int label,
                         std::span<const Complex> avoid, double clearance, std::vector<std::optional<SheetPoint>> &slot)
{
    const std::size_t J = grid.radii.size();
    TaylorGerm cur = std::move(start);
    Complex zprev = cur.center()[0];
    for (std::size_t jj = J; jj-- > 0;) {
        const int stride = grid.stride(jj);
        if (kb % stride != 0) {
            continue;
        }
        const std::size_t idx = offset[jj] + static_cast<std::size_t>(kb / stride);
        const CPoint &p = s.set.closure_samples[idx];
        const Complex z = p[0];
        if (jj + 1 != J) {
            const auto path = perturb_avoid(segment_path(zprev, z, 1), avoid, clearance);
            cur = continue_tag(src, cur, path.path);
        }
        slot[idx] = SheetPoint{p, cur, label, s.params[idx]};
        zprev = z;
    }
}

} // namespace detail

// Lift of C_t: every closure sample gets the tag continued from the boundary
// sample on its parameter ray (the ray's image is an in-curve path; in z it is
// the straight segment towards -1). For t < 0 a verified neck loop produces
// the second sheet, which is transported along the boundary and continued
// inward in the same way.
inline LiftResult lift_curve(const NodalConstants &c, double t, const LiftCurveOptions &opt = {})
{
    c.validate();
    LiftResult res;
    res.sample = sample_nodal(c, t, opt.grid, opt.allow_outside);
    const auto grid = make_polar_grid(c.R, opt.grid);
    const auto &s = res.sample;
    const auto src = tag_source(opt.degree_cap);

    std::vector<std::size_t> offset(grid.radii.size() + 1, 0);
    for (std::size_t j = 0; j < grid.radii.size(); ++j) {
        offset[j + 1] = offset[j] + static_cast<std::size_t>(grid.angle_counts[j]);
    }
    require(offset.back() == s.set.closure_samples.size(), "lift_curve: grid / sample mismatch");

    std::vector<Complex> avoid(src.branch_points().begin(), src.branch_points().end());
    std::optional<BranchedCover> cover;
    if (t < 0.0) {
        cover = nodal_cover(t);
        avoid.insert(avoid.end(), cover->branch_locus.begin(), cover->branch_locus.end());
    }

    const int nb = grid.boundary_angles();
    const std::size_t J = grid.radii.size();
    auto &curve = res.curve;
    curve.source_t = t;
    curve.mesh = s.set.mesh;
    curve.R = c.R;
    curve.collar_width = opt.collar_width;

    auto boundary_index = [&](int kb) { return offset[J - 1] + static_cast<std::size_t>(kb); };

    std::vector<std::optional<SheetPoint>> primary(s.set.closure_samples.size());
    std::vector<TaylorGerm> boundary_germs;
    for (int kb = 0; kb < nb; ++kb) {
        const auto g = detail::boundary_tag(src, s.set.closure_samples[boundary_index(kb)]);
        boundary_germs.push_back(g);
        try {
            detail::continue_ray(src, grid, s, offset, kb, g, canonical_sheet, avoid, opt.clearance, primary);
        } catch (const ContinuationObstructed &) {
            // remaining nodes on this ray stay empty and are recorded as gaps
        }
    }

    std::vector<std::optional<SheetPoint>> second;
    if (t < 0.0) {
        NeckLoopReport neck;
        // base point Phi(iR); the loop runs to the circle about -1 through the
        // midpoint of the two small branch points and once around it, which
        // encloses -1, the branch point near -1 and one small branch point.
        const int kstart = nb / 4;
        const CPoint &pb = s.set.closure_samples[boundary_index(kstart)];
        Complex small_sum(0.0);
        for (const auto &r : branch_locus(t)) {
            if (std::abs(r.value) < 0.5) {
                small_sum += r.value;
            }
        }
        const double rho = 1.0 + 0.5 * small_sum.real();
        const Complex left = -1.0 - rho;
        const auto in = segment_path(pb[0], left, 64);
        const auto around = circle_path(-1.0, rho, pi, 1.0, 512);
        const auto loop = perturb_avoid(concat({in, around, reversed(in)}), avoid, opt.clearance);
        const auto lifted = lift_path(*cover, loop.path, pb[1]);
        neck.w_return_error = std::abs(lifted.back()[1] - pb[1]) / std::max(1.0, std::abs(pb[1]));
        neck.closed_in_curve = neck.w_return_error < 1e-8;
        const auto g0 = boundary_germs[static_cast<std::size_t>(kstart)];
        const auto flipped = continue_tag(src, g0, loop.path);
        neck.flip_separation = germ_separation(flipped, g0.negated());
        neck.tag_flipped = neck.flip_separation < same_sheet_tol;

        // transport the flipped germ once around the boundary image
        bool ok = neck.closed_in_curve && neck.tag_flipped;
        std::vector<TaylorGerm> second_boundary(static_cast<std::size_t>(nb), g0);
        TaylorGerm cur = flipped;
        second_boundary[static_cast<std::size_t>(kstart)] = cur;
        for (int step = 1; step < nb && ok; ++step) {
            const int kb = (kstart + step) % nb;
            const int kprev = (kstart + step - 1) % nb;
            const Complex lprev = s.params[boundary_index(kprev)];
            const Complex lnext = s.params[boundary_index(kb)];
            // the boundary arc in lambda, sampled finely enough to stay an arc in z
            PathSample arc;
            arc.tau = detail::uniform_tau(8);
            const double a0 = std::arg(lprev);
            const double da = angle_difference(std::arg(lnext), a0);
            for (double u : arc.tau) {
                const Complex l = std::polar(c.R, a0 + u * da);
                arc.points.emplace_back(std::vector<Complex>{l * l - 1.0});
            }
            arc.points.front() = CPoint{s.set.closure_samples[boundary_index(kprev)][0]};
            arc.points.back() = CPoint{s.set.closure_samples[boundary_index(kb)][0]};
            cur = continue_tag(src, cur, arc);
            second_boundary[static_cast<std::size_t>(kb)] = cur;
            ++neck.boundary_checks;
            if (germ_separation(cur, boundary_germs[static_cast<std::size_t>(kb)].negated()) >= same_sheet_tol) {
                ok = false;
            }
        }
        neck.boundary_transport_ok = ok;
        if (ok) {
            second.resize(s.set.closure_samples.size());
            for (int kb = 0; kb < nb; ++kb) {
                try {
                    detail::continue_ray(src, grid, s, offset, kb, second_boundary[static_cast<std::size_t>(kb)], 1,
                                         avoid, opt.clearance, second);
                } catch (const ContinuationObstructed &) {
                }
            }
        }
        res.neck = neck;
    }

    for (std::size_t i = 0; i < primary.size(); ++i) {
        if (primary[i]) {
            curve.points.push_back(*primary[i]);
        } else {
            curve.gaps.push_back(i);
        }
    }
    for (std::size_t i = 0; i < second.size(); ++i) {
        if (second[i]) {
            curve.points.push_back(*second[i]);
        }
    }
    for (int kb = 0; kb < nb; ++kb) {
        const auto idx = boundary_index(kb);
        if (primary[idx]) {
            curve.boundary.push_back(*primary[idx]);
        }
        if (!second.empty() && second[idx]) {
            curve.extra_boundary.push_back(*second[idx]);
        }
    }
    for (const auto &l : s.params) {
        if (std::abs(l) >= c.R - opt.collar_width) {
            ++res.collar_samples;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Experiments

struct DiscreteRow {
    int k = 0;
    double t = 0.0;
    double sheet_distance = 0.0;    // closure
    double sheet_boundary = 0.0;
    double base_distance = 0.0;
    double bound = 0.0;             // R / k + 3 mesh
};

struct DiscreteReport {
    std::vector<DiscreteRow> rows;
    double mesh = 0.0;
    std::size_t sheets_over_origin = 0;
    std::size_t multi_sheet_sites = 0;
    std::size_t max_sheets = 0;
    bool collar_single_sheeted = false;
    bool within_bound = false;
    bool decreasing = false;
    [[nodiscard]] bool ok() const
    {
        return within_bound && decreasing && sheets_over_origin == 2 && multi_sheet_sites == 1 && max_sheets <= 2 &&
               collar_single_sheeted;
    }
};

inline DiscreteReport discrete_convergence_experiment(std::span<const int> k_list, const NodalConstants &c = {},
                                                      LiftCurveOptions opt = {})
{
    require(!k_list.empty(), "discrete_convergence_experiment: empty k list");
    DiscreteReport rep;
    opt.allow_outside = true;
    const auto limit = lift_curve(c, 0.0, opt);
    rep.mesh = limit.curve.mesh;
    const auto sites = multi_sheet_sites(limit.curve);
    rep.multi_sheet_sites = sites.size();
    for (const auto &site : sites) {
        rep.max_sheets = std::max(rep.max_sheets, site.sheets);
        if (polydisk_dist(site.base, CPoint{0.0, 0.0, 0.0}) <= rep.mesh) {
            rep.sheets_over_origin = site.sheets;
        }
    }
    rep.collar_single_sheeted = properness_and_boundary_check(limit.curve) && limit.curve.gaps.empty();
    rep.within_bound = true;
    rep.decreasing = true;
    for (int k : k_list) {
        require(k >= 1, "discrete_convergence_experiment: k must be >= 1");
        const double t = 1.0 / k;
        const auto lk = lift_curve(c, t, opt);
        DiscreteRow row;
        row.k = k;
        row.t = t;
        const auto [dc, db] = sheet_pair_hausdorff(lk.curve, limit.curve);
        row.sheet_distance = dc;
        row.sheet_boundary = db;
        row.base_distance = pair_hausdorff(lk.sample.set, limit.sample.set).first;
        row.bound = c.R / k + 3 * rep.mesh;
        rep.within_bound = rep.within_bound && dc <= row.bound && db <= row.bound && lk.curve.gaps.empty();
        if (!rep.rows.empty() && !(dc < rep.rows.back().sheet_distance)) {
            rep.decreasing = false;
        }
        rep.rows.push_back(row);
    }
    return rep;
}

struct BreakdownRow {
    double t = 0.0;
    double base_distance = 0.0;  // dist_H(C_t, C_0), closures
    double sheet_distance = 0.0; // sheet-aware dist_H of the lifts
    bool proper = false;         // properness_and_boundary_check of the lift
    std::optional<NeckLoopReport> neck;
};

struct BreakdownReport {
    std::vector<BreakdownRow> rows;
    double mesh = 0.0;
    double sup_base_negative = 0.0;    // over t < 0
    double min_sheet_negative = 0.0;   // over t < 0
    double max_sheet_positive = 0.0;   // over t > 0
    double max_base_positive = 0.0;
    [[nodiscard]] bool ok() const
    {
        return sup_base_negative < 3 * mesh && min_sheet_negative >= 10 * sup_base_negative;
    }
};

inline BreakdownReport continuity_breakdown_experiment(std::span<const double> t_list, const NodalConstants &c = {},
                                                       const LiftCurveOptions &opt = {})
{
    require(!t_list.empty(), "continuity_breakdown_experiment: empty t list");
    BreakdownReport rep;
    const auto limit = lift_curve(c, 0.0, opt);
    rep.mesh = limit.curve.mesh;
    rep.min_sheet_negative = std::numeric_limits<double>::infinity();
    bool any_negative = false;
    for (double t : t_list) {
        require(t >= -c.eps && t <= c.eps, "continuity_breakdown_experiment: t outside [-eps, eps]");
        const auto lt = lift_curve(c, t, opt);
        BreakdownRow row;
        row.t = t;
        row.base_distance = pair_hausdorff(lt.sample.set, limit.sample.set).first;
        row.sheet_distance = sheet_hausdorff(lt.curve.points, limit.curve.points);
        row.proper = properness_and_boundary_check(lt.curve);
        row.neck = lt.neck;
        if (t < 0.0) {
            any_negative = true;
            rep.sup_base_negative = std::max(rep.sup_base_negative, row.base_distance);
            rep.min_sheet_negative = std::min(rep.min_sheet_negative, row.sheet_distance);
        } else if (t > 0.0) {
            rep.max_sheet_positive = std::max(rep.max_sheet_positive, row.sheet_distance);
            rep.max_base_positive = std::max(rep.max_base_positive, row.base_distance);
        }
        rep.rows.push_back(row);
    }
    if (!any_negative) {
        rep.min_sheet_negative = 0.0;
    }
    return rep;
}

} // namespace kontin

#endif
