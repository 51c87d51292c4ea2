#ifndef KONTIN_DEGENERATION_HPP
#define KONTIN_DEGENERATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <kontin/core.hpp>
#include <kontin/covers.hpp>
#include <kontin/fixtures.hpp>
#include <kontin/geometry.hpp>

namespace kontin
{

enum class MemberKind { parameterized, algebraic, nodal };

inline const char *to_string(MemberKind k)
{
    switch (k) {
    case MemberKind::parameterized:
        return "parameterized";
    case MemberKind::algebraic:
        return "algebraic";
    case MemberKind::nodal:
        return "nodal";
    }
    return "?";
}

struct DegenerationRecord {
    double t = 0.0;
    MemberKind kind = MemberKind::nodal;
    std::vector<Complex> branch_points_in_disk;
    std::optional<int> euler_char;                 // absent at the nodal member
    std::optional<double> vanishing_cycle_scale;   // t < 0 only
    int node_count = 0;
    std::optional<double> hausdorff_to_c0;         // closure distance to the sampled C_0
};

// Zeros of z^3 + z^2 + t in the base disk |z| < R.
inline std::vector<Complex> branch_points_in_disk(double t, double R)
{
    std::vector<Complex> out;
    for (const auto &r : branch_locus(t)) {
        if (std::abs(r.value) < R) {
            for (int m = 0; m < r.multiplicity; ++m) {
                out.push_back(r.value);
            }
        }
    }
    return out;
}

// Riemann-Hurwitz for the double cover of the base disk (chi = 1) branched
// simply at b points: chi = 2 - b. Members with t > 0 are embedded discs.
inline int euler_characteristic(double t, double R = 10.0)
{
    if (t == 0.0) {
        throw InvalidArgument("euler_characteristic: t = 0 is the nodal member; use node_count");
    }
    if (t > 0.0) {
        return 1;
    }
    int b = 0;
    for (const auto &r : branch_locus(t)) {
        if (std::abs(r.value) < R) {
            if (r.multiplicity != 1) {
                throw InvalidArgument("euler_characteristic: branch points must be simple");
            }
            ++b;
        }
    }
    return 2 - b;
}

// Riemann-Hurwitz arithmetic for a double cover of a disc with b simple branch points.
inline int double_cover_euler_characteristic(int b)
{
    require(b >= 0, "double_cover_euler_characteristic: b must be >= 0");
    return 2 - b;
}

// Distance between the two branch points that collide at z = 0 as t -> 0-.
inline double vanishing_cycle_scale(double t)
{
    require(t < 0.0, "vanishing_cycle_scale: t must be negative");
    auto rs = root_values(UPoly{Complex(t), 0.0, 1.0, 1.0});
    std::sort(rs.begin(), rs.end(), [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
    const double pair = std::abs(rs[0] - rs[1]);
    const double third = std::min(std::abs(rs[2] - rs[0]), std::abs(rs[2] - rs[1]));
    if (!(third > 2.0 * pair)) {
        throw InvalidArgument("vanishing_cycle_scale: |t| too large to separate the colliding roots");
    }
    return pair;
}

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
};

// Least-squares fit of log y = slope * log x + intercept.
inline SlopeFit loglog_fit(std::span<const double> x, std::span<const double> y)
{
    require(x.size() == y.size() && x.size() >= 2, "loglog_fit: need at least two matching points");
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        require(x[i] > 0.0 && y[i] > 0.0, "loglog_fit: values must be positive");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double den = n * sxx - sx * sx;
    require(den > 0.0, "loglog_fit: x values must not all coincide");
    SlopeFit f;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

struct GromovReport {
    std::vector<DegenerationRecord> records;
    double mesh = 0.0;
    bool chi_jumps = false;             // chi differs between the two sides of 0
    bool chi_locally_constant = false;  // constant on each side
    bool hausdorff_to_zero = false;     // base members approach C_0 from both sides
    bool discontinuity = false;
    std::string conditions; // which Gromov conditions were checked and how
};

inline DegenerationRecord degeneration_record(double t, const NodalConstants &c = {})
{
    DegenerationRecord r;
    r.t = t;
    if (t == 0.0) {
        r.kind = MemberKind::nodal;
        r.node_count = node_check().transverse() ? 1 : 0;
        r.branch_points_in_disk = branch_points_in_disk(t, c.R);
        return r;
    }
    r.kind = t > 0.0 ? MemberKind::parameterized : MemberKind::algebraic;
    r.euler_char = euler_characteristic(t, c.R);
    if (t < 0.0) {
        r.branch_points_in_disk = branch_points_in_disk(t, c.R);
        try {
            r.vanishing_cycle_scale = vanishing_cycle_scale(t);
        } catch (const InvalidArgument &) {
        }
    }
    return r;
}

// Per-t records plus the discontinuity verdict: a jump of chi across t = 0
// while the sampled members converge to C_0 in the Hausdorff sense. Members
// outside [-eps, 1] are not sampled and carry no Hausdorff figure.
inline GromovReport gromov_report(std::span<const double> t_grid, const NodalConstants &c = {},
                                  const GridSpec &spec = {})
{
    require(!t_grid.empty(), "gromov_report: empty t grid");
    GromovReport rep;
    const auto s0 = sample_nodal(c, 0.0, spec);
    rep.mesh = s0.set.mesh;
    std::vector<double> ts(t_grid.begin(), t_grid.end());
    std::sort(ts.begin(), ts.end());
    for (double t : ts) {
        auto r = degeneration_record(t, c);
        if (t != 0.0 && t >= -c.eps && t <= 1.0) {
            r.hausdorff_to_c0 = pair_hausdorff(sample_nodal(c, t, spec, true).set, s0.set).first;
        }
        rep.records.push_back(std::move(r));
    }

    std::optional<int> chi_neg;
    std::optional<int> chi_pos;
    rep.chi_locally_constant = true;
    for (const auto &r : rep.records) {
        if (!r.euler_char) {
            continue;
        }
        auto &side = r.t < 0.0 ? chi_neg : chi_pos;
        if (side && *side != *r.euler_char) {
            rep.chi_locally_constant = false;
        }
        side = *r.euler_char;
    }
    rep.chi_jumps = chi_neg && chi_pos && *chi_neg != *chi_pos;

    // on each side: the member nearest to 0 is within 3 mesh of C_0 and no farther than the outermost one
    auto side_ok = [&](bool negative) {
        const DegenerationRecord *inner = nullptr;
        const DegenerationRecord *outer = nullptr;
        for (const auto &r : rep.records) {
            if (!r.hausdorff_to_c0 || (r.t < 0.0) != negative) {
                continue;
            }
            if (!inner || std::abs(r.t) < std::abs(inner->t)) {
                inner = &r;
            }
            if (!outer || std::abs(r.t) > std::abs(outer->t)) {
                outer = &r;
            }
        }
        return inner && *inner->hausdorff_to_c0 < 3 * rep.mesh && *inner->hausdorff_to_c0 <= *outer->hausdorff_to_c0;
    };
    rep.hausdorff_to_zero = side_ok(true) && side_ok(false);
    rep.discontinuity = rep.chi_jumps && rep.chi_locally_constant && rep.hausdorff_to_zero;
    rep.conditions = "checked: C0 convergence of sampled members (Hausdorff, closures); "
                     "inferred: parameterizing surfaces via Euler characteristic (Riemann-Hurwitz); "
                     "not checked: fixed conformal collars near the boundary";
    return rep;
}

} // namespace kontin

#endif
