#ifndef KONTIN_COVERS_HPP
#define KONTIN_COVERS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <kontin/core.hpp>
#include <kontin/geometry.hpp>
#include <kontin/polynomial.hpp>

namespace kontin
{

class PathObstructed : public Error
{
public:
    PathObstructed(const std::string &what, double tau) : Error(what), m_tau(tau) {}
    [[nodiscard]] double tau() const noexcept { return m_tau; }

private:
    double m_tau;
};

// ---------------------------------------------------------------------------
// Paths

// Piecewise-linear path sampled at an increasing grid tau_0 = 0 < ... < tau_m = 1.
struct PathSample {
    std::vector<double> tau;
    std::vector<CPoint> points;
    double clearance = 0.0;

    void validate() const
    {
        require(tau.size() >= 2 && tau.size() == points.size(), "PathSample: need matching tau grid and points (>= 2)");
        require(tau.front() == 0.0 && tau.back() == 1.0, "PathSample: tau grid must run from 0 to 1");
        for (std::size_t i = 1; i < tau.size(); ++i) {
            require(tau[i] > tau[i - 1], "PathSample: tau grid must be strictly increasing");
            require(points[i].dim() == points[0].dim(), "PathSample: dimension mismatch");
        }
    }

    [[nodiscard]] const CPoint &front() const { return points.front(); }
    [[nodiscard]] const CPoint &back() const { return points.back(); }

    // Linear interpolation at tau in [0, 1].
    [[nodiscard]] CPoint at(double s) const
    {
        require(s >= 0.0 && s <= 1.0, "PathSample::at: tau outside [0, 1]");
        const auto it = std::upper_bound(tau.begin(), tau.end(), s);
        if (it == tau.end()) {
            return points.back();
        }
        const auto i = static_cast<std::size_t>(it - tau.begin());
        const double a = (s - tau[i - 1]) / (tau[i] - tau[i - 1]);
        return lerp(points[i - 1], points[i], a);
    }
};

namespace detail
{

inline std::vector<double> uniform_tau(std::size_t n)
{
    std::vector<double> tau(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        tau[i] = static_cast<double>(i) / static_cast<double>(n);
    }
    tau.back() = 1.0;
    return tau;
}

inline double point_segment_distance(Complex b, Complex p, Complex q)
{
    const Complex d = q - p;
    const double len2 = std::norm(d);
    if (len2 == 0.0) {
        return std::abs(b - p);
    }
    const double s = std::clamp(((b - p) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(b - (p + s * d));
}

} // namespace detail

inline PathSample constant_path(Complex z, std::size_t n = 1)
{
    PathSample p;
    p.tau = detail::uniform_tau(n);
    p.points.assign(p.tau.size(), CPoint{z});
    return p;
}

inline PathSample segment_path(Complex a, Complex b, std::size_t n = 16)
{
    require(n >= 1, "segment_path: need n >= 1");
    PathSample p;
    p.tau = detail::uniform_tau(n);
    for (double s : p.tau) {
        p.points.emplace_back(std::vector<Complex>{a + s * (b - a)});
    }
    return p;
}

// Circle around `center` starting at angle `start`, `turns` full turns
// (negative = clockwise).
inline PathSample circle_path(Complex center, double radius, double start, double turns, std::size_t n = 256)
{
    require(radius > 0.0 && n >= 3, "circle_path: need radius > 0 and n >= 3");
    PathSample p;
    p.tau = detail::uniform_tau(n);
    for (double s : p.tau) {
        p.points.emplace_back(std::vector<Complex>{center + std::polar(radius, start + 2 * pi * turns * s)});
    }
    return p;
}

// Concatenation with tau rescaled proportionally to the pieces' sample counts;
// consecutive pieces must share their junction point.
inline PathSample concat(std::span<const PathSample> pieces)
{
    require(!pieces.empty(), "concat: no pieces");
    std::size_t total = 0;
    for (const auto &pc : pieces) {
        pc.validate();
        total += pc.tau.size() - 1;
    }
    PathSample out;
    out.tau.push_back(0.0);
    out.points.push_back(pieces.front().front());
    std::size_t done = 0;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const auto &pc = pieces[k];
        if (k > 0) {
            require(polydisk_dist(pc.front(), out.points.back()) < 1e-12, "concat: pieces do not join");
        }
        const auto m = pc.tau.size() - 1;
        for (std::size_t i = 1; i <= m; ++i) {
            out.tau.push_back((static_cast<double>(done) + pc.tau[i] * static_cast<double>(m)) / static_cast<double>(total));
            out.points.push_back(pc.points[i]);
        }
        done += m;
    }
    out.tau.back() = 1.0;
    return out;
}

inline PathSample concat(std::initializer_list<PathSample> pieces)
{
    return concat(std::span<const PathSample>(pieces.begin(), pieces.size()));
}

inline PathSample reversed(const PathSample &p)
{
    PathSample r;
    for (std::size_t i = p.tau.size(); i-- > 0;) {
        r.tau.push_back(1.0 - p.tau[i]);
        r.points.push_back(p.points[i]);
    }
    r.tau.front() = 0.0;
    r.tau.back() = 1.0;
    r.clearance = p.clearance;
    return r;
}

// Minimum distance from the piecewise-linear base path (first coordinate) to the points.
inline double path_clearance(const PathSample &p, std::span<const Complex> points)
{
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < p.points.size(); ++i) {
        for (const auto &b : points) {
            d = std::min(d, detail::point_segment_distance(b, p.points[i][0], p.points[i + 1][0]));
        }
    }
    if (p.points.size() == 1) {
        for (const auto &b : points) {
            d = std::min(d, std::abs(p.points[0][0] - b));
        }
    }
    return d;
}

// Winding number of a closed base path about b.
inline double winding_number(const PathSample &p, Complex b)
{
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < p.points.size(); ++i) {
        total += angle_difference(std::arg(p.points[i + 1][0] - b), std::arg(p.points[i][0] - b));
    }
    return total / (2 * pi);
}

// ---------------------------------------------------------------------------
// Detours around branch points

enum class DetourSide { counterclockwise, clockwise };

struct Detour {
    std::vector<Complex> branch_points; // the cluster avoided
    Complex center;
    double radius = 0.0;
    double tau_in = 0.0;
    double tau_out = 0.0;
    double swept = 0.0; // signed angle of the replacement arc
    DetourSide side = DetourSide::counterclockwise;
};

struct PerturbedPath {
    PathSample path;
    std::vector<Detour> detours;
};

namespace detail
{

struct Disk {
    Complex center;
    double radius;
    std::vector<Complex> members;
};

// Branch points whose detour disks overlap are merged into one enclosing disk.
inline std::vector<Disk> detour_disks(std::span<const Complex> branch, double radius)
{
    std::vector<Disk> disks;
    for (const auto &b : branch) {
        disks.push_back({b, radius, {b}});
    }
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < disks.size() && !merged; ++i) {
            for (std::size_t j = i + 1; j < disks.size() && !merged; ++j) {
                if (std::abs(disks[i].center - disks[j].center) < disks[i].radius + disks[j].radius) {
                    std::vector<Complex> members = disks[i].members;
                    members.insert(members.end(), disks[j].members.begin(), disks[j].members.end());
                    Complex c(0.0);
                    for (const auto &m : members) {
                        c += m;
                    }
                    c /= static_cast<double>(members.size());
                    double r = 0.0;
                    for (const auto &m : members) {
                        r = std::max(r, std::abs(m - c));
                    }
                    disks[i] = {c, r + radius, members};
                    disks.erase(disks.begin() + static_cast<std::ptrdiff_t>(j));
                    merged = true;
                }
            }
        }
    }
    return disks;
}

// Parameters s in [0, 1] where the segment p + s (q - p) crosses |z - c| = r.
inline std::vector<double> circle_crossings(Complex p, Complex q, Complex c, double r)
{
    const Complex d = q - p;
    const Complex f = p - c;
    const double A = std::norm(d);
    const double B = 2.0 * (f * std::conj(d)).real();
    const double C = std::norm(f) - r * r;
    std::vector<double> out;
    if (A == 0.0) {
        return out;
    }
    const double disc = B * B - 4 * A * C;
    if (disc < 0.0) {
        return out;
    }
    const double sq = std::sqrt(disc);
    for (double s : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)}) {
        if (s >= 0.0 && s <= 1.0) {
            out.push_back(s);
        }
    }
    return out;
}

} // namespace detail

// Replace every stretch of the path that comes within `clearance` of a branch
// point by an arc of the circle of radius 1.5 * clearance around it (around an
// enclosing circle for clusters), on the requested side. The result keeps
// distance >= clearance from every branch point and stays within 3 * clearance
// of the input at equal tau for isolated branch points.
inline PerturbedPath perturb_avoid(const PathSample &gamma, std::span<const Complex> branch, double clearance,
                                   DetourSide side = DetourSide::counterclockwise)
{
    gamma.validate();
    require(clearance > 0.0, "perturb_avoid: clearance must be positive");
    for (const auto &b : branch) {
        if (std::abs(gamma.front()[0] - b) < clearance || std::abs(gamma.back()[0] - b) < clearance) {
            throw InvalidArgument("perturb_avoid: endpoint within clearance of a branch point");
        }
    }
    PerturbedPath out;
    out.path = gamma;
    if (path_clearance(gamma, branch) >= clearance) {
        out.path.clearance = path_clearance(gamma, branch);
        return out;
    }
    auto disks = detail::detour_disks(branch, 1.5 * clearance);
    for (auto &disk : disks) {
        // shrink so the endpoints stay outside, but never below the clearance
        const double ends = std::min(std::abs(gamma.front()[0] - disk.center), std::abs(gamma.back()[0] - disk.center));
        double spread = 0.0;
        for (const auto &m : disk.members) {
            spread = std::max(spread, std::abs(m - disk.center));
        }
        disk.radius = std::min(disk.radius, ends);
        if (disk.radius < spread + clearance) {
            throw InvalidArgument("perturb_avoid: endpoint too close to a cluster of branch points");
        }
    }

    for (const auto &disk : disks) {
        const auto &p = out.path;
        if (path_clearance(p, std::span<const Complex>(&disk.center, 1)) >= disk.radius) {
            continue;
        }
        // first entry and last exit
        std::optional<double> tin;
        std::optional<double> tout;
        for (std::size_t i = 0; i + 1 < p.points.size(); ++i) {
            const Complex a = p.points[i][0];
            const Complex b = p.points[i + 1][0];
            for (double s : detail::circle_crossings(a, b, disk.center, disk.radius)) {
                const double t = p.tau[i] + s * (p.tau[i + 1] - p.tau[i]);
                if (!tin || t < *tin) {
                    tin = t;
                }
                if (!tout || t > *tout) {
                    tout = t;
                }
            }
        }
        if (!tin || !tout || *tout <= *tin) {
            // touches the circle tangentially: push the single contact point outwards
            continue;
        }
        const Complex zin = p.at(*tin)[0];
        const Complex zout = p.at(*tout)[0];
        const double a0 = std::arg(zin - disk.center);
        double sweep = std::arg(zout - disk.center) - a0;
        if (side == DetourSide::counterclockwise) {
            while (sweep <= 0.0) {
                sweep += 2 * pi;
            }
        } else {
            while (sweep >= 0.0) {
                sweep -= 2 * pi;
            }
        }
        PathSample next;
        for (std::size_t i = 0; i < p.tau.size() && p.tau[i] < *tin; ++i) {
            next.tau.push_back(p.tau[i]);
            next.points.push_back(p.points[i]);
        }
        const auto narc = static_cast<std::size_t>(std::max(8.0, std::ceil(std::abs(sweep) / (pi / 32))));
        for (std::size_t k = 0; k <= narc; ++k) {
            const double s = static_cast<double>(k) / static_cast<double>(narc);
            const double t = *tin + s * (*tout - *tin);
            if (!next.tau.empty() && t <= next.tau.back()) {
                continue;
            }
            Complex z = disk.center + std::polar(disk.radius, a0 + s * sweep);
            if (k == 0) {
                z = zin;
            } else if (k == narc) {
                z = zout;
            }
            next.tau.push_back(t);
            next.points.emplace_back(std::vector<Complex>{z});
        }
        for (std::size_t i = 0; i < p.tau.size(); ++i) {
            if (p.tau[i] > next.tau.back()) {
                next.tau.push_back(p.tau[i]);
                next.points.push_back(p.points[i]);
            }
        }
        next.tau.front() = 0.0;
        out.detours.push_back({disk.members, disk.center, disk.radius, *tin, *tout, sweep, side});
        out.path = std::move(next);
    }
    out.path.clearance = path_clearance(out.path, branch);
    out.path.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Branched covers

// A cover of a region of the base plane given by a fiber polynomial
// P_z(w) = sum_k c_k(z) w^k of fixed degree in w.
struct BranchedCover {
    int degree = 1;
    std::function<UPoly(Complex)> fiber_poly;
    std::vector<Complex> branch_locus;

    [[nodiscard]] UPoly fiber(Complex z) const { return fiber_poly(z); }

    // |P_z(w)| relative to the size of its terms.
    [[nodiscard]] double residual(Complex z, Complex w) const
    {
        const auto p = fiber(z);
        double scale = 0.0;
        double aw = 1.0;
        for (const auto &c : p) {
            scale += std::abs(c) * aw;
            aw *= std::abs(w);
        }
        return std::abs(horner(p, w)) / std::max(1.0, scale);
    }

    [[nodiscard]] std::vector<Complex> fiber_values(Complex z) const { return root_values(fiber(z)); }

    void validate() const
    {
        require(degree >= 1, "BranchedCover: degree must be >= 1");
        require(static_cast<bool>(fiber_poly), "BranchedCover: missing fiber polynomial");
        for (const auto &b : branch_locus) {
            const auto vals = fiber_values(b);
            double sep = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < vals.size(); ++i) {
                for (std::size_t j = i + 1; j < vals.size(); ++j) {
                    sep = std::min(sep, std::abs(vals[i] - vals[j]));
                }
            }
            require(sep < 1e-5, "BranchedCover: branch point without a repeated fiber value");
        }
    }
};

// Zeros of z^3 + z^2 + t.
inline std::vector<Root> branch_locus(double t)
{
    const UPoly g{Complex(t), 0.0, 1.0, 1.0};
    return roots(g, 1e-7);
}

// Discriminant of z^3 + z^2 + t: -t (4 + 27 t).
inline double cubic_discriminant(double t) { return -t * (4.0 + 27.0 * t); }

// w^2 = z^3 + z^2 + t
inline BranchedCover nodal_cover(double t)
{
    BranchedCover c;
    c.degree = 2;
    c.fiber_poly = [t](Complex z) { return UPoly{-(z * z * z + z * z + t), 0.0, 1.0}; };
    for (const auto &r : branch_locus(t)) {
        c.branch_locus.push_back(r.value);
    }
    return c;
}

// w^2 = z
inline BranchedCover sqrt_cover()
{
    BranchedCover c;
    c.degree = 2;
    c.fiber_poly = [](Complex z) { return UPoly{-z, 0.0, 1.0}; };
    c.branch_locus = {0.0};
    return c;
}

struct LiftOptions {
    double margin = 3.0;      // nearest-root margin / step displacement
    int max_refine = 40;      // halvings per grid interval
    double residual_tol = 1e-10;
};

// Lift of a base path through w0 by nearest-root tracking: a step is accepted
// only if the distance from the chosen root to every other root is at least
// `margin` times the displacement of the tracked value. Returned points are
// (z, w) on the input tau grid.
inline PathSample lift_path(const BranchedCover &cov, const PathSample &gamma, Complex w0, const LiftOptions &opt = {})
{
    gamma.validate();
    require(gamma.front().dim() == 1, "lift_path: base path must be one-dimensional");
    if (cov.residual(gamma.front()[0], w0) > 1e-8) {
        throw InvalidArgument("lift_path: w0 is not a fiber point over gamma(0)");
    }
    // snap to the nearest exact root
    auto snap = [&](Complex z, Complex w) -> std::pair<Complex, double> {
        const auto vals = cov.fiber_values(z);
        std::size_t best = 0;
        for (std::size_t i = 1; i < vals.size(); ++i) {
            if (std::abs(vals[i] - w) < std::abs(vals[best] - w)) {
                best = i;
            }
        }
        double margin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i != best) {
                margin = std::min(margin, std::abs(vals[i] - vals[best]));
            }
        }
        return {vals[best], margin};
    };

    PathSample out;
    out.tau = gamma.tau;
    Complex z = gamma.front()[0];
    Complex w = snap(z, w0).first;
    out.points.emplace_back(std::vector<Complex>{z, w});
    double min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < gamma.tau.size(); ++i) {
        const Complex za = gamma.points[i][0];
        const Complex zb = gamma.points[i + 1][0];
        double s = 0.0;
        double h = 1.0;
        int refinements = 0;
        while (s < 1.0) {
            const double next = std::min(1.0, s + h);
            const Complex zn = za + next * (zb - za);
            const auto [wn, margin] = snap(zn, w);
            if (margin >= opt.margin * std::abs(wn - w)) {
                z = zn;
                w = wn;
                s = next;
                min_margin = std::min(min_margin, margin);
                h = std::min(1.0, 2 * h);
            } else {
                h *= 0.5;
                if (++refinements > opt.max_refine * 8 || h < std::ldexp(1.0, -opt.max_refine)) {
                    throw PathObstructed("lift_path: path too close to branch locus",
                                         gamma.tau[i] + s * (gamma.tau[i + 1] - gamma.tau[i]));
                }
            }
        }
        if (cov.residual(z, w) > opt.residual_tol) {
            throw PathObstructed("lift_path: lifted point fails the fiber equation", gamma.tau[i + 1]);
        }
        out.points.emplace_back(std::vector<Complex>{z, w});
    }
    out.clearance = path_clearance(gamma, cov.branch_locus);
    return out;
}

// Sheet permutation of a closed base loop in one-line notation: fiber values
// over gamma(0) are indexed in root order and entry i is the index reached
// from value i.
inline std::vector<int> monodromy(const BranchedCover &cov, const PathSample &loop, const LiftOptions &opt = {})
{
    require(polydisk_dist(loop.front(), loop.back()) < 1e-12, "monodromy: loop is not closed");
    const auto start = cov.fiber_values(loop.front()[0]);
    std::vector<int> perm;
    for (const auto &w0 : start) {
        const auto lifted = lift_path(cov, loop, w0, opt);
        const Complex w1 = lifted.back()[1];
        std::size_t best = 0;
        for (std::size_t j = 1; j < start.size(); ++j) {
            if (std::abs(start[j] - w1) < std::abs(start[best] - w1)) {
                best = j;
            }
        }
        perm.push_back(static_cast<int>(best));
    }
    return perm;
}

// sup over tau of the polydisk distance, after resampling both paths to the
// union of their grids.
inline double path_distance(const PathSample &a, const PathSample &b)
{
    a.validate();
    b.validate();
    require(a.front().dim() == b.front().dim(), "path_distance: dimension mismatch");
    std::vector<double> grid;
    std::merge(a.tau.begin(), a.tau.end(), b.tau.begin(), b.tau.end(), std::back_inserter(grid));
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    double d = 0.0;
    for (double s : grid) {
        d = std::max(d, polydisk_dist(a.at(s), b.at(s)));
    }
    return d;
}

} // namespace kontin

#endif
