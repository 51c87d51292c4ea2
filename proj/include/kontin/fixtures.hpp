#ifndef KONTIN_FIXTURES_HPP
#define KONTIN_FIXTURES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <kontin/core.hpp>
#include <kontin/geometry.hpp>

namespace kontin
{

// Constants of the nodal-cubic family: parameter disk radius R, cone aperture
// delta and the deformation range eps < delta / R.
struct NodalConstants {
    double R = 10.0;
    double delta = 0.1;
    double eps = 0.005;

    void validate() const
    {
        require(R >= 10.0, "NodalConstants: R must be >= 10");
        require(delta > 0.0 && delta < 1.0, "NodalConstants: delta must lie in (0, 1)");
        require(eps > 0.0 && eps < delta / R, "NodalConstants: need 0 < eps < delta / R");
    }
};

enum class FamilyKind { param_3d, algebraic_2d, quadric_2d };

struct CurveFamily {
    FamilyKind kind = FamilyKind::param_3d;
    NodalConstants constants;
    double t_min = 0.0;
    double t_max = 0.0;

    // Phi_t(disk) for 0 <= t <= eps
    static CurveFamily param_3d(const NodalConstants &c) { return {FamilyKind::param_3d, c, 0.0, c.eps}; }
    // {w^2 = z^3 + z^2 + t} x {0} for -eps <= t <= 0
    static CurveFamily algebraic_2d(const NodalConstants &c) { return {FamilyKind::algebraic_2d, c, -c.eps, 0.0}; }
    // {z1^2 + z2^2 = t} in the unit ball for -1/2 <= t <= 1/2
    static CurveFamily quadric_2d(const NodalConstants &c) { return {FamilyKind::quadric_2d, c, -0.5, 0.5}; }

    void validate() const
    {
        constants.validate();
        require(t_min <= t_max, "CurveFamily: empty t range");
        switch (kind) {
        case FamilyKind::param_3d:
            require(t_min >= 0.0 && t_max <= constants.eps, "CurveFamily: param_3d range must lie in [0, eps]");
            break;
        case FamilyKind::algebraic_2d:
            require(t_min >= -constants.eps && t_max <= 0.0, "CurveFamily: algebraic_2d range must lie in [-eps, 0]");
            break;
        case FamilyKind::quadric_2d:
            require(t_min >= -0.5 && t_max <= 0.5, "CurveFamily: quadric_2d range must lie in [-1/2, 1/2]");
            break;
        }
    }

    [[nodiscard]] bool contains(double t) const { return t >= t_min && t <= t_max; }
};

// (lambda^2 - 1, lambda (lambda^2 - 1), t lambda)
inline CPoint phi(Complex lambda, double t)
{
    const Complex z = lambda * lambda - 1.0;
    return CPoint{z, lambda * z, t * lambda};
}

inline CPoint phi(const NodalConstants &c, Complex lambda, double t)
{
    require(std::abs(lambda) <= c.R * (1 + 1e-12), "phi: |lambda| must not exceed R");
    require(t >= 0.0 && t <= c.eps, "phi: t must lie in [0, eps]");
    return phi(lambda, t);
}

// d/dlambda of the (z, w) part of Phi_0
inline std::array<Complex, 2> phi_tangent(Complex lambda)
{
    return {2.0 * lambda, 3.0 * lambda * lambda - 1.0};
}

struct NodeReport {
    std::array<CPoint, 2> points;
    double residual = 0.0;
    std::array<std::array<Complex, 2>, 2> tangents;
    Complex determinant;
    [[nodiscard]] bool transverse() const { return std::abs(determinant) > 0.0; }
};

// Phi_0(+1) = Phi_0(-1) = 0 with tangents (2,2) and (-2,2).
inline NodeReport node_check()
{
    NodeReport r;
    r.points = {phi(1.0, 0.0), phi(-1.0, 0.0)};
    const CPoint origin{0.0, 0.0, 0.0};
    r.residual = std::max(polydisk_dist(r.points[0], origin), polydisk_dist(r.points[1], origin));
    r.tangents = {phi_tangent(1.0), phi_tangent(-1.0)};
    r.determinant = r.tangents[0][0] * r.tangents[1][1] - r.tangents[0][1] * r.tangents[1][0];
    return r;
}

// u lies in the open cone {|Arg u - Arg lambda| < arcsin delta, |u| < delta}.
// At lambda = 0 only u = 0 is accepted (closure convention); any other u has no
// defined cone and is rejected.
inline bool cone_contains(Complex lambda, double delta, Complex u)
{
    require(delta > 0.0 && delta <= 1.0, "cone_contains: delta must lie in (0, 1]");
    if (lambda == Complex(0.0)) {
        if (u == Complex(0.0)) {
            return true;
        }
        throw InvalidArgument("cone_contains: Arg is undefined at lambda = 0");
    }
    if (!(std::abs(u) < delta)) {
        return false;
    }
    if (u == Complex(0.0)) {
        return true;
    }
    return std::abs(angle_difference(std::arg(u), std::arg(lambda))) < std::asin(delta);
}

// The two roots of w^2 = z^3 + z^2 + t, principal root first.
inline std::pair<Complex, Complex> algebraic_fiber(Complex z, double t)
{
    const Complex w = std::sqrt(z * z * z + z * z + t);
    return {w, -w};
}

// The two solutions z2 of z1^2 + z2^2 = t, principal root first.
inline std::pair<Complex, Complex> quadric_fiber(Complex z1, double t)
{
    // Complex(t) keeps a +0 imaginary part, so real negative radicands take the upper root
    const Complex z2 = std::sqrt(Complex(t) - z1 * z1);
    return {z2, -z2};
}

// ---------------------------------------------------------------------------
// Polar sampling of the parameter disk

struct GridSpec {
    double mesh_target = 25.0;    // image-space cell size aimed for
    double max_radial_step = 0.25; // lambda units
    int min_angles = 32;
    double inner_radius = 0.25; // innermost ring; the hole is covered by the mesh bound
};

// Rings r_0 < ... < r_J = R with angle counts that divide the boundary count,
// so every ring node lies on a ray through a boundary node. Radius 1 is always
// a ring and every count is even, so lambda = +1 and -1 are nodes.
struct PolarGrid {
    double R = 0.0;
    std::vector<double> radii;
    std::vector<int> angle_counts;

    [[nodiscard]] int boundary_angles() const { return angle_counts.back(); }
    [[nodiscard]] std::size_t size() const
    {
        std::size_t s = 0;
        for (int n : angle_counts) {
            s += static_cast<std::size_t>(n);
        }
        return s;
    }
    // Boundary-angle stride between nodes on ring j.
    [[nodiscard]] int stride(std::size_t ring) const { return boundary_angles() / angle_counts[ring]; }

    [[nodiscard]] Complex node(std::size_t ring, int k) const
    {
        if (ring + 1 == radii.size()) {
            return std::polar(R, 2 * pi * k / angle_counts[ring]);
        }
        return std::polar(radii[ring], 2 * pi * k / angle_counts[ring]);
    }
};

// Lipschitz bound (polydisk metric) of Phi_t on the disk of radius r.
inline double phi_lipschitz(double r, double t = 0.0)
{
    return std::max({2.0 * r, 3.0 * r * r + 1.0, std::abs(t)});
}

inline PolarGrid make_polar_grid(double R, const GridSpec &spec, const std::function<double(double)> &lip = [](double r) {
    return phi_lipschitz(r);
})
{
    require(R > 1.0, "make_polar_grid: R must exceed 1");
    require(spec.mesh_target > 0.0 && spec.max_radial_step > 0.0, "make_polar_grid: invalid spacing");
    require(spec.inner_radius > 0.0 && spec.inner_radius <= 1.0, "make_polar_grid: inner radius must lie in (0, 1]");
    require(spec.min_angles >= 4, "make_polar_grid: need at least 4 angles");

    std::vector<double> radii{R};
    double r = R;
    while (true) {
        const double dr = std::min(spec.max_radial_step, spec.mesh_target / (2.0 * lip(r)));
        double next = r - dr;
        if (r > 1.0 && next < 1.0) {
            next = 1.0;
        }
        if (next < spec.inner_radius - 1e-12) {
            break;
        }
        radii.push_back(next);
        r = next;
    }
    std::reverse(radii.begin(), radii.end());

    auto wanted = [&](double rr) {
        return std::max(static_cast<double>(spec.min_angles), 2 * pi * rr * lip(rr) / spec.mesh_target);
    };
    int nmax = 4;
    while (nmax < wanted(R)) {
        nmax *= 2;
    }
    PolarGrid g;
    g.R = R;
    g.radii = radii;
    for (double rr : radii) {
        int n = nmax;
        while (n % 2 == 0 && n / 2 >= wanted(rr) && n / 2 >= 4) {
            n /= 2;
        }
        g.angle_counts.push_back(n);
    }
    return g;
}

// Distance in the parameter disk from any point of the band below ring j
// (or of the central hole for j = 0) to the nearest node of ring j.
inline double cell_reach(const PolarGrid &g, std::size_t ring)
{
    const double r = g.radii[ring];
    const double below = ring == 0 ? r : r - g.radii[ring - 1];
    return below + r * pi / g.angle_counts[ring];
}

// Samples of one member of a family plus the parameter of every sample.
struct FamilySample {
    SampledSetWithBoundary set;
    std::vector<Complex> params;          // lambda (or zeta) per closure sample
    std::vector<std::size_t> ring_of;     // ring index per closure sample
    std::vector<std::size_t> boundary_of; // closure index of each boundary sample
    double t = 0.0;
};

namespace detail
{

inline FamilySample sample_param_3d(const PolarGrid &g, double t)
{
    FamilySample s;
    s.t = t;
    s.set.ambient_dim = 3;
    double mesh = 0.0;
    for (std::size_t j = 0; j < g.radii.size(); ++j) {
        for (int k = 0; k < g.angle_counts[j]; ++k) {
            const Complex lambda = g.node(j, k);
            s.set.closure_samples.push_back(phi(lambda, t));
            s.params.push_back(lambda);
            s.ring_of.push_back(j);
        }
        mesh = std::max(mesh, phi_lipschitz(g.radii[j], t) * cell_reach(g, j));
    }
    const std::size_t first = s.set.closure_samples.size() - static_cast<std::size_t>(g.angle_counts.back());
    for (std::size_t i = first; i < s.set.closure_samples.size(); ++i) {
        s.set.boundary_samples.push_back(s.set.closure_samples[i]);
        s.boundary_of.push_back(i);
    }
    s.set.mesh = mesh;
    return s;
}

// Fiber point over z = lambda^2 - 1 nearest to the nodal curve's w = lambda z.
inline Complex fiber_near_nodal(Complex lambda, double t)
{
    const Complex z = lambda * lambda - 1.0;
    const auto [w1, w2] = algebraic_fiber(z, t);
    const Complex target = lambda * z;
    return std::abs(w2 - target) < std::abs(w1 - target) ? w2 : w1;
}

// For every true point (z, w) take lambda with lambda^2 = z + 1 and the nearest
// ring node lambda_s; both fiber points over z_s are samples (the grid is
// symmetric under lambda -> -lambda), and |sqrt(a) - sqrt(b)| <=
// min(sqrt|a-b|, |a-b| / |sqrt(b)|) for the nearer branch.
inline FamilySample sample_algebraic_2d(const PolarGrid &g, double t)
{
    FamilySample s;
    s.t = t;
    s.set.ambient_dim = 3;
    double mesh = 0.0;
    for (std::size_t j = 0; j < g.radii.size(); ++j) {
        const double reach = cell_reach(g, j);
        const double r = g.radii[j];
        const double dz = 2.0 * r * reach;
        for (int k = 0; k < g.angle_counts[j]; ++k) {
            const Complex lambda = g.node(j, k);
            const Complex z = lambda * lambda - 1.0;
            const Complex w = fiber_near_nodal(lambda, t);
            s.set.closure_samples.push_back(CPoint{z, w, 0.0});
            s.params.push_back(lambda);
            s.ring_of.push_back(j);
            const double zmax = std::abs(z) + dz;
            const double dg = (3.0 * zmax * zmax + 2.0 * zmax) * dz;
            double dw = std::sqrt(dg);
            if (std::abs(w) > 0.0) {
                dw = std::min(dw, dg / std::abs(w));
            }
            mesh = std::max({mesh, dz, dw});
        }
    }
    const std::size_t first = s.set.closure_samples.size() - static_cast<std::size_t>(g.angle_counts.back());
    for (std::size_t i = first; i < s.set.closure_samples.size(); ++i) {
        s.set.boundary_samples.push_back(s.set.closure_samples[i]);
        s.boundary_of.push_back(i);
    }
    s.set.mesh = mesh;
    return s;
}

// z1^2 + z2^2 = t in the unit ball via a = z1 + i z2 = zeta, b = z1 - i z2 = t / zeta,
// so |z|^2 = (|zeta|^2 + t^2 / |zeta|^2) / 2 and the ball is an annulus in zeta.
inline CPoint quadric_point(Complex a, Complex b)
{
    return CPoint{(a + b) / 2.0, (a - b) / Complex(0.0, 2.0)};
}

inline FamilySample sample_quadric_2d(double t, const GridSpec &spec)
{
    FamilySample s;
    s.t = t;
    s.set.ambient_dim = 2;
    const int rings = std::max(8, static_cast<int>(std::ceil(1.0 / spec.max_radial_step)) * 4);
    const int angles = std::max(spec.min_angles, 64);
    double mesh = 0.0;
    auto add = [&](Complex a, Complex b, Complex param) {
        s.set.closure_samples.push_back(quadric_point(a, b));
        s.params.push_back(param);
    };
    if (t == 0.0) {
        // two discs {a = 0} and {b = 0}, |zeta| <= sqrt(2)
        const double smax = std::sqrt(2.0);
        for (int branch = 0; branch < 2; ++branch) {
            for (int i = 0; i <= rings; ++i) {
                const double rad = smax * i / rings;
                for (int k = 0; k < (i == 0 ? 1 : angles); ++k) {
                    const Complex zeta = std::polar(rad, 2 * pi * k / angles);
                    if (branch == 0) {
                        add(zeta, 0.0, zeta);
                    } else {
                        add(0.0, zeta, zeta);
                    }
                    s.ring_of.push_back(static_cast<std::size_t>(i));
                    if (i == rings) {
                        s.boundary_of.push_back(s.set.closure_samples.size() - 1);
                    }
                }
            }
        }
        // |d(z1, z2)/dzeta| = 1/2
        mesh = 0.5 * (smax / rings + smax * pi / angles);
    } else {
        const double root = std::sqrt(1.0 - t * t);
        const double smin = std::sqrt(1.0 - root);
        const double smax = std::sqrt(1.0 + root);
        for (int i = 0; i <= rings; ++i) {
            const double rad = smin + (smax - smin) * i / rings;
            for (int k = 0; k < angles; ++k) {
                const Complex zeta = std::polar(rad, 2 * pi * k / angles);
                add(zeta, t / zeta, zeta);
                s.ring_of.push_back(static_cast<std::size_t>(i));
                if (i == 0 || i == rings) {
                    s.boundary_of.push_back(s.set.closure_samples.size() - 1);
                }
            }
        }
        // |d(z1, z2)/dzeta| <= (1 + |t| / |zeta|^2) / 2
        const double lip = 0.5 * (1.0 + std::abs(t) / (smin * smin));
        mesh = lip * ((smax - smin) / (2.0 * rings) + smax * pi / angles);
    }
    for (auto i : s.boundary_of) {
        s.set.boundary_samples.push_back(s.set.closure_samples[i]);
    }
    s.set.mesh = mesh;
    return s;
}

} // namespace detail

// Samples of C_t for the family. Boundary samples are the image of |lambda| = R
// (or of the sphere |z| = 1 for the quadric family).
inline FamilySample sample_family(const CurveFamily &fam, double t, const GridSpec &spec = {})
{
    fam.validate();
    if (!fam.contains(t)) {
        throw InvalidArgument("sample_family: t outside the family's range");
    }
    switch (fam.kind) {
    case FamilyKind::param_3d:
        return detail::sample_param_3d(make_polar_grid(fam.constants.R, spec), t);
    case FamilyKind::algebraic_2d:
        return detail::sample_algebraic_2d(make_polar_grid(fam.constants.R, spec), t);
    case FamilyKind::quadric_2d:
        return detail::sample_quadric_2d(t, spec);
    }
    throw InvalidArgument("sample_family: unknown kind");
}

// Whole nodal family on [-eps, eps]: algebraic for t < 0, parameterized for t >= 0.
// `allow_outside` admits t > eps for the parameterized branch (discrete sequences t = 1/k).
inline FamilySample sample_nodal(const NodalConstants &c, double t, const GridSpec &spec = {}, bool allow_outside = false)
{
    c.validate();
    if (t < 0.0) {
        return sample_family(CurveFamily::algebraic_2d(c), t, spec);
    }
    if (t > c.eps) {
        require(allow_outside && t <= 1.0, "sample_nodal: t outside [-eps, eps]");
        return detail::sample_param_3d(make_polar_grid(c.R, spec), t);
    }
    return sample_family(CurveFamily::param_3d(c), t, spec);
}

// Pairs of parameters (lambda, mu) with |lambda - mu| >= min_separation whose
// images under Phi_0 are within tol.
inline std::vector<std::pair<Complex, Complex>> find_self_intersections(std::span<const Complex> params, double tol,
                                                                        double min_separation)
{
    std::vector<CPoint> pts;
    for (const auto &l : params) {
        pts.push_back(phi(l, 0.0));
    }
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pts[a][0].real() < pts[b][0].real(); });
    std::vector<std::pair<Complex, Complex>> hits;
    for (std::size_t a = 0; a < order.size(); ++a) {
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            const auto i = order[a];
            const auto j = order[b];
            if (pts[j][0].real() - pts[i][0].real() >= tol) {
                break;
            }
            if (polydisk_dist(pts[i], pts[j]) < tol && std::abs(params[i] - params[j]) >= min_separation) {
                hits.emplace_back(params[i], params[j]);
            }
        }
    }
    return hits;
}

// ---------------------------------------------------------------------------
// Removability fixture

struct RemovabilityReport {
    double t = 0.0;
    bool has_real_points = false;    // exact: x1^2 + x2^2 = t has real solutions in the ball iff 0 <= t <= 1
    double min_imag_norm_sq = 0.0;   // min over samples of |Im z|^2
    bool boundary_in_compact = false; // all boundary samples in {1/4 <= |x|^2 <= 3/4, 1/4 <= |y|^2 <= 3/4}
    std::size_t boundary_samples = 0;
};

inline RemovabilityReport removability_report(double t, const GridSpec &spec = {})
{
    const auto s = sample_family(CurveFamily::quadric_2d(NodalConstants{}), t, spec);
    RemovabilityReport r;
    r.t = t;
    r.has_real_points = t >= 0.0 && t <= 1.0;
    r.min_imag_norm_sq = std::numeric_limits<double>::infinity();
    for (const auto &p : s.set.closure_samples) {
        r.min_imag_norm_sq = std::min(r.min_imag_norm_sq, p[0].imag() * p[0].imag() + p[1].imag() * p[1].imag());
    }
    r.boundary_in_compact = true;
    const double slack = 1e-12;
    for (const auto &p : s.set.boundary_samples) {
        const double x2 = p[0].real() * p[0].real() + p[1].real() * p[1].real();
        const double y2 = p[0].imag() * p[0].imag() + p[1].imag() * p[1].imag();
        if (x2 < 0.25 - slack || x2 > 0.75 + slack || y2 < 0.25 - slack || y2 > 0.75 + slack) {
            r.boundary_in_compact = false;
        }
    }
    r.boundary_samples = s.set.boundary_samples.size();
    return r;
}

// ---------------------------------------------------------------------------
// Essential singularity fixture

class SingularLocus : public Error
{
public:
    using Error::Error;
};

// exp(xi2 / xi1), holomorphic off {xi1 = 0}.
inline Complex essential_fn(Complex xi1, Complex xi2)
{
    if (xi1 == Complex(0.0)) {
        throw SingularLocus("essential_fn: xi1 = 0 is the essential singular locus");
    }
    return std::exp(xi2 / xi1);
}

// log|exp(xi2 / xi1)| without overflow.
inline double essential_log_modulus(Complex xi1, Complex xi2)
{
    if (xi1 == Complex(0.0)) {
        throw SingularLocus("essential_log_modulus: xi1 = 0 is the essential singular locus");
    }
    return (xi2 / xi1).real();
}

// Largest s0 such that 1/s > k log(1/s) for all 0 < s < s0, i.e. e^{1/s} > s^{-k}.
// Returns +infinity when the inequality holds for every s > 0 (k <= 2).
inline double essential_threshold(int k)
{
    require(k >= 1, "essential_threshold: k must be >= 1");
    // h(s) = 1/s + k log s has its minimum at s = 1/k with value k (1 - log k)
    if (k * (1.0 - std::log(static_cast<double>(k))) > 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    auto h = [k](double s) { return 1.0 / s + k * std::log(s); };
    double lo = 1e-300;
    double hi = 1.0 / k;
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi) > 0.0 && hi / lo > 4.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        if (h(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

// ---------------------------------------------------------------------------
// Maximum modulus diagnostics

struct MaxModulusReport {
    double max_interior = 0.0;
    double max_boundary = 0.0;
    bool ok = false;
};

// `lipschitz` bounds |f(p) - f(q)| / polydisk_dist(p, q) on the region sampled.
inline MaxModulusReport max_modulus_report(const SampledSetWithBoundary &set,
                                           const std::function<Complex(const CPoint &)> &f, double lipschitz)
{
    require(!set.boundary_samples.empty(), "max_modulus_report: no boundary samples");
    MaxModulusReport r;
    for (const auto &p : set.closure_samples) {
        r.max_interior = std::max(r.max_interior, std::abs(f(p)));
    }
    for (const auto &p : set.boundary_samples) {
        r.max_boundary = std::max(r.max_boundary, std::abs(f(p)));
    }
    r.ok = r.max_interior <= r.max_boundary * (1.0 + 1e-6) + lipschitz * set.mesh;
    return r;
}

struct RefineChain {
    std::vector<std::vector<std::size_t>> levels; // indices into the input, K_0 first
    double final_diameter = 0.0;
};

// K_0 = all samples; K_j keeps the points of K_{j-1} where |z_j| is within tol
// of its maximum over K_{j-1}.
inline RefineChain iterated_max_refine(std::span<const CPoint> pts, double tol = 1e-9)
{
    require(!pts.empty(), "iterated_max_refine: empty sample");
    RefineChain chain;
    std::vector<std::size_t> cur(pts.size());
    for (std::size_t i = 0; i < cur.size(); ++i) {
        cur[i] = i;
    }
    chain.levels.push_back(cur);
    const auto n = pts.front().dim();
    for (std::size_t j = 0; j < n; ++j) {
        double best = 0.0;
        for (auto i : cur) {
            best = std::max(best, std::abs(pts[i][j]));
        }
        std::vector<std::size_t> next;
        for (auto i : cur) {
            if (std::abs(pts[i][j]) >= best - tol * std::max(1.0, best)) {
                next.push_back(i);
            }
        }
        cur = std::move(next);
        chain.levels.push_back(cur);
    }
    std::vector<CPoint> last;
    for (auto i : cur) {
        last.push_back(pts[i]);
    }
    chain.final_diameter = diameter(last);
    return chain;
}

} // namespace kontin

#endif
