#ifndef KONTIN_GEOMETRY_HPP
#define KONTIN_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include <kontin/core.hpp>

namespace kontin
{

// Finite samples of a compact analytic set and of its boundary. Every true point
// of the set lies within `mesh` (polydisk distance) of some closure sample.
struct SampledSetWithBoundary {
    std::vector<CPoint> closure_samples;
    std::vector<CPoint> boundary_samples;
    std::size_t ambient_dim = 0;
    double mesh = 0.0;

    void validate() const
    {
        require(mesh > 0.0, "SampledSetWithBoundary: mesh must be positive");
        require(!closure_samples.empty(), "SampledSetWithBoundary: no closure samples");
        for (const auto &p : closure_samples) {
            require(p.dim() == ambient_dim, "SampledSetWithBoundary: closure sample dimension mismatch");
        }
        for (const auto &p : boundary_samples) {
            require(p.dim() == ambient_dim, "SampledSetWithBoundary: boundary sample dimension mismatch");
        }
    }
};

// max_i |p_i - q_i|
inline double polydisk_dist(const CPoint &p, const CPoint &q)
{
    require(p.dim() == q.dim(), "polydisk_dist: dimension mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        d = std::max(d, std::abs(p[i] - q[i]));
    }
    return d;
}

inline double euclidean_dist(const CPoint &p, const CPoint &q)
{
    require(p.dim() == q.dim(), "euclidean_dist: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        s += std::norm(p[i] - q[i]);
    }
    return std::sqrt(s);
}

namespace detail
{

inline void check_nonempty(std::span<const CPoint> a, std::span<const CPoint> b, const char *who)
{
    if (a.empty() || b.empty()) {
        throw InvalidArgument(std::string(who) + ": empty point set");
    }
    const auto n = a.front().dim();
    for (const auto &p : a) {
        require(p.dim() == n, std::string(who) + ": dimension mismatch");
    }
    for (const auto &p : b) {
        require(p.dim() == n, std::string(who) + ": dimension mismatch");
    }
}

} // namespace detail

// min over pairs of polydisk distance
inline double set_dist(std::span<const CPoint> a, std::span<const CPoint> b)
{
    detail::check_nonempty(a, b, "set_dist");
    double best = std::numeric_limits<double>::infinity();
    for (const auto &p : a) {
        for (const auto &q : b) {
            best = std::min(best, polydisk_dist(p, q));
        }
    }
    return best;
}

inline double set_dist(const SampledSetWithBoundary &a, const SampledSetWithBoundary &b)
{
    return set_dist(std::span<const CPoint>(a.closure_samples), std::span<const CPoint>(b.closure_samples));
}

// sup_{a in A} inf_{b in B} d(a, b), brute force.
inline double directed_hausdorff(std::span<const CPoint> a, std::span<const CPoint> b)
{
    detail::check_nonempty(a, b, "directed_hausdorff");
    double worst = 0.0;
    for (const auto &p : a) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto &q : b) {
            best = std::min(best, polydisk_dist(p, q));
            if (best <= worst) {
                // p cannot raise the sup any further
                break;
            }
        }
        worst = std::max(worst, best);
    }
    return worst;
}

// Reference O(|A||B|) Hausdorff distance in the polydisk metric.
inline double hausdorff_dist(std::span<const CPoint> a, std::span<const CPoint> b)
{
    detail::check_nonempty(a, b, "hausdorff_dist");
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

namespace detail
{

// Complex coordinate with the largest real or imaginary spread over the set.
inline std::size_t widest_coordinate(std::span<const CPoint> pts)
{
    const auto n = pts.front().dim();
    std::size_t best = 0;
    double widest = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        double lo_re = std::numeric_limits<double>::infinity();
        double hi_re = -lo_re;
        double lo_im = lo_re;
        double hi_im = hi_re;
        for (const auto &p : pts) {
            lo_re = std::min(lo_re, p[i].real());
            hi_re = std::max(hi_re, p[i].real());
            lo_im = std::min(lo_im, p[i].imag());
            hi_im = std::max(hi_im, p[i].imag());
        }
        const double w = std::max(hi_re - lo_re, hi_im - lo_im);
        if (w > widest) {
            widest = w;
            best = i;
        }
    }
    return best;
}

} // namespace detail

// Bucket grid over the plane of one complex coordinate. Rings of cells are
// visited outwards from the query's cell and the search stops once the
// Chebyshev gap to the next ring reaches the best distance found, so the
// result is the exact minimum over all items.
template <typename Item>
class PlaneIndex
{
public:
    // key(item) -> Complex; its real and imaginary parts must each be
    // 1-Lipschitz w.r.t. the distance used in queries.
    template <typename KeyFn>
    PlaneIndex(std::span<const Item> items, KeyFn key) : m_items(items)
    {
        require(!items.empty(), "PlaneIndex: no items");
        std::vector<Complex> keys(items.size());
        double x0 = std::numeric_limits<double>::infinity();
        double y0 = x0;
        double x1 = -x0;
        double y1 = -x0;
        for (std::size_t i = 0; i < items.size(); ++i) {
            keys[i] = key(items[i]);
            x0 = std::min(x0, keys[i].real());
            x1 = std::max(x1, keys[i].real());
            y0 = std::min(y0, keys[i].imag());
            y1 = std::max(y1, keys[i].imag());
        }
        const double w = x1 - x0;
        const double h = y1 - y0;
        const auto n = static_cast<double>(items.size());
        m_cell = std::max({std::sqrt(w * h / n), std::max(w, h) / n, 1e-300});
        m_x0 = x0;
        m_y0 = y0;
        m_nx = static_cast<std::ptrdiff_t>(w / m_cell) + 1;
        m_ny = static_cast<std::ptrdiff_t>(h / m_cell) + 1;
        std::vector<std::size_t> cell_of(items.size());
        m_start.assign(static_cast<std::size_t>(m_nx * m_ny) + 1, 0);
        for (std::size_t i = 0; i < items.size(); ++i) {
            cell_of[i] = flat(clamp_x(keys[i].real()), clamp_y(keys[i].imag()));
            ++m_start[cell_of[i] + 1];
        }
        std::partial_sum(m_start.begin(), m_start.end(), m_start.begin());
        m_order.resize(items.size());
        auto fill = m_start;
        for (std::size_t i = 0; i < items.size(); ++i) {
            m_order[fill[cell_of[i]]++] = i;
        }
    }

    // dist(query, item, current_best) may return any value >= current_best when
    // the true distance is >= current_best (early rejection).
    template <typename Query, typename DistFn>
    [[nodiscard]] double nearest(const Query &q, Complex qkey, DistFn dist,
                                 double best = std::numeric_limits<double>::infinity()) const
    {
        const auto cx = clamp_x(qkey.real());
        const auto cy = clamp_y(qkey.imag());
        const auto rmax = std::max({cx, m_nx - 1 - cx, cy, m_ny - 1 - cy});
        for (std::ptrdiff_t r = 0; r <= rmax; ++r) {
            if (static_cast<double>(r - 1) * m_cell >= best) {
                break;
            }
            for (std::ptrdiff_t i = cx - r; i <= cx + r; ++i) {
                if (i < 0 || i >= m_nx) {
                    continue;
                }
                const bool edge_col = (i == cx - r || i == cx + r);
                for (std::ptrdiff_t j = cy - r; j <= cy + r; j += (edge_col || r == 0) ? 1 : 2 * r) {
                    if (j < 0 || j >= m_ny) {
                        continue;
                    }
                    const auto c = flat(i, j);
                    for (auto k = m_start[c]; k < m_start[c + 1]; ++k) {
                        best = std::min(best, dist(q, m_items[m_order[k]], best));
                    }
                }
            }
        }
        return best;
    }

private:
    [[nodiscard]] std::ptrdiff_t clamp_x(double x) const
    {
        return std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(std::floor((x - m_x0) / m_cell)), 0, m_nx - 1);
    }
    [[nodiscard]] std::ptrdiff_t clamp_y(double y) const
    {
        return std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(std::floor((y - m_y0) / m_cell)), 0, m_ny - 1);
    }
    [[nodiscard]] std::size_t flat(std::ptrdiff_t i, std::ptrdiff_t j) const
    {
        return static_cast<std::size_t>(j * m_nx + i);
    }

    std::span<const Item> m_items;
    double m_cell = 1.0;
    double m_x0 = 0.0;
    double m_y0 = 0.0;
    std::ptrdiff_t m_nx = 1;
    std::ptrdiff_t m_ny = 1;
    std::vector<std::size_t> m_start;
    std::vector<std::size_t> m_order;
};

// Accelerated Hausdorff distance; returns the same double as hausdorff_dist.
inline double hausdorff_dist_indexed(std::span<const CPoint> a, std::span<const CPoint> b)
{
    detail::check_nonempty(a, b, "hausdorff_dist_indexed");
    auto one_side = [](std::span<const CPoint> from, std::span<const CPoint> to) {
        const auto axis = detail::widest_coordinate(to);
        PlaneIndex<CPoint> index(to, [&](const CPoint &p) { return p[axis]; });
        double worst = 0.0;
        for (const auto &p : from) {
            const double d =
                index.nearest(p, p[axis], [](const CPoint &x, const CPoint &y, double) { return polydisk_dist(x, y); });
            worst = std::max(worst, d);
        }
        return worst;
    };
    return std::max(one_side(a, b), one_side(b, a));
}

// (closure distance, boundary distance): convergence of sets with boundary
// requires both components to go to zero.
inline std::pair<double, double> pair_hausdorff(const SampledSetWithBoundary &a, const SampledSetWithBoundary &b)
{
    require(a.ambient_dim == b.ambient_dim, "pair_hausdorff: dimension mismatch");
    return {hausdorff_dist_indexed(a.closure_samples, b.closure_samples),
            hausdorff_dist_indexed(a.boundary_samples, b.boundary_samples)};
}

// Largest pairwise polydisk distance.
inline double diameter(std::span<const CPoint> pts)
{
    double d = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            d = std::max(d, polydisk_dist(pts[i], pts[j]));
        }
    }
    return d;
}

} // namespace kontin

#endif
