#ifndef KONTIN_CORE_HPP
#define KONTIN_CORE_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kontin
{

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Precondition violations on user-supplied values.
class InvalidArgument : public Error
{
public:
    using Error::Error;
};

// Point lies outside the certified polydisk of a germ.
class OutsideEnvelope : public Error
{
public:
    using Error::Error;
};

inline void require(bool cond, const std::string &what)
{
    if (!cond) {
        throw InvalidArgument(what);
    }
}

// A point of C^n.
class CPoint
{
public:
    CPoint() = default;

    explicit CPoint(std::vector<Complex> coords) : m_coords(std::move(coords))
    {
        require(!m_coords.empty(), "CPoint: ambient dimension must be >= 1");
        for (const auto &c : m_coords) {
            require(std::isfinite(c.real()) && std::isfinite(c.imag()), "CPoint: non-finite coordinate");
        }
    }

    CPoint(std::initializer_list<Complex> coords) : CPoint(std::vector<Complex>(coords)) {}

    [[nodiscard]] std::size_t dim() const noexcept { return m_coords.size(); }
    [[nodiscard]] const Complex &operator[](std::size_t i) const { return m_coords[i]; }
    [[nodiscard]] const std::vector<Complex> &coords() const noexcept { return m_coords; }

    friend bool operator==(const CPoint &, const CPoint &) = default;

private:
    std::vector<Complex> m_coords;
};

inline CPoint operator+(const CPoint &p, const CPoint &q)
{
    require(p.dim() == q.dim(), "CPoint: dimension mismatch");
    std::vector<Complex> out(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) {
        out[i] = p[i] + q[i];
    }
    return CPoint(std::move(out));
}

inline CPoint operator-(const CPoint &p, const CPoint &q)
{
    require(p.dim() == q.dim(), "CPoint: dimension mismatch");
    std::vector<Complex> out(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) {
        out[i] = p[i] - q[i];
    }
    return CPoint(std::move(out));
}

inline CPoint lerp(const CPoint &p, const CPoint &q, double s)
{
    require(p.dim() == q.dim(), "CPoint: dimension mismatch");
    std::vector<Complex> out(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) {
        out[i] = p[i] + s * (q[i] - p[i]);
    }
    return CPoint(std::move(out));
}

// Principal argument difference folded into (-pi, pi].
inline double angle_difference(double a, double b)
{
    double d = std::remainder(a - b, 2 * pi);
    if (d <= -pi) {
        d += 2 * pi;
    }
    return d;
}

} // namespace kontin

#endif
