#ifndef KONTIN_SERIALIZE_HPP
#define KONTIN_SERIALIZE_HPP

#include <cstdio>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include <kontin/core.hpp>
#include <kontin/covers.hpp>
#include <kontin/germs.hpp>

namespace kontin
{

using json = nlohmann::ordered_json;

// Complex numbers are [re, im] pairs; points are lists of pairs.
inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const CPoint &p)
{
    json out = json::array();
    for (const auto &z : p.coords()) {
        out.push_back(to_json(z));
    }
    return out;
}

inline json to_json(std::span<const CPoint> pts)
{
    json out = json::array();
    for (const auto &p : pts) {
        out.push_back(to_json(p));
    }
    return out;
}

inline json to_json(const TaylorGerm &g)
{
    json coeffs = json::array();
    for (const auto &a : g.coeffs()) {
        coeffs.push_back(to_json(a));
    }
    json out{{"center", to_json(g.center())}, {"degree_cap", g.degree_cap()}, {"coeffs", coeffs}};
    if (g.envelope()) {
        out["envelope"] = {{"bound", g.envelope()->bound}, {"radius", g.envelope()->radius}};
    }
    return out;
}

inline json to_json(const PathSample &p)
{
    return {{"tau", p.tau}, {"points", to_json(std::span<const CPoint>(p.points))}, {"clearance", p.clearance}};
}

// Permutations in one-line notation: entry i is the image of sheet i.
inline json permutation_to_json(const std::vector<int> &perm) { return json(perm); }

inline Complex complex_from_json(const json &j)
{
    require(j.is_array() && j.size() == 2, "complex_from_json: expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline CPoint point_from_json(const json &j)
{
    require(j.is_array(), "point_from_json: expected a list of [re, im] pairs");
    std::vector<Complex> zs;
    for (const auto &c : j) {
        zs.push_back(complex_from_json(c));
    }
    return CPoint(std::move(zs));
}

inline TaylorGerm germ_from_json(const json &j)
{
    std::vector<Complex> coeffs;
    for (const auto &c : j.at("coeffs")) {
        coeffs.push_back(complex_from_json(c));
    }
    std::optional<Envelope> env;
    if (j.contains("envelope")) {
        env = Envelope{j["envelope"].at("bound").get<double>(), j["envelope"].at("radius").get<double>()};
    }
    return TaylorGerm(point_from_json(j.at("center")), j.at("degree_cap").get<int>(), std::move(coeffs), env);
}

inline PathSample path_from_json(const json &j)
{
    PathSample p;
    p.tau = j.at("tau").get<std::vector<double>>();
    for (const auto &q : j.at("points")) {
        p.points.push_back(point_from_json(q));
    }
    // non-finite clearances (no obstacles) are written as null
    const auto &c = j.value("clearance", json(0.0));
    p.clearance = c.is_null() ? std::numeric_limits<double>::infinity() : c.get<double>();
    return p;
}

// Round-trip decimal rendering used for CSV cells.
inline std::string format_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Table {
    std::string name; // file stem
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row)
    {
        require(row.size() == header.size(), "Table: row width mismatch");
        rows.push_back(std::move(row));
    }

    [[nodiscard]] std::string csv() const
    {
        std::string out;
        auto line = [&](const std::vector<std::string> &cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                out += (i ? "," : "") + cells[i];
            }
            out += '\n';
        };
        line(header);
        for (const auto &r : rows) {
            line(r);
        }
        return out;
    }
};

} // namespace kontin

#endif
