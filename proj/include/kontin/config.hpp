#ifndef KONTIN_CONFIG_HPP
#define KONTIN_CONFIG_HPP

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <kontin/core.hpp>
#include <kontin/fixtures.hpp>

namespace kontin
{

inline constexpr std::array<std::string_view, 10> experiment_names{
    "hausdorff-sweep", "node-check", "cone-claim", "monodromy", "lift-discrete",
    "lift-breakdown", "gromov-diag", "removability", "essential-sing", "max-modulus"};

inline bool is_experiment(std::string_view name)
{
    return std::find(experiment_names.begin(), experiment_names.end(), name) != experiment_names.end();
}

// Flat key=value configuration. Recognised keys:
//   R, delta, eps            family constants (R >= 10, 0 < eps < delta / R)
//   degree_cap, clearance    germ truncation order, branch-point clearance
//   mesh_target, max_radial_step, inner_radius   sampling grid
//   t_grid, k_grid           comma-separated lists; experiment defaults when unset
//   seed, trials             randomized suites
//   output_dir
struct ExperimentConfig {
    std::string experiment;
    NodalConstants constants;
    int degree_cap = 24;
    double clearance = 1e-3;
    GridSpec grid;
    std::optional<std::vector<double>> t_grid;
    std::optional<std::vector<int>> k_grid;
    std::uint64_t seed = 1;
    int trials = 100;
    std::string output_dir;

    void validate() const
    {
        require(is_experiment(experiment), "config: unknown experiment '" + experiment + "'");
        constants.validate();
        require(degree_cap >= 2 && degree_cap <= 200, "config: degree_cap must lie in [2, 200]");
        require(clearance > 0.0 && clearance < 0.1, "config: clearance must lie in (0, 0.1)");
        require(grid.mesh_target > 0.0, "config: mesh_target must be positive");
        require(grid.max_radial_step > 0.0, "config: max_radial_step must be positive");
        require(grid.inner_radius > 0.0 && grid.inner_radius < 1.0, "config: inner_radius must lie in (0, 1)");
        require(trials >= 1, "config: trials must be >= 1");
        if (t_grid) {
            require(!t_grid->empty(), "config: t_grid is empty");
        }
        if (k_grid) {
            require(!k_grid->empty(), "config: k_grid is empty");
            for (int k : *k_grid) {
                require(k >= 1, "config: k_grid entries must be >= 1");
            }
        }
    }
};

namespace detail
{

inline std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string &key, const std::string &v)
{
    double x = 0.0;
    const auto *end = v.data() + v.size();
    const auto [p, ec] = std::from_chars(v.data(), end, x);
    require(ec == std::errc() && p == end, "config: '" + key + "' expects a number, got '" + v + "'");
    return x;
}

template <typename Int>
Int parse_int(const std::string &key, const std::string &v)
{
    Int x = 0;
    const auto *end = v.data() + v.size();
    const auto [p, ec] = std::from_chars(v.data(), end, x);
    require(ec == std::errc() && p == end, "config: '" + key + "' expects an integer, got '" + v + "'");
    return x;
}

inline std::vector<std::string> split_list(const std::string &v)
{
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(trim(item));
    }
    return out;
}

} // namespace detail

inline void set_config_value(ExperimentConfig &cfg, const std::string &key, const std::string &value)
{
    using detail::parse_double;
    if (key == "R") {
        cfg.constants.R = parse_double(key, value);
    } else if (key == "delta") {
        cfg.constants.delta = parse_double(key, value);
    } else if (key == "eps") {
        cfg.constants.eps = parse_double(key, value);
    } else if (key == "degree_cap") {
        cfg.degree_cap = detail::parse_int<int>(key, value);
    } else if (key == "clearance") {
        cfg.clearance = parse_double(key, value);
    } else if (key == "mesh_target") {
        cfg.grid.mesh_target = parse_double(key, value);
    } else if (key == "max_radial_step") {
        cfg.grid.max_radial_step = parse_double(key, value);
    } else if (key == "inner_radius") {
        cfg.grid.inner_radius = parse_double(key, value);
    } else if (key == "t_grid") {
        std::vector<double> ts;
        for (const auto &s : detail::split_list(value)) {
            ts.push_back(parse_double(key, s));
        }
        cfg.t_grid = ts;
    } else if (key == "k_grid") {
        std::vector<int> ks;
        for (const auto &s : detail::split_list(value)) {
            ks.push_back(detail::parse_int<int>(key, s));
        }
        cfg.k_grid = ks;
    } else if (key == "seed") {
        cfg.seed = detail::parse_int<std::uint64_t>(key, value);
    } else if (key == "trials") {
        cfg.trials = detail::parse_int<int>(key, value);
    } else if (key == "output_dir") {
        cfg.output_dir = value;
    } else {
        throw InvalidArgument("config: unknown key '" + key + "'");
    }
}

// "key=value" with surrounding whitespace allowed.
inline void apply_assignment(ExperimentConfig &cfg, std::string_view line)
{
    const auto eq = line.find('=');
    require(eq != std::string_view::npos, "config: expected key=value, got '" + std::string(line) + "'");
    const auto key = detail::trim(line.substr(0, eq));
    require(!key.empty(), "config: empty key");
    set_config_value(cfg, key, detail::trim(line.substr(eq + 1)));
}

// Blank lines and lines starting with '#' are ignored.
inline void parse_config_text(ExperimentConfig &cfg, std::string_view text)
{
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            nl = text.size();
        }
        const auto line = detail::trim(text.substr(pos, nl - pos));
        if (!line.empty() && line[0] != '#') {
            apply_assignment(cfg, line);
        }
        pos = nl + 1;
    }
}

inline void load_config_file(ExperimentConfig &cfg, const std::string &path)
{
    std::ifstream in(path);
    require(in.good(), "config: cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    parse_config_text(cfg, ss.str());
}

} // namespace kontin

#endif
