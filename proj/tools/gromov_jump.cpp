// Euler characteristic and Hausdorff distance to C_0 on both sides of t = 0.

#include <cstdio>
#include <vector>

#include <kontin/degeneration.hpp>

int main()
{
    using namespace kontin;
    GridSpec coarse;
    coarse.mesh_target = 50.0;
    const std::vector<double> ts{-0.005, -0.001, 0.0, 0.001, 0.005};
    const auto rep = gromov_report(ts, NodalConstants{}, coarse);
    for (const auto &r : rep.records) {
        std::printf("t = % .4f  %-13s  b = %zu  chi = %s  dist_H = %s\n", r.t, to_string(r.kind), r.branch_points_in_disk.size(),
                    r.euler_char ? std::to_string(*r.euler_char).c_str() : "-",
                    r.hausdorff_to_c0 ? std::to_string(*r.hausdorff_to_c0).c_str() : "-");
    }
    std::printf("discontinuity at 0: %s\n", rep.discontinuity ? "yes" : "no");
}
