// Continue the tag germ sqrt(z + 1) once and twice around z = -1 and print
// the germ values and (capped) separations from the start germ and its negative.

#include <cstdio>

#include <kontin/envelope.hpp>

int main()
{
    using namespace kontin;
    const auto src = tag_source();
    const auto g = src.germ(0.0, 1.0);
    for (double turns : {0.5, 1.0, 2.0}) {
        const auto n = static_cast<std::size_t>(64 * turns);
        const auto h = continue_tag(src, g, circle_path(-1.0, 1.0, 0.0, turns, n));
        std::printf("%.1f turn(s): value % .6f%+.6fi  sep(start) %.3g  sep(-start) %.3g\n", turns, h.value().real(),
                    h.value().imag(), capped_separation(h, g), capped_separation(h, g.negated()));
    }
    const auto nv = two_values_at_node();
    std::printf("over the node: via lambda=+1 -> % .3f, via lambda=-1 -> % .3f\n", nv.via_plus.real(), nv.via_minus.real());
}
