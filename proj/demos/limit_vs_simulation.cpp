// Minimal library tour: run the asymmetric two-component walk, then print
// its simulated pseudovelocity moments next to the analytic limit values.

#include <cstdio>

#include "qwalk/qwalk.hpp"

int main() {
    using namespace qwalk;

    const Preset& preset = *find_preset("fig2b");
    const long t = 500;

    const auto psi = evolve(preset.qudit(), preset.coin(), t);
    const auto dist = distribution(psi);
    const auto law = limit_distribution(preset.j, preset.angles, preset.qudit());

    std::printf("%-28s %s\n", "preset", preset.name.c_str());
    std::printf("%-28s %ld\n", "time steps", t);
    std::printf("%-28s %.12f\n", "total probability", dist.total());
    std::printf("%-28s %.6f\n", "limit scale a", law.scale());
    for (int r = 1; r <= 3; ++r) {
        const double sim = moment(dist, r) / std::pow(static_cast<double>(t), r);
        const double lim = limit_moment(law, r);
        std::printf("moment r=%d   simulated %+.8f   limit %+.8f   gap %.2e\n", r, sim, lim,
                    std::abs(sim - lim));
    }

    // A coarse look at the density: the inverse-bell shape with its edge
    // spikes near y = +-|a| shows up already in a handful of bins.
    const auto hist = pseudovelocity_histogram(dist, 21);
    for (size_t i = 0; i < hist.mass.size(); ++i) {
        std::printf("%+.3f  %8.4f  ", hist.center(i), hist.density(i));
        const int stars = static_cast<int>(hist.density(i) * 60);
        for (int s = 0; s < stars && s < 70; ++s) std::putchar('*');
        std::putchar('\n');
    }
    return 0;
}
