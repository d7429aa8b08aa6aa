// Decompose a two-qubit tensor walk into its spin-1 and spin-0 blocks and
// verify that the site distribution is the weighted mixture of the block
// walks.

#include <cstdio>

#include "qwalk/qwalk.hpp"

int main() {
    using namespace qwalk;

    const EulerAngles angles{0.3, 1.9, -0.6};
    const ProductQudit qudit(2, {{{Complex(1.0), Complex(0.0)},
                                  {Complex(0.0), Complex(1.0)}}});

    const auto blocks = decompose_initial(qudit);
    for (const auto& b : blocks.blocks)
        std::printf("block spin %s copy %d: weight %.6f\n", b.j.str().c_str(), b.copy, b.weight);

    const long t = 30;
    const auto full = tensor_walk_distribution(2, angles, qudit, t);
    std::vector<std::pair<double, SiteDistribution>> parts;
    for (const auto& b : blocks.blocks)
        if (b.qudit)
            parts.emplace_back(b.weight,
                               distribution(evolve(*b.qudit, rotation_matrix(b.j, angles), t)));
    double worst = 0.0;
    for (long x = full.x_min; x <= full.x_max(); ++x) {
        double mixture = 0.0;
        for (const auto& [weight, part] : parts) mixture += weight * part.prob(x);
        worst = std::max(worst, std::abs(full.prob(x) - mixture));
    }
    std::printf("max |full - mixture| over sites at t=%ld: %.3e\n", t, worst);
    return worst < 1e-12 ? 0 : 1;
}
