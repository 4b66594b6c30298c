// Minimax over a small discrete front: exhaustive search against the
// single-best / pairwise-minimax candidate search.

#include "mmcost/mmcost.hpp"

#include <iostream>

int main() {
    using namespace mmcost;

    const auto front = convex_front({{0.0, 1.0}, {0.1, 0.55}, {0.25, 0.3}, {0.5, 0.12}, {0.8, 0.04}, {1.0, 0.0},
                                     {0.6, 0.6}});
    const auto stats = ClassStats::from_counts(150, 120);
    const CostMatrixSet u{{2.0, 7.5}, {6.0, 3.0}, {9.0, 1.0}};

    std::cout << "front:";
    for (const auto& p : front) std::cout << " (" << p.p10 << ", " << p.p01 << ")";
    std::cout << "\n";
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::cout << "C" << i << " profile:";
        for (double v : cost_profile(front, stats, u[i])) std::cout << ' ' << v;
        std::cout << "\n";
    }

    const auto brute = brute_minimax(front, stats, u);
    const auto cand = candidate_minimax(front, stats, u);
    std::cout << "exhaustive minimax " << brute.value << " at point " << brute.indices.front() << "\n"
              << "candidate minimax  " << cand.value << " at point " << cand.index << " (" << cand.candidates.size()
              << " of " << front.size() << " points examined)\n";
}
