#include "hollm/selection.hpp"

#include <algorithm>
#include <stdexcept>

namespace hollm {

std::vector<double> leaf_probabilities(const std::vector<double>& scores) {
    if (scores.empty()) throw std::invalid_argument("leaf_probabilities on empty scores");
    double total = 0.0;
    for (double b : scores) {
        if (b < 0.0) throw std::invalid_argument("negative score");
        total += b;
    }
    if (total <= 0.0) throw std::invalid_argument("degenerate scores");
    std::vector<double> p(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) p[i] = scores[i] / total;
    return p;
}

SelectionOutcome sample_without_replacement(const std::vector<double>& p, int M, Rng& rng) {
    if (M < 1) throw std::invalid_argument("M must be >= 1");
    const int K = static_cast<int>(p.size());
    const int draws = std::min(M, K);

    SelectionOutcome out;
    out.probabilities = p;
    out.chosen.reserve(static_cast<std::size_t>(draws));

    std::vector<double> weight = p;
    std::vector<bool> taken(p.size(), false);
    for (int drawn = 0; drawn < draws; ++drawn) {
        double remaining = 0.0;
        for (std::size_t i = 0; i < weight.size(); ++i)
            if (!taken[i]) remaining += weight[i];

        int pick = -1;
        if (remaining > 0.0) {
            double u = rng.uniform01() * remaining;
            double acc = 0.0;
            for (std::size_t i = 0; i < weight.size(); ++i) {
                if (taken[i]) continue;
                acc += weight[i];
                if (u < acc) {
                    pick = static_cast<int>(i);
                    break;
                }
            }
            if (pick < 0) {  // u landed on the rounding tail
                for (int i = K - 1; i >= 0; --i)
                    if (!taken[i] && weight[i] > 0.0) {
                        pick = i;
                        break;
                    }
            }
        }
        if (pick < 0) {
            // only zero-mass leaves remain; fall back to a uniform draw among them
            std::vector<int> open;
            for (int i = 0; i < K; ++i)
                if (!taken[i]) open.push_back(i);
            pick = open[static_cast<std::size_t>(rng.below(open.size()))];
        }
        taken[pick] = true;
        out.chosen.push_back(pick);
    }
    return out;
}

} // namespace hollm
