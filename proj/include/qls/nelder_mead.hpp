#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "qls/errors.hpp"

namespace qls {

struct OptimizeResult {
    std::vector<double> best_point;
    double best_value = 0.0;
    int evaluations = 0;
};

/// Budget-capped Nelder-Mead simplex minimization (reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5). The initial simplex is x0 plus x0 shifted by
/// `initial_step` along each axis. Never evaluates the objective more than
/// `budget` times and returns the best point ever evaluated, not the final
/// simplex state.
inline OptimizeResult nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& objective,
                                           const std::vector<double>& x0, int budget,
                                           double initial_step = 0.25) {
    const int dim = static_cast<int>(x0.size());
    if (dim < 1) throw Error("optimizer needs at least one dimension");
    if (budget < dim + 1) throw BudgetTooSmallError(budget, dim);

    OptimizeResult result;
    result.best_point = x0;
    result.best_value = 0.0;

    int used = 0;
    bool have_best = false;
    auto eval = [&](const std::vector<double>& x) {
        const double v = objective(x);
        ++used;
        if (!have_best || v < result.best_value) {
            have_best = true;
            result.best_value = v;
            result.best_point = x;
        }
        return v;
    };

    std::vector<std::vector<double>> simplex;
    std::vector<double> values;
    simplex.reserve(static_cast<std::size_t>(dim) + 1);
    simplex.push_back(x0);
    for (int i = 0; i < dim; ++i) {
        auto v = x0;
        v[static_cast<std::size_t>(i)] += initial_step;
        simplex.push_back(std::move(v));
    }
    for (const auto& v : simplex) values.push_back(eval(v));

    std::vector<std::size_t> order(simplex.size());
    auto sort_order = [&] {
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    };

    std::vector<double> centroid(static_cast<std::size_t>(dim));
    std::vector<double> candidate(static_cast<std::size_t>(dim));

    while (used < budget) {
        sort_order();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[order.size() - 2];
        const std::size_t best = order.front();

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (order[i] == worst) continue;
            for (int d = 0; d < dim; ++d) centroid[static_cast<std::size_t>(d)] += simplex[order[i]][static_cast<std::size_t>(d)];
        }
        for (double& c : centroid) c /= dim;

        auto blend = [&](double coeff) {
            for (int d = 0; d < dim; ++d)
                candidate[static_cast<std::size_t>(d)] =
                    centroid[static_cast<std::size_t>(d)] +
                    coeff * (centroid[static_cast<std::size_t>(d)] - simplex[worst][static_cast<std::size_t>(d)]);
        };

        blend(1.0);  // reflection
        const double reflected = eval(candidate);
        if (reflected < values[best]) {
            if (used >= budget) break;
            auto reflected_point = candidate;
            blend(2.0);  // expansion
            const double expanded = eval(candidate);
            if (expanded < reflected) {
                simplex[worst] = candidate;
                values[worst] = expanded;
            } else {
                simplex[worst] = std::move(reflected_point);
                values[worst] = reflected;
            }
            continue;
        }
        if (reflected < values[second_worst]) {
            simplex[worst] = candidate;
            values[worst] = reflected;
            continue;
        }
        if (used >= budget) break;
        const bool outside = reflected < values[worst];
        if (outside) {
            blend(0.5);
        } else {
            blend(-0.5);
        }
        const double contracted = eval(candidate);
        if (contracted < (outside ? reflected : values[worst])) {
            simplex[worst] = candidate;
            values[worst] = contracted;
            continue;
        }
        // shrink toward the best vertex
        for (std::size_t i = 0; i < simplex.size(); ++i) {
            if (i == best) continue;
            for (int d = 0; d < dim; ++d)
                simplex[i][static_cast<std::size_t>(d)] =
                    simplex[best][static_cast<std::size_t>(d)] +
                    0.5 * (simplex[i][static_cast<std::size_t>(d)] - simplex[best][static_cast<std::size_t>(d)]);
            if (used >= budget) break;
            values[i] = eval(simplex[i]);
        }
    }

    result.evaluations = used;
    return result;
}

}  // namespace qls
