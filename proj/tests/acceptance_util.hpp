#pragma once

// Test-side statistics helpers for the acceptance suite: mixture quantiles
// and the 1-Wasserstein distance of an empirical sample against the true
// mixture, computed via sorted-sample vs quantile matching.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dualsolver/backbone.hpp"

namespace acceptance {

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

inline double mixture_cdf(const dualsolver::MixtureModel& m, double x) {
    double acc = 0.0;
    for (std::size_t k = 0; k < m.components(); ++k) {
        acc += m.weights[k] * normal_cdf((x - m.means[k][0]) / m.std_dev);
    }
    return acc;
}

inline double mixture_quantile(const dualsolver::MixtureModel& m, double p) {
    double lo = m.means[0][0], hi = m.means[0][0];
    for (const auto& mu : m.means) {
        lo = std::min(lo, mu[0]);
        hi = std::max(hi, mu[0]);
    }
    lo -= 12.0 * m.std_dev;
    hi += 12.0 * m.std_dev;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mixture_cdf(m, mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-10) break;
    }
    return 0.5 * (lo + hi);
}

// W1 between an empirical 1D sample and the true mixture: mean absolute gap
// between order statistics and matching quantiles.
inline double wasserstein1(std::vector<double> samples, const dualsolver::MixtureModel& m) {
    if (samples.empty()) throw std::invalid_argument("wasserstein1: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double p = (static_cast<double>(i) + 0.5) / n;
        acc += std::abs(samples[i] - mixture_quantile(m, p));
    }
    return acc / n;
}

}  // namespace acceptance
