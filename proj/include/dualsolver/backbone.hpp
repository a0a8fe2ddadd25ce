#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dualsolver/prediction.hpp"
#include "dualsolver/schedule.hpp"
#include "dualsolver/vec.hpp"

namespace dualsolver {

// Evaluable model producing a dual prediction at (x, t). Analytic instances
// below carry exact posterior predictions, which is what makes them usable
// as verification oracles.
struct Backbone {
    virtual ~Backbone() = default;
    virtual std::size_t dim() const = 0;
    virtual DualEval evaluate(const Vec& x, const SchedulePoint& point,
                              std::optional<int> cond, std::uint64_t state_tag) const = 0;
};

// Gaussian data N(mean, diag(std^2)). The noisy marginal at time t is
// N(alpha*mean, diag(alpha^2 std^2 + sigma^2)) and E[eps | x_t] is available
// in closed form.
struct GaussianModel final : Backbone {
    Vec mean;
    Vec std_dev;  // per-dimension, > 0

    GaussianModel(Vec mu, Vec s);

    std::size_t dim() const override { return mean.size(); }
    DualEval evaluate(const Vec& x, const SchedulePoint& point, std::optional<int> cond,
                      std::uint64_t state_tag) const override;
};

// Isotropic Gaussian mixture with shared per-component scale. The component
// index doubles as the class label for conditional sampling and for the
// Bayes classifier driving the learning loop.
struct MixtureModel final : Backbone {
    std::vector<double> weights;  // positive, sum to 1
    std::vector<Vec> means;
    double std_dev = 1.0;  // shared isotropic scale

    MixtureModel(std::vector<double> w, std::vector<Vec> mu, double s);

    std::size_t components() const { return weights.size(); }
    std::size_t dim() const override { return means.empty() ? 0 : means[0].size(); }
    DualEval evaluate(const Vec& x, const SchedulePoint& point, std::optional<int> cond,
                      std::uint64_t state_tag) const override;
};

// Exact posterior noise prediction for Gaussian data:
//   eps_pred = sigma * (x - alpha*mean) / (alpha^2 std^2 + sigma^2)
DualEval gaussian_dual(const GaussianModel& model, const Vec& x, const SchedulePoint& point,
                       std::uint64_t state_tag = 0);

// Posterior-weighted combination of per-component predictions; with cond set
// the posterior collapses to a one-hot on that component.
DualEval mixture_dual(const MixtureModel& model, const Vec& x, const SchedulePoint& point,
                      std::optional<int> cond = std::nullopt, std::uint64_t state_tag = 0);

// Class probabilities of a clean sample under the mixture, p_k proportional
// to w_k * N(x0; mu_k, s^2 I). Computed with log-sum-exp.
std::vector<double> bayes_log_posterior(const MixtureModel& model, const Vec& x0);
std::vector<double> bayes_posterior(const MixtureModel& model, const Vec& x0);

// Exact probability-flow solution for Gaussian data:
//   x_{t'} = alpha_{t'} mu + (s~_{t'}/s~_t)(x_t - alpha_t mu),
//   s~^2 = alpha^2 std^2 + sigma^2
Vec oracle_flow(const GaussianModel& model, const ScheduleSpec& spec, const Vec& x_t,
                double t_from, double t_to);

// Mixture flow: conditional flows are the component's closed form;
// unconditional flows integrate the probability-flow ODE with RK4, doubling
// the step count from 20000 until two successive answers agree below 1e-9.
Vec oracle_flow(const MixtureModel& model, const ScheduleSpec& spec, const Vec& x_t,
                double t_from, double t_to, std::optional<int> cond = std::nullopt);

}  // namespace dualsolver
