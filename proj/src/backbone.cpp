#include "dualsolver/backbone.hpp"

#include <cmath>
#include <stdexcept>

namespace dualsolver {

namespace {

double log_sum_exp(const std::vector<double>& logits) {
    double m = logits[0];
    for (double v : logits) m = std::max(m, v);
    double s = 0.0;
    for (double v : logits) s += std::exp(v - m);
    return m + std::log(s);
}

}  // namespace

GaussianModel::GaussianModel(Vec mu, Vec s) : mean(std::move(mu)), std_dev(std::move(s)) {
    if (mean.size() != std_dev.size()) {
        throw std::invalid_argument("GaussianModel: mean/std size mismatch");
    }
    for (double v : std_dev) {
        if (!(v > 0.0)) throw std::invalid_argument("GaussianModel: std must be positive");
    }
}

DualEval GaussianModel::evaluate(const Vec& x, const SchedulePoint& point,
                                 std::optional<int>, std::uint64_t state_tag) const {
    return gaussian_dual(*this, x, point, state_tag);
}

MixtureModel::MixtureModel(std::vector<double> w, std::vector<Vec> mu, double s)
    : weights(std::move(w)), means(std::move(mu)), std_dev(s) {
    if (weights.empty() || weights.size() != means.size()) {
        throw std::invalid_argument("MixtureModel: weights/means size mismatch");
    }
    if (!(std_dev > 0.0)) throw std::invalid_argument("MixtureModel: std must be positive");
    double sum = 0.0;
    for (double v : weights) {
        if (!(v > 0.0)) throw std::invalid_argument("MixtureModel: weights must be positive");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("MixtureModel: weights must sum to 1");
    }
    for (const Vec& m : means) {
        if (m.size() != means[0].size()) {
            throw std::invalid_argument("MixtureModel: inconsistent mean dimensions");
        }
    }
}

DualEval MixtureModel::evaluate(const Vec& x, const SchedulePoint& point,
                                std::optional<int> cond, std::uint64_t state_tag) const {
    return mixture_dual(*this, x, point, cond, state_tag);
}

DualEval gaussian_dual(const GaussianModel& model, const Vec& x, const SchedulePoint& point,
                       std::uint64_t state_tag) {
    check_same_size(x, model.mean, "gaussian_dual");
    const double a = point.alpha;
    const double s = point.sigma;
    DualEval out;
    out.t = point.t;
    out.state_tag = state_tag;
    out.eps_pred.resize(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double var = a * a * model.std_dev[j] * model.std_dev[j] + s * s;
        out.eps_pred[j] = s * (x[j] - a * model.mean[j]) / var;
    }
    out.x_pred = lincomb(1.0 / a, x, -s / a, out.eps_pred);
    return out;
}

DualEval mixture_dual(const MixtureModel& model, const Vec& x, const SchedulePoint& point,
                      std::optional<int> cond, std::uint64_t state_tag) {
    check_same_size(x, model.means[0], "mixture_dual");
    const std::size_t K = model.components();
    if (cond) {
        const int k = *cond;
        if (k < 0 || static_cast<std::size_t>(k) >= K) {
            throw std::invalid_argument("mixture_dual: class label out of range");
        }
        GaussianModel comp(model.means[k], Vec(x.size(), model.std_dev));
        return gaussian_dual(comp, x, point, state_tag);
    }
    const double a = point.alpha;
    const double s = point.sigma;
    const double var = a * a * model.std_dev * model.std_dev + s * s;

    // responsibilities r_k under the time-t marginal, via log-sum-exp
    std::vector<double> logits(K);
    for (std::size_t k = 0; k < K; ++k) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double d = x[j] - a * model.means[k][j];
            d2 += d * d;
        }
        logits[k] = std::log(model.weights[k]) - 0.5 * d2 / var;
    }
    const double lse = log_sum_exp(logits);

    DualEval out;
    out.t = point.t;
    out.state_tag = state_tag;
    out.eps_pred.assign(x.size(), 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        const double r = std::exp(logits[k] - lse);
        for (std::size_t j = 0; j < x.size(); ++j) {
            out.eps_pred[j] += r * s * (x[j] - a * model.means[k][j]) / var;
        }
    }
    out.x_pred = lincomb(1.0 / a, x, -s / a, out.eps_pred);
    return out;
}

std::vector<double> bayes_log_posterior(const MixtureModel& model, const Vec& x0) {
    const std::size_t K = model.components();
    const double var = model.std_dev * model.std_dev;
    std::vector<double> logits(K);
    for (std::size_t k = 0; k < K; ++k) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < x0.size(); ++j) {
            const double d = x0[j] - model.means[k][j];
            d2 += d * d;
        }
        logits[k] = std::log(model.weights[k]) - 0.5 * d2 / var;
    }
    const double lse = log_sum_exp(logits);
    for (double& v : logits) v -= lse;
    return logits;
}

std::vector<double> bayes_posterior(const MixtureModel& model, const Vec& x0) {
    std::vector<double> p = bayes_log_posterior(model, x0);
    for (double& v : p) v = std::exp(v);
    return p;
}

Vec oracle_flow(const GaussianModel& model, const ScheduleSpec& spec, const Vec& x_t,
                double t_from, double t_to) {
    const SchedulePoint from = eval_schedule(spec, t_from);
    const SchedulePoint to = eval_schedule(spec, t_to);
    Vec out(x_t.size());
    for (std::size_t j = 0; j < x_t.size(); ++j) {
        const double s2 = model.std_dev[j] * model.std_dev[j];
        const double var_from = from.alpha * from.alpha * s2 + from.sigma * from.sigma;
        const double var_to = to.alpha * to.alpha * s2 + to.sigma * to.sigma;
        const double ratio = std::sqrt(var_to / var_from);
        out[j] = to.alpha * model.mean[j] + ratio * (x_t[j] - from.alpha * model.mean[j]);
    }
    return out;
}

namespace {

// One RK4 pass over the probability-flow ODE
//   dx/dt = f x - (1/2) g^2 grad log q_t(x),  grad log q_t = -eps_pred/sigma
Vec rk4_flow(const MixtureModel& model, const ScheduleSpec& spec, const Vec& x0,
             double t_from, double t_to, std::size_t n_steps) {
    auto deriv = [&](const Vec& x, double t) -> Vec {
        const SchedulePoint p = eval_schedule(spec, t);
        const double f = p.d_alpha / p.alpha;
        const double g2 = 2.0 * p.sigma * p.d_sigma - 2.0 * f * p.sigma * p.sigma;
        const DualEval ev = mixture_dual(model, x, p);
        Vec dx(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) {
            dx[j] = f * x[j] + 0.5 * g2 * ev.eps_pred[j] / p.sigma;
        }
        return dx;
    };
    const double h = (t_to - t_from) / static_cast<double>(n_steps);
    Vec x = x0;
    double t = t_from;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const Vec k1 = deriv(x, t);
        Vec x2 = x;
        axpy(0.5 * h, k1, x2);
        const Vec k2 = deriv(x2, t + 0.5 * h);
        Vec x3 = x;
        axpy(0.5 * h, k2, x3);
        const Vec k3 = deriv(x3, t + 0.5 * h);
        Vec x4 = x;
        axpy(h, k3, x4);
        const Vec k4 = deriv(x4, t + h);
        for (std::size_t j = 0; j < x.size(); ++j) {
            x[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        t = t_from + h * static_cast<double>(i + 1);
    }
    return x;
}

}  // namespace

Vec oracle_flow(const MixtureModel& model, const ScheduleSpec& spec, const Vec& x_t,
                double t_from, double t_to, std::optional<int> cond) {
    if (cond) {
        GaussianModel comp(model.means[*cond], Vec(x_t.size(), model.std_dev));
        return oracle_flow(comp, spec, x_t, t_from, t_to);
    }
    if (t_from == t_to) return x_t;
    std::size_t n = 20000;
    Vec prev = rk4_flow(model, spec, x_t, t_from, t_to, n);
    for (int round = 0; round < 6; ++round) {
        n *= 2;
        Vec next = rk4_flow(model, spec, x_t, t_from, t_to, n);
        if (max_abs_diff(prev, next) < 1e-9) return next;
        prev = std::move(next);
    }
    throw std::runtime_error("oracle_flow: RK4 refinement did not converge below 1e-9");
}

}  // namespace dualsolver
