#include "dualsolver/solver.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dualsolver {

namespace {

const double kDdimTauRaw = inv_softplus(1.0);  // softplus(raw) == 1

DualEval guided_eval(const Backbone& backbone, const Vec& x, const SchedulePoint& point,
                     std::optional<int> cond, double guidance_scale, std::uint64_t tag) {
    if (!cond || guidance_scale == 1.0) {
        return backbone.evaluate(x, point, cond, tag);
    }
    const DualEval c = backbone.evaluate(x, point, cond, tag);
    const DualEval u = backbone.evaluate(x, point, std::nullopt, tag);
    return apply_guidance(c, u, guidance_scale, x, point);
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

void ParamArrays::resize(std::size_t n, double gamma0, double tau_raw0) {
    gamma.assign(n, gamma0);
    tau_u_raw.assign(n, tau_raw0);
    tau_v_raw.assign(n, tau_raw0);
    kappa_u.assign(n, 0.0);
    kappa_v.assign(n, 0.0);
}

StepParams ParamArrays::step(std::size_t i) const {
    StepParams p;
    p.gamma = clamp_gamma(gamma.at(i));
    p.tau_u = tau_from_raw(tau_u_raw.at(i));
    p.tau_v = tau_from_raw(tau_v_raw.at(i));
    p.kappa_u = kappa_u.at(i);
    p.kappa_v = kappa_v.at(i);
    return p;
}

void SolverParams::validate(std::size_t M) const {
    if (M < 1) throw std::invalid_argument("SolverParams: M must be >= 1");
    auto check_group = [&](const ParamArrays& g, std::size_t n, const char* name) {
        if (g.gamma.size() != n || g.tau_u_raw.size() != n || g.tau_v_raw.size() != n ||
            g.kappa_u.size() != n || g.kappa_v.size() != n) {
            throw std::invalid_argument(std::string("SolverParams: ") + name +
                                        " arrays must have length " + std::to_string(n));
        }
    };
    check_group(pred, M, "pred");
    check_group(corr, M - 1, "corr");
    if (raw_steps.size() != M) {
        throw std::invalid_argument("SolverParams: raw_steps must have length M");
    }
    for (double v : raw_steps) {
        if (!std::isfinite(v)) throw std::invalid_argument("SolverParams: non-finite raw_steps");
    }
}

SolverParams SolverParams::ddim_init(std::size_t M) {
    if (M < 1) throw std::invalid_argument("SolverParams: M must be >= 1");
    SolverParams p;
    p.pred.resize(M, 1.0, kDdimTauRaw);
    p.corr.resize(M - 1, 1.0, kDdimTauRaw);
    p.raw_steps.assign(M, 0.0);
    return p;
}

std::vector<double> SolverParams::flatten() const {
    std::vector<double> theta;
    theta.reserve(flat_size(steps()));
    auto push_group = [&](const ParamArrays& g) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            theta.push_back(g.gamma[i]);
            theta.push_back(g.tau_u_raw[i]);
            theta.push_back(g.tau_v_raw[i]);
            theta.push_back(g.kappa_u[i]);
            theta.push_back(g.kappa_v[i]);
        }
    };
    push_group(pred);
    push_group(corr);
    theta.insert(theta.end(), raw_steps.begin(), raw_steps.end());
    return theta;
}

SolverParams SolverParams::unflatten(const std::vector<double>& theta, std::size_t M) {
    if (theta.size() != flat_size(M)) {
        throw std::invalid_argument("SolverParams::unflatten: wrong vector length");
    }
    SolverParams p;
    std::size_t k = 0;
    auto pull_group = [&](ParamArrays& g, std::size_t n) {
        g.resize(n, 0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            g.gamma[i] = theta[k++];
            g.tau_u_raw[i] = theta[k++];
            g.tau_v_raw[i] = theta[k++];
            g.kappa_u[i] = theta[k++];
            g.kappa_v[i] = theta[k++];
        }
    };
    pull_group(p.pred, M);
    pull_group(p.corr, M - 1);
    p.raw_steps.assign(theta.begin() + static_cast<std::ptrdiff_t>(k), theta.end());
    return p;
}

std::string SolverParams::coordinate_name(std::size_t index, std::size_t M) {
    static const char* field[5] = {"gamma", "tau_u_raw", "tau_v_raw", "kappa_u", "kappa_v"};
    if (index < 5 * M) {
        return "pred[" + std::to_string(index / 5) + "]." + field[index % 5];
    }
    index -= 5 * M;
    if (index < 5 * (M - 1)) {
        return "corr[" + std::to_string(index / 5) + "]." + field[index % 5];
    }
    index -= 5 * (M - 1);
    return "raw_steps[" + std::to_string(index) + "]";
}

const char* solver_mode_name(SolverMode m) {
    switch (m) {
        case SolverMode::P1: return "p1";
        case SolverMode::P1C2: return "p1c2";
        case SolverMode::P2: return "p2";
        case SolverMode::P2C2: return "p2c2";
    }
    return "unknown";
}

SolverMode solver_mode_from_name(const std::string& name) {
    if (name == "p1") return SolverMode::P1;
    if (name == "p1c2") return SolverMode::P1C2;
    if (name == "p2") return SolverMode::P2;
    if (name == "p2c2") return SolverMode::P2C2;
    throw std::invalid_argument("unknown solver mode: " + name);
}

std::vector<double> timesteps(const std::vector<double>& raw_steps, double t_start,
                              double t_end) {
    const std::size_t M = raw_steps.size();
    if (M < 1) throw std::invalid_argument("timesteps: need at least one step");
    if (!(t_start > t_end)) throw std::invalid_argument("timesteps: t_start must exceed t_end");
    double m = raw_steps[0];
    for (double v : raw_steps) {
        if (!std::isfinite(v)) throw std::invalid_argument("timesteps: non-finite raw step");
        m = std::max(m, v);
    }
    std::vector<double> frac(M);
    double sum = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        frac[i] = std::exp(raw_steps[i] - m);
        sum += frac[i];
    }
    double floored_sum = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        frac[i] = std::max(frac[i] / sum, 1e-12);
        floored_sum += frac[i];
    }
    std::vector<double> out(M + 1);
    out[0] = t_start;
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < M; ++i) {
        cum += frac[i] / floored_sum;
        out[i + 1] = t_start + (t_end - t_start) * cum;
    }
    out[M] = t_end;
    return out;
}

Vec predictor_first(const Vec& x_i, const DualEval& eval_i, const StepParams& params,
                    const SchedulePoint& point_i, const SchedulePoint& point_next) {
    const BranchCoeffs bc = branch_coeffs(params.gamma, point_i, point_next);
    const IntervalTerms terms =
        interval_terms(params.gamma, params.tau_u, params.tau_v, point_i, point_next);
    const double cu = terms.dLinv_u + residual(terms.du, params.kappa_u);
    const double cv = terms.dLinv_v + residual(terms.dv, params.kappa_v);
    Vec out(x_i.size());
    for (std::size_t j = 0; j < x_i.size(); ++j) {
        out[j] = bc.A * x_i[j] + bc.B * (eval_i.x_pred[j] * cu + eval_i.eps_pred[j] * cv);
    }
    return out;
}

Vec predictor_second(const Vec& x_i, const DualEval& eval_prev, const DualEval& eval_i,
                     const StepParams& params, const SchedulePoint& point_prev,
                     const SchedulePoint& point_i, const SchedulePoint& point_next) {
    const BranchCoeffs bc = branch_coeffs(params.gamma, point_i, point_next);
    const IntervalTerms cur =
        interval_terms(params.gamma, params.tau_u, params.tau_v, point_i, point_next);
    const IntervalTerms prev =
        interval_terms(params.gamma, params.tau_u, params.tau_v, point_prev, point_i);

    // Backward-difference slope scaled by du_i/(2 du_{i-1}). When the current
    // interval is degenerate in a transformed variable its whole contribution
    // vanishes (dLinv and K are zero too); a degenerate history interval has
    // no usable slope.
    auto second_order_weight = [](double d_cur, double d_prev, const char* which) {
        if (d_cur == 0.0) return 0.0;
        if (d_prev == 0.0) {
            throw std::domain_error(std::string("predictor_second: zero history interval in ") +
                                    which + " domain");
        }
        return d_cur / (2.0 * d_prev);
    };
    const double wu = second_order_weight(cur.du, prev.du, "u");
    const double wv = second_order_weight(cur.dv, prev.dv, "v");
    const double cu = cur.dLinv_u + residual(cur.du, params.kappa_u);
    const double cv = cur.dLinv_v + residual(cur.dv, params.kappa_v);

    Vec out(x_i.size());
    for (std::size_t j = 0; j < x_i.size(); ++j) {
        const double dx = eval_i.x_pred[j] - eval_prev.x_pred[j];
        const double de = eval_i.eps_pred[j] - eval_prev.eps_pred[j];
        out[j] = bc.A * x_i[j] +
                 bc.B * (eval_i.x_pred[j] * cur.dLinv_u + wu * dx * cu +
                         eval_i.eps_pred[j] * cur.dLinv_v + wv * de * cv);
    }
    return out;
}

Vec corrector_second(const Vec& x_i, const DualEval& eval_i, const DualEval& eval_next,
                     const StepParams& params, const SchedulePoint& point_i,
                     const SchedulePoint& point_next) {
    const BranchCoeffs bc = branch_coeffs(params.gamma, point_i, point_next);
    const IntervalTerms terms =
        interval_terms(params.gamma, params.tau_u, params.tau_v, point_i, point_next);
    const double cu = terms.dLinv_u + residual(terms.du, params.kappa_u);
    const double cv = terms.dLinv_v + residual(terms.dv, params.kappa_v);
    Vec out(x_i.size());
    for (std::size_t j = 0; j < x_i.size(); ++j) {
        const double dx = eval_next.x_pred[j] - eval_i.x_pred[j];
        const double de = eval_next.eps_pred[j] - eval_i.eps_pred[j];
        out[j] = bc.A * x_i[j] +
                 bc.B * (eval_i.x_pred[j] * terms.dLinv_u + 0.5 * dx * cu +
                         eval_i.eps_pred[j] * terms.dLinv_v + 0.5 * de * cv);
    }
    return out;
}

SampleResult sample(const Backbone& backbone, const SolverConfig& config,
                    const SolverParams& params, const Vec& x_T, std::optional<int> cond,
                    std::uint64_t /*rng_seed: reserved, the loop is deterministic*/) {
    const std::size_t M = config.M;
    params.validate(M);
    const bool second_order =
        config.mode == SolverMode::P2 || config.mode == SolverMode::P2C2;
    const bool corrected =
        config.mode == SolverMode::P1C2 || config.mode == SolverMode::P2C2;
    if (second_order && M < 2) {
        throw std::invalid_argument("sample: p2 modes require M >= 2");
    }

    SampleResult result;
    result.times = timesteps(params.raw_steps, config.schedule.t_max, config.schedule.t_min);
    std::vector<SchedulePoint> points(M + 1);
    for (std::size_t i = 0; i <= M; ++i) {
        points[i] = eval_schedule(config.schedule, result.times[i]);
    }

    EvalCache cache;
    cache.entries.reserve(M);
    std::uint64_t tag = 0;
    Vec x = x_T;
    cache.entries.push_back(
        guided_eval(backbone, x, points[0], cond, config.guidance_scale, tag++));

    for (std::size_t i = 0; i < M; ++i) {
        const StepParams sp = params.pred.step(i);
        Vec provisional =
            (second_order && i > 0)
                ? predictor_second(x, cache.entries[i - 1], cache.entries[i], sp,
                                   points[i - 1], points[i], points[i + 1])
                : predictor_first(x, cache.entries[i], sp, points[i], points[i + 1]);
        if (!all_finite(provisional)) {
            throw std::runtime_error("sample: non-finite state at step " + std::to_string(i));
        }
        if (config.record_trajectory) result.provisional.push_back(provisional);

        if (i == M - 1) {
            // the final predictor output is returned uncorrected
            if (config.record_trajectory) result.states.push_back(provisional);
            result.final = std::move(provisional);
            break;
        }
        cache.entries.push_back(guided_eval(backbone, provisional, points[i + 1], cond,
                                            config.guidance_scale, tag++));
        if (corrected) {
            x = corrector_second(x, cache.entries[i], cache.entries[i + 1],
                                 params.corr.step(i), points[i], points[i + 1]);
        } else {
            x = std::move(provisional);
        }
        if (config.record_trajectory) result.states.push_back(x);
    }

    result.nfe = cache.entries.size();
    return result;
}

OrderCheckResult order_check(const GaussianModel& model, const ScheduleSpec& spec,
                             StepKind kind, const StepParams& params, double t_i,
                             const std::vector<double>& h_list, const Vec& x_i) {
    if (h_list.empty()) throw std::invalid_argument("order_check: empty h list");
    OrderCheckResult result;
    for (double h : h_list) {
        const double t_next = t_i - h;
        const SchedulePoint pt_i = eval_schedule(spec, t_i);
        const SchedulePoint pt_next = eval_schedule(spec, t_next);
        const Vec exact = oracle_flow(model, spec, x_i, t_i, t_next);
        const DualEval eval_i = gaussian_dual(model, x_i, pt_i);

        Vec approx;
        switch (kind) {
            case StepKind::P1Step:
                approx = predictor_first(x_i, eval_i, params, pt_i, pt_next);
                break;
            case StepKind::CorrectorStep: {
                // local error definition: the fresh evaluation sits on the
                // exact trajectory, not on a provisional state
                const DualEval eval_next = gaussian_dual(model, exact, pt_next);
                approx = corrector_second(x_i, eval_i, eval_next, params, pt_i, pt_next);
                break;
            }
            case StepKind::P2Step: {
                const double t_prev = t_i + h;
                const SchedulePoint pt_prev = eval_schedule(spec, t_prev);
                const Vec x_prev = oracle_flow(model, spec, x_i, t_i, t_prev);
                const DualEval eval_prev = gaussian_dual(model, x_prev, pt_prev);
                approx = predictor_second(x_i, eval_prev, eval_i, params, pt_prev, pt_i,
                                          pt_next);
                break;
            }
        }
        result.h.push_back(h);
        result.error.push_back(norm2(sub(approx, exact)));
    }
    double smallest_err = result.error.back();
    for (std::size_t i = 0; i < result.h.size(); ++i) {
        if (result.h[i] <= result.h.back()) smallest_err = result.error[i];
    }
    if (smallest_err < 1e-13) {
        throw std::range_error(
            "order_check: error below 1e-13 at the smallest h; reduce the h range "
            "(round-off dominated)");
    }
    result.slope = fit_loglog_slope(result.h, result.error);
    return result;
}

}  // namespace dualsolver
