#include "dualsolver/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace dualsolver {

namespace {

DualEval guided(const Backbone& backbone, const Vec& x, const SchedulePoint& point,
                std::optional<int> cond, double scale, std::uint64_t tag) {
    if (!cond || scale == 1.0) return backbone.evaluate(x, point, cond, tag);
    const DualEval c = backbone.evaluate(x, point, cond, tag);
    const DualEval u = backbone.evaluate(x, point, std::nullopt, tag);
    return apply_guidance(c, u, scale, x, point);
}

}  // namespace

const char* baseline_kind_name(BaselineKind k) {
    switch (k) {
        case BaselineKind::Ddim: return "ddim";
        case BaselineKind::Dpmpp2m: return "dpmpp2m";
    }
    return "unknown";
}

Vec ddim_step(const Vec& x_i, const DualEval& eval_i, const SchedulePoint& point_i,
              const SchedulePoint& point_next) {
    const double ratio = point_next.sigma / point_i.sigma;
    const double coeff = point_next.alpha - ratio * point_i.alpha;
    return lincomb(ratio, x_i, coeff, eval_i.x_pred);
}

SampleResult baseline_sample(BaselineKind kind, const Backbone& backbone,
                             const ScheduleSpec& spec, const std::vector<double>& times,
                             const Vec& x_T, std::optional<int> cond, double guidance_scale,
                             bool record_trajectory) {
    if (times.size() < 2) throw std::invalid_argument("baseline_sample: need M >= 1");
    const std::size_t M = times.size() - 1;

    std::vector<SchedulePoint> points(M + 1);
    for (std::size_t i = 0; i <= M; ++i) points[i] = eval_schedule(spec, times[i]);

    SampleResult result;
    result.times = times;
    Vec x = x_T;
    std::uint64_t tag = 0;

    // multistep history for dpmpp2m
    Vec prev_x_pred;
    double prev_h = 0.0;

    for (std::size_t i = 0; i < M; ++i) {
        const DualEval ev = guided(backbone, x, points[i], cond, guidance_scale, tag++);
        Vec next;
        if (kind == BaselineKind::Ddim) {
            next = ddim_step(x, ev, points[i], points[i + 1]);
        } else {
            // lambda increases as times decrease toward data
            const double h = points[i + 1].lambda - points[i].lambda;
            if (prev_x_pred.empty()) {
                next = ddim_step(x, ev, points[i], points[i + 1]);
            } else {
                const double r = prev_h / h;
                const Vec d =
                    lincomb(1.0 + 1.0 / (2.0 * r), ev.x_pred, -1.0 / (2.0 * r), prev_x_pred);
                const double ratio = points[i + 1].sigma / points[i].sigma;
                const double w = -points[i + 1].alpha * std::expm1(-h);
                next = lincomb(ratio, x, w, d);
            }
            prev_x_pred = ev.x_pred;
            prev_h = h;
        }
        if (!all_finite(next)) {
            throw std::runtime_error("baseline_sample: non-finite state at step " +
                                     std::to_string(i));
        }
        x = std::move(next);
        if (record_trajectory) {
            result.states.push_back(x);
            result.provisional.push_back(x);
        }
    }

    result.final = std::move(x);
    result.nfe = M;
    return result;
}

}  // namespace dualsolver
