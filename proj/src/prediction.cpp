#include "dualsolver/prediction.hpp"

#include <stdexcept>

namespace dualsolver {

DualEval to_dual(PredictionKind kind, const Vec& raw, const Vec& x,
                 const SchedulePoint& point, std::uint64_t state_tag) {
    check_same_size(raw, x, "to_dual");
    DualEval out;
    out.t = point.t;
    out.state_tag = state_tag;
    switch (kind) {
        case PredictionKind::Noise:
            out.eps_pred = raw;
            out.x_pred = lincomb(1.0 / point.alpha, x, -point.sigma / point.alpha, raw);
            break;
        case PredictionKind::Data:
            out.x_pred = raw;
            out.eps_pred = lincomb(1.0 / point.sigma, x, -point.alpha / point.sigma, raw);
            break;
        case PredictionKind::Velocity: {
            const double det = point.alpha * point.d_sigma - point.sigma * point.d_alpha;
            if (det == 0.0) {
                throw std::domain_error(
                    "to_dual: velocity conversion is singular (d_alpha*sigma == d_sigma*alpha)");
            }
            // Cramer's rule on the consistency + velocity relations.
            out.x_pred = lincomb(point.d_sigma / det, x, -point.sigma / det, raw);
            out.eps_pred = lincomb(point.alpha / det, raw, -point.d_alpha / det, x);
            break;
        }
    }
    return out;
}

Vec velocity_of(const DualEval& dual, const SchedulePoint& point) {
    return lincomb(point.d_alpha, dual.x_pred, point.d_sigma, dual.eps_pred);
}

DualEval apply_guidance(const DualEval& cond, const DualEval& uncond, double scale,
                        const Vec& x, const SchedulePoint& point) {
    if (cond.t != uncond.t || cond.state_tag != uncond.state_tag) {
        throw std::invalid_argument(
            "apply_guidance: conditional and unconditional evaluations must share "
            "the same time and state tag");
    }
    if (scale == 1.0) return cond;
    if (scale == 0.0) return uncond;
    DualEval out;
    out.t = cond.t;
    out.state_tag = cond.state_tag;
    out.eps_pred = lincomb(1.0 - scale, uncond.eps_pred, scale, cond.eps_pred);
    out.x_pred = lincomb(1.0 / point.alpha, x, -point.sigma / point.alpha, out.eps_pred);
    return out;
}

}  // namespace dualsolver
