#include "dualsolver/schedule.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dualsolver {

namespace {

constexpr double kHalfPi = 1.5707963267948966192313216916398;

void check_range(const ScheduleSpec& spec, double t) {
    if (!(t >= spec.t_min && t <= spec.t_max)) {
        std::ostringstream msg;
        msg << "schedule time " << t << " outside clamp bounds [" << spec.t_min
            << ", " << spec.t_max << "]";
        throw std::out_of_range(msg.str());
    }
}

}  // namespace

SchedulePoint eval_schedule(const ScheduleSpec& spec, double t) {
    check_range(spec, t);
    SchedulePoint p;
    p.t = t;
    switch (spec.kind) {
        case ScheduleKind::VpCosine: {
            // alpha = cos(pi t / 2) written as sin(pi (1 - t) / 2) so the
            // value stays well conditioned as t -> 1.
            p.alpha = std::sin(kHalfPi * (1.0 - t));
            p.sigma = std::sin(kHalfPi * t);
            p.d_alpha = -kHalfPi * std::cos(kHalfPi * (1.0 - t));
            p.d_sigma = kHalfPi * std::cos(kHalfPi * t);
            break;
        }
        case ScheduleKind::VpLinearBeta: {
            const double db = spec.beta_max - spec.beta_min;
            const double beta = spec.beta_min + db * t;
            const double integral = spec.beta_min * t + 0.5 * db * t * t;
            p.alpha = std::exp(-0.5 * integral);
            p.d_alpha = -0.5 * beta * p.alpha;
            // sigma^2 = 1 - alpha^2; expm1 keeps sigma accurate for small t
            const double s2 = -std::expm1(-integral);
            p.sigma = std::sqrt(s2);
            p.d_sigma = -p.alpha * p.d_alpha / p.sigma;
            break;
        }
        case ScheduleKind::Ve: {
            const double log_ratio = std::log(spec.sigma_max / spec.sigma_min);
            p.alpha = 1.0;
            p.d_alpha = 0.0;
            p.sigma = spec.sigma_min * std::exp(log_ratio * t);
            p.d_sigma = p.sigma * log_ratio;
            break;
        }
        case ScheduleKind::Ot: {
            p.alpha = 1.0 - t;
            p.sigma = t;
            p.d_alpha = -1.0;
            p.d_sigma = 1.0;
            break;
        }
    }
    p.lambda = std::log(p.alpha / p.sigma);
    p.d_lambda = p.d_alpha / p.alpha - p.d_sigma / p.sigma;
    return p;
}

SdeCoeffs sde_coeffs(const ScheduleSpec& spec, double t) {
    const SchedulePoint p = eval_schedule(spec, t);
    SdeCoeffs c;
    c.f = p.d_alpha / p.alpha;
    c.g2 = 2.0 * p.sigma * p.d_sigma - 2.0 * c.f * p.sigma * p.sigma;
    return c;
}

const char* schedule_kind_name(ScheduleKind k) {
    switch (k) {
        case ScheduleKind::VpCosine: return "vp-cosine";
        case ScheduleKind::VpLinearBeta: return "vp-linear";
        case ScheduleKind::Ve: return "ve";
        case ScheduleKind::Ot: return "ot";
    }
    return "unknown";
}

ScheduleKind schedule_kind_from_name(const std::string& name) {
    if (name == "vp-cosine") return ScheduleKind::VpCosine;
    if (name == "vp-linear") return ScheduleKind::VpLinearBeta;
    if (name == "ve") return ScheduleKind::Ve;
    if (name == "ot") return ScheduleKind::Ot;
    throw std::invalid_argument("unknown schedule kind: " + name);
}

}  // namespace dualsolver
