#pragma once

#include <cstdint>

#include "dualsolver/schedule.hpp"
#include "dualsolver/vec.hpp"

namespace dualsolver {

enum class PredictionKind { Noise, Data, Velocity };

// Paired data/noise prediction at one state and time. The pair always
// satisfies alpha * x_pred + sigma * eps_pred == x for the state x it was
// produced from, which is what makes the solver updates prediction-type
// agnostic. state_tag identifies the evaluation site for cache bookkeeping.
struct DualEval {
    Vec x_pred;
    Vec eps_pred;
    double t = 0.0;
    std::uint64_t state_tag = 0;
};

// Builds the dual pair from a single raw prediction of the given kind.
// Velocity conversions solve the 2x2 system
//   alpha * x_pred + sigma * eps_pred = x
//   d_alpha * x_pred + d_sigma * eps_pred = v
// which is singular iff d_lambda == 0.
DualEval to_dual(PredictionKind kind, const Vec& raw, const Vec& x,
                 const SchedulePoint& point, std::uint64_t state_tag = 0);

// v = d_alpha * x_pred + d_sigma * eps_pred
Vec velocity_of(const DualEval& dual, const SchedulePoint& point);

// Classifier-free guidance, combined in noise-prediction space:
//   eps_g = eps_u + scale * (eps_c - eps_u)
// x_pred is rebuilt from eps_g against the state x so the returned pair
// stays consistent.
DualEval apply_guidance(const DualEval& cond, const DualEval& uncond, double scale,
                        const Vec& x, const SchedulePoint& point);

}  // namespace dualsolver
