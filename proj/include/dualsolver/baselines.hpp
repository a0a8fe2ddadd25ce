#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dualsolver/backbone.hpp"
#include "dualsolver/solver.hpp"

namespace dualsolver {

enum class BaselineKind { Ddim, Dpmpp2m };

const char* baseline_kind_name(BaselineKind k);

// Deterministic DDIM update written in data-prediction form:
//   (sigma_next/sigma_i) x_i + (alpha_next - sigma_next alpha_i / sigma_i) x_pred
// For a consistent dual evaluation this equals alpha_next x_pred + sigma_next eps_pred.
Vec ddim_step(const Vec& x_i, const DualEval& eval_i, const SchedulePoint& point_i,
              const SchedulePoint& point_next);

// Runs a baseline over the given time grid (length M+1). dpmpp_2m is the
// second-order multistep update on data predictions in the lambda domain
// with exponential weights; its first step is DDIM. NFE = M.
SampleResult baseline_sample(BaselineKind kind, const Backbone& backbone,
                             const ScheduleSpec& spec, const std::vector<double>& times,
                             const Vec& x_T, std::optional<int> cond = std::nullopt,
                             double guidance_scale = 1.0, bool record_trajectory = false);

}  // namespace dualsolver
