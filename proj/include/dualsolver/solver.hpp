#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dualsolver/backbone.hpp"
#include "dualsolver/dual_core.hpp"
#include "dualsolver/prediction.hpp"
#include "dualsolver/schedule.hpp"
#include "dualsolver/vec.hpp"

namespace dualsolver {

// Constrained per-step scalars consumed by the step functions. tau values
// must be positive here; the raw (learnable) representation lives in
// SolverParams.
struct StepParams {
    double gamma = 1.0;
    double tau_u = 1.0;
    double tau_v = 1.0;
    double kappa_u = 0.0;
    double kappa_v = 0.0;
};

// One parameter group (predictor or corrector) stored as raw arrays: gamma
// unclamped, tau pre-softplus. Kept raw so files round-trip bit-exactly and
// interpolation across step counts happens in the unconstrained space.
struct ParamArrays {
    std::vector<double> gamma;
    std::vector<double> tau_u_raw;
    std::vector<double> tau_v_raw;
    std::vector<double> kappa_u;
    std::vector<double> kappa_v;

    std::size_t size() const { return gamma.size(); }
    void resize(std::size_t n, double gamma0, double tau_raw0);
    StepParams step(std::size_t i) const;  // clamp + softplus applied here
};

struct SolverParams {
    ParamArrays pred;               // length M
    ParamArrays corr;               // length M-1
    std::vector<double> raw_steps;  // length M, softmaxed into step fractions

    std::size_t steps() const { return raw_steps.size(); }
    void validate(std::size_t M) const;

    // gamma = 1, tau = 1, kappa = 0, uniform grid: reproduces DDIM in p1 mode.
    static SolverParams ddim_init(std::size_t M);

    // Flat layout (documented order, used by the finite-difference learner):
    // pred[gamma, tau_u_raw, tau_v_raw, kappa_u, kappa_v] per step, then the
    // same for corr, then raw_steps.
    std::vector<double> flatten() const;
    static SolverParams unflatten(const std::vector<double>& theta, std::size_t M);
    static std::size_t flat_size(std::size_t M) { return 5 * M + 5 * (M - 1) + M; }
    static std::string coordinate_name(std::size_t index, std::size_t M);
};

enum class SolverMode { P1, P1C2, P2, P2C2 };

const char* solver_mode_name(SolverMode m);
SolverMode solver_mode_from_name(const std::string& name);

struct SolverConfig {
    SolverMode mode = SolverMode::P1C2;
    std::size_t M = 5;
    ScheduleSpec schedule;
    double guidance_scale = 1.0;
    bool record_trajectory = false;
};

// Evaluation list of the sampling loop: one entry per backbone evaluation,
// in evaluation order, every entry taken at a provisional state.
struct EvalCache {
    std::vector<DualEval> entries;
};

struct SampleResult {
    Vec final;                       // predictor output at the last step
    std::vector<double> times;       // M+1 grid values
    std::vector<Vec> states;         // post-step states (recorded when enabled)
    std::vector<Vec> provisional;    // provisional states (recorded when enabled)
    std::size_t nfe = 0;             // backbone evaluations; equals M
};

// Softmax step fractions cumulated from t_start down to t_end. Fractions are
// floored at 1e-12 (then renormalized) so the grid stays strictly decreasing
// for any finite raw values.
std::vector<double> timesteps(const std::vector<double>& raw_steps, double t_start,
                              double t_end);

// First-order predictor:
//   A x_i + B [ x_pred (dLinv_u + K(du)) + eps_pred (dLinv_v + K(dv)) ]
Vec predictor_first(const Vec& x_i, const DualEval& eval_i, const StepParams& params,
                    const SchedulePoint& point_i, const SchedulePoint& point_next);

// Second-order predictor (backward difference over the previous interval):
//   A x_i + B [ x_pred_i dLinv_u + (dx/(2 r_u)) (dLinv_u + K(du)) + eps analogue ]
// with r_u = du_{i-1}/du_i. Throws on a zero history interval.
Vec predictor_second(const Vec& x_i, const DualEval& eval_prev, const DualEval& eval_i,
                     const StepParams& params, const SchedulePoint& point_prev,
                     const SchedulePoint& point_i, const SchedulePoint& point_next);

// Second-order corrector (forward difference using the fresh evaluation at
// the provisional next state):
//   A x_i + B [ x_pred_i dLinv_u + (dx/2)(dLinv_u + K(du)) + eps analogue ]
Vec corrector_second(const Vec& x_i, const DualEval& eval_i, const DualEval& eval_next,
                     const StepParams& params, const SchedulePoint& point_i,
                     const SchedulePoint& point_next);

// Predictor-corrector sampling loop. Evaluates at (x_{t_0}, t_0), then per
// step: predictor -> provisional state, evaluate there, corrector (except
// after the final predictor, which is returned uncorrected). Exactly M
// backbone evaluations in every mode; p2 modes fall back to the first-order
// predictor at step 0.
SampleResult sample(const Backbone& backbone, const SolverConfig& config,
                    const SolverParams& params, const Vec& x_T,
                    std::optional<int> cond = std::nullopt, std::uint64_t rng_seed = 0);

enum class StepKind { P1Step, CorrectorStep, P2Step };

struct OrderCheckResult {
    std::vector<double> h;
    std::vector<double> error;
    double slope = 0.0;
};

// Local truncation order measurement against the closed-form Gaussian flow.
// All evaluations sit on the exact trajectory; returns the least-squares
// slope of log error against log h.
OrderCheckResult order_check(const GaussianModel& model, const ScheduleSpec& spec,
                             StepKind kind, const StepParams& params, double t_i,
                             const std::vector<double>& h_list, const Vec& x_i);

}  // namespace dualsolver
