#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dualsolver/backbone.hpp"
#include "dualsolver/baselines.hpp"
#include "dualsolver/solver.hpp"

namespace dualsolver {

enum class LossKind { HardLabel, SoftLabel, SampleReg, TrajectoryReg };

const char* loss_kind_name(LossKind k);
LossKind loss_kind_from_name(const std::string& name);

struct TeacherSpec {
    BaselineKind kind = BaselineKind::Ddim;
    std::size_t M_teacher = 64;
};

// Hard-label classification needs only the Bayes classifier of the data
// mixture; the other objectives regress against a teacher solver.
struct LossSpec {
    LossKind kind = LossKind::HardLabel;
    std::size_t batch_size = 64;
    std::optional<TeacherSpec> teacher;
};

struct OptimConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double weight_decay = 0.01;
    double lr_start = 2e-3;
    double lr_end = 1e-4;
    std::size_t total_steps = 2000;  // desk-scale default
    double fd_h = 1e-4;
    std::uint64_t seed = 0;
};

struct TrainResult {
    SolverParams params;
    std::vector<double> loss_trace;  // one entry per iteration
    std::vector<double> lr_trace;
    std::size_t iterations = 0;
    double initial_loss = 0.0;
    double final_loss = 0.0;
    double wall_seconds = 0.0;
};

// Thrown when a loss or gradient turns non-finite; carries the offending
// parameter vector for inspection.
struct DivergedParamsError : std::runtime_error {
    std::vector<double> theta;
    DivergedParamsError(const std::string& msg, std::vector<double> params)
        : std::runtime_error(msg), theta(std::move(params)) {}
};

// A student sampler: maps (initial noise, class label) to a SampleResult with
// recorded states. Lets tests swap in oracle or baseline samplers.
using SamplerFn = std::function<SampleResult(const Vec& x_T, int label)>;

// Loss core over a common-random-numbers batch. Batch member i always draws
// from the stream mix(rng_seed, i), so the value does not depend on worker
// count or evaluation order.
double compute_loss_with(const LossSpec& spec, const SamplerFn& student,
                         const ScheduleSpec& schedule, const MixtureModel& backbone,
                         std::uint64_t rng_seed);

// Loss of the dual solver with the given parameters (Bayes classifier as the
// frozen classifier, identity decoder).
double compute_loss(const LossSpec& spec, const SolverParams& params,
                    const SolverConfig& config, const MixtureModel& backbone,
                    std::uint64_t rng_seed);

using LossFn = std::function<double(const std::vector<double>& theta, std::uint64_t seed)>;

// Central finite differences with common random numbers: both sides of every
// coordinate pair see the same seed. Coordinates follow the SolverParams
// flatten() order.
std::vector<double> fd_gradient(const LossFn& loss_fn, const std::vector<double>& theta,
                                double h, std::uint64_t seed);

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
};

double cosine_lr(std::size_t iteration, const OptimConfig& config);

// Decoupled-weight-decay Adam with bias correction. Weight decay applies
// only to coordinates below decay_limit: raw step variables are
// softmax-shift-invariant, so decaying them would bias the time grid.
void optimizer_step(AdamState& state, const std::vector<double>& grad,
                    std::vector<double>& theta, std::size_t iteration,
                    const OptimConfig& config, std::size_t decay_limit);

// Finite-difference training loop (Adam on the flattened raw parameters).
// Deterministic for a fixed config.seed regardless of worker count.
TrainResult train(const LossSpec& spec, const SolverConfig& config, const OptimConfig& optim,
                  const MixtureModel& backbone, const SolverParams& init);

}  // namespace dualsolver
