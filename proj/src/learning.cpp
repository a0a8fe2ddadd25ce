#include "dualsolver/learning.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "dualsolver/parallel.hpp"
#include "dualsolver/rng.hpp"

namespace dualsolver {

const char* loss_kind_name(LossKind k) {
    switch (k) {
        case LossKind::HardLabel: return "hard_label";
        case LossKind::SoftLabel: return "soft_label";
        case LossKind::SampleReg: return "sample_reg";
        case LossKind::TrajectoryReg: return "trajectory_reg";
    }
    return "unknown";
}

LossKind loss_kind_from_name(const std::string& name) {
    if (name == "hard_label") return LossKind::HardLabel;
    if (name == "soft_label") return LossKind::SoftLabel;
    if (name == "sample_reg") return LossKind::SampleReg;
    if (name == "trajectory_reg") return LossKind::TrajectoryReg;
    throw std::invalid_argument("unknown loss kind: " + name);
}

namespace {

// cross-entropy against a hard label, from log-probabilities
double cross_entropy_hard(const std::vector<double>& log_p, int y) {
    return -log_p[static_cast<std::size_t>(y)];
}

double cross_entropy_soft(const std::vector<double>& p_teacher,
                          const std::vector<double>& log_p_student) {
    double ce = 0.0;
    for (std::size_t k = 0; k < p_teacher.size(); ++k) {
        ce -= p_teacher[k] * log_p_student[k];
    }
    return ce;
}

double mse(const Vec& a, const Vec& b) {
    check_same_size(a, b, "mse");
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return s / static_cast<double>(a.size());
}

// Teacher state at one target time: the teacher runs its own uniform grid
// from t_start down to that time.
Vec teacher_state_at(const TeacherSpec& teacher, const Backbone& backbone,
                     const ScheduleSpec& schedule, const Vec& x_T, int label,
                     double t_target) {
    if (t_target >= schedule.t_max) return x_T;
    const std::vector<double> grid =
        timesteps(std::vector<double>(teacher.M_teacher, 0.0), schedule.t_max, t_target);
    return baseline_sample(teacher.kind, backbone, schedule, grid, x_T, label).final;
}

}  // namespace

double compute_loss_with(const LossSpec& spec, const SamplerFn& student,
                         const ScheduleSpec& schedule, const MixtureModel& backbone,
                         std::uint64_t rng_seed) {
    if (spec.kind != LossKind::HardLabel && !spec.teacher) {
        throw std::invalid_argument("compute_loss: this loss kind requires a teacher");
    }
    const std::size_t B = spec.batch_size;
    if (B == 0) throw std::invalid_argument("compute_loss: batch_size must be >= 1");
    const std::size_t K = backbone.components();
    const std::size_t dim = backbone.dim();

    std::vector<double> member_loss(B, 0.0);
    parallel_for(B, [&](std::size_t b) {
        Rng rng(Rng::mix(rng_seed, b));
        const Vec x_T = rng.normal_vec(dim);
        const int y = static_cast<int>(rng.uniform_below(K));

        const SampleResult student_run = student(x_T, y);
        // identity decoder: the solver output is the "decoded" sample
        const Vec& x0 = student_run.final;

        switch (spec.kind) {
            case LossKind::HardLabel: {
                member_loss[b] = cross_entropy_hard(bayes_log_posterior(backbone, x0), y);
                break;
            }
            case LossKind::SoftLabel: {
                const std::vector<double> grid = timesteps(
                    std::vector<double>(spec.teacher->M_teacher, 0.0), schedule.t_max,
                    schedule.t_min);
                const Vec teacher_x0 =
                    baseline_sample(spec.teacher->kind, backbone, schedule, grid, x_T, y)
                        .final;
                member_loss[b] = cross_entropy_soft(bayes_posterior(backbone, teacher_x0),
                                                    bayes_log_posterior(backbone, x0));
                break;
            }
            case LossKind::SampleReg: {
                const std::vector<double> grid = timesteps(
                    std::vector<double>(spec.teacher->M_teacher, 0.0), schedule.t_max,
                    schedule.t_min);
                const Vec teacher_x0 =
                    baseline_sample(spec.teacher->kind, backbone, schedule, grid, x_T, y)
                        .final;
                member_loss[b] = mse(x0, teacher_x0);
                break;
            }
            case LossKind::TrajectoryReg: {
                if (student_run.states.empty()) {
                    throw std::invalid_argument(
                        "compute_loss: trajectory regression needs recorded student states");
                }
                double acc = 0.0;
                for (std::size_t i = 0; i < student_run.states.size(); ++i) {
                    const double t_i = student_run.times[i + 1];
                    const Vec teacher_x = teacher_state_at(*spec.teacher, backbone, schedule,
                                                           x_T, y, t_i);
                    acc += mse(student_run.states[i], teacher_x);
                }
                member_loss[b] = acc / static_cast<double>(student_run.states.size());
                break;
            }
        }
    });

    // fixed-order reduction keeps the value independent of worker count
    double total = 0.0;
    for (double v : member_loss) total += v;
    return total / static_cast<double>(B);
}

double compute_loss(const LossSpec& spec, const SolverParams& params,
                    const SolverConfig& config, const MixtureModel& backbone,
                    std::uint64_t rng_seed) {
    SolverConfig cfg = config;
    cfg.record_trajectory = spec.kind == LossKind::TrajectoryReg;
    SamplerFn student = [&](const Vec& x_T, int label) {
        return sample(backbone, cfg, params, x_T, label);
    };
    const double loss = compute_loss_with(spec, student, config.schedule, backbone, rng_seed);
    if (!std::isfinite(loss)) {
        throw DivergedParamsError("compute_loss: non-finite loss", params.flatten());
    }
    return loss;
}

std::vector<double> fd_gradient(const LossFn& loss_fn, const std::vector<double>& theta,
                                double h, std::uint64_t seed) {
    if (!(h > 0.0)) throw std::invalid_argument("fd_gradient: h must be positive");
    std::vector<double> grad(theta.size(), 0.0);
    parallel_for(theta.size(), [&](std::size_t j) {
        std::vector<double> plus = theta;
        std::vector<double> minus = theta;
        plus[j] += h;
        minus[j] -= h;
        // common random numbers: the +/- pair shares one seed
        grad[j] = (loss_fn(plus, seed) - loss_fn(minus, seed)) / (2.0 * h);
    });
    for (std::size_t j = 0; j < grad.size(); ++j) {
        if (!std::isfinite(grad[j])) {
            throw DivergedParamsError(
                "fd_gradient: non-finite component at coordinate " + std::to_string(j),
                theta);
        }
    }
    return grad;
}

double cosine_lr(std::size_t iteration, const OptimConfig& config) {
    if (config.total_steps == 0) return config.lr_start;
    const double frac =
        static_cast<double>(iteration) / static_cast<double>(config.total_steps);
    return config.lr_end +
           0.5 * (config.lr_start - config.lr_end) *
               (1.0 + std::cos(3.14159265358979323846 * frac));
}

void optimizer_step(AdamState& state, const std::vector<double>& grad,
                    std::vector<double>& theta, std::size_t iteration,
                    const OptimConfig& config, std::size_t decay_limit) {
    if (grad.size() != theta.size()) {
        throw std::invalid_argument("optimizer_step: grad/theta size mismatch");
    }
    if (state.m.size() != theta.size()) {
        state.m.assign(theta.size(), 0.0);
        state.v.assign(theta.size(), 0.0);
    }
    const double lr = cosine_lr(iteration, config);
    const double t = static_cast<double>(iteration + 1);
    const double bc1 = 1.0 - std::pow(config.beta1, t);
    const double bc2 = 1.0 - std::pow(config.beta2, t);
    for (std::size_t j = 0; j < theta.size(); ++j) {
        state.m[j] = config.beta1 * state.m[j] + (1.0 - config.beta1) * grad[j];
        state.v[j] = config.beta2 * state.v[j] + (1.0 - config.beta2) * grad[j] * grad[j];
        const double m_hat = state.m[j] / bc1;
        const double v_hat = state.v[j] / bc2;
        theta[j] -= lr * m_hat / (std::sqrt(v_hat) + config.eps);
        if (j < decay_limit) theta[j] -= lr * config.weight_decay * theta[j];
    }
}

TrainResult train(const LossSpec& spec, const SolverConfig& config, const OptimConfig& optim,
                  const MixtureModel& backbone, const SolverParams& init) {
    init.validate(config.M);
    const auto start = std::chrono::steady_clock::now();

    std::vector<double> theta = init.flatten();
    const std::size_t decay_limit = theta.size() - config.M;  // raw_steps are not decayed

    LossFn loss_fn = [&](const std::vector<double>& th, std::uint64_t seed) {
        return compute_loss(spec, SolverParams::unflatten(th, config.M), config, backbone,
                            seed);
    };

    // held-out stream so initial and final losses are comparable
    const std::uint64_t eval_seed = Rng::mix(~optim.seed, 0xE7A1);

    TrainResult result;
    result.initial_loss = loss_fn(theta, eval_seed);

    AdamState state;
    for (std::size_t it = 0; it < optim.total_steps; ++it) {
        const std::uint64_t it_seed = Rng::mix(optim.seed, it);
        double loss = 0.0;
        try {
            loss = loss_fn(theta, it_seed);
            const std::vector<double> grad = fd_gradient(loss_fn, theta, optim.fd_h, it_seed);
            optimizer_step(state, grad, theta, it, optim, decay_limit);
        } catch (DivergedParamsError& e) {
            throw DivergedParamsError(std::string(e.what()) + " at iteration " +
                                          std::to_string(it),
                                      e.theta);
        }
        result.loss_trace.push_back(loss);
        result.lr_trace.push_back(cosine_lr(it, optim));
    }

    result.iterations = optim.total_steps;
    result.params = SolverParams::unflatten(theta, config.M);
    result.final_loss =
        optim.total_steps == 0 ? result.initial_loss : loss_fn(theta, eval_seed);
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace dualsolver
