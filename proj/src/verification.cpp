#include "dualsolver/verification.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "dualsolver/backbone.hpp"
#include "dualsolver/baselines.hpp"
#include "dualsolver/dual_core.hpp"
#include "dualsolver/params_io.hpp"
#include "dualsolver/prediction.hpp"
#include "dualsolver/rng.hpp"
#include "dualsolver/solver.hpp"

namespace dualsolver {

namespace {

double rel_err(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

const ScheduleKind kAllKinds[] = {ScheduleKind::VpCosine, ScheduleKind::VpLinearBeta,
                                  ScheduleKind::Ve, ScheduleKind::Ot};

// Sampling grids start at t = 0.95 in the equivalence suite: the gamma < 0
// state multiplier grows like (alpha ratio)^|gamma|, and starting where
// alpha is ~1e-5 would amplify round-off past any meaningful tolerance.
ScheduleSpec equivalence_spec(ScheduleKind kind) {
    ScheduleSpec spec = ScheduleSpec::make(kind);
    spec.t_max = 0.95;
    return spec;
}

struct Check {
    bool ok = true;
    double worst = 0.0;
    std::string note;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
    void expect_le(double value, double bound, const std::string& what) {
        worst = std::max(worst, value);
        if (!(value <= bound) && ok) {
            ok = false;
            std::ostringstream os;
            os << what << " (" << value << " > " << bound << ")";
            note = os.str();
        }
    }
};

SuiteResult finish(const char* name, const Check& c) {
    SuiteResult r;
    r.name = name;
    r.pass = c.ok;
    if (!c.ok) {
        r.detail = c.note;
    } else {
        std::ostringstream os;
        os << "worst deviation " << c.worst;
        r.detail = os.str();
    }
    return r;
}

SuiteResult schedule_suite() {
    Check c;
    const double h = 1e-6;
    for (ScheduleKind kind : kAllKinds) {
        const ScheduleSpec spec = ScheduleSpec::make(kind);
        // derivative checks stay away from the clamp ends, where the
        // third derivative of lambda dwarfs the finite-difference window
        const double lo = std::max(spec.t_min + h, 0.01);
        const double hi = std::min(spec.t_max - h, 0.95);
        double prev_lambda = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double t = lo + (hi - lo) * i / 99.0;
            const SchedulePoint p = eval_schedule(spec, t);
            const SchedulePoint pm = eval_schedule(spec, t - h);
            const SchedulePoint pp = eval_schedule(spec, t + h);
            c.expect_le(rel_err((pp.alpha - pm.alpha) / (2 * h), p.d_alpha), 1e-5,
                        "d_alpha finite difference");
            c.expect_le(rel_err((pp.sigma - pm.sigma) / (2 * h), p.d_sigma), 1e-5,
                        "d_sigma finite difference");
            c.expect_le(rel_err((pp.lambda - pm.lambda) / (2 * h), p.d_lambda), 1e-5,
                        "d_lambda finite difference");
            c.expect_le(std::abs(p.lambda - std::log(p.alpha / p.sigma)), 1e-12,
                        "lambda definition");
            c.expect_le(
                std::abs(p.d_lambda - (p.d_alpha / p.alpha - p.d_sigma / p.sigma)), 1e-10,
                "d_lambda definition");
            if (i > 0) c.expect(p.lambda < prev_lambda, "lambda monotonicity");
            prev_lambda = p.lambda;
            if (kind == ScheduleKind::VpCosine || kind == ScheduleKind::VpLinearBeta) {
                c.expect_le(std::abs(p.alpha * p.alpha + p.sigma * p.sigma - 1.0), 1e-12,
                            "VP identity");
            }
            if (kind == ScheduleKind::Ve) {
                c.expect(p.alpha == 1.0 && p.d_alpha == 0.0, "VE alpha");
            }
        }
    }
    return finish("schedule_invariants", c);
}

SuiteResult prediction_suite(std::uint64_t seed) {
    Check c;
    Rng rng(Rng::mix(seed, 101));
    const ScheduleSpec spec = ScheduleSpec::make(ScheduleKind::VpCosine);
    for (int trial = 0; trial < 50; ++trial) {
        const double t = rng.uniform_in(0.05, 0.95);
        const SchedulePoint p = eval_schedule(spec, t);
        const Vec x = rng.normal_vec(3);
        const Vec raw = rng.normal_vec(3);
        for (PredictionKind kind :
             {PredictionKind::Noise, PredictionKind::Data, PredictionKind::Velocity}) {
            const DualEval d = to_dual(kind, raw, x, p);
            const Vec rebuilt = lincomb(p.alpha, d.x_pred, p.sigma, d.eps_pred);
            c.expect_le(max_abs_diff(rebuilt, x), 1e-10, "dual consistency");
            Vec extracted;
            switch (kind) {
                case PredictionKind::Noise: extracted = d.eps_pred; break;
                case PredictionKind::Data: extracted = d.x_pred; break;
                case PredictionKind::Velocity: extracted = velocity_of(d, p); break;
            }
            c.expect_le(max_abs_diff(extracted, raw), 1e-10, "dual roundtrip");
        }
        const DualEval cond = to_dual(PredictionKind::Noise, raw, x, p);
        const DualEval uncond = to_dual(PredictionKind::Noise, rng.normal_vec(3), x, p);
        const DualEval g = apply_guidance(cond, uncond, 1.7, x, p);
        const Vec rebuilt = lincomb(p.alpha, g.x_pred, p.sigma, g.eps_pred);
        c.expect_le(max_abs_diff(rebuilt, x), 1e-10, "guided consistency");
    }
    return finish("prediction_roundtrips", c);
}

SuiteResult reduction_suite(std::uint64_t seed) {
    Check c;
    c.expect_le(reduction_identity_max_err(seed, 50), 1e-12, "reduction identities");
    return finish("reduction_identities", c);
}

SuiteResult ddim_equivalence_suite(ScheduleKind kind, std::uint64_t seed) {
    Check c;
    c.expect_le(ddim_equivalence_max_err(kind, seed), 1e-9, "p1/kappa=0 vs DDIM");
    return finish("ddim_equivalence", c);
}

SuiteResult log_linear_suite(std::uint64_t seed) {
    Check c;
    Rng rng(Rng::mix(seed, 303));
    for (int trial = 0; trial < 60; ++trial) {
        const double y = std::exp(rng.uniform_in(-6.0, 4.0));
        const double tau = std::exp(rng.uniform_in(-18.0, 2.0));
        const double u = log_linear(y, tau, TransformDir::Forward);
        c.expect_le(rel_err(log_linear(u, tau, TransformDir::Inverse), y), 1e-11,
                    "log_linear roundtrip");
        if (tau < 1e-10) {
            c.expect_le(rel_err(u, y), 1e-9, "log_linear linear limit");
        }
        const double t1u = type1_transform(y, 0.5, TransformDir::Forward);
        c.expect_le(rel_err(type1_transform(t1u, 0.5, TransformDir::Inverse), y), 1e-9,
                    "type1 roundtrip");
    }
    // continuity of the two gamma branches at 0, and tau-independence of the
    // exact increments
    const ScheduleSpec spec = ScheduleSpec::make(ScheduleKind::VpCosine);
    for (int trial = 0; trial < 20; ++trial) {
        const double t1 = rng.uniform_in(0.30, 0.90);
        const double t2 = rng.uniform_in(0.05, t1 - 0.05);
        const SchedulePoint a = eval_schedule(spec, t1);
        const SchedulePoint b = eval_schedule(spec, t2);
        double prev_gap = -1.0;
        for (double eps : {1e-2, 1e-4, 1e-6}) {
            const BranchCoeffs cp = branch_coeffs(eps, a, b);
            const BranchCoeffs cm = branch_coeffs(-eps, a, b);
            const Quantities qp = quantities(eps, a);
            const Quantities qm = quantities(-eps, a);
            const double gap = std::max({std::abs(cp.A - cm.A), std::abs(cp.B - cm.B),
                                         std::abs(qp.q_u - qm.q_u),
                                         std::abs(qp.q_v - qm.q_v)});
            c.expect_le(gap, 60.0 * eps, "gamma branch continuity at 0");
            if (prev_gap >= 0.0) c.expect(gap <= prev_gap + 1e-15, "gap shrinks with eps");
            prev_gap = gap;
        }
        const double gamma = rng.uniform_in(-3.0, 3.0);
        IntervalTerms ref = interval_terms(gamma, 1e-6, 1e-6, a, b);
        for (double tau : {0.5, 1.0, 5.0}) {
            const IntervalTerms terms = interval_terms(gamma, tau, tau, a, b);
            c.expect(terms.dLinv_u == ref.dLinv_u && terms.dLinv_v == ref.dLinv_v,
                     "dLinv independent of tau");
        }
    }
    return finish("log_linear_transform", c);
}

SuiteResult timestep_suite(std::uint64_t seed) {
    Check c;
    Rng rng(Rng::mix(seed, 404));
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t M = 1 + rng.uniform_below(12);
        std::vector<double> raw(M);
        for (double& v : raw) v = rng.uniform_in(-3.0, 3.0);
        const std::vector<double> grid = timesteps(raw, 0.95, 1e-3);
        c.expect(grid.size() == M + 1, "grid length");
        c.expect(grid.front() == 0.95 && grid.back() == 1e-3, "grid endpoints");
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            c.expect(grid[i] > grid[i + 1], "grid strictly decreasing");
        }
    }
    const std::vector<double> uniform = timesteps({0.0, 0.0, 0.0, 0.0}, 1.0, 0.0);
    for (std::size_t i = 0; i <= 4; ++i) {
        c.expect_le(std::abs(uniform[i] - (1.0 - 0.25 * static_cast<double>(i))), 1e-15,
                    "uniform softmax grid");
    }
    return finish("timestep_grid", c);
}

SuiteResult oracle_suite(std::uint64_t seed) {
    Check c;
    Rng rng(Rng::mix(seed, 505));
    const ScheduleSpec spec = ScheduleSpec::make(ScheduleKind::Ot);

    const GaussianModel gauss({0.6, -0.4}, {1.0, 1.7});
    const Vec x = rng.normal_vec(2);
    const Vec ab = oracle_flow(gauss, spec, oracle_flow(gauss, spec, x, 0.9, 0.5), 0.5, 0.1);
    const Vec direct = oracle_flow(gauss, spec, x, 0.9, 0.1);
    c.expect_le(max_abs_diff(ab, direct), 1e-8, "flow composition");

    const MixtureModel single({1.0}, {{0.6, -0.4}}, 1.0);
    const GaussianModel single_g({0.6, -0.4}, {1.0, 1.0});
    const Vec rk4 = oracle_flow(single, spec, x, 0.9, 0.05);
    const Vec closed = oracle_flow(single_g, spec, x, 0.9, 0.05);
    c.expect_le(max_abs_diff(rk4, closed), 1e-8, "RK4 vs closed form");

    // score relation: -eps_pred/sigma equals the analytic gradient of the
    // marginal log density
    for (int trial = 0; trial < 20; ++trial) {
        const double t = rng.uniform_in(0.05, 0.9);
        const SchedulePoint p = eval_schedule(spec, t);
        const Vec xt = rng.normal_vec(2);
        const DualEval ev = gaussian_dual(gauss, xt, p);
        for (std::size_t j = 0; j < 2; ++j) {
            const double var =
                p.alpha * p.alpha * gauss.std_dev[j] * gauss.std_dev[j] + p.sigma * p.sigma;
            const double score = -(xt[j] - p.alpha * gauss.mean[j]) / var;
            c.expect_le(std::abs(-ev.eps_pred[j] / p.sigma - score), 1e-10, "score relation");
        }
    }
    return finish("oracle_flows", c);
}

SuiteResult params_io_suite(std::uint64_t seed) {
    Check c;
    Rng rng(Rng::mix(seed, 606));
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t M = 2 + rng.uniform_below(6);
        ParamsFile file;
        file.schedule = ScheduleSpec::make(ScheduleKind::Ot);
        file.params = SolverParams::ddim_init(M);
        std::vector<double> theta = file.params.flatten();
        for (double& v : theta) v = rng.normal();
        file.params = SolverParams::unflatten(theta, M);
        file.provenance.seed = rng.next_u64();
        const ParamsFile back = decode_params(encode_params(file));
        c.expect(back.params.flatten() == file.params.flatten(), "bit-exact roundtrip");
        c.expect(back.provenance.seed == file.provenance.seed, "provenance roundtrip");
    }
    bool threw = false;
    try {
        decode_params("{\"format_version\": 2}");
    } catch (const std::invalid_argument&) {
        threw = true;
    }
    c.expect(threw, "unsupported version rejected");
    return finish("params_roundtrip", c);
}

}  // namespace

double reduction_identity_max_err(std::uint64_t seed, int n_intervals) {
    Rng rng(Rng::mix(seed, 707));
    double worst = 0.0;
    for (ScheduleKind kind : kAllKinds) {
        const ScheduleSpec spec = ScheduleSpec::make(kind);
        for (int trial = 0; trial < n_intervals; ++trial) {
            const double t_i = rng.uniform_in(0.25, 0.95);
            const double t_n = rng.uniform_in(0.01, t_i - 0.02);
            const SchedulePoint a = eval_schedule(spec, t_i);
            const SchedulePoint b = eval_schedule(spec, t_n);

            // reference coefficients via the log-SNR exponential forms:
            //   noise:    A = alpha'/alpha,  eps coeff = alpha' (e^-lambda' - e^-lambda)
            //   velocity: A = 1,             x coeff = dalpha,  eps coeff = dsigma
            //   data:     A = sigma'/sigma,  x coeff = sigma' (e^lambda' - e^lambda)
            struct Ref {
                double gamma, A, cx, ce;
            };
            const Ref refs[3] = {
                {-1.0, b.alpha / a.alpha, 0.0,
                 b.alpha * (std::exp(-b.lambda) - std::exp(-a.lambda))},
                {0.0, 1.0, b.alpha - a.alpha, b.sigma - a.sigma},
                {1.0, b.sigma / a.sigma,
                 b.sigma * (std::exp(b.lambda) - std::exp(a.lambda)), 0.0},
            };
            for (const Ref& ref : refs) {
                const BranchCoeffs bc = branch_coeffs(ref.gamma, a, b);
                const IntervalTerms terms = interval_terms(ref.gamma, 1.0, 1.0, a, b);
                worst = std::max(worst, rel_err(bc.A, ref.A));
                worst = std::max(worst, rel_err(bc.B * terms.dLinv_u, ref.cx));
                worst = std::max(worst, rel_err(bc.B * terms.dLinv_v, ref.ce));
            }
        }
    }
    return worst;
}

double ddim_equivalence_max_err(ScheduleKind kind, std::uint64_t seed) {
    const ScheduleSpec spec = equivalence_spec(kind);
    Rng rng(Rng::mix(seed, 808));

    const GaussianModel gauss({0.4, -0.7}, {1.0, 1.6});
    const MixtureModel mixture({0.5, 0.5}, {{1.5, 1.0}, {-1.5, -1.0}}, 0.8);
    const Backbone* backbones[2] = {&gauss, &mixture};

    double worst = 0.0;
    for (std::size_t M : {std::size_t{3}, std::size_t{5}, std::size_t{9}}) {
        for (int draw = 0; draw < 5; ++draw) {
            SolverParams params = SolverParams::ddim_init(M);
            for (double& v : params.raw_steps) v = rng.uniform_in(-0.5, 0.5);
            for (std::size_t i = 0; i < M; ++i) {
                params.pred.gamma[i] = rng.uniform_in(-4.0, 4.0);
            }
            for (double tau : {1e-6, 0.5, 1.0, 5.0}) {
                for (std::size_t i = 0; i < M; ++i) {
                    params.pred.tau_u_raw[i] = inv_softplus(tau);
                    params.pred.tau_v_raw[i] = inv_softplus(tau);
                }
                for (const Backbone* backbone : backbones) {
                    const Vec x_T = Rng(Rng::mix(seed, 900 + draw)).normal_vec(2);
                    SolverConfig config;
                    config.mode = SolverMode::P1;
                    config.M = M;
                    config.schedule = spec;
                    config.record_trajectory = true;
                    const SampleResult dual = sample(*backbone, config, params, x_T);
                    const SampleResult ddim =
                        baseline_sample(BaselineKind::Ddim, *backbone, spec, dual.times, x_T,
                                        std::nullopt, 1.0, true);
                    for (std::size_t i = 0; i < dual.states.size(); ++i) {
                        worst = std::max(worst, max_abs_diff(dual.states[i], ddim.states[i]));
                    }
                    worst = std::max(worst, max_abs_diff(dual.final, ddim.final));
                }
            }
        }
    }
    return worst;
}

std::vector<SuiteResult> run_verification(ScheduleKind kind, std::uint64_t seed) {
    std::vector<SuiteResult> results;
    results.push_back(schedule_suite());
    results.push_back(prediction_suite(seed));
    results.push_back(reduction_suite(seed));
    results.push_back(ddim_equivalence_suite(kind, seed));
    results.push_back(log_linear_suite(seed));
    results.push_back(timestep_suite(seed));
    results.push_back(oracle_suite(seed));
    results.push_back(params_io_suite(seed));
    return results;
}

}  // namespace dualsolver
