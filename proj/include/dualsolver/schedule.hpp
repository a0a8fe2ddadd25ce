#pragma once

#include <string>

namespace dualsolver {

// Noise schedule families. All are continuous-time with signal rate alpha(t)
// and noise rate sigma(t); time runs from t_max (noise) down to t_min (data)
// during sampling.
enum class ScheduleKind { VpCosine, VpLinearBeta, Ve, Ot };

struct ScheduleSpec {
    ScheduleKind kind = ScheduleKind::Ot;

    // VP-linear-beta: beta(t) = beta_min + (beta_max - beta_min) * t
    double beta_min = 0.1;
    double beta_max = 20.0;

    // VE: sigma(t) = sigma_min * (sigma_max / sigma_min)^t
    double sigma_min = 0.01;
    double sigma_max = 50.0;

    double T = 1.0;
    // Endpoint clamps keep alpha and sigma strictly positive (sigma^-gamma
    // terms blow up at the exact endpoints of OT/VP schedules).
    double t_min = 1e-3;
    double t_max = 1.0 - 1e-5;

    static ScheduleSpec make(ScheduleKind k) {
        ScheduleSpec s;
        s.kind = k;
        return s;
    }
};

// Schedule evaluation at one time: rates, their time derivatives, and the
// half log-SNR lambda = log(alpha/sigma) with its derivative. All fields are
// analytic; nothing is finite-differenced.
struct SchedulePoint {
    double t = 0.0;
    double alpha = 1.0;
    double sigma = 1.0;
    double d_alpha = 0.0;
    double d_sigma = 0.0;
    double lambda = 0.0;
    double d_lambda = 0.0;
};

SchedulePoint eval_schedule(const ScheduleSpec& spec, double t);

// Drift/diffusion coefficients of the forward SDE:
//   f = d log alpha / dt,  g2 = d sigma^2/dt - 2 f sigma^2
struct SdeCoeffs {
    double f = 0.0;
    double g2 = 0.0;
};

SdeCoeffs sde_coeffs(const ScheduleSpec& spec, double t);

const char* schedule_kind_name(ScheduleKind k);
ScheduleKind schedule_kind_from_name(const std::string& name);

}  // namespace dualsolver
