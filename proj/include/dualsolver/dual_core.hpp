#pragma once

#include "dualsolver/schedule.hpp"

namespace dualsolver {

// gamma >= 0 integrates against sigma-powers, gamma < 0 against alpha-powers.
// The two branches agree in the limit gamma -> 0 (both give A = B = 1).
enum class GammaBranch { NonNegative, Negative };

// State and integral multipliers of the dual-prediction update:
//   gamma >= 0:  A = (sigma_next/sigma_i)^gamma,  B = sigma_next^gamma
//   gamma <  0:  A = (alpha_next/alpha_i)^-gamma, B = alpha_next^-gamma
struct BranchCoeffs {
    double A = 1.0;
    double B = 1.0;
    GammaBranch branch = GammaBranch::NonNegative;
};

BranchCoeffs branch_coeffs(double gamma, const SchedulePoint& point_i,
                           const SchedulePoint& point_next);

// The untransformed integration variables at one schedule point:
//   gamma >= 0:  q_u = alpha * sigma^-gamma,  q_v = sigma^(1-gamma)
//   gamma <  0:  q_u = alpha^(1+gamma),       q_v = sigma * alpha^gamma
struct Quantities {
    double q_u = 0.0;
    double q_v = 0.0;
};

Quantities quantities(double gamma, const SchedulePoint& point);

enum class TransformDir { Forward, Inverse };

// Log-linear transform L(y; tau) = log1p(tau*y)/tau with inverse
// expm1(tau*u)/tau. Interpolates the linear domain (tau -> 0) and the log1p
// domain (tau = 1). Below tau = 1e-8 a 3-term series in tau removes the 0/0.
double log_linear(double y, double tau, TransformDir dir);

// Alternative domain change L(y; tau) = (1-tau)*y + tau*log(y); the inverse
// is solved numerically (bracketed bisection + Newton, |residual| < 1e-12).
double type1_transform(double y, double tau, TransformDir dir);

// Per-interval increments feeding the predictor/corrector. dLinv_* are the
// exact increments of the untransformed quantities (independent of tau, no
// quadrature); du/dv are the increments in the transformed domain.
struct IntervalTerms {
    double dLinv_u = 0.0;
    double dLinv_v = 0.0;
    double du = 0.0;
    double dv = 0.0;
    double q_u_i = 0.0;
    double q_v_i = 0.0;
};

IntervalTerms interval_terms(double gamma, double tau_u, double tau_v,
                             const SchedulePoint& point_i,
                             const SchedulePoint& point_next);

// Residual term K(delta; kappa) = kappa * delta^2. Second order in the
// interval width, so adding it never degrades the step's local accuracy.
inline double residual(double delta, double kappa) { return kappa * delta * delta; }

// The scalar beta the gamma parameterization stands for:
//   gamma >= 0: beta = gamma * d_sigma/sigma
//   gamma <  0: beta = -gamma * d_alpha/alpha
// beta = 0 (gamma = 0) recovers the velocity-prediction form.
double beta_of_gamma(double gamma, const SchedulePoint& point);

// Learner-side parameter mappings. tau is stored as an unconstrained raw
// scalar and mapped through softplus with a 1e-6 floor; gamma is clamped so
// sigma^-gamma cannot overflow at the schedule endpoints.
inline constexpr double kTauFloor = 1e-6;
inline constexpr double kGammaClampAbs = 4.0;

double softplus(double x);
double inv_softplus(double y);
double tau_from_raw(double raw);
double clamp_gamma(double gamma);

}  // namespace dualsolver
