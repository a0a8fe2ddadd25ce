#include "dualsolver/dual_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dualsolver {

namespace {

constexpr double kSeriesTau = 1e-8;
constexpr double kExpGuard = 700.0;  // exp(700) is the last finite double decade

// pow with an explicit overflow guard on the exponent * log(base) product.
double checked_pow(double base, double expo) {
    if (!(base > 0.0)) {
        throw std::domain_error("dual_core: rate must be positive");
    }
    if (expo == 0.0) return 1.0;
    if (expo == 1.0) return base;
    const double mag = std::abs(expo * std::log(base));
    if (mag > kExpGuard) {
        std::ostringstream msg;
        msg << "dual_core: power overflow, |" << expo << " * log(" << base << ")| > 700";
        throw std::overflow_error(msg.str());
    }
    return std::pow(base, expo);
}

}  // namespace

BranchCoeffs branch_coeffs(double gamma, const SchedulePoint& point_i,
                           const SchedulePoint& point_next) {
    if (!std::isfinite(gamma)) throw std::domain_error("branch_coeffs: gamma must be finite");
    if (!(point_i.alpha > 0.0 && point_i.sigma > 0.0 && point_next.alpha > 0.0 &&
          point_next.sigma > 0.0)) {
        throw std::domain_error("branch_coeffs: schedule rates must be positive");
    }
    BranchCoeffs c;
    if (gamma >= 0.0) {
        c.branch = GammaBranch::NonNegative;
        c.A = checked_pow(point_next.sigma / point_i.sigma, gamma);
        c.B = checked_pow(point_next.sigma, gamma);
    } else {
        c.branch = GammaBranch::Negative;
        c.A = checked_pow(point_next.alpha / point_i.alpha, -gamma);
        c.B = checked_pow(point_next.alpha, -gamma);
    }
    return c;
}

Quantities quantities(double gamma, const SchedulePoint& point) {
    if (!(point.alpha > 0.0 && point.sigma > 0.0)) {
        throw std::domain_error("quantities: schedule rates must be positive");
    }
    Quantities q;
    if (gamma >= 0.0) {
        q.q_u = point.alpha * checked_pow(point.sigma, -gamma);
        q.q_v = checked_pow(point.sigma, 1.0 - gamma);
    } else {
        q.q_u = checked_pow(point.alpha, 1.0 + gamma);
        q.q_v = point.sigma * checked_pow(point.alpha, gamma);
    }
    return q;
}

double log_linear(double y, double tau, TransformDir dir) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw std::domain_error("log_linear: tau must be positive and finite");
    }
    if (dir == TransformDir::Forward) {
        if (tau < kSeriesTau) {
            // L = y - tau y^2/2 + tau^2 y^3/3 + O(tau^3)
            return y * (1.0 - tau * y * (0.5 - tau * y / 3.0));
        }
        const double z = tau * y;
        if (!(1.0 + z > 0.0)) {
            throw std::domain_error("log_linear: 1 + tau*y must be positive");
        }
        return std::log1p(z) / tau;
    }
    // inverse
    if (tau < kSeriesTau) {
        // L^-1 = u + tau u^2/2 + tau^2 u^3/6 + O(tau^3)
        return y * (1.0 + tau * y * (0.5 + tau * y / 6.0));
    }
    const double z = tau * y;
    if (!std::isfinite(z)) throw std::domain_error("log_linear: tau*u must be finite");
    return std::expm1(z) / tau;
}

double type1_transform(double y, double tau, TransformDir dir) {
    if (dir == TransformDir::Forward) {
        if (!(y > 0.0)) throw std::domain_error("type1_transform: y must be positive");
        return (1.0 - tau) * y + tau * std::log(y);
    }
    // Inverse: root of (1-tau) x + tau log x = y on x > 0. The map is
    // strictly increasing for tau in [0, 1], which is the regime it
    // interpolates over.
    const double u = y;
    auto f = [&](double x) { return (1.0 - tau) * x + tau * std::log(x) - u; };
    double lo = 1.0, hi = 1.0;
    int expand = 0;
    while (f(lo) > 0.0) {
        lo *= 0.5;
        if (++expand > 2000) throw std::runtime_error("type1_transform: inverse not bracketable");
    }
    expand = 0;
    while (f(hi) < 0.0) {
        hi *= 2.0;
        if (++expand > 2000) throw std::runtime_error("type1_transform: inverse not bracketable");
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double fx = f(x);
        if (std::abs(fx) < 1e-12) return x;
        if (fx > 0.0) {
            hi = x;
        } else {
            lo = x;
        }
        const double deriv = (1.0 - tau) + tau / x;
        double next = x - fx / deriv;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // Newton left the bracket
        x = next;
    }
    throw std::runtime_error("type1_transform: inverse did not converge");
}

IntervalTerms interval_terms(double gamma, double tau_u, double tau_v,
                             const SchedulePoint& point_i,
                             const SchedulePoint& point_next) {
    const Quantities qi = quantities(gamma, point_i);
    const Quantities qn = quantities(gamma, point_next);
    IntervalTerms terms;
    terms.q_u_i = qi.q_u;
    terms.q_v_i = qi.q_v;
    // Delta L^-1 needs no explicit inverse: L^-1(u(t)) is the quantity itself.
    terms.dLinv_u = qn.q_u - qi.q_u;
    terms.dLinv_v = qn.q_v - qi.q_v;
    terms.du = log_linear(qn.q_u, tau_u, TransformDir::Forward) -
               log_linear(qi.q_u, tau_u, TransformDir::Forward);
    terms.dv = log_linear(qn.q_v, tau_v, TransformDir::Forward) -
               log_linear(qi.q_v, tau_v, TransformDir::Forward);
    return terms;
}

double beta_of_gamma(double gamma, const SchedulePoint& point) {
    if (gamma >= 0.0) return gamma * point.d_sigma / point.sigma;
    return -gamma * point.d_alpha / point.alpha;
}

double softplus(double x) {
    if (x > 30.0) return x;
    if (x < -30.0) return std::exp(x);
    return std::log1p(std::exp(x));
}

double inv_softplus(double y) {
    if (y > 30.0) return y;
    return std::log(std::expm1(y));
}

double tau_from_raw(double raw) { return std::max(softplus(raw), kTauFloor); }

double clamp_gamma(double gamma) {
    return std::clamp(gamma, -kGammaClampAbs, kGammaClampAbs);
}

}  // namespace dualsolver
