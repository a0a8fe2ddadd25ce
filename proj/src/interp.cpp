#include "dualsolver/interp.hpp"

#include <cmath>
#include <stdexcept>

namespace dualsolver {

std::vector<double> linear_interp(const std::vector<double>& arr, std::size_t N) {
    const std::size_t M = arr.size();
    if (M < 2 || N < 2) {
        throw std::invalid_argument("linear_interp: input and output lengths must be >= 2");
    }
    std::vector<double> out(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double t = static_cast<double>(i) * static_cast<double>(M - 1) /
                         static_cast<double>(N - 1);
        const std::size_t j = static_cast<std::size_t>(std::floor(t));
        if (j >= M - 1) {
            out[i] = arr[M - 1];
            continue;
        }
        const double a = t - static_cast<double>(j);
        out[i] = (1.0 - a) * arr[j] + a * arr[j + 1];
    }
    return out;
}

std::vector<double> averaged_interp(const std::vector<double>& fM,
                                    const std::vector<double>& fL, std::size_t N) {
    const std::size_t M = fM.size();
    const std::size_t L = fL.size();
    if (!(M < N && N < L)) {
        throw std::invalid_argument("averaged_interp: lengths must satisfy M < N < L");
    }
    const double wM = static_cast<double>(L - N) / static_cast<double>(L - M);
    const double wL = static_cast<double>(N - M) / static_cast<double>(L - M);
    const std::vector<double> a = linear_interp(fM, N);
    const std::vector<double> b = linear_interp(fL, N);
    std::vector<double> out(N);
    for (std::size_t i = 0; i < N; ++i) out[i] = wM * a[i] + wL * b[i];
    return out;
}

namespace {

std::vector<double> pad_last(const std::vector<double>& arr, std::size_t n) {
    std::vector<double> out = arr;
    while (out.size() < n) out.push_back(arr.back());
    return out;
}

}  // namespace

SolverParams interp_params(const SolverParams& pM, const SolverParams& pL, std::size_t N) {
    const std::size_t M = pM.steps();
    const std::size_t L = pL.steps();
    pM.validate(M);
    pL.validate(L);
    if (!(M < N && N < L)) {
        throw std::invalid_argument("interp_params: step counts must satisfy M < N < L");
    }

    auto blend = [&](const std::vector<double>& a, const std::vector<double>& b) {
        return averaged_interp(a, b, N);
    };
    auto blend_group = [&](const ParamArrays& a, const ParamArrays& b, bool padded) {
        ParamArrays out;
        auto prep = [&](const std::vector<double>& arr, std::size_t full) {
            return padded ? pad_last(arr, full) : arr;
        };
        out.gamma = blend(prep(a.gamma, M), prep(b.gamma, L));
        out.tau_u_raw = blend(prep(a.tau_u_raw, M), prep(b.tau_u_raw, L));
        out.tau_v_raw = blend(prep(a.tau_v_raw, M), prep(b.tau_v_raw, L));
        out.kappa_u = blend(prep(a.kappa_u, M), prep(b.kappa_u, L));
        out.kappa_v = blend(prep(a.kappa_v, M), prep(b.kappa_v, L));
        return out;
    };

    SolverParams out;
    out.pred = blend_group(pM.pred, pL.pred, false);
    out.corr = blend_group(pM.corr, pL.corr, true);
    // truncate the padded corrector back to its own length
    out.corr.gamma.resize(N - 1);
    out.corr.tau_u_raw.resize(N - 1);
    out.corr.tau_v_raw.resize(N - 1);
    out.corr.kappa_u.resize(N - 1);
    out.corr.kappa_v.resize(N - 1);
    out.raw_steps = blend(pM.raw_steps, pL.raw_steps);
    out.validate(N);
    return out;
}

}  // namespace dualsolver
