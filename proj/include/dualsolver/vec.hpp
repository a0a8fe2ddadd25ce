#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dualsolver {

// States and predictions are dense double vectors; toy problems are 1-2D but
// nothing here assumes that.
using Vec = std::vector<double>;

inline void check_same_size(const Vec& a, const Vec& b, const char* what) {
    if (a.size() != b.size()) {
        throw std::invalid_argument(std::string(what) + ": size mismatch");
    }
}

inline Vec scaled(const Vec& a, double s) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
    return out;
}

// a*x + b*y
inline Vec lincomb(double a, const Vec& x, double b, const Vec& y) {
    check_same_size(x, y, "lincomb");
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
    return out;
}

inline void axpy(double a, const Vec& x, Vec& y) {
    check_same_size(x, y, "axpy");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

inline Vec sub(const Vec& a, const Vec& b) {
    check_same_size(a, b, "sub");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline double norm2(const Vec& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

inline double max_abs_diff(const Vec& a, const Vec& b) {
    check_same_size(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline bool all_finite(const Vec& a) {
    for (double v : a) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

}  // namespace dualsolver
