#pragma once

#include <cmath>
#include <cstdint>

#include "dualsolver/vec.hpp"

namespace dualsolver {

// Deterministic generator used everywhere randomness is needed. The sequence
// is pinned by this implementation (splitmix64 + Box-Muller), not by the
// standard library, so identical seeds give identical draws on every build.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // warm up so nearby seeds decorrelate
        splitmix64(state_);
        splitmix64(state_);
    }

    // Stream derivation: mix(seed, k) gives independent substreams for batch
    // members, iterations, and coordinates.
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t s = a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2));
        return splitmix64(s);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n)
    std::uint64_t uniform_below(std::uint64_t n) { return next_u64() % n; }

    double uniform_in(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal via Box-Muller; pairs are cached
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Vec normal_vec(std::size_t n) {
        Vec out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = normal();
        return out;
    }

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace dualsolver
