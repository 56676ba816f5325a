#pragma once

// Shared independent oracles for the test suites. These deliberately avoid
// the library's own evaluation routines.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracles {

// Factorial as double; fine up to 170!.
inline double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// Tail of sum_{j>k} z^{2j}/j! summed in long double from the far end.
inline long double exp_tail(double z, int k, int terms = 400) {
    long double zz = static_cast<long double>(z) * z;
    long double tail = 0.0L;
    for (int j = k + terms; j > k; --j) {
        long double t = 1.0L;
        for (int i = 1; i <= j; ++i) t *= zz / i;
        tail += t;
    }
    return tail;
}

// Deterministic xorshift for property tests; avoids platform RNG variance.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    double uniform() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return static_cast<double>(s >> 11) * 0x1.0p-53;
    }
};

// Classical heat kernel on [0,1] (unit string), Dirichlet.
inline double classical_heat_kernel_dirichlet(double t, double x, double y, int terms = 200) {
    double s = 0.0;
    for (int k = terms; k >= 1; --k) {
        double lk = k * M_PI;
        s += 2.0 * std::exp(-lk * lk * t) * std::sin(lk * x) * std::sin(lk * y);
    }
    return s;
}

}  // namespace oracles
