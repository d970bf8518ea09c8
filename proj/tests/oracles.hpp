#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the code paths it is used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

/// Direct disk kernel 1/(pi (1 - z conj w)^2).
inline cd disk_kernel(cd z, cd w) {
    const cd q = 1.0 - z * std::conj(w);
    return 1.0 / (pi * q * q);
}

inline cd ball_kernel(cd z1, cd z2, cd w1, cd w2) {
    const cd q = 1.0 - z1 * std::conj(w1) - z2 * std::conj(w2);
    return 2.0 / (pi * pi * q * q * q);
}

/// Annulus kernel by a fixed, generous Laurent window.
inline cd annulus_kernel(double r, cd z, cd w, int window = 400) {
    const cd u = z * std::conj(w);
    cd s = 0.0;
    for (int k = -window; k <= window; ++k) {
        const double m = k == -1 ? 2 * pi * std::log(1 / r) : pi * (1 - std::pow(r, 2.0 * k + 2)) / (k + 1);
        s += std::pow(u, k) / m;
    }
    return s;
}

/// Midpoint rule in polar coordinates for int_{r0<|z|<1} |z|^{2k} dA.
inline double annulus_moment_quadrature(double r0, int k, int steps = 200000) {
    double s = 0.0;
    const double h = (1.0 - r0) / steps;
    for (int i = 0; i < steps; ++i) {
        const double rho = r0 + (i + 0.5) * h;
        s += std::pow(rho, 2.0 * k + 1.0);
    }
    return 2 * pi * s * h;
}

/// int_{|z1|^2+|z2|^2<1} |z1|^{2a} |z2|^{2b} dV via a 2-D midpoint rule in (rho1, rho2).
inline double ball_moment_quadrature(int a, int b, int steps = 2000) {
    // substitute s = rho1^2, t = rho2^2: (pi^2) int_{s+t<1} s^a t^b ds dt
    double sum = 0.0;
    const double h = 1.0 / steps;
    for (int i = 0; i < steps; ++i) {
        const double s = (i + 0.5) * h;
        // inner integral over t in [0, 1-s] is exact: (1-s)^{b+1}/(b+1)
        sum += std::pow(s, a) * std::pow(1 - s, b + 1) / (b + 1);
    }
    return pi * pi * sum * h;
}

inline std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

/// Exponents (k1, k2) in [0, bound]^2 with m1 k1 + m2 k2 + shift == 0, brute force.
inline std::vector<std::pair<int, int>> zero_set(std::int64_t m1, std::int64_t m2, std::int64_t shift, int bound) {
    std::vector<std::pair<int, int>> out;
    for (int k1 = 0; k1 <= bound; ++k1)
        for (int k2 = 0; k2 <= bound; ++k2)
            if (m1 * k1 + m2 * k2 + shift == 0) out.emplace_back(k1, k2);
    return out;
}

/// Central finite difference of a holomorphic function of one coordinate.
template <typename F>
cd holomorphic_derivative(F&& f, double h = 1e-5) {
    return (f(cd(h, 0)) - f(cd(-h, 0))) / (2 * h);
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

/// Uniform point in the disk of the given radius, by rejection from a square.
inline cd random_in_disk(std::mt19937_64& g, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    for (;;) {
        const cd z(u(g), u(g));
        if (std::abs(z) < radius) return z;
    }
}

}  // namespace oracle
