#pragma once

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "qpol/qpol.hpp"

namespace qpol::testing {

inline constexpr double pi = std::numbers::pi;

class Rng {
public:
    explicit Rng(std::uint64_t seed = 0x5eed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    double gauss() { return normal_(engine_); }

    Quaternion quaternion() { return {gauss(), gauss(), gauss(), gauss()}; }
    Quaternion unit() { return normalize(quaternion()); }
    Quaternion unit_vector() { return normalize(Quaternion{0.0, gauss(), gauss(), gauss()}); }
    JonesVector jones() { return {{gauss(), gauss()}, {gauss(), gauss()}}; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

// Independent product: q as the 4x4 real matrix of left multiplication by p.
inline Quaternion matrix_product(const Quaternion& p, const Quaternion& q) {
    const std::array<std::array<double, 4>, 4> L{{{p.q0, -p.q1, -p.q2, -p.q3},
                                                  {p.q1, p.q0, -p.q3, p.q2},
                                                  {p.q2, p.q3, p.q0, -p.q1},
                                                  {p.q3, -p.q2, p.q1, p.q0}}};
    std::array<double, 4> out{};
    const auto v = q.components();
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) out[r] += L[r][c] * v[c];
    }
    return {out[0], out[1], out[2], out[3]};
}

using Vec3 = std::array<double, 3>;

// Right-handed rotation of x by angle a about unit axis n.
inline Vec3 rodrigues(const Vec3& n, double a, const Vec3& x) {
    const double c = std::cos(a), s = std::sin(a);
    const double d = n[0] * x[0] + n[1] * x[1] + n[2] * x[2];
    const Vec3 cross{n[1] * x[2] - n[2] * x[1], n[2] * x[0] - n[0] * x[2], n[0] * x[1] - n[1] * x[0]};
    Vec3 out{};
    for (std::size_t m = 0; m < 3; ++m) out[m] = x[m] * c + cross[m] * s + n[m] * d * (1 - c);
    return out;
}

inline Vec3 vec(const ClassicalStokes& s) { return {s.S1, s.S2, s.S3}; }

inline double max_diff(const Vec3& a, const Vec3& b) {
    return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

inline double phase_diff(double a, double b) { return std::abs(std::remainder(a - b, 2 * pi)); }

// Ramp end states with plain fractional components.
inline const Quaternion regular_q{-8.0 / 9, 2.0 / 9, 1.0 / 3, 2.0 / 9};
inline const Quaternion regular_r{2.0 / 7, -3.0 / 7, 0.0, -6.0 / 7};
inline const Quaternion crossing_q{-5.0 / 6, 1.0 / 6, 1.0 / 2, 1.0 / 6};
inline const Quaternion crossing_r{1.0 / 3, -2.0 / 3, 0.0, -2.0 / 3};

// Phase of t relative to r when t = e^{iχ} r; `off` receives the size of the
// j and k parts, which vanish when t and r share a state of polarization.
inline double relative_phase(const Quaternion& t, const Quaternion& r, double* off = nullptr) {
    const auto m = t * conjugate(r) / norm_squared(r);
    if (off) *off = std::hypot(m.q2, m.q3);
    return std::atan2(m.q1, m.q0);
}

}  // namespace qpol::testing

#define EXPECT_QUAT_NEAR(a, b, tol) EXPECT_LE(::qpol::max_abs_diff((a), (b)), (tol)) << (a) << " vs " << (b)
