// signal.hpp
// A coherent, fully polarized optical signal carried by a quaternion
// q = Ex + Ey j, and its equivalent Jones, Stokes and ellipse descriptions.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "qpol/quaternion.hpp"

namespace qpol {

/// Transverse field (Ex, Ey), complex in the ordinary imaginary unit.
template <std::floating_point T>
struct BasicJonesVector {
    std::complex<T> ex{};
    std::complex<T> ey{};

    bool operator==(const BasicJonesVector&) const = default;
};

/// Polarization ellipse plus magnitude and phase.
///   r >= 0, phi in (-π, π], epsilon in [-π/4, π/4], theta in (-π/2, π/2]
template <std::floating_point T>
struct BasicEllipseParams {
    T r{};
    T phi{};
    T epsilon{};
    T theta{};
};

/// Stokes vector quaternion s = i q^{†i} q, stored in quaternion order:
/// s1 along i, s2 along j, s3 along k. Note s2 is the circular component.
template <std::floating_point T>
struct BasicStokesQuaternion {
    T s1{};
    T s2{};
    T s3{};

    BasicQuaternion<T> quaternion() const { return {T(0), s1, s2, s3}; }
    BasicStokesQuaternion operator-() const { return {-s1, -s2, -s3}; }
};

/// Conventional Stokes components: S1 = |Ex|²-|Ey|², S2 = 2Re(Ex Ey*),
/// S3 = 2Im(Ex Ey*).
template <std::floating_point T>
struct BasicClassicalStokes {
    T S1{};
    T S2{};
    T S3{};
};

using JonesVector = BasicJonesVector<double>;
using EllipseParams = BasicEllipseParams<double>;
using StokesQuaternion = BasicStokesQuaternion<double>;
using ClassicalStokes = BasicClassicalStokes<double>;

/// Relation between two signals read off the product p q†, most specific first.
enum class OrthogonalityClass {
    SameSOPOrthogonalPhase,  // (pq†)0 = (pq†)2 = (pq†)3 = 0
    OrthogonalSOP,           // (pq†)0 = (pq†)1 = 0
    SameSOP,                 // (pq†)2 = (pq†)3 = 0
    QuaternionOrthogonal,    // (pq†)0 = 0
    None,
};

inline std::string to_string(OrthogonalityClass c) {
    switch (c) {
        case OrthogonalityClass::SameSOPOrthogonalPhase: return "SameSOPOrthogonalPhase";
        case OrthogonalityClass::OrthogonalSOP: return "OrthogonalSOP";
        case OrthogonalityClass::SameSOP: return "SameSOP";
        case OrthogonalityClass::QuaternionOrthogonal: return "QuaternionOrthogonal";
        case OrthogonalityClass::None: return "None";
    }
    return "None";
}

template <std::floating_point T>
BasicQuaternion<T> from_jones(const BasicJonesVector<T>& v) {
    return {v.ex.real(), v.ex.imag(), v.ey.real(), v.ey.imag()};
}

template <std::floating_point T>
BasicJonesVector<T> to_jones(const BasicQuaternion<T>& q) {
    return {{q.q0, q.q1}, {q.q2, q.q3}};
}

/// s = i q^{†i} q. Phase-blind; |s| = |q|².
template <std::floating_point T>
BasicStokesQuaternion<T> stokes(const BasicQuaternion<T>& q) {
    const auto s = BasicQuaternion<T>::i() * partial_conjugate(q, Axis::i) * q;
    // The scalar part vanishes identically; only the vector part is kept.
    return {s.q1, s.q2, s.q3};
}

/// Unit Stokes vector quaternion of q, as a unit vector quaternion.
template <std::floating_point T>
BasicQuaternion<T> stokes_axis(const BasicQuaternion<T>& q) {
    const auto s = stokes(q).quaternion();
    const T n = norm(s);
    if (n == T(0)) throw domain_error("stokes_axis: zero signal");
    return {T(0), s.q1 / n, s.q2 / n, s.q3 / n};
}

template <std::floating_point T>
BasicClassicalStokes<T> to_classical(const BasicStokesQuaternion<T>& s) {
    return {s.s1, s.s3, s.s2};
}

template <std::floating_point T>
BasicStokesQuaternion<T> from_classical(const BasicClassicalStokes<T>& c) {
    return {c.S1, c.S3, c.S2};
}

template <std::floating_point T>
BasicClassicalStokes<T> classical_from_jones(const BasicJonesVector<T>& v) {
    const std::complex<T> cross = v.ex * std::conj(v.ey);
    return {std::norm(v.ex) - std::norm(v.ey), T(2) * cross.real(), T(2) * cross.imag()};
}

/// e^{iφ} q: advances the phase of both field components by φ.
template <std::floating_point T>
BasicQuaternion<T> apply_phase(const BasicQuaternion<T>& q, T phi) {
    return exp_i(phi) * q;
}

/// e^{iφ} j q: the member of the orthogonal-SOP family with phase φ.
template <std::floating_point T>
BasicQuaternion<T> orthogonal_sop(const BasicQuaternion<T>& q, T phi) {
    return exp_i(phi) * BasicQuaternion<T>::j() * q;
}

template <std::floating_point T>
OrthogonalityClass classify_orthogonality(const BasicQuaternion<T>& p, const BasicQuaternion<T>& q,
                                          T tol = T(1e-9)) {
    if (norm_squared(p) == T(0) || norm_squared(q) == T(0)) {
        throw domain_error("classify_orthogonality: zero signal");
    }
    const auto m = p * conjugate(q);
    const T bound = tol * norm(m);
    const bool z0 = std::abs(m.q0) <= bound;
    const bool z1 = std::abs(m.q1) <= bound;
    const bool z2 = std::abs(m.q2) <= bound;
    const bool z3 = std::abs(m.q3) <= bound;
    if (z0 && z2 && z3) return OrthogonalityClass::SameSOPOrthogonalPhase;
    if (z0 && z1) return OrthogonalityClass::OrthogonalSOP;
    if (z2 && z3) return OrthogonalityClass::SameSOP;
    if (z0) return OrthogonalityClass::QuaternionOrthogonal;
    return OrthogonalityClass::None;
}

template <std::floating_point T>
void validate(const BasicEllipseParams<T>& e) {
    constexpr T pi = std::numbers::pi_v<T>;
    if (!std::isfinite(e.r) || e.r < T(0)) throw domain_error("ellipse: r must be >= 0");
    if (!(e.phi > -pi && e.phi <= pi)) throw domain_error("ellipse: phi outside (-pi, pi]");
    if (!(e.epsilon >= -pi / 4 && e.epsilon <= pi / 4)) {
        throw domain_error("ellipse: epsilon outside [-pi/4, pi/4]");
    }
    if (!(e.theta > -pi / 2 && e.theta <= pi / 2)) {
        throw domain_error("ellipse: theta outside (-pi/2, pi/2]");
    }
}

/// q = R e^{iφ} e^{kε} e^{jθ}.
template <std::floating_point T>
BasicQuaternion<T> from_ellipse(const BasicEllipseParams<T>& e) {
    validate(e);
    return exp_i(e.phi) * exp_k(e.epsilon) * exp_j(e.theta) * e.r;
}

/// Inverse of from_ellipse. For circular states (cos 2ε <= 1e-9) the
/// orientation is undefined; theta is reported as 0 and the ambiguity is
/// carried by phi.
template <std::floating_point T>
BasicEllipseParams<T> to_ellipse(const BasicQuaternion<T>& q) {
    constexpr T pi = std::numbers::pi_v<T>;
    const T r = norm(q);
    if (r == T(0)) throw domain_error("to_ellipse: zero signal");
    const T r2 = r * r;
    const auto s = stokes(q);
    const T cos2eps = std::hypot(s.s1, s.s3);  // R² cos 2ε
    const T epsilon = std::atan2(-s.s2, cos2eps) / T(2);

    T theta = T(0);
    if (cos2eps > T(1e-9) * r2) {
        theta = std::atan2(s.s3, s.s1) / T(2);
        if (theta <= -pi / 2) theta += pi;
    }

    const auto residual = q * exp_j(-theta) * exp_k(-epsilon) / r;
    if (std::abs(residual.q2) > T(1e-9) || std::abs(residual.q3) > T(1e-9)) {
        throw domain_error("to_ellipse: phase residual is not a pure i-exponential");
    }
    T phi = std::atan2(residual.q1, residual.q0);
    if (phi <= -pi) phi = pi;
    return {r, phi, epsilon, theta};
}

/// The waveplate p with q p = e^{iφ} j q, taking q to an orthogonal SOP.
template <std::floating_point T>
BasicQuaternion<T> waveplate_to_orthogonal(const BasicQuaternion<T>& q, T phi) {
    require_unit(q, "waveplate_to_orthogonal");
    return left_divide(q, orthogonal_sop(q, phi));
}

}  // namespace qpol
