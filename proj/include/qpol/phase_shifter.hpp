// phase_shifter.hpp
// Closed-form angles for the QWP-HWP-QWP endless phase shifter. Given input
// signal q, output signal r and phase φ, the plates must realize
// p = e^{sφ} q† r (s the unit Stokes vector quaternion of q). Splitting p into
// the j-complex pair (p0 + p2 j, p1 + p3 j) gives two regular branches and, when
// either member of the pair vanishes, a one-parameter family of solutions.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qpol/components.hpp"
#include "qpol/quaternion.hpp"
#include "qpol/signal.hpp"

namespace qpol {

inline constexpr double singular_tolerance = 1e-7;
inline constexpr double near_singular_threshold = 1e-4;
inline constexpr double residual_limit = 1e-9;

template <std::floating_point T>
struct BasicShifterProblem {
    BasicQuaternion<T> q_in;
    BasicQuaternion<T> r_out;
    T phi{};
};

/// Plate orientations; each kept in (-π/2, π/2] since a plate is π-periodic.
template <std::floating_point T>
struct BasicWaveplateAngles {
    T psi_a{};
    T psi_b{};
    T psi_c{};
};

enum class Singularity {
    Regular,
    SingularA,  // p0 = p2 = 0
    SingularB,  // p1 = p3 = 0
};

inline std::string to_string(Singularity s) {
    switch (s) {
        case Singularity::Regular: return "Regular";
        case Singularity::SingularA: return "SingularA";
        case Singularity::SingularB: return "SingularB";
    }
    return "Regular";
}

/// Reduces an orientation modulo π into (-π/2, π/2].
template <std::floating_point T>
T reduce_angle(T x) {
    constexpr T pi = std::numbers::pi_v<T>;
    T y = std::remainder(x, pi);
    if (y <= -pi / 2) y += pi;
    return y;
}

template <std::floating_point T>
BasicWaveplateAngles<T> reduce(const BasicWaveplateAngles<T>& a) {
    return {reduce_angle(a.psi_a), reduce_angle(a.psi_b), reduce_angle(a.psi_c)};
}

/// Distance between two orientations of a π-periodic plate.
template <std::floating_point T>
T orientation_distance(T a, T b) {
    constexpr T pi = std::numbers::pi_v<T>;
    const T d = std::fmod(std::abs(a - b), pi);
    return std::min(d, pi - d);
}

template <std::floating_point T>
T max_orientation_distance(const BasicWaveplateAngles<T>& x, const BasicWaveplateAngles<T>& y) {
    return std::max({orientation_distance(x.psi_a, y.psi_a), orientation_distance(x.psi_b, y.psi_b),
                     orientation_distance(x.psi_c, y.psi_c)});
}

/// Both branches of the regular solution.
template <std::floating_point T>
struct BasicRegularSolution {
    BasicWaveplateAngles<T> branch1;
    BasicWaveplateAngles<T> branch2;
    // Set when either j-complex pair is below near_singular_threshold; the angles
    // are valid but move quickly with p.
    bool near_singular = false;
};

/// p0 = p2 = 0: psi_a = ½arg(p1+p3j) + π/4 + α, psi_b = ½arg(p1+p3j),
/// psi_c = ½arg(p1+p3j) + π/4 - α for any α.
template <std::floating_point T>
struct BasicSingularAFamily {
    T half_arg13{};

    BasicWaveplateAngles<T> at(T alpha) const {
        constexpr T quarter = std::numbers::pi_v<T> / 4;
        return reduce(BasicWaveplateAngles<T>{half_arg13 + quarter + alpha, half_arg13,
                                              half_arg13 + quarter - alpha});
    }

    /// n triples, α evenly spaced over one period [0, π).
    std::vector<BasicWaveplateAngles<T>> samples(std::size_t n = 16) const {
        std::vector<BasicWaveplateAngles<T>> out;
        for (std::size_t m = 0; m < n; ++m) {
            out.push_back(at(std::numbers::pi_v<T> * T(m) / T(n)));
        }
        return out;
    }
};

/// p1 = p3 = 0: psi_b free, psi_a = psi_b - ½arg(p0+p2j) + π/2,
/// psi_c = psi_b + ½arg(p0+p2j) + π/2.
template <std::floating_point T>
struct BasicSingularBFamily {
    T half_arg02{};

    BasicWaveplateAngles<T> at(T psi_b) const {
        constexpr T half = std::numbers::pi_v<T> / 2;
        return reduce(BasicWaveplateAngles<T>{psi_b - half_arg02 + half, psi_b,
                                              psi_b + half_arg02 + half});
    }

    /// n triples, psi_b evenly spaced over (-π/2, π/2].
    std::vector<BasicWaveplateAngles<T>> samples(std::size_t n = 16) const {
        std::vector<BasicWaveplateAngles<T>> out;
        constexpr T pi = std::numbers::pi_v<T>;
        for (std::size_t m = 0; m < n; ++m) {
            out.push_back(at(-pi / 2 + pi * T(m + 1) / T(n)));
        }
        return out;
    }
};

template <std::floating_point T>
using BasicSolutionSet =
    std::variant<BasicRegularSolution<T>, BasicSingularAFamily<T>, BasicSingularBFamily<T>>;

using ShifterProblem = BasicShifterProblem<double>;
using WaveplateAngles = BasicWaveplateAngles<double>;
using RegularSolution = BasicRegularSolution<double>;
using SingularAFamily = BasicSingularAFamily<double>;
using SingularBFamily = BasicSingularBFamily<double>;
using SolutionSet = BasicSolutionSet<double>;

/// p = e^{sφ} q† r, so that q p = e^{iφ} r.
template <std::floating_point T>
BasicQuaternion<T> target_transform(const BasicShifterProblem<T>& prob) {
    require_unit(prob.q_in, "target_transform input");
    require_unit(prob.r_out, "target_transform output");
    const auto s = stokes_axis(prob.q_in);
    return exp_axis(s, prob.phi) * conjugate(prob.q_in) * prob.r_out;
}

/// The three-plate product qwp(psi_a) hwp(psi_b) qwp(psi_c).
template <std::floating_point T>
BasicQuaternion<T> forward_transform(const BasicWaveplateAngles<T>& a) {
    return compose({qwp(a.psi_a), hwp(a.psi_b), qwp(a.psi_c)}).transform();
}

template <std::floating_point T>
Singularity is_singular(const BasicQuaternion<T>& p, T tol = T(singular_tolerance)) {
    if (std::hypot(p.q0, p.q2) <= tol) return Singularity::SingularA;
    if (std::hypot(p.q1, p.q3) <= tol) return Singularity::SingularB;
    return Singularity::Regular;
}

/// Branch solutions valid for any p; at an exact singularity they reduce to a
/// member of the corresponding family.
template <std::floating_point T>
BasicRegularSolution<T> regular_branches(const BasicQuaternion<T>& p) {
    constexpr T quarter = std::numbers::pi_v<T> / 4;
    const T m02 = std::hypot(p.q0, p.q2);
    const T m13 = std::hypot(p.q1, p.q3);
    const T arg02 = std::atan2(p.q2, p.q0);
    const T arg13 = std::atan2(p.q3, p.q1);
    // arctan sqrt((p0²+p2²)/(p1²+p3²)), principal value in [0, π/2]
    const T spread = std::atan2(m02, m13);

    BasicRegularSolution<T> sol;
    sol.branch1 = reduce(BasicWaveplateAngles<T>{arg13 / 2 - arg02 / 2 + quarter, arg13 / 2 - spread / 2,
                                                 arg13 / 2 + arg02 / 2 + quarter});
    sol.branch2 = reduce(BasicWaveplateAngles<T>{arg13 / 2 - arg02 / 2 - quarter, arg13 / 2 + spread / 2,
                                                 arg13 / 2 + arg02 / 2 - quarter});
    sol.near_singular = std::min(m02, m13) < T(near_singular_threshold);
    return sol;
}

template <std::floating_point T>
BasicSolutionSet<T> solve_angles(const BasicQuaternion<T>& p, T tol = T(singular_tolerance)) {
    require_unit(p, "solve_angles");
    switch (is_singular(p, tol)) {
        case Singularity::SingularA:
            return BasicSingularAFamily<T>{std::atan2(p.q3, p.q1) / 2};
        case Singularity::SingularB:
            return BasicSingularBFamily<T>{std::atan2(p.q2, p.q0) / 2};
        case Singularity::Regular:
            break;
    }
    return regular_branches(p);
}

/// Predicts whether q -> t (t the phase-shifted target e^{iφ} r) is singular from
/// the ellipse parameters alone. With Δ = φt - φq,
///   |p0 + p2 j|² = cos²Δ cos²(εt - εq) + sin²Δ sin²(εq + εt)
///   |p1 + p3 j|² = sin²Δ cos²(εq + εt) + cos²Δ sin²(εt - εq)
/// so SingularA needs εt = -εq and Δ = ±π/2, SingularB needs εt = εq and
/// Δ ∈ {0, π}. Circular pairs are singular for every Δ.
template <std::floating_point T>
Singularity singular_signal_conditions(const BasicQuaternion<T>& q, const BasicQuaternion<T>& t,
                                       T tol = T(singular_tolerance)) {
    require_unit(q, "singular_signal_conditions input");
    require_unit(t, "singular_signal_conditions target");
    const auto eq = to_ellipse(q);
    const auto et = to_ellipse(t);
    const T delta = et.phi - eq.phi;
    const T c = std::cos(delta);
    const T s = std::sin(delta);
    const T m02 = std::hypot(c * std::cos(et.epsilon - eq.epsilon), s * std::sin(eq.epsilon + et.epsilon));
    const T m13 = std::hypot(s * std::cos(eq.epsilon + et.epsilon), c * std::sin(et.epsilon - eq.epsilon));
    if (m02 <= tol) return Singularity::SingularA;
    if (m13 <= tol) return Singularity::SingularB;
    return Singularity::Regular;
}

/// A phase at which the ramp q -> e^{φ i} r passes exactly through a singular
/// transform.
template <std::floating_point T>
struct BasicSingularPhase {
    T phi{};  // in [0, 2π)
    Singularity kind = Singularity::Regular;
};

using SingularPhase = BasicSingularPhase<double>;

namespace detail {

// Along a ramp p(φ) = cos φ P + sin φ S. A j-complex pair of p can only pass
// through zero when its P and S images are parallel; it then vanishes at
// `zero` + mπ.
template <std::floating_point T>
struct PairZeros {
    bool crosses = false;
    T zero{};
};

template <std::floating_point T>
PairZeros<T> pair_zeros(T ux, T uy, T vx, T vy, T tol) {
    const T nu = std::hypot(ux, uy);
    const T nv = std::hypot(vx, vy);
    const T scale = std::max(nu, nv);
    if (scale <= tol) return {};  // pair vanishes along the whole ramp
    if (std::abs(ux * vy - uy * vx) > tol * scale) return {};
    const T wx = (nu >= nv ? ux : vx) / scale;
    const T wy = (nu >= nv ? uy : vy) / scale;
    const T a = ux * wx + uy * wy;
    const T b = vx * wx + vy * wy;
    constexpr T pi = std::numbers::pi_v<T>;
    T z = std::fmod(std::atan2(b, a) + pi / 2, pi);
    if (z < T(0)) z += pi;
    return {true, z};
}

// Number of m with lo < zero + mπ <= hi.
template <std::floating_point T>
long zeros_in(T zero, T lo, T hi) {
    constexpr T pi = std::numbers::pi_v<T>;
    if (lo > hi) std::swap(lo, hi);
    return static_cast<long>(std::floor((hi - zero) / pi) - std::floor((lo - zero) / pi));
}

template <std::floating_point T>
struct RampGeometry {
    PairZeros<T> a;  // p0 + p2 j
    PairZeros<T> b;  // p1 + p3 j
};

template <std::floating_point T>
RampGeometry<T> ramp_geometry(const BasicQuaternion<T>& q, const BasicQuaternion<T>& r, T tol) {
    const auto base = conjugate(q) * r;
    const auto turned = stokes_axis(q) * base;
    return {pair_zeros(base.q0, base.q2, turned.q0, turned.q2, tol),
            pair_zeros(base.q1, base.q3, turned.q1, turned.q3, tol)};
}

}  // namespace detail

/// Phases in [0, 2π) where the ramp from q to r passes through a singular state,
/// sorted ascending.
template <std::floating_point T>
std::vector<BasicSingularPhase<T>> singular_phases(const BasicQuaternion<T>& q,
                                                   const BasicQuaternion<T>& r,
                                                   T tol = T(singular_tolerance)) {
    require_unit(q, "singular_phases input");
    require_unit(r, "singular_phases output");
    constexpr T pi = std::numbers::pi_v<T>;
    const auto g = detail::ramp_geometry(q, r, tol);
    std::vector<BasicSingularPhase<T>> out;
    if (g.a.crosses) {
        out.push_back({g.a.zero, Singularity::SingularA});
        out.push_back({g.a.zero + pi, Singularity::SingularA});
    }
    if (g.b.crosses) {
        out.push_back({g.b.zero, Singularity::SingularB});
        out.push_back({g.b.zero + pi, Singularity::SingularB});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.phi < y.phi; });
    return out;
}

enum class BranchPolicy {
    Continuous,  // per sample, the solution closest to the previous one
    Branch1,     // always the first regular branch
    Branch2,     // always the second regular branch
};

template <std::floating_point T>
struct BasicRampSample {
    T phi{};
    BasicWaveplateAngles<T> angles;
    int branch = 1;                  // 1 or 2; 0 for a point taken from a singular family
    bool singular_crossing = false;  // a singular state lies in (previous phi, phi]
    bool near_singular = false;
    T step{};      // max orientation change from the previous sample
    T residual{};  // |q forward(angles) - e^{iφ} r|
};

using RampSample = BasicRampSample<double>;

namespace detail {

// Point of a singular family closest (minimax over the three plates) to prev.
template <std::floating_point T>
BasicWaveplateAngles<T> nearest_in_family(const BasicSingularAFamily<T>& f,
                                          const BasicWaveplateAngles<T>& prev) {
    constexpr T quarter = std::numbers::pi_v<T> / 4;
    const T to_a = prev.psi_a - (f.half_arg13 + quarter);
    const T to_c = (f.half_arg13 + quarter) - prev.psi_c;
    const T mid = (to_a + to_c) / 2;
    const T half = std::numbers::pi_v<T> / 2;
    const T candidates[] = {to_a, to_c, mid, mid + half};
    BasicWaveplateAngles<T> best = f.at(candidates[0]);
    for (T c : candidates) {
        const auto x = f.at(c);
        if (max_orientation_distance(x, prev) < max_orientation_distance(best, prev)) best = x;
    }
    return best;
}

template <std::floating_point T>
BasicWaveplateAngles<T> nearest_in_family(const BasicSingularBFamily<T>& f,
                                          const BasicWaveplateAngles<T>& prev) {
    const T half = std::numbers::pi_v<T> / 2;
    // psi_b values putting each plate exactly on its previous orientation
    const T centers[] = {prev.psi_b, prev.psi_a + f.half_arg02 - half, prev.psi_c - f.half_arg02 - half};
    std::vector<T> candidates(std::begin(centers), std::end(centers));
    for (std::size_t x = 0; x < 3; ++x) {
        for (std::size_t y = x + 1; y < 3; ++y) {
            const T mid = (centers[x] + centers[y]) / 2;
            candidates.push_back(mid);
            candidates.push_back(mid + half);
        }
    }
    BasicWaveplateAngles<T> best = f.at(candidates[0]);
    for (T c : candidates) {
        const auto x = f.at(c);
        if (max_orientation_distance(x, prev) < max_orientation_distance(best, prev)) best = x;
    }
    return best;
}

}  // namespace detail

/// Plate angles along a sequence of phases for fixed input q and output r.
template <std::floating_point T>
std::vector<BasicRampSample<T>> ramp_trajectory(const BasicQuaternion<T>& q, const BasicQuaternion<T>& r,
                                                std::span<const T> phis,
                                                BranchPolicy policy = BranchPolicy::Continuous,
                                                T tol = T(singular_tolerance)) {
    require_unit(q, "ramp input");
    require_unit(r, "ramp output");
    for (T phi : phis) {
        if (!std::isfinite(phi)) throw domain_error("ramp: non-finite phase sample");
    }
    const auto geometry = detail::ramp_geometry(q, r, tol);

    std::vector<BasicRampSample<T>> out;
    out.reserve(phis.size());
    for (std::size_t n = 0; n < phis.size(); ++n) {
        const T phi = phis[n];
        const auto p = target_transform(BasicShifterProblem<T>{q, r, phi});
        const auto target = exp_i(phi) * r;
        const auto residual_of = [&](const BasicWaveplateAngles<T>& a) {
            return norm(q * forward_transform(a) - target);
        };

        const auto regular = regular_branches(p);
        struct Candidate {
            BasicWaveplateAngles<T> angles;
            int branch;
        };
        std::vector<Candidate> candidates{{regular.branch1, 1}, {regular.branch2, 2}};
        const Singularity kind = is_singular(p, tol);
        if (!out.empty() && kind != Singularity::Regular) {
            const auto& prev = out.back().angles;
            const auto member = kind == Singularity::SingularA
                                    ? detail::nearest_in_family(BasicSingularAFamily<T>{std::atan2(p.q3, p.q1) / 2}, prev)
                                    : detail::nearest_in_family(BasicSingularBFamily<T>{std::atan2(p.q2, p.q0) / 2}, prev);
            if (residual_of(member) <= T(residual_limit)) candidates.push_back({member, 0});
        }

        Candidate chosen = candidates.front();
        if (policy == BranchPolicy::Branch2) {
            chosen = candidates[1];
        } else if (policy == BranchPolicy::Continuous && !out.empty()) {
            const auto& prev = out.back().angles;
            for (const auto& c : candidates) {
                if (max_orientation_distance(c.angles, prev) < max_orientation_distance(chosen.angles, prev)) {
                    chosen = c;
                }
            }
        }

        BasicRampSample<T> sample;
        sample.phi = phi;
        sample.angles = chosen.angles;
        sample.branch = chosen.branch;
        sample.near_singular = regular.near_singular;
        sample.residual = residual_of(chosen.angles);
        if (out.empty()) {
            // only a genuine crossing counts; a ramp that is singular throughout has none
            sample.singular_crossing =
                kind != Singularity::Regular && (geometry.a.crosses || geometry.b.crosses);
        } else {
            const T lo = out.back().phi;
            long crossings = 0;
            if (geometry.a.crosses) crossings += detail::zeros_in(geometry.a.zero, lo, phi);
            if (geometry.b.crosses) crossings += detail::zeros_in(geometry.b.zero, lo, phi);
            sample.singular_crossing = crossings > 0;
            sample.step = max_orientation_distance(chosen.angles, out.back().angles);
        }
        out.push_back(sample);
    }
    return out;
}

/// n phases 2πk/n, k = 0..n-1.
template <std::floating_point T = double>
std::vector<T> full_turn_phases(std::size_t n) {
    std::vector<T> phis(n);
    for (std::size_t k = 0; k < n; ++k) phis[k] = T(2) * std::numbers::pi_v<T> * T(k) / T(n);
    return phis;
}

}  // namespace qpol
