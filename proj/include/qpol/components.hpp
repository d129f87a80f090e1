// components.hpp
// Waveplates as unit quaternions applied by right multiplication (r = q p),
// their axis/retardance form, and the partial polarizer.

#pragma once

#include <cmath>
#include <initializer_list>
#include <numbers>
#include <span>
#include <vector>

#include "qpol/quaternion.hpp"
#include "qpol/signal.hpp"

namespace qpol {

/// A lossless birefringent element. The transform is kept with its algebraic
/// sign: p and -p give the same SOP but differ by a π phase.
template <std::floating_point T>
class BasicWaveplate {
public:
    BasicWaveplate() : transform_(BasicQuaternion<T>::one()) {}

    explicit BasicWaveplate(const BasicQuaternion<T>& transform) : transform_(transform) {
        require_unit(transform_, "waveplate");
    }

    const BasicQuaternion<T>& transform() const { return transform_; }

    /// The element that undoes this one.
    BasicWaveplate inverse() const { return BasicWaveplate(conjugate(transform_)); }

private:
    BasicQuaternion<T> transform_;
};

/// Waveplate as exp(axis * eta): axis is the unit Stokes vector quaternion of
/// the slow axis, eta half the retardance.
template <std::floating_point T>
struct BasicWaveplateAxisForm {
    BasicQuaternion<T> axis;
    T eta{};

    T retardance() const { return T(2) * eta; }
};

/// Pass axis transmits with field factor 1, the orthogonal SOP j*pass with mu.
template <std::floating_point T>
class BasicPartialPolarizer {
public:
    BasicPartialPolarizer(const BasicQuaternion<T>& pass_axis, T mu)
        : pass_axis_(pass_axis), mu_(mu) {
        require_unit(pass_axis_, "polarizer pass axis");
        if (!(mu_ >= T(0) && mu_ <= T(1))) throw domain_error("polarizer: mu outside [0, 1]");
    }

    const BasicQuaternion<T>& pass_axis() const { return pass_axis_; }
    T mu() const { return mu_; }

private:
    BasicQuaternion<T> pass_axis_;
    T mu_;
};

using Waveplate = BasicWaveplate<double>;
using WaveplateAxisForm = BasicWaveplateAxisForm<double>;
using PartialPolarizer = BasicPartialPolarizer<double>;

template <std::floating_point T>
BasicQuaternion<T> apply(const BasicQuaternion<T>& signal, const BasicWaveplate<T>& w) {
    return signal * w.transform();
}

/// Product in propagation order: the first plate is leftmost.
template <std::floating_point T>
BasicWaveplate<T> compose(std::span<const BasicWaveplate<T>> plates) {
    if (plates.empty()) throw domain_error("compose: empty waveplate sequence");
    auto p = plates.front().transform();
    for (const auto& w : plates.subspan(1)) p = p * w.transform();
    return BasicWaveplate<T>(p);
}

template <std::floating_point T>
BasicWaveplate<T> compose(std::initializer_list<BasicWaveplate<T>> plates) {
    return compose(std::span<const BasicWaveplate<T>>(plates.begin(), plates.size()));
}

/// Plate with slow axis along signal `slow` and retardance 2η: p = slow† e^{iη} slow.
template <std::floating_point T>
BasicWaveplate<T> waveplate_from_axis(const BasicQuaternion<T>& slow, T eta) {
    require_unit(slow, "waveplate_from_axis");
    return BasicWaveplate<T>(conjugate(slow) * exp_i(eta) * slow);
}

/// Same plate built from its Stokes-space axis: p = e^{sη}.
template <std::floating_point T>
BasicWaveplate<T> waveplate_from_stokes_axis(const BasicQuaternion<T>& axis, T eta) {
    require_unit_vector(axis, "waveplate_from_stokes_axis");
    return BasicWaveplate<T>(exp_axis(axis, eta));
}

template <std::floating_point T>
BasicWaveplateAxisForm<T> axis_retardance(const BasicWaveplate<T>& w) {
    const auto& p = w.transform();
    const T vn = vector_norm(p);
    if (vn < T(1e-12)) throw domain_error("axis_retardance: zero retardance, axis undefined");
    const T eta = std::atan2(vn, p.q0);
    return {BasicQuaternion<T>{T(0), p.q1 / vn, p.q2 / vn, p.q3 / vn}, eta};
}

/// The same element physically rotated by psi: e^{-jψ} p e^{jψ}.
template <std::floating_point T>
BasicWaveplate<T> rotate_element(const BasicWaveplate<T>& w, T psi) {
    return BasicWaveplate<T>(exp_j(-psi) * w.transform() * exp_j(psi));
}

/// Quarter-wave plate, slow axis at angle psi from horizontal.
template <std::floating_point T>
BasicWaveplate<T> qwp(T psi) {
    const T h = std::numbers::sqrt2_v<T> / T(2);
    return rotate_element(BasicWaveplate<T>(BasicQuaternion<T>{h, h, T(0), T(0)}), psi);
}

/// Half-wave plate, slow axis at angle psi from horizontal.
template <std::floating_point T>
BasicWaveplate<T> hwp(T psi) {
    return rotate_element(BasicWaveplate<T>(BasicQuaternion<T>::i()), psi);
}

/// r = ½((1+μ) q - (1-μ) i q s), s the unit Stokes vector quaternion of the
/// pass axis.
template <std::floating_point T>
BasicQuaternion<T> polarizer_apply(const BasicQuaternion<T>& q, const BasicPartialPolarizer<T>& pol) {
    const T mu = pol.mu();
    const auto s = stokes_axis(pol.pass_axis());
    return ((T(1) + mu) * q - (T(1) - mu) * (BasicQuaternion<T>::i() * q * s)) / T(2);
}

/// r = ½((1+μ) q - (1-μ) q^{‡‡i} i s). Algebraically identical to
/// polarizer_apply since q^{‡‡i} = -i q i.
template <std::floating_point T>
BasicQuaternion<T> polarizer_apply_conjugate_form(const BasicQuaternion<T>& q,
                                                  const BasicPartialPolarizer<T>& pol) {
    const T mu = pol.mu();
    const auto s = stokes_axis(pol.pass_axis());
    const auto term = double_conjugate(q, Axis::i) * BasicQuaternion<T>::i() * s;
    return ((T(1) + mu) * q - (T(1) - mu) * term) / T(2);
}

}  // namespace qpol
