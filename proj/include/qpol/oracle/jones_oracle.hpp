// jones_oracle.hpp
// Reference 2x2 complex-matrix (Jones) calculus used to cross-check the
// quaternion code paths. Nothing under include/qpol/ outside oracle/ may
// include this header; the build checks that.
//
// Basis images (h the ordinary imaginary unit):
//   1 -> [[1, 0], [0, 1]]    i -> [[h, 0], [0, -h]]
//   j -> [[0, -1], [1, 0]]   k -> [[0, h], [h, 0]]
// Matrix products run right to left, so M(pq) = M(q) M(p).

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "qpol/components.hpp"
#include "qpol/quaternion.hpp"
#include "qpol/signal.hpp"

namespace qpol::oracle {

template <std::floating_point T>
struct BasicMatrix2x2 {
    using C = std::complex<T>;
    C m11{}, m12{}, m21{}, m22{};

    static BasicMatrix2x2 identity() { return {C(1), C(0), C(0), C(1)}; }

    BasicMatrix2x2 operator*(const BasicMatrix2x2& o) const {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }

    BasicJonesVector<T> operator*(const BasicJonesVector<T>& v) const {
        return {m11 * v.ex + m12 * v.ey, m21 * v.ex + m22 * v.ey};
    }

    C determinant() const { return m11 * m22 - m12 * m21; }
};

using Matrix2x2 = BasicMatrix2x2<double>;

template <std::floating_point T>
T max_abs_diff(const BasicMatrix2x2<T>& a, const BasicMatrix2x2<T>& b) {
    return std::max({std::abs(a.m11 - b.m11), std::abs(a.m12 - b.m12), std::abs(a.m21 - b.m21),
                     std::abs(a.m22 - b.m22)});
}

template <std::floating_point T>
BasicMatrix2x2<T> quat_to_matrix(const BasicQuaternion<T>& q) {
    using C = std::complex<T>;
    const C h(T(0), T(1));
    const BasicMatrix2x2<T> one{C(1), C(0), C(0), C(1)};
    const BasicMatrix2x2<T> mi{h, C(0), C(0), -h};
    const BasicMatrix2x2<T> mj{C(0), C(-1), C(1), C(0)};
    const BasicMatrix2x2<T> mk{C(0), h, h, C(0)};
    const auto term = [](T w, const BasicMatrix2x2<T>& m) {
        return BasicMatrix2x2<T>{w * m.m11, w * m.m12, w * m.m21, w * m.m22};
    };
    const auto a = term(q.q0, one), b = term(q.q1, mi), c = term(q.q2, mj), d = term(q.q3, mk);
    return {a.m11 + b.m11 + c.m11 + d.m11, a.m12 + b.m12 + c.m12 + d.m12,
            a.m21 + b.m21 + c.m21 + d.m21, a.m22 + b.m22 + c.m22 + d.m22};
}

/// True when m has the waveplate symmetry [[a, -b*], [b, a*]].
template <std::floating_point T>
bool is_waveplate_matrix(const BasicMatrix2x2<T>& m, T tol = T(1e-12)) {
    const T scale = std::max({T(1), std::abs(m.m11), std::abs(m.m21)});
    return std::abs(m.m12 + std::conj(m.m21)) <= tol * scale &&
           std::abs(m.m22 - std::conj(m.m11)) <= tol * scale;
}

template <std::floating_point T>
BasicQuaternion<T> matrix_to_quat(const BasicMatrix2x2<T>& m, T tol = T(1e-12)) {
    if (!is_waveplate_matrix(m, tol)) throw domain_error("matrix_to_quat: not a waveplate matrix");
    return {m.m11.real(), m.m11.imag(), m.m21.real(), m.m21.imag()};
}

/// Left column of M(q): the Jones vector of the signal q.
template <std::floating_point T>
BasicJonesVector<T> jones_column(const BasicQuaternion<T>& q) {
    const auto m = quat_to_matrix(q);
    return {m.m11, m.m21};
}

template <std::floating_point T>
BasicJonesVector<T> oracle_apply(const BasicJonesVector<T>& v, const BasicWaveplate<T>& w) {
    return quat_to_matrix(w.transform()) * v;
}

/// Projects onto the pass state and its Hermitian-orthogonal partner, scaling
/// the second projection by mu.
template <std::floating_point T>
BasicJonesVector<T> oracle_polarizer(const BasicJonesVector<T>& v, const BasicPartialPolarizer<T>& pol) {
    const auto pass = jones_column(pol.pass_axis());
    const T n = std::sqrt(std::norm(pass.ex) + std::norm(pass.ey));
    const std::complex<T> px = pass.ex / n, py = pass.ey / n;
    const std::complex<T> bx = -std::conj(py), by = std::conj(px);
    const auto along_pass = std::conj(px) * v.ex + std::conj(py) * v.ey;
    const auto along_block = (std::conj(bx) * v.ex + std::conj(by) * v.ey) * pol.mu();
    return {along_pass * px + along_block * bx, along_pass * py + along_block * by};
}

template <std::floating_point T>
T max_abs_diff(const BasicJonesVector<T>& a, const BasicJonesVector<T>& b) {
    return std::max(std::abs(a.ex - b.ex), std::abs(a.ey - b.ey));
}

}  // namespace qpol::oracle
