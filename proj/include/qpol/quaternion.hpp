// quaternion.hpp
// Hamilton quaternions q0 + q1 i + q2 j + q3 k and the operations the
// polarization modules are built on: products, divisions, exp/log,
// partial conjugation, precession.

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <concepts>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace qpol {

/// Raised when an operation is evaluated outside its mathematical domain
/// (zero divisor, non-unit waveplate, out-of-range ellipse parameter, ...).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised by the text parsers.
class parse_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Relative tolerance on |norm - 1| accepted for unit quaternions.
inline constexpr double unit_tolerance = 1e-9;

/// Names one of the three base vector quaternions.
enum class Axis { i, j, k };

template <std::floating_point T>
struct BasicQuaternion {
    using value_type = T;

    T q0{};
    T q1{};
    T q2{};
    T q3{};

    constexpr BasicQuaternion() = default;
    constexpr BasicQuaternion(T s, T x, T y, T z) : q0(s), q1(x), q2(y), q3(z) {}
    // A real number is a quaternion with zero vector part.
    constexpr BasicQuaternion(T s) : q0(s) {}  // NOLINT(google-explicit-constructor)

    static constexpr BasicQuaternion one() { return {T(1), T(0), T(0), T(0)}; }
    static constexpr BasicQuaternion i() { return {T(0), T(1), T(0), T(0)}; }
    static constexpr BasicQuaternion j() { return {T(0), T(0), T(1), T(0)}; }
    static constexpr BasicQuaternion k() { return {T(0), T(0), T(0), T(1)}; }

    constexpr T operator[](std::size_t n) const {
        switch (n) {
            case 0: return q0;
            case 1: return q1;
            case 2: return q2;
            default: return q3;
        }
    }

    constexpr std::array<T, 4> components() const { return {q0, q1, q2, q3}; }

    constexpr bool operator==(const BasicQuaternion&) const = default;

    constexpr BasicQuaternion operator-() const { return {-q0, -q1, -q2, -q3}; }

    constexpr BasicQuaternion& operator+=(const BasicQuaternion& o) {
        q0 += o.q0; q1 += o.q1; q2 += o.q2; q3 += o.q3;
        return *this;
    }
    constexpr BasicQuaternion& operator-=(const BasicQuaternion& o) {
        q0 -= o.q0; q1 -= o.q1; q2 -= o.q2; q3 -= o.q3;
        return *this;
    }
    constexpr BasicQuaternion& operator*=(T s) {
        q0 *= s; q1 *= s; q2 *= s; q3 *= s;
        return *this;
    }
    constexpr BasicQuaternion& operator/=(T s) {
        q0 /= s; q1 /= s; q2 /= s; q3 /= s;
        return *this;
    }
};

using Quaternion = BasicQuaternion<double>;

template <std::floating_point T>
constexpr BasicQuaternion<T> operator+(BasicQuaternion<T> a, const BasicQuaternion<T>& b) {
    return a += b;
}
template <std::floating_point T>
constexpr BasicQuaternion<T> operator-(BasicQuaternion<T> a, const BasicQuaternion<T>& b) {
    return a -= b;
}
template <std::floating_point T>
constexpr BasicQuaternion<T> operator*(BasicQuaternion<T> a, T s) {
    return a *= s;
}
template <std::floating_point T>
constexpr BasicQuaternion<T> operator*(T s, BasicQuaternion<T> a) {
    return a *= s;
}
template <std::floating_point T>
constexpr BasicQuaternion<T> operator/(BasicQuaternion<T> a, T s) {
    return a /= s;
}

/// Hamilton product: p0q0 - Ve(p).Ve(q) + p0 Ve(q) + q0 Ve(p) + Ve(p) x Ve(q).
template <std::floating_point T>
constexpr BasicQuaternion<T> operator*(const BasicQuaternion<T>& p, const BasicQuaternion<T>& q) {
    return {
        p.q0 * q.q0 - p.q1 * q.q1 - p.q2 * q.q2 - p.q3 * q.q3,
        p.q0 * q.q1 + p.q1 * q.q0 + p.q2 * q.q3 - p.q3 * q.q2,
        p.q0 * q.q2 + p.q2 * q.q0 + p.q3 * q.q1 - p.q1 * q.q3,
        p.q0 * q.q3 + p.q3 * q.q0 + p.q1 * q.q2 - p.q2 * q.q1,
    };
}

template <std::floating_point T>
constexpr BasicQuaternion<T> multiply(const BasicQuaternion<T>& p, const BasicQuaternion<T>& q) {
    return p * q;
}

template <std::floating_point T>
constexpr T scalar_part(const BasicQuaternion<T>& q) {
    return q.q0;
}

template <std::floating_point T>
constexpr BasicQuaternion<T> vector_part(const BasicQuaternion<T>& q) {
    return {T(0), q.q1, q.q2, q.q3};
}

template <std::floating_point T>
constexpr BasicQuaternion<T> conjugate(const BasicQuaternion<T>& q) {
    return {q.q0, -q.q1, -q.q2, -q.q3};
}

/// Four-dimensional inner product, Sc(p† q).
template <std::floating_point T>
constexpr T dot(const BasicQuaternion<T>& p, const BasicQuaternion<T>& q) {
    return p.q0 * q.q0 + p.q1 * q.q1 + p.q2 * q.q2 + p.q3 * q.q3;
}

template <std::floating_point T>
constexpr T norm_squared(const BasicQuaternion<T>& q) {
    return dot(q, q);
}

template <std::floating_point T>
T norm(const BasicQuaternion<T>& q) {
    return std::sqrt(norm_squared(q));
}

template <std::floating_point T>
T vector_norm(const BasicQuaternion<T>& q) {
    return std::sqrt(q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3);
}

template <std::floating_point T>
bool is_finite(const BasicQuaternion<T>& q) {
    return std::isfinite(q.q0) && std::isfinite(q.q1) && std::isfinite(q.q2) && std::isfinite(q.q3);
}

template <std::floating_point T>
BasicQuaternion<T> normalize(const BasicQuaternion<T>& q) {
    const T n = norm(q);
    if (n == T(0)) throw domain_error("normalize: zero quaternion");
    return q / n;
}

template <std::floating_point T>
bool is_unit(const BasicQuaternion<T>& q, T tol = T(unit_tolerance)) {
    return std::abs(norm(q) - T(1)) <= tol;
}

/// Throws domain_error naming `what` unless q is a unit quaternion.
template <std::floating_point T>
void require_unit(const BasicQuaternion<T>& q, std::string_view what) {
    if (!is_finite(q) || !is_unit(q)) {
        throw domain_error(std::string(what) + ": not a unit quaternion");
    }
}

/// Unit quaternion with no scalar part; squares to -1.
template <std::floating_point T>
bool is_unit_vector(const BasicQuaternion<T>& v, T tol = T(unit_tolerance)) {
    return v.q0 == T(0) && is_unit(v, tol);
}

template <std::floating_point T>
void require_unit_vector(const BasicQuaternion<T>& v, std::string_view what) {
    if (!is_finite(v) || !is_unit_vector(v)) {
        throw domain_error(std::string(what) + ": not a unit vector quaternion");
    }
}

/// p/q = p q† / |q|², the solution x of x q = p.
template <std::floating_point T>
BasicQuaternion<T> right_divide(const BasicQuaternion<T>& p, const BasicQuaternion<T>& q) {
    const T n2 = norm_squared(q);
    if (n2 == T(0)) throw domain_error("right_divide: zero divisor");
    return (p * conjugate(q)) / n2;
}

/// q\p = q† p / |q|², the solution x of q x = p.
template <std::floating_point T>
BasicQuaternion<T> left_divide(const BasicQuaternion<T>& q, const BasicQuaternion<T>& p) {
    const T n2 = norm_squared(q);
    if (n2 == T(0)) throw domain_error("left_divide: zero divisor");
    return (conjugate(q) * p) / n2;
}

template <std::floating_point T>
BasicQuaternion<T> inverse(const BasicQuaternion<T>& q) {
    return right_divide(BasicQuaternion<T>::one(), q);
}

template <std::floating_point T>
constexpr BasicQuaternion<T> basis(Axis v) {
    switch (v) {
        case Axis::i: return BasicQuaternion<T>::i();
        case Axis::j: return BasicQuaternion<T>::j();
        case Axis::k: return BasicQuaternion<T>::k();
    }
    return BasicQuaternion<T>::i();
}

/// e^q = e^{q0} (cos|Ve q| + v̂ sin|Ve q|).
template <std::floating_point T>
BasicQuaternion<T> exp(const BasicQuaternion<T>& q) {
    const T a = vector_norm(q);
    const T scale = std::exp(q.q0);
    // sin(a)/a, with the series near zero
    const T sinc = a < T(1e-4) ? T(1) - a * a / T(6) : std::sin(a) / a;
    return BasicQuaternion<T>{std::cos(a), q.q1 * sinc, q.q2 * sinc, q.q3 * sinc} * scale;
}

/// Principal logarithm: ln|q| + v̂ atan2(|Ve q|, Sc q), vector angle in [0, π].
/// A negative real maps to ln|q| + iπ.
template <std::floating_point T>
BasicQuaternion<T> log(const BasicQuaternion<T>& q) {
    const T n = norm(q);
    if (n == T(0)) throw domain_error("log: zero quaternion");
    const T a = vector_norm(q);
    const T ln = std::log(n);
    if (a == T(0)) {
        if (q.q0 > T(0)) return BasicQuaternion<T>{ln};
        return {ln, std::numbers::pi_v<T>, T(0), T(0)};
    }
    const T angle = std::atan2(a, q.q0);
    const T f = angle / a;
    return {ln, q.q1 * f, q.q2 * f, q.q3 * f};
}

/// e^{vθ} = cos θ + v sin θ for a unit vector quaternion v.
template <std::floating_point T>
BasicQuaternion<T> exp_axis(const BasicQuaternion<T>& v, T theta) {
    const T s = std::sin(theta);
    return {std::cos(theta), v.q1 * s, v.q2 * s, v.q3 * s};
}

template <std::floating_point T>
BasicQuaternion<T> exp_i(T theta) {
    return {std::cos(theta), std::sin(theta), T(0), T(0)};
}

template <std::floating_point T>
BasicQuaternion<T> exp_j(T theta) {
    return {std::cos(theta), T(0), std::sin(theta), T(0)};
}

template <std::floating_point T>
BasicQuaternion<T> exp_k(T theta) {
    return {std::cos(theta), T(0), T(0), std::sin(theta)};
}

/// q^{†v}: negates only the v component of the vector part. Equals -v q† v.
template <std::floating_point T>
constexpr BasicQuaternion<T> partial_conjugate(const BasicQuaternion<T>& q, Axis v) {
    switch (v) {
        case Axis::i: return {q.q0, -q.q1, q.q2, q.q3};
        case Axis::j: return {q.q0, q.q1, -q.q2, q.q3};
        case Axis::k: return {q.q0, q.q1, q.q2, -q.q3};
    }
    return q;
}

/// q^{‡‡v}: keeps the scalar and v components and negates the other two.
/// Equals -v q v, and (pq)^{‡‡v} = p^{‡‡v} q^{‡‡v}.
template <std::floating_point T>
constexpr BasicQuaternion<T> double_conjugate(const BasicQuaternion<T>& q, Axis kept) {
    switch (kept) {
        case Axis::i: return {q.q0, q.q1, -q.q2, -q.q3};
        case Axis::j: return {q.q0, -q.q1, q.q2, -q.q3};
        case Axis::k: return {q.q0, -q.q1, -q.q2, q.q3};
    }
    return q;
}

/// e^{-vθ} q e^{vθ}: scalar part kept, vector part turned by 2θ about v
/// (clockwise seen from the tip of v).
template <std::floating_point T>
BasicQuaternion<T> precess(const BasicQuaternion<T>& q, const BasicQuaternion<T>& v, T theta) {
    require_unit_vector(v, "precess axis");
    return exp_axis(v, -theta) * q * exp_axis(v, theta);
}

/// Quaternion-sense orthogonality, |Sc(p† q)| <= tol |p| |q|.
template <std::floating_point T>
bool is_quaternion_orthogonal(const BasicQuaternion<T>& p, const BasicQuaternion<T>& q, T tol) {
    return std::abs(dot(p, q)) <= tol * norm(p) * norm(q);
}

/// Max componentwise absolute difference.
template <std::floating_point T>
T max_abs_diff(const BasicQuaternion<T>& a, const BasicQuaternion<T>& b) {
    T m = T(0);
    for (std::size_t n = 0; n < 4; ++n) m = std::max(m, std::abs(a[n] - b[n]));
    return m;
}

// Text form "q0,q1,q2,q3". Formatting uses the shortest representation that
// round-trips exactly.
inline std::string format_real(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline std::string to_string(const Quaternion& q) {
    return format_real(q.q0) + "," + format_real(q.q1) + "," + format_real(q.q2) + "," +
           format_real(q.q3);
}

inline double parse_real(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw parse_error("not a real number: '" + std::string(s) + "'");
    }
    if (!std::isfinite(x)) throw parse_error("non-finite value: '" + std::string(s) + "'");
    return x;
}

inline Quaternion parse_quaternion(std::string_view text) {
    std::array<double, 4> c{};
    std::size_t n = 0;
    while (true) {
        const auto comma = text.find(',');
        if (n == 4) throw parse_error("quaternion needs exactly four components");
        c[n++] = parse_real(text.substr(0, comma));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (n != 4) throw parse_error("quaternion needs exactly four components");
    return {c[0], c[1], c[2], c[3]};
}

template <std::floating_point T>
std::ostream& operator<<(std::ostream& os, const BasicQuaternion<T>& q) {
    return os << '(' << q.q0 << ", " << q.q1 << "i, " << q.q2 << "j, " << q.q3 << "k)";
}

}  // namespace qpol
