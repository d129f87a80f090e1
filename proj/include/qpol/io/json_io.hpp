// io/json_io.hpp
// JSON forms of the library's values (nlohmann/json).
//
//   Quaternion        [q0, q1, q2, q3]
//   JonesVector       {"ex": [re, im], "ey": [re, im]}
//   EllipseParams     {"r": .., "phi": .., "epsilon": .., "theta": ..}
//   StokesQuaternion  {"s1": .., "s2": .., "s3": ..}   quaternion ordering, s2 circular
//   ShifterProblem    {"q": [...], "r": [...], "phi": ..}
//   device            {"type": "qwp"|"hwp"|"custom"|"polarizer", "psi": .., "quat": [...], "mu": ..}

#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>
#include "qpol/components.hpp"
#include "qpol/phase_shifter.hpp"
#include "qpol/quaternion.hpp"
#include "qpol/signal.hpp"

namespace qpol {

using json = nlohmann::json;

inline void to_json(json& j, const Quaternion& q) { j = json::array({q.q0, q.q1, q.q2, q.q3}); }

inline void to_json(json& j, const JonesVector& v) {
    j = json{{"ex", {v.ex.real(), v.ex.imag()}}, {"ey", {v.ey.real(), v.ey.imag()}}};
}

inline void to_json(json& j, const EllipseParams& e) {
    j = json{{"r", e.r}, {"phi", e.phi}, {"epsilon", e.epsilon}, {"theta", e.theta}};
}

inline void to_json(json& j, const StokesQuaternion& s) {
    j = json{{"s1", s.s1}, {"s2", s.s2}, {"s3", s.s3}};
}

inline void to_json(json& j, const WaveplateAngles& a) {
    j = json{{"psi_a", a.psi_a}, {"psi_b", a.psi_b}, {"psi_c", a.psi_c}};
}

namespace detail {

inline double json_real(const json& j, const std::string& what) {
    if (!j.is_number()) throw parse_error(what + ": expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw parse_error(what + ": non-finite value");
    return x;
}

inline const json& json_field(const json& j, const std::string& key) {
    if (!j.is_object()) throw parse_error("expected a JSON object with field '" + key + "'");
    const auto it = j.find(key);
    if (it == j.end()) throw parse_error("missing field '" + key + "'");
    return *it;
}

inline std::complex<double> json_complex(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2) throw parse_error(what + ": expected [re, im]");
    return {json_real(j[0], what), json_real(j[1], what)};
}

}  // namespace detail

inline Quaternion quaternion_from_json(const json& j) {
    if (j.is_string()) return parse_quaternion(j.get<std::string>());
    if (!j.is_array() || j.size() != 4) throw parse_error("quaternion: expected [q0, q1, q2, q3]");
    return {detail::json_real(j[0], "q0"), detail::json_real(j[1], "q1"), detail::json_real(j[2], "q2"),
            detail::json_real(j[3], "q3")};
}

inline JonesVector jones_from_json(const json& j) {
    return {detail::json_complex(detail::json_field(j, "ex"), "ex"),
            detail::json_complex(detail::json_field(j, "ey"), "ey")};
}

inline EllipseParams ellipse_from_json(const json& j) {
    return {detail::json_real(detail::json_field(j, "r"), "r"),
            detail::json_real(detail::json_field(j, "phi"), "phi"),
            detail::json_real(detail::json_field(j, "epsilon"), "epsilon"),
            detail::json_real(detail::json_field(j, "theta"), "theta")};
}

inline StokesQuaternion stokes_from_json(const json& j) {
    return {detail::json_real(detail::json_field(j, "s1"), "s1"),
            detail::json_real(detail::json_field(j, "s2"), "s2"),
            detail::json_real(detail::json_field(j, "s3"), "s3")};
}

inline ShifterProblem problem_from_json(const json& j) {
    return {quaternion_from_json(detail::json_field(j, "q")), quaternion_from_json(detail::json_field(j, "r")),
            detail::json_real(detail::json_field(j, "phi"), "phi")};
}

inline json problem_to_json(const ShifterProblem& p) {
    return json{{"q", p.q_in}, {"r", p.r_out}, {"phi", p.phi}};
}

/// An element of an optical train.
using Device = std::variant<Waveplate, PartialPolarizer>;

/// "psi" rotates any device physically (default 0). "custom" takes its
/// transform from "quat"; "polarizer" takes its pass-axis signal from "quat"
/// (default horizontal) and its field extinction from "mu".
inline Device device_from_json(const json& j) {
    const auto& type_field = detail::json_field(j, "type");
    if (!type_field.is_string()) throw parse_error("device type must be a string");
    const auto type = type_field.get<std::string>();
    const double psi = j.contains("psi") ? detail::json_real(j["psi"], "psi") : 0.0;
    if (type == "qwp") return qwp(psi);
    if (type == "hwp") return hwp(psi);
    if (type == "custom") {
        const auto q = quaternion_from_json(detail::json_field(j, "quat"));
        return rotate_element(Waveplate(q), psi);
    }
    if (type == "polarizer") {
        const auto pass = j.contains("quat") ? quaternion_from_json(j["quat"]) : Quaternion::one();
        const double mu = detail::json_real(detail::json_field(j, "mu"), "mu");
        require_unit(pass, "polarizer pass axis");
        return PartialPolarizer(pass * exp_j(psi), mu);
    }
    throw parse_error("unknown device type '" + type + "'");
}

inline std::vector<Device> devices_from_json(const json& j) {
    if (!j.is_array()) throw parse_error("device sequence must be a JSON array");
    std::vector<Device> out;
    for (const auto& d : j) out.push_back(device_from_json(d));
    return out;
}

/// Sends q through the devices in propagation order.
inline Quaternion propagate(Quaternion q, const std::vector<Device>& devices) {
    for (const auto& d : devices) {
        if (const auto* w = std::get_if<Waveplate>(&d)) {
            q = apply(q, *w);
        } else {
            q = polarizer_apply(q, std::get<PartialPolarizer>(d));
        }
    }
    return q;
}

}  // namespace qpol
