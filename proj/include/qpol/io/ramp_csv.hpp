// io/ramp_csv.hpp
// CSV serialization of phase ramps. Columns:
//   phi,psi_a,psi_b,psi_c,branch,out_phase,out_theta,out_epsilon,residual
// Reals use 12 significant digits, '.' decimal separator and '\n' line ends
// independent of the C++ or C locale.

#pragma once

#include <charconv>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "qpol/phase_shifter.hpp"
#include "qpol/signal.hpp"

namespace qpol {

inline constexpr const char* ramp_csv_header =
    "phi,psi_a,psi_b,psi_c,branch,out_phase,out_theta,out_epsilon,residual";

struct RampRecord {
    double phi{};
    WaveplateAngles angles;
    std::string branch;  // "1", "2" or "singular"
    double out_phase{};
    double out_theta{};
    double out_epsilon{};
    double residual{};
};

/// Adds the output-signal ellipse to each ramp sample. Rows at a singular
/// crossing, or taken from a singular family, are labelled "singular".
inline std::vector<RampRecord> ramp_records(const Quaternion& q, const std::vector<RampSample>& samples) {
    std::vector<RampRecord> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        const auto e = to_ellipse(q * forward_transform(s.angles));
        RampRecord rec;
        rec.phi = s.phi;
        rec.angles = s.angles;
        rec.branch = (s.singular_crossing || s.branch == 0) ? "singular" : std::to_string(s.branch);
        rec.out_phase = e.phi;
        rec.out_theta = e.theta;
        rec.out_epsilon = e.epsilon;
        rec.residual = s.residual;
        out.push_back(rec);
    }
    return out;
}

inline std::string format_sig12(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

/// Writes header plus one row per record. With degrees set, angle columns are
/// shown in degrees; residual and branch are unaffected.
inline void write_ramp_csv(std::ostream& os, const std::vector<RampRecord>& records, bool degrees = false) {
    const double k = degrees ? 180.0 / std::numbers::pi : 1.0;
    std::string text = ramp_csv_header;
    text += '\n';
    for (const auto& r : records) {
        text += format_sig12(r.phi * k) + ',' + format_sig12(r.angles.psi_a * k) + ',' +
                format_sig12(r.angles.psi_b * k) + ',' + format_sig12(r.angles.psi_c * k) + ',' + r.branch +
                ',' + format_sig12(r.out_phase * k) + ',' + format_sig12(r.out_theta * k) + ',' +
                format_sig12(r.out_epsilon * k) + ',' + format_sig12(r.residual) + '\n';
    }
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
}

}  // namespace qpol
