// cli.hpp
// `qpol` command-line front end. run() is separate from main() so the tests can
// drive it in-process.
//
// Exit codes: 0 ok, 1 self-check failure, 2 bad input, 3 unrecoverable
// conversion, 4 I/O error.

#pragma once

#include <fstream>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qpol/io/json_io.hpp"
#include "qpol/io/ramp_csv.hpp"
#include "qpol/qpol.hpp"
#include "self_check.hpp"

namespace qpol::tools {

enum ExitCode : int {
    exit_ok = 0,
    exit_check_failed = 1,
    exit_bad_input = 2,
    exit_unrecoverable = 3,
    exit_io = 4,
};

namespace cli_detail {

struct Unrecoverable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("malformed JSON: ") + e.what());
    }
}

/// Quaternion arguments accept the text form "q0,q1,q2,q3" or a JSON array.
inline Quaternion quaternion_arg(const std::string& text) {
    const auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] == '[') return quaternion_from_json(parse_json_text(text));
    return parse_quaternion(text);
}

inline Quaternion signal_from(const std::string& form, const json& input) {
    if (form == "quat") return quaternion_from_json(input);
    if (form == "jones") return from_jones(jones_from_json(input));
    if (form == "ellipse") return from_ellipse(ellipse_from_json(input));
    throw parse_error("unknown representation '" + form + "'");
}

inline json ellipse_json(const EllipseParams& e, bool degrees) {
    const double k = degrees ? 180.0 / std::numbers::pi : 1.0;
    return json{{"r", e.r}, {"phi", e.phi * k}, {"epsilon", e.epsilon * k}, {"theta", e.theta * k}};
}

inline json convert(const std::string& from, const std::string& to, const std::string& input_text, bool degrees) {
    const json input = parse_json_text(input_text);
    if (from == "stokes") {
        if (to != "stokes") throw Unrecoverable("the optical phase cannot be recovered from a Stokes vector");
        return json(stokes_from_json(input));
    }
    const auto q = signal_from(from, input);
    if (to == "quat") return json(q);
    if (to == "jones") return json(to_jones(q));
    if (to == "stokes") return json(stokes(q));
    if (to == "ellipse") return ellipse_json(to_ellipse(q), degrees);
    throw parse_error("unknown representation '" + to + "'");
}

inline json angles_json(const WaveplateAngles& a, bool degrees) {
    const double k = degrees ? 180.0 / std::numbers::pi : 1.0;
    return json{{"psi_a", a.psi_a * k}, {"psi_b", a.psi_b * k}, {"psi_c", a.psi_c * k}};
}

inline json solve(const Quaternion& q, const Quaternion& r, double phi, const std::string& branch, double tol,
                  bool degrees) {
    const auto p = target_transform(ShifterProblem{q, r, phi});
    const auto target = exp_i(phi) * r;
    const auto entry = [&](const WaveplateAngles& a) {
        json e = angles_json(a, degrees);
        e["residual"] = norm(q * forward_transform(a) - target);
        return e;
    };

    json out;
    out["target_p"] = p;
    const auto set = solve_angles(p, tol);
    if (const auto* reg = std::get_if<RegularSolution>(&set)) {
        out["classification"] = to_string(Singularity::Regular);
        out["near_singular"] = reg->near_singular;
        json solutions = json::array();
        if (branch == "1" || branch == "all") {
            auto e = entry(reg->branch1);
            e["branch"] = 1;
            solutions.push_back(e);
        }
        if (branch == "2" || branch == "all") {
            auto e = entry(reg->branch2);
            e["branch"] = 2;
            solutions.push_back(e);
        }
        out["solutions"] = solutions;
        return out;
    }
    json samples = json::array();
    if (const auto* a = std::get_if<SingularAFamily>(&set)) {
        out["classification"] = to_string(Singularity::SingularA);
        out["family"] = {{"parameter", "alpha"}, {"half_arg_p1_p3", a->half_arg13}};
        for (const auto& s : a->samples(16)) samples.push_back(entry(s));
    } else {
        const auto& b = std::get<SingularBFamily>(set);
        out["classification"] = to_string(Singularity::SingularB);
        out["family"] = {{"parameter", "psi_b"}, {"half_arg_p0_p2", b.half_arg02}};
        for (const auto& s : b.samples(16)) samples.push_back(entry(s));
    }
    out["family"]["samples"] = samples;
    return out;
}

inline BranchPolicy branch_policy(const std::string& name) {
    if (name == "auto") return BranchPolicy::Continuous;
    if (name == "1") return BranchPolicy::Branch1;
    if (name == "2") return BranchPolicy::Branch2;
    throw parse_error("branch must be auto, 1 or 2");
}

inline void ramp(const Quaternion& q, const Quaternion& r, std::size_t n, const std::string& path,
                 const std::string& branch, double tol, bool degrees) {
    if (n < 2) throw parse_error("ramp needs at least 2 samples");
    const auto policy = branch_policy(branch);
    const auto phis = full_turn_phases(n);
    const auto samples = ramp_trajectory<double>(q, r, phis, policy, tol);
    const auto records = ramp_records(q, samples);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoFailure("cannot open '" + path + "' for writing");
    write_ramp_csv(file, records, degrees);
    file.flush();
    if (!file) throw IoFailure("write to '" + path + "' failed");
}

inline json compose_devices(const std::string& devices_text, const std::string& input_text) {
    const auto devices = devices_from_json(parse_json_text(devices_text));
    json out;
    std::vector<Waveplate> plates;
    for (const auto& d : devices) {
        if (const auto* w = std::get_if<Waveplate>(&d)) plates.push_back(*w);
    }
    if (!devices.empty() && plates.size() == devices.size()) {
        const auto w = compose(std::span<const Waveplate>(plates));
        out["transform"] = w.transform();
        if (vector_norm(w.transform()) >= 1e-12) {
            const auto form = axis_retardance(w);
            out["axis"] = form.axis;
            out["retardance"] = form.retardance();
        }
    }
    if (!input_text.empty()) out["output"] = propagate(quaternion_arg(input_text), devices);
    return out;
}

}  // namespace cli_detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quaternion calculus for coherent polarized light"};
    app.require_subcommand(1);

    bool degrees = false;

    auto* convert = app.add_subcommand("convert", "convert a signal between representations");
    std::string from, to, input;
    convert->add_option("--from", from, "source form")->required()->check(CLI::IsMember({"jones", "quat", "ellipse", "stokes"}));
    convert->add_option("--to", to, "target form")->required()->check(CLI::IsMember({"jones", "quat", "ellipse", "stokes"}));
    convert->add_option("--input", input, "source value as JSON")->required();
    convert->add_flag("--degrees", degrees, "show output angles in degrees");

    auto* solve = app.add_subcommand("solve", "waveplate angles for one phase shift");
    std::string q_text, r_text, branch = "all";
    double phi = 0.0, tol = singular_tolerance;
    solve->add_option("--q", q_text, "input signal q0,q1,q2,q3")->required();
    solve->add_option("--r", r_text, "output signal q0,q1,q2,q3")->required();
    solve->add_option("--phi", phi, "phase shift in radians")->required();
    solve->add_option("--branch", branch, "1, 2 or all")->check(CLI::IsMember({"1", "2", "all"}));
    solve->add_option("--tol", tol, "singularity tolerance");
    solve->add_flag("--degrees", degrees, "show output angles in degrees");

    auto* ramp = app.add_subcommand("ramp", "2π phase ramp as CSV");
    std::size_t samples = 256;
    std::string path, ramp_branch = "auto";
    ramp->add_option("--q", q_text, "input signal q0,q1,q2,q3")->required();
    ramp->add_option("--r", r_text, "output signal q0,q1,q2,q3")->required();
    ramp->add_option("--samples", samples, "number of samples (>= 2)");
    ramp->add_option("--out", path, "output CSV path")->required();
    ramp->add_option("--branch", ramp_branch, "auto (continuous), 1 or 2")->check(CLI::IsMember({"auto", "1", "2"}));
    ramp->add_option("--tol", tol, "singularity tolerance");
    ramp->add_flag("--degrees", degrees, "write angles in degrees");

    auto* compose = app.add_subcommand("compose", "compose a device sequence and propagate a signal");
    std::string devices;
    compose->add_option("--devices", devices, "JSON array of devices in propagation order")->required();
    compose->add_option("--input", input, "optional input signal");

    auto* check = app.add_subcommand("check", "run the built-in self-check suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_bad_input;
    }

    try {
        if (*convert) {
            out << cli_detail::convert(from, to, input, degrees).dump() << '\n';
        } else if (*solve) {
            const auto q = cli_detail::quaternion_arg(q_text);
            const auto r = cli_detail::quaternion_arg(r_text);
            out << cli_detail::solve(q, r, phi, branch, tol, degrees).dump(2) << '\n';
        } else if (*ramp) {
            const auto q = cli_detail::quaternion_arg(q_text);
            const auto r = cli_detail::quaternion_arg(r_text);
            cli_detail::ramp(q, r, samples, path, ramp_branch, tol, degrees);
        } else if (*compose) {
            out << cli_detail::compose_devices(devices, input).dump() << '\n';
        } else if (*check) {
            bool all = true;
            for (const auto& r : run_self_check()) {
                out << (r.passed ? "PASS " : "FAIL ") << r.group;
                if (!r.detail.empty()) out << "  (" << r.detail << ')';
                out << '\n';
                all = all && r.passed;
            }
            return all ? exit_ok : exit_check_failed;
        }
    } catch (const cli_detail::Unrecoverable& e) {
        err << "error: " << e.what() << '\n';
        return exit_unrecoverable;
    } catch (const cli_detail::IoFailure& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_bad_input;
    }
    return exit_ok;
}

}  // namespace qpol::tools
