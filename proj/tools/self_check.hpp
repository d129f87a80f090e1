// self_check.hpp
// Golden values and differential smoke tests run by `qpol check`. Each group
// reports pass/fail independently.

#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "qpol/io/ramp_csv.hpp"
#include "qpol/oracle/jones_oracle.hpp"
#include "qpol/qpol.hpp"

namespace qpol::tools {

struct CheckResult {
    std::string group;
    bool passed = false;
    std::string detail;
};

namespace check_detail {

inline Quaternion random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    return normalize(Quaternion{g(rng), g(rng), g(rng), g(rng)});
}

inline bool close(const Quaternion& a, const Quaternion& b, double tol) { return max_abs_diff(a, b) <= tol; }

inline CheckResult eq1_table() {
    const Quaternion one = Quaternion::one(), i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
    const bool ok = i * i == -one && j * j == -one && k * k == -one && i * j * k == -one && i * j == k &&
                    j * i == -k && j * k == i && k * j == -i && k * i == j && i * k == -j;
    return {"eq1-table", ok, ok ? "" : "base product mismatch"};
}

inline CheckResult table1() {
    const double h = std::numbers::sqrt2 / 2;
    const bool ok = close(waveplate_from_axis(Quaternion::one(), std::numbers::pi / 4).transform(), {h, h, 0, 0}, 1e-15) &&
                    close(waveplate_from_axis(Quaternion::one(), std::numbers::pi / 2).transform(), Quaternion::i(), 1e-15) &&
                    close(compose({qwp(0.0), qwp(0.0)}).transform(), Quaternion::i(), 1e-15);
    return {"table1", ok, ok ? "" : "waveplate golden value mismatch"};
}

inline CheckResult table2() {
    const std::vector<Quaternion> signals{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1},
                                          {1, 0, 1, 0}, {1, 0, 0, 1}, {1, 0, 0, -1}};
    bool ok = true;
    for (const auto& q : signals) {
        ok = ok && close(from_jones(to_jones(q)), q, 1e-12) && close(from_ellipse(to_ellipse(q)), q, 1e-12);
    }
    return {"table2", ok, ok ? "" : "signal round trip mismatch"};
}

inline CheckResult eq4_symmetry(std::mt19937_64& rng) {
    bool ok = true;
    for (int n = 0; n < 200; ++n) {
        const auto w = compose({qwp(std::uniform_real_distribution<>(-3, 3)(rng)),
                                Waveplate(random_unit(rng)), hwp(std::uniform_real_distribution<>(-3, 3)(rng))});
        const auto m = oracle::quat_to_matrix(w.transform());
        ok = ok && oracle::is_waveplate_matrix(m) && std::abs(m.determinant() - 1.0) <= 1e-12;
    }
    return {"eq4-symmetry", ok, ok ? "" : "composed plate left the waveplate matrix class"};
}

inline CheckResult stokes_oracle(std::mt19937_64& rng) {
    double worst = 0;
    for (int n = 0; n < 1000; ++n) {
        const auto q = random_unit(rng) * 1.7;
        const auto a = to_classical(stokes(q));
        const auto b = classical_from_jones(oracle::jones_column(q));
        worst = std::max({worst, std::abs(a.S1 - b.S1), std::abs(a.S2 - b.S2), std::abs(a.S3 - b.S3)});
    }
    return {"stokes-oracle", worst <= 1e-12, "max deviation " + std::to_string(worst)};
}

inline CheckResult oracle_apply_group(std::mt19937_64& rng) {
    double worst = 0;
    for (int n = 0; n < 1000; ++n) {
        const auto q = random_unit(rng);
        const Waveplate w(random_unit(rng));
        worst = std::max(worst, oracle::max_abs_diff(oracle::oracle_apply(to_jones(q), w), to_jones(apply(q, w))));
    }
    return {"oracle-apply", worst <= 1e-12, "max deviation " + std::to_string(worst)};
}

inline CheckResult polarizer(std::mt19937_64& rng) {
    double worst = 0;
    std::uniform_real_distribution<> unit(0, 1);
    for (int n = 0; n < 1000; ++n) {
        const PartialPolarizer pol(random_unit(rng), unit(rng));
        const auto q = random_unit(rng) * 2.0;
        worst = std::max(worst, oracle::max_abs_diff(oracle::oracle_polarizer(to_jones(q), pol),
                                                     to_jones(polarizer_apply(q, pol))));
        worst = std::max(worst, max_abs_diff(polarizer_apply(q, pol), polarizer_apply_conjugate_form(q, pol)));
    }
    return {"polarizer", worst <= 1e-12, "max deviation " + std::to_string(worst)};
}

inline CheckResult inversion(std::mt19937_64& rng) {
    double worst = 0;
    for (int n = 0; n < 1000; ++n) {
        const auto p = random_unit(rng);
        const auto sol = regular_branches(p);
        worst = std::max({worst, norm(forward_transform(sol.branch1) - p), norm(forward_transform(sol.branch2) - p)});
    }
    return {"phase-shifter-inversion", worst <= 1e-9, "max residual " + std::to_string(worst)};
}

inline CheckResult ramp_group(const std::string& name, const Quaternion& q, const Quaternion& r,
                              std::size_t expected_crossings) {
    const auto phis = full_turn_phases(256);
    const auto samples = ramp_trajectory<double>(q, r, phis, BranchPolicy::Branch1);
    const auto records = ramp_records(q, samples);
    double worst = 0;
    std::size_t crossings = 0;
    for (const auto& s : samples) {
        worst = std::max(worst, s.residual);
        if (s.singular_crossing) ++crossings;
    }
    const bool ok = worst <= residual_limit && crossings == expected_crossings;
    return {name, ok, "max residual " + std::to_string(worst) + ", crossings " + std::to_string(crossings)};
}

}  // namespace check_detail

inline const Quaternion regular_input{-8.0 / 9, 2.0 / 9, 1.0 / 3, 2.0 / 9};
inline const Quaternion regular_output{2.0 / 7, -3.0 / 7, 0.0, -6.0 / 7};
inline const Quaternion crossing_input{-5.0 / 6, 1.0 / 6, 1.0 / 2, 1.0 / 6};
inline const Quaternion crossing_output{1.0 / 3, -2.0 / 3, 0.0, -2.0 / 3};

inline std::vector<CheckResult> run_self_check() {
    std::mt19937_64 rng(20240607);
    std::vector<CheckResult> out;
    const auto guarded = [&](const std::string& name, const std::function<CheckResult()>& f) {
        try {
            out.push_back(f());
        } catch (const std::exception& e) {
            out.push_back({name, false, std::string("exception: ") + e.what()});
        }
    };
    guarded("eq1-table", check_detail::eq1_table);
    guarded("table1", check_detail::table1);
    guarded("table2", check_detail::table2);
    guarded("eq4-symmetry", [&] { return check_detail::eq4_symmetry(rng); });
    guarded("stokes-oracle", [&] { return check_detail::stokes_oracle(rng); });
    guarded("oracle-apply", [&] { return check_detail::oracle_apply_group(rng); });
    guarded("polarizer", [&] { return check_detail::polarizer(rng); });
    guarded("phase-shifter-inversion", [&] { return check_detail::inversion(rng); });
    guarded("regular-ramp", [] { return check_detail::ramp_group("regular-ramp", regular_input, regular_output, 0); });
    guarded("crossing-ramp", [] { return check_detail::ramp_group("crossing-ramp", crossing_input, crossing_output, 2); });
    return out;
}

}  // namespace qpol::tools
