// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "five_plate.hpp"
#include "qpol/io/ramp_csv.hpp"
#include "qpol/oracle/jones_oracle.hpp"
#include "qpol/qpol.hpp"

namespace {

using namespace qpol;
constexpr double pi = std::numbers::pi;

struct Outcome {
    bool passed;
    std::string detail;
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    double gauss() { return normal_(engine_); }
    Quaternion quaternion() { return {gauss(), gauss(), gauss(), gauss()}; }
    Quaternion unit() { return normalize(quaternion()); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

const Quaternion regular_q{-8.0 / 9, 2.0 / 9, 1.0 / 3, 2.0 / 9};
const Quaternion regular_r{2.0 / 7, -3.0 / 7, 0.0, -6.0 / 7};
const Quaternion crossing_q{-5.0 / 6, 1.0 / 6, 1.0 / 2, 1.0 / 6};
const Quaternion crossing_r{1.0 / 3, -2.0 / 3, 0.0, -2.0 / 3};

double relative_phase(const Quaternion& t, const Quaternion& r, double& off) {
    const auto m = t * conjugate(r) / norm_squared(r);
    off = std::hypot(m.q2, m.q3);
    return std::atan2(m.q1, m.q0);
}

Outcome base_algebra() {
    const Quaternion one = Quaternion::one(), i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
    const Quaternion basis[] = {one, i, j, k};
    // expected[a][b] = basis[a] * basis[b]
    const Quaternion expected[4][4] = {{one, i, j, k}, {i, -one, k, -j}, {j, -k, -one, i}, {k, j, -i, -one}};
    bool table = true;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) table = table && basis[a] * basis[b] == expected[a][b];
    }
    Rng rng(101);
    double worst = 0;
    for (int n = 0; n < 10000; ++n) {
        const auto p = rng.quaternion(), q = rng.quaternion(), r = rng.quaternion();
        const double scale = norm(p) * norm(q) * norm(r);
        worst = std::max(worst, norm((p * q) * r - p * (q * r)) / scale);
        worst = std::max(worst, std::abs(norm(p * q) - norm(p) * norm(q)) / (norm(p) * norm(q)));
    }
    return {table && worst <= 1e-12, std::string(table ? "table exact" : "table mismatch") + ", max rel " + sci(worst)};
}

Outcome oracle_anti_homomorphism() {
    Rng rng(102);
    double worst = 0;
    bool columns = true;
    for (int n = 0; n < 10000; ++n) {
        const auto p = rng.quaternion(), q = rng.quaternion();
        const auto d = oracle::max_abs_diff(oracle::quat_to_matrix(p * q),
                                            oracle::quat_to_matrix(q) * oracle::quat_to_matrix(p));
        worst = std::max(worst, d / std::max(1.0, norm(p) * norm(q)));
        columns = columns && oracle::jones_column(q) == to_jones(q);
    }
    return {worst <= 1e-12 && columns, "max " + sci(worst) + (columns ? ", columns exact" : ", column mismatch")};
}

Outcome table1_golden() {
    const double h = std::sqrt(2.0) / 2;
    const double a = max_abs_diff(waveplate_from_axis(Quaternion::one(), pi / 4).transform(), Quaternion(h, h, 0, 0));
    const double b = max_abs_diff(waveplate_from_axis(Quaternion::one(), pi / 2).transform(), Quaternion::i());
    const double c = max_abs_diff(compose({qwp(0.0), qwp(0.0)}).transform(), Quaternion::i());
    const double worst = std::max({a, b, c});
    return {worst <= 1e-15, "max " + sci(worst)};
}

Outcome table2_golden() {
    const Quaternion signals[] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1},
                                  {1, 0, 1, 0}, {1, 0, 0, 1}, {1, 0, 0, -1}};
    double worst = 0;
    for (const auto& q : signals) {
        worst = std::max(worst, max_abs_diff(from_jones(to_jones(q)), q));
        worst = std::max(worst, max_abs_diff(from_ellipse(to_ellipse(q)), q));
    }
    return {worst <= 1e-12, "7 signals, max " + sci(worst)};
}

Outcome stokes_equivalence() {
    Rng rng(105);
    double worst = 0, phase = 0;
    for (int n = 0; n < 10000; ++n) {
        const auto q = rng.quaternion();
        const auto a = to_classical(stokes(q));
        const auto b = classical_from_jones(oracle::jones_column(q));
        worst = std::max({worst, std::abs(a.S1 - b.S1), std::abs(a.S2 - b.S2), std::abs(a.S3 - b.S3)});
        const auto s = stokes(apply_phase(q, rng.uniform(-pi, pi)));
        const auto t = stokes(q);
        phase = std::max({phase, std::abs(s.s1 - t.s1), std::abs(s.s2 - t.s2), std::abs(s.s3 - t.s3)});
    }
    return {worst <= 1e-12 && phase <= 1e-12, "max " + sci(worst) + ", phase-blind " + sci(phase)};
}

Outcome precession() {
    Rng rng(106);
    double worst = 0;
    for (int n = 0; n < 1000; ++n) {
        const auto q = rng.unit();
        const Waveplate w(rng.unit());
        const auto form = axis_retardance(w);
        const auto n_ax = to_classical(StokesQuaternion{form.axis.q1, form.axis.q2, form.axis.q3});
        const auto in = classical_from_jones(oracle::jones_column(q));
        const auto out = classical_from_jones(oracle::jones_column(apply(q, w)));
        // Rodrigues, right-handed about the classical axis
        const double a = form.retardance(), c = std::cos(a), s = std::sin(a);
        const double nx = n_ax.S1, ny = n_ax.S2, nz = n_ax.S3;
        const double d = nx * in.S1 + ny * in.S2 + nz * in.S3;
        const double ex = in.S1 * c + (ny * in.S3 - nz * in.S2) * s + nx * d * (1 - c);
        const double ey = in.S2 * c + (nz * in.S1 - nx * in.S3) * s + ny * d * (1 - c);
        const double ez = in.S3 * c + (nx * in.S2 - ny * in.S1) * s + nz * d * (1 - c);
        worst = std::max({worst, std::abs(ex - out.S1), std::abs(ey - out.S2), std::abs(ez - out.S3)});
    }
    return {worst <= 1e-10, "max " + sci(worst)};
}

Outcome polarizer() {
    Rng rng(107);
    double eigen = 0, forms = 0;
    for (int n = 0; n < 1000; ++n) {
        const PartialPolarizer pol(rng.unit(), rng.uniform(0, 1));
        const double phi = rng.uniform(-pi, pi);
        const auto pass = apply_phase(pol.pass_axis(), phi);
        const auto block = apply_phase(Quaternion::j() * pol.pass_axis(), phi);
        eigen = std::max(eigen, max_abs_diff(polarizer_apply(pass, pol), pass));
        eigen = std::max(eigen, max_abs_diff(polarizer_apply(block, pol), block * pol.mu()));
        const auto q = rng.quaternion();
        forms = std::max(forms, max_abs_diff(polarizer_apply(q, pol), polarizer_apply_conjugate_form(q, pol)));
    }
    return {eigen <= 1e-12 && forms <= 1e-12, "eigen " + sci(eigen) + ", forms " + sci(forms)};
}

Outcome identities() {
    Rng rng(108);
    double conj = 0;
    bool classes = true;
    for (int n = 0; n < 1000; ++n) {
        const auto q = rng.quaternion();
        for (Axis a : {Axis::i, Axis::j, Axis::k}) {
            const auto v = basis<double>(a);
            conj = std::max(conj, max_abs_diff(partial_conjugate(q, a), -(v * conjugate(q) * v)));
            // componentwise: scalar and v part kept, the rest negated
            const Quaternion cw = Quaternion(q.q0, 0, 0, 0) - vector_part(q) + v * (2 * dot(q, v));
            conj = std::max(conj, max_abs_diff(double_conjugate(q, a), cw));
        }
        const double phi = rng.uniform(-pi, pi), r = rng.uniform(0.1, 5);
        const auto s = stokes(orthogonal_sop(q, phi)).quaternion();
        conj = std::max(conj, max_abs_diff(s, -stokes(q).quaternion()) / std::max(1.0, norm_squared(q)));
        const double same_phase = rng.uniform(0.1, 1.4);
        classes = classes &&
                  classify_orthogonality(q, r * orthogonal_sop(q, phi)) == OrthogonalityClass::OrthogonalSOP &&
                  classify_orthogonality(q, r * apply_phase(q, same_phase)) == OrthogonalityClass::SameSOP &&
                  classify_orthogonality(q, r * (Quaternion::i() * q)) == OrthogonalityClass::SameSOPOrthogonalPhase &&
                  classify_orthogonality(q, -r * (Quaternion::i() * q)) == OrthogonalityClass::SameSOPOrthogonalPhase;
    }
    return {conj <= 1e-12 && classes, "max " + sci(conj) + (classes ? ", classes ok" : ", class mismatch")};
}

Outcome inversion() {
    Rng rng(109);
    double regular = 0, family = 0;
    for (int n = 0; n < 10000; ++n) {
        const auto p = rng.unit();
        const auto sol = std::get<RegularSolution>(solve_angles(p));
        regular = std::max({regular, norm(forward_transform(sol.branch1) - p), norm(forward_transform(sol.branch2) - p)});
    }
    for (int n = 0; n < 100; ++n) {
        const double t = rng.uniform(-pi, pi);
        const Quaternion pa{0, std::cos(t), 0, std::sin(t)}, pb{std::cos(t), 0, std::sin(t), 0};
        for (const auto& a : std::get<SingularAFamily>(solve_angles(pa)).samples(16)) {
            family = std::max(family, norm(forward_transform(a) - pa));
        }
        for (const auto& a : std::get<SingularBFamily>(solve_angles(pb)).samples(16)) {
            family = std::max(family, norm(forward_transform(a) - pb));
        }
    }
    return {regular <= 1e-9 && family <= 1e-9, "regular " + sci(regular) + ", families " + sci(family)};
}

Outcome regular_ramp() {
    const auto phis = full_turn_phases(256);
    const auto samples = ramp_trajectory<double>(regular_q, regular_r, phis, BranchPolicy::Branch1);
    const auto records = ramp_records(regular_q, samples);
    double residual = 0, eps = 0, theta = 0, linear = 0, unwrapped = records.front().out_phase;
    for (std::size_t m = 0; m < records.size(); ++m) {
        const auto& rec = records[m];
        residual = std::max(residual, rec.residual);
        eps = std::max(eps, std::abs(rec.out_epsilon - records.front().out_epsilon));
        theta = std::max(theta, std::abs(rec.out_theta - records.front().out_theta));
        if (m > 0) unwrapped += std::remainder(rec.out_phase - records[m - 1].out_phase, 2 * pi);
        linear = std::max(linear, std::abs((unwrapped - records.front().out_phase) - rec.phi));
    }
    // the last sample sits one step short of a full turn
    const double span = unwrapped - records.front().out_phase + (phis[1] - phis[0]);
    const bool ok = residual <= 1e-9 && eps <= 1e-8 && theta <= 1e-8 && linear <= 1e-8 &&
                    std::abs(span - 2 * pi) <= 1e-8;
    return {ok, "residual " + sci(residual) + ", eps " + sci(eps) + ", theta " + sci(theta) + ", phase " + sci(linear) +
                    ", span err " + sci(std::abs(span - 2 * pi))};
}

Outcome crossing_ramp() {
    const double eq = to_ellipse(crossing_q).epsilon, er = to_ellipse(crossing_r).epsilon;
    const bool same_eps = std::abs(eq + 0.23) <= 0.01 && std::abs(er + 0.23) <= 0.01;
    const auto phis = full_turn_phases(256);
    const auto fixed = ramp_trajectory<double>(crossing_q, crossing_r, phis, BranchPolicy::Branch1);
    const auto records = ramp_records(crossing_q, fixed);
    int crossings = 0;
    bool steps = true;
    double residual = 0, sop = 0, phase = 0, off = 0;
    const double phase0 = relative_phase(crossing_q * forward_transform(fixed.front().angles), crossing_r, off);
    for (std::size_t m = 0; m < fixed.size(); ++m) {
        const auto& s = fixed[m];
        residual = std::max(residual, s.residual);
        sop = std::max({sop, std::abs(records[m].out_epsilon - records.front().out_epsilon),
                        std::abs(records[m].out_theta - records.front().out_theta)});
        const double chi = relative_phase(crossing_q * forward_transform(s.angles), crossing_r, off);
        phase = std::max(phase, std::abs(std::remainder(chi - s.phi - phase0, 2 * pi)));
        if (s.singular_crossing) {
            ++crossings;
            steps = steps && std::abs(s.step - pi / 2) <= 0.1;
        }
    }
    // the continuous policy flags the same rows and passes them by switching branch
    const auto smooth = ramp_trajectory<double>(crossing_q, crossing_r, phis);
    bool switches = true;
    for (std::size_t m = 1; m < smooth.size(); ++m) {
        if (smooth[m].singular_crossing != fixed[m].singular_crossing) switches = false;
        if (smooth[m].singular_crossing && smooth[m].branch == smooth[m - 1].branch) switches = false;
    }
    const bool ok = same_eps && crossings == 2 && steps && residual <= 1e-9 && sop <= 1e-8 && phase <= 1e-8 && switches;
    return {ok, "eps " + std::to_string(eq).substr(0, 7) + "/" + std::to_string(er).substr(0, 7) + ", crossings " +
                    std::to_string(crossings) + (steps ? ", steps ~pi/2" : ", step mismatch") + ", residual " +
                    sci(residual) + (switches ? "" : ", continuous policy disagrees")};
}

Outcome five_plate() {
    const auto stack = testing::five_plate_stack(regular_q, regular_r);
    double off = 0, worst_off = 0, worst = 0;
    const double base = relative_phase(regular_q * stack.at(0.0).transform(), regular_r, off);
    worst_off = off;
    for (int m = 1; m <= 30; ++m) {
        const double alpha = 0.1 * m;
        const double chi = relative_phase(regular_q * stack.at(alpha).transform(), regular_r, off);
        worst_off = std::max(worst_off, off);
        worst = std::max(worst, std::abs(std::remainder(chi - base - 2 * alpha, 2 * pi)));
    }
    return {worst <= 1e-9 && worst_off <= 1e-9, "phase err " + sci(worst) + ", residual " + sci(worst_off)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"base algebra", base_algebra},
        {"oracle anti-homomorphism", oracle_anti_homomorphism},
        {"waveplate golden values", table1_golden},
        {"signal golden values", table2_golden},
        {"stokes equivalence", stokes_equivalence},
        {"precession", precession},
        {"partial polarizer", polarizer},
        {"conjugation and orthogonality identities", identities},
        {"phase-shifter inversion", inversion},
        {"constant-SOP phase ramp", regular_ramp},
        {"ramp through singular states", crossing_ramp},
        {"five-plate central HWP phase", five_plate},
    };
    int failures = 0;
    for (std::size_t n = 0; n < criteria.size(); ++n) {
        Outcome o{false, ""};
        try {
            o = criteria[n].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %2zu %-42s %s\n", o.passed ? "PASS" : "FAIL", n + 1, criteria[n].first.c_str(), o.detail.c_str());
        if (!o.passed) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
