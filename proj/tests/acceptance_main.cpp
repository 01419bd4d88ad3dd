// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any of them fail. Each block recomputes what it needs from
// scratch so a failure points at exactly one claim.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "openmap/openmap.hpp"
#include "support/oracle.hpp"

using namespace openmap;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int num, const char* what, bool ok, const std::string& detail) {
    std::printf("%s  %2d  %s (%s)\n", ok ? "PASS" : "FAIL", num, what, detail.c_str());
    if (!ok) ++failures;
}

std::array<double, 4> sorted4(std::array<double, 4> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::array<double, 4> spectrum4(const Mat& m) {
    const Spectrum s = eig_hermitian(m);
    return sorted4({s.values(0), s.values(1), s.values(2), s.values(3)});
}

double min_eig(const Mat& m) {
    const Spectrum s = eig_hermitian(0.5 * (m + Mat(m.adjoint())));
    return s.values(s.values.size() - 1);
}

Mat tilted_pair(double a1, double a3) {
    InitialStateSpec s;
    s.family = InitialStateSpec::Family::TiltedProduct;
    s.a1 = a1;
    s.a3 = a3;
    s.partner = InitialStateSpec::Partner::SpinDown;
    return build_initial(s);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// 1. the replacement-map scenario is CP at every sample and its eigenvalue
//    pairs are (1 +- b3)/2
void criterion_axial_map() {
    const ScenarioConfig cfg = scenario_preset("fig1");
    const Mat rho0 = build_initial(cfg.initial);
    const Bloch a0 = bloch_of(reduced(rho0));
    const auto traj = trajectory(rho0, h_total(cfg.model, cfg.topology), cfg.grid);
    const std::vector<Mat> domain = domain_family(a0);

    bool all_cp = true;
    double worst_gap = 0.0;
    for (const TrajectorySample& s : traj) {
        const ExtractedMap em = extract_map(a0, s);
        if (classify(em.b, domain).verdict != MapClass::CompletelyPositive) all_cp = false;

        const std::array<double, 4> closed = sorted4(closed_form_eigs(em.a1, em.coeffs));
        const double lo = 0.5 * (1.0 - em.coeffs.b3), hi = 0.5 * (1.0 + em.coeffs.b3);
        const std::array<double, 4> want = sorted4({lo, lo, hi, hi});
        const std::array<double, 4> numeric = spectrum4(em.b);
        for (int k = 0; k < 4; ++k) {
            worst_gap = std::max(worst_gap, std::abs(closed[k] - want[k]));
            worst_gap = std::max(worst_gap, std::abs(numeric[k] - want[k]));
        }
    }
    report(1, "axial scenario is CP with paired eigenvalues (1 +- b3)/2",
           all_cp && worst_gap <= 1e-9, "max eigenvalue gap " + fmt(worst_gap));
}

// 2. both tilted variants leave the CP cone while every generating-state
//    image stays a valid state
void criterion_tilted_ncp() {
    bool some_ncp = false;
    bool images_ok = true;
    std::string mins;
    for (const char* name : {"fig4-caption", "fig4-text"}) {
        const ScenarioConfig cfg = scenario_preset(name);
        const Mat rho0 = build_initial(cfg.initial);
        const Bloch a0 = bloch_of(reduced(rho0));
        const auto traj = trajectory(rho0, h_total(cfg.model, cfg.topology), cfg.grid);

        double min_choi = 0.0;
        for (const TrajectorySample& s : traj) {
            const ExtractedMap em = extract_map(a0, s);
            min_choi = std::min(min_choi, min_eig(em.b));
            const Mat image = apply_choi(em.b, reduced(rho0));
            if (min_eig(image) < -1e-10) images_ok = false;
        }
        if (min_choi < -1e-6) some_ncp = true;
        mins += std::string(name) + " " + fmt(min_choi) + " ";
    }
    report(2, "tilted scenarios are NCP but valid on the generating family",
           some_ncp && images_ok, "min map eigenvalues: " + mins);
}

// 3. a single bath spin coupled through sz to both sites leaves the
//    one-excitation maps exactly at their closed-model values
void criterion_bath_one_closure() {
    InitialStateSpec spec;
    spec.family = InitialStateSpec::Family::PureComputational;
    spec.bits = "011";
    const Mat rho0 = build_initial(spec);
    const Bloch a0{0.0, 0.0, 1.0};
    const TimeGrid grid;

    ModelParams p;  // defaults: epsilon=-8, veps=-2, V=4
    std::vector<std::vector<Mat>> choi_series;
    for (double j : {0.1, 1.0, 8.0}) {
        p.j_zz = j;
        std::vector<Mat> maps;
        for (const TrajectorySample& s :
             trajectory(rho0, h_total(p, Topology::BathOneOnBoth), grid))
            maps.push_back(extract_map(a0, s).b);
        choi_series.push_back(std::move(maps));
    }

    Mat closed0 = Mat::Zero(4, 4);
    closed0(1, 1) = 1.0;
    std::vector<Mat> closed_maps;
    for (const TrajectorySample& s : trajectory(closed0, h_effective(p), grid))
        closed_maps.push_back(extract_map(a0, s).b);

    double worst = 0.0;
    for (std::size_t k = 0; k < closed_maps.size(); ++k) {
        for (const auto& series : choi_series)
            worst = std::max(worst, max_abs(series[k] - closed_maps[k]));
        worst = std::max(worst, max_abs(choi_series[0][k] - choi_series[2][k]));
    }
    report(3, "single-bath maps match the closed model for every coupling",
           worst <= 1e-10, "max map deviation " + fmt(worst));
}

// 4. the two-spin bath visibly shifts the overlap series
void criterion_bath_two_shift() {
    ModelParams p;
    p.j_zz = 8.0;
    InitialStateSpec spec;
    spec.family = InitialStateSpec::Family::PureComputational;
    spec.bits = "0111";
    const TimeGrid grid;
    const std::vector<double> bath =
        g2_series(build_initial(spec), h_total(p, Topology::BathTwoOnQubit2), grid);

    Mat closed0 = Mat::Zero(4, 4);
    closed0(1, 1) = 1.0;
    const std::vector<double> closed = g2_series(closed0, h_effective(p), grid);

    double gap = 0.0;
    for (std::size_t k = 0; k < bath.size(); ++k)
        gap = std::max(gap, std::abs(bath[k] - closed[k]));
    report(4, "two-spin bath shifts the overlap series", gap > 0.01,
           "max overlap gap " + fmt(gap));
}

// 5. transverse closed-form coefficients track the brute-force evolution;
//    the uncorrected longitudinal expression misses its own t=0 limit
void criterion_coefficients() {
    std::mt19937 eng(2026);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst_transverse = 0.0, worst_start = 0.0, min_margin = 1.0;
    for (int trial = 0; trial < 50; ++trial) {
        ModelParams p;
        p.epsilon = 10.0 * u(eng);
        p.varepsilon_k0 = 10.0 * u(eng);
        p.v = 1.0 + 4.0 * std::abs(u(eng));
        const double a1 = 0.1 + 0.8 * std::abs(u(eng));
        const double zmax = std::sqrt(1.0 - a1 * a1);
        const double a3 = std::max(-0.5, zmax * u(eng));
        const double t = 0.05 + 0.95 * std::abs(u(eng));

        const MapCoeffs c = closed_form_coeffs(p, a1, a3, t);
        const Bloch img = bloch_of(reduced(evolve(tilted_pair(a1, a3), h_effective(p), t)));
        worst_transverse = std::max(worst_transverse, std::abs(c.b1 - img.x));
        worst_transverse = std::max(worst_transverse, std::abs(c.b2 - img.y));

        worst_start = std::max(worst_start,
                               std::abs(closed_form_coeffs(p, a1, a3, 0.0).b3 - a3));
        min_margin = std::min(min_margin,
                              std::abs(closed_form_coeffs(p, a1, a3, 0.0, true).b3 - a3));
    }
    report(5, "transverse coefficients match brute force, uncorrected b3 misses t=0",
           worst_transverse <= 1e-9 && worst_start <= 1e-12 && min_margin > 1e-4,
           "max b1/b2 error " + fmt(worst_transverse) + ", uncorrected t=0 gap >= " +
               fmt(min_margin));
}

// 6. closed-form map eigenvalues match the numeric spectrum, and the
//    vanishing-tilt limit is approached superlinearly
void criterion_eigenvalues() {
    std::mt19937 eng(2027);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const double a1 = 0.05 + 0.95 * std::abs(u(eng));
        MapCoeffs c;
        c.b1 = a1 * u(eng);
        c.b2 = a1 * u(eng);
        c.b3 = u(eng);
        const std::array<double, 4> closed = sorted4(closed_form_eigs(a1, c));
        const std::array<double, 4> numeric = spectrum4(template_tilted(a1, c));
        for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(closed[k] - numeric[k]));
    }

    const std::array<double, 4> limit =
        sorted4(closed_form_eigs(0.0, MapCoeffs{0.0, 0.0, 0.8}));
    std::array<double, 3> errs{};
    int idx = 0;
    for (double a1 : {1e-2, 1e-4, 1e-6}) {
        const std::array<double, 4> eigs =
            sorted4(closed_form_eigs(a1, MapCoeffs{a1 * a1, a1 * a1, 0.8}));
        double e = 0.0;
        for (int k = 0; k < 4; ++k) e = std::max(e, std::abs(eigs[k] - limit[k]));
        errs[idx++] = e;
    }
    const bool shrinks = errs[0] > errs[1] && errs[1] > errs[2] &&
                         errs[1] < 1e-2 * errs[0] && errs[2] < 1e-2 * errs[1] &&
                         errs[2] < 1e-9;
    report(6, "map eigenvalue formula matches numerics and its small-tilt limit",
           worst <= 1e-9 && shrinks,
           "max spectrum gap " + fmt(worst) + ", limit errors " + fmt(errs[0]) + " " +
               fmt(errs[1]) + " " + fmt(errs[2]));
}

// 7. the compiled pulse sequence is the partial-swap exponential up to a
//    global phase, with one fixed sign for every angle
void criterion_sequence() {
    const Mat gen = kron(pauli(Axis::X), pauli(Axis::X)) +
                    kron(pauli(Axis::Y), pauli(Axis::Y));
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double theta = 2.0 * M_PI * k / 49.0;
        const Mat u = compile_sequence(theta);
        const Mat want = oracle::expm(cplx(0, -0.5 * theta) * gen);

        // align the global phase on the largest entry
        Eigen::Index r = 0, c = 0;
        want.cwiseAbs().maxCoeff(&r, &c);
        const cplx phase = u(r, c) / want(r, c);
        worst = std::max(worst, std::abs(std::abs(phase) - 1.0));
        worst = std::max(worst, max_abs(u - Mat(phase * want)));
    }
    report(7, "pulse sequence compiles to the partial-swap exponential", worst <= 1e-10,
           "max deviation " + fmt(worst));
}

// 8. the spin Hamiltonian spectrum is the number-conserving spectrum shifted
//    by the mean level
void criterion_spectral_shift() {
    std::mt19937 eng(2028);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        ModelParams p;
        p.epsilon = 10.0 * u(eng);
        p.varepsilon_k0 = 10.0 * u(eng);
        p.v = 0.5 + 4.5 * std::abs(u(eng));
        const double shift = 0.5 * (p.epsilon + p.varepsilon_k0);
        const Spectrum spin = eig_hermitian(h_effective(p));
        const Spectrum fock = eig_hermitian(fermion_hamiltonian(p));
        for (int k = 0; k < 4; ++k)
            worst = std::max(worst, std::abs(spin.values(k) - (fock.values(k) - shift)));
    }
    report(8, "spin spectrum equals the number-conserving spectrum minus the mean level",
           worst <= 1e-12, "max eigenvalue gap " + fmt(worst));
}

// 9. discord separates product, entangled and classical preparations
void criterion_discord() {
    Mat product = Mat::Zero(4, 4);
    product(1, 1) = 1.0;
    const double d_product = quantum_discord(product).discord;

    InitialStateSpec bell;
    bell.family = InitialStateSpec::Family::EntangledPair;
    const double d_bell = quantum_discord(build_initial(bell)).discord;

    Mat classical = Mat::Zero(4, 4);
    classical(0, 0) = 0.5;
    classical(3, 3) = 0.5;
    const double d_classical = quantum_discord(classical).discord;

    report(9, "discord is 0 / 1 / 0 for product, entangled and classical states",
           d_product <= 1e-9 && std::abs(d_bell - 1.0) <= 1e-3 && d_classical <= 1e-3,
           fmt(d_product) + " / " + fmt(d_bell) + " / " + fmt(d_classical));
}

// 10. the overlap deviation grows strictly with the tilt
void criterion_shift_metric() {
    ModelParams p;  // epsilon=-8 defaults
    std::vector<std::pair<double, double>> tilts;
    for (double a1 : {0.1, 0.2, 0.3}) tilts.emplace_back(a1, std::sqrt(1.0 - a1 * a1));
    const auto pts = a1_shift_metric(p, tilts, TimeGrid{});
    const bool ok = pts[0].deviation < pts[1].deviation && pts[1].deviation < pts[2].deviation;
    report(10, "overlap deviation increases strictly with the tilt", ok,
           fmt(pts[0].deviation) + " < " + fmt(pts[1].deviation) + " < " +
               fmt(pts[2].deviation));
}

// 11. every preset runs with validated states and unit-trace maps, and
//     reruns are byte-identical
void criterion_runs() {
    const fs::path root =
        fs::temp_directory_path() / ("openmap_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);

    bool ran_ok = true, identical = true;
    double worst_trace = 0.0;
    std::string why;
    try {
        for (const ScenarioPreset& preset : scenario_catalogue()) {
            const RunResult a = run_scenario(preset.config, root / "a" / preset.name);
            run_scenario(preset.config, root / "b" / preset.name);
            for (const std::string& f : a.files) {
                std::ifstream fa(root / "a" / preset.name / f, std::ios::binary);
                std::ifstream fb(root / "b" / preset.name / f, std::ios::binary);
                std::ostringstream sa, sb;
                sa << fa.rdbuf();
                sb << fb.rdbuf();
                if (sa.str().empty() || sa.str() != sb.str()) {
                    identical = false;
                    why = preset.name + "/" + f + " differs";
                }
            }

            // unit trace of the reshuffled map wherever maps are produced
            if (preset.config.wants(Output::MapEigenvalues)) {
                const Mat rho0 = build_initial(preset.config.initial);
                const Bloch a0 = bloch_of(reduced(rho0));
                for (const TrajectorySample& s :
                     trajectory(rho0, h_total(preset.config.model, preset.config.topology),
                                preset.config.grid)) {
                    const ExtractedMap em = extract_map(a0, s);
                    worst_trace =
                        std::max(worst_trace, std::abs(em.b.trace() - cplx(2.0)));
                }
            }
        }
    } catch (const std::exception& e) {
        ran_ok = false;
        why = e.what();
    }
    fs::remove_all(root);
    report(11, "all presets run validated, unit-trace and byte-stable",
           ran_ok && identical && worst_trace <= 1e-10,
           ran_ok ? ("max trace residual " + fmt(worst_trace) +
                     (identical ? "" : ", " + why))
                  : why);
}

}  // namespace

int main() {
    criterion_axial_map();
    criterion_tilted_ncp();
    criterion_bath_one_closure();
    criterion_bath_two_shift();
    criterion_coefficients();
    criterion_eigenvalues();
    criterion_sequence();
    criterion_spectral_shift();
    criterion_discord();
    criterion_shift_metric();
    criterion_runs();

    std::printf("%d of 11 criteria passed\n", 11 - failures);
    return failures == 0 ? 0 : 1;
}
