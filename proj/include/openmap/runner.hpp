#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "openmap/analysis.hpp"
#include "openmap/maps.hpp"
#include "openmap/scenario.hpp"

namespace openmap {

constexpr const char* kLibraryVersion = "0.1.0";

// enough digits to round-trip a double exactly
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex16(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline std::string input_hash(const ScenarioConfig& cfg) {
    return hex16(fnv1a64(to_json(cfg).dump()));
}

namespace detail {

inline void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

inline json complex_matrix_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
    }
    return rows;
}

}  // namespace detail

// one-parameter family of impurity states the reconstructed map is defined
// on: transverse component pinned to the generating state, z free
inline std::vector<Mat> domain_family(const Bloch& initial, int count = 41) {
    std::vector<Mat> out;
    out.reserve(count + 1);
    out.push_back(state_of_bloch(initial));
    const double zmax = std::sqrt(std::max(0.0, 1.0 - initial.x * initial.x));
    for (int k = 0; k < count; ++k) {
        const double z = count > 1 ? -zmax + 2.0 * zmax * k / (count - 1) : 0.0;
        out.push_back(state_of_bloch({initial.x, 0.0, z}));
    }
    return out;
}

struct RunResult {
    ScenarioConfig config;
    std::filesystem::path out_dir;
    std::vector<std::string> files;  // names of files written, sorted

    std::vector<double> times;
    std::vector<Bloch> bloch;                        // trajectory output
    std::vector<std::array<double, 4>> eigenvalues;  // map eigenvalue output
    std::vector<MapCoeffs> coeffs;
    std::vector<MapClass> verdicts;  // classification output
    std::vector<double> g2;          // correlation output
    std::vector<double> discord;     // discord output

    MapClass verdict_overall = MapClass::CompletelyPositive;
    double min_choi_eigenvalue = 0.0;
    double time_of_min = 0.0;
};

inline RunResult run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
    validate_config(cfg);
    const auto wall0 = std::chrono::steady_clock::now();
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir.string() + "'");

    const Mat h = h_total(cfg.model, cfg.topology);
    const Mat rho0 = build_initial(cfg.initial);
    const std::vector<TrajectorySample> traj = trajectory(rho0, h, cfg.grid);
    const Bloch a0 = bloch_of(reduced(rho0));

    RunResult res;
    res.config = cfg;
    res.out_dir = out_dir;
    res.times = cfg.grid.times();

    auto emit = [&](const std::string& name, const std::string& content) {
        detail::write_text(out_dir / name, content);
        res.files.push_back(name);
    };

    if (cfg.wants(Output::Trajectory)) {
        std::string csv = "t,ax,ay,az\n";
        for (const TrajectorySample& s : traj) {
            res.bloch.push_back(s.bloch);
            csv += fmt17(s.t) + "," + fmt17(s.bloch.x) + "," + fmt17(s.bloch.y) + "," +
                   fmt17(s.bloch.z) + "\n";
        }
        emit("trajectory.csv", csv);
    }

    if (cfg.wants(Output::MapEigenvalues) || cfg.wants(Output::Classification)) {
        const std::vector<Mat> domain = domain_family(a0);
        std::string csv = "t,lambda1,lambda2,lambda3,lambda4,b1,b2,b3,classification\n";
        int counts[3] = {0, 0, 0};
        std::optional<Classification> worst;
        bool first = true;
        for (const TrajectorySample& s : traj) {
            const ExtractedMap em = extract_map(a0, s);
            const std::array<double, 4> eigs = closed_form_eigs(em.a1, em.coeffs);
            const Classification cls = classify(em.b, domain, cfg.seed);
            res.eigenvalues.push_back(eigs);
            res.coeffs.push_back(em.coeffs);
            res.verdicts.push_back(cls.verdict);
            counts[static_cast<int>(cls.verdict)] += 1;
            if (static_cast<int>(cls.verdict) > static_cast<int>(res.verdict_overall))
                res.verdict_overall = cls.verdict;
            if (first || cls.min_choi_eigenvalue < res.min_choi_eigenvalue) {
                res.min_choi_eigenvalue = cls.min_choi_eigenvalue;
                res.time_of_min = s.t;
                worst = cls;
                first = false;
            }
            csv += fmt17(s.t);
            for (double lam : eigs) csv += "," + fmt17(lam);
            csv += "," + fmt17(em.coeffs.b1) + "," + fmt17(em.coeffs.b2) + "," +
                   fmt17(em.coeffs.b3) + "," + to_string(cls.verdict) + "\n";
        }
        if (cfg.wants(Output::MapEigenvalues)) emit("eigenvalues.csv", csv);
        if (cfg.wants(Output::Classification)) {
            json j;
            j["scenario"] = cfg.scenario;
            j["verdict_overall"] = to_string(res.verdict_overall);
            j["counts"] = {{"CP", counts[0]},
                           {"positive_on_domain", counts[1]},
                           {"not_positive_on_domain", counts[2]}};
            j["min_choi_eigenvalue"] = res.min_choi_eigenvalue;
            j["time_of_min"] = res.time_of_min;
            j["cp_tolerance"] = kCpTol;
            if (worst && worst->witness) {
                j["witness"] = {
                    {"time", res.time_of_min},
                    {"state", detail::complex_matrix_json(*worst->witness)},
                    {"output_eigenvalue", worst->witness_output_eigenvalue},
                };
            }
            emit("classification.json", j.dump(2) + "\n");
        }
    }

    if (cfg.wants(Output::Correlation)) {
        res.g2 = g2_series(rho0, h, cfg.grid);
        std::string csv = "t,g2\n";
        for (std::size_t k = 0; k < res.g2.size(); ++k)
            csv += fmt17(res.times[k]) + "," + fmt17(res.g2[k]) + "\n";
        emit("correlation.csv", csv);
    }

    if (cfg.wants(Output::Discord)) {
        const int n = cfg.initial.qubits();
        const Spectrum hs = eig_hermitian(h);
        auto pair_state = [&](double t) {
            const Mat u = unitary_from_spectrum(hs, t);
            const Mat rho_t = u * rho0 * u.adjoint();
            return n == 2 ? rho_t : partial_trace(rho_t, std::vector<int>(n, 2), {1, 2});
        };
        json series = json::array();
        for (double t : res.times) {
            const double d = quantum_discord(pair_state(t)).discord;
            res.discord.push_back(d);
            series.push_back({{"t", t}, {"discord", d}});
        }
        json j;
        j["scenario"] = cfg.scenario;
        j["initial"] = quantum_discord(pair_state(0.0)).discord;
        j["series"] = series;
        emit("discord.json", j.dump(2) + "\n");
    }

    std::sort(res.files.begin(), res.files.end());
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
    json manifest;
    manifest["scenario"] = cfg.scenario;
    manifest["input_hash"] = input_hash(cfg);
    manifest["library_version"] = kLibraryVersion;
    manifest["seed"] = cfg.seed;
    manifest["duration_seconds"] = secs;
    manifest["files"] = res.files;
    detail::write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
    return res;
}

inline const std::vector<std::string>& sweep_fields() {
    static const std::vector<std::string> fields = {"epsilon", "varepsilon_k0", "v",
                                                    "j_zz",    "a1",            "a3",
                                                    "p",       "alpha0",        "alpha1"};
    return fields;
}

inline void apply_field(ScenarioConfig& cfg, const std::string& field, double value) {
    using Family = InitialStateSpec::Family;
    auto need_family = [&](Family f, const char* what) {
        if (cfg.initial.family != f)
            throw ConfigInvalidError("field '" + field + "' needs a " + what + " initial state");
    };
    if (field == "epsilon") {
        cfg.model.epsilon = value;
    } else if (field == "varepsilon_k0") {
        cfg.model.varepsilon_k0 = value;
    } else if (field == "v") {
        cfg.model.v = value;
    } else if (field == "j_zz") {
        cfg.model.j_zz = value;
    } else if (field == "a1") {
        need_family(Family::TiltedProduct, "tilted");
        cfg.initial.a1 = value;
    } else if (field == "a3") {
        need_family(Family::TiltedProduct, "tilted");
        cfg.initial.a3 = value;
    } else if (field == "p") {
        need_family(Family::CorrelatedMixture, "mixture");
        cfg.initial.p = value;
    } else if (field == "alpha0" || field == "alpha1") {
        need_family(Family::EntangledPair, "entangled");
        if (std::abs(value) > 1.0)
            throw ConfigInvalidError("field '" + field + "' must lie in [-1, 1]");
        const double other = std::sqrt(std::max(0.0, 1.0 - value * value));
        if (field == "alpha0") {
            cfg.initial.alpha0 = value;
            cfg.initial.alpha1 = other;
        } else {
            cfg.initial.alpha1 = value;
            cfg.initial.alpha0 = other;
        }
    } else {
        std::string known;
        for (const std::string& f : sweep_fields()) known += (known.empty() ? "" : ", ") + f;
        throw ConfigInvalidError("unknown sweep field '" + field + "', expected one of " + known);
    }
}

struct SweepResult {
    std::filesystem::path out_root;
    std::vector<RunResult> runs;
    std::vector<std::string> files;  // combined files at the root
};

inline SweepResult run_sweep(const ScenarioConfig& base, const std::string& field,
                             const std::vector<std::string>& value_tokens,
                             const std::filesystem::path& out_root) {
    if (value_tokens.empty()) throw ConfigInvalidError("sweep needs at least one value");
    const auto wall0 = std::chrono::steady_clock::now();
    std::vector<double> values;
    for (const std::string& tok : value_tokens) {
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0' || !std::isfinite(v))
            throw ConfigInvalidError("sweep value '" + tok + "' is not a number");
        values.push_back(v);
    }

    SweepResult sw;
    sw.out_root = out_root;
    std::vector<std::string> subdirs;
    for (std::size_t k = 0; k < values.size(); ++k) {
        ScenarioConfig cfg = base;
        apply_field(cfg, field, values[k]);
        const std::string sub = base.scenario + "__" + field + "=" + value_tokens[k];
        subdirs.push_back(sub);
        sw.runs.push_back(run_scenario(cfg, out_root / sub));
    }

    // combined table for the natural per-time column of the scenario
    std::string column;
    if (base.wants(Output::Correlation))
        column = "g2";
    else if (base.wants(Output::Trajectory))
        column = "az";
    else if (base.wants(Output::MapEigenvalues))
        column = "lambda1";
    if (!column.empty()) {
        std::string csv = "t";
        for (const std::string& tok : value_tokens)
            csv += "," + column + "[" + field + "=" + tok + "]";
        csv += "\n";
        const std::vector<double> ts = base.grid.times();
        for (std::size_t i = 0; i < ts.size(); ++i) {
            csv += fmt17(ts[i]);
            for (const RunResult& r : sw.runs) {
                double cell = 0.0;
                if (column == "g2")
                    cell = r.g2[i];
                else if (column == "az")
                    cell = r.bloch[i].z;
                else
                    cell = r.eigenvalues[i][0];
                csv += "," + fmt17(cell);
            }
            csv += "\n";
        }
        detail::write_text(out_root / "combined.csv", csv);
        sw.files.push_back("combined.csv");
    }

    // sensitivity summary when tilting the transverse component directly
    if (field == "a1" && base.wants(Output::Correlation) && base.topology == Topology::Closed &&
        base.initial.family == InitialStateSpec::Family::TiltedProduct) {
        std::vector<std::pair<double, double>> tilts;
        for (double v : values) tilts.emplace_back(v, base.initial.a3);
        std::string csv = "a1,deviation\n";
        for (const ShiftPoint& pt : a1_shift_metric(base.model, tilts, base.grid, base.initial.a3))
            csv += fmt17(pt.a1) + "," + fmt17(pt.deviation) + "\n";
        detail::write_text(out_root / "shift_metric.csv", csv);
        sw.files.push_back("shift_metric.csv");
    }

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
    json manifest;
    manifest["kind"] = "sweep";
    manifest["scenario"] = base.scenario;
    manifest["field"] = field;
    manifest["values"] = value_tokens;
    manifest["input_hash"] = input_hash(base);
    manifest["library_version"] = kLibraryVersion;
    manifest["duration_seconds"] = secs;
    manifest["runs"] = subdirs;
    manifest["files"] = sw.files;
    detail::write_text(out_root / "manifest.json", manifest.dump(2) + "\n");
    return sw;
}

}  // namespace openmap
