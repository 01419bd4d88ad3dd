#pragma once

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "openmap/dynamics.hpp"
#include "openmap/maps.hpp"
#include "openmap/models.hpp"
#include "openmap/states.hpp"

namespace openmap {

using json = nlohmann::json;

enum class Output { Trajectory, MapEigenvalues, Classification, Correlation, Discord };

inline std::string to_string(Output o) {
    switch (o) {
        case Output::Trajectory: return "trajectory";
        case Output::MapEigenvalues: return "map_eigenvalues";
        case Output::Classification: return "classification";
        case Output::Correlation: return "correlation";
        default: return "discord";
    }
}

inline Output output_from_string(const std::string& s) {
    if (s == "trajectory") return Output::Trajectory;
    if (s == "map_eigenvalues") return Output::MapEigenvalues;
    if (s == "classification") return Output::Classification;
    if (s == "correlation") return Output::Correlation;
    if (s == "discord") return Output::Discord;
    throw ConfigInvalidError("unknown output '" + s + "'");
}

inline std::string to_string(Topology t) {
    switch (t) {
        case Topology::Closed: return "closed";
        case Topology::BathTwoOnQubit2: return "bath2_on_mode";
        default: return "bath1_on_both";
    }
}

inline Topology topology_from_string(const std::string& s) {
    if (s == "closed") return Topology::Closed;
    if (s == "bath2_on_mode") return Topology::BathTwoOnQubit2;
    if (s == "bath1_on_both") return Topology::BathOneOnBoth;
    throw ConfigInvalidError("unknown topology '" + s + "'");
}

struct ScenarioConfig {
    std::string scenario = "custom";
    ModelParams model;
    Topology topology = Topology::Closed;
    InitialStateSpec initial;
    TimeGrid grid;
    std::vector<Output> outputs = {Output::Trajectory, Output::MapEigenvalues,
                                   Output::Classification};
    std::uint64_t seed = kDefaultSeed;

    bool wants(Output o) const {
        for (Output x : outputs)
            if (x == o) return true;
        return false;
    }
};

inline void validate_config(const ScenarioConfig& cfg) {
    if (cfg.initial.qubits() != qubit_count(cfg.topology)) {
        std::ostringstream msg;
        msg << "initial state has " << cfg.initial.qubits() << " qubits but topology '"
            << to_string(cfg.topology) << "' needs " << qubit_count(cfg.topology);
        throw ConfigInvalidError(msg.str());
    }
    if (cfg.outputs.empty()) throw ConfigInvalidError("outputs must not be empty");
    if (cfg.scenario.empty()) throw ConfigInvalidError("scenario name must not be empty");
    for (char c : cfg.scenario)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_'))
            throw ConfigInvalidError("scenario name may only use [A-Za-z0-9_-]");
}

// resolved form; also the canonical serialization hashed into manifests
inline json to_json(const ScenarioConfig& cfg) {
    json j;
    j["scenario"] = cfg.scenario;
    j["model"] = {{"epsilon", cfg.model.epsilon},
                  {"varepsilon_k0", cfg.model.varepsilon_k0},
                  {"v", cfg.model.v},
                  {"j_zz", cfg.model.j_zz}};
    j["topology"] = to_string(cfg.topology);
    json init;
    using Family = InitialStateSpec::Family;
    switch (cfg.initial.family) {
        case Family::PureComputational:
            init["family"] = "pure";
            init["bits"] = cfg.initial.bits;
            break;
        case Family::EntangledPair:
            init["family"] = "entangled";
            init["alpha0"] = cfg.initial.alpha0;
            init["alpha1"] = cfg.initial.alpha1;
            init["bath_qubits"] = cfg.initial.bath_qubits;
            break;
        case Family::CorrelatedMixture:
            init["family"] = "mixture";
            init["p"] = cfg.initial.p;
            init["bath_qubits"] = cfg.initial.bath_qubits;
            break;
        case Family::TiltedProduct:
            init["family"] = "tilted";
            init["a1"] = cfg.initial.a1;
            init["a3"] = cfg.initial.a3;
            init["partner"] = cfg.initial.partner == InitialStateSpec::Partner::MatchingTilt
                                  ? "matching_tilt"
                                  : "spin_down";
            init["bath_qubits"] = cfg.initial.bath_qubits;
            break;
    }
    j["initial_state"] = init;
    j["grid"] = {{"start", cfg.grid.t_start}, {"end", cfg.grid.t_end}, {"samples", cfg.grid.steps}};
    json outs = json::array();
    for (Output o : cfg.outputs) outs.push_back(to_string(o));
    j["outputs"] = outs;
    j["seed"] = cfg.seed;
    return j;
}

namespace detail {

inline void require_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) known = true;
        if (!known) throw ConfigInvalidError("unknown key '" + it.key() + "' in " + where);
    }
}

inline double get_number(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigInvalidError(std::string(key) + " must be a number");
    return j.at(key).get<double>();
}

inline std::string get_string(const json& j, const char* key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_string()) throw ConfigInvalidError(std::string(key) + " must be a string");
    return j.at(key).get<std::string>();
}

inline int get_int(const json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer())
        throw ConfigInvalidError(std::string(key) + " must be an integer");
    return j.at(key).get<int>();
}

inline InitialStateSpec parse_initial(const json& j) {
    if (j.contains("preset")) {
        require_keys(j, {"preset"}, "initial_state");
        return state_preset(get_string(j, "preset", ""));
    }
    InitialStateSpec spec;
    const std::string family = get_string(j, "family", "");
    if (family == "pure") {
        require_keys(j, {"family", "bits"}, "initial_state");
        spec.family = InitialStateSpec::Family::PureComputational;
        spec.bits = get_string(j, "bits", spec.bits);
    } else if (family == "entangled") {
        require_keys(j, {"family", "alpha0", "alpha1", "bath_qubits"}, "initial_state");
        spec.family = InitialStateSpec::Family::EntangledPair;
        spec.alpha0 = get_number(j, "alpha0", spec.alpha0);
        spec.alpha1 = get_number(j, "alpha1", spec.alpha1);
        spec.bath_qubits = get_int(j, "bath_qubits", 0);
    } else if (family == "mixture") {
        require_keys(j, {"family", "p", "bath_qubits"}, "initial_state");
        spec.family = InitialStateSpec::Family::CorrelatedMixture;
        spec.p = get_number(j, "p", spec.p);
        spec.bath_qubits = get_int(j, "bath_qubits", 0);
    } else if (family == "tilted") {
        require_keys(j, {"family", "a1", "a3", "partner", "bath_qubits"}, "initial_state");
        spec.family = InitialStateSpec::Family::TiltedProduct;
        spec.a1 = get_number(j, "a1", spec.a1);
        spec.a3 = get_number(j, "a3", spec.a3);
        const std::string partner = get_string(j, "partner", "matching_tilt");
        if (partner == "matching_tilt")
            spec.partner = InitialStateSpec::Partner::MatchingTilt;
        else if (partner == "spin_down")
            spec.partner = InitialStateSpec::Partner::SpinDown;
        else
            throw ConfigInvalidError("unknown partner '" + partner + "'");
        spec.bath_qubits = get_int(j, "bath_qubits", 0);
    } else {
        throw ConfigInvalidError("initial_state.family must be one of "
                                 "pure|entangled|mixture|tilted, got '" +
                                 family + "'");
    }
    if (spec.bath_qubits < 0 || spec.bath_qubits > 2)
        throw ConfigInvalidError("bath_qubits must be 0, 1 or 2");
    return spec;
}

}  // namespace detail

inline ScenarioConfig scenario_preset(const std::string& name);

// Strict: unknown keys anywhere are an error. A top-level "preset" pulls a
// catalogue entry and permits only grid/outputs/seed overrides next to it.
inline ScenarioConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigInvalidError("config must be a JSON object");
    ScenarioConfig cfg;
    if (j.contains("preset")) {
        detail::require_keys(j, {"preset", "grid", "outputs", "seed"}, "config");
        cfg = scenario_preset(detail::get_string(j, "preset", ""));
    } else {
        detail::require_keys(
            j, {"scenario", "model", "topology", "initial_state", "grid", "outputs", "seed"},
            "config");
        cfg.scenario = detail::get_string(j, "scenario", cfg.scenario);
        if (j.contains("model")) {
            const json& m = j.at("model");
            detail::require_keys(m, {"epsilon", "varepsilon_k0", "v", "j_zz"}, "model");
            cfg.model.epsilon = detail::get_number(m, "epsilon", cfg.model.epsilon);
            cfg.model.varepsilon_k0 = detail::get_number(m, "varepsilon_k0", cfg.model.varepsilon_k0);
            cfg.model.v = detail::get_number(m, "v", cfg.model.v);
            cfg.model.j_zz = detail::get_number(m, "j_zz", cfg.model.j_zz);
        }
        if (j.contains("topology"))
            cfg.topology = topology_from_string(detail::get_string(j, "topology", ""));
        if (j.contains("initial_state")) cfg.initial = detail::parse_initial(j.at("initial_state"));
    }
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        detail::require_keys(g, {"start", "end", "samples"}, "grid");
        cfg.grid.t_start = detail::get_number(g, "start", cfg.grid.t_start);
        cfg.grid.t_end = detail::get_number(g, "end", cfg.grid.t_end);
        cfg.grid.steps = detail::get_int(g, "samples", cfg.grid.steps);
    }
    if (j.contains("outputs")) {
        if (!j.at("outputs").is_array())
            throw ConfigInvalidError("outputs must be an array of strings");
        cfg.outputs.clear();
        for (const json& o : j.at("outputs")) {
            if (!o.is_string()) throw ConfigInvalidError("outputs entries must be strings");
            cfg.outputs.push_back(output_from_string(o.get<std::string>()));
        }
    }
    if (j.contains("seed")) {
        const json& s = j.at("seed");
        if (!(s.is_number_unsigned() ||
              (s.is_number_integer() && s.get<std::int64_t>() >= 0)))
            throw ConfigInvalidError("seed must be a nonnegative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    cfg.grid.validate();
    validate_config(cfg);
    return cfg;
}

inline ScenarioConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigParseError("config '" + path.string() + "': " + e.what());
    }
    return parse_config(j);
}

struct ScenarioPreset {
    std::string name;
    std::string summary;
    ScenarioConfig config;
};

inline const std::vector<ScenarioPreset>& scenario_catalogue() {
    static const std::vector<ScenarioPreset> entries = [] {
        std::vector<ScenarioPreset> v;
        const std::vector<Output> eig_class = {Output::MapEigenvalues, Output::Classification};
        const std::vector<Output> eig_class_discord = {Output::MapEigenvalues,
                                                       Output::Classification, Output::Discord};

        auto add = [&](std::string name, std::string summary, ScenarioConfig cfg) {
            cfg.scenario = name;
            v.push_back({std::move(name), std::move(summary), std::move(cfg)});
        };
        auto pure = [](std::string bits) {
            InitialStateSpec s;
            s.family = InitialStateSpec::Family::PureComputational;
            s.bits = std::move(bits);
            return s;
        };
        auto tilted = [](double a1, double a3, int bath) {
            InitialStateSpec s;
            s.family = InitialStateSpec::Family::TiltedProduct;
            s.a1 = a1;
            s.a3 = a3;
            s.partner = InitialStateSpec::Partner::SpinDown;
            s.bath_qubits = bath;
            return s;
        };

        {
            ScenarioConfig c;
            c.model.epsilon = 8.0;
            c.initial = pure("01");
            c.outputs = eig_class;
            add("fig1", "epsilon=8, varepsilon=-2, V=4, closed, state=|01>", c);
        }
        {
            ScenarioConfig c;
            c.model.j_zz = 8.0;
            c.topology = Topology::BathTwoOnQubit2;
            c.initial = pure("0111");
            c.outputs = eig_class;
            add("fig2", "epsilon=-8, varepsilon=-2, V=4, Jzz=8, state=|0111>", c);
        }
        {
            ScenarioConfig c;
            c.model.j_zz = 0.1;
            c.topology = Topology::BathOneOnBoth;
            c.initial = pure("011");
            c.outputs = eig_class;
            add("fig3", "epsilon=-8, varepsilon=-2, V=4, Jzz=1/10, state=|011>", c);
        }
        {
            ScenarioConfig c;
            c.initial = tilted(0.2, 0.97, 0);
            c.outputs = eig_class;
            add("fig4-caption", "closed, tilted impurity a1=1/5, a3=0.97, mode spin-down", c);
            c.initial.partner = InitialStateSpec::Partner::MatchingTilt;
            add("fig4-text", "closed, tilted impurity a1=1/5, a3=0.97, mode mirrors the tilt", c);
        }
        {
            ScenarioConfig c;
            c.model.j_zz = 0.1;
            c.topology = Topology::BathTwoOnQubit2;
            c.initial = tilted(0.2, 0.97, 2);
            c.outputs = eig_class;
            add("fig5", "two-spin bath on the mode, Jzz=1/10, tilted impurity", c);
        }
        {
            ScenarioConfig c;
            c.model.j_zz = 0.1;
            c.topology = Topology::BathOneOnBoth;
            c.initial = tilted(0.2, 0.97, 1);
            c.outputs = eig_class;
            add("fig6", "one bath spin coupled to both qubits, Jzz=1/10, tilted impurity", c);
        }
        {
            ScenarioConfig c;
            c.model.epsilon = 8.0;
            c.initial = pure("01");
            c.grid.steps = 81;
            c.outputs = {Output::Trajectory};
            add("pic1", "bloch trajectory of |01>, epsilon=8, 81 samples", c);
        }
        {
            ScenarioConfig c;
            c.initial = tilted(0.2, 0.97, 0);
            c.grid.steps = 81;
            c.outputs = {Output::Trajectory};
            add("pic2", "bloch trajectory of the tilted state, epsilon=-8, 81 samples", c);
        }
        {
            ScenarioConfig c;
            c.model.j_zz = 0.1;
            c.topology = Topology::BathOneOnBoth;
            c.initial = pure("011");
            c.outputs = {Output::Correlation};
            add("corr1", "overlap series, one bath spin, Jzz=1/10, state=|011>", c);
        }
        {
            ScenarioConfig c;
            c.model.j_zz = 8.0;
            c.topology = Topology::BathTwoOnQubit2;
            c.initial = pure("0111");
            c.outputs = {Output::Correlation};
            add("corr2", "overlap series, two-spin bath, Jzz=8, state=|0111>", c);
        }
        {
            ScenarioConfig c;
            c.initial = tilted(0.2, 0.95, 0);
            c.outputs = {Output::Correlation};
            add("corr3", "overlap series, closed, tilted impurity a1=1/5, a3=0.95", c);
        }

        for (const char* bits : {"00", "01", "10", "11"}) {
            ScenarioConfig c;
            c.initial = pure(bits);
            c.outputs = eig_class;
            add(std::string("A1-") + bits, std::string("closed, state=|") + bits + ">", c);
        }
        {
            ScenarioConfig c;
            c.initial.family = InitialStateSpec::Family::EntangledPair;
            c.outputs = eig_class_discord;
            add("A2-entangled", "closed, (|01> + |10>)/sqrt(2)", c);
        }
        {
            ScenarioConfig c;
            c.initial.family = InitialStateSpec::Family::CorrelatedMixture;
            c.outputs = eig_class_discord;
            add("A3-correlated", "closed, even mixture of |10><10| and |00><00|", c);
        }
        for (const char* bits : {"0011", "0111", "1011", "1111"}) {
            ScenarioConfig c;
            c.model.j_zz = 8.0;
            c.topology = Topology::BathTwoOnQubit2;
            c.initial = pure(bits);
            c.outputs = eig_class;
            add(std::string("A4-") + bits,
                std::string("two-spin bath, Jzz=8, state=|") + bits + ">", c);
        }
        {
            ScenarioConfig c;
            c.model.j_zz = 8.0;
            c.topology = Topology::BathTwoOnQubit2;
            c.initial.family = InitialStateSpec::Family::EntangledPair;
            c.initial.bath_qubits = 2;
            c.outputs = eig_class_discord;
            add("A5-entangled-bath", "two-spin bath, Jzz=8, entangled pair + |11> bath", c);
        }
        {
            ScenarioConfig c;
            c.model.j_zz = 8.0;
            c.topology = Topology::BathTwoOnQubit2;
            c.initial.family = InitialStateSpec::Family::CorrelatedMixture;
            c.initial.bath_qubits = 2;
            c.outputs = eig_class_discord;
            add("A6-correlated-bath", "two-spin bath, Jzz=8, correlated mixture + |11> bath", c);
        }
        return v;
    }();
    return entries;
}

inline ScenarioConfig scenario_preset(const std::string& name) {
    const std::string wanted = name == "fig4" ? "fig4-caption" : name;
    for (const ScenarioPreset& p : scenario_catalogue())
        if (p.name == wanted) return p.config;
    throw ConfigInvalidError("unknown preset '" + name + "', see list-presets");
}

}  // namespace openmap
