#ifndef QWALK_TOOLS_RUN_CONFIG_HPP
#define QWALK_TOOLS_RUN_CONFIG_HPP

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qwalk/config.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/presets.hpp"

namespace qwalk::cli {

using nlohmann::json;

/// Fully resolved run parameters. Angles and amplitudes are stored as
/// doubles, so dumping and reloading a config reproduces the run bit for
/// bit.
struct RunConfig {
    enum class Mode { Irreducible, Tensor };

    Mode mode = Mode::Irreducible;
    int j2 = 1;        // doubled spin, irreducible mode
    int m_qubits = 2;  // tensor mode
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    ComplexVector qudit;
    std::vector<long> ts = {100};
    int bins = 201;
    int grid = 201;
    bool auto_normalize = false;
    std::string preset;  // informational: name the values came from

    HalfInt j() const { return HalfInt(j2); }
    EulerAngles angles() const { return {alpha, beta, gamma}; }
};

inline json to_json(const RunConfig& c) {
    json out;
    out["mode"] = (c.mode == RunConfig::Mode::Irreducible) ? "irreducible" : "tensor";
    if (c.mode == RunConfig::Mode::Irreducible)
        out["j2"] = c.j2;
    else
        out["m_qubits"] = c.m_qubits;
    out["alpha"] = c.alpha;
    out["beta"] = c.beta;
    out["gamma"] = c.gamma;
    json amps = json::array();
    for (const Complex& z : c.qudit) amps.push_back({z.real(), z.imag()});
    out["qudit"] = amps;
    out["t"] = c.ts;
    out["bins"] = c.bins;
    out["grid"] = c.grid;
    out["auto_normalize"] = c.auto_normalize;
    if (!c.preset.empty()) out["preset"] = c.preset;
    return out;
}

inline RunConfig config_from_json(const json& in) {
    RunConfig c;
    const std::string mode = in.value("mode", "irreducible");
    if (mode == "irreducible")
        c.mode = RunConfig::Mode::Irreducible;
    else if (mode == "tensor")
        c.mode = RunConfig::Mode::Tensor;
    else
        throw ConfigError("config: unknown mode '" + mode + "'");
    c.j2 = in.value("j2", 1);
    c.m_qubits = in.value("m_qubits", 2);
    c.alpha = in.value("alpha", 0.0);
    c.beta = in.value("beta", 0.0);
    c.gamma = in.value("gamma", 0.0);
    if (in.contains("qudit")) {
        c.qudit.clear();
        for (const auto& pair : in.at("qudit"))
            c.qudit.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
    if (in.contains("t")) c.ts = in.at("t").get<std::vector<long>>();
    c.bins = in.value("bins", 201);
    c.grid = in.value("grid", 201);
    c.auto_normalize = in.value("auto_normalize", false);
    c.preset = in.value("preset", "");
    return c;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json parsed;
    try {
        in >> parsed;
    } catch (const json::exception& e) {
        throw ConfigError("config: bad JSON in '" + path + "': " + e.what());
    }
    return config_from_json(parsed);
}

inline void apply_preset(RunConfig& c, const std::string& name) {
    const Preset* p = find_preset(name);
    if (!p) throw ConfigError("unknown preset '" + name + "' (see the presets subcommand)");
    c.mode = RunConfig::Mode::Irreducible;
    c.j2 = p->j.twice;
    c.alpha = p->angles.alpha;
    c.beta = p->angles.beta;
    c.gamma = p->angles.gamma;
    c.qudit = p->amplitudes;
    c.preset = name;
}

} // namespace qwalk::cli

#endif
