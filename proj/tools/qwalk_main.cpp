// Command-line front end: exact simulation of rotation-coin quantum walks
// and their analytic long-time pseudovelocity laws, with CSV/JSON emitters
// for reproducible comparison runs.

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qwalk/qwalk.hpp"
#include "qwalk/config.hpp"
#include "run_config.hpp"

namespace qc = qwalk::cli;
using qwalk::Complex;
using qwalk::ComplexVector;
using qwalk::ConfigError;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitInternal = 4;

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    return out;
}

std::string fmt(double v) { return qwalk::format_double(v); }

void write_sites_csv(const std::string& path, const qwalk::SiteDistribution& dist) {
    auto out = open_output(path);
    out << "x,probability\n";
    for (long x = dist.x_min; x <= dist.x_max(); ++x)
        out << x << "," << fmt(dist.prob(x)) << "\n";
}

void write_histogram_csv(const std::string& path, const qwalk::Histogram& h) {
    auto out = open_output(path);
    out << "y,density\n";
    for (size_t i = 0; i < h.mass.size(); ++i)
        out << fmt(h.center(i)) << "," << fmt(h.density(i)) << "\n";
}

// Emitted analytic densities are cell averages (exact cell mass divided
// by cell width), so a row sum times the width recovers the continuous
// mass even across the inverse-square-root edges.
void write_limit_csv(const std::string& path, const qwalk::LimitDistribution& ld, int grid) {
    auto out = open_output(path);
    out << "# delta_weight," << fmt(ld.delta_weight()) << "\n";
    out << "y,density\n";
    const double radius = ld.support_radius();
    if (radius == 0.0) return;  // pure point mass: no continuous rows
    const double width = 2.0 * radius / grid;
    for (int i = 0; i < grid; ++i) {
        const double lo = -radius + i * width;
        out << fmt(lo + width / 2) << "," << fmt(ld.mass_between(lo, lo + width) / width)
            << "\n";
    }
}

json moment_block(const qwalk::SiteDistribution& dist) {
    json out;
    const double t = static_cast<double>(std::max(dist.t, 1L));
    for (int r = 0; r <= 4; ++r) {
        const double m = qwalk::moment(dist, r);
        out["position"]["r" + std::to_string(r)] = m;
        out["pseudovelocity"]["r" + std::to_string(r)] = m / std::pow(t, r);
    }
    return out;
}

void write_json(const std::string& path, const json& doc) {
    auto out = open_output(path);
    out << doc.dump(2) << "\n";
}

qwalk::Qudit make_qudit(const qc::RunConfig& cfg) {
    const int dim = cfg.j().dimension();
    if (static_cast<int>(cfg.qudit.size()) != dim)
        throw ConfigError("qudit needs " + std::to_string(dim) + " components for spin " +
                          cfg.j().str() + ", got " + std::to_string(cfg.qudit.size()));
    // Accept literals within 1e-9 of unit norm and rescale them exactly;
    // anything further off needs an explicit --auto-normalize.
    const double n2 = qwalk::norm_squared(cfg.qudit);
    if (!cfg.auto_normalize && std::abs(n2 - 1.0) > 1e-9)
        throw ConfigError("qudit squared norm " + qwalk::format_double(n2) +
                          " is not 1 (hint: --auto-normalize)");
    try {
        return qwalk::Qudit(cfg.j(), cfg.qudit, /*auto_normalize=*/true);
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
}

qwalk::ProductQudit make_product_qudit(const qc::RunConfig& cfg) {
    if (static_cast<int>(cfg.qudit.size()) != 2 * cfg.m_qubits)
        throw ConfigError("tensor mode needs 2*M = " + std::to_string(2 * cfg.m_qubits) +
                          " qudit entries (M factor pairs), got " +
                          std::to_string(cfg.qudit.size()));
    std::vector<std::array<Complex, 2>> factors(cfg.m_qubits);
    for (int n = 0; n < cfg.m_qubits; ++n) {
        factors[n] = {cfg.qudit[2 * n], cfg.qudit[2 * n + 1]};
        if (cfg.auto_normalize) {
            const double n2 = std::norm(factors[n][0]) + std::norm(factors[n][1]);
            if (n2 == 0.0) throw ConfigError("zero qubit factor cannot be normalized");
            factors[n][0] /= std::sqrt(n2);
            factors[n][1] /= std::sqrt(n2);
        }
    }
    try {
        return qwalk::ProductQudit(cfg.m_qubits, std::move(factors));
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string(e.what()) + " (hint: --auto-normalize)");
    }
}

qwalk::SiteDistribution simulate_distribution(const qc::RunConfig& cfg, long t) {
    if (cfg.mode == qc::RunConfig::Mode::Tensor)
        return qwalk::tensor_walk_distribution(cfg.m_qubits, cfg.angles(), make_product_qudit(cfg),
                                               t);
    const auto coin = qwalk::rotation_matrix(cfg.j(), cfg.angles());
    return qwalk::distribution(qwalk::evolve(make_qudit(cfg), coin, t));
}

void cmd_simulate(const qc::RunConfig& cfg, const std::string& out_prefix) {
    const long t = cfg.ts.back();
    const auto dist = simulate_distribution(cfg, t);

    write_sites_csv(out_prefix + ".sites.csv", dist);
    json doc;
    doc["config"] = qc::to_json(cfg);
    doc["t"] = t;
    doc["total_probability"] = dist.total();
    doc["moments"] = moment_block(dist);
    doc["files"] = {out_prefix + ".sites.csv"};
    if (t >= 1) {
        const auto hist = qwalk::pseudovelocity_histogram(dist, cfg.bins);
        write_histogram_csv(out_prefix + ".density.csv", hist);
    } else {
        // Everything sits at the origin before the first step.
        auto out = open_output(out_prefix + ".density.csv");
        out << "y,density\n0," << fmt(dist.total()) << "\n";
    }
    doc["files"].push_back(out_prefix + ".density.csv");
    write_json(out_prefix + ".json", doc);
}

json limit_summary(const qc::RunConfig& cfg, const qwalk::LimitDistribution& ld) {
    json doc;
    doc["config"] = qc::to_json(cfg);
    doc["scale_a"] = ld.scale();
    doc["delta_weight"] = ld.delta_weight();
    doc["continuous_mass"] = ld.continuous_mass();
    json modes = json::array();
    for (const auto& mode : ld.modes()) {
        json m;
        m["m2"] = mode.m.twice;
        if (!mode.coefficients.empty()) m["coefficients"] = mode.coefficients;
        modes.push_back(m);
    }
    doc["modes"] = modes;
    for (int r = 0; r <= 4; ++r)
        doc["moments"]["r" + std::to_string(r)] = qwalk::limit_moment(ld, r);
    return doc;
}

void cmd_limit(const qc::RunConfig& cfg, const std::string& out_prefix) {
    if (cfg.mode == qc::RunConfig::Mode::Tensor)
        throw ConfigError("limit mode needs an irreducible spin; reduce the tensor model first");
    const auto ld = qwalk::limit_distribution(cfg.j(), cfg.angles(), make_qudit(cfg));
    write_limit_csv(out_prefix + ".density.csv", ld, cfg.grid);
    json doc = limit_summary(cfg, ld);
    doc["files"] = {out_prefix + ".density.csv"};
    write_json(out_prefix + ".json", doc);
}

void cmd_compare(const qc::RunConfig& cfg, const std::string& out_prefix) {
    if (cfg.mode == qc::RunConfig::Mode::Tensor)
        throw ConfigError("compare mode needs an irreducible spin; reduce the tensor model first");
    const auto qudit = make_qudit(cfg);
    const auto coin = qwalk::rotation_matrix(cfg.j(), cfg.angles());

    std::optional<qwalk::LimitDistribution> ld;
    std::string warning;
    try {
        ld.emplace(qwalk::limit_distribution(cfg.j(), cfg.angles(), qudit));
    } catch (const qwalk::DegenerateCoinError& e) {
        warning = e.what();
        std::cerr << "warning: " << warning << "; emitting simulation only\n";
    }

    std::vector<long> ts = cfg.ts;
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    if (ts.empty() || ts.front() < 1) throw ConfigError("compare needs positive time steps");

    json report = json::array();
    qwalk::WaveFunction psi = qwalk::initial_state(qudit);
    qwalk::SiteDistribution final_dist;
    long t = 0;
    for (long target : ts) {
        while (t < target) {
            psi = qwalk::step(psi, coin);
            ++t;
        }
        const auto dist = qwalk::distribution(psi);
        json row;
        row["t"] = t;
        for (int r = 1; r <= 4; ++r) {
            const double sim = qwalk::moment(dist, r) / std::pow(static_cast<double>(t), r);
            json entry;
            entry["simulated"] = sim;
            if (ld) {
                const double lim = qwalk::limit_moment(*ld, r);
                entry["limit"] = lim;
                entry["abs_gap"] = std::abs(sim - lim);
            }
            row["r" + std::to_string(r)] = entry;
        }
        report.push_back(row);
        final_dist = dist;
    }

    const auto hist = qwalk::pseudovelocity_histogram(final_dist, cfg.bins);
    auto out = open_output(out_prefix + ".compare.csv");
    out << "# preset," << (cfg.preset.empty() ? "none" : cfg.preset) << "\n";
    out << "# t," << ts.back() << "\n";
    out << "# delta_weight," << fmt(ld ? ld->delta_weight() : 0.0) << "\n";
    if (ld) {
        out << "y,simulated_density,limit_density\n";
        for (size_t i = 0; i < hist.mass.size(); ++i) {
            const double lo = hist.y_min + i * hist.width;
            out << fmt(hist.center(i)) << "," << fmt(hist.density(i)) << ","
                << fmt(ld->mass_between(lo, lo + hist.width) / hist.width) << "\n";
        }
    } else {
        out << "y,simulated_density\n";
        for (size_t i = 0; i < hist.mass.size(); ++i)
            out << fmt(hist.center(i)) << "," << fmt(hist.density(i)) << "\n";
    }
    out.close();

    json doc;
    doc["config"] = qc::to_json(cfg);
    doc["moment_report"] = report;
    if (ld) {
        doc["limit"] = limit_summary(cfg, *ld);
    } else {
        doc["warning"] = warning;
    }
    doc["files"] = {out_prefix + ".compare.csv"};
    write_json(out_prefix + ".json", doc);
}

void cmd_reduce(const qc::RunConfig& cfg, const std::string& out_prefix) {
    if (cfg.mode != qc::RunConfig::Mode::Tensor)
        throw ConfigError("reduce needs --m-qubits (tensor mode)");
    const auto qudit = make_product_qudit(cfg);
    const auto decomposition = qwalk::decompose_initial(qudit);
    const long t_max = cfg.ts.back();

    json blocks = json::array();
    for (const auto& block : decomposition.blocks) {
        json b;
        b["j2"] = block.j.twice;
        b["copy"] = block.copy;
        b["weight"] = block.weight;
        if (block.qudit) {
            json amps = json::array();
            for (const Complex& z : block.qudit->amplitudes())
                amps.push_back({z.real(), z.imag()});
            b["qudit"] = amps;
        } else {
            b["qudit"] = nullptr;
        }
        blocks.push_back(b);
    }

    // Deviation of the full model from the weighted mixture of its
    // irreducible blocks, over all sites and times up to t_max.
    double max_dev = 0.0;
    for (long t = 0; t <= t_max; ++t) {
        const auto full = qwalk::tensor_walk_distribution(cfg.m_qubits, cfg.angles(), qudit, t);
        std::vector<qwalk::SiteDistribution> parts;
        for (const auto& block : decomposition.blocks)
            if (block.qudit)
                parts.push_back(qwalk::distribution(qwalk::evolve(
                    *block.qudit, qwalk::rotation_matrix(block.j, cfg.angles()), t)));
        for (long x = full.x_min; x <= full.x_max(); ++x) {
            double mixture = 0.0;
            size_t idx = 0;
            for (const auto& block : decomposition.blocks) {
                if (!block.qudit) continue;
                mixture += block.weight * parts[idx++].prob(x);
            }
            max_dev = std::max(max_dev, std::abs(full.prob(x) - mixture));
        }
    }

    json doc;
    doc["config"] = qc::to_json(cfg);
    doc["blocks"] = blocks;
    doc["total_weight"] = decomposition.total_weight();
    doc["decomposition_max_deviation"] = max_dev;
    doc["t_max"] = t_max;
    write_json(out_prefix + ".json", doc);
    std::cout << "decomposition max deviation over t<=" << t_max << ": " << fmt(max_dev) << "\n";
}

void cmd_presets() {
    for (const auto& p : qwalk::presets()) {
        std::cout << p.name << ": spin " << p.j.str() << ", angles (" << fmt(p.angles.alpha)
                  << ", " << fmt(p.angles.beta) << ", " << fmt(p.angles.gamma) << "), qudit";
        for (const Complex& z : p.amplitudes)
            std::cout << " (" << fmt(z.real()) << (z.imag() < 0 ? "" : "+") << fmt(z.imag())
                      << "i)";
        std::cout << "\n";
    }
}

/// Options shared by the run subcommands, gathered as raw strings so the
/// resolution order (config file, then preset, then explicit flags) is
/// explicit in resolve().
struct RawOptions {
    std::string config_path;
    std::string preset;
    std::string j_text;
    int m_qubits = 0;
    std::string alpha, beta, gamma;
    std::string qudit_text;
    std::vector<long> ts;
    int bins = 0;
    int grid = 0;
    bool auto_normalize = false;
    std::string dump_config;
    std::string out = "qwalk";
    int jobs = 1;

    CLI::Option* j_opt = nullptr;
    CLI::Option* m_opt = nullptr;

    void attach(CLI::App& cmd, bool tensor_only = false) {
        cmd.add_option("--config", config_path, "load a config JSON written by --dump-config");
        if (!tensor_only) {
            cmd.add_option("--preset", preset,
                           "named configuration (fig2a fig2b fig3a fig3b fig4a fig4b, or 'all')");
            j_opt = cmd.add_option("--j", j_text, "spin label: 1/2, 1, 3/2, ... (up to 20)");
        }
        m_opt = cmd.add_option("--m-qubits", m_qubits, "tensor model with M qubit factors (2 or 3)");
        cmd.add_option("--alpha", alpha, "Euler angle alpha in radians (pi sugar: -3pi/2)");
        cmd.add_option("--beta", beta, "Euler angle beta in radians");
        cmd.add_option("--gamma", gamma, "Euler angle gamma in radians");
        cmd.add_option("--qudit", qudit_text,
                       "comma-separated complex amplitudes a+bi, ordered q_j ... q_-j");
        cmd.add_option("--t", ts, "time steps (repeatable for compare)");
        cmd.add_option("--bins", bins, "pseudovelocity histogram bins (default 201)");
        cmd.add_option("--grid", grid, "analytic density sample points (default 201)");
        cmd.add_flag("--auto-normalize", auto_normalize, "rescale the qudit to unit norm");
        cmd.add_option("--dump-config", dump_config, "write the resolved config JSON here");
        cmd.add_option("--out", out, "output path prefix");
        cmd.add_option("--jobs", jobs, "parallel workers for --preset all");
    }

    qc::RunConfig resolve() const {
        qc::RunConfig cfg;
        if (!config_path.empty()) cfg = qc::load_config(config_path);
        if (!preset.empty() && preset != "all") qc::apply_preset(cfg, preset);
        if (j_opt && j_opt->count()) {
            cfg.mode = qc::RunConfig::Mode::Irreducible;
            cfg.j2 = qwalk::parse_spin(j_text).twice;
        }
        if (m_opt && m_opt->count()) {
            cfg.mode = qc::RunConfig::Mode::Tensor;
            cfg.m_qubits = m_qubits;
        }
        if (!alpha.empty()) cfg.alpha = qwalk::parse_angle(alpha);
        if (!beta.empty()) cfg.beta = qwalk::parse_angle(beta);
        if (!gamma.empty()) cfg.gamma = qwalk::parse_angle(gamma);
        if (!qudit_text.empty()) cfg.qudit = qwalk::parse_qudit(qudit_text);
        if (!ts.empty()) cfg.ts = ts;
        if (bins > 0) cfg.bins = bins;
        if (grid > 0) cfg.grid = grid;
        if (auto_normalize) cfg.auto_normalize = true;
        if (cfg.ts.empty()) throw ConfigError("at least one --t value is required");
        for (long t : cfg.ts)
            if (t < 0) throw ConfigError("time steps must be non-negative");
        if (cfg.qudit.empty()) throw ConfigError("no qudit given (use --qudit or --preset)");
        return cfg;
    }
};

template <class Runner>
void run_maybe_all(const RawOptions& raw, const Runner& runner) {
    if (raw.preset != "all") {
        const qc::RunConfig cfg = raw.resolve();
        if (!raw.dump_config.empty()) write_json(raw.dump_config, qc::to_json(cfg));
        runner(cfg, raw.out);
        return;
    }

    if (!raw.dump_config.empty())
        throw ConfigError("--dump-config applies to single-preset runs");
    std::vector<std::pair<qc::RunConfig, std::string>> runs;
    for (const auto& p : qwalk::presets()) {
        RawOptions one = raw;
        one.preset = p.name;
        runs.emplace_back(one.resolve(), raw.out + "." + p.name);
    }
    const int jobs = std::max(1, raw.jobs);
    std::vector<std::future<void>> pending;
    for (const auto& [cfg, out] : runs) {
        if (jobs == 1) {
            runner(cfg, out);
            continue;
        }
        if (static_cast<int>(pending.size()) >= jobs) {
            pending.front().get();
            pending.erase(pending.begin());
        }
        pending.push_back(std::async(std::launch::async, runner, cfg, out));
    }
    for (auto& f : pending) f.get();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rotation-coin quantum walks: exact simulation and long-time limit laws"};
    app.require_subcommand(1);

    RawOptions sim_raw, limit_raw, compare_raw, reduce_raw;

    CLI::App* sim = app.add_subcommand("simulate", "evolve a walk and emit site/density tables");
    sim_raw.attach(*sim);
    CLI::App* lim = app.add_subcommand("limit", "emit the analytic limit density and moments");
    limit_raw.attach(*lim);
    CLI::App* cmp = app.add_subcommand(
        "compare", "simulate and overlay the analytic limit; report moment gaps");
    compare_raw.attach(*cmp);
    CLI::App* red = app.add_subcommand(
        "reduce", "decompose a tensor-product model into irreducible blocks");
    reduce_raw.attach(*red, /*tensor_only=*/true);
    CLI::App* pre = app.add_subcommand("presets", "list the named configurations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sim->parsed()) run_maybe_all(sim_raw, cmd_simulate);
        if (lim->parsed()) run_maybe_all(limit_raw, cmd_limit);
        if (cmp->parsed()) run_maybe_all(compare_raw, cmd_compare);
        if (red->parsed()) {
            const qc::RunConfig cfg = reduce_raw.resolve();
            if (!reduce_raw.dump_config.empty())
                write_json(reduce_raw.dump_config, qc::to_json(cfg));
            cmd_reduce(cfg, reduce_raw.out);
        }
        if (pre->parsed()) cmd_presets();
    } catch (const qwalk::DegenerateCoinError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const qwalk::DegenerateAngleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const qwalk::ConsistencyError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
