// levyruin: batch front end.
//
//   levyruin analyze    --config cfg.json   -> report.json
//   levyruin ruin-exact --config cfg.json   -> ruin_curve.csv
//   levyruin simulate   --config cfg.json   -> estimates.json, samples_u<level>.csv
//   levyruin compare    --config cfg.json   -> compare.csv
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure (partial
// outputs are kept).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "levyruin/config.hpp"
#include "levyruin/errors.hpp"
#include "levyruin/exact_ruin.hpp"
#include "levyruin/monte_carlo.hpp"
#include "levyruin/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace levyruin;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> levels;
    std::optional<std::size_t> n_paths;
    std::optional<double> dt;
    std::optional<double> tol;
};

void add_common_flags(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config, "experiment configuration (JSON)")->required();
    sub->add_option("--seed", o.seed, "Monte Carlo seed");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--levels", o.levels, "comma-separated list of levels u");
    sub->add_option("--n-paths", o.n_paths, "Monte Carlo paths per level");
    sub->add_option("--dt", o.dt, "simulation step for perturbed models");
    sub->add_option("--tol", o.tol, "bracket width target for the exact series");
}

std::vector<double> parse_levels(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("--levels: '" + item + "' is not a number");
        }
    }
    return out;
}

ExperimentConfig load_config(const Overrides& o) {
    std::ifstream in(o.config);
    if (!in) throw ConfigError("--config: cannot open '" + o.config + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("--config: " + std::string(e.what()));
    }
    if (o.levels) j["levels"] = parse_levels(*o.levels);
    if (o.seed) j["mc"]["seed"] = *o.seed;
    if (o.n_paths) j["mc"]["n_paths"] = *o.n_paths;
    if (o.dt) j["mc"]["dt"] = *o.dt;
    if (o.tol) j["exact"]["tol"] = *o.tol;
    if (o.out) j["output"]["dir"] = *o.out;
    return ExperimentConfig::from_json(j);
}

fs::path prepare_out(const ExperimentConfig& cfg) {
    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    return dir;
}

std::string level_tag(double u) {
    std::ostringstream s;
    s << u;
    return s.str();
}

void write_curve(const fs::path& dir, const RuinCurve& c) {
    std::ofstream f(dir / "ruin_curve.csv");
    c.write_csv(f);
}

RuinCurve exact_curve(const ExperimentConfig& cfg, const fs::path& dir) {
    if (!cfg.model.is_classical()) {
        throw ConfigError("model.model: ruin-exact requires CramerLundberg (got " +
                          cfg.model.variant_name() + ")");
    }
    ExactOptions eo = cfg.exact;
    for (double u : cfg.levels) eo.u_max = std::max(eo.u_max, u);
    try {
        return pk_ruin(cfg.model, eo);
    } catch (const ToleranceError& e) {
        write_curve(dir, e.best());
        throw;
    }
}

int cmd_analyze(const ExperimentConfig& cfg) {
    const fs::path dir = prepare_out(cfg);
    const json r = analyze_report(cfg);
    std::ofstream(dir / "report.json") << r.dump(2) << '\n';
    std::cout << "regime: " << r["regime"].get<std::string>() << "\n";
    if (r.contains("explanation")) std::cout << r["explanation"].get<std::string>() << "\n";
    std::cout << "wrote " << (dir / "report.json").string() << "\n";
    return 0;
}

int cmd_ruin_exact(const ExperimentConfig& cfg) {
    const fs::path dir = prepare_out(cfg);
    const RuinCurve c = exact_curve(cfg, dir);
    write_curve(dir, c);
    std::cout << "h=" << c.h() << " N=" << c.series_terms_used() << " max_width=" << c.max_width() << "\n";
    for (double u : cfg.levels) {
        const Bracket b = c.at(u);
        std::cout << "psi(" << u << ") in [" << b.lower << ", " << b.upper << "]\n";
    }
    std::cout << "wrote " << (dir / "ruin_curve.csv").string() << "\n";
    return 0;
}

int cmd_simulate(const ExperimentConfig& cfg) {
    const fs::path dir = prepare_out(cfg);
    json est = json::array();
    for (double u : cfg.levels) {
        const SimulationResult r = simulate_paths(cfg.model, u, cfg.mc);
        json e = r.estimate.to_json();
        e["u"] = u;
        est.push_back(e);
        std::ofstream f(dir / ("samples_u" + level_tag(u) + ".csv"));
        write_samples_csv(f, r.samples);
        std::cout << "u=" << u << " psi in [" << r.estimate.bracket.lower << ", "
                  << r.estimate.bracket.upper << "] (stderr " << r.estimate.std_error << ")\n";
    }
    const json out = {{"estimates", est}, {"seed", cfg.mc.seed}, {"config", cfg.to_json()}};
    std::ofstream(dir / "estimates.json") << out.dump(2) << '\n';
    return 0;
}

int cmd_compare(const ExperimentConfig& cfg) {
    const fs::path dir = prepare_out(cfg);
    CompareTable t;
    try {
        t = compare_table(cfg);
    } catch (const ToleranceError& e) {
        write_curve(dir, e.best());
        throw;
    }
    if (t.curve) write_curve(dir, *t.curve);
    std::ofstream f(dir / "compare.csv");
    write_compare_csv(f, t);
    std::cout << "wrote " << (dir / "compare.csv").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ruin analytics for spectrally positive Levy risk processes"};
    app.require_subcommand(1);
    Overrides o;
    CLI::App* analyze = app.add_subcommand("analyze", "regime, asymptote and limit-law report");
    CLI::App* exact = app.add_subcommand("ruin-exact", "certified ruin-probability brackets");
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo first passage");
    CLI::App* compare = app.add_subcommand("compare", "exact vs Monte Carlo vs asymptote table");
    for (CLI::App* sub : {analyze, exact, simulate, compare}) add_common_flags(sub, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        const ExperimentConfig cfg = load_config(o);
        if (analyze->parsed()) return cmd_analyze(cfg);
        if (exact->parsed()) return cmd_ruin_exact(cfg);
        if (simulate->parsed()) return cmd_simulate(cfg);
        return cmd_compare(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
}
