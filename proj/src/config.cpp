#include "levyruin/config.hpp"

#include <cmath>

#include "levyruin/errors.hpp"

namespace levyruin {

using nlohmann::json;

namespace {

const json& field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw ConfigError(path + ": expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(path + "." + key + ": missing required field");
    return *it;
}

double number(const json& obj, const std::string& key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_number()) throw ConfigError(path + "." + key + ": expected a number");
    return v.get<double>();
}

double number_or(const json& obj, const std::string& key, const std::string& path,
                 double fallback) {
    if (!obj.contains(key)) return fallback;
    return number(obj, key, path);
}

bool boolean_or(const json& obj, const std::string& key, const std::string& path, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) throw ConfigError(path + "." + key + ": expected true or false");
    return v.get<bool>();
}

std::string text(const json& obj, const std::string& key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_string()) throw ConfigError(path + "." + key + ": expected a string");
    return v.get<std::string>();
}

}  // namespace

TailDistribution tail_distribution_from_json(const json& rec, const std::string& path) {
    const std::string family = text(rec, "family", path);
    const std::string ppath = path + ".params";
    const json& params = field(rec, "params", path);

    TailDistribution base = [&] {
        if (family == "exponential") {
            return TailDistribution::exponential(number(params, "rate", ppath));
        }
        if (family == "pareto") {
            return TailDistribution::pareto(number(params, "shape", ppath),
                                            number_or(params, "scale", ppath, 1.0));
        }
        if (family == "weibull") {
            return TailDistribution::weibull(number(params, "shape", ppath),
                                             number_or(params, "scale", ppath, 1.0));
        }
        if (family == "lognormal") {
            return TailDistribution::lognormal(number(params, "mu", ppath),
                                               number(params, "sigma", ppath));
        }
        if (family == "modified_exponential") {
            return TailDistribution::modified_exponential(number(params, "alpha", ppath),
                                                          number(params, "beta", ppath));
        }
        throw ConfigError(path + ".family: unknown family '" + family +
                          "' (exponential, pareto, weibull, lognormal, modified_exponential)");
    }();

    if (!rec.contains("class")) return base;
    const std::string cpath = path + ".class";
    const json& cls = rec.at("class");
    const ClassTag def = base.class_tag();
    ClassTag tag{number_or(cls, "alpha", cpath, def.alpha), boolean_or(cls, "in_L", cpath, def.in_L),
                 boolean_or(cls, "in_S", cpath, def.in_S)};
    try {
        tag.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(cpath + ": " + e.what());
    }
    return base.with_class(tag);
}

json to_json(const TailDistribution& d) {
    const ClassTag& t = d.class_tag();
    return {{"family", d.family()},
            {"params", d.params()},
            {"class", {{"alpha", t.alpha}, {"in_L", t.in_L}, {"in_S", t.in_S}}}};
}

RiskModel risk_model_from_json(const json& rec, const std::string& path) {
    const std::string variant = text(rec, "model", path);
    const double gamma = number(rec, "gamma", path);
    const double lambda = number(rec, "lambda", path);
    TailDistribution claim = tail_distribution_from_json(field(rec, "claim", path), path + ".claim");
    try {
        if (variant == "CramerLundberg") return RiskModel::cramer_lundberg(gamma, lambda, claim);
        if (variant == "JumpDiffusion") {
            return RiskModel::jump_diffusion(gamma, number(rec, "sigma", path), lambda, claim);
        }
        if (variant == "StablePerturbed") {
            return RiskModel::stable_perturbed(gamma, number(rec, "p", path), lambda, claim);
        }
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        if (msg.rfind(path, 0) == 0) throw;
        throw ConfigError(path + ": " + msg);
    }
    throw ConfigError(path + ".model: unknown variant '" + variant +
                      "' (CramerLundberg, JumpDiffusion, StablePerturbed)");
}

json to_json(const RiskModel& m) {
    json j = {{"model", m.variant_name()},
              {"gamma", m.premium_rate()},
              {"lambda", m.intensity()},
              {"claim", to_json(m.claim())}};
    if (std::holds_alternative<JumpDiffusion>(m.variant())) j["sigma"] = m.volatility();
    if (m.is_stable()) j["p"] = m.stable_index();
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object at top level");
    ExperimentConfig cfg{risk_model_from_json(field(j, "model", "config"), "model")};

    const json& levels = field(j, "levels", "config");
    if (!levels.is_array()) throw ConfigError("config.levels: expected an array of numbers");
    for (const json& v : levels) {
        if (!v.is_number()) throw ConfigError("config.levels: expected an array of numbers");
        cfg.levels.push_back(v.get<double>());
    }

    if (j.contains("analyses")) {
        const json& a = j.at("analyses");
        cfg.analyses.exact = boolean_or(a, "exact", "analyses", false);
        cfg.analyses.mc = boolean_or(a, "mc", "analyses", false);
        cfg.analyses.asymptotics = boolean_or(a, "asymptotics", "analyses", true);
    }
    if (j.contains("mc")) {
        const json& m = j.at("mc");
        const double n = number_or(m, "n_paths", "mc", 10000.0);
        if (!(n >= 1.0) || n != std::floor(n)) throw ConfigError("mc.n_paths: expected a positive integer");
        cfg.mc.n_paths = static_cast<std::size_t>(n);
        cfg.mc.horizon.factor = number_or(m, "horizon_factor", "mc", 20.0);
        if (m.contains("horizon")) cfg.mc.horizon.fixed = number(m, "horizon", "mc");
        cfg.mc.dt = number_or(m, "dt", "mc", 0.01);
        const double seed = number_or(m, "seed", "mc", 0.0);
        if (!(seed >= 0.0) || seed != std::floor(seed)) throw ConfigError("mc.seed: expected a nonnegative integer");
        cfg.mc.seed = static_cast<std::uint64_t>(seed);
        cfg.mc.threads = static_cast<unsigned>(number_or(m, "threads", "mc", 0.0));
    }
    if (j.contains("exact")) {
        const json& e = j.at("exact");
        cfg.exact.h = number_or(e, "h", "exact", cfg.exact.h);
        cfg.exact.u_max = number_or(e, "u_max", "exact", cfg.exact.u_max);
        cfg.exact.tol = number_or(e, "tol", "exact", cfg.exact.tol);
        cfg.exact.truncation = number_or(e, "truncation", "exact", cfg.exact.truncation);
        const double cap = number_or(e, "max_grid_points", "exact", static_cast<double>(cfg.exact.max_grid_points));
        if (!(cap >= 16.0) || cap != std::floor(cap) || cap > 1e12) {
            throw ConfigError("exact.max_grid_points: expected an integer >= 16");
        }
        cfg.exact.max_grid_points = static_cast<std::size_t>(cap);
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        if (o.contains("dir")) cfg.out_dir = text(o, "dir", "output");
    }
    cfg.validate();
    return cfg;
}

void ExperimentConfig::validate() const {
    if (analyses.count() == 0) throw ConfigError("analyses: at least one of exact, mc, asymptotics must be on");
    if (levels.empty()) throw ConfigError("config.levels: at least one level is required");
    for (double u : levels) {
        if (!(u >= 0.0) || !std::isfinite(u)) throw ConfigError("config.levels: levels must be finite and >= 0");
    }
    if (!(mc.dt > 0.0)) throw ConfigError("mc.dt: must be > 0");
    if (!(mc.horizon.factor > 0.0)) throw ConfigError("mc.horizon_factor: must be > 0");
    if (!(exact.tol > 0.0)) throw ConfigError("exact.tol: must be > 0");
    if (!(exact.h > 0.0)) throw ConfigError("exact.h: must be > 0");
    if (!(exact.u_max > 0.0)) throw ConfigError("exact.u_max: must be > 0");
}

json ExperimentConfig::to_json() const {
    json j = {{"model", levyruin::to_json(model)},
              {"levels", levels},
              {"analyses", {{"exact", analyses.exact}, {"mc", analyses.mc}, {"asymptotics", analyses.asymptotics}}},
              {"mc",
               {{"n_paths", mc.n_paths},
                {"horizon_factor", mc.horizon.factor},
                {"dt", mc.dt},
                {"seed", mc.seed},
                {"threads", mc.threads}}},
              {"exact", {{"h", exact.h}, {"u_max", exact.u_max}, {"tol", exact.tol}, {"truncation", exact.truncation},
                {"max_grid_points", exact.max_grid_points}}},
              {"output", {{"dir", out_dir}}}};
    if (mc.horizon.fixed) j["mc"]["horizon"] = *mc.horizon.fixed;
    return j;
}

}  // namespace levyruin
