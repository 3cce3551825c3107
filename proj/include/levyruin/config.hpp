#pragma once

// Structured configuration records (JSON) for claim laws, models and whole
// experiments. The schema is documented in docs/config.md.

#include <string>
#include <vector>

#include <json.hpp>

#include "levyruin/exact_ruin.hpp"
#include "levyruin/levy_models.hpp"
#include "levyruin/monte_carlo.hpp"

namespace levyruin {

/// {family, params: {...}, class?: {alpha, in_L, in_S}}
TailDistribution tail_distribution_from_json(const nlohmann::json& rec,
                                             const std::string& path = "claim");
nlohmann::json to_json(const TailDistribution& d);

/// {model: variant, gamma, lambda, sigma?, p?, claim: {...}}
RiskModel risk_model_from_json(const nlohmann::json& rec, const std::string& path = "model");
nlohmann::json to_json(const RiskModel& m);

struct Analyses {
    bool exact = false;
    bool mc = false;
    bool asymptotics = true;

    int count() const { return int(exact) + int(mc) + int(asymptotics); }
};

struct ExperimentConfig {
    explicit ExperimentConfig(RiskModel m) : model(std::move(m)) {}

    RiskModel model;
    std::vector<double> levels;
    Analyses analyses;
    McOptions mc;
    ExactOptions exact;
    std::string out_dir = "out";

    /// Throws ConfigError naming the offending field.
    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    void validate() const;
};

}  // namespace levyruin
