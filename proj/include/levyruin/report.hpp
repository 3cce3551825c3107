#pragma once

// Experiment-level products shared by the command-line front end: the
// analysis report and the exact / Monte Carlo / asymptote comparison table.

#include <iosfwd>
#include <optional>
#include <vector>

#include <json.hpp>

#include "levyruin/asymptotics.hpp"
#include "levyruin/config.hpp"

namespace levyruin {

/// Regime, drift constants, asymptote and limit-law samples for cfg.model,
/// with the full configuration embedded. Never throws for an Unclassified
/// regime; the explanation is carried in the report instead.
nlohmann::json analyze_report(const ExperimentConfig& cfg);

struct CompareRow {
    double u = 0.0;
    std::optional<Bracket> exact;
    std::optional<Estimate> mc;
    std::optional<double> asymptote;
};

struct CompareTable {
    std::vector<CompareRow> rows;
    std::optional<RuinCurve> curve;  // set when the exact columns were computed
    std::optional<RuinAsymptote> asymptote;
};

/// One row per level. Exact columns need a classical model with the exact
/// toggle on; asymptote columns need a limit regime and u > 0.
CompareTable compare_table(const ExperimentConfig& cfg);

/// Columns u, psi_lower, psi_upper, mc_point, mc_lower, mc_upper, mc_stderr,
/// asymptote, asym_over_exact, mc_over_exact, asym_over_mc; empty cells where
/// not applicable.
void write_compare_csv(std::ostream& os, const CompareTable& t);

}  // namespace levyruin
