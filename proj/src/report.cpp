#include "levyruin/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "levyruin/asymptotics.hpp"
#include "levyruin/errors.hpp"
#include "levyruin/ladder.hpp"

namespace levyruin {

using nlohmann::json;

namespace {

constexpr double kOvershootGrid[] = {0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
constexpr double kLocalTimeGrid[] = {0.0, 0.5, 1.0, 2.0, 5.0, 10.0};

bool limit_regime(const LadderSummary& s) {
    const auto k = s.regime().kind;
    return k == Regime::Kind::ConvolutionEquivalent || k == Regime::Kind::Subexponential;
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json analyze_report(const ExperimentConfig& cfg) {
    const RiskModel& m = cfg.model;
    const ModelSummary ms = m.summarize();
    const LadderSummary s = classify_regime(m);

    json r;
    r["regime"] = s.regime().name();
    r["diagnostic"] = s.diagnostic();
    r["q"] = ms.q;
    r["rho"] = ms.rho;
    r["mean_x1"] = ms.mean_x1;
    if (const auto root = m.lundberg_root()) r["lundberg_root"] = *root;
    if (s.regime().kind == Regime::Kind::Cramer) r["nu0"] = s.regime().nu0;
    if (limit_regime(s)) r["alpha"] = s.alpha();

    r["asymptote"] = nullptr;
    r["overshoot_limit"] = nullptr;
    r["local_time_limit"] = nullptr;
    if (limit_regime(s) && cfg.analyses.asymptotics) {
        const RuinAsymptote a = ruin_asymptote(s);
        json aj = a.to_json();
        aj["regime"] = s.regime().name();
        json at_levels = json::array();
        for (double u : cfg.levels) {
            at_levels.push_back({{"u", u}, {"psi", u > 0.0 ? number_or_null(a(u)) : json(nullptr)}});
        }
        aj["at_levels"] = at_levels;
        r["asymptote"] = aj;

        const OvershootLimit g = overshoot_limit(s);
        json gj = {{"degenerate", g.degenerate()}};
        gj["mass_at_zero"] = g.mass_at_zero() ? json(*g.mass_at_zero()) : json(nullptr);
        json samples = json::array();
        for (double x : kOvershootGrid) samples.push_back({{"x", x}, {"gbar", g.gbar(x)}});
        gj["samples"] = samples;
        r["overshoot_limit"] = gj;

        json lt = json::array();
        for (double t : kLocalTimeGrid) lt.push_back({{"t", t}, {"tail", local_time_limit(s, t)}});
        r["local_time_limit"] = {{"samples", lt}};
    } else if (s.regime().kind == Regime::Kind::Cramer) {
        r["explanation"] =
            "light-tailed (Cramer) regime: psi decays exponentially at the Lundberg rate; "
            "the Cramer constant is not computed";
    } else if (s.regime().kind == Regime::Kind::Unclassified) {
        r["explanation"] = "no limit law applies: " + s.diagnostic();
    }

    r["seed"] = cfg.mc.seed;
    r["config"] = cfg.to_json();
    return r;
}

CompareTable compare_table(const ExperimentConfig& cfg) {
    if (cfg.analyses.count() < 2) {
        throw ConfigError("analyses: compare needs at least two of exact, mc, asymptotics");
    }
    CompareTable t;
    const RiskModel& m = cfg.model;

    if (cfg.analyses.exact && m.is_classical()) {
        ExactOptions eo = cfg.exact;
        const double top = *std::max_element(cfg.levels.begin(), cfg.levels.end());
        eo.u_max = std::max(eo.u_max, top);
        t.curve = pk_ruin(m, eo);
    }
    if (cfg.analyses.asymptotics) {
        const LadderSummary s = classify_regime(m);
        if (limit_regime(s)) t.asymptote = ruin_asymptote(s);
    }
    for (double u : cfg.levels) {
        CompareRow row;
        row.u = u;
        if (t.curve) row.exact = t.curve->at(u);
        if (cfg.analyses.mc) row.mc = estimate_ruin(m, u, cfg.mc);
        if (t.asymptote && u > 0.0) {
            const double v = (*t.asymptote)(u);
            if (std::isfinite(v)) row.asymptote = v;
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_compare_csv(std::ostream& os, const CompareTable& t) {
    os.precision(std::numeric_limits<double>::max_digits10);
    os << "u,psi_lower,psi_upper,mc_point,mc_lower,mc_upper,mc_stderr,asymptote,"
          "asym_over_exact,mc_over_exact,asym_over_mc\n";
    const auto cell = [&](std::optional<double> v) {
        os << ',';
        if (v && std::isfinite(*v)) os << *v;
    };
    const auto ratio = [](std::optional<double> a, std::optional<double> b) -> std::optional<double> {
        if (!a || !b || !(*b > 0.0)) return std::nullopt;
        return *a / *b;
    };
    for (const CompareRow& r : t.rows) {
        os << r.u;
        std::optional<double> mid, mcp;
        if (r.exact) mid = r.exact->mid();
        if (r.mc) mcp = r.mc->point;
        cell(r.exact ? std::optional(r.exact->lower) : std::nullopt);
        cell(r.exact ? std::optional(r.exact->upper) : std::nullopt);
        cell(mcp);
        cell(r.mc ? std::optional(r.mc->bracket.lower) : std::nullopt);
        cell(r.mc ? std::optional(r.mc->bracket.upper) : std::nullopt);
        cell(r.mc ? std::optional(r.mc->std_error) : std::nullopt);
        cell(r.asymptote);
        cell(ratio(r.asymptote, mid));
        cell(ratio(mcp, mid));
        cell(ratio(r.asymptote, mcp));
        os << '\n';
    }
}

}  // namespace levyruin
