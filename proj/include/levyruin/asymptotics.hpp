#pragma once

// Large-u limit laws for spectrally positive models: ruin probability,
// overshoot, local time at the maximum and last ladder height before ruin.

#include <optional>
#include <string>

#include <json.hpp>

#include "levyruin/exact_ruin.hpp"
#include "levyruin/ladder.hpp"

namespace levyruin {

/// psi(u) ~ coefficient * shape(u).
class RuinAsymptote {
public:
    enum class Shape {
        LadderTail,      // pi_h_tail(u)
        IntegratedTail,  // F̄_I(u) of the claim law
        PowerLaw,        // u^(-exponent)
    };

    RuinAsymptote(RiskModel model, double coefficient, Shape shape, double exponent,
                  std::string regime_note);

    double coefficient() const { return coefficient_; }
    Shape shape_kind() const { return shape_; }
    double exponent() const { return exponent_; }
    const std::string& regime_note() const { return note_; }

    double shape(double u) const;
    double operator()(double u) const { return coefficient_ * shape(u); }

    nlohmann::json to_json() const;

private:
    RiskModel model_;
    double coefficient_;
    Shape shape_;
    double exponent_;
    std::string note_;
};

std::string to_string(RuinAsymptote::Shape s);

/// Family-specialised asymptote: classical / jump-diffusion subexponential
/// form rho/(1-rho) F̄_I, the jump-diffusion convolution-equivalent form
/// with delta_alpha(F_I) by quadrature, and the three stable-perturbed cases
/// selected by the declared lim x^p F̄(x).
/// Throws DomainError in the Cramer and Unclassified regimes.
RuinAsymptote ruin_asymptote(const LadderSummary& s);

/// |E X_1| (alpha / phi(alpha))^2 against pi_h_tail, with
/// -phi(alpha)/alpha read as |E X_1| when alpha = 0.
RuinAsymptote generic_ruin_asymptote(const LadderSummary& s);

/// q / (q - log delta_alpha(H))^2 against pi_h_tail, in ladder terms.
RuinAsymptote ladder_ruin_asymptote(const LadderSummary& s);

/// delta_a(F_I) = (1/mu) * integral exp(a x) F̄(x) dx by quadrature over the
/// claim tail (not through delta_a(F)).
double integrated_tail_exp_moment(const TailDistribution& claim, double a);

/// Limit of P(overshoot > x | ruin) as u -> inf.
class OvershootLimit {
public:
    OvershootLimit(LadderSummary s, std::optional<double> mass_at_zero);

    /// Ḡ(x); identically 1 when alpha = 0 (all mass at infinity).
    double gbar(double x) const;
    /// Creeping mass alpha c / q, present only when the ladder drift c is known.
    std::optional<double> mass_at_zero() const { return mass_at_zero_; }
    bool degenerate() const { return summary_.alpha() == 0.0; }

private:
    LadderSummary summary_;
    std::optional<double> mass_at_zero_;
};

/// The ladder drift c is 0 for the classical and stable-perturbed models;
/// for the jump diffusion it must be supplied or the creeping mass is
/// reported unavailable.
OvershootLimit overshoot_limit(const LadderSummary& s,
                               std::optional<double> ladder_drift = std::nullopt);

/// pi_h_tail(u + x) / pi_h_tail(u); Subexponential regime only.
double overshoot_finite_u(const LadderSummary& s, double u, double x);

/// Limit of P(L_{tau(u)} > t | ruin), closed form in phi(alpha).
double local_time_limit(const LadderSummary& s, double t);
/// Same limit written through q and log delta_alpha(H).
double local_time_limit_ladder(const LadderSummary& s, double t);

/// Limit of P(last ladder height before ruin <= level | ruin) for the
/// classical model at alpha = 0, which equals q V([0, level]) = 1 - psi(level).
/// Throws DomainError for alpha > 0 (needs the exp-weighted renewal measure).
Bracket last_ladder_height_limit(const LadderSummary& s, const RuinCurve& curve, double level);

}  // namespace levyruin
