#pragma once

// Ascending ladder quantities of a spectrally positive model and the
// classification into Cramer / convolution-equivalent / subexponential
// regimes.

#include <optional>
#include <string>

#include "levyruin/levy_models.hpp"

namespace levyruin {

struct Regime {
    enum class Kind { Cramer, ConvolutionEquivalent, Subexponential, Unclassified };
    Kind kind = Kind::Unclassified;
    double nu0 = 0.0;    // Cramer only
    double alpha = 0.0;  // ConvolutionEquivalent / Subexponential

    std::string name() const;
};

/// Tail of the ladder-height Levy measure: the integral of pi_x_plus_tail
/// over [u, inf). u = 0 is accepted for models without a stable part.
double pi_h_tail(const RiskModel& m, double u);

class LadderSummary {
public:
    LadderSummary(RiskModel model, double q, std::optional<double> log_delta_alpha_h, Regime regime,
                  std::string diagnostic);

    const RiskModel& model() const { return model_; }
    double q() const { return q_; }
    double pi_h_tail(double u) const { return levyruin::pi_h_tail(model_, u); }
    /// log delta_alpha(H); nullopt encodes "infinite".
    std::optional<double> log_delta_alpha_h() const { return log_delta_; }
    const Regime& regime() const { return regime_; }
    double alpha() const { return regime_.alpha; }
    /// Why the regime was chosen (notably for Unclassified).
    const std::string& diagnostic() const { return diagnostic_; }

    /// q - log delta_alpha(H), i.e. -phi(alpha)/alpha, or q when alpha = 0.
    double ladder_decay() const;

private:
    RiskModel model_;
    double q_;
    std::optional<double> log_delta_;
    Regime regime_;
    std::string diagnostic_;
};

/// Classifies `m` with the claim's declared class index (or `alpha` when
/// given). Stable-perturbed models are always analysed at alpha = 0 since
/// their ladder tail is at least regularly varying.
LadderSummary classify_regime(const RiskModel& m, std::optional<double> alpha = std::nullopt);

/// pi_x_plus_tail(u) / pi_h_tail(u); tends to alpha in the
/// convolution-equivalent regime. Throws DomainError in any other regime.
double ladder_tail_ratio(const LadderSummary& s, double u);

}  // namespace levyruin
