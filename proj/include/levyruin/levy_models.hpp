#pragma once

// The three spectrally positive risk model families and their Laplace
// exponent calculus: E exp(theta X_t) = exp(t phi(theta)).

#include <optional>
#include <string>
#include <variant>

#include "levyruin/heavy_tails.hpp"

namespace levyruin {

/// X_t = sum of claims - gamma t (classical compound Poisson risk process).
struct CramerLundberg {
    double premium_rate;
    double intensity;
    TailDistribution claim;
};

/// X_t = sigma B_t + sum of claims - gamma t.
struct JumpDiffusion {
    double premium_rate;
    double volatility;
    double intensity;
    TailDistribution claim;
};

/// X_t = S_t + sum of claims - gamma t, with S totally positively skewed
/// p-stable and E exp(theta S_1) = exp((-theta)^p) for theta <= 0.
struct StablePerturbed {
    double premium_rate;
    double stable_index;
    double intensity;
    TailDistribution claim;
};

struct ModelSummary {
    double rho;      // lambda mu / gamma
    double mean_x1;  // E X_1 = lambda mu - gamma
    double q;        // killing rate |E X_1| = gamma (1 - rho)
};

class RiskModel {
public:
    using Variant = std::variant<CramerLundberg, JumpDiffusion, StablePerturbed>;

    /// Validates parameters and the net-profit condition rho < 1; throws
    /// ConfigError otherwise.
    explicit RiskModel(Variant v);

    static RiskModel cramer_lundberg(double gamma, double lambda, TailDistribution claim);
    static RiskModel jump_diffusion(double gamma, double sigma, double lambda,
                                    TailDistribution claim);
    static RiskModel stable_perturbed(double gamma, double p, double lambda,
                                      TailDistribution claim);

    const Variant& variant() const { return v_; }
    std::string variant_name() const;
    const TailDistribution& claim() const;
    double premium_rate() const;
    double intensity() const;
    double volatility() const;    // 0 unless JumpDiffusion
    double stable_index() const;  // 0 unless StablePerturbed

    /// Claims only, without the perturbation.
    bool is_classical() const { return std::holds_alternative<CramerLundberg>(v_); }
    bool is_stable() const { return std::holds_alternative<StablePerturbed>(v_); }

    /// phi(theta). Throws DomainError("exponent infinite") outside the
    /// domain: theta > 0 for StablePerturbed, or past the claim's
    /// exponential-moment abscissa.
    double laplace_exponent(double theta) const;
    /// Abscissa of the domain of phi.
    ExpAbscissa exponent_abscissa() const;

    ModelSummary summarize() const;

    /// Upper tail of the Levy measure at x > 0.
    double pi_x_plus_tail(double x) const;

    /// Positive root of phi, if one exists in the finite domain of phi.
    std::optional<double> lundberg_root() const;

private:
    Variant v_;
};

}  // namespace levyruin
