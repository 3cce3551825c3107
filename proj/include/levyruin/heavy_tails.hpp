#pragma once

// Claim-size distributions on [0, inf) described through their tails, with
// integrated tails, exponential moments and declared convolution-equivalence
// class metadata.

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "levyruin/random.hpp"

namespace levyruin {

/// Declared membership in the classes L(alpha) and S(alpha).
///
/// Membership is an asymptotic property; it is supplied with a family and is
/// only ever checked by finite-u diagnostics.
struct ClassTag {
    double alpha = 0.0;
    bool in_L = false;
    bool in_S = false;

    /// Throws ConfigError when alpha < 0 or when in_S is set without in_L.
    void validate() const;

    friend bool operator==(const ClassTag&, const ClassTag&) = default;
};

/// Declared value of lim x^p F̄(x) as x -> inf, used by the stable-perturbed
/// regime selector.
struct PowerTailLimit {
    enum class Kind { Zero, Finite, Infinite };
    Kind kind = Kind::Zero;
    double constant = 0.0;  // meaningful for Kind::Finite only
};

/// Abscissa of convergence of a -> delta_a: delta_a is finite for a < value,
/// and at a == value exactly when `attained`.
struct ExpAbscissa {
    double value = 0.0;
    bool attained = true;

    bool finite_at(double a) const { return a < value || (a == value && attained); }
};

/// Family implementation behind a TailDistribution. Implementations are
/// immutable; every member is safe to call concurrently.
class TailModel {
public:
    virtual ~TailModel() = default;

    virtual std::string family() const = 0;
    virtual nlohmann::json params() const = 0;
    virtual ClassTag default_class() const = 0;

    virtual double tail(double x) const = 0;
    virtual double log_tail(double x) const;
    /// a x + log F̄(x); families with an exponential factor override it so
    /// that the cancellation at large x is exact.
    virtual double log_tilted_tail(double a, double x) const { return a * x + log_tail(x); }
    virtual std::optional<double> density(double x) const;

    /// E Y^k, +inf when divergent.
    virtual double moment(int k) const;
    /// Integral of the tail over [x, inf).
    virtual double tail_integral(double x) const;

    virtual ExpAbscissa exp_abscissa() const = 0;
    /// Registered closed form for delta_a - 1, when one exists at `a`.
    virtual std::optional<double> exp_moment_m1_closed(double a) const;
    virtual std::optional<PowerTailLimit> power_tail_limit(double p) const;
    /// Closed-form integrated tail in a named family, or nullptr.
    virtual std::shared_ptr<const TailModel> integrated_closed_form() const;

    /// x with F̄(x) = prob, for prob in (0, 1].
    virtual double quantile_tail(double prob) const;
    virtual double sample(Rng& rng) const;
};

class TailDistribution {
public:
    /// Wraps `model`; `tag` overrides the family's default class metadata.
    explicit TailDistribution(std::shared_ptr<const TailModel> model,
                              std::optional<ClassTag> tag = std::nullopt);

    static TailDistribution exponential(double rate);
    /// Lomax form F̄(x) = (1 + x/scale)^(-shape).
    static TailDistribution pareto(double shape, double scale = 1.0);
    /// F̄(x) = exp(-(x/scale)^shape) with shape in (0, 1).
    static TailDistribution weibull(double shape, double scale = 1.0);
    static TailDistribution lognormal(double mu, double sigma);
    /// F̄(x) = exp(-alpha x) (1 + x)^(-beta), beta > 1; the stock S(alpha) family.
    static TailDistribution modified_exponential(double alpha, double beta);

    std::string family() const { return model_->family(); }
    nlohmann::json params() const { return model_->params(); }
    const ClassTag& class_tag() const { return tag_; }
    const TailModel& model() const { return *model_; }
    /// Same law with different declared class metadata.
    TailDistribution with_class(const ClassTag& tag) const { return TailDistribution(model_, tag); }

    /// F̄(x) for x >= 0.
    double tail(double x) const;
    double log_tail(double x) const;
    /// a x + log F̄(x), without cancellation.
    double log_tilted_tail(double a, double x) const { return model_->log_tilted_tail(a, x); }
    std::optional<double> density(double x) const { return model_->density(x); }
    double mean() const { return model_->moment(1); }
    double moment(int k) const { return model_->moment(k); }
    double tail_integral(double x) const { return model_->tail_integral(x); }

    /// F_I(x) = (1/mu) * integral of F̄ over [0, x]. Throws DomainError
    /// ("integrated tail undefined") when the mean is infinite.
    TailDistribution integrated_tail() const;

    /// delta_a = E exp(aY); +inf when the declared class or the abscissa of
    /// convergence forces divergence.
    double exp_moment(double a) const;
    /// delta_a - 1, evaluated without cancellation near a = 0.
    double exp_moment_minus_one(double a) const;
    ExpAbscissa exp_abscissa() const { return model_->exp_abscissa(); }

    /// F̄(u) / integral of F̄ over [u, inf); tends to class_tag().alpha.
    double hazard_ratio(double u) const;

    /// Declared lim x^p F̄(x). Throws DomainError if the family declares none.
    PowerTailLimit power_tail_limit(double p) const;

    double quantile_tail(double prob) const { return model_->quantile_tail(prob); }
    /// Point past which F̄ < 1e-14.
    double upper_cutoff() const { return model_->quantile_tail(1e-14); }
    double sample(Rng& rng) const { return model_->sample(rng); }

private:
    std::shared_ptr<const TailModel> model_;
    ClassTag tag_;
};

/// delta_a computed by adaptive quadrature of 1 + a * integral exp(ax) F̄(x) dx,
/// ignoring registered closed forms. Used as the independent route in
/// identity checks. Returns +inf when the integral diverges.
double exp_moment_by_quadrature(const TailDistribution& d, double a);

}  // namespace levyruin
