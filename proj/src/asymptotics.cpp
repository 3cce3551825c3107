#include "levyruin/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "levyruin/errors.hpp"
#include "quadrature.hpp"

namespace levyruin {

namespace {

void require_limit_regime(const LadderSummary& s, const char* what) {
    const auto kind = s.regime().kind;
    if (kind == Regime::Kind::Cramer) {
        throw DomainError(std::string(what) +
                          ": Cramer regime has exponential decay; its constant is not computed");
    }
    if (kind == Regime::Kind::Unclassified) {
        throw DomainError(std::string(what) + ": regime unclassified (" + s.diagnostic() + ")");
    }
}

}  // namespace

std::string to_string(RuinAsymptote::Shape s) {
    switch (s) {
        case RuinAsymptote::Shape::LadderTail: return "ladder_tail";
        case RuinAsymptote::Shape::IntegratedTail: return "integrated_tail";
        case RuinAsymptote::Shape::PowerLaw: return "power_law";
    }
    return "ladder_tail";
}

RuinAsymptote::RuinAsymptote(RiskModel model, double coefficient, Shape shape, double exponent,
                             std::string regime_note)
    : model_(std::move(model)),
      coefficient_(coefficient),
      shape_(shape),
      exponent_(exponent),
      note_(std::move(regime_note)) {}

double RuinAsymptote::shape(double u) const {
    if (!(u > 0.0)) throw DomainError("asymptote shape needs u > 0");
    switch (shape_) {
        case Shape::LadderTail: return pi_h_tail(model_, u);
        case Shape::IntegratedTail: return model_.claim().tail_integral(u) / model_.claim().mean();
        case Shape::PowerLaw: return std::pow(u, -exponent_);
    }
    return 0.0;
}

nlohmann::json RuinAsymptote::to_json() const {
    nlohmann::json params = {{"regime_note", note_}};
    if (shape_ == Shape::PowerLaw) params["exponent"] = exponent_;
    return {{"coefficient", coefficient_}, {"shape_kind", to_string(shape_)}, {"params", params}};
}

double integrated_tail_exp_moment(const TailDistribution& claim, double a) {
    const double mu = claim.mean();
    if (!std::isfinite(mu)) throw DomainError("integrated tail undefined: infinite mean");
    if (!claim.exp_abscissa().finite_at(a)) return detail::kInf;
    const double integral = detail::integrate_upper(
        [&claim, a](double x) { return std::exp(claim.log_tilted_tail(a, x)); }, 0.0,
        "integrated-tail exponential moment");
    return integral / mu;
}

RuinAsymptote generic_ruin_asymptote(const LadderSummary& s) {
    require_limit_regime(s, "ruin asymptote");
    const double decay = s.ladder_decay();  // -phi(alpha)/alpha, or |E X_1|
    const double coeff = s.q() / (decay * decay);
    return RuinAsymptote(s.model(), coeff, RuinAsymptote::Shape::LadderTail, 0.0,
                         "generic spectrally positive form");
}

RuinAsymptote ladder_ruin_asymptote(const LadderSummary& s) {
    require_limit_regime(s, "ruin asymptote");
    const auto log_delta = s.log_delta_alpha_h();
    if (!log_delta) throw DomainError("ruin asymptote: log delta_alpha(H) is infinite");
    const double gap = s.q() - *log_delta;
    return RuinAsymptote(s.model(), s.q() / (gap * gap), RuinAsymptote::Shape::LadderTail, 0.0,
                         "ladder-height form");
}

RuinAsymptote ruin_asymptote(const LadderSummary& s) {
    require_limit_regime(s, "ruin asymptote");
    const RiskModel& m = s.model();
    const ModelSummary ms = m.summarize();

    if (m.is_stable()) {
        const double p = m.stable_index();
        const double lambda = m.intensity();
        const PowerTailLimit lim = m.claim().power_tail_limit(p);
        const double base = 1.0 / std::tgamma(2.0 - p);
        if (lambda == 0.0 || lim.kind == PowerTailLimit::Kind::Zero) {
            return RuinAsymptote(m, base / ms.q, RuinAsymptote::Shape::PowerLaw, p - 1.0,
                                 "stable case 1: claims lighter than x^-p, C = 1/Gamma(2-p)");
        }
        if (lim.kind == PowerTailLimit::Kind::Finite) {
            const double c = base + lambda * lim.constant / (p - 1.0);
            return RuinAsymptote(m, c / ms.q, RuinAsymptote::Shape::PowerLaw, p - 1.0,
                                 "stable case 2: x^p F̄(x) -> c, C = 1/Gamma(2-p) + lambda c/(p-1)");
        }
        return RuinAsymptote(m, ms.rho / (1.0 - ms.rho), RuinAsymptote::Shape::IntegratedTail, 0.0,
                             "stable case 3: claims heavier than x^-p, rho/(1-rho) F̄_I");
    }

    const double alpha = s.alpha();
    if (alpha == 0.0) {
        return RuinAsymptote(m, ms.rho / (1.0 - ms.rho), RuinAsymptote::Shape::IntegratedTail, 0.0,
                             m.is_classical() ? "classical subexponential: rho/(1-rho) F̄_I"
                                              : "jump diffusion subexponential: rho/(1-rho) F̄_I");
    }

    const double gamma = m.premium_rate();
    const double sigma = m.volatility();
    const double delta_fi = integrated_tail_exp_moment(m.claim(), alpha);
    const double denom = 1.0 - sigma * sigma * alpha / (2.0 * gamma) - ms.rho * delta_fi;
    if (!(denom > 0.0)) {
        std::ostringstream msg;
        msg << "ruin asymptote: rho delta_alpha(F_I) + sigma^2 alpha/(2 gamma) = " << 1.0 - denom
            << " >= 1";
        throw NumericError(msg.str());
    }
    return RuinAsymptote(m, (1.0 - ms.rho) * ms.rho / (denom * denom),
                         RuinAsymptote::Shape::IntegratedTail, 0.0,
                         "convolution equivalent: (1-rho) rho / (1 - sigma^2 alpha/(2 gamma) - "
                         "rho delta_alpha(F_I))^2 F̄_I");
}

// ---------------------------------------------------------------------------

OvershootLimit::OvershootLimit(LadderSummary s, std::optional<double> mass_at_zero)
    : summary_(std::move(s)), mass_at_zero_(mass_at_zero) {}

double OvershootLimit::gbar(double x) const {
    if (!(x >= 0.0)) throw DomainError("overshoot limit needs x >= 0");
    const double alpha = summary_.alpha();
    if (alpha == 0.0) return 1.0;
    const RiskModel& m = summary_.model();
    const double lambda = m.intensity();
    const TailDistribution& claim = m.claim();
    const double decay = summary_.ladder_decay();  // -phi(alpha)/alpha

    // integral over t > 0 of (e^{alpha t} - 1) pi_x_plus_tail(x + t)
    double excess = 0.0;
    if (lambda > 0.0) {
        try {
            excess = lambda * detail::integrate_upper(
                                  [&claim, alpha, x](double t) {
                                      const double tilted = claim.log_tilted_tail(alpha, x + t) - alpha * x;
                                      return std::exp(tilted) - std::exp(claim.log_tail(x + t));
                                  },
                                  0.0, "overshoot limit");
        } catch (const NumericError&) {
            throw NumericError("class declaration inconsistent with tail");
        }
    }
    const double value = (decay * std::exp(-alpha * x) + excess) / summary_.q();
    return std::clamp(value, 0.0, 1.0);
}

OvershootLimit overshoot_limit(const LadderSummary& s, std::optional<double> ladder_drift) {
    require_limit_regime(s, "overshoot limit");
    const RiskModel& m = s.model();
    if (!ladder_drift && !std::holds_alternative<JumpDiffusion>(m.variant())) ladder_drift = 0.0;
    std::optional<double> mass;
    if (ladder_drift) mass = s.alpha() * *ladder_drift / s.q();
    return OvershootLimit(s, mass);
}

double overshoot_finite_u(const LadderSummary& s, double u, double x) {
    if (s.regime().kind != Regime::Kind::Subexponential) {
        throw DomainError("overshoot_finite_u requires the subexponential regime");
    }
    if (!(u > 0.0) || !(x >= 0.0)) throw DomainError("overshoot_finite_u needs u > 0, x >= 0");
    if (x == 0.0) return 1.0;
    const double den = s.pi_h_tail(u);
    if (!(den > 1e-300)) throw NumericError("tail below resolution");
    return s.pi_h_tail(u + x) / den;
}

double local_time_limit(const LadderSummary& s, double t) {
    require_limit_regime(s, "local time limit");
    if (!(t >= 0.0)) throw DomainError("local time limit needs t >= 0");
    const double q = s.q();
    const double alpha = s.alpha();
    if (alpha == 0.0) return std::exp(-q * t);
    const double r = s.model().laplace_exponent(alpha) / alpha;  // phi(alpha)/alpha
    return std::exp(r * t) * (1.0 - t * r * (1.0 + r / q));
}

double local_time_limit_ladder(const LadderSummary& s, double t) {
    require_limit_regime(s, "local time limit");
    if (!(t >= 0.0)) throw DomainError("local time limit needs t >= 0");
    const auto log_delta = s.log_delta_alpha_h();
    if (!log_delta) throw DomainError("local time limit: log delta_alpha(H) is infinite");
    const double q = s.q();
    const double gap = q - *log_delta;
    return std::exp(-gap * t) * (1.0 + t * gap * *log_delta / q);
}

Bracket last_ladder_height_limit(const LadderSummary& s, const RuinCurve& curve, double level) {
    if (!s.model().is_classical()) {
        throw DomainError("last ladder height limit is available for the classical model only");
    }
    if (s.alpha() > 0.0) {
        throw DomainError("unsupported: requires e^(alpha y)-weighted renewal measure");
    }
    if (!(level >= 0.0)) throw DomainError("last ladder height limit needs level >= 0");
    const Bracket v = renewal_function_v(s.model(), curve, level);
    return {s.q() * v.lower, s.q() * v.upper};
}

}  // namespace levyruin
