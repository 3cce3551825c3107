#include "levyruin/ladder.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "levyruin/errors.hpp"

namespace levyruin {

std::string Regime::name() const {
    switch (kind) {
        case Kind::Cramer: return "Cramer";
        case Kind::ConvolutionEquivalent: return "ConvolutionEquivalent";
        case Kind::Subexponential: return "Subexponential";
        case Kind::Unclassified: return "Unclassified";
    }
    return "Unclassified";
}

double pi_h_tail(const RiskModel& m, double u) {
    if (!(u >= 0.0)) throw DomainError("pi_h_tail: u must be >= 0");
    double value = m.intensity() == 0.0 ? 0.0 : m.intensity() * m.claim().tail_integral(u);
    if (m.is_stable()) {
        const double p = m.stable_index();
        value += u == 0.0 ? std::numeric_limits<double>::infinity()
                          : std::pow(u, 1.0 - p) / std::tgamma(2.0 - p);
    }
    return value;
}

LadderSummary::LadderSummary(RiskModel model, double q, std::optional<double> log_delta_alpha_h,
                             Regime regime, std::string diagnostic)
    : model_(std::move(model)),
      q_(q),
      log_delta_(log_delta_alpha_h),
      regime_(regime),
      diagnostic_(std::move(diagnostic)) {}

double LadderSummary::ladder_decay() const {
    if (regime_.alpha == 0.0) return q_;
    return -model_.laplace_exponent(regime_.alpha) / regime_.alpha;
}

namespace {

std::optional<double> phi_if_finite(const RiskModel& m, double theta) {
    if (!m.exponent_abscissa().finite_at(theta)) return std::nullopt;
    const double v = m.laplace_exponent(theta);
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace

LadderSummary classify_regime(const RiskModel& m, std::optional<double> alpha_override) {
    const double q = m.summarize().q;
    const ClassTag& tag = m.claim().class_tag();
    double alpha = m.is_stable() ? 0.0 : alpha_override.value_or(tag.alpha);
    if (!(alpha >= 0.0)) throw DomainError("classify_regime: alpha must be >= 0");

    // Computed only through phi: q - log delta_alpha(H) = -phi(alpha)/alpha.
    auto log_delta_at = [&](double a) -> std::optional<double> {
        if (a == 0.0) return 0.0;
        const auto phi = phi_if_finite(m, a);
        if (!phi) return std::nullopt;
        return q + *phi / a;
    };

    if (const auto nu0 = m.lundberg_root()) {
        Regime r{Regime::Kind::Cramer, *nu0, alpha};
        std::ostringstream msg;
        msg << "Lundberg root nu0 = " << *nu0 << " exists; exponential (Cramer) decay";
        return LadderSummary(m, q, log_delta_at(alpha), r, msg.str());
    }

    if (m.is_stable()) {
        const double p = m.stable_index();
        PowerTailLimit lim;
        try {
            lim = m.claim().power_tail_limit(p);
        } catch (const DomainError& e) {
            return LadderSummary(m, q, 0.0, Regime{Regime::Kind::Unclassified, 0.0, 0.0},
                                 std::string("stable regime selector: ") + e.what());
        }
        if (lim.kind != PowerTailLimit::Kind::Infinite || m.intensity() == 0.0) {
            return LadderSummary(m, q, 0.0, Regime{Regime::Kind::Subexponential, 0.0, 0.0},
                                 "ladder tail regularly varying with index 1 - p");
        }
        if (tag.alpha == 0.0 && tag.in_S) {
            return LadderSummary(m, q, 0.0, Regime{Regime::Kind::Subexponential, 0.0, 0.0},
                                 "claims heavier than x^-p; integrated tail declared S(0)");
        }
        return LadderSummary(m, q, 0.0, Regime{Regime::Kind::Unclassified, 0.0, 0.0},
                             "claims heavier than x^-p but integrated tail not declared S(0)");
    }

    if (alpha > 0.0) {
        const auto phi = phi_if_finite(m, alpha);
        if (!tag.in_S) {
            return LadderSummary(m, q, log_delta_at(alpha),
                                 Regime{Regime::Kind::Unclassified, 0.0, alpha},
                                 "claim not declared convolution equivalent at alpha");
        }
        if (!phi) {
            return LadderSummary(m, q, std::nullopt, Regime{Regime::Kind::Unclassified, 0.0, alpha},
                                 "phi(alpha) is infinite");
        }
        if (*phi < 0.0) {
            return LadderSummary(m, q, q + *phi / alpha,
                                 Regime{Regime::Kind::ConvolutionEquivalent, 0.0, alpha},
                                 "phi(alpha) < 0: non-Cramer condition holds");
        }
        std::ostringstream msg;
        msg << "phi(alpha) = " << *phi << " >= 0 and no Lundberg root could be bracketed";
        return LadderSummary(m, q, q + *phi / alpha, Regime{Regime::Kind::Unclassified, 0.0, alpha},
                             msg.str());
    }

    if (tag.in_S) {
        return LadderSummary(m, q, 0.0, Regime{Regime::Kind::Subexponential, 0.0, 0.0},
                             "integrated claim tail declared S(0)");
    }
    return LadderSummary(m, q, 0.0, Regime{Regime::Kind::Unclassified, 0.0, 0.0},
                         "alpha = 0 but integrated tail not declared subexponential");
}

double ladder_tail_ratio(const LadderSummary& s, double u) {
    if (s.regime().kind != Regime::Kind::ConvolutionEquivalent) {
        throw DomainError("ladder_tail_ratio requires the convolution-equivalent regime (got " +
                          s.regime().name() + ")");
    }
    if (!(u > 0.0)) throw DomainError("ladder_tail_ratio: u must be > 0");
    const double num = s.model().pi_x_plus_tail(u);
    const double den = s.pi_h_tail(u);
    if (!(den > 1e-300) || !(num > 1e-300)) throw NumericError("tail below resolution");
    return num / den;
}

}  // namespace levyruin
