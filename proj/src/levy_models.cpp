#include "levyruin/levy_models.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "levyruin/errors.hpp"

namespace levyruin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRootTol = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_common(double gamma, double lambda, const TailDistribution& claim, bool lambda_zero_ok) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("model.gamma must be > 0");
    if (!(lambda_zero_ok ? lambda >= 0.0 : lambda > 0.0) || !std::isfinite(lambda)) {
        throw ConfigError(lambda_zero_ok ? "model.lambda must be >= 0" : "model.lambda must be > 0");
    }
    const double mu = claim.mean();
    if (!std::isfinite(mu)) {
        throw ConfigError("claim mean must be finite for the process to drift to -infinity");
    }
    const double rho = lambda * mu / gamma;
    if (!(rho < 1.0)) {
        std::ostringstream msg;
        msg << "net profit condition violated: rho = lambda mu / gamma = " << rho << " >= 1";
        throw ConfigError(msg.str());
    }
}

}  // namespace

RiskModel::RiskModel(Variant v) : v_(std::move(v)) {
    std::visit(overloaded{
                   [](const CramerLundberg& m) {
                       check_common(m.premium_rate, m.intensity, m.claim, false);
                   },
                   [](const JumpDiffusion& m) {
                       if (!(m.volatility > 0.0) || !std::isfinite(m.volatility)) {
                           throw ConfigError("model.sigma must be > 0");
                       }
                       check_common(m.premium_rate, m.intensity, m.claim, true);
                   },
                   [](const StablePerturbed& m) {
                       if (!(m.stable_index > 1.0 && m.stable_index < 2.0)) {
                           throw ConfigError("model.p must lie in (1, 2)");
                       }
                       check_common(m.premium_rate, m.intensity, m.claim, true);
                   },
               },
               v_);
}

RiskModel RiskModel::cramer_lundberg(double gamma, double lambda, TailDistribution claim) {
    return RiskModel(CramerLundberg{gamma, lambda, std::move(claim)});
}
RiskModel RiskModel::jump_diffusion(double gamma, double sigma, double lambda,
                                    TailDistribution claim) {
    return RiskModel(JumpDiffusion{gamma, sigma, lambda, std::move(claim)});
}
RiskModel RiskModel::stable_perturbed(double gamma, double p, double lambda,
                                      TailDistribution claim) {
    return RiskModel(StablePerturbed{gamma, p, lambda, std::move(claim)});
}

std::string RiskModel::variant_name() const {
    return std::visit(overloaded{
                          [](const CramerLundberg&) { return std::string("CramerLundberg"); },
                          [](const JumpDiffusion&) { return std::string("JumpDiffusion"); },
                          [](const StablePerturbed&) { return std::string("StablePerturbed"); },
                      },
                      v_);
}

const TailDistribution& RiskModel::claim() const {
    return std::visit([](const auto& m) -> const TailDistribution& { return m.claim; }, v_);
}
double RiskModel::premium_rate() const {
    return std::visit([](const auto& m) { return m.premium_rate; }, v_);
}
double RiskModel::intensity() const {
    return std::visit([](const auto& m) { return m.intensity; }, v_);
}
double RiskModel::volatility() const {
    const auto* jd = std::get_if<JumpDiffusion>(&v_);
    return jd ? jd->volatility : 0.0;
}
double RiskModel::stable_index() const {
    const auto* st = std::get_if<StablePerturbed>(&v_);
    return st ? st->stable_index : 0.0;
}

ExpAbscissa RiskModel::exponent_abscissa() const {
    if (is_stable()) return {0.0, true};
    if (intensity() == 0.0) return {kInf, false};
    return claim().exp_abscissa();
}

double RiskModel::laplace_exponent(double theta) const {
    if (theta == 0.0) return 0.0;
    if (!exponent_abscissa().finite_at(theta)) throw DomainError("exponent infinite");
    const double lambda = intensity();
    const double jumps = lambda == 0.0 ? 0.0 : lambda * claim().exp_moment_minus_one(theta);
    if (!std::isfinite(jumps)) throw DomainError("exponent infinite");
    double phi = -theta * premium_rate() + jumps;
    if (const auto* jd = std::get_if<JumpDiffusion>(&v_)) {
        phi += 0.5 * jd->volatility * jd->volatility * theta * theta;
    } else if (const auto* st = std::get_if<StablePerturbed>(&v_)) {
        phi += std::pow(-theta, st->stable_index);
    }
    return phi;
}

ModelSummary RiskModel::summarize() const {
    const double gamma = premium_rate();
    const double rho = intensity() * claim().mean() / gamma;
    return {rho, intensity() * claim().mean() - gamma, gamma * (1.0 - rho)};
}

double RiskModel::pi_x_plus_tail(double x) const {
    if (!(x > 0.0)) throw DomainError("pi_x_plus_tail: x must be > 0");
    double value = intensity() == 0.0 ? 0.0 : intensity() * claim().tail(x);
    if (const auto* st = std::get_if<StablePerturbed>(&v_)) {
        const double p = st->stable_index;
        value += (p - 1.0) / std::tgamma(2.0 - p) * std::pow(x, -p);
    }
    return value;
}

std::optional<double> RiskModel::lundberg_root() const {
    const ExpAbscissa dom = exponent_abscissa();
    if (dom.value <= 0.0) return std::nullopt;

    // phi is strictly convex with phi(0) = 0 and phi'(0-) < 0, so a positive
    // root exists iff phi turns positive somewhere inside the domain.
    double hi = 0.0;
    if (std::isinf(dom.value)) {
        hi = 1.0;
        int k = 0;
        while (laplace_exponent(hi) <= 0.0) {
            if (++k > 1000) return std::nullopt;
            hi *= 2.0;
        }
    } else if (dom.attained) {
        hi = dom.value;
        const double at_edge = laplace_exponent(hi);
        if (at_edge < 0.0) return std::nullopt;
        if (at_edge == 0.0) return hi;
    } else {
        bool found = false;
        for (int k = 1; k <= 52 && !found; ++k) {
            hi = dom.value * (1.0 - std::ldexp(1.0, -k));
            found = laplace_exponent(hi) > 0.0;
        }
        if (!found) return std::nullopt;
    }

    double lo = 0.5 * hi;
    for (int k = 0; laplace_exponent(lo) >= 0.0; ++k) {
        if (k > 200) return std::nullopt;
        lo *= 0.5;
    }
    while (hi - lo > kRootTol) {
        const double mid = 0.5 * (lo + hi);
        (laplace_exponent(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace levyruin
