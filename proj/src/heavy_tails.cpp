#include "levyruin/heavy_tails.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "levyruin/errors.hpp"
#include "quadrature.hpp"

namespace levyruin {

using detail::kInf;

void ClassTag::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw ConfigError("class.alpha must be a finite nonnegative number");
    }
    if (in_S && !in_L) {
        throw ConfigError("class.in_S requires class.in_L (S(alpha) is a subset of L(alpha))");
    }
}

// ---------------------------------------------------------------------------
// TailModel defaults

double TailModel::log_tail(double x) const { return std::log(tail(x)); }

std::optional<double> TailModel::density(double) const { return std::nullopt; }

double TailModel::moment(int k) const {
    if (k == 0) return 1.0;
    const double kd = k;
    try {
        return detail::integrate_upper(
            [this, kd](double x) {
                const double lt = log_tail(x);
                return x <= 0.0 ? (kd == 1.0 ? std::exp(lt) : 0.0)
                                : kd * std::exp((kd - 1.0) * std::log(x) + lt);
            },
            0.0, "moment");
    } catch (const NumericError&) {
        return kInf;
    }
}

double TailModel::tail_integral(double x) const {
    return detail::integrate_upper([this](double y) { return std::exp(log_tail(y)); }, x,
                                   "tail integral");
}

std::optional<double> TailModel::exp_moment_m1_closed(double a) const {
    if (a == 0.0) return 0.0;
    return std::nullopt;
}

std::optional<PowerTailLimit> TailModel::power_tail_limit(double) const { return std::nullopt; }

std::shared_ptr<const TailModel> TailModel::integrated_closed_form() const { return nullptr; }

double TailModel::quantile_tail(double prob) const {
    if (!(prob > 0.0 && prob <= 1.0)) throw DomainError("tail quantile needs prob in (0, 1]");
    if (tail(0.0) <= prob) return 0.0;
    double hi = 1.0;
    while (tail(hi) > prob) {
        hi *= 2.0;
        if (hi > 1e300) return kInf;
    }
    double lo = 0.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (tail(mid) > prob ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double TailModel::sample(Rng& rng) const { return quantile_tail(uniform_open(rng)); }

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

// ---------------------------------------------------------------------------
// Families

class Exponential final : public TailModel {
public:
    explicit Exponential(double rate) : rate_(rate) {
        require(rate > 0.0 && std::isfinite(rate), "exponential: params.rate must be > 0");
    }
    std::string family() const override { return "exponential"; }
    nlohmann::json params() const override { return {{"rate", rate_}}; }
    ClassTag default_class() const override { return {rate_, true, false}; }

    double tail(double x) const override { return std::exp(-rate_ * x); }
    double log_tail(double x) const override { return -rate_ * x; }
    double log_tilted_tail(double a, double x) const override { return (a - rate_) * x; }
    std::optional<double> density(double x) const override { return rate_ * std::exp(-rate_ * x); }
    double moment(int k) const override {
        return std::tgamma(k + 1.0) / std::pow(rate_, k);
    }
    double tail_integral(double x) const override { return std::exp(-rate_ * x) / rate_; }
    ExpAbscissa exp_abscissa() const override { return {rate_, false}; }
    std::optional<double> exp_moment_m1_closed(double a) const override {
        if (a >= rate_) return kInf;
        return a / (rate_ - a);
    }
    std::optional<PowerTailLimit> power_tail_limit(double) const override {
        return PowerTailLimit{};
    }
    std::shared_ptr<const TailModel> integrated_closed_form() const override {
        return std::make_shared<Exponential>(rate_);
    }
    double quantile_tail(double prob) const override { return -std::log(prob) / rate_; }
    double sample(Rng& rng) const override { return standard_exponential(rng) / rate_; }

private:
    double rate_;
};

class Pareto final : public TailModel {
public:
    Pareto(double shape, double scale) : shape_(shape), scale_(scale) {
        require(shape > 0.0 && std::isfinite(shape), "pareto: params.shape must be > 0");
        require(scale > 0.0 && std::isfinite(scale), "pareto: params.scale must be > 0");
    }
    std::string family() const override { return "pareto"; }
    nlohmann::json params() const override { return {{"shape", shape_}, {"scale", scale_}}; }
    ClassTag default_class() const override { return {0.0, true, true}; }

    double tail(double x) const override { return std::pow(1.0 + x / scale_, -shape_); }
    double log_tail(double x) const override { return -shape_ * std::log1p(x / scale_); }
    std::optional<double> density(double x) const override {
        return shape_ / scale_ * std::pow(1.0 + x / scale_, -shape_ - 1.0);
    }
    double moment(int k) const override {
        if (k >= shape_) return kInf;
        return std::pow(scale_, k) * std::tgamma(k + 1.0) * std::tgamma(shape_ - k) /
               std::tgamma(shape_);
    }
    double tail_integral(double x) const override {
        if (shape_ <= 1.0) return kInf;
        return scale_ / (shape_ - 1.0) * std::pow(1.0 + x / scale_, 1.0 - shape_);
    }
    ExpAbscissa exp_abscissa() const override { return {0.0, true}; }
    std::optional<PowerTailLimit> power_tail_limit(double p) const override {
        if (shape_ > p) return PowerTailLimit{PowerTailLimit::Kind::Zero, 0.0};
        if (shape_ < p) return PowerTailLimit{PowerTailLimit::Kind::Infinite, 0.0};
        return PowerTailLimit{PowerTailLimit::Kind::Finite, std::pow(scale_, p)};
    }
    std::shared_ptr<const TailModel> integrated_closed_form() const override {
        if (shape_ <= 1.0) return nullptr;
        return std::make_shared<Pareto>(shape_ - 1.0, scale_);
    }
    double quantile_tail(double prob) const override {
        return scale_ * std::expm1(-std::log(prob) / shape_);
    }

private:
    double shape_;
    double scale_;
};

class Weibull final : public TailModel {
public:
    Weibull(double shape, double scale) : shape_(shape), scale_(scale) {
        require(shape > 0.0 && shape < 1.0, "weibull: params.shape must lie in (0, 1)");
        require(scale > 0.0 && std::isfinite(scale), "weibull: params.scale must be > 0");
    }
    std::string family() const override { return "weibull"; }
    nlohmann::json params() const override { return {{"shape", shape_}, {"scale", scale_}}; }
    ClassTag default_class() const override { return {0.0, true, true}; }

    double tail(double x) const override { return std::exp(log_tail(x)); }
    double log_tail(double x) const override { return -std::pow(x / scale_, shape_); }
    std::optional<double> density(double x) const override {
        if (x <= 0.0) return kInf;
        const double z = std::pow(x / scale_, shape_);
        return shape_ / x * z * std::exp(-z);
    }
    double moment(int k) const override { return std::pow(scale_, k) * std::tgamma(1.0 + k / shape_); }
    double tail_integral(double x) const override {
        return scale_ / shape_ * boost::math::tgamma(1.0 / shape_, std::pow(x / scale_, shape_));
    }
    ExpAbscissa exp_abscissa() const override { return {0.0, true}; }
    std::optional<PowerTailLimit> power_tail_limit(double) const override {
        return PowerTailLimit{};
    }
    double quantile_tail(double prob) const override {
        return scale_ * std::pow(-std::log(prob), 1.0 / shape_);
    }

private:
    double shape_;
    double scale_;
};

class Lognormal final : public TailModel {
public:
    Lognormal(double mu, double sigma) : mu_(mu), sigma_(sigma) {
        require(std::isfinite(mu), "lognormal: params.mu must be finite");
        require(sigma > 0.0 && std::isfinite(sigma), "lognormal: params.sigma must be > 0");
    }
    std::string family() const override { return "lognormal"; }
    nlohmann::json params() const override { return {{"mu", mu_}, {"sigma", sigma_}}; }
    ClassTag default_class() const override { return {0.0, true, true}; }

    double tail(double x) const override {
        if (x <= 0.0) return 1.0;
        return upper_normal((std::log(x) - mu_) / sigma_);
    }
    std::optional<double> density(double x) const override {
        if (x <= 0.0) return 0.0;
        const double z = (std::log(x) - mu_) / sigma_;
        return std::exp(-0.5 * z * z) / (x * sigma_ * std::sqrt(2.0 * std::numbers::pi));
    }
    double moment(int k) const override { return std::exp(k * mu_ + 0.5 * k * k * sigma_ * sigma_); }
    double tail_integral(double x) const override {
        if (x <= 0.0) return moment(1);
        const double z = (std::log(x) - mu_) / sigma_;
        const double first = moment(1) * upper_normal(z - sigma_);
        const double value = first - x * upper_normal(z);
        if (value > 1e-8 * first) return value;
        return TailModel::tail_integral(x);
    }
    ExpAbscissa exp_abscissa() const override { return {0.0, true}; }
    std::optional<PowerTailLimit> power_tail_limit(double) const override {
        return PowerTailLimit{};
    }
    double quantile_tail(double prob) const override {
        if (prob >= 1.0) return 0.0;
        return std::exp(mu_ + sigma_ * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * prob));
    }
    double sample(Rng& rng) const override { return std::exp(mu_ + sigma_ * standard_normal(rng)); }

private:
    static double upper_normal(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }
    double mu_;
    double sigma_;
};

class ModifiedExponential final : public TailModel {
public:
    ModifiedExponential(double alpha, double beta) : alpha_(alpha), beta_(beta) {
        require(alpha > 0.0 && std::isfinite(alpha),
                "modified_exponential: params.alpha must be > 0");
        require(beta > 1.0 && std::isfinite(beta), "modified_exponential: params.beta must be > 1");
        mean_ = shape_integral(0.0);
    }
    std::string family() const override { return "modified_exponential"; }
    nlohmann::json params() const override { return {{"alpha", alpha_}, {"beta", beta_}}; }
    ClassTag default_class() const override { return {alpha_, true, true}; }

    double tail(double x) const override { return std::exp(log_tail(x)); }
    double log_tail(double x) const override { return -alpha_ * x - beta_ * std::log1p(x); }
    double log_tilted_tail(double a, double x) const override {
        return (a - alpha_) * x - beta_ * std::log1p(x);
    }
    std::optional<double> density(double x) const override {
        return tail(x) * (alpha_ + beta_ / (1.0 + x));
    }
    double moment(int k) const override { return k == 1 ? mean_ : TailModel::moment(k); }
    // F̄(x) times an O(1) integral, so the result keeps full relative
    // precision far into the tail.
    double tail_integral(double x) const override { return tail(x) * shape_integral(x); }
    ExpAbscissa exp_abscissa() const override { return {alpha_, true}; }
    std::optional<double> exp_moment_m1_closed(double a) const override {
        if (a == 0.0) return 0.0;
        if (a == alpha_) return alpha_ / (beta_ - 1.0);
        if (a > alpha_) return kInf;
        return std::nullopt;
    }
    std::optional<PowerTailLimit> power_tail_limit(double) const override {
        return PowerTailLimit{};
    }
    // Tail of min(E, P) with E ~ Exp(alpha) and P ~ Lomax(beta) independent.
    double sample(Rng& rng) const override {
        const double e = standard_exponential(rng) / alpha_;
        const double p = std::expm1(standard_exponential(rng) / beta_);
        return std::min(e, p);
    }

private:
    // integral over t >= 0 of exp(-alpha t) (1 + t/(1+x))^(-beta)
    double shape_integral(double x) const {
        const double s = 1.0 + x;
        return detail::integrate_upper(
            [this, s](double t) { return std::exp(-alpha_ * t - beta_ * std::log1p(t / s)); }, 0.0,
            "modified exponential tail integral");
    }
    double alpha_;
    double beta_;
    double mean_ = 0.0;
};

class IntegratedTail final : public TailModel {
public:
    explicit IntegratedTail(std::shared_ptr<const TailModel> parent)
        : parent_(std::move(parent)), mean_(parent_->moment(1)) {}

    std::string family() const override { return "integrated_tail"; }
    nlohmann::json params() const override {
        return {{"of", {{"family", parent_->family()}, {"params", parent_->params()}}}};
    }
    ClassTag default_class() const override { return parent_->default_class(); }

    double tail(double x) const override { return parent_->tail_integral(x) / mean_; }
    double log_tail(double x) const override {
        return std::log(parent_->tail_integral(x)) - std::log(mean_);
    }
    std::optional<double> density(double x) const override { return parent_->tail(x) / mean_; }
    double moment(int k) const override { return parent_->moment(k + 1) / ((k + 1) * mean_); }
    ExpAbscissa exp_abscissa() const override { return parent_->exp_abscissa(); }
    // delta_a(F_I) = (delta_a(F) - 1) / (mu a)
    std::optional<double> exp_moment_m1_closed(double a) const override {
        if (a == 0.0) return 0.0;
        const auto m1 = parent_->exp_moment_m1_closed(a);
        if (!m1) return std::nullopt;
        if (std::isinf(*m1)) return kInf;
        return *m1 / (mean_ * a) - 1.0;
    }

private:
    std::shared_ptr<const TailModel> parent_;
    double mean_;
};

}  // namespace

// ---------------------------------------------------------------------------
// TailDistribution

TailDistribution::TailDistribution(std::shared_ptr<const TailModel> model,
                                   std::optional<ClassTag> tag)
    : model_(std::move(model)) {
    if (!model_) throw ConfigError("tail distribution needs a model");
    tag_ = tag.value_or(model_->default_class());
    tag_.validate();
}

TailDistribution TailDistribution::exponential(double rate) {
    return TailDistribution(std::make_shared<Exponential>(rate));
}
TailDistribution TailDistribution::pareto(double shape, double scale) {
    return TailDistribution(std::make_shared<Pareto>(shape, scale));
}
TailDistribution TailDistribution::weibull(double shape, double scale) {
    return TailDistribution(std::make_shared<Weibull>(shape, scale));
}
TailDistribution TailDistribution::lognormal(double mu, double sigma) {
    return TailDistribution(std::make_shared<Lognormal>(mu, sigma));
}
TailDistribution TailDistribution::modified_exponential(double alpha, double beta) {
    return TailDistribution(std::make_shared<ModifiedExponential>(alpha, beta));
}

double TailDistribution::tail(double x) const {
    if (!(x >= 0.0)) throw DomainError("tail: x must be >= 0");
    if (std::isinf(x)) return 0.0;
    return model_->tail(x);
}

double TailDistribution::log_tail(double x) const {
    if (!(x >= 0.0)) throw DomainError("log_tail: x must be >= 0");
    return model_->log_tail(x);
}

TailDistribution TailDistribution::integrated_tail() const {
    const double mu = mean();
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw DomainError("integrated tail undefined: claim mean is not finite and positive");
    }
    // Tail equivalence carries alpha and both memberships over to F_I.
    if (auto closed = model_->integrated_closed_form()) {
        return TailDistribution(std::move(closed), tag_);
    }
    return TailDistribution(std::make_shared<IntegratedTail>(model_), tag_);
}

double TailDistribution::exp_moment_minus_one(double a) const {
    if (a == 0.0) return 0.0;
    if (!model_->exp_abscissa().finite_at(a)) return kInf;
    if ((tag_.in_S || tag_.in_L) && a > tag_.alpha) return kInf;
    if (auto closed = model_->exp_moment_m1_closed(a)) return *closed;
    return exp_moment_by_quadrature(*this, a) - 1.0;
}

double TailDistribution::exp_moment(double a) const { return 1.0 + exp_moment_minus_one(a); }

double TailDistribution::hazard_ratio(double u) const {
    if (!(u > 0.0)) throw DomainError("hazard_ratio: u must be > 0");
    if (!std::isfinite(mean())) throw DomainError("integrated tail undefined: infinite mean");
    const double num = model_->tail(u);
    const double den = model_->tail_integral(u);
    if (!(num > 1e-300) || !(den > 1e-300) || !std::isfinite(den)) {
        throw NumericError("tail below resolution");
    }
    return num / den;
}

PowerTailLimit TailDistribution::power_tail_limit(double p) const {
    if (auto lim = model_->power_tail_limit(p)) return *lim;
    std::ostringstream msg;
    msg << "family '" << family() << "' declares no limit of x^p F̄(x)";
    throw DomainError(msg.str());
}

double exp_moment_by_quadrature(const TailDistribution& d, double a) {
    if (a == 0.0) return 1.0;
    const TailModel& m = d.model();
    if (!m.exp_abscissa().finite_at(a)) return kInf;
    try {
        const double integral = detail::integrate_upper(
            [&m, a](double x) { return std::exp(m.log_tilted_tail(a, x)); }, 0.0,
            "exponential moment");
        return 1.0 + a * integral;
    } catch (const NumericError&) {
        if (a > 0.0) return kInf;
        throw;
    }
}

}  // namespace levyruin
