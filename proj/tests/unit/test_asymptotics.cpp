#include <doctest.h>

#include <cmath>
#include <numbers>

#include "levyruin/asymptotics.hpp"
#include "levyruin/errors.hpp"
#include "oracles.hpp"

using namespace levyruin;

namespace {

RiskModel jd_modexp(double sigma = 0.5, double lambda = 0.5) {
    return RiskModel::jump_diffusion(3.0, sigma, lambda, TailDistribution::modified_exponential(1.0, 3.0));
}

}  // namespace

TEST_CASE("classical subexponential asymptote") {
    const RiskModel m = RiskModel::cramer_lundberg(4.0 / 3.0, 1.0, TailDistribution::pareto(2.5));
    const LadderSummary s = classify_regime(m);
    const RuinAsymptote a = ruin_asymptote(s);
    CHECK(a.coefficient() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a.shape_kind() == RuinAsymptote::Shape::IntegratedTail);
    for (double u : {1.0, 10.0, 1000.0}) {
        CHECK(a(u) == doctest::Approx(std::pow(1.0 + u, -1.5)).epsilon(1e-14));
        // same law through the generic and the ladder-height forms
        CHECK(generic_ruin_asymptote(s)(u) == doctest::Approx(a(u)).epsilon(1e-12));
        CHECK(ladder_ruin_asymptote(s)(u) == doctest::Approx(a(u)).epsilon(1e-12));
    }
    double prev = a(0.1);
    for (double u = 0.2; u < 100.0; u += 0.1) {
        CHECK(a(u) > 0.0);
        CHECK(a(u) <= prev);
        prev = a(u);
    }
}

TEST_CASE("jump diffusion: generic and specialised forms agree") {
    for (double sigma : {0.3, 0.8}) {
        for (double lambda : {0.3, 0.9}) {
            const LadderSummary s = classify_regime(jd_modexp(sigma, lambda));
            REQUIRE(s.regime().kind == Regime::Kind::ConvolutionEquivalent);
            const RuinAsymptote g = generic_ruin_asymptote(s);
            const RuinAsymptote j = ruin_asymptote(s);
            const RuinAsymptote l = ladder_ruin_asymptote(s);
            for (double u : {0.5, 5.0, 30.0}) {
                CHECK(j(u) == doctest::Approx(g(u)).epsilon(1e-10));
                CHECK(l(u) == doctest::Approx(g(u)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("integrated-tail exponential moment: quadrature vs closed relation") {
    const TailDistribution m = TailDistribution::modified_exponential(1.0, 3.0);
    const double closed = (m.exp_moment(1.0) - 1.0) / (m.mean() * 1.0);
    CHECK(integrated_tail_exp_moment(m, 1.0) == doctest::Approx(closed).epsilon(1e-11));
    const TailDistribution e = TailDistribution::exponential(2.0);
    CHECK(integrated_tail_exp_moment(e, 0.5) == doctest::Approx(2.0 / 1.5).epsilon(1e-12));
}

TEST_CASE("stable regime cases") {
    const double p = 1.5;
    const RiskModel light = RiskModel::stable_perturbed(4.0, p, 1.0, TailDistribution::exponential(1.0));
    const RuinAsymptote a1 = ruin_asymptote(classify_regime(light));
    const double q1 = light.summarize().q;
    for (double u : {10.0, 1000.0}) CHECK(a1(u) == doctest::Approx(std::pow(u, -0.5) / (std::sqrt(std::numbers::pi) * q1)).epsilon(1e-13));

    const RiskModel pure = RiskModel::stable_perturbed(2.0, p, 0.0, TailDistribution::pareto(1.2));
    CHECK(ruin_asymptote(classify_regime(pure)).shape_kind() == RuinAsymptote::Shape::PowerLaw);

    const RiskModel equal = RiskModel::stable_perturbed(4.0, p, 0.5, TailDistribution::pareto(p, 2.0));
    const RuinAsymptote a2 = ruin_asymptote(classify_regime(equal));
    const double c2 = 1.0 / std::sqrt(std::numbers::pi) + 0.5 * std::pow(2.0, p) / (p - 1.0);
    CHECK(a2.coefficient() == doctest::Approx(c2 / equal.summarize().q).epsilon(1e-13));

    const RiskModel heavy = RiskModel::stable_perturbed(4.0, p, 1.0, TailDistribution::pareto(1.3));
    const RuinAsymptote a3 = ruin_asymptote(classify_regime(heavy));
    CHECK(a3.shape_kind() == RuinAsymptote::Shape::IntegratedTail);
    CHECK(a3(1e6) / a1(1e6) > a3(1e3) / a1(1e3));
}

TEST_CASE("asymptote rejects light tails and unclassified models") {
    const LadderSummary c = classify_regime(RiskModel::cramer_lundberg(2.0, 1.0, TailDistribution::exponential(1.0)));
    CHECK_THROWS_AS(ruin_asymptote(c), DomainError);
    const TailDistribution w = TailDistribution::lognormal(0.0, 1.0).with_class({0.0, true, false});
    const LadderSummary u = classify_regime(RiskModel::cramer_lundberg(3.0, 1.0, w));
    CHECK_THROWS_AS(ruin_asymptote(u), DomainError);
}

TEST_CASE("asymptote serialises") {
    const RuinAsymptote a = ruin_asymptote(classify_regime(RiskModel::cramer_lundberg(4.0 / 3.0, 1.0, TailDistribution::pareto(2.5))));
    const nlohmann::json j = a.to_json();
    CHECK(j.at("coefficient").get<double>() == doctest::Approx(1.0));
    CHECK(j.at("shape_kind").get<std::string>() == to_string(a.shape_kind()));
    CHECK(j.contains("params"));
}

TEST_CASE("overshoot limit at alpha = 0 puts all mass at infinity") {
    const OvershootLimit g = overshoot_limit(classify_regime(RiskModel::cramer_lundberg(2.0, 1.0, TailDistribution::pareto(2.5))));
    CHECK(g.degenerate());
    for (double x : {0.0, 1.0, 1e3, 1e9}) CHECK(g.gbar(x) == 1.0);
}

TEST_CASE("overshoot limit for alpha > 0") {
    const RiskModel cl = RiskModel::cramer_lundberg(3.0, 1.0, TailDistribution::modified_exponential(1.0, 3.0));
    const LadderSummary s = classify_regime(cl);
    REQUIRE(s.regime().kind == Regime::Kind::ConvolutionEquivalent);
    const OvershootLimit g = overshoot_limit(s);
    CHECK_FALSE(g.degenerate());
    CHECK(g.gbar(0.0) == doctest::Approx(1.0).epsilon(1e-10));
    REQUIRE(g.mass_at_zero());
    CHECK(*g.mass_at_zero() == 0.0);

    // independent quadrature of the defining integral
    const double q = s.q();
    const double decay = -cl.laplace_exponent(1.0);
    for (double x : {0.5, 2.0, 6.0}) {
        const double integral = oracle::simpson_upper(
            [&](double t) { return -std::expm1(-t) * std::exp(-x) * std::pow(1.0 + x + t, -3.0); }, 0.0, 400000);
        const double ref = (decay * std::exp(-x) + integral) / q;
        CHECK(g.gbar(x) == doctest::Approx(ref).epsilon(1e-7));
    }

    double prev = 1.0;
    for (double x = 0.0; x < 40.0; x += 0.05) {
        const double v = g.gbar(x);
        CHECK(v <= prev + 1e-14);
        CHECK(v >= 0.0);
        prev = v;
    }
    const double r1 = -std::log(g.gbar(20.0)) / 20.0;
    const double r2 = -std::log(g.gbar(60.0)) / 60.0;
    CHECK(std::abs(r2 - 1.0) < std::abs(r1 - 1.0));
    CHECK(g.gbar(60.0) < 1e-20);
}

TEST_CASE("creeping mass needs the ladder drift for the jump diffusion") {
    const LadderSummary s = classify_regime(jd_modexp());
    CHECK_FALSE(overshoot_limit(s).mass_at_zero());
    const OvershootLimit g = overshoot_limit(s, 0.125);
    REQUIRE(g.mass_at_zero());
    CHECK(*g.mass_at_zero() == doctest::Approx(0.125 / s.q()).epsilon(1e-14));
}

TEST_CASE("finite-u overshoot ratio") {
    const LadderSummary s = classify_regime(RiskModel::cramer_lundberg(4.0, 1.0, TailDistribution::pareto(1.5)));
    for (double u : {10.0, 50.0}) {
        for (double x : {0.0, 1.0, 30.0}) {
            CHECK(overshoot_finite_u(s, u, x) == doctest::Approx(std::pow((1.0 + u + x) / (1.0 + u), -0.5)).epsilon(1e-12));
        }
    }
    CHECK(std::abs(overshoot_finite_u(s, 1e5, 3.0) - 1.0) < std::abs(overshoot_finite_u(s, 1e2, 3.0) - 1.0));
    CHECK_THROWS_AS(overshoot_finite_u(classify_regime(jd_modexp()), 10.0, 1.0), DomainError);
}

TEST_CASE("local time limit") {
    const LadderSummary sub = classify_regime(RiskModel::cramer_lundberg(2.0, 1.0, TailDistribution::pareto(2.5)));
    for (double t : {0.0, 0.5, 3.0}) CHECK(local_time_limit(sub, t) == doctest::Approx(std::exp(-sub.q() * t)).epsilon(1e-15));

    const RiskModel jd = jd_modexp();
    const LadderSummary s = classify_regime(jd);
    CHECK(local_time_limit(s, 0.0) == 1.0);
    const double r = jd.laplace_exponent(1.0);
    for (double t = 0.1; t <= 10.0; t += 0.1) {
        const double v = local_time_limit(s, t);
        CHECK(std::abs(v - local_time_limit_ladder(s, t)) < 1e-12);
        CHECK(v > std::exp(r * t));
        CHECK(v <= 1.0);
    }
}

TEST_CASE("last ladder height limit at alpha = 0") {
    // exponential claims evaluated at alpha = 0: closed form 1 - psi(level)
    const RiskModel e = RiskModel::cramer_lundberg(2.0, 1.0, TailDistribution::exponential(1.0));
    const RuinCurve ce = pk_ruin(e, {});
    const LadderSummary se = classify_regime(e, 0.0);
    CHECK(last_ladder_height_limit(se, ce, 2.0).contains(1.0 - 0.5 * std::exp(-1.0)));
    CHECK(last_ladder_height_limit(se, ce, 0.0).contains(0.5));

    const RiskModel sub = RiskModel::cramer_lundberg(2.0, 1.0, TailDistribution::pareto(2.5));
    ExactOptions o;
    o.u_max = 400.0;
    const RuinCurve c = pk_ruin(sub, o);
    const LadderSummary s = classify_regime(sub);
    const double rho = sub.summarize().rho;
    CHECK(last_ladder_height_limit(s, c, 0.0).contains(1.0 - rho));
    for (double phi : {1.0, 5.0, 20.0}) {
        const Bracket b = last_ladder_height_limit(s, c, phi);
        const Bracket psi = c.at(phi);
        CHECK(b.lower == doctest::Approx(1.0 - psi.upper).epsilon(1e-12));
        CHECK(b.upper == doctest::Approx(1.0 - psi.lower).epsilon(1e-12));
    }
    CHECK(last_ladder_height_limit(s, c, 400.0).upper > 0.995);

    const RiskModel m = RiskModel::cramer_lundberg(3.0, 1.0, TailDistribution::modified_exponential(1.0, 3.0));
    const RuinCurve cm = pk_ruin(m, {});
    CHECK_THROWS_WITH_AS(last_ladder_height_limit(classify_regime(m), cm, 1.0),
                         doctest::Contains("unsupported"), DomainError);
}
