#include <doctest.h>

#include <cmath>
#include <vector>

#include "levyruin/errors.hpp"
#include "levyruin/ladder.hpp"
#include "oracles.hpp"

using namespace levyruin;

namespace {

RiskModel jd_modexp() {
    return RiskModel::jump_diffusion(3.0, 0.5, 0.5, TailDistribution::modified_exponential(1.0, 3.0));
}

}  // namespace

TEST_CASE("ladder-height Levy tail") {
    const RiskModel e = RiskModel::cramer_lundberg(2.0, 1.0, TailDistribution::exponential(1.0));
    CHECK(pi_h_tail(e, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    const RiskModel p = RiskModel::cramer_lundberg(5.0, 2.0, TailDistribution::pareto(2.5));
    for (double u : {0.5, 3.0, 40.0}) CHECK(pi_h_tail(p, u) == doctest::Approx(2.0 * std::pow(1.0 + u, -1.5) / 1.5).epsilon(1e-13));
    const RiskModel s = RiskModel::stable_perturbed(1.0, 1.5, 0.0, TailDistribution::exponential(1.0));
    for (double u : {0.5, 3.0, 40.0}) CHECK(pi_h_tail(s, u) == doctest::Approx(std::pow(u, -0.5) / std::tgamma(0.5)).epsilon(1e-13));
    const RiskModel w = RiskModel::cramer_lundberg(4.0, 1.0, TailDistribution::weibull(0.5));
    const double ref = oracle::simpson_upper([&](double y) { return w.pi_x_plus_tail(y); }, 2.0, 400000);
    CHECK(pi_h_tail(w, 2.0) == doctest::Approx(ref).epsilon(1e-7));
}

TEST_CASE("ladder-height Levy tail is nonincreasing and convex for compound Poisson jumps") {
    const RiskModel p = RiskModel::cramer_lundberg(5.0, 2.0, TailDistribution::lognormal(0.0, 1.0));
    const double h = 0.05;
    double prev = pi_h_tail(p, 0.0);
    for (double u = h; u < 30.0; u += h) {
        const double v = pi_h_tail(p, u);
        CHECK(v <= prev);
        CHECK(pi_h_tail(p, u + h) - 2.0 * v + pi_h_tail(p, u - h) >= -1e-8);
        prev = v;
    }
    CHECK(pi_h_tail(p, 1e6) < 1e-12);
}

TEST_CASE("regime classification") {
    const RiskModel e = RiskModel::cramer_lundberg(2.0, 1.0, TailDistribution::exponential(1.0));
    const LadderSummary se = classify_regime(e);
    CHECK(se.regime().kind == Regime::Kind::Cramer);
    CHECK(se.regime().nu0 == doctest::Approx(0.5).epsilon(1e-11));
    CHECK(se.regime().name() == "Cramer");

    const LadderSummary sp = classify_regime(RiskModel::cramer_lundberg(2.0, 1.0, TailDistribution::pareto(2.5)));
    CHECK(sp.regime().kind == Regime::Kind::Subexponential);
    CHECK(sp.alpha() == 0.0);
    REQUIRE(sp.log_delta_alpha_h());
    CHECK(*sp.log_delta_alpha_h() == 0.0);
    CHECK(sp.ladder_decay() == doctest::Approx(sp.q()));

    const RiskModel jd = jd_modexp();
    const LadderSummary sj = classify_regime(jd);
    CHECK(sj.regime().kind == Regime::Kind::ConvolutionEquivalent);
    CHECK(sj.alpha() == 1.0);
    REQUIRE(sj.log_delta_alpha_h());
    const double decay = -jd.laplace_exponent(1.0);
    CHECK(decay > 0.0);
    CHECK(sj.q() - *sj.log_delta_alpha_h() == doctest::Approx(decay).epsilon(1e-12));
    CHECK(sj.ladder_decay() == doctest::Approx(decay).epsilon(1e-12));

    const LadderSummary ss = classify_regime(RiskModel::stable_perturbed(4.0, 1.5, 1.0, TailDistribution::exponential(1.0)));
    CHECK(ss.regime().kind == Regime::Kind::Subexponential);
}

TEST_CASE("unclassified is an outcome, not an error") {
    // Lognormal claims declared L(0) but not S(0): no limit theorem applies.
    const TailDistribution w = TailDistribution::lognormal(0.0, 1.0).with_class({0.0, true, false});
    const LadderSummary s = classify_regime(RiskModel::cramer_lundberg(3.0, 1.0, w));
    CHECK(s.regime().kind == Regime::Kind::Unclassified);
    CHECK_FALSE(s.diagnostic().empty());
    // Modified exponential with phi(alpha) >= 0 has a Lundberg root instead:
    // phi(1) = -0.4 + (1.5 - 1) > 0.
    const RiskModel heavy_load =
        RiskModel::cramer_lundberg(0.4, 1.0, TailDistribution::modified_exponential(1.0, 3.0));
    CHECK(classify_regime(heavy_load).regime().kind == Regime::Kind::Cramer);
}

TEST_CASE("labels are exclusive") {
    const std::vector<RiskModel> models = {
        RiskModel::cramer_lundberg(2.0, 1.0, TailDistribution::exponential(1.0)),
        RiskModel::cramer_lundberg(2.0, 1.0, TailDistribution::pareto(2.5)),
        jd_modexp(),
        RiskModel::cramer_lundberg(1.1, 1.0, TailDistribution::modified_exponential(1.0, 3.0)),
    };
    for (const RiskModel& m : models) {
        const LadderSummary s = classify_regime(m);
        const bool root = m.lundberg_root().has_value();
        CHECK((s.regime().kind == Regime::Kind::Cramer) == root);
    }
}

TEST_CASE("ladder tail ratio tends to alpha") {
    const LadderSummary s = classify_regime(jd_modexp());
    CHECK(ladder_tail_ratio(s, 50.0) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(std::abs(ladder_tail_ratio(s, 200.0) - 1.0) < std::abs(ladder_tail_ratio(s, 20.0) - 1.0));
    const LadderSummary e = classify_regime(RiskModel::cramer_lundberg(2.0, 1.0, TailDistribution::exponential(1.0)));
    CHECK_THROWS_AS(ladder_tail_ratio(e, 10.0), DomainError);
    const LadderSummary p = classify_regime(RiskModel::cramer_lundberg(2.0, 1.0, TailDistribution::pareto(2.5)));
    CHECK_THROWS_AS(ladder_tail_ratio(p, 10.0), DomainError);
}
