#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "levyruin/errors.hpp"
#include "levyruin/exact_ruin.hpp"

using namespace levyruin;

namespace {

RiskModel cl_exp() { return RiskModel::cramer_lundberg(2.0, 1.0, TailDistribution::exponential(1.0)); }

// psi(u) = rho exp(-(1 - rho) u / mu) for exponential claims
double exp_psi(double rho, double mu, double u) { return rho * std::exp(-(1.0 - rho) * u / mu); }

}  // namespace

TEST_CASE("exponential claims: closed form inside every bracket") {
    for (double gamma : {1.25, 2.0, 5.0}) {
        const RiskModel m = RiskModel::cramer_lundberg(gamma, 1.0, TailDistribution::exponential(2.0));
        const double rho = 0.5 / gamma;
        ExactOptions o;
        o.u_max = 15.0;
        const RuinCurve c = pk_ruin(m, o);
        CAPTURE(gamma);
        CHECK(c.max_width() <= 1e-3);
        for (std::size_t j = 0; j < c.size(); ++j) {
            const double truth = exp_psi(rho, 0.5, c.grid(j));
            CHECK(c.psi_lower()[j] <= truth);
            CHECK(truth <= c.psi_upper()[j]);
        }
    }
}

TEST_CASE("bracket invariants") {
    const RiskModel m = RiskModel::cramer_lundberg(3.0, 1.0, TailDistribution::weibull(0.6));
    const double rho = m.summarize().rho;
    const RuinCurve c = pk_ruin(m, {});
    CHECK(c.psi_lower()[0] <= rho);
    CHECK(rho <= c.psi_upper()[0]);
    for (std::size_t j = 0; j < c.size(); ++j) {
        CHECK(0.0 <= c.psi_lower()[j]);
        CHECK(c.psi_lower()[j] <= c.psi_upper()[j]);
        CHECK(c.psi_upper()[j] <= 1.0);
        CHECK(c.psi_upper()[j] - c.psi_lower()[j] <= 1e-3);
        if (j > 0) {
            CHECK(c.psi_lower()[j] <= c.psi_lower()[j - 1]);
            CHECK(c.psi_upper()[j] <= c.psi_upper()[j - 1]);
        }
    }
}

TEST_CASE("series truncation certificate") {
    const RiskModel m = RiskModel::cramer_lundberg(4.0 / 3.0, 1.0, TailDistribution::pareto(2.5));
    ExactOptions o;
    o.u_max = 50.0;
    o.h = 0.05;
    o.refine = false;
    o.tol = 1.0;
    const RuinCurve c = pk_ruin(m, o);
    ExactOptions more = o;
    more.terms = c.series_terms_used() + 5;
    const RuinCurve d = pk_ruin(m, more);
    CHECK(c.truncation_bound() <= 1e-10);
    for (std::size_t j = 0; j < c.size(); ++j) {
        CHECK(std::abs(d.psi_lower()[j] - c.psi_lower()[j]) < c.truncation_bound());
        CHECK(std::abs(d.psi_upper()[j] - c.psi_upper()[j]) < c.truncation_bound());
    }
}

TEST_CASE("halving the grid step nests the brackets") {
    const RiskModel m = RiskModel::cramer_lundberg(3.0, 1.0, TailDistribution::lognormal(0.0, 1.0));
    ExactOptions o;
    o.u_max = 10.0;
    o.h = 0.04;
    o.refine = false;
    o.tol = 1.0;
    const RuinCurve coarse = pk_ruin(m, o);
    o.h = 0.02;
    const RuinCurve fine = pk_ruin(m, o);
    CHECK(fine.max_width() < coarse.max_width());
    for (std::size_t j = 0; j < coarse.size(); ++j) {
        CHECK(fine.psi_lower()[2 * j] >= coarse.psi_lower()[j] - 1e-15);
        CHECK(fine.psi_upper()[2 * j] <= coarse.psi_upper()[j] + 1e-15);
    }
}

TEST_CASE("Pareto ruin approaches its integrated-tail asymptote from above") {
    const RiskModel m = RiskModel::cramer_lundberg(4.0 / 3.0, 1.0, TailDistribution::pareto(2.5));
    ExactOptions o;
    o.u_max = 400.0;
    const RuinCurve c = pk_ruin(m, o);
    double prev = std::numeric_limits<double>::infinity();
    for (double u : {10.0, 50.0, 100.0, 400.0}) {
        const double r = c.at(u).mid() / std::pow(1.0 + u, -1.5);
        CHECK(r > 1.0);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("lookups refuse extrapolation") {
    const RuinCurve c = pk_ruin(cl_exp(), {});
    CHECK_THROWS_AS(c.at(c.u_max() + 1.0), DomainError);
    CHECK_THROWS_AS(c.at(-0.1), DomainError);
    const Bracket mid = c.at(0.5 * c.h());
    CHECK(mid.contains(exp_psi(0.5, 1.0, 0.5 * c.h())));
}

TEST_CASE("unreachable tolerance reports the best curve") {
    ExactOptions o;
    o.tol = 1e-9;
    o.max_grid_points = 1u << 12;
    try {
        (void)pk_ruin(cl_exp(), o);
        FAIL("expected ToleranceError");
    } catch (const ToleranceError& e) {
        CHECK(e.best().size() > 1);
        CHECK(e.best().max_width() > 1e-9);
    }
}

TEST_CASE("only the classical model has an exact curve") {
    const RiskModel jd = RiskModel::jump_diffusion(2.0, 1.0, 1.0, TailDistribution::exponential(1.0));
    CHECK_THROWS_AS(pk_ruin(jd, {}), DomainError);
}

TEST_CASE("curve CSV carries the certificate header") {
    ExactOptions o;
    o.u_max = 1.0;
    const RuinCurve c = pk_ruin(cl_exp(), o);
    std::ostringstream os;
    c.write_csv(os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line.find("series_terms_used=" + std::to_string(c.series_terms_used())) != std::string::npos);
    CHECK(line.find("truncation_bound=") != std::string::npos);
    std::getline(is, line);
    CHECK(line == "u,psi_lower,psi_upper");
    std::size_t rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == c.size());
}

TEST_CASE("convolution powers") {
    const TailDistribution e = TailDistribution::exponential(1.5);
    const ConvolutionPowerTail one = convolution_power_tail(e, 1, 0.01, 10.0);
    for (std::size_t j = 0; j < one.lower.size(); j += 50) {
        CHECK(one.lower[j] <= one.single[j] + 1e-15);
        CHECK(one.single[j] <= one.upper[j] + 1e-15);
        CHECK(one.single[j] == doctest::Approx(e.tail(0.01 * j)).epsilon(1e-14));
    }
    const ConvolutionPowerTail two = convolution_power_tail(e, 2, 0.005, 10.0);
    for (std::size_t j = 0; j < two.lower.size(); j += 40) {
        const double u = 0.005 * j;
        const double gamma2 = (1.0 + 1.5 * u) * std::exp(-1.5 * u);
        CHECK(two.lower[j] <= gamma2 + 1e-15);
        CHECK(gamma2 <= two.upper[j] + 1e-15);
        CHECK(two.upper[j] - two.lower[j] < 0.02);
    }
    const ConvolutionPowerTail p = convolution_power_tail(TailDistribution::pareto(1.5), 2, 0.05, 1000.0);
    CHECK(std::abs(p.ratio(20000) - 2.0) < std::abs(p.ratio(2000) - 2.0));
    CHECK(std::abs(p.ratio(2000) - 2.0) < std::abs(p.ratio(200) - 2.0));
}

TEST_CASE("renewal function") {
    const RiskModel m = cl_exp();
    const RuinCurve c = pk_ruin(m, {});
    const double q = m.summarize().q;
    CHECK(renewal_function_v(m, c, 0.0).contains(0.5 / q));
    CHECK(renewal_function_v(m, c, 2.0).contains((1.0 - 0.5 * std::exp(-1.0)) / q));
    const Bracket inf = renewal_function_v(m, c, std::numeric_limits<double>::infinity());
    CHECK(std::abs(q * inf.lower - 1.0) < 1e-10);
    CHECK(std::abs(q * inf.upper - 1.0) < 1e-10);
    CHECK_THROWS_AS(renewal_function_v(m, c, c.u_max() + 1.0), DomainError);
}
