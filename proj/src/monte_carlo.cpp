#include "levyruin/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include "levyruin/errors.hpp"

namespace levyruin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PassageSample ruined_at(double tau, double overshoot, double sup, Crossing how,
                        std::uint64_t epochs = 0) {
    PassageSample s;
    s.outcome = Outcome::Ruined;
    s.tau = tau;
    s.overshoot = overshoot;
    s.pre_ruin_sup = sup;
    s.crossing = how;
    s.ladder_epochs = epochs;
    return s;
}

PassageSample survived(double x) {
    PassageSample s;
    s.final_position = x;
    return s;
}

double next_arrival(double t, double lambda, Rng& rng) {
    return lambda > 0.0 ? t + standard_exponential(rng) / lambda : kInf;
}

}  // namespace

std::string to_string(Crossing c) {
    switch (c) {
        case Crossing::None: return "none";
        case Crossing::Jump: return "jump";
        case Crossing::Creep: return "creep";
        case Crossing::GridDetected: return "grid";
    }
    return "none";
}

PassageSample simulate_cl(const CramerLundberg& m, double u, double horizon, Rng& rng) {
    if (!(horizon > 0.0)) throw DomainError("simulate: horizon must be > 0");
    double t = 0.0;
    double x = 0.0;
    double sup = 0.0;
    std::uint64_t epochs = 0;
    for (;;) {
        const double arrival = next_arrival(t, m.intensity, rng);
        if (arrival > horizon) return survived(x - m.premium_rate * (horizon - t));
        x -= m.premium_rate * (arrival - t);
        t = arrival;
        const double y = m.claim.sample(rng);
        if (x + y > u) return ruined_at(t, x + y - u, sup, Crossing::Jump, epochs);
        x += y;
        if (x > sup) {
            sup = x;
            ++epochs;
        }
    }
}

double bridge_crossing_probability(double x1, double x2, double u, double variance) {
    if (x1 >= u || x2 >= u) return 1.0;
    if (!(variance > 0.0)) return 0.0;
    return std::exp(-2.0 * (u - x1) * (u - x2) / variance);
}

PassageSample simulate_jump_diffusion(const JumpDiffusion& m, double u, double horizon, double dt,
                                      Rng& rng) {
    if (!(horizon > 0.0)) throw DomainError("simulate: horizon must be > 0");
    if (!(dt > 0.0)) throw DomainError("simulate: dt must be > 0");
    const bool coarse = m.intensity > 0.0 && dt > 0.1 / m.intensity;
    const double var_rate = m.volatility * m.volatility;
    double t = 0.0;
    double x = 0.0;
    double sup = 0.0;
    double jump_at = next_arrival(t, m.intensity, rng);
    for (;;) {
        const double t_end = std::min({t + dt, jump_at, horizon});
        const double step = t_end - t;
        const double var = var_rate * step;
        const double x2 = x - m.premium_rate * step + std::sqrt(var) * standard_normal(rng);
        // One uniform decides the bridge crossing and places the bridge maximum.
        const double v = uniform_open(rng);
        if (v <= bridge_crossing_probability(x, x2, u, var)) {
            auto s = ruined_at(t_end, 0.0, u, Crossing::Creep);
            s.coarse_step = coarse;
            return s;
        }
        const double bridge_max = 0.5 * (x + x2 + std::sqrt((x2 - x) * (x2 - x) - 2.0 * var * std::log(v)));
        sup = std::max(sup, bridge_max);
        x = x2;
        t = t_end;
        if (t >= horizon) {
            auto s = survived(x);
            s.coarse_step = coarse;
            return s;
        }
        if (t == jump_at) {
            const double y = m.claim.sample(rng);
            if (x + y > u) {
                auto s = ruined_at(t, x + y - u, sup, Crossing::Jump);
                s.coarse_step = coarse;
                return s;
            }
            x += y;
            sup = std::max(sup, x);
            jump_at = next_arrival(t, m.intensity, rng);
        }
    }
}

double sample_stable_unit(double p, Rng& rng) {
    if (!(p > 1.0 && p < 2.0)) throw DomainError("stable index must lie in (1, 2)");
    const double half_pi = 0.5 * std::numbers::pi;
    const double v = std::numbers::pi * (uniform_open(rng) - 0.5);
    const double w = standard_exponential(rng);
    // skewness shift for beta = 1; the overall scale is chosen so that
    // E exp(-s S) = exp(s^p)
    const double b = std::atan(std::tan(half_pi * p)) / p;
    const double shifted = p * (v + b);
    return std::sin(shifted) / std::pow(std::cos(v), 1.0 / p) *
           std::pow(std::cos(v - shifted) / w, (1.0 - p) / p);
}

PassageSample simulate_stable(const StablePerturbed& m, double u, double horizon, double dt,
                              Rng& rng) {
    if (!(horizon > 0.0)) throw DomainError("simulate: horizon must be > 0");
    if (!(dt > 0.0)) throw DomainError("simulate: dt must be > 0");
    const double p = m.stable_index;
    const bool coarse = m.intensity > 0.0 && dt > 0.1 / m.intensity;
    double t = 0.0;
    double x = 0.0;
    double sup = 0.0;
    double jump_at = next_arrival(t, m.intensity, rng);
    for (;;) {
        const double t_end = std::min({t + dt, jump_at, horizon});
        const double step = t_end - t;
        const double x2 =
            x - m.premium_rate * step + std::pow(step, 1.0 / p) * sample_stable_unit(p, rng);
        if (x2 > u) {
            auto s = ruined_at(t_end, x2 - u, sup, Crossing::GridDetected);
            s.coarse_step = coarse;
            return s;
        }
        x = x2;
        sup = std::max(sup, x);
        t = t_end;
        if (t >= horizon) {
            auto s = survived(x);
            s.coarse_step = coarse;
            return s;
        }
        if (t == jump_at) {
            const double y = m.claim.sample(rng);
            if (x + y > u) {
                auto s = ruined_at(t, x + y - u, sup, Crossing::Jump);
                s.coarse_step = coarse;
                return s;
            }
            x += y;
            sup = std::max(sup, x);
            jump_at = next_arrival(t, m.intensity, rng);
        }
    }
}

PassageSample simulate(const RiskModel& m, double u, double horizon, double dt, Rng& rng) {
    if (!(u >= 0.0)) throw DomainError("simulate: u must be >= 0");
    if (const auto* cl = std::get_if<CramerLundberg>(&m.variant())) {
        return simulate_cl(*cl, u, horizon, rng);
    }
    if (const auto* jd = std::get_if<JumpDiffusion>(&m.variant())) {
        return simulate_jump_diffusion(*jd, u, horizon, dt, rng);
    }
    return simulate_stable(std::get<StablePerturbed>(m.variant()), u, horizon, dt, rng);
}

double HorizonPolicy::horizon_for(double u, double q) const {
    if (fixed) {
        if (!(*fixed > 0.0)) throw DomainError("fixed horizon must be > 0");
        return *fixed;
    }
    if (!(factor > 0.0)) throw DomainError("horizon factor must be > 0");
    return factor * std::max(u, 1.0) / q;
}

double censoring_decay_rate(const RiskModel& m) {
    if (const auto nu0 = m.lundberg_root()) return *nu0;
    const ExpAbscissa dom = m.exponent_abscissa();
    if (dom.value > 0.0 && std::isfinite(dom.value) && dom.attained &&
        m.laplace_exponent(dom.value) <= 0.0) {
        return dom.value;
    }
    return 0.0;
}

nlohmann::json Estimate::to_json() const {
    return {{"point", point},
            {"stderr", std_error},
            {"n", n},
            {"ruined", ruined},
            {"censored_fraction", censored_fraction},
            {"bracket", {bracket.lower, bracket.upper}},
            {"horizon", horizon},
            {"dt", dt},
            {"seed", seed},
            {"certificate_rate", certificate_rate},
            {"coarse_step_warning", coarse_step}};
}

SimulationResult simulate_paths(const RiskModel& m, double u, const McOptions& opts) {
    if (opts.n_paths < 1) throw DomainError("n_paths must be >= 1");
    if (!(u >= 0.0)) throw DomainError("simulate: u must be >= 0");
    const double q = m.summarize().q;
    const double horizon = opts.horizon.horizon_for(u, q);

    SimulationResult out;
    out.samples.resize(opts.n_paths);
    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, opts.n_paths));
    {
        auto work = [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                Rng rng = stream_for(opts.seed, i);
                out.samples[i] = simulate(m, u, horizon, opts.dt, rng);
            }
        };
        std::vector<std::jthread> pool;
        const std::size_t chunk = (opts.n_paths + threads - 1) / threads;
        for (unsigned k = 1; k < threads; ++k) {
            const std::size_t b = k * chunk;
            const std::size_t e = std::min(opts.n_paths, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        work(0, std::min(opts.n_paths, chunk));
    }

    Estimate& est = out.estimate;
    est.n = opts.n_paths;
    est.horizon = horizon;
    est.dt = opts.dt;
    est.seed = opts.seed;
    est.certificate_rate = censoring_decay_rate(m);
    double late = 0.0;
    for (const PassageSample& s : out.samples) {
        est.coarse_step = est.coarse_step || s.coarse_step;
        if (s.ruined()) {
            ++est.ruined;
        } else {
            // psi(u - X_T) <= exp(-theta (u - X_T)) when exp(theta X) is a
            // supermartingale; otherwise nothing certifies the survivor.
            late += est.certificate_rate > 0.0
                        ? std::exp(-est.certificate_rate * (u - s.final_position))
                        : 1.0;
        }
    }
    const double n = static_cast<double>(est.n);
    est.point = static_cast<double>(est.ruined) / n;
    est.std_error = std::sqrt(est.point * (1.0 - est.point) / n);
    est.censored_fraction = std::clamp(late / n, 0.0, 1.0 - est.point);
    est.bracket = {est.point, est.point + est.censored_fraction};
    return out;
}

Estimate estimate_ruin(const RiskModel& m, double u, const McOptions& opts) {
    return simulate_paths(m, u, opts).estimate;
}

Ecdf::Ecdf(std::vector<double> values) : sorted_(std::move(values)) {
    std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::cdf(double x) const {
    if (sorted_.empty()) throw DomainError("ecdf of an empty sample");
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double ks_distance(const Ecdf& e, const std::function<double(double)>& reference_tail) {
    const auto& xs = e.sorted();
    if (xs.empty()) throw DomainError("ks_distance of an empty sample");
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = 1.0 - reference_tail(xs[i]);
        d = std::max({d, std::abs(static_cast<double>(i + 1) / n - f),
                      std::abs(static_cast<double>(i) / n - f)});
    }
    return d;
}

ConditionalEcdfs conditional_ecdfs(std::span<const PassageSample> samples) {
    std::vector<double> over;
    std::vector<double> sup;
    std::map<std::uint64_t, double> pmf;
    std::size_t creep = 0;
    for (const PassageSample& s : samples) {
        if (!s.ruined()) continue;
        over.push_back(s.overshoot);
        sup.push_back(s.pre_ruin_sup);
        pmf[s.ladder_epochs] += 1.0;
        if (s.crossing == Crossing::Creep) ++creep;
    }
    if (over.empty()) throw DomainError("condition on empty event: no ruined samples");
    const double n = static_cast<double>(over.size());
    for (auto& [k, v] : pmf) v /= n;
    ConditionalEcdfs out{Ecdf(std::move(over)), Ecdf(std::move(sup)), std::move(pmf), 0, 0.0};
    out.ruined = static_cast<std::size_t>(n);
    out.creep_fraction = static_cast<double>(creep) / n;
    return out;
}

void write_samples_csv(std::ostream& os, std::span<const PassageSample> samples) {
    os << "tau,overshoot,pre_ruin_sup,crossing,ladder_epochs\n";
    char buf[160];
    for (const PassageSample& s : samples) {
        if (!s.ruined()) continue;
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%s,%llu\n", s.tau, s.overshoot,
                      s.pre_ruin_sup, to_string(s.crossing).c_str(),
                      static_cast<unsigned long long>(s.ladder_epochs));
        os << buf;
    }
}

}  // namespace levyruin
