#pragma once

// Path simulation of first passage above level u for the three model
// families, and censoring-aware estimates built from it.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "levyruin/exact_ruin.hpp"
#include "levyruin/levy_models.hpp"
#include "levyruin/random.hpp"

namespace levyruin {

enum class Outcome { Ruined, SurvivedToHorizon };
enum class Crossing { None, Jump, Creep, GridDetected };

std::string to_string(Crossing c);

struct PassageSample {
    Outcome outcome = Outcome::SurvivedToHorizon;
    double tau = 0.0;           // first passage time (Ruined)
    double overshoot = 0.0;     // X_tau - u (Ruined)
    double pre_ruin_sup = 0.0;  // running supremum just before the crossing (Ruined)
    std::uint64_t ladder_epochs = 0;  // new-maximum claim events before crossing (classical)
    Crossing crossing = Crossing::None;
    double final_position = 0.0;  // X at the horizon (SurvivedToHorizon)
    bool coarse_step = false;     // dt exceeded a tenth of the mean claim interarrival

    bool ruined() const { return outcome == Outcome::Ruined; }
};

/// Exact event-driven simulation of the classical model up to `horizon`.
PassageSample simulate_cl(const CramerLundberg& m, double u, double horizon, Rng& rng);

/// Jump diffusion: claims at exact epochs; between them Brownian-with-drift
/// segments of length <= dt, each tested for an interior crossing with the
/// Brownian-bridge probability (overshoot 0, Crossing::Creep).
PassageSample simulate_jump_diffusion(const JumpDiffusion& m, double u, double horizon, double dt,
                                      Rng& rng);

/// Stable-perturbed model: stable increments on a dt grid (crossings there
/// are Crossing::GridDetected) plus exact claim epochs.
PassageSample simulate_stable(const StablePerturbed& m, double u, double horizon, double dt,
                              Rng& rng);

PassageSample simulate(const RiskModel& m, double u, double horizon, double dt, Rng& rng);

/// P(sup of a Brownian bridge from x1 to x2 over a step with variance
/// `variance` reaches u); 1 if either endpoint is at or above u.
double bridge_crossing_probability(double x1, double x2, double u, double variance);

/// Totally positively skewed p-stable variate S with E exp(-s S) = exp(s^p), s >= 0
/// (Chambers-Mallows-Stuck).
double sample_stable_unit(double p, Rng& rng);

/// Horizon T = factor * max(u, 1) / q unless fixed.
struct HorizonPolicy {
    double factor = 20.0;
    std::optional<double> fixed;

    double horizon_for(double u, double q) const;
};

struct McOptions {
    std::size_t n_paths = 10000;
    HorizonPolicy horizon;
    double dt = 0.01;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct Estimate {
    double point = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
    std::size_t ruined = 0;
    /// Upper bound on late-ruin mass carried by paths alive at the horizon.
    double censored_fraction = 0.0;
    Bracket bracket;
    double horizon = 0.0;
    double dt = 0.0;
    std::uint64_t seed = 0;
    /// Exponential rate used to certify survivors (0: none available).
    double certificate_rate = 0.0;
    bool coarse_step = false;

    nlohmann::json to_json() const;
};

struct SimulationResult {
    std::vector<PassageSample> samples;
    Estimate estimate;
};

/// Largest theta > 0 with phi(theta) <= 0, so that exp(theta X) is a
/// supermartingale and psi(d) <= exp(-theta d). 0 when no such theta exists.
double censoring_decay_rate(const RiskModel& m);

/// Runs opts.n_paths independent paths; path i uses stream_for(seed, i), so
/// the result does not depend on the thread count.
SimulationResult simulate_paths(const RiskModel& m, double u, const McOptions& opts);

Estimate estimate_ruin(const RiskModel& m, double u, const McOptions& opts);

class Ecdf {
public:
    explicit Ecdf(std::vector<double> values);

    std::size_t size() const { return sorted_.size(); }
    /// Fraction of values <= x.
    double cdf(double x) const;
    /// Fraction of values > x.
    double tail(double x) const { return 1.0 - cdf(x); }
    const std::vector<double>& sorted() const { return sorted_; }

private:
    std::vector<double> sorted_;
};

/// sup_x |empirical tail - reference_tail| for a continuous reference.
double ks_distance(const Ecdf& e, const std::function<double(double)>& reference_tail);

struct ConditionalEcdfs {
    Ecdf overshoot;
    Ecdf pre_ruin_sup;
    std::map<std::uint64_t, double> ladder_epoch_pmf;
    std::size_t ruined = 0;
    double creep_fraction = 0.0;
};

/// Distributions conditional on ruin. Throws DomainError
/// ("condition on empty event") when no sample ruined.
ConditionalEcdfs conditional_ecdfs(std::span<const PassageSample> samples);

/// One row per ruined path: tau,overshoot,pre_ruin_sup,crossing,ladder_epochs.
void write_samples_csv(std::ostream& os, std::span<const PassageSample> samples);

}  // namespace levyruin
