#pragma once

// Certified evaluation of the Pollaczek-Khinchine series
//   psi(u) = (1 - rho) sum_{n>=1} rho^n F̄_I^{*n}(u)
// for the classical model on a uniform grid.
//
// Ladder heights are rounded up (resp. down) to the lattice hZ, which makes
// the discrete compound sums stochastically larger (resp. smaller) than the
// true one. Rounding down equals rounding up minus h, so a single chain of
// lattice convolutions yields both envelopes. The series is cut after N
// terms and rho^(N+1) is added to the upper envelope.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "levyruin/errors.hpp"
#include "levyruin/levy_models.hpp"

namespace levyruin {

struct Bracket {
    double lower = 0.0;
    double upper = 0.0;

    double mid() const { return 0.5 * (lower + upper); }
    double width() const { return upper - lower; }
    bool contains(double x) const { return lower <= x && x <= upper; }
};

struct ExactOptions {
    double h = 0.01;      // initial grid step; halved until the tolerance is met
    double u_max = 20.0;  // grid covers [0, u_max]
    double tol = 1e-3;    // bound on psi_upper - psi_lower at every grid point
    /// Target for the series remainder rho^(N+1); capped at tol/2.
    double truncation = 1e-10;
    std::optional<int> terms;            // force N
    std::size_t max_grid_points = 1u << 22;
    bool refine = true;  // halve h until tol holds; otherwise a single pass
};

class RuinCurve {
public:
    RuinCurve(double h, double rho, int terms, double truncation_bound, std::vector<double> lower,
              std::vector<double> upper);

    double h() const { return h_; }
    double rho() const { return rho_; }
    std::size_t size() const { return lower_.size(); }
    double u_max() const { return h_ * static_cast<double>(size() - 1); }
    double grid(std::size_t j) const { return h_ * static_cast<double>(j); }
    const std::vector<double>& psi_lower() const { return lower_; }
    const std::vector<double>& psi_upper() const { return upper_; }
    int series_terms_used() const { return terms_; }
    double truncation_bound() const { return truncation_bound_; }
    double max_width() const;

    /// Bracket on psi(u) for 0 <= u <= u_max; between grid points the
    /// neighbouring envelopes are used (psi is nonincreasing). Throws
    /// DomainError outside the grid: no extrapolation.
    Bracket at(double u) const;

    /// CSV with a comment header carrying N, h and the truncation bound,
    /// then columns u,psi_lower,psi_upper.
    void write_csv(std::ostream& os) const;

private:
    double h_;
    double rho_;
    int terms_;
    double truncation_bound_;
    std::vector<double> lower_;
    std::vector<double> upper_;
};

/// Thrown when the requested tolerance cannot be met within the grid budget.
class ToleranceError : public NumericError {
public:
    ToleranceError(const std::string& what, RuinCurve best)
        : NumericError(what), best_(std::move(best)) {}
    const RuinCurve& best() const { return best_; }

private:
    RuinCurve best_;
};

/// Ruin probability brackets for a CramerLundberg model.
RuinCurve pk_ruin(const RiskModel& m, const ExactOptions& opts = {});

/// Bracketing tails of the n-fold convolution of `fi` on the grid
/// {0, h, ..., u_max}.
struct ConvolutionPowerTail {
    double h;
    int n;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> single;  // F̄_I itself at the grid points

    /// midpoint of the bracket on F̄^{*n}(u_j) / F̄(u_j)
    double ratio(std::size_t j) const;
};

ConvolutionPowerTail convolution_power_tail(const TailDistribution& fi, int n, double h,
                                            double u_max);

/// Bracket on V([0, y]) = (1 - psi(y)) / q; y = +inf gives 1/q.
Bracket renewal_function_v(const RiskModel& m, const RuinCurve& curve, double y);

}  // namespace levyruin
