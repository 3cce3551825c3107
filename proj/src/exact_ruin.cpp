#include "levyruin/exact_ruin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "fft_convolver.hpp"

namespace levyruin {

namespace {

// Probability masses of the integrated tail rounded up to the lattice:
// mass of ((k-1)h, kh] sits at kh, so entry 0 is empty.
std::vector<double> rounded_up_masses(const TailDistribution& fi, double h, std::size_t count) {
    std::vector<double> pmf(count, 0.0);
    double prev = fi.tail(0.0);
    for (std::size_t k = 1; k < count; ++k) {
        const double cur = fi.tail(h * static_cast<double>(k));
        pmf[k] = std::max(prev - cur, 0.0);
        prev = cur;
    }
    return pmf;
}

// Tail P(S > jh) of a lattice law given by its masses on 0..count-1; mass
// beyond the array is recovered from total mass one.
void tails_from_masses(const std::vector<double>& pmf, std::vector<double>& out) {
    out.resize(pmf.size());
    long double cdf = 0.0L;
    for (std::size_t j = 0; j < pmf.size(); ++j) {
        cdf += pmf[j];
        out[j] = std::clamp(static_cast<double>(1.0L - cdf), 0.0, 1.0);
    }
}

// Rounding noise from the FFT can create tiny wiggles; push the envelopes
// outward so each is nonincreasing.
void make_monotone(std::vector<double>& lower, std::vector<double>& upper) {
    for (std::size_t j = 1; j < lower.size(); ++j) lower[j] = std::min(lower[j], lower[j - 1]);
    for (std::size_t j = upper.size() - 1; j-- > 0;) upper[j] = std::max(upper[j], upper[j + 1]);
}

int terms_for(double rho, const ExactOptions& opts) {
    if (opts.terms) {
        if (*opts.terms < 1) throw DomainError("pk_ruin: terms must be >= 1");
        return *opts.terms;
    }
    if (rho == 0.0) return 1;
    const double target = std::min(opts.truncation, 0.5 * opts.tol);
    // smallest N with rho^(N+1) <= target
    const int n = static_cast<int>(std::ceil(std::log(target) / std::log(rho))) - 1;
    return std::max(n, 1);
}

RuinCurve single_pass(const TailDistribution& fi, double rho, int terms, double h, double u_max) {
    const auto k_max = static_cast<std::size_t>(std::ceil(u_max / h - 1e-9));
    const std::size_t points = k_max + 1;
    // lower envelope reads the chain at j + n
    const std::size_t count = points + static_cast<std::size_t>(terms);

    const std::vector<double> kernel = rounded_up_masses(fi, h, count);
    detail::FftConvolver conv(kernel);

    std::vector<long double> upper_sum(points, 0.0L);
    std::vector<long double> lower_sum(points, 0.0L);
    std::vector<double> pmf = kernel;
    std::vector<double> tails;
    long double weight = 1.0L;
    for (int n = 1; n <= terms; ++n) {
        if (n > 1) conv.convolve_in_place(pmf);
        tails_from_masses(pmf, tails);
        weight *= rho;
        for (std::size_t j = 0; j < points; ++j) {
            upper_sum[j] += weight * tails[j];
            lower_sum[j] += weight * tails[j + static_cast<std::size_t>(n)];
        }
    }
    const double remainder = std::pow(rho, terms + 1);
    std::vector<double> lower(points);
    std::vector<double> upper(points);
    for (std::size_t j = 0; j < points; ++j) {
        lower[j] = std::clamp(static_cast<double>((1.0L - rho) * lower_sum[j]), 0.0, 1.0);
        upper[j] = std::clamp(static_cast<double>((1.0L - rho) * upper_sum[j]) + remainder, 0.0, 1.0);
    }
    make_monotone(lower, upper);
    return RuinCurve(h, rho, terms, remainder, std::move(lower), std::move(upper));
}

}  // namespace

RuinCurve::RuinCurve(double h, double rho, int terms, double truncation_bound,
                     std::vector<double> lower, std::vector<double> upper)
    : h_(h),
      rho_(rho),
      terms_(terms),
      truncation_bound_(truncation_bound),
      lower_(std::move(lower)),
      upper_(std::move(upper)) {
    if (lower_.size() != upper_.size() || lower_.empty()) {
        throw DomainError("ruin curve needs matching nonempty envelopes");
    }
}

double RuinCurve::max_width() const {
    double w = 0.0;
    for (std::size_t j = 0; j < size(); ++j) w = std::max(w, upper_[j] - lower_[j]);
    return w;
}

Bracket RuinCurve::at(double u) const {
    const double eps = 1e-9 * h_;
    if (!(u >= -eps) || u > u_max() + eps) {
        std::ostringstream msg;
        msg << "u = " << u << " outside curve grid [0, " << u_max() << "]";
        throw DomainError(msg.str());
    }
    const double pos = std::max(u, 0.0) / h_;
    const auto j = static_cast<std::size_t>(std::llround(pos));
    if (std::abs(pos - static_cast<double>(j)) * h_ <= eps) {
        const std::size_t i = std::min(j, size() - 1);
        return {lower_[i], upper_[i]};
    }
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    return {lower_[std::min(lo + 1, size() - 1)], upper_[lo]};
}

void RuinCurve::write_csv(std::ostream& os) const {
    char buf[128];
    std::snprintf(buf, sizeof buf, "# series_terms_used=%d,h=%.17g,truncation_bound=%.17g\n",
                  terms_, h_, truncation_bound_);
    os << buf << "u,psi_lower,psi_upper\n";
    for (std::size_t j = 0; j < size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", grid(j), lower_[j], upper_[j]);
        os << buf;
    }
}

RuinCurve pk_ruin(const RiskModel& m, const ExactOptions& opts) {
    if (!m.is_classical()) {
        throw DomainError("pk_ruin needs the classical (CramerLundberg) model");
    }
    if (!(opts.tol > 0.0)) throw DomainError("pk_ruin: tol must be > 0");
    if (!(opts.h > 0.0) || !(opts.u_max > 0.0)) throw DomainError("pk_ruin: h and u_max must be > 0");

    const TailDistribution fi = m.claim().integrated_tail();
    const double rho = m.summarize().rho;
    const int terms = terms_for(rho, opts);

    double h = opts.h;
    std::optional<RuinCurve> best;
    for (;;) {
        const double points = std::ceil(opts.u_max / h) + 1.0 + terms;
        if (points > static_cast<double>(opts.max_grid_points)) {
            std::ostringstream msg;
            msg << "tolerance " << opts.tol << " unreachable within " << opts.max_grid_points
                << " grid points";
            if (best) {
                msg << "; best bracket width " << best->max_width() << " at h = " << best->h();
                throw ToleranceError(msg.str(), *best);
            }
            throw NumericError(msg.str());
        }
        RuinCurve curve = single_pass(fi, rho, terms, h, opts.u_max);
        if (curve.max_width() <= opts.tol) return curve;
        if (!opts.refine) {
            std::ostringstream msg;
            msg << "bracket width " << curve.max_width() << " exceeds tolerance " << opts.tol;
            throw ToleranceError(msg.str(), std::move(curve));
        }
        best = std::move(curve);
        h *= 0.5;
    }
}

double ConvolutionPowerTail::ratio(std::size_t j) const {
    return 0.5 * (lower[j] + upper[j]) / single[j];
}

ConvolutionPowerTail convolution_power_tail(const TailDistribution& fi, int n, double h,
                                            double u_max) {
    if (n < 1) throw DomainError("convolution_power_tail: n must be >= 1");
    if (!(h > 0.0) || !(u_max > 0.0)) throw DomainError("convolution_power_tail: bad grid");
    const auto k_max = static_cast<std::size_t>(std::ceil(u_max / h - 1e-9));
    const std::size_t points = k_max + 1;
    const std::size_t count = points + static_cast<std::size_t>(n);

    ConvolutionPowerTail out{h, n, {}, {}, {}};
    out.single.resize(points);
    for (std::size_t j = 0; j < points; ++j) out.single[j] = fi.tail(h * static_cast<double>(j));
    if (n == 1) {
        out.lower = out.single;
        out.upper = out.single;
        return out;
    }

    const std::vector<double> kernel = rounded_up_masses(fi, h, count);
    detail::FftConvolver conv(kernel);
    std::vector<double> pmf = kernel;
    for (int k = 2; k <= n; ++k) conv.convolve_in_place(pmf);
    std::vector<double> tails;
    tails_from_masses(pmf, tails);
    out.lower.resize(points);
    out.upper.resize(points);
    for (std::size_t j = 0; j < points; ++j) {
        out.upper[j] = tails[j];
        out.lower[j] = tails[j + static_cast<std::size_t>(n)];
    }
    make_monotone(out.lower, out.upper);
    return out;
}

Bracket renewal_function_v(const RiskModel& m, const RuinCurve& curve, double y) {
    const double q = m.summarize().q;
    if (std::isinf(y) && y > 0.0) return {1.0 / q, 1.0 / q};
    const Bracket psi = curve.at(y);
    return {(1.0 - psi.upper) / q, (1.0 - psi.lower) / q};
}

}  // namespace levyruin
