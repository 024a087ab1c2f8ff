#ifndef QMC_COMMON_HPP
#define QMC_COMMON_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmc {

using Point = std::vector<double>;

inline constexpr double pi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Errors

struct invalid_parameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct numeric_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised by the incremental greedy loop when the selected element misses the
// step threshold; carries the step index and by how much it missed.
struct schedule_error : std::runtime_error {
    int step;
    double deficit;
    schedule_error(int step_, double deficit_)
        : std::runtime_error("greedy schedule failure at step " + std::to_string(step_) +
                             " (deficit " + std::to_string(deficit_) + ")"),
          step(step_), deficit(deficit_) {}
};

// ---------------------------------------------------------------------------
// Axis-parallel half-open box [lo, hi) inside the unit cube.

struct AxisBox {
    Point lo;
    Point hi;

    int dim() const { return static_cast<int>(lo.size()); }

    double volume() const {
        double v = 1.0;
        for (std::size_t j = 0; j < lo.size(); ++j) v *= hi[j] - lo[j];
        return v;
    }

    bool contains(std::span<const double> x) const {
        for (std::size_t j = 0; j < lo.size(); ++j)
            if (!(lo[j] <= x[j] && x[j] < hi[j])) return false;
        return true;
    }

    bool contains_open(std::span<const double> x) const {
        for (std::size_t j = 0; j < lo.size(); ++j)
            if (!(lo[j] < x[j] && x[j] < hi[j])) return false;
        return true;
    }
};

// ---------------------------------------------------------------------------
// Deterministic randomness.  All sampling goes through these helpers rather
// than std distributions, whose output is implementation-defined.

using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double normal01(Rng& rng) {
    // Box-Muller; discards the second variate to keep call sites stateless.
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
}

// ---------------------------------------------------------------------------
// Small numeric helpers.

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};

// Least-squares fit of log(y) against log(x).
inline LineFit fit_loglog(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw invalid_parameter("fit_loglog: need two or more samples");
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] <= 0.0 || y[i] <= 0.0)
            throw invalid_parameter("fit_loglog: samples must be positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    LineFit f;
    const double dn = static_cast<double>(n);
    f.slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / dn;
    for (std::size_t i = 0; i < n; ++i)
        f.max_residual = std::max(f.max_residual,
                                  std::abs(ly[i] - (f.intercept + f.slope * lx[i])));
    return f;
}

// Fixed 17-significant-digit formatting so that emitted files are
// byte-reproducible.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double t : v) s += t;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace qmc

#endif  // QMC_COMMON_HPP
