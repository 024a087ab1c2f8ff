#ifndef QMC_CUBATURE_HPP
#define QMC_CUBATURE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "qmc/common.hpp"
#include "qmc/frolov.hpp"
#include "qmc/point_set.hpp"

namespace qmc {

struct CubatureRule {
    PointSet points;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }

    double weight_l1() const {
        double s = 0.0;
        for (double w : weights) s += std::abs(w);
        return s;
    }
};

inline CubatureRule equal_weight_rule(PointSet ps) {
    CubatureRule r;
    r.weights.assign(ps.size(), 1.0 / static_cast<double>(ps.size()));
    r.points = std::move(ps);
    return r;
}

template <typename F>
inline double apply(const CubatureRule& rule, F&& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
        s += rule.weights[i] * f(rule.points.point(i));
    return s;
}

// Plain scaled-lattice rule: every knot carries (a^d |detA|)^{-1}.  The
// weights sum close to, but not exactly, one (boundary knots double up).
inline CubatureRule frolov_rule(const FrolovBasis& basis, double a) {
    CubatureRule r;
    r.points = frolov_points(basis, a);
    const double w = 1.0 / (std::pow(a, basis.dim) * std::abs(basis.detA));
    r.weights.assign(r.points.size(), w);
    return r;
}

inline CubatureRule frolov_periodic_rule(const FrolovBasis& basis, double a) {
    PeriodizedFrolov pf = frolov_periodized(basis, a);
    CubatureRule r;
    r.points = std::move(pf.wrapped);
    r.weights = std::move(pf.weights);
    return r;
}

// Lambda(xi, k) = sum_mu lambda_mu e^{2 pi i <k, xi^mu>}.
inline std::complex<double> lambda_xi_k(const CubatureRule& rule, std::span<const long> k) {
    const int d = rule.points.dim();
    if (static_cast<int>(k.size()) != d)
        throw invalid_parameter("lambda_xi_k: frequency dimension mismatch");
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        double phase = 0.0;
        for (int j = 0; j < d; ++j) phase += static_cast<double>(k[j]) * rule.points.coord(i, j);
        s += rule.weights[i] * std::polar(1.0, 2.0 * pi * phase);
    }
    return s;
}

namespace detail {

// Riemann zeta via Euler-Maclaurin; adequate for s > 1.01 here.
inline double zeta(double s) {
    if (!(s > 1.0)) throw invalid_parameter("zeta: s > 1 required");
    const int N = 24;
    double sum = 0.0;
    for (int k = 1; k < N; ++k) sum += std::pow(static_cast<double>(k), -s);
    const double n = static_cast<double>(N);
    sum += std::pow(n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(n, -s) +
           s / 12.0 * std::pow(n, -s - 1.0) -
           s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(n, -s - 3.0);
    return sum;
}

// Even Bernoulli polynomials B_{2r}(x) for the closed-form kernel sums.
inline double bernoulli_poly_even(int r2, double x) {
    switch (r2) {
        case 2:
            return ((x - 1.0) * x) + 1.0 / 6.0;
        case 4:
            return (((x - 2.0) * x + 1.0) * x * x) - 1.0 / 30.0;
        case 6:
            return ((((x - 3.0) * x + 2.5) * x * x - 0.5) * x * x) + 1.0 / 42.0;
        case 8:
            return (((((x - 4.0) * x + 14.0 / 3.0) * x * x - 7.0 / 3.0) * x * x +
                     2.0 / 3.0) * x * x) - 1.0 / 30.0;
        case 10:
            return ((((((x - 5.0) * x + 7.5) * x * x - 7.0) * x * x + 5.0) * x * x -
                     1.5) * x * x) + 5.0 / 66.0;
        default:
            throw invalid_parameter("bernoulli_poly_even: unsupported order");
    }
}

// theta_r(x) = sum_k max(|k|,1)^{-2r} e^{2 pi i k x}
//            = 1 + (-1)^{r-1} (2 pi)^{2r} B_{2r}({x}) / (2r)!.
inline double theta_series(int r, double x) {
    double frac = x - std::floor(x);
    double f = 1.0;
    for (int k = 2; k <= 2 * r; ++k) f *= k;
    const double sign = (r % 2 == 1) ? 1.0 : -1.0;
    return 1.0 + sign * std::pow(2.0 * pi, 2 * r) * bernoulli_poly_even(2 * r, frac) / f;
}

}  // namespace detail

struct WceOptions {
    std::optional<long> kmax;       // explicit frequency window
    double tol = 1e-4;              // drives the default window
    bool force_truncated = false;   // skip the closed form even for integer r
    double max_terms = 2e8;         // cap on (2K+1)^d * m work
};

struct WceResult {
    double value = 0.0;
    long kmax = 0;            // 0 when the closed form was used
    double tail_bound = 0.0;  // bound on the truncated mass in value^2
    bool tail_dominated = false;
    bool closed_form = false;
};

// Worst-case integration error over the unit ball of the r-smooth periodic
// class: value^2 = sum_{k != 0} |Lambda(xi,k)|^2 prod_j max(|k_j|,1)^{-2r}
//                + |Lambda(xi,0) - 1|^2.
// Integer r <= 5 evaluates the lattice sum in closed form (exact, no
// truncation); otherwise the frequency sum is truncated at kmax with a
// reported tail bound.
inline WceResult worst_case_error_w2r(const CubatureRule& rule, double r,
                                      const WceOptions& opts = {}) {
    if (!(r > 0.5))
        throw invalid_parameter("worst_case_error_w2r: r > 1/2 required");
    const int d = rule.points.dim();
    const std::size_t m = rule.size();
    if (m == 0) throw invalid_parameter("worst_case_error_w2r: empty rule");

    WceResult out;
    const long ri = std::lround(r);
    const bool integer_r = std::abs(r - static_cast<double>(ri)) < 1e-12;

    double lambda0 = 0.0;
    for (double w : rule.weights) lambda0 += w;

    if (integer_r && ri <= 5 && !opts.force_truncated && !opts.kmax) {
        out.closed_form = true;
        double quad = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < m; ++k) {
                double p = rule.weights[i] * rule.weights[k];
                for (int j = 0; j < d; ++j)
                    p *= detail::theta_series(static_cast<int>(ri),
                                              rule.points.coord(i, j) -
                                                  rule.points.coord(k, j));
                quad += p;
            }
        const double sq = quad - 2.0 * lambda0 + 1.0;
        out.value = std::sqrt(std::max(0.0, sq));
        return out;
    }

    // window size: smallest K with the two-factor bound below tol^2, then
    // widened until the rigorous union bound fits (or the term cap bites)
    const double zeta2r = detail::zeta(2.0 * r);
    const double axis_factor = std::pow(1.0 + 2.0 * zeta2r, d - 1);
    long K;
    if (opts.kmax) {
        K = *opts.kmax;
    } else {
        const double raw =
            std::pow(2.0 * axis_factor / ((2.0 * r - 1.0) * opts.tol * opts.tol),
                     1.0 / (2.0 * r - 1.0));
        K = std::max(4L, static_cast<long>(std::ceil(raw)));
    }
    const double l1 = rule.weight_l1();
    auto tail_of = [&](long kk) {
        const double ztail = std::pow(static_cast<double>(kk), 1.0 - 2.0 * r) / (2.0 * r - 1.0);
        return d * l1 * l1 * 2.0 * ztail * axis_factor;
    };
    auto terms_of = [&](long kk) {
        return std::pow(2.0 * static_cast<double>(kk) + 1.0, d) * static_cast<double>(m);
    };
    if (!opts.kmax) {
        while (tail_of(K) > opts.tol * opts.tol && terms_of(2 * K) <= opts.max_terms) K *= 2;
    }
    while (terms_of(K) > opts.max_terms && K > 4) K /= 2;
    out.kmax = K;
    out.tail_bound = tail_of(K);
    out.tail_dominated = out.tail_bound > opts.tol * opts.tol;

    // per-axis, per-point phase tables e^{2 pi i k x}, k = -K..K
    const long width = 2 * K + 1;
    std::vector<std::complex<double>> table(static_cast<std::size_t>(d) * m * width);
    for (int j = 0; j < d; ++j)
        for (std::size_t i = 0; i < m; ++i) {
            const std::complex<double> step =
                std::polar(1.0, 2.0 * pi * rule.points.coord(i, j));
            std::complex<double>* row = table.data() + (j * m + i) * width;
            row[K] = 1.0;
            for (long k = 1; k <= K; ++k) {
                row[K + k] = row[K + k - 1] * step;
                row[K - k] = std::conj(row[K + k]);
            }
        }

    std::vector<double> wtab(width);
    for (long k = -K; k <= K; ++k)
        wtab[K + k] = std::pow(std::max(std::abs(static_cast<double>(k)), 1.0), -2.0 * r);

    double sq = (lambda0 - 1.0) * (lambda0 - 1.0);
    std::vector<long> k(d, -K);
    while (true) {
        bool zero = true;
        for (int j = 0; j < d; ++j)
            if (k[j] != 0) { zero = false; break; }
        if (!zero) {
            std::complex<double> lam = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                std::complex<double> p = rule.weights[i];
                for (int j = 0; j < d; ++j) p *= table[(j * m + i) * width + (K + k[j])];
                lam += p;
            }
            double wgt = 1.0;
            for (int j = 0; j < d; ++j) wgt *= wtab[K + k[j]];
            sq += std::norm(lam) * wgt;
        }
        int j = d - 1;
        while (j >= 0 && k[j] == K) k[j--] = -K;
        if (j < 0) break;
        ++k[j];
    }
    out.value = std::sqrt(std::max(0.0, sq));
    return out;
}

inline WceResult diaphony(const CubatureRule& rule, const WceOptions& opts = {}) {
    return worst_case_error_w2r(rule, 1.0, opts);
}

}  // namespace qmc

#endif  // QMC_CUBATURE_HPP
