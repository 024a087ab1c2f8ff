#ifndef QMC_DISCREPANCY_HPP
#define QMC_DISCREPANCY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "qmc/common.hpp"
#include "qmc/kernels.hpp"
#include "qmc/point_set.hpp"

namespace qmc {

struct DiscrepancyEstimate {
    double value = 0.0;
    bool exact = false;
    AxisBox witness;            // for anchored metrics: [0, corner)
    std::uint64_t search_budget = 0;  // objective evaluations spent
};

namespace detail {

// Counts of points below a corner, with both tie conventions.  `strict` is
// the box [0, c) itself; `weak` counts points on the corner's lower faces as
// well, i.e. the limit of [0, b) as b decreases to c from above.
inline void corner_counts(const PointSet& ps, std::span<const double> corner,
                          std::uint64_t& strict, std::uint64_t& weak) {
    strict = weak = 0;
    const int d = ps.dim();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        bool s = true, w = true;
        for (int j = 0; j < d; ++j) {
            const double x = ps.coord(i, j);
            if (!(x < corner[j])) s = false;
            if (!(x <= corner[j])) { w = false; break; }
        }
        strict += s;
        weak += w;
    }
}

inline std::vector<std::vector<double>> corner_candidates(const PointSet& ps) {
    const int d = ps.dim();
    std::vector<std::vector<double>> cand(d);
    for (int j = 0; j < d; ++j) {
        cand[j].reserve(ps.size() + 1);
        for (std::size_t i = 0; i < ps.size(); ++i) cand[j].push_back(ps.coord(i, j));
        cand[j].push_back(1.0);
        std::sort(cand[j].begin(), cand[j].end());
        cand[j].erase(std::unique(cand[j].begin(), cand[j].end()), cand[j].end());
    }
    return cand;
}

}  // namespace detail

// Exact star discrepancy over the critical corner grid (each coordinate of
// the corner ranges over point coordinates and 1).  At every corner both the
// limit from below (strict count) and from above (weak count) contribute.
// Falls back to a seeded sample of the same grid when it exceeds `budget`.
inline DiscrepancyEstimate star_discrepancy_exact(const PointSet& ps,
                                                  std::uint64_t budget = 10'000'000) {
    if (ps.size() == 0) throw invalid_parameter("star_discrepancy_exact: empty set");
    const int d = ps.dim();
    const double m = static_cast<double>(ps.size());
    const auto cand = detail::corner_candidates(ps);

    double grid_size = 1.0;
    for (int j = 0; j < d; ++j) grid_size *= static_cast<double>(cand[j].size());

    DiscrepancyEstimate est;
    est.witness.lo.assign(d, 0.0);
    est.witness.hi.assign(d, 0.0);
    std::vector<double> corner(d);

    auto consider = [&](std::span<const double> c) {
        double vol = 1.0;
        for (int j = 0; j < d; ++j) vol *= c[j];
        std::uint64_t strict = 0, weak = 0;
        detail::corner_counts(ps, c, strict, weak);
        const double lo = vol - static_cast<double>(strict) / m;
        const double hi = static_cast<double>(weak) / m - vol;
        const double v = std::max(lo, hi);
        ++est.search_budget;
        if (v > est.value) {
            est.value = v;
            std::copy(c.begin(), c.end(), est.witness.hi.begin());
        }
    };

    if (grid_size <= static_cast<double>(budget)) {
        est.exact = true;
        std::vector<std::size_t> idx(d, 0);
        while (true) {
            for (int j = 0; j < d; ++j) corner[j] = cand[j][idx[j]];
            consider(corner);
            int j = d - 1;
            while (j >= 0 && ++idx[j] == cand[j].size()) idx[j--] = 0;
            if (j < 0) break;
        }
    } else {
        est.exact = false;
        Rng rng(0x5ca1ab1e);  // fixed: the fallback stays deterministic
        for (std::uint64_t it = 0; it < budget; ++it) {
            for (int j = 0; j < d; ++j) {
                const std::size_t k =
                    std::min(cand[j].size() - 1,
                             static_cast<std::size_t>(uniform01(rng) * cand[j].size()));
                corner[j] = cand[j][k];
            }
            consider(corner);
        }
    }
    return est;
}

// Warnock's closed form for the anchored L2 discrepancy:
//   D2^2 = 3^-d - 2/m sum_mu prod_j (1-x_j^2)/2
//              + 1/m^2 sum_{mu,nu} prod_j (1 - max(x_j, y_j)).
inline double l2_star_discrepancy(const PointSet& ps) {
    if (ps.size() == 0) throw invalid_parameter("l2_star_discrepancy: empty set");
    const int d = ps.dim();
    const std::size_t m = ps.size();
    double cross = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double p = 1.0;
        for (int j = 0; j < d; ++j) p *= (1.0 - ps.coord(i, j) * ps.coord(i, j)) * 0.5;
        cross += p;
    }
    double pair = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            double p = 1.0;
            for (int j = 0; j < d; ++j) p *= 1.0 - std::max(ps.coord(i, j), ps.coord(k, j));
            pair += p;
        }
    }
    const double dm = static_cast<double>(m);
    const double sq = std::pow(3.0, -d) - 2.0 / dm * cross + pair / (dm * dm);
    return std::sqrt(std::max(0.0, sq));
}

struct McDiscrepancy {
    double value = 0.0;       // (mean |g|^q)^{1/q}
    double power_mean = 0.0;  // mean of |g|^q
    double power_se = 0.0;    // standard error of that mean
    double value_se = 0.0;    // delta-method error of `value`
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

// Monte Carlo estimate of the anchored Lq discrepancy, q < infinity.
inline McDiscrepancy lq_discrepancy_mc(const PointSet& ps, double q,
                                       std::size_t samples, std::uint64_t seed) {
    if (ps.size() == 0) throw invalid_parameter("lq_discrepancy_mc: empty set");
    if (!(q >= 1.0)) throw invalid_parameter("lq_discrepancy_mc: q >= 1 required");
    if (samples < 1000) throw invalid_parameter("lq_discrepancy_mc: samples >= 1000 required");
    const int d = ps.dim();
    const double m = static_cast<double>(ps.size());
    Rng rng(seed);
    std::vector<double> b(d);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t it = 0; it < samples; ++it) {
        double vol = 1.0;
        for (int j = 0; j < d; ++j) {
            b[j] = uniform01(rng);
            vol *= b[j];
        }
        std::uint64_t count = 0;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            bool in = true;
            for (int j = 0; j < d; ++j)
                if (!(ps.coord(i, j) < b[j])) { in = false; break; }
            count += in;
        }
        const double g = std::pow(std::abs(vol - static_cast<double>(count) / m), q);
        sum += g;
        sumsq += g * g;
    }
    McDiscrepancy out;
    out.samples = samples;
    out.seed = seed;
    const double n = static_cast<double>(samples);
    out.power_mean = sum / n;
    const double var = std::max(0.0, sumsq / n - out.power_mean * out.power_mean);
    out.power_se = std::sqrt(var / n);
    out.value = std::pow(out.power_mean, 1.0 / q);
    if (out.power_mean > 0.0)
        out.value_se = out.power_se * std::pow(out.power_mean, 1.0 / q - 1.0) / q;
    return out;
}

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes, used for the exact per-coordinate integrals below.

namespace detail {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

inline GaussRule gauss_legendre(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev-based initial guess
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[n - 1 - i] = x;
        r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

inline const GaussRule& gauss_legendre_cached(int n) {
    static std::vector<GaussRule> cache;
    if (n < 1) throw invalid_parameter("gauss_legendre: n >= 1 required");
    if (static_cast<std::size_t>(n) >= cache.size()) cache.resize(n + 1);
    if (cache[n].nodes.empty()) cache[n] = gauss_legendre(n);
    return cache[n];
}

template <typename F>
inline double gauss_on(F&& f, double a, double b, int n) {
    const GaussRule& g = gauss_legendre_cached(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += g.weights[i] * f(mid + half * g.nodes[i]);
    return s * half;
}

}  // namespace detail

// Exact L2 norm of the integration error over the truncated-power class:
// expands the squared norm into per-coordinate one-dimensional polynomial
// integrals, each evaluated exactly by Gauss-Legendre with r nodes.
inline double r_discrepancy_l2(const PointSet& ps, std::span<const double> weights, int r) {
    if (r < 1) throw invalid_parameter("r_discrepancy_l2: r >= 1 required");
    const std::size_t m = ps.size();
    if (m == 0) throw invalid_parameter("r_discrepancy_l2: empty set");
    if (weights.size() != m) throw invalid_parameter("r_discrepancy_l2: weight size mismatch");
    const int d = ps.dim();
    double fact = 1.0;  // (r-1)!
    for (int k = 2; k < r; ++k) fact *= k;
    const double rfact = fact * r;  // r!

    auto bterm = [&](double x, double y) {
        if (r == 1) return (x < y) ? 1.0 : 0.0;
        return (y > x) ? std::pow(y - x, r - 1) / fact : 0.0;
    };

    // cross term J(x) = int_x^1 b(x,y) y^r / r! dy, degree 2r-1
    auto J = [&](double x) {
        return detail::gauss_on(
            [&](double y) { return bterm(x, y) * std::pow(y, r) / rfact; }, x, 1.0, r);
    };
    // pair term I(x,x') = int_{max}^1 b(x,y) b(x',y) dy, degree 2r-2
    auto I = [&](double x, double xp) {
        const double lo = std::max(x, xp);
        return detail::gauss_on([&](double y) { return bterm(x, y) * bterm(xp, y); },
                                lo, 1.0, r);
    };
    const double K = 1.0 / ((2.0 * r + 1.0) * rfact * rfact);

    double cross = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double p = 1.0;
        for (int j = 0; j < d; ++j) p *= J(ps.coord(i, j));
        cross += weights[i] * p;
    }
    double pair = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            double p = 1.0;
            for (int j = 0; j < d; ++j) p *= I(ps.coord(i, j), ps.coord(k, j));
            pair += weights[i] * weights[k] * p;
        }
    const double sq = pair - 2.0 * cross + std::pow(K, d);
    return std::sqrt(std::max(0.0, sq));
}

inline double r_discrepancy_l2(const PointSet& ps, int r) {
    std::vector<double> w(ps.size(), 1.0 / static_cast<double>(ps.size()));
    return r_discrepancy_l2(ps, w, r);
}

// ---------------------------------------------------------------------------
// sigma^r(v,u) = sum over compositions ||s||_1 = v of
// prod_j min((2^{s_j} u_j)^{r/2}, (2^{s_j} u_j)^{-r/2}), plus the ratio to
// the two-regime envelope (logs base 2, unit leading constant).

inline double sigma_r(int v, std::span<const double> u, double r) {
    if (v < 0) throw invalid_parameter("sigma_r: v >= 0 required");
    const int d = static_cast<int>(u.size());
    if (d < 1 || d > 4) throw invalid_parameter("sigma_r: 1 <= d <= 4 required");
    for (double uj : u)
        if (!(uj > 0.0)) throw invalid_parameter("sigma_r: u > 0 required");
    std::vector<int> s(d, 0);
    s[0] = v;
    double total = 0.0;
    while (true) {
        double p = 1.0;
        for (int j = 0; j < d; ++j) {
            const double t = std::pow(std::ldexp(u[j], s[j]), r / 2.0);
            p *= std::min(t, 1.0 / t);
        }
        total += p;
        int j = 0;
        while (j < d - 1 && s[j] == 0) ++j;
        if (j == d - 1) break;
        const int val = s[j];
        s[j] = 0;
        s[0] = val - 1;
        s[j + 1] += 1;
    }
    return total;
}

struct SigmaEnvelope {
    double sigma = 0.0;
    double envelope = 0.0;  // bound with C(d) = 1
    double ratio = 0.0;
    bool dense_regime = false;  // true when 2^v * prod(u) >= 1
};

inline SigmaEnvelope sigma_r_bound_check(int v, std::span<const double> u, double r) {
    SigmaEnvelope out;
    out.sigma = sigma_r(v, u, r);
    const int d = static_cast<int>(u.size());
    double pr = 1.0;
    for (double uj : u) pr *= uj;
    const double x = std::ldexp(pr, v);  // 2^v * prod(u)
    out.dense_regime = x >= 1.0;
    if (out.dense_regime)
        out.envelope = std::pow(std::log2(2.0 * x), d - 1) / std::pow(x, r / 2.0);
    else
        out.envelope = std::pow(x, r / 2.0) * std::pow(std::log2(2.0 / x), d - 1);
    out.ratio = out.sigma / out.envelope;
    return out;
}

}  // namespace qmc

#endif  // QMC_DISCREPANCY_HPP
