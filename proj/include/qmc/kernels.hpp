#ifndef QMC_KERNELS_HPP
#define QMC_KERNELS_HPP

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "qmc/common.hpp"

namespace qmc {

// ---------------------------------------------------------------------------
// Smooth hats: the r-fold self-convolution of the characteristic function of
// [-u/2, u/2).  Evaluated through the cardinal B-spline so the value is an
// exact piecewise polynomial: h^r(x,u) = u^{r-1} M_r(x/u).

namespace detail {

inline constexpr int max_hat_order = 16;

// Cardinal B-spline of order r with knots 0..r (Cox-de Boor recurrence).
inline double bspline(double t, int r) {
    if (t < 0.0 || t >= r) return 0.0;
    if (r == 1) return 1.0;
    // v[i] holds B_k(t - i); only the cell containing t is nonzero at k = 1
    const int cell = static_cast<int>(t);  // t in [cell, cell+1)
    double v[max_hat_order] = {};
    v[cell] = 1.0;
    for (int k = 2; k <= r; ++k) {
        for (int i = 0; i <= r - k; ++i) {
            const double ti = t - i;
            v[i] = (ti * v[i] + (static_cast<double>(k) - ti) * v[i + 1]) /
                   static_cast<double>(k - 1);
        }
    }
    return v[0];
}

}  // namespace detail

// h^1 is the half-open indicator h^1(x,u) = 1 iff -u/2 <= x < u/2; for r >= 2
// the function is continuous with support (-ru/2, ru/2).
inline double hat_eval(double x, double u, int r) {
    if (!(u > 0.0)) throw invalid_parameter("hat_eval: u > 0 required");
    if (r < 1 || r >= detail::max_hat_order)
        throw invalid_parameter("hat_eval: order out of range");
    const double t = x / u + 0.5 * r;  // shift M_r to knots 0..r
    if (r == 1) return (t >= 0.0 && t < 1.0) ? 1.0 : 0.0;
    return std::pow(u, r - 1) * detail::bspline(t, r);
}

// ---------------------------------------------------------------------------
// A product hat prod_j h^r(x_j - z_j, u_j), optionally periodized with
// period 1 per coordinate.

struct HatSpec {
    int r = 1;
    Point center;   // z
    Point scale;    // u, positive
    bool periodic = false;

    int dim() const { return static_cast<int>(center.size()); }

    void validate() const {
        if (r < 1) throw invalid_parameter("HatSpec: r >= 1 required");
        if (center.size() != scale.size() || center.empty())
            throw invalid_parameter("HatSpec: center/scale size mismatch");
        for (int j = 0; j < dim(); ++j) {
            if (!(scale[j] > 0.0)) throw invalid_parameter("HatSpec: u > 0 required");
            if (periodic) {
                if (scale[j] > 0.5) throw invalid_parameter("HatSpec: periodic requires u <= 1/2");
                if (!(center[j] >= 0.0 && center[j] < 1.0))
                    throw invalid_parameter("HatSpec: periodic requires z in [0,1)");
            } else {
                const double half = 0.5 * r * scale[j];
                if (center[j] - half < -1e-15 || center[j] + half > 1.0 + 1e-15)
                    throw invalid_parameter("HatSpec: support box not inside the unit cube");
            }
        }
    }

    AxisBox support() const {
        AxisBox b;
        b.lo.resize(dim());
        b.hi.resize(dim());
        for (int j = 0; j < dim(); ++j) {
            b.lo[j] = center[j] - 0.5 * r * scale[j];
            b.hi[j] = center[j] + 0.5 * r * scale[j];
        }
        return b;
    }
};

inline double hat_box_eval(std::span<const double> x, const HatSpec& spec) {
    double v = 1.0;
    for (int j = 0; j < spec.dim(); ++j) {
        v *= hat_eval(x[j] - spec.center[j], spec.scale[j], spec.r);
        if (v == 0.0) return 0.0;
    }
    return v;
}

inline double hat_box_integral(const HatSpec& spec) {
    double v = 1.0;
    for (int j = 0; j < spec.dim(); ++j) v *= std::pow(spec.scale[j], spec.r);
    return v;
}

// Periodization sum_k h^r(x + k - z, u).  With u <= 1/2 the support length
// r*u is at most r/2, so shifts with |k_j| <= ceil(r/2) cover every wrap.
inline double periodic_hat_eval(std::span<const double> x, const HatSpec& spec) {
    if (!spec.periodic) throw invalid_parameter("periodic_hat_eval: spec must be periodic");
    for (int j = 0; j < spec.dim(); ++j)
        if (spec.scale[j] > 0.5)
            throw invalid_parameter("periodic_hat_eval: u <= 1/2 required");
    const int window = (spec.r + 1) / 2;
    double v = 1.0;
    for (int j = 0; j < spec.dim(); ++j) {
        double s = 0.0;
        for (int k = -window; k <= window; ++k)
            s += hat_eval(x[j] + k - spec.center[j], spec.scale[j], spec.r);
        v *= s;
        if (v == 0.0) return 0.0;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Truncated power kernel prod_j (y_j - x_j)_+^{r-1} / (r-1)!.  At r = 1 the
// zeroth power is taken as the strict indicator (a)_+^0 = 1 iff a > 0, which
// makes the kernel the characteristic function of {x < y}.

inline double br_eval(std::span<const double> x, std::span<const double> y, int r) {
    if (r < 1) throw invalid_parameter("br_eval: r >= 1 required");
    if (x.size() != y.size()) throw invalid_parameter("br_eval: dimension mismatch");
    double fact = 1.0;
    for (int k = 2; k < r; ++k) fact *= k;
    double v = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double a = y[j] - x[j];
        if (r == 1) {
            if (!(a > 0.0)) return 0.0;
        } else {
            if (a <= 0.0) return 0.0;
            v *= std::pow(a, r - 1) / fact;
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Periodic Bernoulli-type kernel
//   prod_j ( 1 + 2 sum_{k=1..K} k^{-r} cos(2 pi k x_j - alpha_j pi/2) ),
// truncated at K terms; one-coordinate truncation error <= 2 K^{1-r}/(r-1).

struct BernoulliSpec {
    double r = 2.0;         // must be > 1
    Point alpha;            // phase per coordinate
    std::size_t terms = 0;  // K

    int dim() const { return static_cast<int>(alpha.size()); }

    double tail_bound() const {
        return 2.0 * std::pow(static_cast<double>(terms), 1.0 - r) / (r - 1.0);
    }

    // Smallest K whose tail bound meets `tol`.
    static std::size_t terms_for_tolerance(double r, double tol) {
        if (!(r > 1.0)) throw invalid_parameter("BernoulliSpec: r > 1 required");
        const double k = std::pow(2.0 / ((r - 1.0) * tol), 1.0 / (r - 1.0));
        return static_cast<std::size_t>(std::ceil(k));
    }

    static BernoulliSpec make(double r, Point alpha, double tol = 1e-6) {
        if (!(r > 1.0)) throw invalid_parameter("BernoulliSpec: r > 1 required");
        BernoulliSpec s;
        s.r = r;
        s.alpha = std::move(alpha);
        s.terms = terms_for_tolerance(r, tol);
        return s;
    }
};

inline double bernoulli_eval(std::span<const double> x, const BernoulliSpec& spec) {
    if (!(spec.r > 1.0))
        throw invalid_parameter("bernoulli_eval: r > 1 required (series diverges)");
    if (spec.terms < 1) throw invalid_parameter("bernoulli_eval: K >= 1 required");
    if (static_cast<int>(x.size()) != spec.dim())
        throw invalid_parameter("bernoulli_eval: dimension mismatch");
    double v = 1.0;
    for (int j = 0; j < spec.dim(); ++j) {
        const double phase = spec.alpha[j] * pi / 2.0;
        double s = 0.0;
        // sum ascending in k would lose precision; the terms decay, so sum
        // from the tail up
        for (std::size_t k = spec.terms; k >= 1; --k)
            s += std::pow(static_cast<double>(k), -spec.r) *
                 std::cos(2.0 * pi * static_cast<double>(k) * x[j] - phase);
        v *= 1.0 + 2.0 * s;
    }
    return v;
}

}  // namespace qmc

#endif  // QMC_KERNELS_HPP
