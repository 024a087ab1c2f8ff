#ifndef QMC_FROLOV_HPP
#define QMC_FROLOV_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qmc/common.hpp"
#include "qmc/point_set.hpp"

namespace qmc {

// ---------------------------------------------------------------------------
// Admissible-lattice basis built from P_d(x) = prod_{j=1..d} (x - (2j-1)) - 1.
// The polynomial is monic with integer coefficients and no rational root, so
// the product of the linear forms L(m) = A m is a nonzero integer for every
// integer m != 0, which is the lattice property everything below relies on.

struct FrolovBasis {
    int dim = 0;
    std::vector<std::int64_t> poly;        // coefficients, constant term first
    std::vector<double> roots;             // ascending
    Eigen::MatrixXd A;                     // Vandermonde: A(j,i) = roots[j]^i
    double detA = 0.0;
    Eigen::MatrixXd inverse_transpose;     // (A^{-1})^T

    // L(m) = A m.
    Eigen::VectorXd linear_forms(const Eigen::VectorXd& m) const { return A * m; }

    double norm_form(const Eigen::VectorXd& m) const {
        Eigen::VectorXd L = A * m;
        double p = 1.0;
        for (int j = 0; j < dim; ++j) p *= L(j);
        return p;
    }
};

namespace detail {

inline std::vector<std::int64_t> frolov_poly_coeffs(int d) {
    // prod (x - (2j-1)), then subtract 1 from the constant term.
    // Coefficients are kept constant-term first.
    std::vector<std::int64_t> c{1};
    for (int j = 1; j <= d; ++j) {
        const std::int64_t a = 2 * j - 1;
        std::vector<std::int64_t> next(c.size() + 1, 0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= a * c[i];
        }
        c = std::move(next);
    }
    c[0] -= 1;
    return c;
}

inline double poly_eval(const std::vector<std::int64_t>& c, double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + static_cast<double>(c[i]);
    return v;
}

inline double poly_deriv_eval(const std::vector<std::int64_t>& c, double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 1;) v = v * x + static_cast<double>(i) * static_cast<double>(c[i]);
    return v;
}

// Integer divisors of |n| (both signs are tried by the caller).
inline std::vector<std::int64_t> divisors(std::int64_t n) {
    n = std::llabs(n);
    std::vector<std::int64_t> out;
    for (std::int64_t k = 1; k * k <= n; ++k) {
        if (n % k == 0) {
            out.push_back(k);
            if (k != n / k) out.push_back(n / k);
        }
    }
    return out;
}

inline std::int64_t poly_eval_int(const std::vector<std::int64_t>& c, std::int64_t x) {
    std::int64_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

// Checks |prod_j L_j(m)| >= 1 - 1e-9 for all integer m != 0 with
// max-norm at most `radius`.  partial[k] = sum_{i<k} A.col(i) m_i is kept
// incrementally; the loop body must stay allocation-free (up to 101^4 states).
inline void check_norm_form(const FrolovBasis& b, int radius) {
    const int d = b.dim;
    double col[4][4];
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) col[i][j] = b.A(j, i);
    double partial[5][4] = {};
    int m[4];
    for (int k = 0; k < d; ++k) m[k] = -radius;
    for (int k = 0; k < d; ++k)
        for (int j = 0; j < d; ++j)
            partial[k + 1][j] = partial[k][j] + col[k][j] * m[k];
    while (true) {
        bool zero = true;
        for (int j = 0; j < d; ++j)
            if (m[j] != 0) { zero = false; break; }
        if (!zero) {
            double p = 1.0;
            for (int j = 0; j < d; ++j) p *= partial[d][j];
            if (std::abs(p) < 1.0 - 1e-9)
                throw numeric_failure("frolov_basis: norm form below 1 at a nonzero integer vector");
        }
        int k = d - 1;
        while (k >= 0 && m[k] == radius) m[k--] = -radius;
        if (k < 0) break;
        ++m[k];
        for (int i = k; i < d; ++i)
            for (int j = 0; j < d; ++j)
                partial[i + 1][j] = partial[i][j] + col[i][j] * m[i];
    }
}

}  // namespace detail

inline FrolovBasis frolov_basis(int d, bool verify = true) {
    if (d < 1 || d > 4) throw invalid_parameter("frolov_basis: 1 <= d <= 4 required");
    FrolovBasis b;
    b.dim = d;
    b.poly = detail::frolov_poly_coeffs(d);

    // Rational-root test: monic with integer coefficients, so any rational
    // root is an integer dividing the constant term.  Degree one is exempt
    // (x - 2 is trivially irreducible and its root never enters A).
    if (d > 1) {
        for (std::int64_t k : detail::divisors(b.poly[0])) {
            if (detail::poly_eval_int(b.poly, k) == 0 ||
                detail::poly_eval_int(b.poly, -k) == 0)
                throw numeric_failure("frolov_basis: polynomial has a rational root");
        }
    }

    // Companion-matrix eigenvalues, then Newton polish.
    if (d == 1) {
        b.roots = {static_cast<double>(-b.poly[0])};
    } else {
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
        for (int i = 0; i < d; ++i) comp(i, d - 1) = -static_cast<double>(b.poly[i]);
        for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
        b.roots.resize(d);
        for (int i = 0; i < d; ++i) {
            if (std::abs(es.eigenvalues()(i).imag()) > 1e-8)
                throw numeric_failure("frolov_basis: complex root encountered");
            b.roots[i] = es.eigenvalues()(i).real();
        }
        std::sort(b.roots.begin(), b.roots.end());
        for (double& r : b.roots) {
            for (int it = 0; it < 100; ++it) {
                const double f = detail::poly_eval(b.poly, r);
                if (std::abs(f) <= 1e-12) break;
                const double df = detail::poly_deriv_eval(b.poly, r);
                if (df == 0.0) throw numeric_failure("frolov_basis: Newton derivative vanished");
                r -= f / df;
            }
            if (std::abs(detail::poly_eval(b.poly, r)) > 1e-12)
                throw numeric_failure("frolov_basis: root polish did not converge");
        }
    }
    for (int i = 0; i + 1 < d; ++i)
        if (!(b.roots[i] < b.roots[i + 1]))
            throw numeric_failure("frolov_basis: roots not distinct");

    b.A.resize(d, d);
    for (int j = 0; j < d; ++j) {
        double p = 1.0;
        for (int i = 0; i < d; ++i) {
            b.A(j, i) = p;
            p *= b.roots[j];
        }
    }
    b.detA = b.A.determinant();
    if (std::abs(b.detA) <= 0.0) throw numeric_failure("frolov_basis: singular matrix");
    b.inverse_transpose = b.A.inverse().transpose();

    if (verify) detail::check_norm_form(b, 50);
    return b;
}

// Construction is deterministic, so share one verified basis per dimension.
inline const FrolovBasis& frolov_basis_cached(int d) {
    switch (d) {
        case 1: { static const FrolovBasis b = frolov_basis(1); return b; }
        case 2: { static const FrolovBasis b = frolov_basis(2); return b; }
        case 3: { static const FrolovBasis b = frolov_basis(3); return b; }
        case 4: { static const FrolovBasis b = frolov_basis(4); return b; }
        default: throw invalid_parameter("frolov_basis_cached: 1 <= d <= 4 required");
    }
}

namespace detail {

// Integer bounding box of {a * A^T x : x in domain} expanded by `pad`.
inline void lattice_index_bounds(const FrolovBasis& b, double a,
                                 std::span<const double> dom_lo,
                                 std::span<const double> dom_hi, int pad,
                                 std::vector<long>& lo, std::vector<long>& hi) {
    const int d = b.dim;
    lo.assign(d, 0);
    hi.assign(d, 0);
    for (int i = 0; i < d; ++i) {
        double mn = 0.0, mx = 0.0;
        for (int j = 0; j < d; ++j) {
            // m_i = a * sum_j A(j,i) x_j over the corner values of x_j.
            const double c = a * b.A(j, i);
            mn += c * (c >= 0 ? dom_lo[j] : dom_hi[j]);
            mx += c * (c >= 0 ? dom_hi[j] : dom_lo[j]);
        }
        lo[i] = static_cast<long>(std::floor(mn)) - pad;
        hi[i] = static_cast<long>(std::ceil(mx)) + pad;
    }
}

template <typename Visit>
inline void enumerate_lattice(const FrolovBasis& b, double a,
                              std::span<const double> dom_lo,
                              std::span<const double> dom_hi, Visit&& visit) {
    const int d = b.dim;
    std::vector<long> lo, hi;
    lattice_index_bounds(b, a, dom_lo, dom_hi, 1, lo, hi);
    std::vector<long> m(d);
    for (int i = 0; i < d; ++i) m[i] = lo[i];
    const Eigen::MatrixXd& B = b.inverse_transpose;  // point = B m / a
    std::vector<double> pt(d);
    while (true) {
        for (int j = 0; j < d; ++j) {
            double s = 0.0;
            for (int i = 0; i < d; ++i) s += B(j, i) * static_cast<double>(m[i]);
            pt[j] = s / a;
        }
        visit(std::span<const double>(pt));
        int k = d - 1;
        while (k >= 0 && m[k] == hi[k]) {
            m[k] = lo[k];
            --k;
        }
        if (k < 0) break;
        ++m[k];
    }
}

}  // namespace detail

// Scaled dual lattice intersected with the closed unit cube.  Boundary points
// are kept; the periodized variant below is the one to use modulo 1.
inline PointSet frolov_points(const FrolovBasis& basis, double a) {
    if (!(a > 1.0)) throw invalid_parameter("frolov_points: a > 1 required");
    const int d = basis.dim;
    std::vector<double> lo(d, 0.0), hi(d, 1.0);
    PointSet ps(d, "frolov(d=" + std::to_string(d) + ",a=" + format_double(a) + ")");
    detail::enumerate_lattice(basis, a, lo, hi, [&](std::span<const double> pt) {
        for (double c : pt)
            if (!(0.0 <= c && c <= 1.0)) return;
        ps.push_back(pt);
    });
    // The scaled dual lattice has one point per 1/(a^d |detA|) of volume, so
    // the count in the unit cube is a^d |detA| up to boundary terms.
    const double cap = 4.0 * std::pow(a, d) * std::abs(basis.detA) + std::pow(4.0, d);
    if (static_cast<double>(ps.size()) > cap)
        throw numeric_failure("frolov_points: cardinality above the lattice-density cap");
    return ps;
}

// ---------------------------------------------------------------------------
// Smooth periodization weight.  S is the standard exp(-1/x) sigmoid blend;
// w(t) = S(t+1/2) on (-1/2,1/2], 1-S(t-1/2) on (1/2,3/2), 0 elsewhere, so
// sum_k w(t+k) = 1 and supp(w) = (-1/2,3/2).

inline double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double f0 = std::exp(-1.0 / x);
    const double f1 = std::exp(-1.0 / (1.0 - x));
    return f0 / (f0 + f1);
}

inline double periodization_weight(double t) {
    if (t <= -0.5 || t >= 1.5) return 0.0;
    if (t <= 0.5) return smooth_step(t + 0.5);
    return 1.0 - smooth_step(t - 0.5);
}

struct PeriodizedFrolov {
    const FrolovBasis* basis = nullptr;
    double a = 0.0;
    PointSet raw;       // lattice points in [-1/2, 3/2)^d
    PointSet wrapped;   // componentwise fractional parts
    std::vector<double> weights;

    double weight_sum() const {
        return pairwise_sum(weights);
    }
};

inline PeriodizedFrolov frolov_periodized(const FrolovBasis& basis, double a) {
    if (!(a > 1.0)) throw invalid_parameter("frolov_periodized: a > 1 required");
    const int d = basis.dim;
    PeriodizedFrolov out;
    out.basis = &basis;
    out.a = a;
    out.raw = PointSet(d, "frolov-periodized-raw(d=" + std::to_string(d) + ",a=" + format_double(a) + ")");
    out.wrapped = PointSet(d, "frolov-periodized(d=" + std::to_string(d) + ",a=" + format_double(a) + ")");
    const double cell = 1.0 / (std::pow(a, d) * std::abs(basis.detA));
    std::vector<double> lo(d, -0.5), hi(d, 1.5);
    std::vector<double> wrap(d);
    detail::enumerate_lattice(basis, a, lo, hi, [&](std::span<const double> pt) {
        double w = 1.0;
        for (int j = 0; j < d; ++j) {
            if (!(-0.5 <= pt[j] && pt[j] < 1.5)) return;
            w *= periodization_weight(pt[j]);
        }
        if (w == 0.0) return;  // boundary of the support contributes nothing
        out.raw.push_back(pt);
        for (int j = 0; j < d; ++j) {
            wrap[j] = pt[j] - std::floor(pt[j]);
            if (wrap[j] >= 1.0) wrap[j] = 0.0;
        }
        out.wrapped.push_back(wrap);
        out.weights.push_back(w * cell);
    });
    if (a >= 4.0 && std::abs(out.weight_sum() - 1.0) > 1e-3)
        throw numeric_failure("frolov_periodized: weights do not sum to 1 within tolerance");
    return out;
}

}  // namespace qmc

#endif  // QMC_FROLOV_HPP
