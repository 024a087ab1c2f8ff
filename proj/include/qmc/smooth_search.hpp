#ifndef QMC_SMOOTH_SEARCH_HPP
#define QMC_SMOOTH_SEARCH_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "qmc/common.hpp"
#include "qmc/discrepancy.hpp"
#include "qmc/kernels.hpp"
#include "qmc/point_set.hpp"
#include "qmc/simplex.hpp"

namespace qmc {

struct SmoothSearchOptions {
    int multistart = 512;   // dyadic starting boxes
    int refine_top = 12;    // starts that get coordinate ascent
    int line_samples = 24;  // coarse scan per line search
    int max_sweeps = 60;
    double tol = 1e-10;     // sweep improvement cutoff
    std::vector<AxisBox> extra_starts;
};

namespace detail {

// |integral - weighted sample sum| for the product hat whose support box is
// [z - w, z + w) per axis (so u_j = 2 w_j / r).  Points are pre-sorted along
// axis 0 so small boxes only touch a coordinate range.
class HatObjective {
  public:
    HatObjective(const PointSet& ps, std::vector<double> weights, int r)
        : ps_(ps), weights_(std::move(weights)), r_(r) {
        if (ps.size() == 0)
            throw invalid_parameter("smooth search: point set must be nonempty");
        if (weights_.size() != ps.size())
            throw invalid_parameter("smooth search: weight size mismatch");
        order_.resize(ps.size());
        for (std::size_t i = 0; i < ps.size(); ++i) order_[i] = i;
        std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return ps.coord(a, 0) < ps.coord(b, 0);
        });
        x0_.resize(ps.size());
        for (std::size_t i = 0; i < ps.size(); ++i) x0_[i] = ps.coord(order_[i], 0);
    }

    int dim() const { return ps_.dim(); }
    const PointSet& points() const { return ps_; }

    double eval(std::span<const double> z, std::span<const double> w) const {
        ++evals_;
        const int d = ps_.dim();
        double integral = 1.0;
        for (int j = 0; j < d; ++j) integral *= std::pow(2.0 * w[j] / r_, r_);

        const auto lo = std::lower_bound(x0_.begin(), x0_.end(), z[0] - w[0]);
        const auto hi = std::lower_bound(x0_.begin(), x0_.end(), z[0] + w[0]);
        double sum = 0.0;
        for (auto it = lo; it != hi; ++it) {
            const std::size_t i = order_[static_cast<std::size_t>(it - x0_.begin())];
            double p = 1.0;
            for (int j = 0; j < d; ++j) {
                p *= hat_eval(ps_.coord(i, j) - z[j], 2.0 * w[j] / r_, r_);
                if (p == 0.0) break;
            }
            sum += weights_[i] * p;
        }
        return std::abs(integral - sum);
    }

    std::uint64_t evals() const { return evals_; }

  private:
    const PointSet& ps_;
    std::vector<double> weights_;
    int r_;
    std::vector<std::size_t> order_;
    std::vector<double> x0_;
    mutable std::uint64_t evals_ = 0;
};

inline double line_maximize(const std::function<double(double)>& g, double lo, double hi,
                            int samples, double& best_t) {
    if (!(hi > lo)) {
        best_t = 0.5 * (lo + hi);
        return g(best_t);
    }
    double best = -std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i <= samples; ++i) {
        const double t = lo + (hi - lo) * i / samples;
        const double v = g(t);
        if (v > best) {
            best = v;
            best_i = i;
            best_t = t;
        }
    }
    // rescan the winning bracket before golden refinement; the objective is
    // only piecewise unimodal
    const double ca = lo + (hi - lo) * std::max(0, best_i - 1) / samples;
    const double cb = lo + (hi - lo) * std::min(samples, best_i + 1) / samples;
    double fine_best = -std::numeric_limits<double>::infinity();
    int fine_i = 0;
    for (int i = 0; i <= samples; ++i) {
        const double t = ca + (cb - ca) * i / samples;
        const double v = g(t);
        if (v > fine_best) {
            fine_best = v;
            fine_i = i;
        }
    }
    if (fine_best > best) {
        best = fine_best;
        best_t = ca + (cb - ca) * fine_i / samples;
    }
    double a = ca + (cb - ca) * std::max(0, fine_i - 1) / samples;
    double b = ca + (cb - ca) * std::min(samples, fine_i + 1) / samples;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = g(x1), f2 = g(x2);
    for (int it = 0; it < 48; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = g(x1);
        }
    }
    const double mid = 0.5 * (a + b);
    const double fm = g(mid);
    if (fm > best) {
        best = fm;
        best_t = mid;
    } else if (f1 > best) {
        best = f1;
        best_t = x1;
    } else if (f2 > best) {
        best = f2;
        best_t = x2;
    }
    return best;
}

struct SearchState {
    double value = 0.0;
    Point z, w;
};

constexpr double min_halfwidth = 1e-7;

// Dyadic multistart boxes, coarse levels first, capped at `budget`.
inline std::vector<SearchState> dyadic_starts(int d, int budget) {
    std::vector<SearchState> out;
    for (int total = d; total <= 10 * d && static_cast<int>(out.size()) < budget; ++total) {
        std::vector<int> lev(d, 1);
        lev[0] = total - d + 1;
        while (true) {
            // centers (2i+1) w per axis at halfwidth w = 2^-lev
            std::vector<int> idx(d, 0);
            bool room = true;
            while (room && static_cast<int>(out.size()) < budget) {
                SearchState s;
                s.z.resize(d);
                s.w.resize(d);
                for (int j = 0; j < d; ++j) {
                    s.w[j] = std::ldexp(1.0, -lev[j]);
                    s.z[j] = (2 * idx[j] + 1) * s.w[j];
                }
                out.push_back(std::move(s));
                int j = d - 1;
                while (j >= 0 && ++idx[j] == (1 << (lev[j] - 1))) idx[j--] = 0;
                if (j < 0) room = false;
            }
            int j = 0;
            while (j < d - 1 && lev[j] == 1) ++j;
            if (j == d - 1) break;
            const int v = lev[j];
            lev[j] = 1;
            lev[0] = v - 1;
            lev[j + 1] += 1;
        }
    }
    return out;
}

// One coordinate-ascent pass over (z_j, w_j) pairs until the sweep gain
// drops below opts.tol.
inline void ascend(const HatObjective& obj, SearchState& s, const SmoothSearchOptions& opts) {
    const int d = obj.dim();
    s.value = obj.eval(s.z, s.w);
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        const double before = s.value;
        for (int j = 0; j < d; ++j) {
            double t = s.z[j];
            const double v1 = line_maximize(
                [&](double zj) {
                    Point z = s.z;
                    z[j] = zj;
                    return obj.eval(z, s.w);
                },
                s.w[j], 1.0 - s.w[j], opts.line_samples, t);
            if (v1 > s.value) {
                s.value = v1;
                s.z[j] = t;
            }
            const double wmax = std::min(s.z[j], 1.0 - s.z[j]);
            double tw = s.w[j];
            const double v2 = line_maximize(
                [&](double wj) {
                    Point w = s.w;
                    w[j] = wj;
                    return obj.eval(s.z, w);
                },
                min_halfwidth, wmax, opts.line_samples, tw);
            if (v2 > s.value) {
                s.value = v2;
                s.w[j] = tw;
            }
        }
        if (s.value - before < opts.tol) break;
    }
}

inline AxisBox support_box(const SearchState& s) {
    AxisBox b;
    const int d = static_cast<int>(s.z.size());
    b.lo.resize(d);
    b.hi.resize(d);
    for (int j = 0; j < d; ++j) {
        b.lo[j] = s.z[j] - s.w[j];
        b.hi[j] = s.z[j] + s.w[j];
    }
    return b;
}

inline SearchState state_from_box(const AxisBox& box) {
    SearchState s;
    const int d = box.dim();
    s.z.resize(d);
    s.w.resize(d);
    for (int j = 0; j < d; ++j) {
        s.z[j] = 0.5 * (box.lo[j] + box.hi[j]);
        s.w[j] = std::max(min_halfwidth, 0.5 * (box.hi[j] - box.lo[j]));
    }
    return s;
}

// Boxes whose faces sit on point coordinates (plus the cube walls).  For
// order-one hats the objective is piecewise constant and its cells are
// exactly these boxes, so grid starts alone routinely miss the optimum; for
// higher orders the maxima still like to anchor on points.  The family is
// subsampled with a fixed stride when it outgrows the budget.
inline std::vector<SearchState> coordinate_anchored_starts(const PointSet& ps, int budget) {
    const int d = ps.dim();
    // per-axis candidate face positions, stride-capped so the full cross
    // product stays near the budget
    const int cap = std::max(
        4, static_cast<int>(std::pow(static_cast<double>(std::max(budget, 16)),
                                     1.0 / (2.0 * d))) + 1);
    std::vector<std::vector<double>> lo(d), hi(d);
    for (int j = 0; j < d; ++j) {
        std::vector<double> coords{0.0, 1.0};
        for (std::size_t i = 0; i < ps.size(); ++i) coords.push_back(ps.coord(i, j));
        std::sort(coords.begin(), coords.end());
        coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
        const std::size_t n = coords.size();
        if (n <= static_cast<std::size_t>(cap)) {
            lo[j] = coords;
        } else {
            for (int k = 0; k < cap; ++k)
                lo[j].push_back(coords[(k * (n - 1)) / (cap - 1)]);
            lo[j].erase(std::unique(lo[j].begin(), lo[j].end()), lo[j].end());
        }
        hi[j] = lo[j];
    }
    std::vector<SearchState> out;
    std::vector<std::size_t> li(d, 0), hiv(d, 0);
    while (true) {
        SearchState s;
        s.z.resize(d);
        s.w.resize(d);
        bool valid = true;
        for (int j = 0; j < d; ++j) {
            const double a = lo[j][li[j]], b = hi[j][hiv[j]];
            if (!(b > a)) { valid = false; break; }
            s.z[j] = 0.5 * (a + b);
            s.w[j] = std::max(min_halfwidth, 0.5 * (b - a));
        }
        if (valid) out.push_back(std::move(s));
        int j = d - 1;
        while (j >= 0) {
            if (++hiv[j] < hi[j].size()) break;
            hiv[j] = 0;
            if (++li[j] < lo[j].size()) break;
            li[j] = 0;
            --j;
        }
        if (j < 0) break;
    }
    return out;
}

// Full multistart search; returns refined candidates sorted by value.
inline std::vector<SearchState> smooth_search_core(const HatObjective& obj,
                                                   const SmoothSearchOptions& opts) {
    const int d = obj.dim();
    std::vector<SearchState> starts = dyadic_starts(d, opts.multistart);
    {
        auto anchored = coordinate_anchored_starts(obj.points(), opts.multistart);
        starts.insert(starts.end(), std::make_move_iterator(anchored.begin()),
                      std::make_move_iterator(anchored.end()));
    }
    for (auto& s : starts) s.value = obj.eval(s.z, s.w);
    std::sort(starts.begin(), starts.end(),
              [](const SearchState& a, const SearchState& b) { return a.value > b.value; });
    if (static_cast<int>(starts.size()) > opts.refine_top)
        starts.resize(opts.refine_top);
    for (const AxisBox& box : opts.extra_starts) starts.push_back(state_from_box(box));
    for (auto& s : starts) ascend(obj, s, opts);
    std::sort(starts.begin(), starts.end(),
              [](const SearchState& a, const SearchState& b) { return a.value > b.value; });
    return starts;
}

}  // namespace detail

// Largest deviation |integral - sample mean| over product hats of order r,
// searched by multistart coordinate ascent.  The result is an attained value,
// i.e. a certified lower bound of the supremum, never an exact sup.
inline DiscrepancyEstimate smooth_discrepancy(const PointSet& ps,
                                              std::span<const double> weights, int r,
                                              const SmoothSearchOptions& opts = {}) {
    if (r < 1) throw invalid_parameter("smooth_discrepancy: r >= 1 required");
    detail::HatObjective obj(ps, std::vector<double>(weights.begin(), weights.end()), r);
    const auto found = detail::smooth_search_core(obj, opts);
    DiscrepancyEstimate est;
    est.value = found.front().value;
    est.exact = false;
    est.witness = detail::support_box(found.front());
    est.search_budget = obj.evals();
    return est;
}

inline DiscrepancyEstimate smooth_discrepancy(const PointSet& ps, int r,
                                              const SmoothSearchOptions& opts = {}) {
    std::vector<double> w(ps.size(), 1.0 / static_cast<double>(ps.size()));
    return smooth_discrepancy(ps, w, r, opts);
}

// ---------------------------------------------------------------------------
// Fixed-volume variant: the support box keeps volume exactly V; the last
// side is recomputed from the free log-ratios at every evaluation.

inline DiscrepancyEstimate fixed_volume_discrepancy(const PointSet& ps, int r, double V,
                                                    const SmoothSearchOptions& opts = {}) {
    if (r < 1) throw invalid_parameter("fixed_volume_discrepancy: r >= 1 required");
    if (!(V > 0.0 && V <= 1.0))
        throw invalid_parameter("fixed_volume_discrepancy: 0 < V <= 1 required");
    const int d = ps.dim();
    std::vector<double> weights(ps.size(), 1.0 / static_cast<double>(ps.size()));
    detail::HatObjective obj(ps, weights, r);

    const double whole = V / std::pow(2.0, d);  // prod of halfwidths

    // state: z (d), halfwidths w (d) with w[d-1] implied
    auto complete = [&](std::vector<double>& w) {
        double p = 1.0;
        for (int j = 0; j + 1 < d; ++j) p *= w[j];
        w[d - 1] = whole / p;
    };
    auto feasible = [&](const std::vector<double>& w) {
        for (int j = 0; j < d; ++j)
            if (!(w[j] >= detail::min_halfwidth && w[j] <= 0.5)) return false;
        return true;
    };
    auto clamp_z = [&](std::vector<double>& z, const std::vector<double>& w) {
        for (int j = 0; j < d; ++j) z[j] = std::clamp(z[j], w[j], 1.0 - w[j]);
    };

    struct State {
        double value;
        std::vector<double> z, w;
    };
    std::vector<State> starts;

    // aspect-ratio ladder per free axis, z on a coarse grid
    std::vector<std::vector<double>> aspects;
    {
        std::vector<double> ratio{1.0, 0.25, 4.0, 0.0625, 16.0};
        std::vector<int> pick(std::max(0, d - 1), 0);
        while (true) {
            std::vector<double> w(d, 0.0);
            const double base = std::pow(whole, 1.0 / d);
            for (int j = 0; j + 1 < d; ++j) w[j] = base * ratio[pick[j]];
            complete(w);
            if (feasible(w)) aspects.push_back(w);
            int j = static_cast<int>(pick.size()) - 1;
            while (j >= 0 && ++pick[j] == static_cast<int>(ratio.size())) pick[j--] = 0;
            if (j < 0) break;
        }
        if (aspects.empty()) {
            std::vector<double> w(d, 0.0);
            for (int j = 0; j + 1 < d; ++j) w[j] = std::pow(whole, 1.0 / d);
            complete(w);
            if (!feasible(w))
                throw invalid_parameter("fixed_volume_discrepancy: V admits no box");
            aspects.push_back(w);
        }
    }
    const int zgrid = std::max(2, static_cast<int>(std::round(
                                      std::pow(static_cast<double>(opts.multistart) /
                                                   static_cast<double>(aspects.size()),
                                               1.0 / d))));
    for (const auto& w : aspects) {
        std::vector<int> idx(d, 0);
        while (true) {
            State s;
            s.w = w;
            s.z.resize(d);
            for (int j = 0; j < d; ++j) s.z[j] = (2.0 * idx[j] + 1.0) / (2.0 * zgrid);
            clamp_z(s.z, s.w);
            s.value = obj.eval(s.z, s.w);
            starts.push_back(std::move(s));
            int j = d - 1;
            while (j >= 0 && ++idx[j] == zgrid) idx[j--] = 0;
            if (j < 0) break;
        }
    }
    for (const AxisBox& box : opts.extra_starts) {
        detail::SearchState t = detail::state_from_box(box);
        State s;
        s.z = t.z;
        s.w = t.w;
        complete(s.w);
        if (!feasible(s.w)) continue;
        clamp_z(s.z, s.w);
        s.value = obj.eval(s.z, s.w);
        starts.push_back(std::move(s));
    }
    std::sort(starts.begin(), starts.end(),
              [](const State& a, const State& b) { return a.value > b.value; });
    if (static_cast<int>(starts.size()) > opts.refine_top) starts.resize(opts.refine_top);

    for (auto& s : starts) {
        for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
            const double before = s.value;
            for (int j = 0; j < d; ++j) {
                double t = s.z[j];
                const double v = detail::line_maximize(
                    [&](double zj) {
                        std::vector<double> z = s.z;
                        z[j] = zj;
                        return obj.eval(z, s.w);
                    },
                    s.w[j], 1.0 - s.w[j], opts.line_samples, t);
                if (v > s.value) {
                    s.value = v;
                    s.z[j] = t;
                }
            }
            // log-side moves on the free axes, last side compensating
            for (int j = 0; j + 1 < d; ++j) {
                double rest = 1.0;
                for (int k = 0; k + 1 < d; ++k)
                    if (k != j) rest *= s.w[k];
                const double lo = std::max(detail::min_halfwidth, whole / (0.5 * rest));
                const double hi =
                    std::min(0.5, whole / (detail::min_halfwidth * rest));
                if (!(lo < hi)) continue;
                double t = std::log(s.w[j]);
                const double v = detail::line_maximize(
                    [&](double y) {
                        std::vector<double> w = s.w;
                        std::vector<double> z = s.z;
                        w[j] = std::exp(y);
                        complete(w);
                        if (!feasible(w)) return -1.0;
                        clamp_z(z, w);
                        return obj.eval(z, w);
                    },
                    std::log(lo), std::log(hi), opts.line_samples, t);
                if (v > s.value) {
                    std::vector<double> w = s.w;
                    w[j] = std::exp(t);
                    complete(w);
                    if (feasible(w)) {
                        std::vector<double> z = s.z;
                        clamp_z(z, w);
                        const double vv = obj.eval(z, w);
                        if (vv > s.value) {
                            s.value = vv;
                            s.w = w;
                            s.z = z;
                        }
                    }
                }
            }
            if (s.value - before < opts.tol) break;
        }
    }
    std::sort(starts.begin(), starts.end(),
              [](const State& a, const State& b) { return a.value > b.value; });

    DiscrepancyEstimate est;
    est.value = starts.front().value;
    est.exact = false;
    detail::SearchState best;
    best.z = starts.front().z;
    best.w = starts.front().w;
    est.witness = detail::support_box(best);
    est.search_budget = obj.evals();
    return est;
}

// ---------------------------------------------------------------------------
// Periodic grid norms: L_{p1} over translations z (normalized measure on
// [0,1)^d), then L_{p2} over shapes u with plain Lebesgue measure on
// (0,1/2]^d.  Grid estimate; for p = infinity it is a max over grid nodes,
// nondecreasing under nested refinement.

namespace detail {

inline std::vector<double> periodic_u_nodes(int ugrid) {
    // log-uniform from 2^-11 to 2^-1; denominators (ugrid-1) nest under
    // ugrid -> 2*ugrid - 1
    std::vector<double> u(ugrid);
    for (int i = 0; i < ugrid; ++i)
        u[i] = 0.5 * std::pow(2.0, -10.0 * (ugrid - 1 - i) / (ugrid - 1));
    return u;
}

inline std::vector<double> linear_cell_widths(const std::vector<double>& u) {
    const std::size_t k = u.size();
    std::vector<double> w(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double lo = i == 0 ? 0.0 : 0.5 * (u[i - 1] + u[i]);
        const double hi = i + 1 == k ? 0.5 : 0.5 * (u[i] + u[i + 1]);
        w[i] = hi - lo;
    }
    return w;
}

}  // namespace detail

template <typename Rule>
inline double periodic_smooth_discrepancy(const Rule& rule, int r, double p1, double p2,
                                          int zgrid, int ugrid) {
    if (r < 1) throw invalid_parameter("periodic_smooth_discrepancy: r >= 1 required");
    if (zgrid < 4 || ugrid < 4)
        throw invalid_parameter("periodic_smooth_discrepancy: grids of at least 4 required");
    if (!(p1 >= 1.0) || !(p2 >= 1.0))
        throw invalid_parameter("periodic_smooth_discrepancy: p >= 1 required");
    const PointSet& ps = rule.points;
    const std::vector<double>& lambda = rule.weights;
    const int d = ps.dim();

    const std::vector<double> unodes = detail::periodic_u_nodes(ugrid);
    const std::vector<double> uw = detail::linear_cell_widths(unodes);
    const bool z_max = std::isinf(p1);
    const bool u_max = std::isinf(p2);

    std::vector<int> ui(d, 0), zi(d, 0);
    HatSpec spec;
    spec.r = r;
    spec.periodic = true;
    spec.center.resize(d);
    spec.scale.resize(d);
    std::vector<double> x(d);

    double outer = 0.0;
    while (true) {
        double ucell = 1.0;
        double integral = 1.0;
        for (int j = 0; j < d; ++j) {
            spec.scale[j] = unodes[ui[j]];
            ucell *= uw[ui[j]];
            integral *= std::pow(spec.scale[j], r);
        }
        double inner = 0.0;
        std::fill(zi.begin(), zi.end(), 0);
        while (true) {
            for (int j = 0; j < d; ++j)
                spec.center[j] = static_cast<double>(zi[j]) / zgrid;
            double sum = 0.0;
            for (std::size_t i = 0; i < ps.size(); ++i) {
                for (int j = 0; j < d; ++j) x[j] = ps.coord(i, j);
                sum += lambda[i] * periodic_hat_eval(x, spec);
            }
            const double err = std::abs(integral - sum);
            if (z_max)
                inner = std::max(inner, err);
            else
                inner += std::pow(err, p1);
            int j = d - 1;
            while (j >= 0 && ++zi[j] == zgrid) zi[j--] = 0;
            if (j < 0) break;
        }
        if (!z_max) inner = std::pow(inner / std::pow(static_cast<double>(zgrid), d), 1.0 / p1);
        if (u_max)
            outer = std::max(outer, inner);
        else
            outer += std::pow(inner, p2) * ucell;
        int j = d - 1;
        while (j >= 0 && ++ui[j] == ugrid) ui[j--] = 0;
        if (j < 0) break;
    }
    if (!u_max) outer = std::pow(outer, 1.0 / p2);
    return outer;
}

// ---------------------------------------------------------------------------
// Weight-optimized smooth discrepancy by cutting planes: alternate a
// Chebyshev LP on the current box set with a violation search at the LP
// weights.

struct OptimizedSmoothResult {
    double value = 0.0;             // minimax over the final box set
    std::vector<double> weights;    // optimized lambda
    std::vector<AxisBox> boxes;     // final box set (hat supports)
    int rounds = 0;
    double last_violation = 0.0;    // best deviation found at the final weights
};

inline OptimizedSmoothResult optimized_smooth_discrepancy(
    const PointSet& ps, int r, const SmoothSearchOptions& opts = {}, int max_rounds = 20,
    double violation_tol = 1e-8) {
    if (r < 1) throw invalid_parameter("optimized_smooth_discrepancy: r >= 1 required");
    if (ps.size() > 1000)
        throw invalid_parameter("optimized_smooth_discrepancy: m <= 1000 required");
    const int d = ps.dim();
    const std::size_t m = ps.size();

    // Working boxes are canonicalized through their (lo, hi) corners so that
    // re-deriving center and halfwidth from the exported AxisBox reproduces
    // the evaluated hats bit for bit (order-one hats are discontinuous, so a
    // one-ulp drift in a face can move a point across it).
    auto canonical = [](const detail::SearchState& s) {
        return detail::state_from_box(detail::support_box(s));
    };
    std::vector<detail::SearchState> boxes;
    {
        std::vector<double> w(m, 1.0 / static_cast<double>(m));
        detail::HatObjective obj(ps, w, r);
        auto cands = detail::smooth_search_core(obj, opts);
        for (auto& c : cands) boxes.push_back(canonical(c));
    }

    auto hat_row = [&](const detail::SearchState& s) {
        std::vector<double> row(m);
        std::vector<double> x(d);
        for (std::size_t i = 0; i < m; ++i) {
            double p = 1.0;
            for (int j = 0; j < d; ++j)
                p *= hat_eval(ps.coord(i, j) - s.z[j], 2.0 * s.w[j] / r, r);
            row[i] = p;
        }
        return row;
    };
    auto integral_of = [&](const detail::SearchState& s) {
        double e = 1.0;
        for (int j = 0; j < d; ++j) e *= std::pow(2.0 * s.w[j] / r, r);
        return e;
    };

    std::vector<std::vector<double>> H;
    std::vector<double> e;
    for (const auto& s : boxes) {
        H.push_back(hat_row(s));
        e.push_back(integral_of(s));
    }

    OptimizedSmoothResult out;
    for (int round = 0; round < max_rounds; ++round) {
        out.rounds = round + 1;
        const ChebyshevFit fit = chebyshev_minimax(H, e);
        out.value = fit.value;
        out.weights = fit.coeffs;

        SmoothSearchOptions vopts = opts;
        detail::HatObjective vobj(ps, fit.coeffs, r);
        auto cands = detail::smooth_search_core(vobj, vopts);
        out.last_violation = cands.front().value;
        if (cands.front().value <= fit.value + violation_tol) break;
        bool added = false;
        for (const auto& c : cands) {
            if (c.value <= fit.value + violation_tol) break;
            // skip near-duplicates of boxes already in the working set
            bool dup = false;
            for (const auto& s : boxes) {
                double dist = 0.0;
                for (int j = 0; j < d; ++j)
                    dist += std::abs(s.z[j] - c.z[j]) + std::abs(s.w[j] - c.w[j]);
                if (dist < 1e-9) { dup = true; break; }
            }
            if (dup) continue;
            const detail::SearchState cc = canonical(c);
            boxes.push_back(cc);
            H.push_back(hat_row(cc));
            e.push_back(integral_of(cc));
            added = true;
        }
        if (!added) break;
    }
    for (const auto& s : boxes) out.boxes.push_back(detail::support_box(s));
    return out;
}

}  // namespace qmc

#endif  // QMC_SMOOTH_SEARCH_HPP
