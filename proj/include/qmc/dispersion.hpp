#ifndef QMC_DISPERSION_HPP
#define QMC_DISPERSION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qmc/common.hpp"
#include "qmc/point_set.hpp"

namespace qmc {

// Largest axis-parallel box with no point strictly inside.  The sup over
// half-open empty boxes equals the max over open boxes with bounds on the
// coordinate grid, so the witness is reported with open-interior semantics:
// points may lie on its faces.
struct DispersionResult {
    double value = 0.0;
    AxisBox witness;
    enum class Method { exact2d, exact_nd, sampled } method = Method::exact2d;

    bool witness_is_empty(const PointSet& ps) const {
        for (std::size_t i = 0; i < ps.size(); ++i)
            if (witness.contains_open(ps.point(i))) return false;
        return true;
    }
};

// Sweep over left bounds; for each, shrink the right bound over the strip's
// x-values in descending order while maintaining the largest y-gap under
// deletions (gaps only merge, so the max is O(1) to maintain).  O(m^2).
inline DispersionResult dispersion_2d(const PointSet& ps) {
    if (ps.dim() != 2) throw invalid_parameter("dispersion_2d: d = 2 required");
    const std::size_t m = ps.size();
    if (m > 100000) throw invalid_parameter("dispersion_2d: m <= 1e5 required");
    DispersionResult best;
    best.method = DispersionResult::Method::exact2d;
    best.witness.lo = {0.0, 0.0};
    best.witness.hi = {1.0, 1.0};
    best.value = 1.0;
    if (m == 0) return best;
    best.value = 0.0;

    // y-sorted ranks with sentinels 0 (y=0) and m+1 (y=1)
    std::vector<std::size_t> by_y(m);
    for (std::size_t i = 0; i < m; ++i) by_y[i] = i;
    std::sort(by_y.begin(), by_y.end(),
              [&](std::size_t a, std::size_t b) { return ps.coord(a, 1) < ps.coord(b, 1); });
    std::vector<double> yval(m + 2);
    yval[0] = 0.0;
    yval[m + 1] = 1.0;
    std::vector<std::size_t> rank_of(m);  // point -> list node
    for (std::size_t k = 0; k < m; ++k) {
        yval[k + 1] = ps.coord(by_y[k], 1);
        rank_of[by_y[k]] = k + 1;
    }

    std::vector<std::size_t> by_x(m);
    for (std::size_t i = 0; i < m; ++i) by_x[i] = i;
    std::sort(by_x.begin(), by_x.end(),
              [&](std::size_t a, std::size_t b) { return ps.coord(a, 0) < ps.coord(b, 0); });

    std::vector<double> lefts{0.0};
    for (std::size_t i = 0; i < m; ++i) lefts.push_back(ps.coord(by_x[i], 0));
    lefts.erase(std::unique(lefts.begin(), lefts.end()), lefts.end());

    std::vector<std::size_t> nxt(m + 2), prv(m + 2);

    for (const double l : lefts) {
        // strip membership: x strictly greater than l
        const auto first = std::upper_bound(
            by_x.begin(), by_x.end(), l,
            [&](double v, std::size_t i) { return v < ps.coord(i, 0); });

        // rebuild the y-linked list over strip members
        std::vector<bool> member(m + 2, false);
        member[0] = member[m + 1] = true;
        for (auto it = first; it != by_x.end(); ++it) member[rank_of[*it]] = true;
        std::size_t last = 0;
        double maxgap = 0.0, gap_lo = 0.0, gap_hi = 1.0;
        for (std::size_t node = 1; node <= m + 1; ++node) {
            if (!member[node]) continue;
            nxt[last] = node;
            prv[node] = last;
            const double gap = yval[node] - yval[last];
            if (gap > maxgap) {
                maxgap = gap;
                gap_lo = yval[last];
                gap_hi = yval[node];
            }
            last = node;
        }

        // right bounds descending; delete the boundary group first, so a
        // point sitting exactly on the right edge never blocks
        auto record = [&](double r) {
            const double vol = (r - l) * maxgap;
            if (vol > best.value) {
                best.value = vol;
                best.witness.lo = {l, gap_lo};
                best.witness.hi = {r, gap_hi};
            }
        };
        std::size_t idx = m;  // walk by_x from the largest x down to `first`
        double r_cur = 1.0;
        while (true) {
            // delete strip points with x == r_cur
            while (idx > static_cast<std::size_t>(first - by_x.begin())) {
                const std::size_t p = by_x[idx - 1];
                if (ps.coord(p, 0) != r_cur) break;
                const std::size_t node = rank_of[p];
                const std::size_t a = prv[node], b = nxt[node];
                nxt[a] = b;
                prv[b] = a;
                const double gap = yval[b] - yval[a];
                if (gap > maxgap) {
                    maxgap = gap;
                    gap_lo = yval[a];
                    gap_hi = yval[b];
                }
                --idx;
            }
            record(r_cur);
            if (idx == static_cast<std::size_t>(first - by_x.begin())) break;
            r_cur = ps.coord(by_x[idx - 1], 0);
            if (!(r_cur > l)) break;
        }
    }
    return best;
}

struct DispersionOptions {
    double budget = 1e8;          // candidate-tuple cap before falling back
    int sample_trials = 20000;    // fallback random-growth trials
    std::uint64_t seed = 1;       // fallback is seeded and deterministic
};

namespace detail {

inline DispersionResult dispersion_sampled(const PointSet& ps, const DispersionOptions& opts) {
    const int d = ps.dim();
    const std::size_t m = ps.size();
    DispersionResult best;
    best.method = DispersionResult::Method::sampled;
    best.witness.lo.assign(d, 0.0);
    best.witness.hi.assign(d, 1.0);
    Rng rng(opts.seed);
    std::vector<double> lo(d), hi(d);
    for (int trial = 0; trial < opts.sample_trials; ++trial) {
        std::fill(lo.begin(), lo.end(), 0.0);
        std::fill(hi.begin(), hi.end(), 1.0);
        std::vector<double> c(d);
        for (int j = 0; j < d; ++j) c[j] = uniform01(rng);
        // shrink around the center, cheapest cut first
        while (true) {
            std::size_t blocker = m;
            for (std::size_t i = 0; i < m; ++i) {
                bool inside = true;
                for (int j = 0; j < d; ++j)
                    if (!(lo[j] < ps.coord(i, j) && ps.coord(i, j) < hi[j])) {
                        inside = false;
                        break;
                    }
                if (inside) { blocker = i; break; }
            }
            if (blocker == m) break;
            int cut_axis = -1;
            bool cut_low = false;
            double cut_ratio = -1.0;
            for (int j = 0; j < d; ++j) {
                const double x = ps.coord(blocker, j);
                if (x <= c[j]) {
                    const double keep = (hi[j] - x) / (hi[j] - lo[j]);
                    if (keep > cut_ratio) { cut_ratio = keep; cut_axis = j; cut_low = true; }
                } else {
                    const double keep = (x - lo[j]) / (hi[j] - lo[j]);
                    if (keep > cut_ratio) { cut_ratio = keep; cut_axis = j; cut_low = false; }
                }
            }
            if (cut_low)
                lo[cut_axis] = ps.coord(blocker, cut_axis);
            else
                hi[cut_axis] = ps.coord(blocker, cut_axis);
        }
        double vol = 1.0;
        for (int j = 0; j < d; ++j) vol *= hi[j] - lo[j];
        if (vol > best.value) {
            best.value = vol;
            best.witness.lo = lo;
            best.witness.hi = hi;
        }
    }
    return best;
}

}  // namespace detail

// Exact maximal empty box in any dimension by enumerating candidate bound
// pairs per axis (point coordinates plus the cube walls), widest first, with
// running-best volume pruning.  Falls back to seeded sampling past `budget`.
inline DispersionResult dispersion_nd(const PointSet& ps, const DispersionOptions& opts = {}) {
    const int d = ps.dim();
    const std::size_t m = ps.size();
    if (d == 2 && std::pow(static_cast<double>(m) + 2.0, 4) > opts.budget)
        return dispersion_2d(ps);

    double tuples = 1.0;
    for (int j = 0; j < d; ++j) tuples *= std::pow(static_cast<double>(m) + 2.0, 2);
    if (tuples > opts.budget) return detail::dispersion_sampled(ps, opts);

    DispersionResult best;
    best.method = DispersionResult::Method::exact_nd;
    best.witness.lo.assign(d, 0.0);
    best.witness.hi.assign(d, 1.0);
    if (m == 0) {
        best.value = 1.0;
        return best;
    }

    std::vector<std::vector<double>> cand(d);
    for (int j = 0; j < d; ++j) {
        cand[j].push_back(0.0);
        cand[j].push_back(1.0);
        for (std::size_t i = 0; i < m; ++i) cand[j].push_back(ps.coord(i, j));
        std::sort(cand[j].begin(), cand[j].end());
        cand[j].erase(std::unique(cand[j].begin(), cand[j].end()), cand[j].end());
    }
    // per-axis (lo, hi) pairs sorted by width descending, for early cutoff
    struct Pair {
        double lo, hi, width;
    };
    std::vector<std::vector<Pair>> pairs(d);
    for (int j = 0; j < d; ++j) {
        for (std::size_t a = 0; a < cand[j].size(); ++a)
            for (std::size_t b = a + 1; b < cand[j].size(); ++b)
                pairs[j].push_back({cand[j][a], cand[j][b], cand[j][b] - cand[j][a]});
        std::sort(pairs[j].begin(), pairs[j].end(),
                  [](const Pair& x, const Pair& y) { return x.width > y.width; });
    }

    std::vector<double> lo(d), hi(d);
    auto empty_box = [&]() {
        for (std::size_t i = 0; i < m; ++i) {
            bool inside = true;
            for (int j = 0; j < d; ++j)
                if (!(lo[j] < ps.coord(i, j) && ps.coord(i, j) < hi[j])) {
                    inside = false;
                    break;
                }
            if (inside) return false;
        }
        return true;
    };

    auto recurse = [&](auto&& self, int axis, double vol) -> void {
        if (axis == d) {
            if (vol > best.value && empty_box()) {
                best.value = vol;
                best.witness.lo = lo;
                best.witness.hi = hi;
            }
            return;
        }
        for (const Pair& p : pairs[axis]) {
            if (vol * p.width <= best.value) break;  // sorted by width
            lo[axis] = p.lo;
            hi[axis] = p.hi;
            self(self, axis + 1, vol * p.width);
        }
    };
    recurse(recurse, 0, 1.0);
    return best;
}

// Single largest coordinate gap; a slab over it is always empty, so this is
// an exact lower bound for the dispersion.
inline double max_coordinate_gap(const PointSet& ps) {
    double best = 0.0;
    for (int j = 0; j < ps.dim(); ++j) {
        std::vector<double> v{0.0, 1.0};
        for (std::size_t i = 0; i < ps.size(); ++i) v.push_back(ps.coord(i, j));
        std::sort(v.begin(), v.end());
        for (std::size_t i = 0; i + 1 < v.size(); ++i) best = std::max(best, v[i + 1] - v[i]);
    }
    return best;
}

}  // namespace qmc

#endif  // QMC_DISPERSION_HPP
