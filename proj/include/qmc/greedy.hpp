#ifndef QMC_GREEDY_HPP
#define QMC_GREEDY_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qmc/common.hpp"
#include "qmc/cubature.hpp"
#include "qmc/point_set.hpp"
#include "qmc/pointgen.hpp"

namespace qmc {

// Weighted discrete L_p space over a fixed grid in the unit cube.
struct DiscretizedSpace {
    PointSet grid;
    std::vector<double> quad_weights;  // positive, sum to one
    double p = 2.0;

    void validate() const {
        if (grid.size() == 0 || quad_weights.size() != grid.size())
            throw invalid_parameter("DiscretizedSpace: grid/weight mismatch");
        if (!(p > 1.0) || !std::isfinite(p))
            throw invalid_parameter("DiscretizedSpace: p in (1, inf) required");
        double s = 0.0;
        for (double w : quad_weights) {
            if (!(w > 0.0)) throw invalid_parameter("DiscretizedSpace: weights must be positive");
            s += w;
        }
        if (std::abs(s - 1.0) > 1e-12)
            throw invalid_parameter("DiscretizedSpace: weights must sum to 1");
    }

    double norm(std::span<const double> f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            s += quad_weights[i] * std::pow(std::abs(f[i]), p);
        return std::pow(s, 1.0 / p);
    }

    double pairing(std::span<const double> g, std::span<const double> h) const {
        double s = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) s += quad_weights[i] * g[i] * h[i];
        return s;
    }
};

// Midpoint tensor grid with uniform weights.
inline DiscretizedSpace tensor_rectangle_space(int dim, int nodes_per_axis, double p) {
    DiscretizedSpace s;
    s.grid = regular_grid(nodes_per_axis, dim);
    s.quad_weights.assign(s.grid.size(), 1.0 / static_cast<double>(s.grid.size()));
    s.p = p;
    s.validate();
    return s;
}

using GridFunction = std::vector<double>;

// Peak functional representer: F_f(h) = sum_i w_i g_i h_i with
// g = |f|^{p-1} sign(f) / ||f||^{p-1}; then F_f(f) = ||f|| and ||g||_{p'} = 1.
inline GridFunction norming_functional(std::span<const double> f, const DiscretizedSpace& space) {
    const double n = space.norm(f);
    if (!(n > 0.0)) throw numeric_failure("norming_functional: zero function");
    GridFunction g(f.size());
    const double scale = std::pow(n, space.p - 1.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double mag = std::pow(std::abs(f[i]), space.p - 1.0);
        g[i] = (f[i] >= 0.0 ? mag : -mag) / scale;
    }
    return g;
}

struct ModulusConstants {
    double gamma = 0.5;
    double q = 2.0;
    double conjugate() const { return q / (q - 1.0); }  // exponent in the rate
};

// Power-type modulus of smoothness of L_p.
inline ModulusConstants modulus_constants(double p) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw invalid_parameter("modulus_constants: p in (1, inf) required");
    ModulusConstants m;
    if (p <= 2.0) {
        m.q = p;
        m.gamma = 1.0 / p;
    } else {
        m.q = 2.0;
        m.gamma = (p - 1.0) / 2.0;
    }
    return m;
}

struct GreedyTrace {
    std::vector<int> selected;          // dictionary index per step
    std::vector<double> residual_norms; // ||f_n|| after each step
    std::vector<double> epsilons;       // schedule values
    double beta = 1.0;
    GridFunction approximation;         // G_m
};

// Incremental greedy run: at step n pick the dictionary element maximizing
// the peak functional of the residual (ties to the lowest index), verify the
// step threshold F(phi - f) >= -eps_n, and average it in with weight 1/n.
inline GreedyTrace ia_run(const GridFunction& target, const std::vector<GridFunction>& dict,
                          const DiscretizedSpace& space, int steps, double beta = 1.0) {
    space.validate();
    if (dict.empty()) throw invalid_parameter("ia_run: empty dictionary");
    for (const auto& phi : dict)
        if (phi.size() != target.size())
            throw invalid_parameter("ia_run: dictionary size mismatch");
    const ModulusConstants mc = modulus_constants(space.p);
    const double rate = 1.0 / mc.conjugate();

    GreedyTrace trace;
    trace.beta = beta;
    GridFunction G(target.size(), 0.0);
    GridFunction residual = target;

    for (int n = 1; n <= steps; ++n) {
        const double eps = beta * std::pow(mc.gamma, 1.0 / mc.q) *
                           std::pow(static_cast<double>(n), -rate);
        const double rnorm = space.norm(residual);
        int pick = 0;
        if (rnorm > 1e-300) {
            const GridFunction g = norming_functional(residual, space);
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < dict.size(); ++i) {
                const double score = space.pairing(g, dict[i]);
                if (score > best) {
                    best = score;
                    pick = static_cast<int>(i);
                }
            }
            const double against_target = best - space.pairing(g, target);
            if (against_target < -eps)
                throw schedule_error(n, -eps - against_target);
        }
        const double shrink = 1.0 - 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < G.size(); ++i)
            G[i] = shrink * G[i] + dict[pick][i] / static_cast<double>(n);
        for (std::size_t i = 0; i < residual.size(); ++i) residual[i] = target[i] - G[i];
        trace.selected.push_back(pick);
        trace.residual_norms.push_back(space.norm(residual));
        trace.epsilons.push_back(eps);
    }
    trace.approximation = std::move(G);
    return trace;
}

// Doubles beta on schedule failure (up to 8) before giving up.
inline GreedyTrace ia_run_with_retry(const GridFunction& target,
                                     const std::vector<GridFunction>& dict,
                                     const DiscretizedSpace& space, int steps,
                                     double beta = 1.0) {
    for (;;) {
        try {
            return ia_run(target, dict, space, steps, beta);
        } catch (const schedule_error&) {
            if (beta >= 8.0) throw;
            beta = std::min(8.0, beta * 2.0);
        }
    }
}

struct GreedyCubatureResult {
    CubatureRule rule;
    GreedyTrace trace;
    double discrepancy = 0.0;    // || J_K - m^{-1} sum K(xi,.) || in the original scale
    double normalization = 1.0;  // dictionary was divided by this factor
};

// Builds the dictionary {K(x, .) : x in candidates} on the space grid,
// normalizes it into the unit ball if needed, targets the candidate average
// of the kernel sections (so the target is an exact convex combination), and
// returns the equal-weight rule on the selected knots.
template <typename Kernel>
inline GreedyCubatureResult greedy_cubature(Kernel&& K, const PointSet& candidates,
                                            const DiscretizedSpace& space, int steps,
                                            double beta = 1.0) {
    space.validate();
    if (candidates.size() == 0) throw invalid_parameter("greedy_cubature: no candidates");
    const std::size_t nc = candidates.size();
    const std::size_t ng = space.grid.size();

    std::vector<GridFunction> dict(nc, GridFunction(ng));
    double max_norm = 0.0;
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t g = 0; g < ng; ++g)
            dict[i][g] = K(candidates.point(i), space.grid.point(g));
        max_norm = std::max(max_norm, space.norm(dict[i]));
    }
    GreedyCubatureResult out;
    out.normalization = std::max(1.0, max_norm);
    if (out.normalization > 1.0)
        for (auto& row : dict)
            for (double& v : row) v /= out.normalization;

    GridFunction target(ng, 0.0);
    for (std::size_t i = 0; i < nc; ++i)
        for (std::size_t g = 0; g < ng; ++g)
            target[g] += dict[i][g] / static_cast<double>(nc);

    out.trace = ia_run_with_retry(target, dict, space, steps, beta);

    PointSet knots(candidates.dim(), "greedy(m=" + std::to_string(steps) + ")");
    for (int idx : out.trace.selected) knots.push_back(candidates.point(idx));
    out.rule.points = std::move(knots);
    out.rule.weights.assign(steps, 1.0 / static_cast<double>(steps));
    out.discrepancy = out.trace.residual_norms.back() * out.normalization;
    return out;
}

}  // namespace qmc

#endif  // QMC_GREEDY_HPP
