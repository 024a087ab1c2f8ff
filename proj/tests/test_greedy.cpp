#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "qmc/greedy.hpp"
#include "qmc/pointgen.hpp"

using namespace qmc;

namespace {

GridFunction random_function(const DiscretizedSpace& space, Rng& rng) {
    GridFunction f(space.grid.size());
    for (double& v : f) v = normal01(rng);
    return f;
}

// translation-invariant periodic kernel sections over the space grid
std::vector<GridFunction> cosine_dictionary(const PointSet& candidates,
                                            const DiscretizedSpace& space) {
    std::vector<GridFunction> dict;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        GridFunction row(space.grid.size());
        for (std::size_t g = 0; g < space.grid.size(); ++g) {
            const double t = candidates.coord(i, 0) - space.grid.coord(g, 0);
            row[g] = (1.0 + std::cos(2.0 * pi * t)) / std::sqrt(1.5);
        }
        dict.push_back(std::move(row));
    }
    return dict;
}

}  // namespace

TEST_CASE("norming functional identities") {
    Rng rng(3);
    for (double p : {1.5, 2.0, 3.0}) {
        const DiscretizedSpace space = tensor_rectangle_space(1, 128, p);
        for (int rep = 0; rep < 5; ++rep) {
            const GridFunction f = random_function(space, rng);
            const GridFunction g = norming_functional(f, space);
            // F_f(f) = ||f||
            REQUIRE(space.pairing(g, f) == Catch::Approx(space.norm(f)).margin(1e-10));
            // dual norm of the representer is one
            const double pp = p / (p - 1.0);
            double dual = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i)
                dual += space.quad_weights[i] * std::pow(std::abs(g[i]), pp);
            REQUIRE(std::pow(dual, 1.0 / pp) == Catch::Approx(1.0).margin(1e-10));
        }
    }

    // p = 2 self-duality: g is f scaled to unit norm
    const DiscretizedSpace l2 = tensor_rectangle_space(1, 64, 2.0);
    const GridFunction f = random_function(l2, rng);
    const GridFunction g = norming_functional(f, l2);
    const double n = l2.norm(f);
    for (std::size_t i = 0; i < f.size(); ++i)
        REQUIRE(g[i] == Catch::Approx(f[i] / n).margin(1e-12));

    const GridFunction zero(l2.grid.size(), 0.0);
    CHECK_THROWS_AS(norming_functional(zero, l2), numeric_failure);
}

TEST_CASE("norming functional is scale invariant") {
    Rng rng(5);
    const DiscretizedSpace space = tensor_rectangle_space(1, 64, 1.5);
    const GridFunction f = random_function(space, rng);
    const GridFunction g1 = norming_functional(f, space);
    GridFunction f3 = f;
    for (double& v : f3) v *= 3.0;
    const GridFunction g3 = norming_functional(f3, space);
    for (std::size_t i = 0; i < f.size(); ++i)
        REQUIRE(g1[i] == Catch::Approx(g3[i]).margin(1e-12));
}

TEST_CASE("modulus constants") {
    const ModulusConstants a = modulus_constants(2.0);
    CHECK(a.gamma == 0.5);
    CHECK(a.q == 2.0);

    const ModulusConstants b = modulus_constants(1.5);
    CHECK(b.gamma == Catch::Approx(2.0 / 3.0));
    CHECK(b.q == 1.5);

    const ModulusConstants c = modulus_constants(3.0);
    CHECK(c.gamma == 1.0);
    CHECK(c.q == 2.0);

    CHECK_THROWS_AS(modulus_constants(1.0), invalid_parameter);
}

TEST_CASE("singleton dictionary reproduces its element") {
    const DiscretizedSpace space = tensor_rectangle_space(1, 64, 2.0);
    Rng rng(7);
    GridFunction g = random_function(space, rng);
    const double n = space.norm(g);
    for (double& v : g) v /= n;  // dictionary elements live in the unit ball
    const GreedyTrace trace = ia_run(g, {g}, space, 6);
    for (double r : trace.residual_norms) REQUIRE(r <= 1e-14);
    for (int idx : trace.selected) REQUIRE(idx == 0);
}

TEST_CASE("epsilon schedule matches the closed form") {
    const DiscretizedSpace space = tensor_rectangle_space(1, 32, 2.0);
    Rng rng(11);
    GridFunction g = random_function(space, rng);
    const double n = space.norm(g);
    for (double& v : g) v /= n;
    const GreedyTrace trace = ia_run(g, {g}, space, 8, 1.0);
    // gamma = 1/2, q = 2, conjugate exponent 2
    for (int k = 1; k <= 8; ++k)
        REQUIRE(trace.epsilons[k - 1] ==
                Catch::Approx(std::sqrt(0.5) * std::pow(k, -0.5)).margin(1e-15));
    REQUIRE(trace.epsilons[3] == Catch::Approx(0.35355339059327373).margin(1e-15));
}

TEST_CASE("approximant is the multiplicity average of selections") {
    const DiscretizedSpace space = tensor_rectangle_space(1, 128, 2.0);
    const PointSet cands = halton_set(32, 1);
    const auto dict = cosine_dictionary(cands, space);
    GridFunction target(space.grid.size(), 0.0);
    for (const auto& row : dict)
        for (std::size_t g = 0; g < row.size(); ++g) target[g] += row[g] / dict.size();

    const GreedyTrace trace = ia_run(target, dict, space, 40);
    GridFunction avg(space.grid.size(), 0.0);
    for (int idx : trace.selected)
        for (std::size_t g = 0; g < avg.size(); ++g)
            avg[g] += dict[idx][g] / static_cast<double>(trace.selected.size());
    for (std::size_t g = 0; g < avg.size(); ++g)
        REQUIRE(avg[g] == Catch::Approx(trace.approximation[g]).margin(1e-12));
}

TEST_CASE("residuals decay at the guaranteed rate in L2") {
    const DiscretizedSpace space = tensor_rectangle_space(1, 256, 2.0);
    const PointSet cands = halton_set(128, 1);
    const auto dict = cosine_dictionary(cands, space);
    GridFunction target(space.grid.size(), 0.0);
    for (const auto& row : dict)
        for (std::size_t g = 0; g < row.size(); ++g) target[g] += row[g] / dict.size();

    const GreedyTrace trace = ia_run(target, dict, space, 128);
    std::vector<double> ns, rs;
    for (int n = 8; n <= 128; ++n) {
        if (trace.residual_norms[n - 1] <= 0.0) continue;
        ns.push_back(n);
        rs.push_back(trace.residual_norms[n - 1]);
    }
    const LineFit fit = fit_loglog(ns, rs);
    INFO("L2 greedy slope " << fit.slope);
    REQUIRE(fit.slope <= -0.4);
}

TEST_CASE("residual decay in a p < 2 space") {
    const DiscretizedSpace space = tensor_rectangle_space(1, 256, 1.5);
    const PointSet cands = halton_set(96, 1);
    const auto dict = cosine_dictionary(cands, space);
    GridFunction target(space.grid.size(), 0.0);
    for (const auto& row : dict)
        for (std::size_t g = 0; g < row.size(); ++g) target[g] += row[g] / dict.size();

    const GreedyTrace trace = ia_run_with_retry(target, dict, space, 128);
    std::vector<double> ns, rs;
    for (int n = 8; n <= 128; ++n) {
        if (trace.residual_norms[n - 1] <= 0.0) continue;
        ns.push_back(n);
        rs.push_back(trace.residual_norms[n - 1]);
    }
    const LineFit fit = fit_loglog(ns, rs);
    INFO("p=1.5 greedy slope " << fit.slope);
    // q = 1.5, conjugate exponent 3: guaranteed decay n^{-1/3}
    REQUIRE(fit.slope <= -(1.0 - 1.0 / 1.5) + 0.15);
}

TEST_CASE("scaled residual constant is stable across hull targets") {
    // max_n ||f_n|| sqrt(n) stays of one size when the hull weights move
    const DiscretizedSpace space = tensor_rectangle_space(1, 256, 2.0);
    const PointSet cands = halton_set(96, 1);
    const auto dict = cosine_dictionary(cands, space);
    std::vector<double> constants;
    for (double shift : {0.3, 0.5, 0.7}) {
        std::vector<double> hull(cands.size());
        double hsum = 0.0;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            hull[i] = std::max(0.0, 0.25 - std::abs(cands.coord(i, 0) - shift));
            hsum += hull[i];
        }
        GridFunction target(space.grid.size(), 0.0);
        for (std::size_t i = 0; i < cands.size(); ++i)
            for (std::size_t g = 0; g < target.size(); ++g)
                target[g] += hull[i] / hsum * dict[i][g];
        const GreedyTrace trace = ia_run(target, dict, space, 96);
        double c = 0.0;
        for (std::size_t n = 1; n <= trace.residual_norms.size(); ++n)
            c = std::max(c, trace.residual_norms[n - 1] * std::sqrt(static_cast<double>(n)));
        constants.push_back(c);
    }
    const double lo = *std::min_element(constants.begin(), constants.end());
    const double hi = *std::max_element(constants.begin(), constants.end());
    INFO("scaled residual constants " << lo << " .. " << hi);
    REQUIRE(hi / lo <= 1.5);
}

TEST_CASE("targets outside the convex hull fail the schedule") {
    const DiscretizedSpace space = tensor_rectangle_space(1, 64, 2.0);
    Rng rng(13);
    GridFunction g = random_function(space, rng);
    const double n = space.norm(g);
    for (double& v : g) v /= n;
    GridFunction target = g;
    for (double& v : target) v *= 3.0;  // ||target|| = 3, not reachable

    try {
        ia_run(target, {g}, space, 4);
        FAIL("expected schedule_error");
    } catch (const schedule_error& e) {
        CHECK(e.step == 1);
        CHECK(e.deficit > 0.0);
    }
    // retries double beta up to 8; the schedule still collapses once
    // eps_n = 8 sqrt(1/2) n^{-1/2} drops below the fixed deficit of 2
    CHECK_THROWS_AS(ia_run_with_retry(target, {g}, space, 16), schedule_error);
}

TEST_CASE("greedy cubature single step identity") {
    const DiscretizedSpace space = tensor_rectangle_space(1, 128, 2.0);
    const PointSet cands = halton_set(16, 1);
    auto K = [](std::span<const double> x, std::span<const double> y) {
        return (1.0 + std::cos(2.0 * pi * (x[0] - y[0]))) / std::sqrt(1.5);
    };
    const GreedyCubatureResult res = greedy_cubature(K, cands, space, 1);
    REQUIRE(res.rule.size() == 1);
    REQUIRE(res.rule.weights[0] == 1.0);

    // reported discrepancy equals || J - K(knot, .) || evaluated directly
    GridFunction direct(space.grid.size(), 0.0);
    for (std::size_t g = 0; g < space.grid.size(); ++g) {
        double J = 0.0;
        for (std::size_t i = 0; i < cands.size(); ++i)
            J += K(cands.point(i), space.grid.point(g)) / cands.size();
        direct[g] = J - K(res.rule.points.point(0), space.grid.point(g));
    }
    REQUIRE(res.discrepancy == Catch::Approx(space.norm(direct)).margin(1e-12));
}

TEST_CASE("greedy cubature discrepancy decays for a shift kernel") {
    const DiscretizedSpace space = tensor_rectangle_space(1, 256, 2.0);
    const PointSet cands = halton_set(128, 1);
    // indicator of a union of intervals, periodic in x - y; L2 norm is
    // sqrt(0.35) < 1, so no normalization is needed
    auto K = [](std::span<const double> x, std::span<const double> y) {
        double t = x[0] - y[0];
        t -= std::floor(t);
        return (t < 0.25 || (t >= 0.5 && t < 0.6)) ? 1.0 : 0.0;
    };
    const GreedyCubatureResult res = greedy_cubature(K, cands, space, 256);
    REQUIRE(res.normalization == 1.0);
    std::vector<double> ns, rs;
    for (int n = 16; n <= 256; ++n) {
        if (res.trace.residual_norms[n - 1] <= 0.0) continue;
        ns.push_back(n);
        rs.push_back(res.trace.residual_norms[n - 1]);
    }
    const LineFit fit = fit_loglog(ns, rs);
    INFO("shift-kernel discrepancy slope " << fit.slope);
    REQUIRE(fit.slope <= -0.4);
}
