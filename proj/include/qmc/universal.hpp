#ifndef QMC_UNIVERSAL_HPP
#define QMC_UNIVERSAL_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "qmc/common.hpp"
#include "qmc/dispersion.hpp"
#include "qmc/point_set.hpp"

namespace qmc {

// Dyadic frequency box R(s) = {k : |k_j| < 2^{s_j}}.
struct FrequencyBox {
    std::vector<int> s;

    int dim() const { return static_cast<int>(s.size()); }

    std::size_t dimension() const {
        std::size_t n = 1;
        for (int e : s) n *= (std::size_t{2} << e) - 1;  // 2^{e+1} - 1
        return n;
    }

    std::vector<std::vector<long>> frequencies() const {
        std::vector<std::vector<long>> out;
        const int d = dim();
        std::vector<long> lo(d), k(d);
        for (int j = 0; j < d; ++j) {
            lo[j] = -((1L << s[j]) - 1);
            k[j] = lo[j];
        }
        while (true) {
            out.push_back(k);
            int j = d - 1;
            while (j >= 0 && k[j] == -lo[j]) {
                k[j] = lo[j];
                --j;
            }
            if (j < 0) break;
            ++k[j];
        }
        return out;
    }
};

// All s with ||s||_1 = n: the collection C(n,d).
inline std::vector<FrequencyBox> enumerate_collection(int n, int d) {
    if (n < 0 || d < 1) throw invalid_parameter("enumerate_collection: n >= 0, d >= 1");
    std::vector<FrequencyBox> out;
    std::vector<int> s(d, 0);
    s[0] = n;
    while (true) {
        out.push_back(FrequencyBox{s});
        int j = 0;
        while (j < d - 1 && s[j] == 0) ++j;
        if (j == d - 1) break;
        const int v = s[j];
        s[j] = 0;
        s[0] = v - 1;
        s[j + 1] += 1;
    }
    return out;
}

// Trigonometric polynomial sum c_k e^{i <k, x>}, 2 pi periodic per axis.
struct TrigPoly {
    int dim = 1;
    std::vector<std::vector<long>> freqs;
    std::vector<std::complex<double>> coeffs;

    std::complex<double> eval(std::span<const double> x) const {
        std::complex<double> s = 0.0;
        for (std::size_t i = 0; i < freqs.size(); ++i) {
            double phase = 0.0;
            for (int j = 0; j < dim; ++j) phase += static_cast<double>(freqs[i][j]) * x[j];
            s += coeffs[i] * std::polar(1.0, phase);
        }
        return s;
    }
};

inline TrigPoly random_poly(const FrequencyBox& box, Rng& rng) {
    TrigPoly f;
    f.dim = box.dim();
    f.freqs = box.frequencies();
    f.coeffs.resize(f.freqs.size());
    for (auto& c : f.coeffs) c = {normal01(rng), normal01(rng)};
    return f;
}

// Max of |f| over the oversampled tensor grid of equispaced nodes; a lower
// bound of the sup norm that stabilizes as the oversampling grows.
inline double sup_norm_estimate(const TrigPoly& f, int oversample = 8) {
    if (oversample < 4) throw invalid_parameter("sup_norm_estimate: oversample >= 4");
    const int d = f.dim;
    std::vector<long> N(d, 0);
    for (const auto& k : f.freqs)
        for (int j = 0; j < d; ++j) N[j] = std::max(N[j], std::labs(k[j]));
    std::vector<long> K(d), M(d);
    double grid_size = 1.0;
    for (int j = 0; j < d; ++j) {
        K[j] = 2 * N[j] + 1;
        M[j] = oversample * K[j];
        grid_size *= static_cast<double>(M[j]);
    }
    if (grid_size > 1e8)
        throw invalid_parameter("sup_norm_estimate: evaluation grid too large");
    // dense coefficient tensor, row-major, axis 0 slowest
    std::vector<long> stride(d, 1);
    for (int j = d - 2; j >= 0; --j) stride[j] = stride[j + 1] * K[j + 1];
    std::vector<std::complex<double>> cur(stride[0] * K[0], 0.0);
    for (std::size_t i = 0; i < f.freqs.size(); ++i) {
        long off = 0;
        for (int j = 0; j < d; ++j) off += (f.freqs[i][j] + N[j]) * stride[j];
        cur[off] += f.coeffs[i];
    }
    // transform axis by axis: coefficients k_a -> grid values x_a
    long lead = 1;
    for (int a = 0; a < d; ++a) {
        long tail = 1;
        for (int l = a + 1; l < d; ++l) tail *= K[l];
        std::vector<std::complex<double>> phase(M[a] * K[a]);
        for (long x = 0; x < M[a]; ++x) {
            const double theta = 2.0 * pi * static_cast<double>(x) / static_cast<double>(M[a]);
            for (long k = 0; k < K[a]; ++k)
                phase[x * K[a] + k] = std::polar(1.0, theta * static_cast<double>(k - N[a]));
        }
        std::vector<std::complex<double>> next(lead * M[a] * tail, 0.0);
        for (long il = 0; il < lead; ++il)
            for (long x = 0; x < M[a]; ++x) {
                const std::complex<double>* ph = phase.data() + x * K[a];
                for (long k = 0; k < K[a]; ++k) {
                    const std::complex<double>* src = cur.data() + (il * K[a] + k) * tail;
                    std::complex<double>* dst = next.data() + (il * M[a] + x) * tail;
                    const std::complex<double> p = ph[k];
                    for (long it = 0; it < tail; ++it) dst[it] += p * src[it];
                }
            }
        cur = std::move(next);
        lead *= M[a];
    }
    double best = 0.0;
    for (const auto& v : cur) best = std::max(best, std::abs(v));
    return best;
}

inline double max_on_points(const TrigPoly& f, const PointSet& T) {
    double best = 0.0;
    std::vector<double> x(f.dim);
    for (std::size_t i = 0; i < T.size(); ++i) {
        for (int j = 0; j < f.dim; ++j) x[j] = 2.0 * pi * T.coord(i, j);
        best = std::max(best, std::abs(f.eval(x)));
    }
    return best;
}

// max_T |f(2 pi xi)| / ||f||_inf with the sup norm estimated on a grid.  The
// denominator also sees the sampled values, so the ratio never exceeds one.
inline double linf_ratio(const TrigPoly& f, const PointSet& T, int oversample = 8) {
    const double on_points = max_on_points(f, T);
    const double sup = std::max(sup_norm_estimate(f, oversample), on_points);
    if (sup == 0.0) return 1.0;
    return on_points / sup;
}

struct UniversalCheckResult {
    double min_ratio = 1.0;
    std::vector<int> witness_s;
    int witness_trial = -1;
    std::uint64_t seed = 0;
    int trials = 0;
};

// Worst discretization ratio over the collection C(n,d) with `trials` random
// polynomials per box, coefficients iid standard complex Gaussian.
inline UniversalCheckResult universal_linf_check(const PointSet& T, int n, int trials,
                                                 std::uint64_t seed, int oversample = 8) {
    if (trials < 1) throw invalid_parameter("universal_linf_check: trials >= 1");
    UniversalCheckResult out;
    out.seed = seed;
    out.trials = trials;
    Rng rng(seed);
    for (const FrequencyBox& box : enumerate_collection(n, T.dim())) {
        for (int t = 0; t < trials; ++t) {
            const TrigPoly f = random_poly(box, rng);
            const double ratio = linf_ratio(f, T, oversample);
            if (ratio < out.min_ratio) {
                out.min_ratio = ratio;
                out.witness_s = box.s;
                out.witness_trial = t;
            }
        }
    }
    return out;
}

struct UniversalityRow {
    int c = 0;
    int n = 0;
    double c1_hat = 0.0;
    double disp_scaled = 0.0;  // dispersion * 2^n
    std::vector<int> witness_s;
    int witness_trial = -1;
};

// Pairs the discretization ratio at level n = r - c with the dispersion
// scaled by 2^n, across a scan of c values.
inline std::vector<UniversalityRow> universality_vs_dispersion(const PointSet& T,
                                                               std::span<const int> cscan,
                                                               int trials,
                                                               std::uint64_t seed) {
    const int r = static_cast<int>(std::floor(std::log2(static_cast<double>(T.size()))));
    const DispersionResult disp = T.dim() == 2 ? dispersion_2d(T) : dispersion_nd(T);
    std::vector<UniversalityRow> rows;
    for (int c : cscan) {
        UniversalityRow row;
        row.c = c;
        row.n = std::max(0, r - c);
        const UniversalCheckResult res = universal_linf_check(T, row.n, trials, seed);
        row.c1_hat = res.min_ratio;
        row.witness_s = res.witness_s;
        row.witness_trial = res.witness_trial;
        row.disp_scaled = disp.value * std::pow(2.0, row.n);
        rows.push_back(row);
    }
    return rows;
}

// Extreme eigenvalues of the sampling Gram matrix
// M_{k,k'} = (1/m) sum_nu e^{i <k'-k, 2 pi xi^nu>}: the sharp constants in
// the two-sided L2 sampling comparison over span{e^{i<k,x>} : k in Q}.
inline std::pair<double, double> marcinkiewicz_l2_bounds(
    const std::vector<std::vector<long>>& freqs, const PointSet& P) {
    const std::size_t q = freqs.size();
    if (q == 0 || q > 2000)
        throw invalid_parameter("marcinkiewicz_l2_bounds: 1 <= |Q| <= 2000 required");
    const std::size_t m = P.size();
    if (m == 0) throw invalid_parameter("marcinkiewicz_l2_bounds: empty point set");
    const int d = P.dim();
    Eigen::MatrixXcd E(m, q);
    for (std::size_t nu = 0; nu < m; ++nu)
        for (std::size_t i = 0; i < q; ++i) {
            double phase = 0.0;
            for (int j = 0; j < d; ++j)
                phase += static_cast<double>(freqs[i][j]) * P.coord(nu, j);
            E(nu, i) = std::polar(1.0, 2.0 * pi * phase);
        }
    Eigen::MatrixXcd G = (E.adjoint() * E) / static_cast<double>(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    const auto& ev = es.eigenvalues();
    return {std::max(0.0, ev(0)), ev(q - 1)};
}

struct SparseProbeResult {
    double worst_c1 = 1.0;
    double worst_c2 = 1.0;
    int trials = 0;
};

// Random v-subsets Q of the cube of frequencies |k_j| <= 2^{n-1}-1, each
// tested against one seeded random point set.  An existence probe only.
inline SparseProbeResult sparse_collection_probe(int v, int n, int d, std::size_t m,
                                                 int trials, std::uint64_t seed) {
    if (v < 1 || n < 1 || d < 1) throw invalid_parameter("sparse_collection_probe: bad shape");
    const long half = (1L << (n - 1)) - 1;
    std::vector<std::vector<long>> pool;
    std::vector<long> k(d, -half);
    while (true) {
        pool.push_back(k);
        int j = d - 1;
        while (j >= 0 && k[j] == half) k[j--] = -half;
        if (j < 0) break;
        ++k[j];
    }
    if (static_cast<std::size_t>(v) > pool.size())
        throw invalid_parameter("sparse_collection_probe: v exceeds |Pi_n|");
    if (pool.size() > 4096)
        throw invalid_parameter("sparse_collection_probe: Pi_n too large for the probe");

    Rng rng(seed);
    PointSet pts(d, "probe");
    {
        std::vector<double> x(d);
        for (std::size_t i = 0; i < m; ++i) {
            for (int j = 0; j < d; ++j) x[j] = uniform01(rng);
            pts.push_back(x);
        }
    }
    SparseProbeResult out;
    out.trials = trials;
    std::vector<std::size_t> idx(pool.size());
    for (int t = 0; t < trials; ++t) {
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        // partial Fisher-Yates for a uniform v-subset
        std::vector<std::vector<long>> Q;
        for (int i = 0; i < v; ++i) {
            const std::size_t j =
                i + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(idx.size() - i));
            std::swap(idx[i], idx[std::min(j, idx.size() - 1)]);
            Q.push_back(pool[idx[i]]);
        }
        const auto [c1, c2] = marcinkiewicz_l2_bounds(Q, pts);
        out.worst_c1 = std::min(out.worst_c1, c1);
        out.worst_c2 = std::max(out.worst_c2, c2);
    }
    return out;
}

}  // namespace qmc

#endif  // QMC_UNIVERSAL_HPP
