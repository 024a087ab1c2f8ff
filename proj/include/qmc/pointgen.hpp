#ifndef QMC_POINTGEN_HPP
#define QMC_POINTGEN_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qmc/common.hpp"
#include "qmc/point_set.hpp"

namespace qmc {

// ---------------------------------------------------------------------------
// Fibonacci lattice in the unit square.

inline std::uint64_t fibonacci_number(int n) {
    if (n < 0) throw invalid_parameter("fibonacci_number: n >= 0 required");
    std::uint64_t a = 1, b = 1;  // b_0 = b_1 = 1
    for (int i = 2; i <= n; ++i) {
        std::uint64_t c = a + b;
        a = b;
        b = c;
    }
    return n == 0 ? a : b;
}

// {(mu/b_n, frac(mu*b_{n-1}/b_n)) : mu = 0..b_n-1}.  Indexing from 0 keeps
// every coordinate in [0,1); modulo 1 it is the same set as 1..b_n.
inline PointSet fibonacci_set(int n) {
    if (n < 2) throw invalid_parameter("fibonacci_set: n >= 2 required");
    const std::uint64_t bn = fibonacci_number(n);
    const std::uint64_t bn1 = fibonacci_number(n - 1);
    PointSet ps(2, "fibonacci(n=" + std::to_string(n) + ")");
    for (std::uint64_t mu = 0; mu < bn; ++mu) {
        const double x = static_cast<double>(mu) / static_cast<double>(bn);
        const double y = static_cast<double>((mu * bn1) % bn) / static_cast<double>(bn);
        ps.push_back({x, y});
    }
    ps.check_unit_halfopen();
    return ps;
}

// ---------------------------------------------------------------------------
// Two-dimensional van der Corput net: (i/2^r, bitreverse_r(i)/2^r).

inline std::uint32_t bit_reverse(std::uint32_t i, int bits) {
    std::uint32_t out = 0;
    for (int b = 0; b < bits; ++b) {
        out = (out << 1) | (i & 1u);
        i >>= 1;
    }
    return out;
}

inline PointSet corput_net(int r) {
    if (r < 0 || r > 24) throw invalid_parameter("corput_net: 0 <= r <= 24 required");
    const std::uint32_t n = 1u << r;
    const double scale = 1.0 / static_cast<double>(n);
    PointSet ps(2, "corput(r=" + std::to_string(r) + ")");
    for (std::uint32_t i = 0; i < n; ++i)
        ps.push_back({i * scale, bit_reverse(i, r) * scale});
    return ps;
}

// True iff every dyadic box of volume 2^{t-r} contains exactly 2^t points,
// with half-open membership.  |T| must equal 2^r.
inline bool net_check(const PointSet& T, int t, int r, int d) {
    if (t < 0 || r < t || d < 1 || T.dim() != d)
        throw invalid_parameter("net_check: bad parameters");
    if (T.size() != (std::size_t{1} << r))
        throw invalid_parameter("net_check: |T| != 2^r");
    const std::uint32_t want = std::uint32_t{1} << t;

    // Enumerate all compositions of r-t into d nonnegative parts.
    const int level = r - t;
    std::vector<int> comp(d, 0);
    comp[0] = level;
    while (true) {
        // Count points per cell of the dyadic grid with exponents comp.
        std::vector<std::uint32_t> cells(std::uint64_t{1} << level, 0);
        bool ok = true;
        for (std::size_t i = 0; i < T.size() && ok; ++i) {
            std::uint64_t idx = 0;
            for (int j = 0; j < d; ++j) {
                const double c = T.coord(i, j);
                if (!(c >= 0.0 && c < 1.0)) return false;
                const std::uint64_t cell =
                    static_cast<std::uint64_t>(c * static_cast<double>(1u << comp[j]));
                idx = (idx << comp[j]) | cell;
            }
            if (++cells[idx] > want) ok = false;
        }
        if (!ok) return false;
        for (std::uint32_t c : cells)
            if (c != want) return false;

        // Next composition (colex order).
        int j = 0;
        while (j < d - 1 && comp[j] == 0) ++j;
        if (j == d - 1) break;
        const int v = comp[j];
        comp[j] = 0;
        comp[0] = v - 1;
        comp[j + 1] += 1;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Baselines.

inline double radical_inverse(std::uint64_t i, std::uint64_t base) {
    double inv = 1.0 / static_cast<double>(base);
    double f = inv;
    double x = 0.0;
    while (i) {
        x += static_cast<double>(i % base) * f;
        i /= base;
        f *= inv;
    }
    return x;
}

inline std::vector<std::uint64_t> first_primes(int d) {
    std::vector<std::uint64_t> primes;
    std::uint64_t c = 2;
    while (static_cast<int>(primes.size()) < d) {
        bool is_prime = true;
        for (std::uint64_t p : primes) {
            if (p * p > c) break;
            if (c % p == 0) { is_prime = false; break; }
        }
        if (is_prime) primes.push_back(c);
        ++c;
    }
    return primes;
}

inline PointSet halton_set(std::size_t m, int d) {
    if (d < 1) throw invalid_parameter("halton_set: d >= 1 required");
    const auto primes = first_primes(d);
    PointSet ps(d, "halton(m=" + std::to_string(m) + ",d=" + std::to_string(d) + ")");
    std::vector<double> p(d);
    for (std::size_t i = 1; i <= m; ++i) {
        for (int j = 0; j < d; ++j) p[j] = radical_inverse(i, primes[j]);
        ps.push_back(p);
    }
    return ps;
}

// k^d points at cell centers (2i+1)/(2k); last axis varies fastest.
inline PointSet regular_grid(int k, int d) {
    if (k < 1 || d < 1) throw invalid_parameter("regular_grid: k,d >= 1 required");
    PointSet ps(d, "grid(k=" + std::to_string(k) + ",d=" + std::to_string(d) + ")");
    std::vector<int> idx(d, 0);
    std::vector<double> p(d);
    while (true) {
        for (int j = 0; j < d; ++j)
            p[j] = (2.0 * idx[j] + 1.0) / (2.0 * k);
        ps.push_back(p);
        int j = d - 1;
        while (j >= 0 && ++idx[j] == k) idx[j--] = 0;
        if (j < 0) break;
    }
    return ps;
}

inline PointSet random_uniform(std::size_t m, int d, std::uint64_t seed) {
    if (d < 1) throw invalid_parameter("random_uniform: d >= 1 required");
    Rng rng(seed);
    PointSet ps(d, "random(m=" + std::to_string(m) + ",d=" + std::to_string(d) +
                       ",seed=" + std::to_string(seed) + ")");
    std::vector<double> p(d);
    for (std::size_t i = 0; i < m; ++i) {
        for (int j = 0; j < d; ++j) p[j] = uniform01(rng);
        ps.push_back(p);
    }
    return ps;
}

}  // namespace qmc

#endif  // QMC_POINTGEN_HPP
