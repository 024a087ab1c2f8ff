#ifndef QMC_EXPERIMENTS_HPP
#define QMC_EXPERIMENTS_HPP

#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qmc/common.hpp"
#include "qmc/cubature.hpp"
#include "qmc/dispersion.hpp"
#include "qmc/frolov.hpp"
#include "qmc/pointgen.hpp"

namespace qmc {

// ---------------------------------------------------------------------------
// Family builders: `size` means n for fibonacci, a for frolov, r for corput,
// k per axis for grid, and m for random.

inline PointSet make_family_set(const std::string& family, long size, int d,
                                std::uint64_t seed) {
    if (family == "fibonacci") return fibonacci_set(static_cast<int>(size));
    if (family == "frolov")
        return frolov_points(frolov_basis_cached(d), static_cast<double>(size));
    if (family == "corput") return corput_net(static_cast<int>(size));
    if (family == "grid") return regular_grid(static_cast<int>(size), d);
    if (family == "random") return random_uniform(static_cast<std::size_t>(size), d, seed);
    throw invalid_parameter("unknown point family: " + family);
}

inline CubatureRule make_family_rule(const std::string& family, long size, int d,
                                     std::uint64_t seed) {
    if (family == "frolov_periodic")
        return frolov_periodic_rule(frolov_basis_cached(d), static_cast<double>(size));
    if (family == "frolov") return frolov_rule(frolov_basis_cached(d), static_cast<double>(size));
    return equal_weight_rule(make_family_set(family, size, d, seed));
}

// ---------------------------------------------------------------------------
// Rate tables.

struct RateRow {
    long size = 0;          // family parameter
    double cardinality = 0; // points actually used
    double value = 0;       // metric (geometric mean over seeds where seeded)
};

struct RateResult {
    std::string family;
    std::vector<RateRow> rows;
    LineFit fit;  // log(value) against log(cardinality)
};

// Worst-case integration error against cardinality.
inline RateResult integration_rate_experiment(const std::string& family, double r,
                                              std::span<const long> sizes, int d = 2,
                                              std::span<const std::uint64_t> seeds = {},
                                              const WceOptions& wopts = {}) {
    RateResult out;
    out.family = family;
    std::vector<std::uint64_t> seedv(seeds.begin(), seeds.end());
    if (seedv.empty()) seedv.push_back(1);
    for (long size : sizes) {
        double log_sum = 0.0;
        double card = 0.0;
        for (std::uint64_t seed : seedv) {
            const CubatureRule rule = make_family_rule(family, size, d, seed);
            const WceResult w = worst_case_error_w2r(rule, r, wopts);
            log_sum += std::log(w.value);
            card = static_cast<double>(rule.size());
        }
        out.rows.push_back({size, card, std::exp(log_sum / seedv.size())});
    }
    std::vector<double> xs, ys;
    for (const auto& row : out.rows) {
        xs.push_back(row.cardinality);
        ys.push_back(row.value);
    }
    out.fit = fit_loglog(xs, ys);
    return out;
}

struct DispersionRateRow {
    long size = 0;
    double cardinality = 0;
    double disp = 0;
    double product = 0;  // disp * cardinality
};

struct DispersionRateResult {
    std::string family;
    std::vector<DispersionRateRow> rows;
    LineFit fit;
};

inline DispersionRateResult dispersion_rate_check(const std::string& family,
                                                  std::span<const long> sizes, int d = 2,
                                                  std::uint64_t seed = 1) {
    DispersionRateResult out;
    out.family = family;
    for (long size : sizes) {
        const PointSet ps = make_family_set(family, size, d, seed);
        const DispersionResult r = ps.dim() == 2 ? dispersion_2d(ps) : dispersion_nd(ps);
        const double card = static_cast<double>(ps.size());
        out.rows.push_back({size, card, r.value, r.value * card});
    }
    std::vector<double> xs, ys;
    for (const auto& row : out.rows) {
        xs.push_back(row.cardinality);
        ys.push_back(row.disp);
    }
    out.fit = fit_loglog(xs, ys);
    return out;
}

// ---------------------------------------------------------------------------
// Experiment configs: plain `key = value` lines, '#' comments.  Lists are
// comma-separated.

struct ExperimentConfig {
    std::string kind;  // rate | dispersion | universality | greedy
    std::string family;
    int d = 2;
    double r = 1.0;
    std::vector<long> sizes;
    std::vector<std::uint64_t> seeds;
    double tol = 1e-4;
    int trials = 100;
    double beta = 1.0;
    double p = 2.0;
    int steps = 64;
    std::vector<int> cscan;
    std::string output;  // JSON-lines report path
    std::string csv;     // CSV summary path
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

template <typename T>
inline std::vector<T> parse_list(const std::string& s) {
    std::vector<T> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        if constexpr (std::is_floating_point_v<T>)
            out.push_back(static_cast<T>(std::stod(tok)));
        else
            out.push_back(static_cast<T>(std::stoll(tok)));
    }
    return out;
}

}  // namespace detail

inline ExperimentConfig parse_experiment_config(std::istream& is) {
    ExperimentConfig cfg;
    std::string line;
    bool saw_kind = false;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw invalid_parameter("config line " + std::to_string(lineno) +
                                    ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        if (key == "experiment") { cfg.kind = val; saw_kind = true; }
        else if (key == "family") cfg.family = val;
        else if (key == "d") cfg.d = std::stoi(val);
        else if (key == "r") cfg.r = std::stod(val);
        else if (key == "sizes") cfg.sizes = detail::parse_list<long>(val);
        else if (key == "seeds") cfg.seeds = detail::parse_list<std::uint64_t>(val);
        else if (key == "tol") cfg.tol = std::stod(val);
        else if (key == "trials") cfg.trials = std::stoi(val);
        else if (key == "beta") cfg.beta = std::stod(val);
        else if (key == "p") cfg.p = std::stod(val);
        else if (key == "steps") cfg.steps = std::stoi(val);
        else if (key == "cscan") cfg.cscan = detail::parse_list<int>(val);
        else if (key == "output") cfg.output = val;
        else if (key == "csv") cfg.csv = val;
        else
            throw invalid_parameter("config line " + std::to_string(lineno) +
                                    ": unknown key '" + key + "'");
    }
    if (!saw_kind) throw invalid_parameter("config: missing 'experiment' key");
    if (cfg.kind != "rate" && cfg.kind != "dispersion" && cfg.kind != "universality" &&
        cfg.kind != "greedy")
        throw invalid_parameter("config: unknown experiment kind '" + cfg.kind + "'");
    return cfg;
}

}  // namespace qmc

#endif  // QMC_EXPERIMENTS_HPP
