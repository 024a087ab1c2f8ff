#ifndef QMC_SIMPLEX_HPP
#define QMC_SIMPLEX_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "qmc/common.hpp"

namespace qmc {

// Dense two-phase primal simplex with Bland's rule.  Desk-scale only: the
// tableaus here stay in the low thousands of columns.

struct LpResult {
    std::vector<double> x;
    double value = 0.0;
    bool feasible = false;
};

namespace detail {

class SimplexTableau {
  public:
    // minimize c.x  s.t.  A x <= b,  x >= 0
    SimplexTableau(const std::vector<double>& c,
                   const std::vector<std::vector<double>>& A,
                   const std::vector<double>& b)
        : rows_(A.size()), n_(c.size()) {
        // slack per row; artificial for rows whose rhs had to be negated
        art_rows_.clear();
        for (std::size_t i = 0; i < rows_; ++i)
            if (b[i] < 0.0) art_rows_.push_back(i);
        cols_ = n_ + rows_ + art_rows_.size();
        t_.assign(rows_ + 1, std::vector<double>(cols_ + 1, 0.0));
        basis_.assign(rows_, 0);

        for (std::size_t i = 0; i < rows_; ++i) {
            const double sign = b[i] < 0.0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < n_; ++j) t_[i][j] = sign * A[i][j];
            t_[i][n_ + i] = sign;           // slack
            t_[i][cols_] = sign * b[i];     // rhs now nonnegative
        }
        std::size_t k = 0;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (k < art_rows_.size() && art_rows_[k] == i) {
                t_[i][n_ + rows_ + k] = 1.0;
                basis_[i] = n_ + rows_ + k;
                ++k;
            } else {
                basis_[i] = n_ + i;
            }
        }
        cost_ = c;
    }

    LpResult solve() {
        LpResult res;
        if (!art_rows_.empty()) {
            // phase 1: minimize the sum of artificials
            auto& obj = t_[rows_];
            std::fill(obj.begin(), obj.end(), 0.0);
            for (std::size_t k = 0; k < art_rows_.size(); ++k) obj[n_ + rows_ + k] = 1.0;
            price_out();
            pivot_loop(n_ + rows_ + art_rows_.size());
            if (objective_value() > 1e-7) return res;  // infeasible
            drive_out_artificials();
        }
        // phase 2: artificials frozen out by restricting the column range
        auto& obj = t_[rows_];
        std::fill(obj.begin(), obj.end(), 0.0);
        for (std::size_t j = 0; j < n_; ++j) obj[j] = cost_[j];
        price_out();
        pivot_loop(n_ + rows_);

        res.feasible = true;
        res.x.assign(n_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] < n_) res.x[basis_[i]] = t_[i][cols_];
        res.value = 0.0;
        for (std::size_t j = 0; j < n_; ++j) res.value += cost_[j] * res.x[j];
        return res;
    }

  private:
    double objective_value() const {
        return -t_[rows_][cols_];
    }

    // express the objective row in terms of the current nonbasic variables
    void price_out() {
        auto& obj = t_[rows_];
        for (std::size_t i = 0; i < rows_; ++i) {
            const double c = obj[basis_[i]];
            if (c == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) obj[j] -= c * t_[i][j];
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        const double piv = t_[row][col];
        for (std::size_t j = 0; j <= cols_; ++j) t_[row][j] /= piv;
        for (std::size_t i = 0; i <= rows_; ++i) {
            if (i == row) continue;
            const double f = t_[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) t_[i][j] -= f * t_[row][j];
        }
        basis_[row] = col;
    }

    // Entering column: most negative reduced cost, falling back to Bland's
    // lowest-index rule after a long stall to rule out cycling.  Columns
    // whose positive entries are all below the pivot floor are numerically
    // unusable (pivoting on them shreds the tableau) and are skipped; a
    // strongly negative column with no positive entry at all is a genuine
    // certificate of unboundedness.
    void pivot_loop(std::size_t active_cols) {
        const auto& obj = t_[rows_];
        constexpr double pivot_floor = 1e-9;
        for (long guard = 0; guard < 200000; ++guard) {
            const bool bland = guard > 5000;
            std::size_t enter = active_cols;
            double best_cost = -1e-11;
            for (std::size_t j = 0; j < active_cols; ++j) {
                if (!(obj[j] < best_cost)) continue;
                double colmax = 0.0;
                for (std::size_t i = 0; i < rows_; ++i)
                    colmax = std::max(colmax, t_[i][j]);
                if (colmax <= pivot_floor) {
                    if (colmax <= 0.0 && obj[j] < -1e-7)
                        throw numeric_failure("simplex: unbounded objective");
                    continue;  // unusable at working precision
                }
                enter = j;
                if (bland) break;
                best_cost = obj[j];
            }
            if (enter == active_cols) return;  // optimal (within tolerance)

            std::size_t leave = rows_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < rows_; ++i) {
                if (t_[i][enter] > pivot_floor) {
                    const double ratio = t_[i][cols_] / t_[i][enter];
                    const bool tie = ratio < best + 1e-12 && ratio > best - 1e-12;
                    const bool better_tie =
                        tie && leave != rows_ &&
                        (bland ? basis_[i] < basis_[leave]
                               : t_[i][enter] > t_[leave][enter]);
                    if (ratio < best - 1e-12 || leave == rows_ || better_tie) {
                        if (ratio < best) best = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == rows_)
                throw numeric_failure("simplex: unbounded objective");
            pivot(leave, enter);
        }
        throw numeric_failure("simplex: pivot limit exceeded");
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] < n_ + rows_) continue;
            std::size_t col = n_ + rows_;
            for (std::size_t j = 0; j < n_ + rows_; ++j)
                if (std::abs(t_[i][j]) > 1e-9) { col = j; break; }
            if (col < n_ + rows_) pivot(i, col);
            // else: the row is redundant and harmless with rhs 0
        }
    }

    std::size_t rows_, n_, cols_ = 0;
    std::vector<std::vector<double>> t_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> art_rows_;
    std::vector<double> cost_;
};

}  // namespace detail

// minimize c.x subject to A x <= b and x >= 0.
inline LpResult lp_solve(const std::vector<double>& c,
                         const std::vector<std::vector<double>>& A,
                         const std::vector<double>& b) {
    if (A.size() != b.size()) throw invalid_parameter("lp_solve: row mismatch");
    for (const auto& row : A)
        if (row.size() != c.size()) throw invalid_parameter("lp_solve: column mismatch");
    detail::SimplexTableau tab(c, A, b);
    return tab.solve();
}

struct ChebyshevFit {
    std::vector<double> coeffs;
    double value = 0.0;  // minimax residual
};

// minimize over free coefficients the worst absolute residual
// max_i | e_i - (H coeffs)_i |.
inline ChebyshevFit chebyshev_minimax(const std::vector<std::vector<double>>& H,
                                      const std::vector<double>& e) {
    const std::size_t rows = H.size();
    if (rows == 0 || rows != e.size())
        throw invalid_parameter("chebyshev_minimax: bad system");
    const std::size_t m = H[0].size();
    // variables: lambda+ (m), lambda- (m), t
    const std::size_t n = 2 * m + 1;
    std::vector<double> c(n, 0.0);
    c[n - 1] = 1.0;
    std::vector<std::vector<double>> A(2 * rows, std::vector<double>(n, 0.0));
    std::vector<double> b(2 * rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            A[2 * i][j] = H[i][j];
            A[2 * i][m + j] = -H[i][j];
            A[2 * i + 1][j] = -H[i][j];
            A[2 * i + 1][m + j] = H[i][j];
        }
        A[2 * i][n - 1] = -1.0;
        A[2 * i + 1][n - 1] = -1.0;
        b[2 * i] = e[i];
        b[2 * i + 1] = -e[i];
    }
    const LpResult lp = lp_solve(c, A, b);
    if (!lp.feasible) throw numeric_failure("chebyshev_minimax: LP infeasible");
    ChebyshevFit fit;
    fit.coeffs.resize(m);
    for (std::size_t j = 0; j < m; ++j) fit.coeffs[j] = lp.x[j] - lp.x[m + j];
    // recompute the attained residual from the coefficients; the t variable
    // can sit a hair above it at near-degenerate vertices
    fit.value = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        double dot = 0.0;
        for (std::size_t j = 0; j < m; ++j) dot += H[i][j] * fit.coeffs[j];
        fit.value = std::max(fit.value, std::abs(e[i] - dot));
    }
    return fit;
}

}  // namespace qmc

#endif  // QMC_SIMPLEX_HPP
