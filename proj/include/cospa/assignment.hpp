#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace cospa {

/// Rectangular cost matrix with rows <= cols, finite nonnegative entries.
/// Rows index the smaller set.
class CostMatrix {
public:
    CostMatrix() = default;

    explicit CostMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
        if (entries_.rows() > entries_.cols()) {
            throw std::invalid_argument("cost matrix must have rows <= cols (orient the smaller set as rows)");
        }
        for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
            for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
                const double v = entries_(i, j);
                if (!std::isfinite(v) || v < 0.0) {
                    throw std::invalid_argument("cost matrix entries must be finite and >= 0");
                }
            }
        }
    }

    CostMatrix(std::initializer_list<std::initializer_list<double>> rows)
        : CostMatrix(from_rows(rows)) {}

    [[nodiscard]] std::size_t rows() const { return static_cast<std::size_t>(entries_.rows()); }
    [[nodiscard]] std::size_t cols() const { return static_cast<std::size_t>(entries_.cols()); }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
        return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    [[nodiscard]] const Eigen::MatrixXd& entries() const { return entries_; }

private:
    static Eigen::MatrixXd from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        const auto m = static_cast<Eigen::Index>(rows.size());
        const auto n = m == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.begin()->size());
        Eigen::MatrixXd out(m, n);
        Eigen::Index i = 0;
        for (const auto& row : rows) {
            if (static_cast<Eigen::Index>(row.size()) != n) throw std::invalid_argument("ragged cost matrix");
            Eigen::Index j = 0;
            for (double v : row) out(i, j++) = v;
            ++i;
        }
        return out;
    }

    Eigen::MatrixXd entries_;
};

/// Injective row -> column map and the sum of the entries it selects.
struct Assignment {
    std::vector<std::size_t> mapping;
    double cost = 0.0;
};

namespace detail {

/// Largest total any mapping can reach; ties are judged relative to it.
inline double tie_tolerance(const CostMatrix& costs) {
    if (costs.rows() == 0) return 0.0;
    return 1e-12 * static_cast<double>(costs.rows()) * costs.entries().maxCoeff();
}

inline double mapping_cost(const CostMatrix& costs, const std::vector<std::size_t>& mapping) {
    double total = 0.0;
    for (std::size_t i = 0; i < mapping.size(); ++i) total += costs(i, mapping[i]);
    return total;
}

struct SubResult {
    std::vector<std::size_t> mapping;  // indexes into the supplied column list
    double cost = 0.0;
};

/// Shortest augmenting path with row/column potentials (the Jonker-Volgenant
/// augmentation). Solves the subproblem restricted to row_ids x col_ids;
/// requires row_ids.size() <= col_ids.size(). O(m^2 n).
inline SubResult shortest_augmenting_path(const CostMatrix& costs, const std::vector<std::size_t>& row_ids,
                                          const std::vector<std::size_t>& col_ids) {
    const std::size_t m = row_ids.size();
    const std::size_t n = col_ids.size();
    SubResult out;
    if (m == 0) return out;

    constexpr double inf = std::numeric_limits<double>::infinity();
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    // Column slot n is the virtual source of each augmentation.
    std::vector<double> row_pot(m, 0.0);
    std::vector<double> col_pot(n + 1, 0.0);
    std::vector<std::size_t> col_owner(n + 1, none);
    std::vector<std::size_t> came_from(n + 1, none);
    std::vector<double> dist(n + 1);
    std::vector<char> done(n + 1);

    for (std::size_t start = 0; start < m; ++start) {
        std::size_t cur_col = n;
        col_owner[n] = start;
        std::fill(dist.begin(), dist.end(), inf);
        std::fill(done.begin(), done.end(), 0);
        do {
            done[cur_col] = 1;
            const std::size_t row = col_owner[cur_col];
            double delta = inf;
            std::size_t next_col = none;
            for (std::size_t j = 0; j < n; ++j) {
                if (done[j]) continue;
                const double reduced = costs(row_ids[row], col_ids[j]) - row_pot[row] - col_pot[j];
                if (reduced < dist[j]) {
                    dist[j] = reduced;
                    came_from[j] = cur_col;
                }
                if (dist[j] < delta) {
                    delta = dist[j];
                    next_col = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (done[j]) {
                    row_pot[col_owner[j]] += delta;
                    col_pot[j] -= delta;
                } else {
                    dist[j] -= delta;
                }
            }
            cur_col = next_col;
        } while (col_owner[cur_col] != none);

        // Flip the alternating path back to the source.
        while (cur_col != n) {
            const std::size_t prev = came_from[cur_col];
            col_owner[cur_col] = col_owner[prev];
            cur_col = prev;
        }
    }

    out.mapping.assign(m, none);
    for (std::size_t j = 0; j < n; ++j) {
        if (col_owner[j] != none) out.mapping[col_owner[j]] = j;
    }
    for (std::size_t i = 0; i < m; ++i) out.cost += costs(row_ids[i], col_ids[out.mapping[i]]);
    return out;
}

}  // namespace detail

/// Minimum-cost injective mapping of rows into columns.
///
/// Among optimal mappings (costs within 1e-12 of the largest attainable
/// total) the lexicographically smallest mapping vector is returned, so the
/// result is a function of the matrix alone.
inline Assignment solve_assignment(const CostMatrix& costs) {
    const std::size_t m = costs.rows();
    const std::size_t n = costs.cols();
    if (m == 0) throw std::invalid_argument("cannot assign an empty cost matrix");
    if (m > n) throw std::invalid_argument("cost matrix must have rows <= cols");

    std::vector<std::size_t> all_rows(m);
    std::vector<std::size_t> all_cols(n);
    std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
    std::iota(all_cols.begin(), all_cols.end(), std::size_t{0});
    const auto best = detail::shortest_augmenting_path(costs, all_rows, all_cols);
    const double optimum = best.cost;
    const double tol = detail::tie_tolerance(costs);

    // Lexicographic repair: walk the rows in order and try every smaller free
    // column; keep it if the rest of the rows can still complete an optimum.
    std::vector<std::size_t> mapping = best.mapping;
    std::vector<char> taken(n, 0);
    double prefix = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < mapping[i]; ++j) {
            if (taken[j]) continue;
            std::vector<std::size_t> rest_rows(all_rows.begin() + static_cast<std::ptrdiff_t>(i) + 1, all_rows.end());
            std::vector<std::size_t> rest_cols;
            rest_cols.reserve(n);
            for (std::size_t k = 0; k < n; ++k) {
                if (!taken[k] && k != j) rest_cols.push_back(k);
            }
            const auto rest = detail::shortest_augmenting_path(costs, rest_rows, rest_cols);
            if (prefix + costs(i, j) + rest.cost <= optimum + tol) {
                mapping[i] = j;
                for (std::size_t r = 0; r < rest_rows.size(); ++r) mapping[i + 1 + r] = rest_cols[rest.mapping[r]];
                break;
            }
        }
        taken[mapping[i]] = 1;
        prefix += costs(i, mapping[i]);
    }
    return {mapping, detail::mapping_cost(costs, mapping)};
}

/// Exhaustive oracle: enumerates every injective mapping in lexicographic
/// order. Only for n <= 9.
inline Assignment brute_force_assignment(const CostMatrix& costs) {
    const std::size_t m = costs.rows();
    const std::size_t n = costs.cols();
    if (m > n) throw std::invalid_argument("cost matrix must have rows <= cols");
    if (n > 9) throw std::invalid_argument("brute force limited to n <= 9, got " + std::to_string(n));
    if (m == 0) throw std::invalid_argument("cannot assign an empty cost matrix");

    const double tol = detail::tie_tolerance(costs);
    std::vector<std::size_t> current(m);
    std::vector<char> used(n, 0);
    Assignment best;
    best.cost = std::numeric_limits<double>::infinity();

    auto recurse = [&](auto&& self, std::size_t row) -> void {
        if (row == m) {
            const double total = detail::mapping_cost(costs, current);
            if (best.mapping.empty() || total < best.cost - tol) best = {current, total};
            return;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            used[j] = 1;
            current[row] = j;
            self(self, row + 1);
            used[j] = 0;
        }
    };
    recurse(recurse, 0);
    return best;
}

}  // namespace cospa
