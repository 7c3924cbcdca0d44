#pragma once

#include "cospa/assignment.hpp"
#include "cospa/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cospa {

enum class Metric { ospa, gospa, cospa };

inline constexpr std::array<Metric, 3> kAllMetrics{Metric::ospa, Metric::gospa, Metric::cospa};

inline std::string_view to_string(Metric m) {
    switch (m) {
        case Metric::ospa: return "ospa";
        case Metric::gospa: return "gospa";
        case Metric::cospa: return "cospa";
    }
    return "?";
}

inline Metric parse_metric(std::string_view name) {
    for (Metric m : kAllMetrics) {
        if (to_string(m) == name) return m;
    }
    throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

class UnsupportedOrderError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Distance plus its split into localization, outline (pairs assigned at or
/// beyond the cut-off) and cardinality parts. For finite p,
/// total^p = localization^p + outline^p + cardinality^p; for p = inf the
/// total is the largest of the three. OSPA folds outline into localization.
struct MetricResult {
    double total = 0.0;
    double localization = 0.0;
    double outline = 0.0;
    double cardinality = 0.0;
    std::optional<Assignment> assignment;  // absent only when both sets are empty
};

using IndexPair = std::pair<std::size_t, std::size_t>;

/// Target-level reading of the optimal assignment. Pairs are (index in the
/// smaller set, index in the larger set); smaller_is_first tells which
/// argument was the smaller one (ties: the first argument).
struct AssociationReport {
    std::vector<IndexPair> correct_pairs;
    std::vector<IndexPair> outline_pairs;
    std::vector<std::size_t> missing;        // indices into the first (truth) argument
    std::vector<std::size_t> false_targets;  // indices into the second (estimate) argument
    bool smaller_is_first = true;

    /// (truth index, estimate index) for a stored pair.
    [[nodiscard]] IndexPair truth_estimate(const IndexPair& pair) const {
        return smaller_is_first ? pair : IndexPair{pair.second, pair.first};
    }
};

namespace detail {

// Order-independent summation: both argument orders of a metric see the same
// multiset of terms, so sorting first makes symmetry exact.
inline double ordered_sum(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end());
    double total = 0.0;
    for (double t : terms) total += t;
    return total;
}

/// Everything the three metrics need from one pair of sets: orientation,
/// the optimal mapping and the raw distance of every assigned pair.
struct Matching {
    std::size_t small = 0;  // min(|X|, |Y|)
    std::size_t large = 0;  // max(|X|, |Y|)
    bool smaller_is_first = true;
    std::optional<Assignment> assignment;
    std::vector<double> pair_distance;  // raw base distance per row of the mapping
    double cost = 0.0;                  // sum of cut-off distances ^ p over the mapping
};

inline void check_dims(const PointSet& x, const PointSet& y) {
    if (!x.empty() && !y.empty() && x.dim() != y.dim()) {
        throw DimensionError("cannot compare sets of dimension " + std::to_string(x.dim()) + " and " +
                             std::to_string(y.dim()));
    }
}

inline Eigen::MatrixXd distance_matrix(const PointSet& rows, const PointSet& cols, double norm) {
    Eigen::MatrixXd d(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = base_distance(rows[i], cols[j], norm);
        }
    }
    return d;
}

/// min over injective maps of max cut-off distance, with the lexicographically
/// smallest mapping attaining it.
inline Assignment bottleneck_assignment(const Eigen::MatrixXd& cut) {
    std::vector<double> levels(cut.data(), cut.data() + cut.size());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    auto indicator = [&](double level) {
        return CostMatrix((cut.array() > level).cast<double>().matrix());
    };
    std::size_t lo = 0;
    std::size_t hi = levels.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (solve_assignment(indicator(levels[mid])).cost == 0.0) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    auto a = solve_assignment(indicator(levels[lo]));
    a.cost = 0.0;
    for (std::size_t i = 0; i < a.mapping.size(); ++i) {
        a.cost += cut(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a.mapping[i]));
    }
    return a;
}

inline Matching match_sets(const PointSet& x, const PointSet& y, const MetricParams& params) {
    check_dims(x, y);
    Matching out;
    out.smaller_is_first = x.size() <= y.size();
    const PointSet& rows = out.smaller_is_first ? x : y;
    const PointSet& cols = out.smaller_is_first ? y : x;
    out.small = rows.size();
    out.large = cols.size();
    if (out.large == 0) return out;
    if (out.small == 0) {
        out.assignment = Assignment{};
        return out;
    }

    const Eigen::MatrixXd raw = distance_matrix(rows, cols, params.base_norm());
    const Eigen::MatrixXd cut = raw.array().min(params.c()).matrix();
    Assignment a;
    if (params.infinite_order()) {
        a = bottleneck_assignment(cut);
    } else {
        const double p = params.p();
        a = solve_assignment(CostMatrix(cut.unaryExpr([p](double v) { return pow_order(v, p); })));
    }
    std::vector<double> terms;
    terms.reserve(out.small);
    for (std::size_t i = 0; i < out.small; ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        const auto col = static_cast<Eigen::Index>(a.mapping[i]);
        out.pair_distance.push_back(raw(r, col));
        if (!params.infinite_order()) terms.push_back(pow_order(cut(r, col), params.p()));
    }
    out.cost = ordered_sum(std::move(terms));
    out.assignment = std::move(a);
    return out;
}

// Raw distance at or beyond c is an outline pair; never compare the clamped value.
inline bool is_outline(double raw_distance, double c) { return raw_distance >= c; }

struct PairSplit {
    double close_sum = 0.0;  // sum of d^p over pairs closer than c
    std::size_t outline = 0;
    double close_max = 0.0;
};

inline PairSplit split_pairs(const Matching& mt, const MetricParams& params) {
    PairSplit s;
    std::vector<double> close;
    for (double d : mt.pair_distance) {
        if (is_outline(d, params.c())) {
            ++s.outline;
        } else {
            s.close_max = std::max(s.close_max, d);
            if (!params.infinite_order()) close.push_back(pow_order(d, params.p()));
        }
    }
    s.close_sum = ordered_sum(std::move(close));
    return s;
}

inline double max_cut_distance(const Matching& mt, double c) {
    double out = 0.0;
    for (double d : mt.pair_distance) out = std::max(out, std::min(c, d));
    return out;
}

inline MetricResult ospa_from(const Matching& mt, const MetricParams& params) {
    MetricResult r;
    r.assignment = mt.assignment;
    if (mt.large == 0) return r;
    const double c = params.c();
    if (params.infinite_order()) {
        r.localization = max_cut_distance(mt, c);
        r.cardinality = mt.small == mt.large ? 0.0 : c;
        r.total = mt.small == mt.large ? r.localization : c;
        return r;
    }
    const double p = params.p();
    const auto n = static_cast<double>(mt.large);
    const auto gap = static_cast<double>(mt.large - mt.small);
    r.total = root_order((mt.cost + pow_order(c, p) * gap) / n, p);
    r.localization = root_order(mt.cost / n, p);
    r.cardinality = c * root_order(gap / n, p);
    return r;
}

inline MetricResult gospa_from(const Matching& mt, const MetricParams& params) {
    if (params.infinite_order()) throw UnsupportedOrderError("GOSPA is not defined for p = inf");
    MetricResult r;
    r.assignment = mt.assignment;
    if (mt.large == 0) return r;
    const double p = params.p();
    const double cp = pow_order(params.c(), p);
    const auto gap = static_cast<double>(mt.large - mt.small);
    const PairSplit s = split_pairs(mt, params);
    r.total = root_order(mt.cost + cp / params.alpha() * gap, p);
    r.localization = root_order(s.close_sum, p);
    r.outline = root_order(static_cast<double>(s.outline) * cp, p);
    r.cardinality = root_order(cp / params.alpha() * gap, p);
    return r;
}

inline MetricResult cospa_from(const Matching& mt, const MetricParams& params) {
    MetricResult r;
    r.assignment = mt.assignment;
    if (mt.large == 0) return r;
    const double c = params.c();
    const double c_dot = params.c_dot();
    const PairSplit s = split_pairs(mt, params);
    if (params.infinite_order()) {
        r.localization = s.close_max;
        r.outline = s.outline > 0 ? c : 0.0;
        r.cardinality = mt.small == mt.large ? 0.0 : c_dot;
        r.total = mt.small == mt.large ? max_cut_distance(mt, c) : c_dot;
        return r;
    }
    const double p = params.p();
    const auto n = static_cast<double>(mt.large);
    const auto gap = static_cast<double>(mt.large - mt.small);
    const double one_empty = mt.small == 0 ? 1.0 : 0.0;
    const double empty_term = params.xi() * one_empty * pow_order(c_dot, p) * (n - 1.0) / n;
    r.total = root_order((mt.cost + pow_order(c_dot, p) * gap) / n + empty_term, p);
    r.localization = root_order(s.close_sum / n, p);
    r.outline = c * root_order(static_cast<double>(s.outline) / n, p);
    r.cardinality = c_dot * root_order(gap / n + params.xi() * one_empty * (n - 1.0) / n, p);
    return r;
}

inline AssociationReport associations_from(const Matching& mt, const MetricParams& params) {
    AssociationReport rep;
    rep.smaller_is_first = mt.smaller_is_first;
    if (mt.large == 0) return rep;
    std::vector<char> large_paired(mt.large, 0);
    auto add_missing_false = [&](std::size_t small_idx, std::size_t large_idx) {
        const auto [truth, est] = rep.truth_estimate({small_idx, large_idx});
        rep.missing.push_back(truth);
        rep.false_targets.push_back(est);
    };
    for (std::size_t i = 0; i < mt.small; ++i) {
        const std::size_t j = mt.assignment->mapping[i];
        large_paired[j] = 1;
        if (is_outline(mt.pair_distance[i], params.c())) {
            rep.outline_pairs.emplace_back(i, j);
            add_missing_false(i, j);
        } else {
            rep.correct_pairs.emplace_back(i, j);
        }
    }
    for (std::size_t j = 0; j < mt.large; ++j) {
        if (large_paired[j]) continue;
        // An unmatched member of the larger set is a false target when the
        // estimate is larger, a missing target when the truth is.
        if (mt.smaller_is_first) {
            rep.false_targets.push_back(j);
        } else {
            rep.missing.push_back(j);
        }
    }
    std::sort(rep.missing.begin(), rep.missing.end());
    std::sort(rep.false_targets.begin(), rep.false_targets.end());
    return rep;
}

}  // namespace detail

/// Normalized per-target distance with cut-off c; the cardinality gap is
/// charged at c per missing point. Symmetric; bounded by c.
inline MetricResult ospa(const PointSet& x, const PointSet& y, const MetricParams& params) {
    return detail::ospa_from(detail::match_sets(x, y, params), params);
}

/// Unnormalized variant; each unassigned point costs c^p / alpha. Finite p only.
inline MetricResult gospa(const PointSet& x, const PointSet& y, const MetricParams& params) {
    if (params.infinite_order()) throw UnsupportedOrderError("GOSPA is not defined for p = inf");
    return detail::gospa_from(detail::match_sets(x, y, params), params);
}

/// GOSPA at alpha = 2 computed in its assignment-split form: every close
/// pair (d < c) contributes d^p and removes two half-penalties from
/// (c^p / 2)(|X| + |Y|). Independent of gospa()'s cost bookkeeping.
inline MetricResult gospa_alt_alpha2(const PointSet& x, const PointSet& y, const MetricParams& params) {
    if (params.alpha() != 2.0) throw std::invalid_argument("the split form only holds for alpha = 2");
    if (params.infinite_order()) throw UnsupportedOrderError("GOSPA is not defined for p = inf");
    detail::check_dims(x, y);
    MetricResult r;
    const bool x_small = x.size() <= y.size();
    const PointSet& rows = x_small ? x : y;
    const PointSet& cols = x_small ? y : x;
    if (cols.empty()) return r;
    const double p = params.p();
    const double c = params.c();
    const double cp = detail::pow_order(c, p);
    const double half = cp / 2.0;
    const auto total_points = static_cast<double>(x.size() + y.size());
    if (rows.empty()) {
        r.assignment = Assignment{};
        r.total = detail::root_order(half * total_points, p);
        r.cardinality = r.total;
        return r;
    }

    // Per-pair objective: d^p - c^p when close, 0 otherwise. Shifted by c^p
    // so the solver sees nonnegative entries; the shift is the same for every
    // mapping and does not move the argmin.
    const Eigen::MatrixXd raw = detail::distance_matrix(rows, cols, params.base_norm());
    Eigen::MatrixXd shifted(raw.rows(), raw.cols());
    for (Eigen::Index i = 0; i < raw.rows(); ++i) {
        for (Eigen::Index j = 0; j < raw.cols(); ++j) {
            const bool close = !detail::is_outline(raw(i, j), c);
            shifted(i, j) = close ? detail::pow_order(raw(i, j), p) : cp;
        }
    }
    Assignment a = solve_assignment(CostMatrix(shifted));
    std::vector<double> close_terms;
    std::size_t close_pairs = 0;
    for (std::size_t i = 0; i < a.mapping.size(); ++i) {
        const double d = raw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a.mapping[i]));
        if (!detail::is_outline(d, c)) {
            ++close_pairs;
            close_terms.push_back(detail::pow_order(d, p));
        }
    }
    const double close_sum = detail::ordered_sum(std::move(close_terms));
    const double unmatched = total_points - 2.0 * static_cast<double>(close_pairs);
    r.total = detail::root_order(close_sum + half * unmatched, p);
    r.localization = detail::root_order(close_sum, p);
    const auto outline_pairs = static_cast<double>(rows.size() - close_pairs);
    r.outline = detail::root_order(outline_pairs * cp, p);
    r.cardinality = detail::root_order(half * static_cast<double>(cols.size() - rows.size()), p);
    r.assignment = std::move(a);
    return r;
}

/// Complete OSPA: cut-off c for assigned pairs, penalty c_dot >= c per
/// unassigned point, and an extra xi-weighted penalty when exactly one set is
/// empty. Bounded by c_dot (1 + xi)^(1/p).
inline MetricResult cospa(const PointSet& x, const PointSet& y, const MetricParams& params) {
    return detail::cospa_from(detail::match_sets(x, y, params), params);
}

/// Correct pairs, outline pairs, missing and false targets for truth x and
/// estimate y under the optimal assignment.
inline AssociationReport classify_associations(const PointSet& truth, const PointSet& estimate,
                                               const MetricParams& params) {
    return detail::associations_from(detail::match_sets(truth, estimate, params), params);
}

using TimeIndex = std::int64_t;
using PointSeries = std::map<TimeIndex, PointSet>;

struct StepEvaluation {
    TimeIndex time = 0;
    std::size_t n_truth = 0;
    std::size_t n_estimate = 0;
    std::map<Metric, MetricResult> results;
    AssociationReport associations;
};

/// Evaluates every instant present in either series; an instant missing on
/// one side is compared against the empty set. Output is in time order.
inline std::vector<StepEvaluation> eval_series(const PointSeries& truth, const PointSeries& estimate,
                                               const MetricParams& params, const std::set<Metric>& which) {
    if (which.count(Metric::gospa) && params.infinite_order()) {
        throw UnsupportedOrderError("GOSPA is not defined for p = inf");
    }
    std::set<TimeIndex> times;
    for (const auto& [t, _] : truth) times.insert(t);
    for (const auto& [t, _] : estimate) times.insert(t);

    std::optional<std::size_t> dim;
    auto check = [&](TimeIndex t, const PointSet& s, const char* side) {
        if (s.empty()) return;
        if (!dim) dim = s.dim();
        if (*dim != s.dim()) {
            throw DimensionError("state dimension " + std::to_string(s.dim()) + " in " + side + " at t=" +
                                 std::to_string(t) + " differs from earlier dimension " + std::to_string(*dim));
        }
    };

    std::vector<StepEvaluation> out;
    out.reserve(times.size());
    for (TimeIndex t : times) {
        const auto ti = truth.find(t);
        const auto ei = estimate.find(t);
        const PointSet empty_set(dim.value_or(1));
        const PointSet& x = ti != truth.end() ? ti->second : empty_set;
        const PointSet& y = ei != estimate.end() ? ei->second : empty_set;
        check(t, x, "truth");
        check(t, y, "estimate");

        const detail::Matching mt = detail::match_sets(x, y, params);
        StepEvaluation step;
        step.time = t;
        step.n_truth = x.size();
        step.n_estimate = y.size();
        if (which.count(Metric::ospa)) step.results[Metric::ospa] = detail::ospa_from(mt, params);
        if (which.count(Metric::gospa)) step.results[Metric::gospa] = detail::gospa_from(mt, params);
        if (which.count(Metric::cospa)) step.results[Metric::cospa] = detail::cospa_from(mt, params);
        step.associations = detail::associations_from(mt, params);
        out.push_back(std::move(step));
    }
    return out;
}

}  // namespace cospa
