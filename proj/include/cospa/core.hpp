#pragma once

#include <Eigen/Dense>

#include <charconv>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cospa {

using Vector = Eigen::VectorXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Finite multiset of state vectors observed at one instant.
///
/// Every point has the same dimension. The index of a point is its identity
/// within the instant; it never affects a metric value. An empty set still
/// carries a dimension so that it can be paired with nonempty sets.
class PointSet {
public:
    explicit PointSet(std::size_t dim = 1) : dim_(dim) {
        if (dim_ == 0) throw DimensionError("point set dimension must be >= 1");
    }

    PointSet(std::size_t dim, std::vector<Vector> points) : PointSet(dim) {
        points_.reserve(points.size());
        for (auto& p : points) push_back(std::move(p));
    }

    /// Convenience for literals: every row becomes one point.
    PointSet(std::initializer_list<std::initializer_list<double>> rows) : dim_(0) {
        for (const auto& row : rows) {
            if (dim_ == 0) dim_ = row.size();
            Vector v(static_cast<Eigen::Index>(row.size()));
            Eigen::Index k = 0;
            for (double x : row) v[k++] = x;
            push_back(std::move(v));
        }
        if (dim_ == 0) throw DimensionError("point set dimension must be >= 1");
    }

    void push_back(Vector point) {
        if (static_cast<std::size_t>(point.size()) != dim_) {
            throw DimensionError("point of dimension " + std::to_string(point.size()) +
                                 " added to a set of dimension " + std::to_string(dim_));
        }
        if (!point.allFinite()) throw std::invalid_argument("point has a non-finite component");
        points_.push_back(std::move(point));
    }

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] std::size_t size() const { return points_.size(); }
    [[nodiscard]] bool empty() const { return points_.empty(); }
    [[nodiscard]] const Vector& operator[](std::size_t i) const { return points_[i]; }
    [[nodiscard]] const std::vector<Vector>& points() const { return points_; }
    [[nodiscard]] auto begin() const { return points_.begin(); }
    [[nodiscard]] auto end() const { return points_.end(); }

private:
    std::size_t dim_;
    std::vector<Vector> points_;
};

/// Unvalidated parameter bundle. Defaults are the operating point of the
/// 38-target surveillance experiment: p = 1, c = 80, c_dot = 81, xi = 1, alpha = 2.
struct RawParams {
    double p = 1.0;
    double base_norm = 2.0;
    double c = 80.0;
    double c_dot = 81.0;
    double xi = 1.0;
    double alpha = 2.0;
};

struct ParamViolation {
    std::string field;
    std::string message;
};

class ParamError : public std::invalid_argument {
public:
    explicit ParamError(std::vector<ParamViolation> violations)
        : std::invalid_argument(describe(violations)), violations_(std::move(violations)) {}

    [[nodiscard]] const std::vector<ParamViolation>& violations() const { return violations_; }

private:
    static std::string describe(const std::vector<ParamViolation>& vs) {
        std::string out = "invalid metric parameters:";
        for (const auto& v : vs) out += " " + v.field + ": " + v.message + ";";
        out.pop_back();
        return out;
    }

    std::vector<ParamViolation> violations_;
};

class MetricParams;
MetricParams validate_params(const RawParams& raw);

/// Validated metric parameters. Only obtainable through validate_params, so
/// holding one is proof that every range constraint holds.
class MetricParams {
public:
    [[nodiscard]] double p() const { return raw_.p; }
    [[nodiscard]] double base_norm() const { return raw_.base_norm; }
    [[nodiscard]] double c() const { return raw_.c; }
    [[nodiscard]] double c_dot() const { return raw_.c_dot; }
    [[nodiscard]] double xi() const { return raw_.xi; }
    [[nodiscard]] double alpha() const { return raw_.alpha; }
    [[nodiscard]] bool infinite_order() const { return std::isinf(raw_.p); }
    [[nodiscard]] const RawParams& raw() const { return raw_; }

    static MetricParams defaults() { return validate_params(RawParams{}); }

private:
    explicit MetricParams(const RawParams& raw) : raw_(raw) {}
    friend MetricParams validate_params(const RawParams& raw);

    RawParams raw_;
};

/// Checks every range and reports all violations at once.
inline MetricParams validate_params(const RawParams& raw) {
    std::vector<ParamViolation> bad;
    auto order_ok = [](double v) { return v >= 1.0; };  // rejects NaN, admits +inf
    if (!order_ok(raw.p)) bad.push_back({"p", "order must satisfy 1 <= p <= inf"});
    if (!order_ok(raw.base_norm)) bad.push_back({"base_norm", "norm order must satisfy 1 <= p' <= inf"});
    if (!(raw.c > 0.0) || std::isinf(raw.c)) bad.push_back({"c", "cut-off must be finite and > 0"});
    if (!(raw.c_dot >= raw.c) || std::isinf(raw.c_dot)) {
        bad.push_back({"c_dot", "cardinality penalty must be finite and >= c"});
    }
    if (!(raw.xi >= 0.0 && raw.xi <= 1.0)) bad.push_back({"xi", "empty-set weight must lie in [0, 1]"});
    if (!(raw.alpha > 0.0 && raw.alpha <= 2.0)) bad.push_back({"alpha", "alpha must lie in (0, 2]"});
    if (!bad.empty()) throw ParamError(std::move(bad));
    return MetricParams(raw);
}

/// ||x - y|| under the l_{norm} norm, 1 <= norm <= inf.
inline double base_distance(const Vector& x, const Vector& y, double norm = 2.0) {
    if (x.size() != y.size()) {
        throw DimensionError("vectors of dimension " + std::to_string(x.size()) + " and " +
                             std::to_string(y.size()));
    }
    if (!x.allFinite() || !y.allFinite()) throw std::invalid_argument("vector has a non-finite component");
    if (!(norm >= 1.0)) throw std::invalid_argument("norm order must be >= 1");
    const Vector diff = x - y;
    if (norm == 2.0) return diff.norm();
    if (norm == 1.0) return diff.lpNorm<1>();
    if (std::isinf(norm)) return diff.lpNorm<Eigen::Infinity>();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < diff.size(); ++i) acc += std::pow(std::abs(diff[i]), norm);
    return std::pow(acc, 1.0 / norm);
}

/// min(a, ||x - y||_{norm}); always in [0, a].
inline double cutoff_distance(const Vector& x, const Vector& y, double a, double norm = 2.0) {
    if (!(a > 0.0)) throw std::invalid_argument("cut-off must be > 0");
    return std::min(a, base_distance(x, y, norm));
}

namespace detail {

// x^p and x^(1/p) with the common orders kept exact.
inline double pow_order(double x, double p) {
    if (p == 1.0) return x;
    if (p == 2.0) return x * x;
    return std::pow(x, p);
}

inline double root_order(double x, double p) {
    if (p == 1.0) return x;
    if (p == 2.0) return std::sqrt(x);
    return std::pow(x, 1.0 / p);
}

// 17 significant digits, locale independent; round-trips every double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace detail

}  // namespace cospa
