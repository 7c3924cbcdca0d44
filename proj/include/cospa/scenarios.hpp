#pragma once

#include "cospa/core.hpp"
#include "cospa/metrics.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cospa {

/// Free parameters of the analytic comparison figures. All geometry is in
/// the plane; points of one set are laid out `spacing` apart along the x axis
/// so cross pairs are always at least `spacing` >= c apart.
struct ScenarioParams {
    double c = 1.0;
    double delta = 0.3;     // offset of a matched pair, < c
    double eta = 0.3;       // offset of every pair in figure 3 (may exceed c)
    std::size_t m = 2;      // truth cardinality (figures 3, 6, 7)
    std::size_t n = 4;      // candidate cardinality (figures 6, 7)
    double z_offset = 0.0;  // displacement of far points, >= c; 0 means 2c
    double spacing = 0.0;   // 0 means 3c
};

struct NamedSet {
    std::string name;
    PointSet points;
};

/// Reference set plus the candidate sets the figure compares against it.
struct AnalyticScenario {
    int figure = 0;
    std::string name;
    PointSet truth{2};
    std::vector<NamedSet> candidates;
    ScenarioParams params;

    [[nodiscard]] const PointSet& candidate(const std::string& key) const {
        for (const auto& c : candidates) {
            if (c.name == key) return c.points;
        }
        throw std::out_of_range("scenario has no candidate '" + key + "'");
    }
};

namespace detail {

inline PointSet row_of_points(std::size_t count, double spacing, double y, std::size_t first = 0) {
    PointSet s(2);
    for (std::size_t i = 0; i < count; ++i) s.push_back(Vector{{static_cast<double>(first + i) * spacing, y}});
    return s;
}

inline PointSet concat(PointSet a, const PointSet& b) {
    for (const auto& v : b) a.push_back(v);
    return a;
}

}  // namespace detail

/// Builds figure 2..7 with the preconditions of each construction checked.
///
///   2: truth empty; Y two points, Z three points.
///   3: truth m points; Z empty; Y the truth shifted by eta.
///   4: truth three points; Y the first two shifted by delta; Z = Y plus a
///      point at least c from every truth point.
///   5: truth two points; Ya empty, Yb one matched point, Yc two matched
///      points, Yd = Yc plus one far point.
///   6: two parallel rows of n points, delta apart.
///   7: truth m points; Z empty; Y the m matched points plus n - m far ones.
inline AnalyticScenario make_figure_scenario(int figure, ScenarioParams prm) {
    if (!(prm.c > 0.0)) throw std::invalid_argument("c must be > 0");
    if (prm.spacing == 0.0) prm.spacing = 3.0 * prm.c;
    if (prm.z_offset == 0.0) prm.z_offset = 2.0 * prm.c;
    if (prm.spacing < prm.c) throw std::invalid_argument("spacing must be >= c");
    if (prm.z_offset < prm.c) throw std::invalid_argument("far-point offset must be >= c");
    auto need_delta = [&] {
        if (!(prm.delta >= 0.0 && prm.delta < prm.c)) throw std::invalid_argument("figure requires 0 <= delta < c");
    };

    const double s = prm.spacing;
    AnalyticScenario sc;
    sc.figure = figure;
    sc.params = prm;
    switch (figure) {
        case 2:
            sc.name = "empty truth vs two and three points";
            sc.truth = PointSet(2);
            sc.candidates = {{"Y", detail::row_of_points(2, s, 0.0)}, {"Z", detail::row_of_points(3, s, 0.0)}};
            break;
        case 3:
            if (prm.m < 1) throw std::invalid_argument("figure 3 requires m >= 1");
            if (!(prm.eta > 0.0)) throw std::invalid_argument("figure 3 requires eta > 0");
            sc.name = "empty estimate vs m shifted points";
            sc.truth = detail::row_of_points(prm.m, s, 0.0);
            sc.candidates = {{"Z", PointSet(2)}, {"Y", detail::row_of_points(prm.m, s, prm.eta)}};
            break;
        case 4: {
            need_delta();
            sc.name = "missing point vs extra far point";
            sc.truth = detail::row_of_points(3, s, 0.0);
            PointSet y = detail::row_of_points(2, s, prm.delta);
            PointSet z = y;
            z.push_back(Vector{{s, -prm.z_offset}});
            sc.candidates = {{"Y", y}, {"Z", z}};
            break;
        }
        case 5: {
            need_delta();
            sc.name = "zero to three estimates of two targets";
            sc.truth = detail::row_of_points(2, s, 0.0);
            PointSet yc = detail::row_of_points(2, s, prm.delta);
            PointSet yd = detail::concat(yc, detail::row_of_points(1, s, 0.0, 2));
            sc.candidates = {{"Ya", PointSet(2)},
                             {"Yb", detail::row_of_points(1, s, prm.delta)},
                             {"Yc", yc},
                             {"Yd", yd}};
            break;
        }
        case 6:
            need_delta();
            if (prm.n < 1) throw std::invalid_argument("figure 6 requires n >= 1");
            sc.name = "two parallel segments discretized into n points";
            sc.truth = detail::row_of_points(prm.n, s, 0.0);
            sc.candidates = {{"Y", detail::row_of_points(prm.n, s, prm.delta)}};
            break;
        case 7: {
            need_delta();
            if (prm.m < 1 || prm.n <= prm.m) throw std::invalid_argument("figure 7 requires 1 <= m < n");
            sc.name = "empty estimate vs n > m estimates";
            sc.truth = detail::row_of_points(prm.m, s, 0.0);
            PointSet y = detail::concat(detail::row_of_points(prm.m, s, prm.delta),
                                        detail::row_of_points(prm.n - prm.m, s, prm.z_offset, prm.m));
            sc.candidates = {{"Z", PointSet(2)}, {"Y", y}};
            break;
        }
        default:
            throw std::invalid_argument("no analytic scenario for figure " + std::to_string(figure));
    }
    return sc;
}

/// Axis-aligned box.
struct Region {
    Vector lower = Vector::Zero(2);
    Vector upper = Vector::Constant(2, 1000.0);
};

struct SimConfig {
    std::size_t num_targets = 10;
    std::size_t num_steps = 50;
    double survival_prob = 0.99;
    double detection_prob = 0.8;
    double clutter_rate = 5.0;  // mean false tracks per step
    double noise_std = 10.0;
    Region region;
    std::uint64_t seed = 1;
};

struct SimulatedTracks {
    PointSeries truth;
    PointSeries estimate;
    // Per-step labels parallel to the point order: target number for truth,
    // running track number for estimates.
    std::map<TimeIndex, std::vector<std::string>> truth_ids;
    std::map<TimeIndex, std::vector<std::string>> estimate_ids;
};

inline void validate(const SimConfig& cfg) {
    auto prob = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!prob(cfg.survival_prob)) throw std::invalid_argument("survival probability must lie in [0, 1]");
    if (!prob(cfg.detection_prob)) throw std::invalid_argument("detection probability must lie in [0, 1]");
    if (!(cfg.clutter_rate >= 0.0) || std::isinf(cfg.clutter_rate)) {
        throw std::invalid_argument("clutter rate must be finite and >= 0");
    }
    if (!(cfg.noise_std >= 0.0) || std::isinf(cfg.noise_std)) {
        throw std::invalid_argument("noise std must be finite and >= 0");
    }
    if (cfg.region.lower.size() == 0 || cfg.region.lower.size() != cfg.region.upper.size()) {
        throw std::invalid_argument("region bounds must share a dimension >= 1");
    }
    for (Eigen::Index k = 0; k < cfg.region.lower.size(); ++k) {
        if (!(cfg.region.upper[k] > cfg.region.lower[k]) || !std::isfinite(cfg.region.upper[k]) ||
            !std::isfinite(cfg.region.lower[k])) {
            throw std::invalid_argument("region has zero or invalid extent along axis " + std::to_string(k));
        }
    }
}

/// Constant-velocity truth with per-step survival and no births, and
/// estimated tracks drawn per step: each live target is reported with
/// probability detection_prob and Gaussian position noise, plus a Poisson
/// number of uniform false tracks. Fully determined by the seed.
///
/// Half of the targets start in the upper-right part of the region heading
/// to the lower left; the rest start near the middle heading to the upper
/// right.
inline SimulatedTracks simulate_tracks(const SimConfig& cfg) {
    validate(cfg);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Vector lo = cfg.region.lower;
    const Vector extent = cfg.region.upper - cfg.region.lower;
    const auto dim = static_cast<std::size_t>(lo.size());
    const double steps = static_cast<double>(std::max<std::size_t>(cfg.num_steps, 1));

    struct Target {
        Vector pos;
        Vector vel;
        bool alive = true;
    };
    std::vector<Target> targets;
    targets.reserve(cfg.num_targets);
    for (std::size_t k = 0; k < cfg.num_targets; ++k) {
        Vector start(static_cast<Eigen::Index>(dim));
        Vector finish(static_cast<Eigen::Index>(dim));
        const bool from_corner = k % 2 == 0;
        for (std::size_t a = 0; a < dim; ++a) {
            const auto i = static_cast<Eigen::Index>(a);
            if (from_corner) {
                start[i] = lo[i] + extent[i] * (0.7 + 0.25 * unit(rng));
                finish[i] = lo[i] + extent[i] * (0.05 + 0.25 * unit(rng));
            } else {
                start[i] = lo[i] + extent[i] * (0.4 + 0.2 * unit(rng));
                finish[i] = lo[i] + extent[i] * (0.7 + 0.25 * unit(rng));
            }
        }
        targets.push_back({start, (finish - start) / steps, true});
    }

    SimulatedTracks out;
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::size_t next_estimate_id = 0;
    for (std::size_t step = 1; step <= cfg.num_steps; ++step) {
        const auto t = static_cast<TimeIndex>(step);
        if (step > 1) {
            for (auto& tg : targets) {
                if (!tg.alive) continue;
                tg.alive = unit(rng) < cfg.survival_prob;
                tg.pos += tg.vel;
            }
        }
        PointSet truth(dim);
        PointSet est(dim);
        auto& truth_ids = out.truth_ids[t];
        auto& est_ids = out.estimate_ids[t];
        for (std::size_t k = 0; k < targets.size(); ++k) {
            const auto& tg = targets[k];
            if (!tg.alive) continue;
            truth.push_back(tg.pos);
            truth_ids.push_back("T" + std::to_string(k));
            if (unit(rng) < cfg.detection_prob) {
                Vector noisy = tg.pos;
                if (cfg.noise_std > 0.0) {
                    for (Eigen::Index i = 0; i < noisy.size(); ++i) noisy[i] += cfg.noise_std * gauss(rng);
                }
                est.push_back(std::move(noisy));
                est_ids.push_back("E" + std::to_string(next_estimate_id++));
            }
        }
        if (cfg.clutter_rate > 0.0) {
            std::poisson_distribution<std::size_t> clutter(cfg.clutter_rate);
            const std::size_t count = clutter(rng);
            for (std::size_t q = 0; q < count; ++q) {
                Vector v(static_cast<Eigen::Index>(dim));
                for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = lo[i] + extent[i] * unit(rng);
                est.push_back(std::move(v));
                est_ids.push_back("E" + std::to_string(next_estimate_id++));
            }
        }
        out.truth.emplace(t, std::move(truth));
        out.estimate.emplace(t, std::move(est));
    }
    return out;
}

}  // namespace cospa
