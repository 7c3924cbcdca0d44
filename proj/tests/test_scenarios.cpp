#include "cospa/scenarios.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

namespace cospa {
namespace {

constexpr double kTol = 1e-12;

MetricParams table_params(double c, double c_dot, double alpha = 2.0) {
    return validate_params({.p = 1.0, .c = c, .c_dot = c_dot, .xi = 1.0, .alpha = alpha});
}

struct Totals {
    double ospa, gospa, cospa;
};

Totals totals(const PointSet& x, const PointSet& y, const MetricParams& prm) {
    return {cospa::ospa(x, y, prm).total, cospa::gospa(x, y, prm).total, cospa::cospa(x, y, prm).total};
}

std::vector<double> deltas() {
    std::vector<double> d;
    for (int k = 1; k <= 9; ++k) d.push_back(k / 10.0);
    return d;
}

TEST(Figure2, Structure) {
    const auto sc = make_figure_scenario(2, {});
    EXPECT_TRUE(sc.truth.empty());
    ASSERT_EQ(sc.candidates.size(), 2u);
    EXPECT_EQ(sc.candidate("Y").size(), 2u);
    EXPECT_EQ(sc.candidate("Z").size(), 3u);
    EXPECT_THROW(sc.candidate("W"), std::out_of_range);
}

TEST(Figure2, ClosedForms) {
    for (double alpha : {1.0, 1.5, 2.0}) {
        const double c = 1.0, cd = 1.4;
        const auto sc = make_figure_scenario(2, {.c = c});
        const auto prm = table_params(c, cd, alpha);
        const auto y = totals(sc.truth, sc.candidate("Y"), prm);
        const auto z = totals(sc.truth, sc.candidate("Z"), prm);
        EXPECT_NEAR(y.ospa, c, kTol);
        EXPECT_NEAR(z.ospa, c, kTol);
        EXPECT_NEAR(y.gospa, 2 * c / alpha, kTol);
        EXPECT_NEAR(z.gospa, 3 * c / alpha, kTol);
        EXPECT_NEAR(y.cospa, 1.5 * cd, kTol);
        EXPECT_NEAR(z.cospa, 5.0 / 3.0 * cd, kTol);
    }
}

TEST(Figure3, ClosedForms) {
    const double c = 1.0, cd = 1.3;
    const auto prm = table_params(c, cd);
    for (std::size_t m = 1; m <= 6; ++m) {
        for (double eta : {0.1, 0.3, 0.9, 1.5, 4.0}) {
            const auto sc = make_figure_scenario(3, {.c = c, .eta = eta, .m = m});
            const auto z = totals(sc.truth, sc.candidate("Z"), prm);
            const auto y = totals(sc.truth, sc.candidate("Y"), prm);
            const double md = static_cast<double>(m);
            EXPECT_NEAR(z.ospa, c, kTol);
            EXPECT_NEAR(y.ospa, std::min(c, eta), kTol);
            EXPECT_NEAR(z.gospa, c * md / 2.0, kTol);
            EXPECT_NEAR(y.gospa, md * std::min(c, eta), kTol);
            EXPECT_NEAR(z.cospa, cd * (2.0 - 1.0 / md), kTol);
            EXPECT_NEAR(y.cospa, std::min(c, eta), kTol);
            EXPECT_LT(y.cospa, z.cospa);  // the shifted estimate always wins
        }
    }
}

TEST(Figure4, ClosedForms) {
    const double c = 1.0, cd = 1.2;
    for (double alpha : {1.0, 2.0}) {
        const auto prm = table_params(c, cd, alpha);
        for (double d : deltas()) {
            const auto sc = make_figure_scenario(4, {.c = c, .delta = d});
            const auto y = totals(sc.truth, sc.candidate("Y"), prm);
            const auto z = totals(sc.truth, sc.candidate("Z"), prm);
            EXPECT_NEAR(y.ospa, (2 * d + c) / 3, kTol);
            EXPECT_NEAR(z.ospa, (2 * d + c) / 3, kTol);
            EXPECT_NEAR(y.gospa, 2 * d + c / alpha, kTol);
            EXPECT_NEAR(z.gospa, 2 * d + c, kTol);
            EXPECT_NEAR(y.cospa, (2 * d + cd) / 3, kTol);
            EXPECT_NEAR(z.cospa, (2 * d + c) / 3, kTol);
        }
    }
}

TEST(Figure5, ClosedForms) {
    const double c = 1.0, cd = 1.2;
    const auto prm = table_params(c, cd);
    for (double d : deltas()) {
        const auto sc = make_figure_scenario(5, {.c = c, .delta = d});
        const auto a = totals(sc.truth, sc.candidate("Ya"), prm);
        const auto b = totals(sc.truth, sc.candidate("Yb"), prm);
        const auto cc = totals(sc.truth, sc.candidate("Yc"), prm);
        const auto dd = totals(sc.truth, sc.candidate("Yd"), prm);
        EXPECT_NEAR(a.ospa, c, kTol);
        EXPECT_NEAR(b.ospa, (c + d) / 2, kTol);
        EXPECT_NEAR(cc.ospa, d, kTol);
        EXPECT_NEAR(dd.ospa, (2 * d + c) / 3, kTol);
        EXPECT_NEAR(a.gospa, c, kTol);
        EXPECT_NEAR(b.gospa, d + c / 2, kTol);
        EXPECT_NEAR(cc.gospa, 2 * d, kTol);
        EXPECT_NEAR(dd.gospa, 2 * d + c / 2, kTol);
        EXPECT_NEAR(a.cospa, 1.5 * cd, kTol);
        EXPECT_NEAR(b.cospa, (cd + d) / 2, kTol);
        EXPECT_NEAR(cc.cospa, d, kTol);
        EXPECT_NEAR(dd.cospa, (2 * d + cd) / 3, kTol);
        // Yb vs Yd: GOSPA prefers the single estimate, the normalized metrics the superset.
        EXPECT_LT(dd.ospa, b.ospa);
        EXPECT_LT(b.gospa, dd.gospa);
        EXPECT_LT(dd.cospa, b.cospa);
    }
}

TEST(Figure6, ClosedForms) {
    const auto prm = table_params(1.0, 1.2);
    for (std::size_t n = 1; n <= 6; ++n) {
        for (double d : deltas()) {
            const auto sc = make_figure_scenario(6, {.delta = d, .n = n});
            const auto y = totals(sc.truth, sc.candidate("Y"), prm);
            EXPECT_NEAR(y.ospa, d, kTol);
            EXPECT_NEAR(y.cospa, d, kTol);
            EXPECT_NEAR(y.gospa, static_cast<double>(n) * d, kTol);
        }
    }
}

TEST(Figure6, ThreePoints) {
    const auto sc = make_figure_scenario(6, {.delta = 0.3, .n = 3});
    const auto y = totals(sc.truth, sc.candidate("Y"), table_params(1.0, 1.2));
    EXPECT_NEAR(y.ospa, 0.3, kTol);
    EXPECT_NEAR(y.cospa, 0.3, kTol);
    EXPECT_NEAR(y.gospa, 0.9, kTol);
}

TEST(Figure7, ClosedForms) {
    const double c = 1.0, cd = 1.1;
    const auto prm = table_params(c, cd);
    for (std::size_t n = 2; n <= 6; ++n) {
        for (std::size_t m = 1; m < n; ++m) {
            for (double d : deltas()) {
                const auto sc = make_figure_scenario(7, {.c = c, .delta = d, .m = m, .n = n});
                const auto z = totals(sc.truth, sc.candidate("Z"), prm);
                const auto y = totals(sc.truth, sc.candidate("Y"), prm);
                const double md = static_cast<double>(m), nd = static_cast<double>(n);
                EXPECT_NEAR(z.ospa, c, kTol);
                EXPECT_NEAR(y.ospa, (md * d + (nd - md) * c) / nd, kTol);
                EXPECT_NEAR(z.gospa, c * md / 2, kTol);
                EXPECT_NEAR(y.gospa, md * d + (nd - md) * c / 2, kTol);
                EXPECT_NEAR(z.cospa, cd * (2 - 1 / md), kTol);
                EXPECT_NEAR(y.cospa, (md * d + (nd - md) * cd) / nd, kTol);
            }
        }
    }
}

TEST(Figure7, WorkedExample) {
    const auto sc = make_figure_scenario(7, {.c = 1.0, .delta = 0.2, .m = 2, .n = 4});
    const auto prm = table_params(1.0, 1.1);
    const auto y = totals(sc.truth, sc.candidate("Y"), prm);
    EXPECT_NEAR(y.ospa, 0.6, kTol);
    EXPECT_NEAR(y.gospa, 1.4, kTol);
    // c_dot (2 - 1/m) with m = 2
    EXPECT_NEAR(cospa(sc.truth, sc.candidate("Z"), prm).total, 1.65, kTol);
}

TEST(Scenarios, PreconditionsRejected) {
    EXPECT_THROW(make_figure_scenario(1, {}), std::invalid_argument);
    EXPECT_THROW(make_figure_scenario(8, {}), std::invalid_argument);
    EXPECT_THROW(make_figure_scenario(4, {.c = 1.0, .delta = 1.0}), std::invalid_argument);
    EXPECT_THROW(make_figure_scenario(5, {.c = 1.0, .delta = -0.1}), std::invalid_argument);
    EXPECT_THROW(make_figure_scenario(7, {.m = 3, .n = 3}), std::invalid_argument);
    EXPECT_THROW(make_figure_scenario(3, {.eta = 0.0}), std::invalid_argument);
    EXPECT_THROW(make_figure_scenario(4, {.c = 1.0, .z_offset = 0.5}), std::invalid_argument);
    EXPECT_THROW(make_figure_scenario(6, {.c = 1.0, .spacing = 0.5}), std::invalid_argument);
    EXPECT_THROW(make_figure_scenario(2, {.c = 0.0}), std::invalid_argument);
}

TEST(Simulator, SameSeedSameTracks) {
    SimConfig cfg;
    cfg.seed = 42;
    const auto a = simulate_tracks(cfg);
    const auto b = simulate_tracks(cfg);
    ASSERT_EQ(a.truth.size(), cfg.num_steps);
    ASSERT_EQ(a.estimate.size(), cfg.num_steps);
    for (const auto& [t, set] : a.truth) {
        const auto& other = b.truth.at(t);
        ASSERT_EQ(set.size(), other.size());
        for (std::size_t i = 0; i < set.size(); ++i) EXPECT_EQ(set[i], other[i]);
    }
    for (const auto& [t, set] : a.estimate) {
        const auto& other = b.estimate.at(t);
        ASSERT_EQ(set.size(), other.size());
        for (std::size_t i = 0; i < set.size(); ++i) EXPECT_EQ(set[i], other[i]);
    }
    EXPECT_EQ(a.estimate_ids, b.estimate_ids);
}

TEST(Simulator, TruthCardinalityNeverGrows) {
    SimConfig cfg;
    cfg.survival_prob = 0.9;
    const auto sim = simulate_tracks(cfg);
    std::size_t prev = cfg.num_targets;
    for (const auto& [t, set] : sim.truth) {
        EXPECT_LE(set.size(), prev) << "t=" << t;
        prev = set.size();
        EXPECT_EQ(sim.truth_ids.at(t).size(), set.size());
        EXPECT_EQ(sim.estimate_ids.at(t).size(), sim.estimate.at(t).size());
    }
}

TEST(Simulator, NoiselessPerfectDetectionGivesZeroDistance) {
    SimConfig cfg;
    cfg.detection_prob = 1.0;
    cfg.clutter_rate = 0.0;
    cfg.noise_std = 0.0;
    const auto sim = simulate_tracks(cfg);
    const auto prm = MetricParams::defaults();
    for (const auto& step : eval_series(sim.truth, sim.estimate, prm, {kAllMetrics.begin(), kAllMetrics.end()})) {
        for (const auto& [m, r] : step.results) EXPECT_EQ(r.total, 0.0) << to_string(m) << " t=" << step.time;
    }
}

TEST(Simulator, NoDetectionsGivesEmptyEstimateValue) {
    SimConfig cfg;
    cfg.detection_prob = 0.0;
    cfg.clutter_rate = 0.0;
    const auto sim = simulate_tracks(cfg);
    const auto prm = MetricParams::defaults();
    for (const auto& step : eval_series(sim.truth, sim.estimate, prm, {Metric::cospa})) {
        EXPECT_EQ(step.n_estimate, 0u);
        if (step.n_truth == 0) continue;
        const double m = static_cast<double>(step.n_truth);
        EXPECT_NEAR(step.results.at(Metric::cospa).total, prm.c_dot() * (2.0 - 1.0 / m), 1e-9);
    }
}

TEST(Simulator, RejectsBadConfig) {
    SimConfig cfg;
    cfg.region.upper = cfg.region.lower;
    EXPECT_THROW(simulate_tracks(cfg), std::invalid_argument);
    SimConfig bad_prob;
    bad_prob.detection_prob = 1.5;
    EXPECT_THROW(validate(bad_prob), std::invalid_argument);
    SimConfig bad_clutter;
    bad_clutter.clutter_rate = -1.0;
    EXPECT_THROW(validate(bad_clutter), std::invalid_argument);
}

TEST(Simulator, ThreeDimensionalRegion) {
    SimConfig cfg;
    cfg.region.lower = Vector::Zero(3);
    cfg.region.upper = Vector::Constant(3, 50.0);
    cfg.num_steps = 5;
    const auto sim = simulate_tracks(cfg);
    for (const auto& [t, set] : sim.estimate) EXPECT_EQ(set.dim(), 3u);
}

}  // namespace
}  // namespace cospa
