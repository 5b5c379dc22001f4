#include "oracles.hpp"

#include <heis/weyl.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace heis;

TEST(Volume, Examples) {
    EXPECT_EQ(volume(LatticeSpec::standard_rect(2)), 2.0);
    EXPECT_EQ(volume(BieberbachSpec::gamma_pi(1)), 1.0);
    EXPECT_NEAR(volume(BieberbachSpec::gamma_pi_half(1)), 0.5, 1e-15);
    EXPECT_NEAR(volume(LatticeSpec::scaled_square(3)), 6.0, 1e-14);
    EXPECT_EQ(volume(ManifoldSpec{BieberbachSpec::gamma_pi(3)}), 3.0);
}

TEST(WeylConstant, Values) {
    const auto a0 = weyl_constant(0.0);
    EXPECT_NEAR(a0.value, 0.5, 1e-12);
    EXPECT_LT(a0.quadrature_error, 1e-10);
    EXPECT_NEAR(weyl_constant(1.0).value, 1.0 / 6.0, 1e-12);
    EXPECT_NEAR(weyl_constant(-1.0).value, 1.0 / 6.0, 1e-12);
    EXPECT_NEAR(oracle::weyl_integral(0.0), 0.5, 1e-10);
    EXPECT_NEAR(oracle::weyl_integral_edge(), 1.0 / 6.0, 1e-10);
    EXPECT_THROW(weyl_constant(1.5), std::domain_error);
    EXPECT_THROW(weyl_constant(std::nan("")), std::domain_error);
}

TEST(WeylConstant, MatchesOracles) {
    for (double alpha : {-0.9, -0.6, -0.25, 0.1, 0.3, 0.5, 0.75, 0.9}) {
        const auto a = weyl_constant(alpha);
        EXPECT_NEAR(a.value, oracle::weyl_constant_closed(alpha), 1e-10 * a.value);
        EXPECT_NEAR(a.value, oracle::weyl_integral(alpha), 1e-8 * a.value);
        EXPECT_LT(a.quadrature_error, 1e-10 * std::max(1.0, a.value));
    }
    for (double alpha : {0.99, 0.999, 0.9999}) {
        EXPECT_NEAR(weyl_constant(alpha).value, oracle::weyl_constant_closed(alpha),
                    1e-9 * oracle::weyl_constant_closed(alpha));
    }
}

TEST(WeylConstant, SymmetricInAlpha) {
    for (double alpha : {0.0, 0.125, 0.25, 0.5, 0.75, 0.95, 1.0}) {
        EXPECT_NEAR(weyl_constant(alpha).value, weyl_constant(-alpha).value, 1e-10 * weyl_constant(alpha).value);
    }
}

TEST(WeylConstant, IncreasesWithAbsAlphaBelowOne) {
    double previous = 0.0;
    for (double alpha : {0.0, 0.25, 0.5, 0.75}) {
        const double v = weyl_constant(alpha).value;
        EXPECT_GT(v, previous);
        previous = v;
    }
    // The constant drops at |alpha| = 1, where the kernel is infinite dimensional.
    EXPECT_LT(weyl_constant(1.0).value, weyl_constant(0.0).value);
}

TEST(Counting, StandardRectAtPi) {
    const auto series = counting_function(LatticeSpec::standard_rect(1), 0.0, {std::numbers::pi});
    ASSERT_EQ(series.samples.size(), 1u);
    EXPECT_EQ(series.samples[0].oscillator, 6);
    EXPECT_FALSE(series.torus_heuristic);
}

TEST(Counting, BelowTheFirstEigenvalueIsZero) {
    for (const ManifoldSpec &m : {ManifoldSpec{LatticeSpec::standard_rect(1)}, ManifoldSpec{BieberbachSpec::gamma_pi(1)},
                                  ManifoldSpec{BieberbachSpec::gamma_pi_half(2)}}) {
        const auto s = counting_function(m, 0.0, {0.5});
        EXPECT_EQ(s.samples[0].count, 0);
    }
    EXPECT_THROW(counting_function(LatticeSpec::standard_rect(1), 0.0, {2.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(counting_function(LatticeSpec::standard_rect(1), 0.0, {0.0}), std::invalid_argument);
}

TEST(Counting, SeriesInvariantsAndOracleCounts) {
    const std::vector<double> grid{1.0, 5.0, 12.5, 40.0, 90.0, 150.0};
    for (const double alpha : {-1.0, -0.3, 0.0, 0.6, 1.0}) {
        for (int l = 1; l <= 2; ++l) {
            const std::vector<ManifoldSpec> specs{LatticeSpec::standard_rect(l), LatticeSpec::scaled_square(l),
                                                  BieberbachSpec::gamma_pi(l), BieberbachSpec::gamma_pi_half(l)};
            for (const auto &m : specs) {
                const auto series = counting_function(m, alpha, grid);
                const auto cover = covering_lattice(m);
                const auto d = dual_lattice(cover);
                const int order = torus_rotation_order(m);
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    const auto &s = series.samples[i];
                    EXPECT_EQ(s.count, s.oscillator + s.torus);
                    if (i > 0) EXPECT_GE(s.count, series.samples[i - 1].count);
                    long long osc = 0;
                    for (const auto &p : oracle::admissible_pairs(grid[i], alpha)) {
                        osc += oscillator_multiplicity(m, p.n, p.lambda);
                    }
                    EXPECT_EQ(s.oscillator, osc);
                    const long long tor = oracle::torus_count(d.mu_step, d.nu_step, grid[i]);
                    EXPECT_EQ(tor % order, 0);
                    EXPECT_EQ(s.torus, tor / order);
                }
            }
        }
    }
}

TEST(Counting, GammaPiOscillatorCountFromParitySets) {
    for (int l = 1; l <= 3; ++l) {
        for (double t : {7.0, 33.0, 120.0}) {
            long long expected = 0;
            for (const auto &p : oracle::admissible_pairs(t, 0.0)) {
                expected += (std::abs(p.n) + p.lambda) % 2 == 0 ? l * std::abs(p.n) + 1 : l * std::abs(p.n) - 1;
            }
            EXPECT_EQ(counting_function(BieberbachSpec::gamma_pi(l), 0.0, {t}).samples[0].oscillator, expected);
        }
    }
}

TEST(Counting, LatticeCountsMatchSpectrumLines) {
    for (const auto &lat : {LatticeSpec::standard_rect(1), LatticeSpec::scaled_square(2)}) {
        long long total = 0;
        for (const auto &line : enumerate_spectrum(lat, 0.4, 75.0)) {
            if (line.value > 0.0) total += line.multiplicity;
        }
        EXPECT_EQ(counting_function(lat, 0.4, {75.0}).samples[0].count, total);
    }
}

TEST(Parity, Examples) {
    const auto pc = parity_counts(std::numbers::pi, 0.0);
    EXPECT_EQ(pc.even, 2);
    EXPECT_EQ(pc.odd, 2);
    const auto tiny = parity_counts(1e-6, 0.0);
    EXPECT_EQ(tiny.even, 0);
    EXPECT_EQ(tiny.odd, 0);
    EXPECT_THROW(parity_counts(0.0, 0.0), std::invalid_argument);
}

TEST(Parity, BoundHolds) {
    for (double alpha : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        for (double t : {10.0, 100.0, 1000.0}) {
            const auto pc = parity_counts(t, alpha);
            EXPECT_LE(std::fabs(static_cast<double>(pc.even - pc.odd)), pc.bound());
        }
    }
}

TEST(Parity, HalfRelationIsExact) {
    for (int l = 1; l <= 2; ++l) {
        for (double alpha : {-1.0, 0.0, 0.5, 1.0}) {
            const std::vector<double> grid{3.0, 10.0, 31.6, 100.0, 316.0, 1000.0};
            const auto gamma = counting_function(BieberbachSpec::gamma_pi(l), alpha, grid);
            const auto cover = counting_function(LatticeSpec::standard_rect(2 * l), alpha, grid);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const auto pc = parity_counts(grid[i], alpha);
                EXPECT_EQ(std::llabs(2 * gamma.samples[i].oscillator - cover.samples[i].oscillator),
                          2 * std::llabs(pc.even - pc.odd));
            }
        }
    }
}

TEST(PairSums, Examples) {
    const auto s = oscillator_pair_sums(std::numbers::pi, 0.0, 1);
    EXPECT_EQ(s.ones, 4);
    EXPECT_EQ(s.mults, 12);
    const auto none = oscillator_pair_sums(0.99 * std::numbers::pi * 0.5 * 0.5, 0.5, 2);
    EXPECT_EQ(none.ones, 0);
    EXPECT_EQ(none.mults, 0);
}

TEST(PairSums, RatioDecreases) {
    double previous = 1.0;
    for (double t : {1e2, 1e3, 1e4}) {
        const double r = oscillator_pair_sums(t, 0.0, 1).ratio();
        EXPECT_LT(r, previous);
        previous = r;
    }
}

TEST(PairSums, FloorSumSandwiches) {
    for (double alpha : {-1.0, -0.4, 0.0, 0.7, 1.0}) {
        for (double t : {10.0, 100.0, 1000.0}) {
            long long ones = 0;
            long long halves = 0;
            for (const int sign : {1, -1}) {
                const auto fs = floor_sums(t, alpha, sign);
                EXPECT_LE(fs.h - static_cast<double>(fs.terms), static_cast<double>(fs.f) + 1e-9);
                EXPECT_LE(static_cast<double>(fs.f), fs.h + 1e-9);
                EXPECT_LE(fs.q - fs.h, static_cast<double>(fs.g) + 1e-9);
                EXPECT_LE(static_cast<double>(fs.g), fs.q + fs.h + 1e-9);
                ones += fs.f;
                halves += fs.g;
            }
            const auto sums = oscillator_pair_sums(t, alpha, 1);
            EXPECT_EQ(ones, sums.ones);
            // sum over admissible pairs of 2|n| = sum_lambda floor(x)(floor(x) + 1)
            EXPECT_EQ(halves, sums.mults);
        }
    }
}

TEST(PairSums, QuarterRatioSandwich) {
    for (int l = 1; l <= 2; ++l) {
        for (double t : {20.0, 200.0, 1000.0}) {
            const auto quarter = counting_function(BieberbachSpec::gamma_pi_half(l), 0.0, {t});
            const auto square = counting_function(LatticeSpec::scaled_square(l), 0.0, {t});
            const auto sums = oscillator_pair_sums(t, 0.0, l);
            EXPECT_EQ(sums.mults, square.samples[0].oscillator);
            const double ratio = static_cast<double>(quarter.samples[0].oscillator) / square.samples[0].oscillator;
            EXPECT_LE(std::fabs(ratio - 0.25), sums.ratio());
        }
    }
}

TEST(WeylRatio, StandardRectConverges) {
    const auto checks = weyl_ratio_check(LatticeSpec::standard_rect(1), 0.0, {50.0, 200.0, 400.0});
    EXPECT_NEAR(checks[1].ratio, 0.5, 0.05);
    EXPECT_NEAR(checks[0].target, 0.5, 1e-10);
    EXPECT_LT(checks[2].deviation, checks[0].deviation);
    EXPECT_NEAR(weyl_ratio_check(BieberbachSpec::gamma_pi(1), 0.0, {10.0})[0].target, 0.5, 1e-10);
}

TEST(WeylRatio, DefaultGrid) {
    const auto g = default_tgrid();
    ASSERT_EQ(g.size(), 20u);
    EXPECT_NEAR(g.front(), std::numbers::pi / 2, 1e-15);
    EXPECT_EQ(g.back(), 1000.0);
    for (std::size_t i = 1; i < g.size(); ++i) EXPECT_NEAR(g[i] / g[i - 1], g[1] / g[0], 1e-12);
}
