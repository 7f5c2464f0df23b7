#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "ccs/decoders.hpp"
#include "ccs/signal_model.hpp"
#include "oracles.hpp"

namespace ccs {
namespace {

const Algorithm kAll[] = {Algorithm::serial_l0, Algorithm::parallel_l0, Algorithm::parallel_lddsr,
                          Algorithm::lddsr,     Algorithm::er,          Algorithm::smp,
                          Algorithm::ssmp};

DecodeConfig config_for(Algorithm a, std::uint32_t k = 1) {
    DecodeConfig cfg;
    cfg.algorithm = a;
    cfg.k_budget = k;
    return cfg;
}

TEST(Decode, ZeroMeasurementsZeroIterations) {
    const auto A = ExpanderMatrix::generate(16, 24, 3, 1);
    const std::vector<double> y(16, 0.0);
    for (Algorithm a : kAll) {
        const auto res = decode(A, y, config_for(a, 2));
        EXPECT_TRUE(res.report.converged) << to_string(a);
        EXPECT_EQ(res.report.iterations, 0u) << to_string(a);
        ASSERT_EQ(res.report.residual_l2_history.size(), 1u) << to_string(a);
        ASSERT_EQ(res.report.residual_l0_history.size(), 1u) << to_string(a);
        for (double v : res.x_hat) EXPECT_EQ(v, 0.0);
    }
}

TEST(Decode, ValidatesDimensionsAndParameters) {
    const auto A = ExpanderMatrix::generate(16, 24, 3, 1);
    const std::vector<double> y(15, 0.0);
    EXPECT_THROW(decode(A, y, {}), std::invalid_argument);

    const std::vector<double> y_ok(16, 0.0);
    DecodeConfig cfg;
    cfg.alpha = 1.0;   // must be > 1
    EXPECT_THROW(decode(A, y_ok, cfg), std::invalid_argument);
    cfg.alpha = 4.0;   // must be <= d
    EXPECT_THROW(decode(A, y_ok, cfg), std::invalid_argument);
    cfg = config_for(Algorithm::smp, 0);
    EXPECT_THROW(decode(A, y_ok, cfg), std::invalid_argument);
    cfg = config_for(Algorithm::ssmp, 2);
    cfg.c = 1.0;
    EXPECT_THROW(decode(A, y_ok, cfg), std::invalid_argument);
    cfg = config_for(Algorithm::serial_l0);
    cfg.tol = 0.0;
    EXPECT_THROW(decode(A, y_ok, cfg), std::invalid_argument);
}

TEST(SerialL0, SingleColumnExactWithinOneSweep) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto A = ExpanderMatrix::generate(24, 32, 5, 900 + seed);
        SparseSignal x;
        x.n = 32;
        x.support = {static_cast<std::uint32_t>(seed % 32)};
        x.values = {3.5};
        const auto y = A.apply(x.dense());
        const auto res = decode(A, y, config_for(Algorithm::serial_l0));
        EXPECT_TRUE(res.report.converged);
        EXPECT_LE(res.report.iterations, 32u);   // at most n column visits
        EXPECT_TRUE(recovery_exact(x, res.x_hat));
    }
}

TEST(SerialL0, SmallInstancesExactAcrossSeeds) {
    int exact = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto A = ExpanderMatrix::generate(256, 1024, 7, 1000 + seed);
        SignalSpec spec;
        spec.seed = 2000 + seed;
        const auto x = sample_signal(1024, 8, spec);
        const auto y = A.apply(x.dense());
        const auto res = decode(A, y, config_for(Algorithm::serial_l0));
        if (res.report.converged && recovery_exact(x, res.x_hat)) ++exact;
    }
    EXPECT_EQ(exact, 50);
}

TEST(SerialL0, HistoryTracksColumnVisits) {
    const auto A = ExpanderMatrix::generate(24, 32, 5, 3);
    SignalSpec spec;
    spec.seed = 4;
    const auto x = sample_signal(32, 3, spec);
    const auto res = decode(A, A.apply(x.dense()), config_for(Algorithm::serial_l0));
    EXPECT_TRUE(res.report.converged);
    EXPECT_EQ(res.report.residual_l2_history.size(), res.report.iterations + 1);
    EXPECT_EQ(res.report.residual_l0_history.size(), res.report.iterations + 1);
}

TEST(ParallelL0, DisjointColumnsOneIteration) {
    // three disjoint support columns; fillers live on rows 9..11 where y = 0
    std::vector<std::uint32_t> cols = {0, 1, 2, 3, 4, 5, 6, 7, 8};
    for (int f = 0; f < 10; ++f) cols.insert(cols.end(), {9, 10, 11});
    const auto A = ExpanderMatrix::from_columns(12, 13, 3, std::move(cols));
    SparseSignal x;
    x.n = 13;
    x.support = {0, 1, 2};
    x.values = {1.25, -0.5, 2.75};
    const auto y = A.apply(x.dense());
    const auto res = decode(A, y, config_for(Algorithm::parallel_l0));
    EXPECT_TRUE(res.report.converged);
    EXPECT_EQ(res.report.iterations, 1u);
    EXPECT_TRUE(recovery_exact(x, res.x_hat));
}

TEST(ParallelL0, IterationBoundAtDeskScale) {
    const std::uint32_t m = 1u << 11, n = 1u << 14, d = 7;
    const std::uint32_t k = static_cast<std::uint32_t>(std::llround(0.1 * m));
    const double bound = std::log2(static_cast<double>(k)) + 5.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto A = ExpanderMatrix::generate(m, n, d, 3000 + seed);
        SignalSpec spec;
        spec.seed = 4000 + seed;
        const auto x = sample_signal(n, k, spec);
        const auto res = decode(A, A.apply(x.dense()), config_for(Algorithm::parallel_l0));
        EXPECT_TRUE(res.report.converged) << "seed " << seed;
        EXPECT_TRUE(recovery_exact(x, res.x_hat)) << "seed " << seed;
        EXPECT_LE(static_cast<double>(res.report.iterations), bound) << "seed " << seed;
    }
}

TEST(Lddsr, SingleColumnOneUpdate) {
    const auto A = ExpanderMatrix::generate(24, 32, 5, 5);
    SparseSignal x;
    x.n = 32;
    x.support = {7};
    x.values = {-2.25};
    const auto res = decode(A, A.apply(x.dense()), config_for(Algorithm::lddsr));
    EXPECT_TRUE(res.report.converged);
    EXPECT_EQ(res.report.iterations, 1u);
    EXPECT_TRUE(recovery_exact(x, res.x_hat));
}

TEST(Lddsr, ConvergedRunsMatchExhaustiveOracle) {
    int converged = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto A = ExpanderMatrix::generate(10, 14, 3, 5000 + seed);
        SignalSpec spec;
        spec.seed = 6000 + seed;
        const auto x = sample_signal(14, 2, spec);
        const auto y = A.apply(x.dense());
        const auto res = decode(A, y, config_for(Algorithm::lddsr));
        if (!res.report.converged) continue;
        ++converged;
        const auto solutions = test::exhaustive_support_solutions(A, y, 2);
        bool matched = false;
        for (const auto& sol : solutions) {
            bool eq = true;
            for (std::uint32_t i = 0; i < 14; ++i)
                eq = eq && std::abs(sol[i] - res.x_hat[i]) <= 1e-8 * std::max(1.0, std::abs(sol[i]));
            matched = matched || eq;
        }
        EXPECT_TRUE(matched) << "seed " << seed;
    }
    EXPECT_GT(converged, 10);
}

TEST(Er, SingleColumnOneIteration) {
    const auto A = ExpanderMatrix::generate(24, 32, 5, 6);
    SparseSignal x;
    x.n = 32;
    x.support = {11};
    x.values = {4.0};
    const auto res = decode(A, A.apply(x.dense()), config_for(Algorithm::er));
    EXPECT_TRUE(res.report.converged);
    EXPECT_EQ(res.report.iterations, 1u);
    EXPECT_TRUE(recovery_exact(x, res.x_hat));
}

TEST(Er, IterationCountLinearInK) {
    const std::uint32_t m = 1u << 11, n = 1u << 14, d = 7;
    const std::uint32_t k = static_cast<std::uint32_t>(std::llround(0.1 * m));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto A = ExpanderMatrix::generate(m, n, d, 7000 + seed);
        SignalSpec spec;
        spec.seed = 8000 + seed;
        const auto x = sample_signal(n, k, spec);
        const auto res = decode(A, A.apply(x.dense()), config_for(Algorithm::er, k));
        EXPECT_TRUE(res.report.converged) << "seed " << seed;
        EXPECT_GE(res.report.iterations, static_cast<std::uint64_t>(k));
        EXPECT_LE(res.report.iterations, 10ull * k);
    }
}

TEST(Smp, SingleColumnOneIterationOnCertifiedInstance) {
    const auto inst = test::make_certified_instance(1, 99);
    auto cfg = config_for(Algorithm::smp, 1);
    const auto res = decode(inst.A, inst.y, cfg);
    EXPECT_TRUE(res.report.converged);
    EXPECT_EQ(res.report.iterations, 1u);
    EXPECT_TRUE(recovery_exact(inst.x, res.x_hat));
}

TEST(Smp, EasyRegionHighSuccessRate) {
    const std::uint32_t n = 1u << 14, d = 7;
    const std::uint32_t m = static_cast<std::uint32_t>(std::llround(0.3 * n));
    const std::uint32_t k = static_cast<std::uint32_t>(std::llround(0.02 * m));
    int exact = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto A = ExpanderMatrix::generate(m, n, d, 9000 + seed);
        SignalSpec spec;
        spec.seed = 10000 + seed;
        const auto x = sample_signal(n, k, spec);
        const auto res = decode(A, A.apply(x.dense()), config_for(Algorithm::smp, k));
        if (res.report.converged && recovery_exact(x, res.x_hat)) ++exact;
    }
    EXPECT_GE(exact, 45);   // >= 90% of 50
}

TEST(Ssmp, SingleColumnOneIteration) {
    const auto inst = test::make_certified_instance(1, 123);
    const auto res = decode(inst.A, inst.y, config_for(Algorithm::ssmp, 1));
    EXPECT_TRUE(res.report.converged);
    EXPECT_EQ(res.report.iterations, 1u);
    EXPECT_TRUE(recovery_exact(inst.x, res.x_hat));
}

TEST(Ssmp, L1ResidualStrictlyDecreasing) {
    const std::uint32_t n = 1u << 12, d = 7;
    const std::uint32_t m = static_cast<std::uint32_t>(std::llround(0.1 * n));
    const std::uint32_t k = static_cast<std::uint32_t>(std::llround(0.05 * m));
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto A = ExpanderMatrix::generate(m, n, d, 11000 + seed);
        SignalSpec spec;
        spec.seed = 12000 + seed;
        const auto x = sample_signal(n, k, spec);
        auto cfg = config_for(Algorithm::ssmp, k);
        double prev_l1 = 0.0;
        const auto y = A.apply(x.dense());
        for (double v : y) prev_l1 += std::abs(v);
        bool monotone = true;
        cfg.on_iteration = [&](const DecoderState& st) {
            double l1 = 0.0;
            for (double v : st.r) l1 += std::abs(v);
            monotone = monotone && (l1 < prev_l1 - 1e-12 || st.r_l0 == 0);
            prev_l1 = l1;
        };
        const auto res = decode(A, y, cfg);
        EXPECT_TRUE(res.report.converged) << "seed " << seed;
        EXPECT_TRUE(monotone) << "seed " << seed;
    }
}

TEST(ParallelLddsr, MatchesParallelL0WithFrequencyThreshold) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto A = ExpanderMatrix::generate(64, 256, 7, 13000 + seed);
        SignalSpec spec;
        spec.seed = 14000 + seed;
        const auto x = sample_signal(256, 8, spec);
        const auto y = A.apply(x.dense());

        const auto lddsr = decode(A, y, config_for(Algorithm::parallel_lddsr));
        DecodeConfig cfg = config_for(Algorithm::parallel_l0);
        cfg.freq_threshold = 7 / 2 + 1;
        const auto via_l0 = decode(A, y, cfg);

        EXPECT_EQ(lddsr.report.converged, via_l0.report.converged);
        EXPECT_EQ(lddsr.report.iterations, via_l0.report.iterations);
        EXPECT_EQ(lddsr.x_hat, via_l0.x_hat);
        EXPECT_EQ(lddsr.report.residual_l2_history, via_l0.report.residual_l2_history);
        EXPECT_EQ(lddsr.report.residual_l0_history, via_l0.report.residual_l0_history);
    }
}

TEST(Decode, BitIdenticalAcrossRepeatedRuns) {
    const auto A = ExpanderMatrix::generate(128, 512, 7, 21000);
    SignalSpec spec;
    spec.seed = 21001;
    const auto x = sample_signal(512, 10, spec);
    const auto y = A.apply(x.dense());
    for (Algorithm a : kAll) {
        const auto r1 = decode(A, y, config_for(a, 10));
        const auto r2 = decode(A, y, config_for(a, 10));
        EXPECT_EQ(r1.x_hat, r2.x_hat) << to_string(a);
        EXPECT_EQ(r1.report.iterations, r2.report.iterations) << to_string(a);
        EXPECT_EQ(r1.report.residual_l2_history, r2.report.residual_l2_history) << to_string(a);
        EXPECT_EQ(r1.report.residual_l0_history, r2.report.residual_l0_history) << to_string(a);
    }
}

TEST(Decode, StallReportsCleanNonConvergence) {
    // a lone spike is not expressible by any column at alpha = 2
    const auto A = ExpanderMatrix::generate(16, 24, 3, 15);
    std::vector<double> y(16, 0.0);
    y[0] = 1.0;
    for (Algorithm a : {Algorithm::parallel_l0, Algorithm::serial_l0, Algorithm::er,
                        Algorithm::lddsr, Algorithm::parallel_lddsr}) {
        const auto res = decode(A, y, config_for(a, 1));
        EXPECT_FALSE(res.report.converged) << to_string(a);
    }
}

TEST(Decode, ForcedShiftedScoreStillConverges) {
    const auto A = ExpanderMatrix::generate(24, 32, 5, 16);
    SignalSpec spec;
    spec.seed = 17;
    const auto x = sample_signal(32, 2, spec);
    DecodeConfig cfg = config_for(Algorithm::parallel_l0);
    cfg.alpha = 4.0;       // would use the majority score by default
    cfg.shifted = true;    // force Algorithm-9 shifting
    const auto res = decode(A, A.apply(x.dense()), cfg);
    EXPECT_TRUE(res.report.converged);
    EXPECT_TRUE(recovery_exact(x, res.x_hat));
}

TEST(Decode, ExactModeConvergesOnIntegerInstances) {
    const auto A = ExpanderMatrix::generate(32, 64, 5, 21);
    const auto scales = scale_columns_dissociated(A, 22);
    SignalSpec spec;
    spec.kind = SignalKind::integer;
    spec.seed = 23;
    const auto x = sample_signal(64, 3, spec);
    std::vector<double> scaled = x.dense();
    for (std::uint32_t j = 0; j < 64; ++j) scaled[j] *= scales[j];
    DecodeConfig cfg = config_for(Algorithm::parallel_l0);
    cfg.exact_mode = true;
    const auto res = decode(A, A.apply(scaled), cfg);
    EXPECT_TRUE(res.report.converged);
    ASSERT_EQ(res.report.residual_l0_history.back(), 0u);
}

// Column scaling makes non-dissociated signals recoverable: an all-equal
// signal at moderate k defeats the plain decoder (massive subset-sum
// collisions) while the scaled decode succeeds.
TEST(Decode, ColumnScalingRecoversAllOnesSignals) {
    const std::uint32_t m = 512, n = 4096, d = 7, k = 50;
    int unscaled_ok = 0, scaled_ok = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto A = ExpanderMatrix::generate(m, n, d, 15000 + seed);
        SignalSpec spec;
        spec.seed = 16000 + seed;
        auto x = sample_signal(n, k, spec);
        for (auto& v : x.values) v = 1.0;
        const auto x_dense = x.dense();

        const auto plain = decode(A, A.apply(x_dense), config_for(Algorithm::parallel_l0, k));
        if (plain.report.converged && recovery_exact(x, plain.x_hat)) ++unscaled_ok;

        const auto scales = scale_columns_dissociated(A, 17000 + seed);
        std::vector<double> scaled = x_dense;
        for (std::uint32_t j = 0; j < n; ++j) scaled[j] *= scales[j];
        auto res = decode(A, A.apply(scaled), config_for(Algorithm::parallel_l0, k));
        for (std::uint32_t j = 0; j < n; ++j) res.x_hat[j] /= scales[j];
        if (res.report.converged && recovery_exact(x, res.x_hat)) ++scaled_ok;
    }
    EXPECT_GE(scaled_ok, 36);        // >= 90%
    EXPECT_LT(unscaled_ok, scaled_ok);
    EXPECT_LE(unscaled_ok, 4);       // plain decoding collapses
}

// Small-instance version of the scaled-recovery example, verified against
// the exhaustive-support oracle.
TEST(Decode, ScaledBinaryPairMatchesOracle) {
    const auto A = ExpanderMatrix::generate(12, 16, 5, 77);
    SparseSignal x;
    x.n = 16;
    x.support = {3, 9};
    x.values = {1.0, 1.0};
    const auto scales = scale_columns_dissociated(A, 78);
    std::vector<double> scaled = x.dense();
    for (std::uint32_t j = 0; j < 16; ++j) scaled[j] *= scales[j];
    const auto y = A.apply(scaled);

    auto res = decode(A, y, config_for(Algorithm::parallel_l0, 2));
    ASSERT_TRUE(res.report.converged);
    const auto solutions = test::exhaustive_support_solutions(A, y, 2);
    ASSERT_EQ(solutions.size(), 1u);
    for (std::uint32_t j = 0; j < 16; ++j)
        EXPECT_NEAR(res.x_hat[j], solutions[0][j], 1e-9);
    for (std::uint32_t j = 0; j < 16; ++j) res.x_hat[j] /= scales[j];
    EXPECT_TRUE(recovery_exact(x, res.x_hat));
}

} // namespace
} // namespace ccs
