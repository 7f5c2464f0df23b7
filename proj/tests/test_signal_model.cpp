#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "ccs/signal_model.hpp"
#include "oracles.hpp"

namespace ccs {
namespace {

SignalSpec gaussian_spec(std::uint64_t seed) {
    SignalSpec s;
    s.seed = seed;
    return s;
}

TEST(SampleSignal, GaussianBasics) {
    const auto x = sample_signal(100, 5, gaussian_spec(1));
    EXPECT_EQ(x.n, 100u);
    ASSERT_EQ(x.k(), 5u);
    std::set<std::uint32_t> idx(x.support.begin(), x.support.end());
    EXPECT_EQ(idx.size(), 5u);
    EXPECT_TRUE(std::is_sorted(x.support.begin(), x.support.end()));
    std::set<double> vals(x.values.begin(), x.values.end());
    EXPECT_EQ(vals.size(), 5u);   // continuous draws are a.s. distinct
    for (double v : x.values) EXPECT_NE(v, 0.0);
    for (std::uint32_t i : x.support) EXPECT_LT(i, 100u);
}

TEST(SampleSignal, DeterministicPerSeed) {
    const auto a = sample_signal(64, 6, gaussian_spec(9));
    const auto b = sample_signal(64, 6, gaussian_spec(9));
    EXPECT_EQ(a.support, b.support);
    EXPECT_EQ(a.values, b.values);
    const auto c = sample_signal(64, 6, gaussian_spec(10));
    EXPECT_TRUE(a.support != c.support || a.values != c.values);
}

TEST(SampleSignal, BandedGroupSizes) {
    // band=0.5, k=10: exactly 5 equal values, 5 pairwise distinct others
    SignalSpec spec;
    spec.kind = SignalKind::banded;
    spec.band = 0.5;
    spec.seed = 3;
    const auto x = sample_signal(100, 10, spec);
    std::map<double, int> groups;
    for (double v : x.values) ++groups[v];
    int max_group = 0, num_groups = 0;
    for (const auto& [v, cnt] : groups) {
        max_group = std::max(max_group, cnt);
        ++num_groups;
    }
    EXPECT_EQ(max_group, 5);
    EXPECT_EQ(num_groups, 6);
}

TEST(SampleSignal, BandedCeilingRule) {
    for (const auto& [band, k, want] : std::vector<std::tuple<double, std::uint32_t, int>>{
             {0.3, 10, 3}, {0.25, 10, 3}, {0.9, 7, 7}, {0.05, 4, 1}}) {
        SignalSpec spec;
        spec.kind = SignalKind::banded;
        spec.band = band;
        spec.seed = 11;
        const auto x = sample_signal(200, k, spec);
        std::map<double, int> groups;
        for (double v : x.values) ++groups[v];
        int max_group = 0;
        for (const auto& [v, cnt] : groups) max_group = std::max(max_group, cnt);
        EXPECT_EQ(max_group, std::max(want, 1)) << "band=" << band << " k=" << k;
    }
}

TEST(SampleSignal, BandZeroMatchesGaussianDrawForDraw) {
    SignalSpec spec;
    spec.kind = SignalKind::banded;
    spec.band = 0.0;
    spec.seed = 21;
    const auto banded = sample_signal(128, 9, spec);
    const auto gauss = sample_signal(128, 9, gaussian_spec(21));
    EXPECT_EQ(banded.support, gauss.support);
    EXPECT_EQ(banded.values, gauss.values);
}

TEST(SampleSignal, IntegerKindRange) {
    SignalSpec spec;
    spec.kind = SignalKind::integer;
    spec.seed = 5;
    const auto x = sample_signal(50, 20, spec);
    for (double v : x.values) {
        EXPECT_EQ(v, std::floor(v));
        EXPECT_GE(v, 1.0);
        EXPECT_LE(v, 10.0);
    }
}

TEST(SampleSignal, InvalidArguments) {
    EXPECT_THROW(sample_signal(10, 0, gaussian_spec(1)), std::invalid_argument);
    EXPECT_THROW(sample_signal(10, 10, gaussian_spec(1)), std::invalid_argument);
    EXPECT_THROW(sample_signal(10, 11, gaussian_spec(1)), std::invalid_argument);
    SignalSpec bad;
    bad.kind = SignalKind::banded;
    bad.band = 1.0;
    EXPECT_THROW(sample_signal(10, 3, bad), std::invalid_argument);
}

TEST(IsDissociated, BinaryWeightsAreDissociated) {
    SparseSignal x;
    x.n = 10;
    x.support = {1, 4, 7};
    x.values = {1.0, 2.0, 4.0};
    EXPECT_TRUE(is_dissociated(x));
}

TEST(IsDissociated, ExplicitCollision) {
    SparseSignal x;
    x.n = 10;
    x.support = {1, 4, 7};
    x.values = {1.0, 2.0, 3.0};   // 1 + 2 = 3
    EXPECT_FALSE(is_dissociated(x));
}

TEST(IsDissociated, MatchesPairwiseOracle) {
    // k = 12 standard normals: compare the sorted-gap implementation with
    // a quadratic all-pairs oracle.
    const auto x = sample_signal(64, 12, gaussian_spec(33));
    const std::size_t total = std::size_t{1} << 12;
    std::vector<double> sums(total, 0.0);
    for (std::size_t mask = 1; mask < total; ++mask) {
        std::size_t bit = 0;
        while (!(mask & (std::size_t{1} << bit))) ++bit;
        sums[mask] = sums[mask & (mask - 1)] + x.values[bit];
    }
    bool collision = false;
    for (std::size_t a = 0; a < total && !collision; ++a)
        for (std::size_t b = a + 1; b < total; ++b)
            if (sums_collide(sums[a], sums[b], 1e-10)) {
                collision = true;
                break;
            }
    EXPECT_EQ(is_dissociated(x), !collision);
    EXPECT_TRUE(is_dissociated(x));   // a.s. for continuous draws
}

TEST(IsDissociated, BudgetGuard) {
    SparseSignal x;
    x.n = 64;
    for (std::uint32_t i = 0; i < 23; ++i) {
        x.support.push_back(i);
        x.values.push_back(std::pow(2.0, static_cast<double>(i)));
    }
    EXPECT_THROW(is_dissociated(x), budget_error);
    EXPECT_TRUE(is_dissociated(x, 1e-10, /*override_budget=*/true));
}

// At the default 1e-10 bucketing, 2^k gaussian subset sums develop
// birthday near-collisions from k ~ 16 on (the sums pack a bounded range),
// so the large-k checks run at a tolerance matched to the sum density.
TEST(IsDissociated, GaussianDrawsAcrossSeedsAndSparsity) {
    for (std::uint32_t k = 1; k <= 12; ++k)
        for (std::uint64_t seed = 0; seed < 100; ++seed)
            EXPECT_TRUE(is_dissociated(sample_signal(64, k, gaussian_spec(seed * 31 + k))))
                << "k=" << k << " seed=" << seed;
    for (std::uint32_t k = 13; k <= 22; ++k)
        for (std::uint64_t seed = 0; seed < 5; ++seed)
            EXPECT_TRUE(is_dissociated(sample_signal(64, k, gaussian_spec(seed * 17 + k)), 1e-14))
                << "k=" << k << " seed=" << seed;
}

TEST(IsDissociated, MonotoneUnderRestriction) {
    Rng rng(77);
    const auto x = sample_signal(64, 10, gaussian_spec(55));
    ASSERT_TRUE(is_dissociated(x));
    for (int rep = 0; rep < 50; ++rep) {
        SparseSignal sub;
        sub.n = x.n;
        for (std::uint32_t i = 0; i < x.k(); ++i) {
            if (rng.below(2)) {
                sub.support.push_back(x.support[i]);
                sub.values.push_back(x.values[i]);
            }
        }
        if (sub.k() == 0) continue;
        EXPECT_TRUE(is_dissociated(sub));
    }
}

TEST(ScaleColumns, DeterministicAndNonzero) {
    const auto A = ExpanderMatrix::generate(16, 24, 3, 2);
    const auto s1 = scale_columns_dissociated(A, 4);
    const auto s2 = scale_columns_dissociated(A, 4);
    EXPECT_EQ(s1, s2);
    ASSERT_EQ(s1.size(), 24u);
    for (double v : s1) EXPECT_NE(v, 0.0);
    const auto s3 = scale_columns_dissociated(A, 5);
    EXPECT_NE(s1, s3);
}

TEST(RecoveryExact, MatchesEntrywise) {
    const auto x = sample_signal(32, 4, gaussian_spec(8));
    std::vector<double> hat = x.dense();
    EXPECT_TRUE(recovery_exact(x, hat));
    hat[x.support[0]] += 1e-3;
    EXPECT_FALSE(recovery_exact(x, hat));
    hat = x.dense();
    hat[(x.support[0] + 1) % 32] = 1e-2;   // spurious entry off support
    EXPECT_FALSE(recovery_exact(x, hat));
}

} // namespace
} // namespace ccs
