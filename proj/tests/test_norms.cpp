#include "oracles.hpp"

#include "qm/errors.hpp"
#include "qm/kernel.hpp"
#include "qm/kernel_functionals.hpp"
#include "qm/norms.hpp"
#include "qm/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace {

using qm::CutMode;
using qm::NormStrategy;
using qm::PermStrategy;
using qm::StepKernel;

double exact_cut(const qm::StepFunction& d, CutMode mode) { return qm::cut_norm(d, mode, NormStrategy::exact).value; }

double brute_cut(const qm::StepFunction& d, CutMode mode) {
    const int k = d.parts();
    std::vector<std::vector<double>> m(k, std::vector<double>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m[i][j] = d(i, j);
    return oracle::cut_bruteforce(m, {d.weights().begin(), d.weights().end()}, mode == CutMode::pm ? -1 : 0);
}

TEST(L1Distance, Examples) {
    const auto w = qm::random_kernel(6, 2);
    EXPECT_EQ(qm::l1_distance(w, w), 0.0);
    EXPECT_NEAR(qm::l1_distance(qm::constant_kernel(1, 3), qm::constant_kernel(0, 5)), 1.0, 1e-12);
    EXPECT_NEAR(qm::l1_distance(qm::constant_kernel(0.2, 2), qm::constant_kernel(0.7, 3)), 0.5, 1e-12);
    EXPECT_NEAR(qm::l1_distance(w, qm::refine(w, 3)), 0.0, 1e-12);
}

TEST(L1Distance, TightnessPairShrinks) {
    double prev = 1.0;
    for (int k : {4, 8, 16, 32}) {
        double mean = 0.0;
        for (std::uint64_t s = 0; s < 5; ++s) {
            const auto p = qm::pair_23best(k, s);
            mean += qm::l1_distance(p.first, p.second) / 5;
        }
        EXPECT_LT(mean, prev);
        EXPECT_GT(mean * k, 0.05);
        EXPECT_LT(mean * k, 1.0);
        prev = mean;
    }
}

TEST(L1Distance, RejectsOversizedRefinement) {
    const StepKernel a({0.3, 0.7}, {0, 0, 0, 0});
    std::vector<double> w(300, 1.0 / 300);
    EXPECT_THROW(qm::l1_distance(a, StepKernel(w, std::vector<double>(90000, 0.0))), qm::InvalidInput);
}

TEST(CutNorm, Examples) {
    const auto zero = qm::SignedStepFunction::equal(3, std::vector<double>(9, 0.0));
    EXPECT_EQ(exact_cut(zero, CutMode::pm), 0.0);
    const auto d = qm::difference(qm::kmm_kernel(2), qm::constant_kernel(0.5, 4));
    const auto r = qm::cut_norm(d, CutMode::pm, NormStrategy::exact);
    EXPECT_NEAR(r.value, 0.5, 1e-12);
    EXPECT_EQ(r.bound, qm::BoundKind::exact);
    EXPECT_NEAR(qm::cut_value(d, r.witness_f, r.witness_g), r.value, 1e-9);
    const std::vector<int> sides{1, 1, -1, -1};
    EXPECT_NEAR(qm::cut_value(d, sides, sides), 0.5, 1e-12);
}

TEST(CutNorm, MatchesBruteForce) {
    for (std::uint64_t s = 0; s < 40; ++s) {
        const int k = 1 + static_cast<int>(s % 8);
        const auto d = qm::random_signed(k, s);
        for (auto mode : {CutMode::pm, CutMode::zeroone}) {
            const auto r = qm::cut_norm(d, mode, NormStrategy::exact);
            EXPECT_NEAR(r.value, brute_cut(d, mode), 1e-12);
            EXPECT_NEAR(qm::cut_value(d, r.witness_f, r.witness_g), r.value, 1e-9);
        }
    }
    const StepKernel a({0.1, 0.2, 0.3, 0.4}, {0, 1, 0.5, 0.2, 1, 0, 0.3, 0.9, 0.5, 0.3, 1, 0, 0.2, 0.9, 0, 0.4});
    const auto d = qm::difference(a, StepKernel({0.1, 0.2, 0.3, 0.4}, std::vector<double>(16, 0.5)));
    EXPECT_NEAR(exact_cut(d, CutMode::pm), brute_cut(d, CutMode::pm), 1e-12);
}

TEST(CutNorm, LocalSearchIsLowerBound) {
    qm::NormOptions opts;
    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto d = qm::random_signed(6 + static_cast<int>(s % 10), s);
        opts.seed = s;
        for (auto mode : {CutMode::pm, CutMode::zeroone}) {
            const auto local = qm::cut_norm(d, mode, NormStrategy::local_search, opts);
            EXPECT_EQ(local.bound, qm::BoundKind::lower_bound);
            EXPECT_LE(local.value, exact_cut(d, mode) + 1e-12);
            EXPECT_NEAR(qm::cut_value(d, local.witness_f, local.witness_g), local.value, 1e-9);
        }
    }
}

TEST(CutNorm, SizeLimit) {
    const auto d = qm::random_signed(23, 1);
    EXPECT_THROW(qm::cut_norm(d, CutMode::pm, NormStrategy::exact), qm::SizeLimitExceeded);
    qm::NormOptions opts;
    opts.allow_heuristic = true;
    EXPECT_EQ(qm::cut_norm(d, CutMode::pm, NormStrategy::exact, opts).bound, qm::BoundKind::lower_bound);
}

TEST(CutNorm, ModesEquivalent) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto d = qm::random_signed(2 + static_cast<int>(s % 12), s);
        const double pm = exact_cut(d, CutMode::pm);
        const double z = exact_cut(d, CutMode::zeroone);
        EXPECT_LE(z, pm + 1e-9);
        EXPECT_LE(pm, 4 * z + 1e-9);
    }
}

TEST(CutNorm, MarginalBound) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto d = qm::random_signed(2 + static_cast<int>(s % 12), s);
        const auto m = qm::marginal(d);
        double l1 = 0.0;
        for (int i = 0; i < d.parts(); ++i) l1 += d.weight(i) * std::abs(m[i]);
        EXPECT_LE(l1, exact_cut(d, CutMode::pm) + 1e-9);
    }
}

TEST(CutNorm, CoarseningBound) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const int k = 4 + static_cast<int>(s % 13);
        const auto d = qm::random_signed(k, s);
        const int groups = 1 + static_cast<int>(s % 4);
        std::vector<int> grouping(k);
        for (int i = 0; i < k; ++i) grouping[i] = i * groups / k;
        EXPECT_LE(qm::l1_norm(qm::coarsen(d, grouping)), std::sqrt(2.0 * groups) * exact_cut(d, CutMode::pm) + 1e-9);
    }
}

TEST(CutNorm, MonotoneMainInequality) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const int k = 2 + static_cast<int>(s % 15);
        const auto a = qm::random_monotone(k, 2 * s);
        const auto b = qm::random_monotone(k, 2 * s + 1);
        const double cut = exact_cut(qm::difference(a, b), CutMode::pm);
        EXPECT_LE(qm::l1_distance(a, b), 10 * std::pow(cut, 2.0 / 3.0) + 1e-9);
    }
}

TEST(PermCutDistance, Examples) {
    const auto w = qm::random_kernel(5, 4);
    const std::vector<int> p{3, 0, 4, 1, 2};
    const auto r = qm::perm_cut_distance(w, qm::permuted(w, p), CutMode::pm, PermStrategy::exact);
    EXPECT_NEAR(r.value, 0.0, 1e-12);
    EXPECT_EQ(r.witness_perm.size(), 5U);
    EXPECT_NEAR(qm::perm_cut_distance(qm::constant_kernel(0.2, 4), qm::constant_kernel(0.9, 4), CutMode::pm,
                                      PermStrategy::exact).value,
                0.7, 1e-12);
    EXPECT_EQ(r.bound, qm::BoundKind::upper_bound);
    EXPECT_THROW(qm::perm_cut_distance(w, qm::random_kernel(4, 1), CutMode::pm, PermStrategy::exact), qm::InvalidInput);
    EXPECT_THROW(qm::perm_cut_distance(qm::random_kernel(9, 1), qm::random_kernel(9, 2), CutMode::pm, PermStrategy::exact),
                 qm::SizeLimitExceeded);
}

TEST(PermCutDistance, MonotonePairs) {
    for (std::uint64_t s = 0; s < 40; ++s) {
        const int k = 2 + static_cast<int>(s % 5);
        const auto a = qm::random_monotone(k, 3 * s);
        const auto b = qm::random_monotone(k, 3 * s + 1);
        const auto d = qm::difference(a, b);
        const double exact01 = qm::perm_cut_distance(a, b, CutMode::zeroone, PermStrategy::exact).value;
        const double aligned01 = qm::perm_cut_distance(a, b, CutMode::zeroone, PermStrategy::marginal_align).value;
        EXPECT_NEAR(exact01, aligned01, 1e-9);
        EXPECT_NEAR(exact01, exact_cut(d, CutMode::zeroone), 1e-9);
        const double pm = qm::perm_cut_distance(a, b, CutMode::pm, PermStrategy::exact).value;
        EXPECT_GE(4 * pm + 1e-9, exact_cut(d, CutMode::pm));
    }
}

TEST(PermL1Distance, Examples) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const int k = 2 + static_cast<int>(s % 6);
        const auto a = qm::random_monotone(k, 2 * s);
        const auto b = qm::random_monotone(k, 2 * s + 1);
        EXPECT_NEAR(qm::perm_l1_distance(a, b, PermStrategy::exact).value, qm::l1_distance(a, b), 1e-12);
        const auto w = qm::random_kernel(k, s);
        auto p = qm::identity_parts(k);
        std::reverse(p.begin(), p.end());
        EXPECT_NEAR(qm::perm_l1_distance(w, qm::permuted(w, p), PermStrategy::exact).value, 0.0, 1e-12);
        const auto v = qm::random_kernel(k, s + 100);
        EXPECT_LE(qm::perm_l1_distance(w, v, PermStrategy::exact).value, qm::l1_distance(w, v) + 1e-12);
    }
}

} // namespace
