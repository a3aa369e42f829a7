#include <gtest/gtest.h>

#include <limits>
#include <numbers>

#include "qdf/costmodel.hpp"
#include "qdf/errors.hpp"
#include "qdf/oracle.hpp"
#include "test_support.hpp"

using namespace qdf;

namespace {

// Exhaustive scans over the ancilla parameter; no block tricks.
count_t scan_clean(count_t d, count_t b, count_t lam)
{
    count_t best = std::numeric_limits<count_t>::max();
    for (count_t l = 0; l <= lam; ++l)
        best = std::min(best, (d + l) / (1 + l) + l * b);
    return best;
}

count_t scan_clean_u(count_t d, count_t lam)
{
    return scan_clean(d, 1, lam);
}

count_t scan_dirty(count_t d, count_t b, count_t budget, count_t per_l)
{
    count_t best = d;
    for (count_t l = 1; l * b <= budget; ++l)
        best = std::min(best, (2 * d + l) / (1 + l) + per_l * l);
    return best;
}

count_t scan_rotation_array(count_t m_rot, count_t k, count_t b, count_t kappa, count_t lam)
{
    count_t slices = (m_rot * b + kappa - 1) / kappa + 1;
    count_t best = std::numeric_limits<count_t>::max();
    for (count_t l = 0; l <= lam; ++l) {
        count_t copies = 1 + l / kappa;
        best = std::min(best, (k + copies - 1) / copies + (copies - 1) * kappa);
    }
    return slices * best;
}

HamiltonianSize row(std::size_t n, std::size_t r, std::size_t m, double alpha)
{
    return {n, r, m, n, alpha};
}

ErrorBudget mhartree()
{
    return ErrorBudget{1e-3, 0.9, 0.1};
}

} // namespace

TEST(CeilLog2, Values)
{
    EXPECT_EQ(ceil_log2(0), 0);
    EXPECT_EQ(ceil_log2(1), 0);
    EXPECT_EQ(ceil_log2(2), 1);
    EXPECT_EQ(ceil_log2(3), 2);
    EXPECT_EQ(ceil_log2(1024), 10);
    EXPECT_EQ(ceil_log2(1025), 11);
}

TEST(LookupClean, PinnedValues)
{
    EXPECT_EQ(lookup_clean(1024, 10, 0), 1024);
    EXPECT_EQ(lookup_clean(1024, 10, 7), 198);
}

TEST(LookupClean, AsymptoticBound)
{
    for (count_t d : {10, 100, 1000, 23566, 100000})
        for (count_t b : {1, 7, 30, 1800})
            EXPECT_LE(lookup_clean(d, b, 1 << 20), 2 * std::sqrt(double(b * d)) + b) << d << " " << b;
}

TEST(LookupCleanUncompute, PinnedValues)
{
    EXPECT_EQ(lookup_clean_uncompute(1024, 0), 1024);
    EXPECT_EQ(lookup_clean_uncompute(1024, 63), 63);
    EXPECT_EQ(scan_clean_u(1024, 63), 63);
    for (count_t d : {5, 64, 1000, 4097, 99999})
        EXPECT_LE(lookup_clean_uncompute(d, 1 << 20), 2 * std::sqrt(double(d)) + 1) << d;
}

TEST(LookupDirty, PinnedValues)
{
    EXPECT_EQ(lookup_dirty(1024, 10, 1 << 20), 533);
    EXPECT_EQ(lookup_dirty(1024, 10, 9), 1024);
    EXPECT_EQ(lookup_dirty_uncompute(1024, 10, 9), 1024);
    for (count_t d = 1; d < 300; d += 7)
        for (count_t budget : {0, 5, 50, 5000})
            EXPECT_LE(lookup_dirty(d, 3, budget), d);
}

TEST(CostFunctions, MatchExhaustiveScans)
{
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<count_t> dd(1, 5000), bb(1, 64), ll(0, 300);
    for (int t = 0; t < 200; ++t) {
        count_t d = dd(rng), b = bb(rng), lam = ll(rng);
        count_t budget = lam * b / 2 + ll(rng);
        ASSERT_EQ(lookup_clean(d, b, lam), scan_clean(d, b, lam)) << d << " " << b << " " << lam;
        ASSERT_EQ(lookup_clean_uncompute(d, lam), scan_clean_u(d, lam));
        ASSERT_EQ(lookup_dirty(d, b, budget), scan_dirty(d, b, budget, 4 * b));
        ASSERT_EQ(lookup_dirty_uncompute(d, b, budget), scan_dirty(d, b, budget, 4));
        count_t kappa = b + ll(rng) % 40, mrot = 1 + ll(rng) % 50;
        ASSERT_EQ(rotation_array_cost(mrot, d, b, kappa, lam), scan_rotation_array(mrot, d, b, kappa, lam));
    }
}

TEST(SparseLookup, SingleOuterIndex)
{
    const count_t q = 5000, b = 40, lam = 3;
    auto c = sparse_multiplexed_lookup(q, 1, b, lam);
    // With J=1 the shift lookup over one entry costs one Toffoli each way.
    EXPECT_EQ(c.compute, lookup_clean(q, b, lam) + 2 * ceil_log2(q) + 2);
    EXPECT_EQ(c.uncompute, lookup_clean_uncompute(q, lam) + 2 * ceil_log2(q) + 2);
}

TEST(SparseLookup, CatalystConfigurationMatchesScan)
{
    const count_t q = 23566, j = 613, b = 52 * 33, lam = 3;
    auto c = sparse_multiplexed_lookup(q, j, b, lam);
    const count_t lq = ceil_log2(q), dirty = 1 + b * (1 + lam);
    count_t shift = scan_dirty(j, lq, dirty, 4 * lq) + scan_dirty(j, lq, dirty, 4) + 2 * lq;
    EXPECT_EQ(c.compute, shift + scan_clean(q, b, lam));
    EXPECT_EQ(c.compute, 11693);
    EXPECT_GE(c.compute, lookup_clean(q, b, lam));
}

TEST(SparseLookup, ComputeDominatesPlainLookup)
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<count_t> u(1, 20000);
    for (int t = 0; t < 50; ++t) {
        count_t q = u(rng), j = 1 + u(rng) % q, b = 1 + u(rng) % 2000, lam = u(rng) % 20;
        EXPECT_GE(sparse_multiplexed_lookup(q, j, b, lam).compute, lookup_clean(q, b, lam));
    }
}

TEST(StatePrep, SingleCoefficient)
{
    auto c = state_prep_cost(1, 12, 12, 1000);
    EXPECT_EQ(c.toffoli, 12);
    EXPECT_EQ(c.error, std::ldexp(1.0, -12));
}

TEST(StatePrep, CatalystSizeMatchesScan)
{
    const count_t d = 613, mu = 12, b = ceil_log2(d) + mu;
    auto c = state_prep_cost(d, mu, b, 1 << 20);
    EXPECT_EQ(c.toffoli, mu + scan_dirty(d, b, 1 << 20, 4 * b));
    EXPECT_EQ(c.toffoli, 583);
    EXPECT_EQ(c.garbage_qubits, 2 * mu + 10);
}

TEST(StatePrep, CoefficientPrecisionGuarantee)
{
    // Rounding each p_j to within 2^-mu/d keeps the l1 error under 2^-mu.
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0, 1);
    for (count_t mu : {4, 8, 12}) {
        const count_t d = 37;
        std::vector<double> a(d);
        double s = 0;
        for (auto& x : a)
            s += (x = u(rng));
        double err = 0;
        const double step = std::ldexp(1.0, -static_cast<int>(mu)) / d;
        for (double x : a) {
            double p = x / s;
            err += std::abs(std::round(p / step) * step - p);
        }
        EXPECT_LE(err, state_prep_cost(d, mu, mu + 6, 0).error);
    }
}

TEST(RotationBits, Boundary)
{
    EXPECT_EQ(rotation_bits(1, std::numbers::pi / std::sqrt(2.0)), 1);
}

TEST(RotationBits, DoublingAddsOneBit)
{
    for (double eps : {1e-3, 3.7e-5, 2.2e-7})
        for (count_t n : {3, 54, 216, 1000})
            EXPECT_EQ(rotation_bits(2 * n, eps), rotation_bits(n, eps) + 1) << n << " " << eps;
}

TEST(RotationBits, PrecisionConstants)
{
    // 5.652 = 1 + log2(8 pi); 5.152 = 1/2 + log2(8 pi)
    EXPECT_NEAR(1.0 + std::log2(8 * std::numbers::pi), 5.652, 1e-3);
    EXPECT_NEAR(0.5 + std::log2(8 * std::numbers::pi), 5.152, 1e-3);
    for (double dw : {1e-7, 2.9e-7, 5.16e-7, 3e-6}) {
        auto p = precision_params(54, dw);
        EXPECT_EQ(p.beta1, rotation_bits(4 * 54, dw / 2));
        EXPECT_EQ(p.beta, rotation_bits(4 * 54, dw / (2 * std::sqrt(2.0))));
    }
}

TEST(RotationArray, SliceCounts)
{
    EXPECT_EQ(rotation_array_cost(4, 100, 2, 8, 0), 2 * 100);
    EXPECT_EQ(rotation_array_cost(4, 100, 2, 3, 0), 4 * 100);
}

TEST(RotationArray, MinimizedNearSqrtKKappa)
{
    const count_t k = 4096, kappa = 16, m = 64, b = 8;
    const double star = std::sqrt(double(k * kappa));
    count_t floor_cost = rotation_array_cost(m, k, b, kappa, 1 << 16);
    EXPECT_EQ(rotation_array_cost(m, k, b, kappa, static_cast<count_t>(2 * star)), floor_cost);
    EXPECT_GT(rotation_array_cost(m, k, b, kappa, static_cast<count_t>(star / 2)), floor_cost);
}

TEST(MajoranaAngles, BasisVectors)
{
    Eigen::VectorXd e0 = Eigen::VectorXd::Unit(5, 0);
    for (double t : majorana_angles(e0))
        EXPECT_EQ(t, 0.0);
    auto th = majorana_angles(Eigen::Vector2d(0, 1));
    ASSERT_EQ(th.size(), 1u);
    EXPECT_NEAR(th[0], std::numbers::pi / 4, 1e-15);
}

TEST(MajoranaAngles, RandomRoundTrip)
{
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    for (int t = 0; t < 50; ++t) {
        Eigen::VectorXd u(16);
        for (auto& x : u)
            x = g(rng);
        u.normalize();
        EXPECT_LE((majorana_vector(majorana_angles(u)) - u).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(MajoranaAngles, InternalZeros)
{
    Eigen::VectorXd u = Eigen::VectorXd::Zero(6);
    u(1) = -0.6;
    u(4) = 0.8;
    EXPECT_LE((majorana_vector(majorana_angles(u)) - u).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_THROW(majorana_angles(Eigen::VectorXd::Constant(1, -1.0)), ConfigError);
    EXPECT_THROW(majorana_angles(Eigen::Vector2d(1, 1)), ConfigError);
}

TEST(LeadingOrder, FemocoArithmetic)
{
    EXPECT_EQ(leading_order_walk_cost(54, 24000, 34, 4), 48800);
    const count_t expect[] = {66578, 54252, 49926, 48800, 49274};
    for (count_t lam = 1; lam <= 5; ++lam)
        EXPECT_EQ(leading_order_walk_cost(54, 24000, 34, lam), expect[lam - 1]);
}

TEST(WalkCost, DetailedSumNearLeadingOrder)
{
    // FeMoco at lambda=4: the detailed count should sit within 35% of 48800.
    auto w = walk_operator_cost(row(54, 567, 24000, 339.1), mhartree(), 4);
    ASSERT_EQ(w.precision.beta, 34);
    EXPECT_LE(std::abs(double(w.walk_toffoli) / 48800.0 - 1.0), 0.35) << "walk Toffoli " << w.walk_toffoli;
}

TEST(WalkCost, OneBodyOnly)
{
    auto w = walk_operator_cost(row(6, 0, 0, 2.0), mhartree(), 2);
    const auto& t = w.toffoli;
    EXPECT_EQ(t.lookup_compute + t.lookup_uncompute + t.rotations + t.controlled_swaps + t.state_prep, 0);
    EXPECT_GT(t.one_body, 0);
    EXPECT_EQ(w.walk_toffoli, t.one_body + t.reflection);
}

TEST(WalkCost, CatalystCoreQubits)
{
    auto w = walk_operator_cost(row(52, 613, 23566, 193.8), mhartree(), 1);
    ASSERT_EQ(w.precision.beta, 33);
    count_t core = w.qubits.angle_data + w.qubits.system;
    EXPECT_EQ(core, 3536);
    EXPECT_LE(std::abs(double(core) / 3447.0 - 1.0), 0.05);
}

TEST(PeRepetitions, Values)
{
    auto b = mhartree();
    EXPECT_EQ(pe_repetitions(2 * 0.9 * 1e-3 / std::numbers::pi, b), 1);
    // pi*193.8/0.0018 = 338244.81 and pi*339.1/0.0018 = 591841.15
    EXPECT_EQ(pe_repetitions(193.8, b), 338245);
    EXPECT_EQ(pe_repetitions(339.1, b), 591842);
}

TEST(ErrorBudget, Rejects)
{
    EXPECT_THROW((ErrorBudget{0.0, 0.9, 0.1}.check()), ConfigError);
    EXPECT_THROW((ErrorBudget{1e-3, 0.5, 0.1}.check()), ConfigError);
    EXPECT_THROW(pe_repetitions(0.0, mhartree()), ConfigError);
}

TEST(Estimate, ModesPickLambda)
{
    auto h = row(54, 567, 24000, 339.1);
    auto tof = estimate(h, mhartree(), LambdaMode::min_toffoli);
    for (count_t l = 0; l <= kLambdaMax; ++l) {
        count_t c = walk_operator_cost(h, mhartree(), l).walk_toffoli;
        EXPECT_GE(c, tof.walk_toffoli);
        if (l < tof.lambda)
            EXPECT_GT(c, tof.walk_toffoli);
    }
    auto q = estimate(h, mhartree(), LambdaMode::min_qubits);
    EXPECT_EQ(q.lambda, std::min<count_t>(1, tof.lambda));
    EXPECT_LE(q.logical_qubits, tof.logical_qubits);
    auto f = estimate(h, mhartree(), LambdaMode::fixed, 7);
    EXPECT_EQ(f.lambda, 7);
    EXPECT_EQ(f.total_toffoli, f.walk_toffoli * f.pe_repetitions);
    EXPECT_DOUBLE_EQ(f.runtime_fast_s, double(f.total_toffoli) * 1e-5);
}

TEST(Estimate, FemocoQubits)
{
    auto r = estimate(row(54, 567, 24000, 339.1), mhartree(), LambdaMode::min_qubits);
    EXPECT_LE(std::abs(double(r.logical_qubits) / 3700.0 - 1.0), 0.10) << r.logical_qubits;
}

TEST(Estimate, FemocoToffoli)
{
    auto r = estimate(row(54, 567, 24000, 339.1), mhartree(), LambdaMode::min_qubits);
    EXPECT_LE(std::abs(double(r.total_toffoli) / 3.0e10 - 1.0), 0.35) << r.total_toffoli;
}

TEST(Estimate, CatalystIQubits)
{
    auto r = estimate(row(52, 613, 23566, 193.8), mhartree(), LambdaMode::min_qubits);
    EXPECT_LE(std::abs(double(r.logical_qubits) / 3447.0 - 1.0), 0.10) << r.logical_qubits;
}

TEST(Estimate, CatalystIToffoli)
{
    auto r = estimate(row(52, 613, 23566, 193.8), mhartree(), LambdaMode::min_qubits);
    EXPECT_LE(std::abs(double(r.total_toffoli) / 1.81e10 - 1.0), 0.35) << r.total_toffoli;
}

TEST(Estimate, LargeActiveSpaceQubits)
{
    auto r = estimate(row(250, 2276, 443046, 7349.6), mhartree(), LambdaMode::min_qubits);
    EXPECT_LE(std::abs(double(r.logical_qubits) / 20019.0 - 1.0), 0.10) << r.logical_qubits;
}

TEST(Estimate, LargeActiveSpaceToffoli)
{
    auto r = estimate(row(250, 2276, 443046, 7349.6), mhartree(), LambdaMode::min_qubits);
    EXPECT_LE(std::abs(double(r.total_toffoli) / 1.07e13 - 1.0), 0.35) << r.total_toffoli;
}

TEST(Trotter, CommutingFragmentsGiveZero)
{
    Eigen::MatrixXcd a = Eigen::VectorXcd::LinSpaced(8, 0, 7).asDiagonal();
    Eigen::MatrixXcd b = Eigen::VectorXcd::LinSpaced(8, 3, -4).asDiagonal();
    EXPECT_EQ(trotter_step_bound({a, b, a * b}), 0.0);
}

TEST(Trotter, PauliPair)
{
    // X(x)I and Z(x)I on two qubits
    Eigen::MatrixXcd xi = Eigen::MatrixXcd::Zero(4, 4);
    xi.topRightCorner(2, 2).setIdentity();
    xi.bottomLeftCorner(2, 2).setIdentity();
    Eigen::MatrixXcd zi = Eigen::Vector4cd(1, 1, -1, -1).asDiagonal();
    // (1/12)(||[Z,[X,Z]]|| + 1/2 ||[X,[X,Z]]||) = (4 + 2)/12
    EXPECT_NEAR(trotter_step_bound({xi, zi}), 0.5, 1e-12);
}

TEST(Trotter, DimensionMismatch)
{
    EXPECT_THROW(trotter_step_bound({Eigen::MatrixXcd::Identity(2, 2), Eigen::MatrixXcd::Identity(4, 4)}),
                 ConfigError);
}

TEST(OperatorNorm, Examples)
{
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 3);
    EXPECT_EQ(operator_norm(a), 0.0);
    a(0, 2) = 3.0;
    a(1, 1) = -2.0;
    EXPECT_NEAR(operator_norm(a), 3.0, 1e-12);
}

TEST(CostInvariants, MonotoneInAncillaBudget)
{
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<count_t> u(1, 5000);
    for (int t = 0; t < 40; ++t) {
        count_t d = u(rng), b = 1 + u(rng) % 50;
        for (count_t lam = 0; lam < 40; ++lam) {
            EXPECT_LE(lookup_clean(d, b, lam + 1), lookup_clean(d, b, lam));
            EXPECT_LE(lookup_clean_uncompute(d, lam + 1), lookup_clean_uncompute(d, lam));
            EXPECT_LE(lookup_dirty(d, b, (lam + 1) * b), lookup_dirty(d, b, lam * b));
        }
        EXPECT_LE(lookup_clean(d, b, 1 << 20), d);
        EXPECT_EQ(lookup_clean(d, b, 0), d);
    }
}

TEST(CostInvariants, RepetitionsLinearInAlpha)
{
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> a(0.1, 5000);
    for (int t = 0; t < 200; ++t) {
        double alpha = a(rng);
        count_t k = pe_repetitions(alpha, mhartree()), k2 = pe_repetitions(2 * alpha, mhartree());
        EXPECT_GE(k2, 2 * k - 1);
        EXPECT_LE(k2, 2 * k + 1);
    }
}

TEST(CostInvariants, ModesAreOrdered)
{
    for (auto h : {row(52, 613, 23566, 193.8), row(10, 40, 300, 5.0), row(4, 6, 10, 1.5), row(6, 0, 0, 2.0)}) {
        auto t = estimate(h, mhartree(), LambdaMode::min_toffoli);
        auto q = estimate(h, mhartree(), LambdaMode::min_qubits);
        EXPECT_LE(t.total_toffoli, q.total_toffoli);
        EXPECT_LE(q.logical_qubits, t.logical_qubits);
        EXPECT_EQ(t.total_toffoli, t.walk_toffoli * t.pe_repetitions);
    }
}
