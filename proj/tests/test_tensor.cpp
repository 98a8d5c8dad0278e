#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spsys/errors.hpp"
#include "spsys/tensor.hpp"

using namespace spsys;
using namespace spsys::tensor;
using oracle::e;

TEST(Kron, IndexConvention)
{
    // e1 (x) e2 sits in slot 2*0 + 1.
    EXPECT_TRUE(kron(e(2, 0), e(2, 1)).isApprox(e(4, 1)));
    // e2 (x) e1 (x) e2 sits in slot 4 + 0 + 1.
    EXPECT_TRUE(kron(kron(e(2, 1), e(2, 0)), e(2, 1)).isApprox(e(8, 5)));
}

TEST(Kron, MatchesNaiveProduct)
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
        const CVec a = oracle::random_vec(2, rng), b = oracle::random_vec(2, rng), c = oracle::random_vec(4, rng);
        ASSERT_LT((kron(a, b) - oracle::kron_naive(a, b)).norm(), 1e-14);
        ASSERT_LT((kron(a, c) - oracle::kron_naive(a, c)).norm(), 1e-14);
    }
}

TEST(Kron, DimensionGuard)
{
    EXPECT_THROW(kron(CVec(CVec::Ones(4)), CVec(CVec::Ones(4))), DimensionError);
    EXPECT_THROW(kron(CVec(CVec::Ones(3)), CVec(CVec::Ones(1))), DimensionError);
}

TEST(QuadForm, VanishesExactlyOnProducts)
{
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        const CVec x = oracle::random_vec(2, rng), y = oracle::random_vec(2, rng);
        ASSERT_LT(std::abs(quad_form_A(kron(x, y))), 1e-13);
    }
    const CVec bell = e(4, 0) + e(4, 3);
    EXPECT_EQ(quad_form_A(bell), CScalar(1.0));
    EXPECT_THROW(quad_form_A(CVec::Ones(2)), DimensionError);
}

TEST(QuadForm, PolarizationAgreesWithOracle)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const CVec u = oracle::random_vec(4, rng), w = oracle::random_vec(4, rng);
        const auto g = oracle::polarized_gram(u, w);
        ASSERT_LT(std::abs(polar_A(u, w) - g(0, 1)), 1e-12);
        ASSERT_LT(std::abs(polar_A(u, u) - quad_form_A(u)), 1e-12);
        ASSERT_LT(std::abs(polar_A(u, w) - polar_A(w, u)), 1e-14);
    }
}

TEST(Factorization, RecoversProducts)
{
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        const CVec x = oracle::random_vec(2, rng), y = oracle::random_vec(2, rng);
        const CVec v = kron(x, y);
        const auto f = factor_rank_one(v);
        ASSERT_TRUE(f.has_value());
        ASSERT_LT((kron(f->x, f->y) - v).norm(), 1e-12 * v.norm());
        ASSERT_LT(collinearity_gap(f->x, x), 1e-12);
        ASSERT_LT(collinearity_gap(f->y, y), 1e-12);
    }
    EXPECT_FALSE(factor_rank_one(e(4, 0) + e(4, 3)).has_value());
    EXPECT_FALSE(factor_rank_one(CVec::Zero(4)).has_value());
}

TEST(Roots, SpecialCases)
{
    EXPECT_TRUE(roots_binary_quadratic(0.0, 0.0, 0.0).identically_zero);

    // uv: roots (1:0) and (0:1).
    const auto uv = roots_binary_quadratic(0.0, 1.0, 0.0);
    ASSERT_EQ(uv.roots.size(), 2u);
    EXPECT_TRUE(uv.roots[0].point.isApprox(e(2, 0)));
    EXPECT_TRUE(uv.roots[1].point.isApprox(e(2, 1)));

    // (u + v)^2: double root (1 : -1).
    const auto sq = roots_binary_quadratic(1.0, 2.0, 1.0);
    ASSERT_EQ(sq.roots.size(), 1u);
    EXPECT_EQ(sq.roots[0].multiplicity, 2);
    CVec expected(2);
    expected << 1.0, -1.0;
    EXPECT_TRUE(sq.roots[0].point.isApprox(expected));

    // v^2 alone: double root at (1:0).
    const auto vv = roots_binary_quadratic(0.0, 0.0, 1.0);
    ASSERT_EQ(vv.roots.size(), 1u);
    EXPECT_TRUE(vv.roots[0].point.isApprox(e(2, 0)));
}

TEST(Roots, RandomFormsAreSolved)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const CVec c = oracle::random_vec(3, rng);
        const auto res = roots_binary_quadratic(c(0), c(1), c(2));
        ASSERT_EQ(res.roots.size(), 2u);
        for (const auto &r : res.roots) {
            const CScalar u = r.point(0), w = r.point(1);
            ASSERT_LT(std::abs(c(0) * u * u + c(1) * u * w + c(2) * w * w), 1e-11 * c.norm());
            ASSERT_NEAR(r.point.cwiseAbs().maxCoeff(), 1.0, 1e-15);
        }
    }
}

TEST(Subspace, SpanTruncatesRank)
{
    CMat cols(4, 3);
    cols.col(0) = e(4, 0);
    cols.col(1) = e(4, 1);
    cols.col(2) = e(4, 0) + 2.0 * e(4, 1);
    const auto s = Subspace::span(cols);
    EXPECT_EQ(s.dim(), 2u);
    EXPECT_TRUE(s.contains(e(4, 1)));
    EXPECT_FALSE(s.contains(e(4, 2)));
    EXPECT_LT((s.basis().adjoint() * s.basis() - CMat::Identity(2, 2)).norm(), 1e-14);
}

TEST(Subspace, GenericIntersectionDimension)
{
    std::mt19937_64 rng(6);
    for (int i = 0; i < 20; ++i) {
        std::vector<CVec> a, b;
        for (int k = 0; k < 5; ++k) {
            a.push_back(oracle::random_vec(8, rng));
        }
        for (int k = 0; k < 6; ++k) {
            b.push_back(oracle::random_vec(8, rng));
        }
        const auto sa = Subspace::span(a, 8), sb = Subspace::span(b, 8);
        const auto in = intersect(sa, sb);
        ASSERT_EQ(in.dim(), 3u); // 5 + 6 - 8
        ASSERT_LT(sa.containment_residual(in), 1e-10);
        ASSERT_LT(sb.containment_residual(in), 1e-10);
        ASSERT_EQ(sum(sa, sb).dim(), 8u);
        ASSERT_EQ(annihilator(sa).dim(), 3u);
    }
}

TEST(Subspace, BilinearAnnihilator)
{
    std::mt19937_64 rng(7);
    std::vector<CVec> a = {oracle::random_vec(4, rng), oracle::random_vec(4, rng)};
    const auto s = Subspace::span(a, 4);
    const CMat cov = annihilator_covectors(s);
    ASSERT_EQ(cov.rows(), 2);
    // row . z = 0 without conjugation.
    EXPECT_LT((cov * s.basis()).norm(), 1e-13);
}

TEST(Subspace, KronOfSubspaces)
{
    const auto line = Subspace::span(std::vector<CVec>{e(2, 0)}, 2);
    const auto k = kron(line, Subspace::full(2));
    EXPECT_EQ(k.dim(), 2u);
    EXPECT_TRUE(k.contains(e(4, 0)));
    EXPECT_TRUE(k.contains(e(4, 1)));
    EXPECT_FALSE(k.contains(e(4, 2)));
}

TEST(Subspace, DistanceAndImage)
{
    const auto a = Subspace::span(std::vector<CVec>{e(2, 0)}, 2);
    const auto b = Subspace::span(std::vector<CVec>{e(2, 1)}, 2);
    EXPECT_NEAR(a.distance(b), 1.0, 1e-15);
    EXPECT_EQ(a.distance(Subspace::full(2)), 1.0);
    CMat swap(2, 2);
    swap << 0, 1, 1, 0;
    EXPECT_TRUE(a.image(swap).equals(b));
}

TEST(Helpers, NormalizeProjective)
{
    CVec v(2);
    v << CScalar(0, 2), CScalar(0, 2);
    const CVec n = normalize_projective(v);
    EXPECT_EQ(n(0), CScalar(1.0));
    EXPECT_EQ(n(1), CScalar(1.0));
    EXPECT_TRUE(normalize_projective(CVec::Zero(2)).isZero());
}

TEST(Helpers, RandomMatrixIsDeterministic)
{
    std::mt19937_64 r1(9), r2(9);
    EXPECT_EQ(random_matrix(3, 2, r1), random_matrix(3, 2, r2));
    std::mt19937_64 r3(9);
    for (int i = 0; i < 1000; ++i) {
        const double u = uniform01(r3);
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Helpers, NumericRankAndNullSpace)
{
    CMat m(2, 4);
    m << 1, 0, 0, 0, 0, 0, 0, 1;
    EXPECT_EQ(numeric_rank(m), 2u);
    const CMat n = null_space(m);
    EXPECT_EQ(n.cols(), 2);
    EXPECT_LT((m * n).norm(), 1e-14);
    EXPECT_EQ(numeric_rank(CMat::Zero(2, 4)), 0u);
}
