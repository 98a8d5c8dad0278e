#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spsys/determinant.hpp"
#include "spsys/errors.hpp"

using namespace spsys;
using namespace spsys::poly;

namespace
{

Polynomial v(char c)
{
    return Polynomial::var(c);
}

// Small random polynomial: up to 4 terms of degree <= 3 in a..H.
Polynomial random_poly(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> nterms(0, 4), deg(0, 3), var(0, 15), coeff(-5, 5);
    Polynomial p;
    for (int k = nterms(rng); k > 0; --k) {
        Monomial m;
        for (int d = deg(rng); d > 0; --d) {
            m = m * Monomial(VarId(static_cast<std::size_t>(var(rng))));
        }
        p.add_term(m, coeff(rng));
    }
    return p;
}

SymMatrix random_sparse(std::size_t n, std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> pick(0, 20);
    SymMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const int k = pick(rng);
            m(i, j) = k < 16 ? Polynomial(VarId(static_cast<std::size_t>(k))) : k < 19 ? Polynomial(0) : Polynomial(k - 17);
        }
    }
    return m;
}

std::array<std::int64_t, num_vars> random_assignment(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> d(-9, 9);
    std::array<std::int64_t, num_vars> out{};
    for (auto &x : out) {
        x = d(rng);
    }
    return out;
}

} // namespace

TEST(Monomial, GrlexOrder)
{
    const Monomial a(VarId::from_name('a')), b(VarId::from_name('b')), H(VarId::from_name('H'));
    EXPECT_TRUE(grlex_greater(a * a, a * b));
    EXPECT_TRUE(grlex_greater(a * b, b * b));
    EXPECT_TRUE(grlex_greater(b * b, a)); // degree first
    EXPECT_TRUE(grlex_greater(a, b));
    EXPECT_TRUE(grlex_greater(b, H));
    EXPECT_FALSE(grlex_greater(a, a));
}

TEST(Monomial, Rendering)
{
    EXPECT_EQ(Monomial().to_string(), "1");
    const Monomial m = Monomial(VarId::from_name('a')) * Monomial(VarId::from_name('f'), 2) *
                       Monomial(VarId::from_name('H'));
    EXPECT_EQ(m.to_string(), "a*f^2*H");
    EXPECT_EQ(m.degree(), 4u);
}

TEST(Monomial, BadVariables)
{
    EXPECT_THROW(VarId(16), DimensionError);
    EXPECT_THROW(VarId::from_name('z'), PreconditionError);
}

TEST(Polynomial, CanonicalText)
{
    const Polynomial p = 2 * v('a') * v('f') * v('f') - v('b') * v('e') * v('H');
    EXPECT_EQ(p.to_string(), "+2*a*f^2 -1*b*e*H");
    EXPECT_EQ(Polynomial().to_string(), "0");
    EXPECT_EQ((v('a') - v('a')).to_string(), "0");
    EXPECT_EQ(Polynomial(-3).to_string(), "-3");
    // Insertion order does not matter.
    EXPECT_EQ((v('H') + v('a')).to_string(), (v('a') + v('H')).to_string());
}

TEST(Polynomial, ZeroCoefficientsAreNeverStored)
{
    Polynomial p = v('a') + v('b');
    p -= v('a');
    EXPECT_EQ(p.num_terms(), 1u);
    EXPECT_EQ(p.coefficient(Monomial(VarId::from_name('a'))), 0);
    EXPECT_TRUE((p - p).is_zero());
}

TEST(Polynomial, RingAxioms)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const auto p = random_poly(rng), q = random_poly(rng), r = random_poly(rng);
        ASSERT_EQ(p + q, q + p);
        ASSERT_EQ(p * q, q * p);
        ASSERT_EQ((p + q) + r, p + (q + r));
        ASSERT_EQ((p * q) * r, p * (q * r));
        ASSERT_EQ(p * (q + r), p * q + p * r);
        ASSERT_TRUE((p + (-p)).is_zero());
        ASSERT_EQ(p * Polynomial(1), p);
        ASSERT_TRUE((p * Polynomial(0)).is_zero());
    }
}

TEST(Polynomial, EvaluationIsAHomomorphism)
{
    std::mt19937_64 rng(12);
    for (int i = 0; i < 200; ++i) {
        const auto p = random_poly(rng), q = random_poly(rng);
        const auto x = random_assignment(rng);
        const std::span<const std::int64_t, num_vars> s(x);
        ASSERT_EQ(eval_poly(p * q, s), eval_poly(p, s) * eval_poly(q, s));
        ASSERT_EQ(eval_poly(p + q, s), eval_poly(p, s) + eval_poly(q, s));
    }
}

TEST(Polynomial, DegreeOfProduct)
{
    const Polynomial p = v('a') * v('b') + v('c');
    const Polynomial q = v('A') * v('A') * v('A') - 1;
    EXPECT_EQ((p * q).degree(), 5u);
}

TEST(Determinant, LaplaceMatchesLeibnizAndCofactor)
{
    std::mt19937_64 rng(13);
    for (std::size_t n : {2u, 3u, 4u, 5u}) {
        for (int rep = 0; rep < 15; ++rep) {
            const auto m = random_sparse(n, rng);
            const auto expected = oracle::leibniz_det(m);
            std::vector<std::size_t> pivots;
            for (std::size_t k = 0; k < n / 2; ++k) {
                pivots.push_back(k);
            }
            ASSERT_EQ(det_laplace(m, pivots), expected) << "n=" << n;
            ASSERT_EQ(det_cofactor(m), expected) << "n=" << n;
            // Any other proper pivot set gives the same value.
            const std::size_t last[] = {n - 1};
            ASSERT_EQ(det_laplace(m, last), expected);
        }
    }
}

TEST(Determinant, PivotPreconditions)
{
    const SymMatrix m = {{v('a'), v('b')}, {v('c'), v('d')}};
    EXPECT_THROW(det_laplace(m, std::span<const std::size_t>{}), PreconditionError);
    const std::size_t all[] = {0, 1};
    EXPECT_THROW(det_laplace(m, all), PreconditionError);
    const std::size_t first[] = {0};
    EXPECT_EQ(det_laplace(m, first), v('a') * v('d') - v('b') * v('c'));
}

TEST(Determinant, StructuralZero)
{
    // Two rows supported in the same single column.
    const SymMatrix m = {{v('a'), 0, 0}, {v('b'), 0, 0}, {v('c'), v('d'), v('e')}};
    EXPECT_TRUE(structurally_zero(m));
    EXPECT_TRUE(det_cofactor(m).is_zero());
    const SymMatrix id = {{1, 0}, {0, 1}};
    EXPECT_FALSE(structurally_zero(id));
    const SymMatrix zero_row = {{0, 0}, {v('a'), v('b')}};
    EXPECT_TRUE(structurally_zero(zero_row));
}

TEST(Determinant, BareissMatchesLeibniz)
{
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<int> d(-9, 9);
    for (std::size_t n : {1u, 2u, 3u, 5u, 7u}) {
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<std::int64_t> raw(n * n);
            std::vector<mpz_class> big(n * n);
            for (std::size_t k = 0; k < n * n; ++k) {
                // Sprinkle zeros so pivoting gets exercised.
                raw[k] = rep % 3 == 0 && k % 4 == 0 ? 0 : d(rng);
                big[k] = static_cast<long>(raw[k]);
            }
            ASSERT_EQ(integer_det(big, n), mpz_class(static_cast<long>(oracle::leibniz_det(raw, n))));
        }
    }
}

TEST(Det8, MatrixLayout)
{
    const auto m = det8_matrix();
    ASSERT_EQ(m.rows(), 8u);
    ASSERT_EQ(m.cols(), 8u);
    // Row u12 (x) u3 reads a b c d in the first four columns.
    EXPECT_EQ(m(0, 0), v('a'));
    EXPECT_EQ(m(0, 3), v('d'));
    EXPECT_TRUE(m(0, 4).is_zero());
    EXPECT_EQ(m(6, 2), v('A'));
    EXPECT_EQ(m(7, 7), v('H'));
}

TEST(Det8, NumericInstanceMatchesSymbolicEntries)
{
    std::mt19937_64 rng(15);
    const auto sym = det8_matrix();
    const auto x = random_assignment(rng);
    const std::span<const std::int64_t, num_vars> s(x);
    const auto num = det8_numeric(s);
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            ASSERT_EQ(num[i * 8 + j], eval_poly(sym(i, j), s));
        }
    }
}

TEST(MainIdentity, ResidualIsZeroPolynomial)
{
    const auto res = main_identity_residual();
    EXPECT_TRUE(res.is_zero()) << res.to_string();
    EXPECT_LE(d8().degree(), 8u);
    EXPECT_EQ(d4().degree(), 8u);
    EXPECT_FALSE(d8().is_zero());
}

TEST(MainIdentity, LaplaceAgreesWithCofactorOnDet8)
{
    EXPECT_EQ(d8(), det_cofactor(det8_matrix()));
}

TEST(MainIdentity, EighteenTermsSurvive)
{
    const auto terms = surviving_laplace_terms(det8_matrix());
    EXPECT_EQ(terms.size(), 18u);
    Polynomial total;
    for (const auto &t : terms) {
        total += t.value();
    }
    EXPECT_EQ(total, d8());
}

TEST(MainIdentity, Bookkeeping)
{
    const auto bk = laplace_bookkeeping();
    EXPECT_EQ(bk.s2 + bk.s16, d8());
    EXPECT_EQ(bk.s16, bk.s_plus - bk.s_minus);

    const std::array<Polynomial, 4> lo1 = {v('a'), v('b'), v('c'), v('d')};
    const std::array<Polynomial, 4> lo2 = {v('e'), v('f'), v('g'), v('h')};
    const std::array<Polynomial, 4> up1 = {v('A'), v('B'), v('C'), v('D')};
    const std::array<Polynomial, 4> up2 = {v('E'), v('F'), v('G'), v('H')};
    const auto lo = quad_coeffs(lo1, lo2);
    const auto up = quad_coeffs(up1, up2);
    EXPECT_EQ(bk.s_plus, lo.p * lo.q * up.q * up.r + lo.q * lo.r * up.p * up.q);
    EXPECT_EQ(lo.p * lo.r - lo.q1 * lo.q2,
              (v('c') * v('h') - v('d') * v('g')) * (v('a') * v('f') - v('b') * v('e')));
    EXPECT_EQ(lo.q, lo.q1 + lo.q2);
}

TEST(MainIdentity, ResultantVanishesOnCommonRoot)
{
    // (u - 2v)(u + v) and (u - 2v)(3u - v) share the root u = 2v.
    const Polynomial p = 1, q = -1, r = -2;
    const Polynomial P = 3, Q = -7, R = 2;
    EXPECT_TRUE(resultant4(p, q, r, P, Q, R).is_zero());
    // u^2 and v^2 share no root: resultant is 1.
    EXPECT_EQ(resultant4(1, 0, 0, 0, 0, 1), Polynomial(1));
}

TEST(MainIdentity, SpotCheckAgainstIntegerDeterminant)
{
    std::mt19937_64 rng(16);
    const auto p8 = d8(), p4 = d4();
    for (int i = 0; i < 200; ++i) {
        const auto x = random_assignment(rng);
        const std::span<const std::int64_t, num_vars> s(x);
        const auto num = det8_numeric(s);
        std::vector<std::int64_t> raw(num.size());
        std::transform(num.begin(), num.end(), raw.begin(), [](const mpz_class &z) { return z.get_si(); });
        const mpz_class oracle_det(static_cast<long>(oracle::leibniz_det(raw, 8)));
        ASSERT_EQ(eval_poly(p8, s), oracle_det);
        ASSERT_EQ(eval_poly(p8, s), -eval_poly(p4, s));
    }
}
