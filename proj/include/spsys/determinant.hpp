#ifndef SPSYS_DETERMINANT_HPP
#define SPSYS_DETERMINANT_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "spsys/exact_poly.hpp"

namespace spsys::poly
{

// Determinant by generalized Laplace expansion along `pivot_rows`
// (0-based, nonempty, proper unless n == 1). Minor pairs whose support
// pattern admits no perfect matching are skipped without expansion; an
// all-zero row or column is the simplest such pattern.
Polynomial det_laplace(const SymMatrix &m, std::span<const std::size_t> pivot_rows);

// Determinant by first-row cofactor expansion, memoised on column subsets.
// Independent of det_laplace; used as its cross-check.
Polynomial det_cofactor(const SymMatrix &m);

// True when no permutation picks a nonzero entry in every row, so the
// determinant vanishes identically.
bool structurally_zero(const SymMatrix &m);

struct LaplaceTerm {
    std::vector<std::size_t> columns; // columns of the pivot-row minor, 0-based ascending
    Polynomial minor;                 // pivot rows x columns
    Polynomial complement;            // remaining rows x remaining columns
    int sign;                         // (-1)^(sum of 1-based pivot rows and columns)

    Polynomial value() const
    {
        return sign > 0 ? minor * complement : -(minor * complement);
    }
};

// All nonvanishing terms of the Laplace expansion along the first half of
// the rows. Terms with a structurally zero minor or complement are dropped.
std::vector<LaplaceTerm> surviving_laplace_terms(const SymMatrix &m);

// The 8x8 coefficient matrix of the eight covectors u12(x)u3, v12(x)u3,
// u12(x)v3, v12(x)v3, u1(x)u23, u1(x)v23, v1(x)u23, v1(x)v23 in the basis
// uuu, uvu, vuu, vvu, uuv, uvv, vuv, vvv, with entries among a..H.
SymMatrix det8_matrix();

struct QuadCoeffs {
    Polynomial p;
    Polynomial q;
    Polynomial r;
    Polynomial q1; // q = q1 + q2
    Polynomial q2;
};

// Coefficients of the binary quadratic form det [[<ux>, <wx>], [<u'x>, <w'x>]]
// in the pair (<u2,x>, <v2,x>), for covector rows (a,b,c,d) and (e,f,g,h):
// p = ag - ce, q1 = ah - de, q2 = bg - cf, r = bh - df.
QuadCoeffs quad_coeffs(std::span<const Polynomial, 4> u_row, std::span<const Polynomial, 4> v_row);

// Resultant of p u^2 + q uv + r v^2 and P u^2 + Q uv + R v^2 as the 4x4
// determinant with rows (p,q,r,0), (0,p,q,r), (P,Q,R,0), (0,P,Q,R).
Polynomial resultant4(const Polynomial &p, const Polynomial &q, const Polynomial &r, const Polynomial &P,
                      const Polynomial &Q, const Polynomial &R);

// Symbolic D8 (Laplace along the first four rows of det8_matrix()).
Polynomial d8();
// Symbolic D4 from the lower-case and upper-case quadratic coefficients.
Polynomial d4();

// D8 + D4; the zero polynomial when the identity holds.
Polynomial main_identity_residual();

// Partial sums of the surviving Laplace terms of D8, grouped the way the
// hand proof groups them.
struct LaplaceBookkeeping {
    Polynomial s2;     // the two terms with columns {1,2,7,8} and {3,4,5,6}
    Polynomial s16;    // the remaining sixteen terms
    Polynomial s_plus; // sixteen-term contributions with sign +1 as +/- alpha*alpha*beta*beta
    Polynomial s_minus; // s16 = s_plus - s_minus
};

LaplaceBookkeeping laplace_bookkeeping();

// Fraction-free (Bareiss) determinant of an integer matrix given row-major.
mpz_class integer_det(std::span<const mpz_class> entries, std::size_t n);

// Numeric instance of det8_matrix() at an integer assignment of a..H.
std::vector<mpz_class> det8_numeric(std::span<const std::int64_t, num_vars> values);

} // namespace spsys::poly

#endif
