#include "spsys/determinant.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <functional>
#include <optional>
#include <stdexcept>

#include "spsys/errors.hpp"

namespace spsys::poly
{

namespace
{

// Row layout of the D8 matrix; '0' marks a structural zero. Columns follow
// the basis uuu, uvu, vuu, vvu, uuv, uvv, vuv, vvv.
constexpr std::array<std::string_view, 8> det8_layout = {
    "abcd0000", //
    "efgh0000", //
    "0000abcd", //
    "0000efgh", //
    "AB00CD00", //
    "EF00GH00", //
    "00AB00CD", //
    "00EF00GH", //
};

// Kuhn's augmenting-path matching on the support of a square matrix.
bool has_perfect_matching(const std::vector<std::vector<bool>> &support)
{
    const auto n = support.size();
    std::vector<int> match_col(n, -1);
    std::function<bool(std::size_t, std::vector<bool> &)> augment = [&](std::size_t row, std::vector<bool> &seen) {
        for (std::size_t c = 0; c < n; ++c) {
            if (!support[row][c] || seen[c]) {
                continue;
            }
            seen[c] = true;
            if (match_col[c] < 0 || augment(static_cast<std::size_t>(match_col[c]), seen)) {
                match_col[c] = static_cast<int>(row);
                return true;
            }
        }
        return false;
    };
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<bool> seen(n, false);
        if (!augment(r, seen)) {
            return false;
        }
    }
    return true;
}

void require_square(const SymMatrix &m)
{
    if (!m.is_square()) {
        throw DimensionError("determinant of a non-square " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + " matrix");
    }
}

// Calls f(subset) for every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F &&f)
{
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) {
        idx[i] = i;
    }
    while (true) {
        f(std::span<const std::size_t>(idx));
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) {
            --i;
        }
        if (i == 0) {
            return;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

std::vector<std::size_t> complement(std::span<const std::size_t> subset, std::size_t n)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::find(subset.begin(), subset.end(), i) == subset.end()) {
            out.push_back(i);
        }
    }
    return out;
}

Polynomial det_small(const SymMatrix &m)
{
    if (m.rows() == 0) {
        return Polynomial(1);
    }
    if (m.rows() == 1) {
        return m(0, 0);
    }
    const std::array<std::size_t, 1> first{0};
    return det_laplace(m, first);
}

struct ExpansionTerm {
    std::vector<std::size_t> cols;
    std::vector<std::size_t> rest_cols;
    int sign;
};

// Column subsets of a Laplace expansion along `rows` that survive the
// structural test, with their signs.
std::vector<ExpansionTerm> structural_terms(const SymMatrix &m, std::span<const std::size_t> rows)
{
    const auto n = m.rows();
    const auto rest_rows = complement(rows, n);
    std::size_t row_sum = 0;
    for (auto r : rows) {
        row_sum += r + 1;
    }
    std::vector<ExpansionTerm> out;
    for_each_subset(n, rows.size(), [&](std::span<const std::size_t> cols) {
        auto rest_cols = complement(cols, n);
        if (structurally_zero(m.submatrix(rows, cols)) || structurally_zero(m.submatrix(rest_rows, rest_cols))) {
            return;
        }
        std::size_t col_sum = 0;
        for (auto c : cols) {
            col_sum += c + 1;
        }
        out.push_back({{cols.begin(), cols.end()}, std::move(rest_cols), (row_sum + col_sum) % 2 == 0 ? 1 : -1});
    });
    return out;
}

} // namespace

bool structurally_zero(const SymMatrix &m)
{
    require_square(m);
    std::vector<std::vector<bool>> support(m.rows(), std::vector<bool>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            support[r][c] = !m(r, c).is_zero();
        }
    }
    return !has_perfect_matching(support);
}

Polynomial det_laplace(const SymMatrix &m, std::span<const std::size_t> pivot_rows)
{
    require_square(m);
    const auto n = m.rows();
    if (n == 1) {
        return m(0, 0);
    }
    std::vector<std::size_t> rows(pivot_rows.begin(), pivot_rows.end());
    std::sort(rows.begin(), rows.end());
    if (rows.empty() || rows.size() >= n || std::adjacent_find(rows.begin(), rows.end()) != rows.end()
        || rows.back() >= n) {
        throw PreconditionError("pivot rows must be a nonempty proper subset of the rows");
    }
    const auto rest_rows = complement(rows, n);

    Polynomial det;
    for (const auto &term : structural_terms(m, rows)) {
        auto minor = det_small(m.submatrix(rows, term.cols));
        if (minor.is_zero()) {
            continue;
        }
        auto prod = minor * det_small(m.submatrix(rest_rows, term.rest_cols));
        if (term.sign > 0) {
            det += prod;
        } else {
            det -= prod;
        }
    }
    return det;
}

Polynomial det_cofactor(const SymMatrix &m)
{
    require_square(m);
    const auto n = m.rows();
    if (n > 20) {
        throw DimensionError("det_cofactor supports n <= 20");
    }
    if (n == 0) {
        return Polynomial(1);
    }
    // memo[mask]: determinant of rows (n - popcount(mask))..n-1 restricted to
    // the columns in mask.
    std::vector<std::optional<Polynomial>> memo(std::size_t(1) << n);
    std::function<const Polynomial &(unsigned)> solve = [&](unsigned mask) -> const Polynomial & {
        auto &slot = memo[mask];
        if (slot) {
            return *slot;
        }
        if (mask == 0) {
            slot = Polynomial(1);
            return *slot;
        }
        const auto row = n - static_cast<std::size_t>(std::popcount(mask));
        Polynomial acc;
        int position = 0;
        for (std::size_t c = 0; c < n; ++c) {
            if (!(mask & (1u << c))) {
                continue;
            }
            const auto &entry = m(row, c);
            if (!entry.is_zero()) {
                const auto &sub = solve(mask & ~(1u << c));
                if (!sub.is_zero()) {
                    if (position % 2 == 0) {
                        acc += entry * sub;
                    } else {
                        acc -= entry * sub;
                    }
                }
            }
            ++position;
        }
        slot = std::move(acc);
        return *slot;
    };
    return solve((1u << n) - 1u);
}

std::vector<LaplaceTerm> surviving_laplace_terms(const SymMatrix &m)
{
    require_square(m);
    const auto n = m.rows();
    if (n < 2) {
        throw PreconditionError("Laplace terms need at least two rows");
    }
    std::vector<std::size_t> rows(n / 2);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i] = i;
    }
    const auto rest_rows = complement(rows, n);

    std::vector<LaplaceTerm> out;
    for (auto &term : structural_terms(m, rows)) {
        auto minor = det_small(m.submatrix(rows, term.cols));
        auto comp = det_small(m.submatrix(rest_rows, term.rest_cols));
        if (minor.is_zero() || comp.is_zero()) {
            continue;
        }
        out.push_back({std::move(term.cols), std::move(minor), std::move(comp), term.sign});
    }
    return out;
}

SymMatrix det8_matrix()
{
    SymMatrix m(8, 8);
    for (std::size_t r = 0; r < 8; ++r) {
        for (std::size_t c = 0; c < 8; ++c) {
            const char ch = det8_layout[r][c];
            if (ch != '0') {
                m(r, c) = Polynomial::var(ch);
            }
        }
    }
    return m;
}

QuadCoeffs quad_coeffs(std::span<const Polynomial, 4> u_row, std::span<const Polynomial, 4> v_row)
{
    const auto &[a, b, c, d] = std::tie(u_row[0], u_row[1], u_row[2], u_row[3]);
    const auto &[e, f, g, h] = std::tie(v_row[0], v_row[1], v_row[2], v_row[3]);
    QuadCoeffs out;
    out.p = a * g - c * e;
    out.q1 = a * h - d * e;
    out.q2 = b * g - c * f;
    out.r = b * h - d * f;
    out.q = out.q1 + out.q2;
    return out;
}

Polynomial resultant4(const Polynomial &p, const Polynomial &q, const Polynomial &r, const Polynomial &P,
                      const Polynomial &Q, const Polynomial &R)
{
    const Polynomial z;
    const SymMatrix m{{p, q, r, z}, {z, p, q, r}, {P, Q, R, z}, {z, P, Q, R}};
    const std::array<std::size_t, 2> rows{0, 1};
    return det_laplace(m, rows);
}

Polynomial d8()
{
    const std::array<std::size_t, 4> rows{0, 1, 2, 3};
    auto out = det_laplace(det8_matrix(), rows);
    assert(out.degree() <= 8);
    return out;
}

namespace
{

std::array<Polynomial, 4> vars_row(std::string_view names)
{
    return {Polynomial::var(names[0]), Polynomial::var(names[1]), Polynomial::var(names[2]),
            Polynomial::var(names[3])};
}

struct BothQuads {
    QuadCoeffs lower;
    QuadCoeffs upper;
};

BothQuads both_quads()
{
    const auto u12 = vars_row("abcd");
    const auto v12 = vars_row("efgh");
    const auto u23 = vars_row("ABCD");
    const auto v23 = vars_row("EFGH");
    return {quad_coeffs(u12, v12), quad_coeffs(u23, v23)};
}

} // namespace

Polynomial d4()
{
    const auto [lo, up] = both_quads();
    auto out = resultant4(lo.p, lo.q, lo.r, up.p, up.q, up.r);
    assert(out.degree() <= 8);
    return out;
}

Polynomial main_identity_residual()
{
    return d8() + d4();
}

LaplaceBookkeeping laplace_bookkeeping()
{
    const auto [lo, up] = both_quads();
    // alpha(i, j) for 1-based i in {1,2}, j in {3,4}; beta(i, k) for i in {1,2}, k in {5,6}.
    auto alpha = [&](std::size_t i, std::size_t j) -> const Polynomial & {
        if (i == 1) {
            return j == 3 ? lo.p : lo.q1;
        }
        return j == 3 ? lo.q2 : lo.r;
    };
    auto beta = [&](std::size_t i, std::size_t k) -> const Polynomial & {
        if (i == 1) {
            return k == 5 ? up.r : up.q2;
        }
        return k == 5 ? up.q1 : up.p;
    };

    LaplaceBookkeeping out;
    for (const auto &term : surviving_laplace_terms(det8_matrix())) {
        const auto i = term.columns[0] + 1, j = term.columns[1] + 1, k = term.columns[2] + 1,
                   l = term.columns[3] + 1;
        const auto value = term.value();
        if ((i == 1 && j == 2 && k == 7 && l == 8) || (i == 3 && j == 4 && k == 5 && l == 6)) {
            out.s2 += value;
            continue;
        }
        out.s16 += value;
        const auto prod = alpha(i, j) * alpha(k - 4, l - 4) * beta(i, k) * beta(j - 2, l - 2);
        if (value == prod) {
            out.s_plus += value;
        } else if (value == -prod) {
            out.s_minus += prod;
        } else {
            throw std::logic_error("Laplace term does not factor as +/- alpha alpha beta beta");
        }
    }
    return out;
}

mpz_class integer_det(std::span<const mpz_class> entries, std::size_t n)
{
    if (entries.size() != n * n) {
        throw DimensionError("integer_det: entry count is not n*n");
    }
    if (n == 0) {
        return 1;
    }
    std::vector<mpz_class> a(entries.begin(), entries.end());
    auto at = [&](std::size_t r, std::size_t c) -> mpz_class & { return a[r * n + c]; };
    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && at(swap_row, k) == 0) {
                ++swap_row;
            }
            if (swap_row == n) {
                return 0;
            }
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(at(k, c), at(swap_row, c));
            }
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j));
                mpz_divexact(at(i, j).get_mpz_t(), at(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

std::vector<mpz_class> det8_numeric(std::span<const std::int64_t, num_vars> values)
{
    std::vector<mpz_class> out(64);
    for (std::size_t r = 0; r < 8; ++r) {
        for (std::size_t c = 0; c < 8; ++c) {
            const char ch = det8_layout[r][c];
            out[r * 8 + c] = ch == '0' ? mpz_class(0) : mpz_class(static_cast<long>(values[var_names.find(ch)]));
        }
    }
    return out;
}

} // namespace spsys::poly
