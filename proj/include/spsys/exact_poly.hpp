#ifndef SPSYS_EXACT_POLY_HPP
#define SPSYS_EXACT_POLY_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace spsys::poly
{

inline constexpr std::size_t num_vars = 16;

// One of the sixteen coefficient symbols a..h, A..H of the two pairs of
// covectors. Index order is the monomial variable order.
class VarId
{
public:
    explicit VarId(std::size_t index);

    static VarId from_name(char name);

    std::size_t index() const noexcept
    {
        return m_index;
    }
    char name() const noexcept;

    friend bool operator==(VarId, VarId) = default;

private:
    std::uint8_t m_index;
};

inline constexpr std::string_view var_names = "abcdefghABCDEFGH";

class Monomial
{
public:
    using exponent_type = std::uint8_t;

    Monomial() = default;
    explicit Monomial(VarId v, unsigned power = 1);

    unsigned degree() const noexcept;
    exponent_type exponent(VarId v) const noexcept
    {
        return m_exps[v.index()];
    }
    const std::array<exponent_type, num_vars> &exponents() const noexcept
    {
        return m_exps;
    }

    Monomial operator*(const Monomial &other) const;

    friend bool operator==(const Monomial &, const Monomial &) = default;

    // Graded lexicographic: higher degree first, ties broken by the exponent
    // of the earliest variable where they differ (a > b > ... > H).
    friend bool grlex_greater(const Monomial &lhs, const Monomial &rhs) noexcept;

    // "a*f^2*H"; the unit monomial renders as "1".
    std::string to_string() const;

private:
    std::array<exponent_type, num_vars> m_exps{};
};

struct GrlexGreater {
    bool operator()(const Monomial &lhs, const Monomial &rhs) const noexcept
    {
        return grlex_greater(lhs, rhs);
    }
};

// Sparse polynomial in the sixteen variables with integer coefficients.
// No stored coefficient is ever zero, so the zero polynomial has no terms.
class Polynomial
{
public:
    using term_map = std::map<Monomial, mpz_class, GrlexGreater>;

    Polynomial() = default;
    Polynomial(long c); // NOLINT: integer constants convert implicitly
    explicit Polynomial(const mpz_class &c);
    explicit Polynomial(VarId v);

    static Polynomial var(char name)
    {
        return Polynomial(VarId::from_name(name));
    }

    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    std::size_t num_terms() const noexcept
    {
        return m_terms.size();
    }
    unsigned degree() const noexcept;
    const term_map &terms() const noexcept
    {
        return m_terms;
    }
    mpz_class coefficient(const Monomial &m) const;

    Polynomial &operator+=(const Polynomial &other);
    Polynomial &operator-=(const Polynomial &other);
    Polynomial &operator*=(const Polynomial &other);
    Polynomial operator-() const;

    friend Polynomial operator+(Polynomial lhs, const Polynomial &rhs)
    {
        lhs += rhs;
        return lhs;
    }
    friend Polynomial operator-(Polynomial lhs, const Polynomial &rhs)
    {
        lhs -= rhs;
        return lhs;
    }
    friend Polynomial operator*(const Polynomial &lhs, const Polynomial &rhs);

    friend bool operator==(const Polynomial &lhs, const Polynomial &rhs)
    {
        return lhs.m_terms == rhs.m_terms;
    }

    // Canonical text form, terms in descending monomial order:
    // "+2*a*f^2 -1*b*e*H". The zero polynomial is "0".
    std::string to_string() const;

    void add_term(const Monomial &m, const mpz_class &c);

private:
    term_map m_terms;
};

std::ostream &operator<<(std::ostream &os, const Polynomial &p);

mpz_class eval_poly(const Polynomial &p, std::span<const std::int64_t, num_vars> values);
mpz_class eval_poly(const Polynomial &p, std::span<const mpz_class, num_vars> values);
std::complex<double> eval_poly(const Polynomial &p, std::span<const std::complex<double>, num_vars> values);

// Dense rectangular grid of polynomials, row-major.
class SymMatrix
{
public:
    SymMatrix(std::size_t rows, std::size_t cols);
    SymMatrix(std::initializer_list<std::initializer_list<Polynomial>> rows);

    std::size_t rows() const noexcept
    {
        return m_rows;
    }
    std::size_t cols() const noexcept
    {
        return m_cols;
    }
    bool is_square() const noexcept
    {
        return m_rows == m_cols;
    }

    Polynomial &operator()(std::size_t r, std::size_t c)
    {
        return m_entries[r * m_cols + c];
    }
    const Polynomial &operator()(std::size_t r, std::size_t c) const
    {
        return m_entries[r * m_cols + c];
    }

    SymMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

private:
    std::size_t m_rows;
    std::size_t m_cols;
    std::vector<Polynomial> m_entries;
};

} // namespace spsys::poly

#endif
