#include "spsys/exact_poly.hpp"

#include <algorithm>
#include <sstream>

#include "spsys/errors.hpp"

namespace spsys::poly
{

VarId::VarId(std::size_t index) : m_index(static_cast<std::uint8_t>(index))
{
    if (index >= num_vars) {
        throw DimensionError("variable index " + std::to_string(index) + " out of range 0..15");
    }
}

VarId VarId::from_name(char name)
{
    const auto pos = var_names.find(name);
    if (pos == std::string_view::npos) {
        throw PreconditionError(std::string("unknown variable name '") + name + "'");
    }
    return VarId(pos);
}

char VarId::name() const noexcept
{
    return var_names[m_index];
}

Monomial::Monomial(VarId v, unsigned power)
{
    if (power > 255u) {
        throw DimensionError("exponent overflow");
    }
    m_exps[v.index()] = static_cast<exponent_type>(power);
}

unsigned Monomial::degree() const noexcept
{
    unsigned d = 0;
    for (auto e : m_exps) {
        d += e;
    }
    return d;
}

Monomial Monomial::operator*(const Monomial &other) const
{
    Monomial out;
    for (std::size_t i = 0; i < num_vars; ++i) {
        const unsigned e = unsigned(m_exps[i]) + unsigned(other.m_exps[i]);
        if (e > 255u) {
            throw DimensionError("exponent overflow");
        }
        out.m_exps[i] = static_cast<exponent_type>(e);
    }
    return out;
}

bool grlex_greater(const Monomial &lhs, const Monomial &rhs) noexcept
{
    const auto dl = lhs.degree();
    const auto dr = rhs.degree();
    if (dl != dr) {
        return dl > dr;
    }
    return std::lexicographical_compare(rhs.m_exps.begin(), rhs.m_exps.end(), lhs.m_exps.begin(),
                                        lhs.m_exps.end());
}

std::string Monomial::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < num_vars; ++i) {
        if (m_exps[i] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += '*';
        }
        out += var_names[i];
        if (m_exps[i] > 1) {
            out += '^';
            out += std::to_string(m_exps[i]);
        }
    }
    return out.empty() ? "1" : out;
}

Polynomial::Polynomial(long c) : Polynomial(mpz_class(c)) {}

Polynomial::Polynomial(const mpz_class &c)
{
    if (c != 0) {
        m_terms.emplace(Monomial{}, c);
    }
}

Polynomial::Polynomial(VarId v)
{
    m_terms.emplace(Monomial(v), mpz_class(1));
}

unsigned Polynomial::degree() const noexcept
{
    // Terms are stored highest degree first.
    return m_terms.empty() ? 0u : m_terms.begin()->first.degree();
}

mpz_class Polynomial::coefficient(const Monomial &m) const
{
    const auto it = m_terms.find(m);
    return it == m_terms.end() ? mpz_class(0) : it->second;
}

void Polynomial::add_term(const Monomial &m, const mpz_class &c)
{
    if (c == 0) {
        return;
    }
    auto [it, inserted] = m_terms.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            m_terms.erase(it);
        }
    }
}

Polynomial &Polynomial::operator+=(const Polynomial &other)
{
    for (const auto &[m, c] : other.m_terms) {
        add_term(m, c);
    }
    return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &other)
{
    for (const auto &[m, c] : other.m_terms) {
        add_term(m, -c);
    }
    return *this;
}

Polynomial Polynomial::operator-() const
{
    Polynomial out(*this);
    for (auto &[m, c] : out.m_terms) {
        c = -c;
    }
    return out;
}

Polynomial operator*(const Polynomial &lhs, const Polynomial &rhs)
{
    Polynomial out;
    mpz_class prod;
    for (const auto &[ml, cl] : lhs.m_terms) {
        for (const auto &[mr, cr] : rhs.m_terms) {
            prod = cl * cr;
            out.add_term(ml * mr, prod);
        }
    }
    return out;
}

Polynomial &Polynomial::operator*=(const Polynomial &other)
{
    *this = *this * other;
    return *this;
}

std::string Polynomial::to_string() const
{
    if (m_terms.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : m_terms) {
        if (!first) {
            os << ' ';
        }
        first = false;
        os << (c > 0 ? "+" : "-") << mpz_class(abs(c)).get_str();
        if (m.degree() > 0) {
            os << '*' << m.to_string();
        }
    }
    return os.str();
}

std::ostream &operator<<(std::ostream &os, const Polynomial &p)
{
    return os << p.to_string();
}

namespace
{

template <typename T, typename V>
T eval_generic(const Polynomial &p, std::span<const V, num_vars> values)
{
    T total(0);
    for (const auto &[m, c] : p.terms()) {
        T term(c);
        for (std::size_t i = 0; i < num_vars; ++i) {
            for (unsigned k = 0; k < m.exponents()[i]; ++k) {
                term *= T(values[i]);
            }
        }
        total += term;
    }
    return total;
}

} // namespace

mpz_class eval_poly(const Polynomial &p, std::span<const std::int64_t, num_vars> values)
{
    std::array<mpz_class, num_vars> big;
    for (std::size_t i = 0; i < num_vars; ++i) {
        big[i] = mpz_class(static_cast<long>(values[i]));
    }
    return eval_poly(p, std::span<const mpz_class, num_vars>(big));
}

mpz_class eval_poly(const Polynomial &p, std::span<const mpz_class, num_vars> values)
{
    return eval_generic<mpz_class>(p, values);
}

std::complex<double> eval_poly(const Polynomial &p, std::span<const std::complex<double>, num_vars> values)
{
    std::complex<double> total(0.0);
    for (const auto &[m, c] : p.terms()) {
        std::complex<double> term(c.get_d());
        for (std::size_t i = 0; i < num_vars; ++i) {
            for (unsigned k = 0; k < m.exponents()[i]; ++k) {
                term *= values[i];
            }
        }
        total += term;
    }
    return total;
}

SymMatrix::SymMatrix(std::size_t rows, std::size_t cols) : m_rows(rows), m_cols(cols), m_entries(rows * cols) {}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<Polynomial>> rows)
    : m_rows(rows.size()), m_cols(rows.size() ? rows.begin()->size() : 0)
{
    m_entries.reserve(m_rows * m_cols);
    for (const auto &row : rows) {
        if (row.size() != m_cols) {
            throw DimensionError("ragged rows in SymMatrix initializer");
        }
        m_entries.insert(m_entries.end(), row.begin(), row.end());
    }
}

SymMatrix SymMatrix::submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const
{
    SymMatrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out(i, j) = (*this)(rows[i], cols[j]);
        }
    }
    return out;
}

} // namespace spsys::poly
