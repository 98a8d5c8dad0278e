#ifndef SPSYS_TENSOR_HPP
#define SPSYS_TENSOR_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace spsys
{

using CScalar = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// Default relative tolerance for rank and membership decisions.
inline constexpr double default_eps = 1e-9;

namespace tensor
{

// Tensor index convention: for C^2 (x) C^2 slot (i, j) -> 2i + j, for
// C^2 (x) C^2 (x) C^2 slot (i, j, k) -> 4i + 2j + k (0-based).

// Standard basis vector e_{k+1} of C^dim.
CVec unit(std::size_t dim, std::size_t k);

// Kronecker product. The vector overload requires the result dimension to be
// 2, 4 or 8 and throws DimensionError otherwise.
CVec kron(const CVec &u, const CVec &v);
CMat kron(const CMat &a, const CMat &b);

// Singular values in decreasing order.
Eigen::VectorXd singular_values(const CMat &m);

// Number of singular values above eps times the largest one.
std::size_t numeric_rank(const CMat &m, double eps = default_eps);

// Orthonormal basis of the null space {x : m x = 0}, relative threshold eps.
CMat null_space(const CMat &m, double eps = default_eps);

// Minimum-norm least-squares solution of a x = b.
CMat min_norm_solve(const CMat &a, const CMat &b);

// |a - b| / max(|a|, |b|) in the spectral norm; 0 when both vanish.
double relative_gap(const CMat &a, const CMat &b);

// Uniform double in [0, 1) from the top 53 bits; stable across standard libraries.
double uniform01(std::mt19937_64 &rng);

// Entries with real and imaginary parts uniform in [-1, 1).
CMat random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng);

// Scale so that the largest-magnitude coordinate equals 1 (ties: lowest index).
// The zero vector is returned unchanged.
CVec normalize_projective(const CVec &v);

// |det[x y]| / (|x| |y|): zero iff x and y are collinear (dim 2).
double collinearity_gap(const CVec &x, const CVec &y);

// Subspace of C^n held as an orthonormal basis (columns).
class Subspace
{
public:
    // Column span of `columns`; columns below eps relative to the largest
    // singular value are dropped.
    static Subspace span(const CMat &columns, double eps = default_eps);
    static Subspace span(const std::vector<CVec> &vectors, std::size_t ambient, double eps = default_eps);
    static Subspace zero(std::size_t ambient);
    static Subspace full(std::size_t ambient);

    std::size_t ambient_dim() const noexcept
    {
        return static_cast<std::size_t>(m_basis.rows());
    }
    std::size_t dim() const noexcept
    {
        return static_cast<std::size_t>(m_basis.cols());
    }
    const CMat &basis() const noexcept
    {
        return m_basis;
    }
    CMat projector() const;

    // |v - P v| <= eps |v|.
    bool contains(const CVec &v, double eps = default_eps) const;
    // Largest relative distance of a basis vector of `other` from this space.
    double containment_residual(const Subspace &other) const;
    bool contains(const Subspace &other, double eps = default_eps) const;
    // Sine of the largest principal angle; 1 when dimensions differ.
    double distance(const Subspace &other) const;
    bool equals(const Subspace &other, double eps = default_eps) const;

    // Image under a linear map (columns of map * basis).
    Subspace image(const CMat &map, double eps = default_eps) const;

private:
    explicit Subspace(CMat basis) : m_basis(std::move(basis)) {}

    CMat m_basis;
};

Subspace kron(const Subspace &a, const Subspace &b);

// Orthogonal complement. The bilinear annihilator {w : w^T z = 0 for z in s}
// is spanned by the complex conjugates of its basis vectors.
Subspace annihilator(const Subspace &s);

// Covectors spanning the bilinear annihilator, as rows.
CMat annihilator_covectors(const Subspace &s);

// Intersection via the common null space of the stacked annihilators.
Subspace intersect(const Subspace &a, const Subspace &b, double eps = default_eps);

// Sum of subspaces: column concatenation with rank truncation.
Subspace sum(const Subspace &a, const Subspace &b, double eps = default_eps);

// Determinant form on C^2 (x) C^2: v0 v3 - v1 v2. Vanishes exactly on
// product vectors.
CScalar quad_form_A(const CVec &v);

// Symmetric bilinear form whose quadratic form is quad_form_A.
CScalar polar_A(const CVec &u, const CVec &v);

struct ProductFactors {
    CVec x;
    CVec y;
};

// Best rank-one approximation x (x) y of a vector in C^4 (2x2 reshape, top
// singular pair). Never fails; see factor_rank_one for the checked form.
ProductFactors dominant_factors(const CVec &v);

// Factors of a product vector: returns x, y with kron(x, y) ~ v when the 2x2
// reshape has second singular value <= eps * first. Zero vector -> empty.
std::optional<ProductFactors> factor_rank_one(const CVec &v, double eps = default_eps);

struct ProjectiveRoot {
    CVec point;       // (u, v) with largest-magnitude coordinate 1
    int multiplicity; // 1 or 2
};

struct QuadraticRoots {
    bool identically_zero = false; // every (u:v) is a root
    std::vector<ProjectiveRoot> roots;
};

// Projective roots of p u^2 + q uv + r v^2. Principal complex square root.
QuadraticRoots roots_binary_quadratic(CScalar p, CScalar q, CScalar r, double eps = default_eps);

} // namespace tensor
} // namespace spsys

#endif
