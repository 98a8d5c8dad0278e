#include "spsys/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spsys/errors.hpp"

namespace spsys::tensor
{

CVec unit(std::size_t dim, std::size_t k)
{
    if (k >= dim) {
        throw DimensionError("unit vector index out of range");
    }
    CVec v = CVec::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(k)) = 1.0;
    return v;
}

CVec kron(const CVec &u, const CVec &v)
{
    const auto n = u.size() * v.size();
    if (n != 2 && n != 4 && n != 8) {
        throw DimensionError("kron of vectors would have dimension " + std::to_string(n) + ", not 2, 4 or 8");
    }
    CVec out(n);
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        out.segment(i * v.size(), v.size()) = u(i) * v;
    }
    return out;
}

CMat kron(const CMat &a, const CMat &b)
{
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Eigen::VectorXd singular_values(const CMat &m)
{
    if (m.size() == 0) {
        return Eigen::VectorXd();
    }
    return Eigen::JacobiSVD<CMat>(m).singularValues();
}

std::size_t numeric_rank(const CMat &m, double eps)
{
    const auto sv = singular_values(m);
    if (sv.size() == 0 || sv(0) == 0.0) {
        return 0;
    }
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > eps * sv(0)) {
            ++r;
        }
    }
    return r;
}

CMat null_space(const CMat &m, double eps)
{
    const auto n = m.cols();
    if (m.rows() == 0) {
        return CMat::Identity(n, n);
    }
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    Eigen::Index r = 0;
    if (sv.size() > 0 && sv(0) > 0.0) {
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (sv(i) > eps * sv(0)) {
                ++r;
            }
        }
    }
    return svd.matrixV().rightCols(n - r);
}

CMat min_norm_solve(const CMat &a, const CMat &b)
{
    return a.completeOrthogonalDecomposition().solve(b);
}

double relative_gap(const CMat &a, const CMat &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("relative_gap of differently shaped matrices");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    const double scale = std::max(singular_values(a)(0), singular_values(b)(0));
    if (scale == 0.0) {
        return 0.0;
    }
    return singular_values(a - b)(0) / scale;
}

double uniform01(std::mt19937_64 &rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

CMat random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng)
{
    CMat m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = 2.0 * uniform01(rng) - 1.0;
            const double im = 2.0 * uniform01(rng) - 1.0;
            m(i, j) = CScalar(re, im);
        }
    }
    return m;
}

CVec normalize_projective(const CVec &v)
{
    Eigen::Index best = 0;
    double mag = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > mag) {
            mag = std::abs(v(i));
            best = i;
        }
    }
    if (mag <= 0.0) {
        return v;
    }
    return v / v(best);
}

double collinearity_gap(const CVec &x, const CVec &y)
{
    const double nx = x.norm(), ny = y.norm();
    if (nx == 0.0 || ny == 0.0) {
        return 0.0;
    }
    return std::abs(x(0) * y(1) - x(1) * y(0)) / (nx * ny);
}

Subspace Subspace::span(const CMat &columns, double eps)
{
    if (columns.cols() == 0) {
        return zero(static_cast<std::size_t>(columns.rows()));
    }
    Eigen::JacobiSVD<CMat> svd(columns, Eigen::ComputeThinU);
    const auto &sv = svd.singularValues();
    Eigen::Index r = 0;
    if (sv(0) > 0.0) {
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (sv(i) > eps * sv(0)) {
                ++r;
            }
        }
    }
    return Subspace(svd.matrixU().leftCols(r));
}

Subspace Subspace::span(const std::vector<CVec> &vectors, std::size_t ambient, double eps)
{
    CMat cols(static_cast<Eigen::Index>(ambient), static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (static_cast<std::size_t>(vectors[i].size()) != ambient) {
            throw DimensionError("spanning vector has the wrong dimension");
        }
        cols.col(static_cast<Eigen::Index>(i)) = vectors[i];
    }
    return span(cols, eps);
}

Subspace Subspace::zero(std::size_t ambient)
{
    return Subspace(CMat(static_cast<Eigen::Index>(ambient), 0));
}

Subspace Subspace::full(std::size_t ambient)
{
    const auto n = static_cast<Eigen::Index>(ambient);
    return Subspace(CMat::Identity(n, n));
}

CMat Subspace::projector() const
{
    return m_basis * m_basis.adjoint();
}

bool Subspace::contains(const CVec &v, double eps) const
{
    if (v.size() != m_basis.rows()) {
        throw DimensionError("membership test across ambient dimensions");
    }
    const CVec residual = v - m_basis * (m_basis.adjoint() * v);
    return residual.norm() <= eps * v.norm();
}

double Subspace::containment_residual(const Subspace &other) const
{
    if (other.ambient_dim() != ambient_dim()) {
        throw DimensionError("containment test across ambient dimensions");
    }
    if (other.dim() == 0) {
        return 0.0;
    }
    const CMat residual = other.m_basis - m_basis * (m_basis.adjoint() * other.m_basis);
    return singular_values(residual)(0);
}

bool Subspace::contains(const Subspace &other, double eps) const
{
    return containment_residual(other) <= eps;
}

double Subspace::distance(const Subspace &other) const
{
    if (other.ambient_dim() != ambient_dim() || other.dim() != dim()) {
        return 1.0;
    }
    return containment_residual(other);
}

bool Subspace::equals(const Subspace &other, double eps) const
{
    return distance(other) <= eps;
}

Subspace Subspace::image(const CMat &map, double eps) const
{
    if (map.cols() != m_basis.rows()) {
        throw DimensionError("image under a map with the wrong domain");
    }
    return span(map * m_basis, eps);
}

Subspace kron(const Subspace &a, const Subspace &b)
{
    // Kronecker products of orthonormal bases stay orthonormal.
    return Subspace::span(kron(a.basis(), b.basis()));
}

Subspace annihilator(const Subspace &s)
{
    if (s.dim() == 0) {
        return Subspace::full(s.ambient_dim());
    }
    return Subspace::span(null_space(s.basis().adjoint()));
}

CMat annihilator_covectors(const Subspace &s)
{
    return annihilator(s).basis().adjoint();
}

Subspace intersect(const Subspace &a, const Subspace &b, double eps)
{
    if (a.ambient_dim() != b.ambient_dim()) {
        throw DimensionError("intersection across ambient dimensions");
    }
    const CMat ca = annihilator_covectors(a);
    const CMat cb = annihilator_covectors(b);
    CMat stacked(ca.rows() + cb.rows(), a.ambient_dim());
    stacked << ca, cb;
    return Subspace::span(null_space(stacked, eps), eps);
}

Subspace sum(const Subspace &a, const Subspace &b, double eps)
{
    if (a.ambient_dim() != b.ambient_dim()) {
        throw DimensionError("sum across ambient dimensions");
    }
    CMat cols(a.ambient_dim(), a.dim() + b.dim());
    cols << a.basis(), b.basis();
    return Subspace::span(cols, eps);
}

CScalar quad_form_A(const CVec &v)
{
    if (v.size() != 4) {
        throw DimensionError("quad_form_A needs a vector of C^2 (x) C^2");
    }
    return v(0) * v(3) - v(1) * v(2);
}

CScalar polar_A(const CVec &u, const CVec &v)
{
    if (u.size() != 4 || v.size() != 4) {
        throw DimensionError("polar_A needs vectors of C^2 (x) C^2");
    }
    return 0.5 * (u(0) * v(3) + u(3) * v(0) - u(1) * v(2) - u(2) * v(1));
}

ProductFactors dominant_factors(const CVec &v)
{
    if (v.size() != 4) {
        throw DimensionError("product factorisation needs a vector of C^2 (x) C^2");
    }
    Eigen::Matrix2cd m;
    m << v(0), v(1), v(2), v(3);
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double s = svd.singularValues()(0);
    CVec x = s * svd.matrixU().col(0);
    CVec y = svd.matrixV().col(0).conjugate();
    return {std::move(x), std::move(y)};
}

std::optional<ProductFactors> factor_rank_one(const CVec &v, double eps)
{
    if (v.size() != 4) {
        throw DimensionError("product factorisation needs a vector of C^2 (x) C^2");
    }
    Eigen::Matrix2cd m;
    m << v(0), v(1), v(2), v(3);
    const auto sv = Eigen::JacobiSVD<Eigen::Matrix2cd>(m).singularValues();
    if (sv(0) == 0.0 || sv(1) > eps * sv(0)) {
        return std::nullopt;
    }
    return dominant_factors(v);
}

namespace
{

CVec projective_point(CScalar u, CScalar v)
{
    CVec p(2);
    p << u, v;
    return normalize_projective(p);
}

} // namespace

QuadraticRoots roots_binary_quadratic(CScalar p, CScalar q, CScalar r, double eps)
{
    QuadraticRoots out;
    const double scale = std::max({std::abs(p), std::abs(q), std::abs(r)});
    if (scale == 0.0) {
        out.identically_zero = true;
        return out;
    }
    if (p == 0.0 && r == 0.0) {
        out.roots.push_back({projective_point(1.0, 0.0), 1});
        out.roots.push_back({projective_point(0.0, 1.0), 1});
        return out;
    }
    // Solve in the affine chart with the larger outer coefficient leading:
    // a z^2 + b z + c = 0 where z = u/v (p leads) or z = v/u (r leads).
    const bool p_leads = std::abs(p) >= std::abs(r);
    const CScalar a = (p_leads ? p : r) / scale;
    const CScalar b = q / scale;
    const CScalar c = (p_leads ? r : p) / scale;
    const CScalar disc = b * b - 4.0 * a * c;
    auto to_point = [&](CScalar z) { return p_leads ? projective_point(z, 1.0) : projective_point(1.0, z); };

    if (std::abs(disc) <= eps * std::max(std::abs(b * b), std::abs(a * c))) {
        out.roots.push_back({to_point(-b / (2.0 * a)), 2});
        return out;
    }
    CScalar s = std::sqrt(disc);
    if (std::abs(b + s) < std::abs(b - s)) {
        s = -s;
    }
    const CScalar t = -(b + s) / 2.0;
    out.roots.push_back({to_point(t / a), 1});
    out.roots.push_back({to_point(c / t), 1});
    return out;
}

} // namespace spsys::tensor
