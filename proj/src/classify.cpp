#include "spsys/classify.hpp"

#include <algorithm>
#include <cmath>

#include "spsys/determinant.hpp"
#include "spsys/errors.hpp"

namespace spsys::classify
{

using tensor::kron;
using tensor::normalize_projective;
using tensor::unit;

namespace
{

void require_plane(const Subspace &s, const char *what)
{
    if (s.ambient_dim() != 4 || s.dim() != 2) {
        throw DimensionError(std::string(what) + " must be a 2-dimensional subspace of C^2 (x) C^2, got dim " +
                             std::to_string(s.dim()) + " in C^" + std::to_string(s.ambient_dim()));
    }
}

Eigen::Matrix2cd restricted_form(const Subspace &plane)
{
    const CVec b0 = plane.basis().col(0);
    const CVec b1 = plane.basis().col(1);
    Eigen::Matrix2cd g;
    g(0, 0) = tensor::polar_A(b0, b0);
    g(0, 1) = tensor::polar_A(b0, b1);
    g(1, 0) = g(0, 1);
    g(1, 1) = tensor::polar_A(b1, b1);
    return g;
}

// Unit vector orthogonal to x in C^2.
CVec complement(const CVec &x)
{
    CVec y(2);
    y << -std::conj(x(1)), std::conj(x(0));
    return normalize_projective(y);
}

CVec e(std::size_t k)
{
    return unit(2, k);
}

CVec kron3(const CVec &a, const CVec &b, const CVec &c)
{
    return kron(kron(a, b), c);
}

// Coordinates of v in the basis {x(x)x', x(x)y', y(x)x', y(x)y'}.
Eigen::Vector4cd coords_in_product_basis(const CVec &v, const CVec &x, const CVec &y, const CVec &xp,
                                         const CVec &yp)
{
    Eigen::Matrix4cd s;
    s.col(0) = kron(x, xp);
    s.col(1) = kron(x, yp);
    s.col(2) = kron(y, xp);
    s.col(3) = kron(y, yp);
    return s.fullPivLu().solve(Eigen::Vector4cd(v));
}

// Ordering key for rank-2 product directions: larger leading coordinate first.
bool leads(const CVec &a, const CVec &b)
{
    const CVec na = normalize_projective(a), nb = normalize_projective(b);
    if (std::abs(na(0)) != std::abs(nb(0))) {
        return std::abs(na(0)) > std::abs(nb(0));
    }
    return std::abs(na(1)) < std::abs(nb(1));
}

CMat inverse_of_columns(const CVec &x, const CVec &y)
{
    Eigen::Matrix2cd m;
    m.col(0) = x;
    m.col(1) = y;
    return m.inverse();
}

} // namespace

RankInfo rank_of_plane(const Subspace &plane, double eps)
{
    require_plane(plane, "plane");
    const auto sv = Eigen::JacobiSVD<Eigen::Matrix2cd>(restricted_form(plane)).singularValues();
    RankInfo info;
    info.singular_values = {sv(0), sv(1)};
    const double strong = std::sqrt(eps);
    for (int i = 0; i < 2; ++i) {
        if (sv(i) > eps) {
            ++info.rank;
        }
        if (sv(i) > eps && sv(i) < strong) {
            info.confident = false;
        }
    }
    return info;
}

std::string to_string(PlaneCase c)
{
    switch (c) {
        case PlaneCase::left:
            return "left";
        case PlaneCase::right:
            return "right";
        default:
            return "none";
    }
}

std::array<CVec, 2> PlaneNormalForm::spanning_vectors() const
{
    const auto &[x1, y1] = basis1;
    const auto &[x2, y2] = basis2;
    switch (rank.rank) {
        case 2:
            return {kron(x1, x2), kron(y1, y2)};
        case 1:
            return {kron(x1, x2), CVec(kron(y1, x2) + kron(x1, y2))};
        default:
            if (case_tag == PlaneCase::left) {
                return {kron(x1, x2), kron(y1, x2)};
            }
            return {kron(x1, x2), kron(x1, y2)};
    }
}

PlaneNormalForm plane_normal_form(const Subspace &plane, double eps)
{
    PlaneNormalForm nf;
    nf.rank = rank_of_plane(plane, eps);
    const Eigen::Matrix2cd g = restricted_form(plane);
    const CVec b0 = plane.basis().col(0);
    const CVec b1 = plane.basis().col(1);

    if (nf.rank.rank == 2) {
        // The two isotropic lines of the restricted form are product vectors.
        const auto roots = tensor::roots_binary_quadratic(g(0, 0), 2.0 * g(0, 1), g(1, 1), 0.0);
        if (roots.identically_zero || roots.roots.size() != 2) {
            throw std::logic_error("rank-2 restricted form without two isotropic lines");
        }
        std::array<tensor::ProductFactors, 2> f;
        for (int k = 0; k < 2; ++k) {
            const auto &pt = roots.roots[k].point;
            f[k] = tensor::dominant_factors(pt(0) * b0 + pt(1) * b1);
        }
        if (!leads(f[0].x, f[1].x)) {
            std::swap(f[0], f[1]);
        }
        nf.basis1 = {normalize_projective(f[0].x), normalize_projective(f[1].x)};
        nf.basis2 = {normalize_projective(f[0].y), normalize_projective(f[1].y)};
        return nf;
    }

    if (nf.rank.rank == 1) {
        // The unique product direction spans the null space of the form.
        Eigen::JacobiSVD<Eigen::Matrix2cd> svd(g, Eigen::ComputeFullV);
        const Eigen::Vector2cd z = svd.matrixV().col(1);
        const CVec psi = z(0) * b0 + z(1) * b1;
        const auto f = tensor::dominant_factors(psi);
        const CVec x1 = normalize_projective(f.x);
        const CVec x2 = normalize_projective(f.y);
        CVec y1 = complement(x1);
        CVec y2 = complement(x2);
        // Any plane vector independent of psi; its coordinates have delta = 0
        // and beta, gamma != 0.
        const CVec psi_n = psi / psi.norm();
        CVec xi = b0 - psi_n * psi_n.dot(b0);
        const CVec alt = b1 - psi_n * psi_n.dot(b1);
        if (alt.norm() > xi.norm()) {
            xi = alt;
        }
        const auto c = coords_in_product_basis(xi, x1, y1, x2, y2);
        y2 *= c(1);
        y1 *= c(2);
        nf.basis1 = {x1, y1};
        nf.basis2 = {x2, y2};
        return nf;
    }

    // Rank 0: every vector of the plane is a product vector.
    const auto f0 = tensor::dominant_factors(b0);
    const auto f1 = tensor::dominant_factors(b1);
    const double left_gap = tensor::collinearity_gap(f0.x, f1.x);
    const double right_gap = tensor::collinearity_gap(f0.y, f1.y);
    if (left_gap <= right_gap) {
        // Left factors collinear: plane = x1 (x) C^2.
        nf.case_tag = PlaneCase::right;
        const CVec x1 = normalize_projective(f0.x);
        nf.basis1 = {x1, complement(x1)};
        nf.basis2 = {normalize_projective(f0.y), normalize_projective(f1.y)};
    } else {
        nf.case_tag = PlaneCase::left;
        const CVec x2 = normalize_projective(f0.y);
        nf.basis1 = {normalize_projective(f0.x), normalize_projective(f1.x)};
        nf.basis2 = {x2, complement(x2)};
    }
    return nf;
}

std::array<CScalar, 16> lemma_coefficients(const Subspace &l12, const Subspace &l23)
{
    require_plane(l12, "L12");
    require_plane(l23, "L23");
    const CMat c12 = tensor::annihilator_covectors(l12);
    const CMat c23 = tensor::annihilator_covectors(l23);
    std::array<CScalar, 16> out;
    for (int row = 0; row < 2; ++row) {
        // u12 = a uu + b uv + c vu + d vv in slot order (i, j) -> 2i + j.
        for (int k = 0; k < 4; ++k) {
            out[4 * row + k] = c12(row, k);
        }
        // u23 = A uu + B vu + C uv + D vv, so A..D sit at slots 0, 2, 1, 3.
        out[8 + 4 * row + 0] = c23(row, 0);
        out[8 + 4 * row + 1] = c23(row, 2);
        out[8 + 4 * row + 2] = c23(row, 1);
        out[8 + 4 * row + 3] = c23(row, 3);
    }
    return out;
}

namespace
{

struct NumericQuad {
    CScalar p, q, r;
};

NumericQuad numeric_quad(const CScalar *row_u, const CScalar *row_v)
{
    const CScalar a = row_u[0], b = row_u[1], c = row_u[2], d = row_u[3];
    const CScalar e = row_v[0], f = row_v[1], g = row_v[2], h = row_v[3];
    return {a * g - c * e, (a * h - d * e) + (b * g - c * f), b * h - d * f};
}

CScalar eval_form(const NumericQuad &f, const CVec &x)
{
    return f.p * x(0) * x(0) + f.q * x(0) * x(1) + f.r * x(1) * x(1);
}

double form_scale(const NumericQuad &f)
{
    return std::max({std::abs(f.p), std::abs(f.q), std::abs(f.r)});
}

CVec null_vector2(const Eigen::Matrix2cd &m)
{
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m, Eigen::ComputeFullV);
    return normalize_projective(svd.matrixV().col(1));
}

} // namespace

NumericDeterminants numeric_determinants(const std::array<CScalar, 16> &coeffs)
{
    const auto sym = poly::det8_matrix();
    const std::span<const CScalar, 16> values(coeffs);
    Eigen::Matrix<CScalar, 8, 8> m;
    for (std::size_t r = 0; r < 8; ++r) {
        for (std::size_t c = 0; c < 8; ++c) {
            m(r, c) = poly::eval_poly(sym(r, c), values);
        }
    }
    const auto lo = numeric_quad(&coeffs[0], &coeffs[4]);
    const auto up = numeric_quad(&coeffs[8], &coeffs[12]);
    Eigen::Matrix4cd res;
    res << lo.p, lo.q, lo.r, 0.0, //
        0.0, lo.p, lo.q, lo.r,     //
        up.p, up.q, up.r, 0.0,     //
        0.0, up.p, up.q, up.r;
    return {m.determinant(), res.determinant()};
}

std::optional<ProductTriple> product_in_intersection(const Subspace &l12, const Subspace &l23, double eps)
{
    require_plane(l12, "L12");
    require_plane(l23, "L23");
    const auto c2 = Subspace::full(2);
    const auto inter = tensor::intersect(kron(l12, c2), kron(c2, l23), eps);
    if (inter.dim() == 0) {
        return std::nullopt;
    }

    const auto k = lemma_coefficients(l12, l23);
    const auto f12 = numeric_quad(&k[0], &k[4]);
    const auto f23 = numeric_quad(&k[8], &k[12]);
    const double s12 = form_scale(f12), s23 = form_scale(f23);

    // Common root of the two binary quadratics in x2.
    std::vector<CVec> candidates;
    for (const auto &[f, s] : {std::pair{f12, s12}, std::pair{f23, s23}}) {
        if (s == 0.0) {
            continue;
        }
        for (const auto &root : tensor::roots_binary_quadratic(f.p, f.q, f.r, eps).roots) {
            candidates.push_back(root.point);
        }
    }
    if (candidates.empty()) {
        candidates.push_back(e(0));
    }
    auto score = [&](const CVec &x) {
        const double r12 = s12 == 0.0 ? 0.0 : std::abs(eval_form(f12, x)) / s12;
        const double r23 = s23 == 0.0 ? 0.0 : std::abs(eval_form(f23, x)) / s23;
        return std::max(r12, r23);
    };
    const CVec x2 = *std::min_element(candidates.begin(), candidates.end(),
                                      [&](const CVec &a, const CVec &b) { return score(a) < score(b); });

    const CScalar al = x2(0), be = x2(1);
    Eigen::Matrix2cd m1, m3;
    m1 << k[0] * al + k[1] * be, k[2] * al + k[3] * be, //
        k[4] * al + k[5] * be, k[6] * al + k[7] * be;
    m3 << k[8] * al + k[9] * be, k[10] * al + k[11] * be, //
        k[12] * al + k[13] * be, k[14] * al + k[15] * be;
    return ProductTriple{null_vector2(m1), x2, null_vector2(m3)};
}

Triple Triple::make(Subspace e2, Subspace e3, double eps)
{
    if (e2.ambient_dim() != 4 || e2.dim() != 2) {
        throw PreconditionError("E2 must be a 2-dimensional subspace of C^4");
    }
    if (e3.ambient_dim() != 8 || e3.dim() != 2) {
        throw PreconditionError("E3 must be a 2-dimensional subspace of C^8");
    }
    const auto c2 = Subspace::full(2);
    const double left = kron(e2, c2).containment_residual(e3);
    const double right = kron(c2, e2).containment_residual(e3);
    if (left > eps || right > eps) {
        throw PreconditionError("E3 is not contained in (E2 (x) E1) and (E1 (x) E2): residuals " +
                                std::to_string(left) + ", " + std::to_string(right));
    }
    return Triple(std::move(e2), std::move(e3));
}

Triple Triple::transformed(const CMat &theta, double eps) const
{
    const CMat t2 = kron(theta, theta);
    return Triple(m_e2.image(t2, eps), m_e3.image(kron(t2, theta), eps));
}

double Triple::distance(const Triple &other) const
{
    return std::max(m_e2.distance(other.m_e2), m_e3.distance(other.m_e3));
}

std::string to_string(TripleLabel l)
{
    static const char *names[] = {"C1", "C2", "C3", "C4", "C5"};
    return names[static_cast<int>(l)];
}

TripleLabel triple_label_from_string(const std::string &s)
{
    for (int i = 0; i < 5; ++i) {
        if (s == to_string(static_cast<TripleLabel>(i))) {
            return static_cast<TripleLabel>(i);
        }
    }
    throw PreconditionError("unknown triple label '" + s + "'");
}

TripleClass TripleClass::make(TripleLabel label, std::optional<CScalar> lambda)
{
    if (label == TripleLabel::C3) {
        if (!lambda || *lambda == 0.0) {
            throw PreconditionError("C3 needs a nonzero lambda");
        }
    } else if (lambda) {
        throw PreconditionError("lambda is only meaningful for C3");
    }
    return {label, lambda};
}

Triple canonical_triple(const TripleClass &c)
{
    const auto cls = TripleClass::make(c.label, c.lambda);
    const CVec e1 = e(0), e2 = e(1);
    std::vector<CVec> v2, v3;
    switch (cls.label) {
        case TripleLabel::C1:
            v2 = {kron(e1, e1), kron(e2, e2)};
            v3 = {kron3(e1, e1, e1), kron3(e2, e2, e2)};
            break;
        case TripleLabel::C2:
            v2 = {kron(e1, e2), kron(e2, e1)};
            v3 = {kron3(e1, e2, e1), kron3(e2, e1, e2)};
            break;
        case TripleLabel::C3: {
            const CScalar l = *cls.lambda;
            v2 = {kron(e1, e1), CVec(kron(e2, e1) + l * kron(e1, e2))};
            v3 = {kron3(e1, e1, e1), CVec(kron3(e2, e1, e1) + l * kron3(e1, e2, e1) + l * l * kron3(e1, e1, e2))};
            break;
        }
        case TripleLabel::C4:
            v2 = {kron(e1, e1), kron(e2, e1)};
            v3 = {kron3(e1, e1, e1), kron3(e2, e1, e1)};
            break;
        case TripleLabel::C5:
            v2 = {kron(e1, e1), kron(e1, e2)};
            v3 = {kron3(e1, e1, e1), kron3(e1, e1, e2)};
            break;
    }
    return Triple::make(Subspace::span(v2, 4), Subspace::span(v3, 8));
}

TripleClassification classify_triple(const Triple &t, double eps)
{
    const auto nf = plane_normal_form(t.e2(), eps);
    const auto &[x1, y1] = nf.basis1;
    const auto &[x2, y2] = nf.basis2;

    TripleLabel label{};
    std::optional<CScalar> lambda;
    CVec x, y;
    switch (nf.rank.rank) {
        case 2: {
            using tensor::collinearity_gap;
            const double same = std::max(collinearity_gap(x1, x2), collinearity_gap(y1, y2));
            const double crossed = std::max(collinearity_gap(x1, y2), collinearity_gap(y1, x2));
            label = same <= crossed ? TripleLabel::C1 : TripleLabel::C2;
            x = x1;
            y = y1;
            break;
        }
        case 1: {
            label = TripleLabel::C3;
            if (tensor::collinearity_gap(x1, x2) > std::sqrt(eps)) {
                throw NotSubproductTripleError("rank-1 E2 whose product direction is not of the form x (x) x");
            }
            x = x1;
            y = complement(x);
            const auto c = coords_in_product_basis(nf.spanning_vectors()[1], x, y, x, y);
            if (std::abs(c(2)) <= eps * c.norm()) {
                throw NotSubproductTripleError("rank-1 E2 without a y (x) x component");
            }
            lambda = c(1) / c(2);
            break;
        }
        default:
            if (nf.case_tag == PlaneCase::left) {
                label = TripleLabel::C4;
                x = x2;
            } else {
                label = TripleLabel::C5;
                x = x1;
            }
            y = complement(x);
            break;
    }

    TripleClassification out{TripleClass::make(label, lambda), TripleIso{inverse_of_columns(x, y)}, 0.0, nf.rank};
    const auto target = canonical_triple(out.cls);
    out.residual = target.distance(t.transformed(out.iso.theta, eps));
    // Consistency of E3 with the normal form forced by E2.
    if (out.residual > std::max(1e3 * eps, 1e-7)) {
        throw NotSubproductTripleError("E3 does not match the normal form implied by E2 (" + to_string(label) +
                                       "), residual " + std::to_string(out.residual));
    }
    return out;
}

ChainNormalForm chain_normal_form(const Subspace &l12, const Subspace &l23, const Subspace &l123, double eps)
{
    require_plane(l12, "L12");
    require_plane(l23, "L23");
    if (l123.ambient_dim() != 8 || l123.dim() != 2) {
        throw DimensionError("L123 must be a 2-dimensional subspace of C^8");
    }
    const auto c2 = Subspace::full(2);
    const double tol = std::max(1e3 * eps, 1e-7);
    if (kron(l12, c2).containment_residual(l123) > tol || kron(c2, l23).containment_residual(l123) > tol) {
        throw PreconditionError("L123 is not inside (L12 (x) L3) and (L1 (x) L23)");
    }

    const auto r12 = rank_of_plane(l12, eps).rank;
    const auto r23 = rank_of_plane(l23, eps).rank;
    if (r12 == 0 || r23 == 0) {
        throw UnclassifiedChainError("chain with a rank-0 plane (ranks " + std::to_string(r12) + ", " +
                                     std::to_string(r23) + ") has no normal form");
    }
    if (r12 != r23) {
        throw PreconditionError("ranks of L12 and L23 differ (" + std::to_string(r12) + " vs " +
                                std::to_string(r23) + "), impossible for a 2-dimensional L123");
    }

    const auto nf = plane_normal_form(l12, eps);
    const auto span12 = nf.spanning_vectors();
    // L123 basis vectors as span12[0] (x) a_k + span12[1] (x) b_k.
    CMat s(8, 4);
    s.col(0) = kron(span12[0], e(0));
    s.col(1) = kron(span12[0], e(1));
    s.col(2) = kron(span12[1], e(0));
    s.col(3) = kron(span12[1], e(1));
    const CMat coeffs = tensor::min_norm_solve(s, l123.basis());
    const Eigen::Matrix2cd a = coeffs.topRows(2);
    const Eigen::Matrix2cd b = coeffs.bottomRows(2);

    Eigen::JacobiSVD<Eigen::Matrix2cd> svd_b(b, Eigen::ComputeFullV);
    const CVec x3 = normalize_projective(a * svd_b.matrixV().col(1));
    CVec y3;
    if (r12 == 2) {
        Eigen::JacobiSVD<Eigen::Matrix2cd> svd_a(a, Eigen::ComputeFullV);
        y3 = normalize_projective(b * svd_a.matrixV().col(1));
    } else {
        const Eigen::Vector2cd c = svd_b.matrixV().col(0);
        const CVec bv = b * c;
        const CScalar beta = x3.dot(bv) / x3.squaredNorm();
        y3 = (a * c) / beta;
    }

    ChainNormalForm out{r12, r23, nf.basis1, nf.basis2, {x3, y3}, Subspace::zero(8), 0.0};
    const auto &[x1, y1] = out.basis1;
    const auto &[x2, y2] = out.basis2;
    if (r12 == 2) {
        out.l123 = Subspace::span(std::vector<CVec>{kron3(x1, x2, x3), kron3(y1, y2, y3)}, 8);
    } else {
        out.l123 = Subspace::span(
            std::vector<CVec>{kron3(x1, x2, x3), CVec(kron3(y1, x2, x3) + kron3(x1, y2, x3) + kron3(x1, x2, y3))}, 8);
    }
    out.residual = out.l123.distance(l123);
    if (tensor::collinearity_gap(x3, y3) <= eps || out.residual > tol) {
        throw PreconditionError("L123 has no normal form over these planes (residual " +
                                std::to_string(out.residual) + ")");
    }
    return out;
}

} // namespace spsys::classify
