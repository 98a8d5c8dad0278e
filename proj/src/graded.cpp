#include "spsys/graded.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "spsys/errors.hpp"

namespace spsys::graded
{

using tensor::kron;
using tensor::relative_gap;

namespace
{

const CMat &id2()
{
    static const CMat m = CMat::Identity(2, 2);
    return m;
}

CMat mat2x4(std::initializer_list<double> row0, std::initializer_list<double> row1)
{
    CMat m(2, 4);
    int j = 0;
    for (double v : row0) {
        m(0, j++) = v;
    }
    j = 0;
    for (double v : row1) {
        m(1, j++) = v;
    }
    return m;
}

bool invertible2(const CMat &m, double eps)
{
    return m.rows() == 2 && m.cols() == 2 && tensor::numeric_rank(m, eps) == 2;
}

CMat power(const CMat &m, int k)
{
    CMat out = CMat::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) {
        out = out * m;
    }
    return out;
}

bool near(const CMat &m, const CMat &target, double eps)
{
    return (m - target).norm() <= eps * std::max(1.0, m.norm());
}

const CMat &level(const LevelMaps &f, int t)
{
    const auto it = f.find(t);
    if (it == f.end()) {
        throw PreconditionError("level map missing at level " + std::to_string(t));
    }
    return it->second;
}

void require_levels(const LevelMaps &f, int horizon)
{
    for (int t = 1; t <= horizon; ++t) {
        const auto &m = level(f, t);
        if (m.rows() != 2 || m.cols() != 2) {
            throw DimensionError("level map at level " + std::to_string(t) + " is not 2x2");
        }
    }
}

} // namespace

double associativity_residual(const CMat &mult)
{
    return relative_gap(mult * kron(mult, id2()), mult * kron(id2(), mult));
}

Algebra2 Algebra2::make(CMat mult, std::optional<std::string> name, double eps)
{
    if (mult.rows() != 2 || mult.cols() != 4) {
        throw DimensionError("structure matrix must be 2x4");
    }
    const double r = associativity_residual(mult);
    if (r > eps) {
        throw PreconditionError("structure matrix is not associative (residual " + std::to_string(r) + ")");
    }
    return Algebra2{std::move(mult), std::move(name)};
}

Algebra2 catalog(const std::string &name)
{
    // Columns: e1e1, e1e2, e2e1, e2e2.
    if (name == "D1") {
        return Algebra2::make(mat2x4({1, 0, 0, 0}, {0, 0, 0, 1}), name);
    }
    if (name == "D2") {
        return Algebra2::make(mat2x4({1, 0, 0, 0}, {0, 1, 1, 0}), name);
    }
    if (name == "D3") {
        return Algebra2::make(mat2x4({1, 0, 0, 0}, {0, 0, 1, 0}), name);
    }
    if (name == "D4") {
        return Algebra2::make(mat2x4({1, 0, 0, 0}, {0, 1, 0, 0}), name);
    }
    if (name == "D5") {
        return Algebra2::make(mat2x4({1, 0, 0, 0}, {0, 0, 0, 0}), name);
    }
    if (name == "D6") {
        return Algebra2::make(mat2x4({0, 0, 0, 0}, {1, 0, 0, 0}), name);
    }
    if (name == "D7") {
        return Algebra2::make(CMat::Zero(2, 4), name);
    }
    throw PreconditionError("unknown algebra '" + name + "', expected D1..D7");
}

bool check_surjective_mult(const Algebra2 &d, double eps)
{
    return tensor::numeric_rank(d.mult, eps) == 2;
}

bool is_automorphism(const Algebra2 &d, const CMat &m, double eps)
{
    if (!invertible2(m, eps)) {
        return false;
    }
    return relative_gap(d.mult * kron(m, m), m * d.mult) <= eps;
}

AutomorphismFamily automorphism_description(const std::string &name)
{
    AutomorphismFamily f;
    f.algebra = name;
    if (name == "D1") {
        CMat swap(2, 2);
        swap << 0.0, 1.0, 1.0, 0.0;
        f.description = "identity and the coordinate swap (a1, a2) -> (a2, a1)";
        f.members = {CMat::Identity(2, 2), swap};
        const auto members = f.members;
        f.member = [members](const std::vector<CScalar> &p) {
            return members.at(static_cast<std::size_t>(p.at(0).real()));
        };
        f.contains = [members](const CMat &m, double eps) {
            return std::any_of(members.begin(), members.end(), [&](const CMat &g) { return near(m, g, eps); });
        };
        return f;
    }
    if (name == "D2") {
        f.description = "(a1, a2) -> (a1, k a2), k != 0";
        f.parameters = 1;
        f.member = [](const std::vector<CScalar> &p) {
            CMat m(2, 2);
            m << 1.0, 0.0, 0.0, p.at(0);
            return m;
        };
        f.contains = [](const CMat &m, double eps) {
            const double s = std::max(1.0, m.norm());
            return std::abs(m(0, 0) - 1.0) <= eps * s && std::abs(m(0, 1)) <= eps * s &&
                   std::abs(m(1, 0)) <= eps * s && std::abs(m(1, 1)) > eps * s;
        };
        return f;
    }
    if (name == "D3" || name == "D4") {
        // e1 -> e1 + c e2, e2 -> k e2. These act trivially on the graded
        // algebras built from D3 and D4 up to isomorphism.
        f.description = "(a1, a2) -> (a1, c a1 + k a2), k != 0";
        f.parameters = 2;
        f.member = [](const std::vector<CScalar> &p) {
            CMat m(2, 2);
            m << 1.0, 0.0, p.at(0), p.at(1);
            return m;
        };
        f.contains = [](const CMat &m, double eps) {
            const double s = std::max(1.0, m.norm());
            return std::abs(m(0, 0) - 1.0) <= eps * s && std::abs(m(0, 1)) <= eps * s &&
                   std::abs(m(1, 1)) > eps * s;
        };
        return f;
    }
    throw PreconditionError("automorphisms are described only for D1..D4, got '" + name + "'");
}

GradedAlgebra GradedAlgebra::make(int horizon, std::map<std::pair<int, int>, CMat> m)
{
    if (horizon < 3) {
        throw PreconditionError("horizon must be at least 3, got " + std::to_string(horizon));
    }
    std::size_t expected = 0;
    for (int s = 1; s < horizon; ++s) {
        for (int t = 1; s + t <= horizon; ++t) {
            ++expected;
            const auto it = m.find({s, t});
            if (it == m.end()) {
                throw PreconditionError("missing multiplication map M_{" + std::to_string(s) + "," +
                                        std::to_string(t) + "}");
            }
            if (it->second.rows() != 2 || it->second.cols() != 4) {
                throw DimensionError("M_{" + std::to_string(s) + "," + std::to_string(t) + "} is not 2x4");
            }
        }
    }
    if (m.size() != expected) {
        throw PreconditionError("multiplication maps outside 1 <= s, t and s + t <= horizon");
    }
    return GradedAlgebra(horizon, std::move(m));
}

const CMat &GradedAlgebra::mult(int s, int t) const
{
    const auto it = m_maps.find({s, t});
    if (it == m_maps.end()) {
        throw DimensionError("no multiplication map at (" + std::to_string(s) + "," + std::to_string(t) + ")");
    }
    return it->second;
}

CMat GradedAlgebra::iterated(int n) const
{
    CMat out = id2();
    for (int k = 2; k <= n; ++k) {
        out = mult(k - 1, 1) * kron(out, id2());
    }
    return out;
}

ConditionReport check_associativity(const GradedAlgebra &g, double eps)
{
    ConditionReport rep;
    const int T = g.horizon();
    for (int r = 1; r <= T; ++r) {
        for (int s = 1; r + s < T; ++s) {
            for (int t = 1; r + s + t <= T; ++t) {
                const CMat lhs = g.mult(r + s, t) * kron(g.mult(r, s), id2());
                const CMat rhs = g.mult(r, s + t) * kron(id2(), g.mult(s, t));
                const double res = relative_gap(lhs, rhs);
                rep.worst_residual = std::max(rep.worst_residual, res);
                if (res > eps && rep.ok) {
                    rep.ok = false;
                    rep.first_failure = IndexTriple{r, s, t};
                    rep.message = "associativity fails at (" + std::to_string(r) + "," + std::to_string(s) + "," +
                                  std::to_string(t) + ")";
                }
            }
        }
    }
    return rep;
}

GradedAlgebra build_graded(const Algebra2 &d, const CMat &eta, int horizon, double eps)
{
    if (!is_automorphism(d, eta, eps)) {
        throw PreconditionError("eta is not an automorphism of " + d.name.value_or("the algebra"));
    }
    std::map<std::pair<int, int>, CMat> m;
    for (int s = 1; s < horizon; ++s) {
        const CMat right = kron(id2(), power(eta, s));
        for (int t = 1; s + t <= horizon; ++t) {
            m[{s, t}] = d.mult * right;
        }
    }
    return GradedAlgebra::make(horizon, std::move(m));
}

bool is_graded_automorphism(const GradedAlgebra &g, const LevelMaps &f, double eps)
{
    const int T = g.horizon();
    for (int t = 1; t <= T; ++t) {
        const auto it = f.find(t);
        if (it == f.end() || !invertible2(it->second, eps)) {
            return false;
        }
    }
    for (const auto &[st, m] : g.maps()) {
        const auto [s, t] = st;
        if (relative_gap(f.at(s + t) * m, m * kron(f.at(s), f.at(t))) > eps) {
            return false;
        }
    }
    return true;
}

GradedAlgebra twist(const GradedAlgebra &g, const LevelMaps &f, double eps)
{
    require_levels(f, g.horizon());
    if (!is_graded_automorphism(g, f, eps)) {
        throw PreconditionError("twist needs a graded automorphism");
    }
    std::map<std::pair<int, int>, CMat> m;
    for (const auto &[st, mult] : g.maps()) {
        const auto [s, t] = st;
        m[st] = mult * kron(id2(), power(f.at(t), s));
    }
    return GradedAlgebra::make(g.horizon(), std::move(m));
}

GradedAlgebra basis_change(const GradedAlgebra &g, const LevelMaps &h)
{
    require_levels(h, g.horizon());
    LevelMaps inv;
    for (const auto &[t, m] : h) {
        inv[t] = m.inverse();
    }
    std::map<std::pair<int, int>, CMat> m;
    for (const auto &[st, mult] : g.maps()) {
        const auto [s, t] = st;
        m[st] = h.at(s + t) * mult * kron(inv.at(s), inv.at(t));
    }
    return GradedAlgebra::make(g.horizon(), std::move(m));
}

bool check_image_condition(const GradedAlgebra &g, double eps)
{
    for (const auto &[st, m] : g.maps()) {
        if (tensor::numeric_rank(m, eps) != 2) {
            return false;
        }
    }
    for (int n = 2; n <= g.horizon(); ++n) {
        if (tensor::numeric_rank(g.iterated(n), eps) != 2) {
            return false;
        }
    }
    return true;
}

KernelReport kernel_condition_report(const GradedAlgebra &g, double eps)
{
    using tensor::Subspace;
    KernelReport rep;
    const auto c2 = Subspace::full(2);
    const int T = g.horizon();
    for (int r = 1; r <= T; ++r) {
        for (int s = 1; r + s < T; ++s) {
            for (int t = 1; r + s + t <= T; ++t) {
                const CMat mrst = g.mult(r + s, t) * kron(g.mult(r, s), id2());
                const auto ker = Subspace::span(tensor::null_space(mrst, eps), eps);
                const auto ker_rs = Subspace::span(tensor::null_space(g.mult(r, s), eps), eps);
                const auto ker_st = Subspace::span(tensor::null_space(g.mult(s, t), eps), eps);
                const auto rhs = tensor::sum(kron(ker_rs, c2), kron(c2, ker_st), eps);
                const double contain = ker.containment_residual(rhs);
                const double dist = ker.distance(rhs);
                rep.worst_residual = std::max(rep.worst_residual, dist);
                if (contain > eps) {
                    rep.contains_sum = false;
                }
                if (dist > eps && rep.ok) {
                    rep.ok = false;
                    rep.first_failure = IndexTriple{r, s, t};
                }
            }
        }
    }
    return rep;
}

bool check_kernel_condition(const GradedAlgebra &g, double eps)
{
    return kernel_condition_report(g, eps).ok;
}

std::pair<std::size_t, std::size_t> kernel_dimensions(const Algebra2 &d, double eps)
{
    using tensor::Subspace;
    const auto c2 = Subspace::full(2);
    const CMat mu3 = d.mult * kron(d.mult, id2());
    const auto ker3 = Subspace::span(tensor::null_space(mu3, eps), eps);
    const auto ker2 = Subspace::span(tensor::null_space(d.mult, eps), eps);
    const auto rhs = tensor::sum(kron(ker2, c2), kron(c2, ker2), eps);
    return {ker3.dim(), rhs.dim()};
}

GradedMorphism extend_morphism(const GradedAlgebra &gA, const GradedAlgebra &gB, const CMat &theta1,
                               const CMat &theta2, const ExtendOptions &opts)
{
    const double eps = opts.eps;
    if (gA.horizon() != gB.horizon()) {
        throw PreconditionError("graded algebras have different horizons");
    }
    if (theta1.rows() != 2 || theta1.cols() != 2 || theta2.rows() != 2 || theta2.cols() != 2) {
        throw DimensionError("theta1 and theta2 must be 2x2");
    }
    if (!check_image_condition(gA, eps)) {
        throw PreconditionError("source algebra violates the image condition");
    }
    if (!check_kernel_condition(gA, eps)) {
        throw PreconditionError("source algebra violates the kernel condition");
    }
    const double r2 = relative_gap(theta2 * gA.mult(1, 1), gB.mult(1, 1) * kron(theta1, theta1));
    if (r2 > eps) {
        throw PreconditionError("theta2 is not compatible with theta1 at level 2 (residual " + std::to_string(r2) +
                                ")");
    }

    std::mt19937_64 rng(opts.randomize_seed.value_or(0));
    GradedMorphism out;
    out.theta[1] = theta1;
    out.theta[2] = theta2;
    // X_n = M_B^{(n)} theta1^{(x) n}, built level by level.
    CMat x = gB.mult(1, 1) * kron(theta1, theta1);
    for (int n = 3; n <= gA.horizon(); ++n) {
        x = gB.mult(n - 1, 1) * kron(x, theta1);
        const CMat ma = gA.iterated(n);
        const auto cod = ma.completeOrthogonalDecomposition();
        CMat preimage = cod.pseudoInverse();
        if (opts.randomize_seed) {
            const CMat ker = tensor::null_space(ma, eps);
            preimage += ker * tensor::random_matrix(ker.cols(), 2, rng);
        }
        const CMat theta_n = x * preimage;
        const double defect = relative_gap(theta_n * ma, x);
        if (defect > eps) {
            throw NotExtendableError("kernel of the level-" + std::to_string(n) +
                                     " product is not mapped to zero (residual " + std::to_string(defect) + ")");
        }
        out.theta[n] = theta_n;
    }

    for (const auto &[n, res] : morphism_residuals(gA, gB, out)) {
        if (res > eps) {
            throw NotExtendableError("extended maps are not multiplicative at level " + std::to_string(n) +
                                     " (residual " + std::to_string(res) + ")");
        }
    }
    return out;
}

std::map<int, double> morphism_residuals(const GradedAlgebra &gA, const GradedAlgebra &gB, const GradedMorphism &m)
{
    std::map<int, double> out;
    for (int n = 1; n <= gA.horizon(); ++n) {
        out[n] = 0.0;
    }
    for (const auto &[st, ma] : gA.maps()) {
        const auto [s, t] = st;
        const double r = relative_gap(level(m.theta, s + t) * ma,
                                      gB.mult(s, t) * kron(level(m.theta, s), level(m.theta, t)));
        out[s + t] = std::max(out[s + t], r);
    }
    return out;
}

bool is_isomorphism(const GradedMorphism &m, double eps)
{
    return !m.theta.empty() && std::all_of(m.theta.begin(), m.theta.end(),
                                           [&](const auto &kv) { return invertible2(kv.second, eps); });
}

} // namespace spsys::graded
