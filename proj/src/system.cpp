#include "spsys/system.hpp"

#include <cmath>
#include <random>

#include "spsys/errors.hpp"

namespace spsys::system
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

std::string triple_str(int a, int b, int c)
{
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

template <typename F>
auto staged(const char *stage, F &&f) -> decltype(f())
{
    try {
        return f();
    } catch (const PipelineError &) {
        throw;
    } catch (const Error &e) {
        throw PipelineError(stage, e.what());
    }
}

} // namespace

SubproductSystem SubproductSystem::make(int horizon, std::map<std::pair<int, int>, CMat> beta)
{
    if (horizon < 3) {
        throw PreconditionError("horizon must be at least 3, got " + std::to_string(horizon));
    }
    std::size_t expected = 0;
    for (int s = 1; s < horizon; ++s) {
        for (int t = 1; s + t <= horizon; ++t) {
            ++expected;
            const auto it = beta.find({s, t});
            if (it == beta.end()) {
                throw PreconditionError("missing map beta_{" + std::to_string(s) + "," + std::to_string(t) + "}");
            }
            if (it->second.rows() != 4 || it->second.cols() != 2) {
                throw DimensionError("beta_{" + std::to_string(s) + "," + std::to_string(t) + "} is not 4x2");
            }
        }
    }
    if (beta.size() != expected) {
        throw PreconditionError("maps outside 1 <= s, t and s + t <= horizon");
    }
    return SubproductSystem(horizon, std::move(beta));
}

const CMat &SubproductSystem::beta(int s, int t) const
{
    const auto it = m_beta.find({s, t});
    if (it == m_beta.end()) {
        throw DimensionError("no map beta at (" + std::to_string(s) + "," + std::to_string(t) + ")");
    }
    return it->second;
}

std::string to_string(Label l)
{
    static const char *names[] = {"E1", "E2", "E3", "E4", "E5"};
    return names[static_cast<int>(l)];
}

Label label_from_string(const std::string &s)
{
    for (int i = 0; i < 5; ++i) {
        if (s == to_string(static_cast<Label>(i))) {
            return static_cast<Label>(i);
        }
    }
    throw PreconditionError("unknown system label '" + s + "', expected E1..E5");
}

SystemLabel SystemLabel::make(Label label, std::optional<CScalar> lambda)
{
    if (label == Label::E3) {
        if (!lambda || *lambda == 0.0) {
            throw PreconditionError("E3 needs a nonzero lambda");
        }
    } else if (lambda) {
        throw PreconditionError("lambda is only meaningful for E3");
    }
    return {label, lambda};
}

classify::TripleClass SystemLabel::triple_class() const
{
    return classify::TripleClass::make(static_cast<classify::TripleLabel>(static_cast<int>(label)), lambda);
}

SystemLabel SystemLabel::from_triple_class(const classify::TripleClass &c)
{
    return make(static_cast<Label>(static_cast<int>(c.label)), c.lambda);
}

SubproductSystem canonical_system(const SystemLabel &label, int horizon)
{
    const auto l = SystemLabel::make(label.label, label.lambda);
    std::map<std::pair<int, int>, CMat> beta;
    for (int s = 1; s < horizon; ++s) {
        for (int t = 1; s + t <= horizon; ++t) {
            // Slots: 0 = e1e1, 1 = e1e2, 2 = e2e1, 3 = e2e2.
            CMat b = CMat::Zero(4, 2);
            b(0, 0) = 1.0;
            switch (l.label) {
                case Label::E1:
                    b(3, 1) = 1.0;
                    break;
                case Label::E2:
                    if (s % 2 == 0) {
                        b(3, 1) = 1.0;
                    } else {
                        b(0, 0) = 0.0;
                        b(1, 0) = 1.0;
                        b(2, 1) = 1.0;
                    }
                    break;
                case Label::E3:
                    b(2, 1) = 1.0;
                    b(1, 1) = std::pow(*l.lambda, s);
                    break;
                case Label::E4:
                    b(2, 1) = 1.0;
                    break;
                case Label::E5:
                    b(1, 1) = 1.0;
                    break;
            }
            beta[{s, t}] = b;
        }
    }
    return SubproductSystem::make(horizon, std::move(beta));
}

AxiomReport check_axioms(const SubproductSystem &sys, double eps)
{
    AxiomReport rep;
    for (const auto &[st, b] : sys.maps()) {
        if (tensor::numeric_rank(b, eps) != 2 && rep.ok) {
            rep.ok = false;
            rep.failure_kind = "injectivity";
            rep.first_failure = IndexTriple{st.first, st.second, 0};
            rep.message = "beta_{" + std::to_string(st.first) + "," + std::to_string(st.second) +
                          "} is not injective";
        }
    }
    const int T = sys.horizon();
    for (int r = 1; r <= T; ++r) {
        for (int s = 1; r + s < T; ++s) {
            for (int t = 1; r + s + t <= T; ++t) {
                const CMat lhs = kron(sys.beta(r, s), id2()) * sys.beta(r + s, t);
                const CMat rhs = kron(id2(), sys.beta(s, t)) * sys.beta(r, s + t);
                const double res = relative_gap(lhs, rhs);
                rep.worst_residual = std::max(rep.worst_residual, res);
                if (res > eps && rep.ok) {
                    rep.ok = false;
                    rep.failure_kind = "associativity";
                    rep.first_failure = IndexTriple{r, s, t};
                    rep.message = "associativity fails at " + triple_str(r, s, t) + " with residual " +
                                  std::to_string(res);
                }
            }
        }
    }
    return rep;
}

classify::Triple triple_of_system(const SubproductSystem &sys, double eps)
{
    const CMat left = kron(sys.beta(1, 1), id2()) * sys.beta(2, 1);
    const CMat right = kron(id2(), sys.beta(1, 1)) * sys.beta(1, 2);
    const double res = relative_gap(left, right);
    if (res > eps) {
        throw PreconditionError("the two composites E3 -> E1^(x)3 differ (residual " + std::to_string(res) + ")");
    }
    return classify::Triple::make(tensor::Subspace::span(sys.beta(1, 1), eps), tensor::Subspace::span(left, eps),
                                  eps);
}

graded::GradedAlgebra dualize(const SubproductSystem &sys)
{
    std::map<std::pair<int, int>, CMat> m;
    for (const auto &[st, b] : sys.maps()) {
        m[st] = b.transpose();
    }
    return graded::GradedAlgebra::make(sys.horizon(), std::move(m));
}

SubproductSystem dualize(const graded::GradedAlgebra &g)
{
    std::map<std::pair<int, int>, CMat> beta;
    for (const auto &[st, m] : g.maps()) {
        beta[st] = m.transpose();
    }
    return SubproductSystem::make(g.horizon(), std::move(beta));
}

std::map<int, double> iso_residuals(const SubproductSystem &src, const SubproductSystem &dst, const LevelMaps &theta)
{
    std::map<int, double> out;
    for (int n = 1; n <= src.horizon(); ++n) {
        out[n] = 0.0;
    }
    for (const auto &[st, b] : src.maps()) {
        const auto [s, t] = st;
        const double r = relative_gap(kron(theta.at(s), theta.at(t)) * b, dst.beta(s, t) * theta.at(s + t));
        out[s + t] = std::max(out[s + t], r);
    }
    return out;
}

SystemClassification classify_system(const SubproductSystem &sys, double eps)
{
    const auto axioms = check_axioms(sys, eps);
    if (!axioms.ok) {
        throw PipelineError("axioms", axioms.message);
    }
    const auto triple = staged("triple", [&] { return triple_of_system(sys, eps); });
    const auto tc = staged("classify", [&] { return classify::classify_triple(triple, eps); });

    SystemClassification out{SystemLabel::from_triple_class(tc.cls), {}, tc.rank, tc.residual};
    const auto target = canonical_system(out.label, sys.horizon());
    const CMat &phi1 = tc.iso.theta;
    // Level 2 through the images of beta_{1,1}.
    const CMat phi2 = tensor::min_norm_solve(target.beta(1, 1), kron(phi1, phi1) * sys.beta(1, 1));

    // A morphism from the dual of the target to the dual of the input is the
    // transpose of the wanted system isomorphism.
    const auto morphism = staged("extend", [&] {
        return graded::extend_morphism(dualize(target), dualize(sys), phi1.transpose(), phi2.transpose(),
                                       graded::ExtendOptions{eps, std::nullopt});
    });
    if (!graded::is_isomorphism(morphism, eps)) {
        throw PipelineError("verify", "extended morphism is not invertible at every level");
    }
    for (const auto &[n, th] : morphism.theta) {
        out.iso.theta[n] = th.transpose();
    }
    out.iso.level_residuals = iso_residuals(sys, target, out.iso.theta);
    for (const auto &[n, r] : out.iso.level_residuals) {
        out.iso.max_residual = std::max(out.iso.max_residual, r);
    }
    if (out.iso.max_residual > eps) {
        throw PipelineError("verify", "system isomorphism residual " + std::to_string(out.iso.max_residual));
    }
    return out;
}

LevelMaps random_level_maps(int horizon, std::uint64_t seed, double max_cond)
{
    std::mt19937_64 rng(seed);
    LevelMaps out;
    for (int t = 1; t <= horizon; ++t) {
        for (;;) {
            CMat g = tensor::random_matrix(2, 2, rng);
            const auto sv = tensor::singular_values(g);
            if (sv(1) > 0.0 && sv(0) / sv(1) <= max_cond) {
                out[t] = std::move(g);
                break;
            }
        }
    }
    return out;
}

SubproductSystem scramble(const SubproductSystem &sys, std::uint64_t seed, LevelMaps *applied)
{
    const auto g = random_level_maps(sys.horizon(), seed);
    std::map<std::pair<int, int>, CMat> beta;
    for (const auto &[st, b] : sys.maps()) {
        const auto [s, t] = st;
        beta[st] = kron(g.at(s), g.at(t)) * b * g.at(s + t).inverse();
    }
    if (applied) {
        *applied = g;
    }
    return SubproductSystem::make(sys.horizon(), std::move(beta));
}

SubproductSystem random_system(const SystemLabel &label, std::uint64_t seed, int horizon)
{
    return scramble(canonical_system(label, horizon), seed);
}

} // namespace spsys::system
