#ifndef SPSYS_SYSTEM_HPP
#define SPSYS_SYSTEM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "spsys/classify.hpp"
#include "spsys/graded.hpp"

namespace spsys::system
{

using graded::IndexTriple;
using graded::LevelMaps;

inline constexpr int default_horizon = 6;

// Injective maps beta_{s,t} : E_{s+t} -> E_s (x) E_t as 4x2 matrices, for
// s, t >= 1 and s + t <= horizon.
class SubproductSystem
{
public:
    // Shape and completeness are validated here; axioms by check_axioms.
    static SubproductSystem make(int horizon, std::map<std::pair<int, int>, CMat> beta);

    int horizon() const noexcept
    {
        return m_horizon;
    }
    const CMat &beta(int s, int t) const;
    const std::map<std::pair<int, int>, CMat> &maps() const noexcept
    {
        return m_beta;
    }

private:
    SubproductSystem(int horizon, std::map<std::pair<int, int>, CMat> beta)
        : m_horizon(horizon), m_beta(std::move(beta))
    {
    }

    int m_horizon;
    std::map<std::pair<int, int>, CMat> m_beta;
};

enum class Label { E1, E2, E3, E4, E5 };

std::string to_string(Label l);
Label label_from_string(const std::string &s);

struct SystemLabel {
    Label label;
    std::optional<CScalar> lambda; // present iff label == E3, nonzero

    static SystemLabel make(Label label, std::optional<CScalar> lambda = std::nullopt);
    classify::TripleClass triple_class() const;
    static SystemLabel from_triple_class(const classify::TripleClass &c);
};

SubproductSystem canonical_system(const SystemLabel &label, int horizon = default_horizon);

struct AxiomReport {
    bool ok = true;
    double worst_residual = 0.0;
    // "injectivity" with (s, t, 0) or "associativity" with (r, s, t).
    std::string failure_kind;
    std::optional<IndexTriple> first_failure;
    std::string message;
};

AxiomReport check_axioms(const SubproductSystem &sys, double eps = default_eps);

// E2 = Im beta_{1,1}, E3 = Im (beta_{1,1} (x) 1) beta_{2,1}.
classify::Triple triple_of_system(const SubproductSystem &sys, double eps = default_eps);

// Transpose at every level.
graded::GradedAlgebra dualize(const SubproductSystem &sys);
SubproductSystem dualize(const graded::GradedAlgebra &g);

// theta_t : E_t -> E'_t with (theta_s (x) theta_t) beta_{s,t} = beta'_{s,t} theta_{s+t}.
struct SystemIso {
    LevelMaps theta;
    std::map<int, double> level_residuals;
    double max_residual = 0.0;
};

std::map<int, double> iso_residuals(const SubproductSystem &src, const SubproductSystem &dst, const LevelMaps &theta);

struct SystemClassification {
    SystemLabel label;
    SystemIso iso; // from the input to canonical_system(label)
    classify::RankInfo rank;
    double triple_residual = 0.0;
};

// Errors carry the failing stage: "axioms", "triple", "classify", "extend" or "verify".
SystemClassification classify_system(const SubproductSystem &sys, double eps = default_eps);

// (g_s (x) g_t) beta_{s,t} g_{s+t}^{-1} with seeded, well-conditioned g_t.
SubproductSystem scramble(const SubproductSystem &sys, std::uint64_t seed, LevelMaps *applied = nullptr);

SubproductSystem random_system(const SystemLabel &label, std::uint64_t seed, int horizon = default_horizon);

// Seeded invertible 2x2 maps with condition number at most max_cond.
LevelMaps random_level_maps(int horizon, std::uint64_t seed, double max_cond = 20.0);

} // namespace spsys::system

#endif
