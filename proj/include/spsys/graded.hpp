#ifndef SPSYS_GRADED_HPP
#define SPSYS_GRADED_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spsys/tensor.hpp"

namespace spsys::graded
{

// Two-dimensional algebra given by its 2x4 structure matrix: column 2i + j is
// the product e_{i+1} e_{j+1}.
struct Algebra2 {
    CMat mult;
    std::optional<std::string> name;

    // Checks the shape and associativity; throws PreconditionError.
    static Algebra2 make(CMat mult, std::optional<std::string> name = std::nullopt, double eps = default_eps);
};

// mult (mult (x) 1) - mult (1 (x) mult), spectral norm relative to the larger side.
double associativity_residual(const CMat &mult);

// D1..D7.
Algebra2 catalog(const std::string &name);
inline const std::array<std::string, 7> catalog_names = {"D1", "D2", "D3", "D4", "D5", "D6", "D7"};

bool check_surjective_mult(const Algebra2 &d, double eps = default_eps);

// Invertible and multiplicative: mult (m (x) m) = m mult.
bool is_automorphism(const Algebra2 &d, const CMat &m, double eps = default_eps);

// Closed-form automorphism group of a catalog algebra D1..D4.
struct AutomorphismFamily {
    std::string algebra;
    std::string description;
    // Number of continuous parameters; 0 for a finite group listed in `members`.
    std::size_t parameters = 0;
    std::vector<CMat> members;
    // Family member for given parameters (size `parameters`); for finite groups
    // the single argument is an index into `members`.
    std::function<CMat(const std::vector<CScalar> &)> member;
    std::function<bool(const CMat &, double)> contains;
};

AutomorphismFamily automorphism_description(const std::string &name);

// Multiplication maps M_{s,t} : A_s (x) A_t -> A_{s+t} for s, t >= 1, s + t <= horizon.
class GradedAlgebra
{
public:
    // Shape and completeness are validated here; axioms by check_associativity.
    static GradedAlgebra make(int horizon, std::map<std::pair<int, int>, CMat> m);

    int horizon() const noexcept
    {
        return m_horizon;
    }
    const CMat &mult(int s, int t) const;
    const std::map<std::pair<int, int>, CMat> &maps() const noexcept
    {
        return m_maps;
    }

    // Iterated product A_1^{(x) n} -> A_n, 2 x 2^n.
    CMat iterated(int n) const;

private:
    GradedAlgebra(int horizon, std::map<std::pair<int, int>, CMat> m) : m_horizon(horizon), m_maps(std::move(m)) {}

    int m_horizon;
    std::map<std::pair<int, int>, CMat> m_maps;
};

using IndexTriple = std::array<int, 3>;

struct ConditionReport {
    bool ok = true;
    double worst_residual = 0.0;
    std::optional<IndexTriple> first_failure; // (r, s, t), or (s, t, 0) for pairs
    std::string message;
};

// M_{r+s,t} (M_{r,s} (x) 1) = M_{r,s+t} (1 (x) M_{s,t}) for r + s + t <= horizon.
ConditionReport check_associativity(const GradedAlgebra &g, double eps = default_eps);

// Construction x *_B y = x *_D eta^s(y) up to the horizon.
GradedAlgebra build_graded(const Algebra2 &d, const CMat &eta, int horizon, double eps = default_eps);

// Per-level linear maps f_t, 1 <= t <= horizon.
using LevelMaps = std::map<int, CMat>;

// f_{s+t} M_{s,t} = M_{s,t} (f_s (x) f_t) and each f_t invertible.
bool is_graded_automorphism(const GradedAlgebra &g, const LevelMaps &f, double eps = default_eps);

// M^{(f)}_{s,t} = M_{s,t} (1 (x) f_t^s).
GradedAlgebra twist(const GradedAlgebra &g, const LevelMaps &f, double eps = default_eps);

// Isomorphic copy under per-level basis changes h_t:
// M'_{s,t} = h_{s+t} M_{s,t} (h_s^{-1} (x) h_t^{-1}).
GradedAlgebra basis_change(const GradedAlgebra &g, const LevelMaps &h);

// Every M_{s,t} has rank 2, and so does every iterated product.
bool check_image_condition(const GradedAlgebra &g, double eps = default_eps);

struct KernelReport {
    bool ok = true;
    // Ker M_{r,s,t} contains the right-hand sum at every index triple.
    bool contains_sum = true;
    double worst_residual = 0.0;
    std::optional<IndexTriple> first_failure;
};

// Ker M_{r,s,t} = (Ker M_{r,s}) (x) A_t + A_r (x) Ker M_{s,t}.
KernelReport kernel_condition_report(const GradedAlgebra &g, double eps = default_eps);
bool check_kernel_condition(const GradedAlgebra &g, double eps = default_eps);

// Dimension check of the kernel condition for a single algebra at (1,1,1):
// returns {dim Ker mu3, dim(Ker mu2 (x) D + D (x) Ker mu2)}.
std::pair<std::size_t, std::size_t> kernel_dimensions(const Algebra2 &d, double eps = default_eps);

struct GradedMorphism {
    LevelMaps theta;
};

struct ExtendOptions {
    double eps = default_eps;
    // When set, preimages get a random kernel component drawn from this seed.
    std::optional<std::uint64_t> randomize_seed;
};

// theta_t : A_t -> B_t for every level, from theta1 and theta2.
GradedMorphism extend_morphism(const GradedAlgebra &gA, const GradedAlgebra &gB, const CMat &theta1,
                               const CMat &theta2, const ExtendOptions &opts = {});

// Per level n, the largest relative residual of
// theta_{s+t} M^A_{s,t} - M^B_{s,t} (theta_s (x) theta_t) over s + t = n.
std::map<int, double> morphism_residuals(const GradedAlgebra &gA, const GradedAlgebra &gB, const GradedMorphism &m);

bool is_isomorphism(const GradedMorphism &m, double eps = default_eps);

} // namespace spsys::graded

#endif
