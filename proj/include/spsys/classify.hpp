#ifndef SPSYS_CLASSIFY_HPP
#define SPSYS_CLASSIFY_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "spsys/tensor.hpp"

namespace spsys::classify
{

using tensor::Subspace;

// Rank (0, 1 or 2) of the determinant form restricted to a plane in
// C^2 (x) C^2, with the singular values it was decided from.
struct RankInfo {
    int rank = 0;
    std::array<double, 2> singular_values{};
    // False when a singular value falls in (eps, sqrt(eps)), i.e. the decision
    // is close to the threshold.
    bool confident = true;
};

RankInfo rank_of_plane(const Subspace &plane, double eps = default_eps);

enum class PlaneCase {
    none,  // rank 1 or 2
    left,  // plane = C^2 (x) x2
    right, // plane = x1 (x) C^2
};

std::string to_string(PlaneCase c);

// Bases {x1, y1} of the first factor and {x2, y2} of the second with
//   rank 2: plane = span{x1 (x) x2, y1 (x) y2}
//   rank 1: plane = span{x1 (x) x2, y1 (x) x2 + x1 (x) y2}
//   rank 0: plane = span{x1 (x) x2, y1 (x) x2} (left) or span{x1 (x) x2, x1 (x) y2} (right)
struct PlaneNormalForm {
    RankInfo rank;
    std::array<CVec, 2> basis1; // x1, y1
    std::array<CVec, 2> basis2; // x2, y2
    PlaneCase case_tag = PlaneCase::none;

    // The two spanning vectors of the normal form, as listed above.
    std::array<CVec, 2> spanning_vectors() const;
};

PlaneNormalForm plane_normal_form(const Subspace &plane, double eps = default_eps);

struct ProductTriple {
    CVec x1, x2, x3;
};

// For planes L12 in C^2 (x) C^2 and L23 in C^2 (x) C^2: when
// (L12 (x) C^2) and (C^2 (x) L23) intersect nontrivially, returns nonzero
// x1, x2, x3 with x1 (x) x2 in L12 and x2 (x) x3 in L23; otherwise empty.
std::optional<ProductTriple> product_in_intersection(const Subspace &l12, const Subspace &l23,
                                                     double eps = default_eps);

// The sixteen covector coefficients a..h, A..H of a pair of planes, read off
// orthonormal annihilator covectors of L12 and L23.
std::array<CScalar, 16> lemma_coefficients(const Subspace &l12, const Subspace &l23);

struct NumericDeterminants {
    CScalar d8;
    CScalar d4;
};

// D8 (the 8x8 determinant) and D4 (the resultant) at numeric coefficients.
NumericDeterminants numeric_determinants(const std::array<CScalar, 16> &coeffs);

// E2 in C^2 (x) C^2 and E3 in C^2 (x) C^2 (x) C^2, both two-dimensional,
// with E3 inside (E2 (x) E1) and (E1 (x) E2).
class Triple
{
public:
    // Validates the invariants; throws PreconditionError when they fail.
    static Triple make(Subspace e2, Subspace e3, double eps = default_eps);

    const Subspace &e2() const noexcept
    {
        return m_e2;
    }
    const Subspace &e3() const noexcept
    {
        return m_e3;
    }

    // (theta (x) theta) E2 and (theta (x) theta (x) theta) E3.
    Triple transformed(const CMat &theta, double eps = default_eps) const;

    // Largest subspace distance between the two components.
    double distance(const Triple &other) const;

private:
    Triple(Subspace e2, Subspace e3) : m_e2(std::move(e2)), m_e3(std::move(e3)) {}

    Subspace m_e2;
    Subspace m_e3;
};

enum class TripleLabel { C1, C2, C3, C4, C5 };

std::string to_string(TripleLabel l);
TripleLabel triple_label_from_string(const std::string &s);

struct TripleClass {
    TripleLabel label;
    std::optional<CScalar> lambda; // present iff label == C3, nonzero

    static TripleClass make(TripleLabel label, std::optional<CScalar> lambda = std::nullopt);
};

// Invertible theta with (theta (x) theta) E2 = E2' and theta^{(x)3} E3 = E3'.
struct TripleIso {
    CMat theta;
};

struct TripleClassification {
    TripleClass cls;
    TripleIso iso;
    double residual;  // distance between theta(input) and the canonical triple
    RankInfo rank;
};

Triple canonical_triple(const TripleClass &c);

TripleClassification classify_triple(const Triple &t, double eps = default_eps);

struct ChainNormalForm {
    int rank12;
    int rank23;
    std::array<CVec, 2> basis1, basis2, basis3; // {x_k, y_k}
    Subspace l123;                              // span of the normal-form vectors
    double residual;                            // distance to the input L123
};

// Normal form of L123 inside (L12 (x) C^2) and (C^2 (x) L23) for ranks >= 1:
//   rank 2: L123 = span{x1 x2 x3, y1 y2 y3}
//   rank 1: L123 = span{x1 x2 x3, y1 x2 x3 + x1 y2 x3 + x1 x2 y3}
// Throws UnclassifiedChainError when a rank vanishes.
ChainNormalForm chain_normal_form(const Subspace &l12, const Subspace &l23, const Subspace &l123,
                                  double eps = default_eps);

} // namespace spsys::classify

#endif
