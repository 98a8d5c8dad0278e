#ifndef SPSYS_JSON_IO_HPP
#define SPSYS_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "spsys/classify.hpp"
#include "spsys/graded.hpp"
#include "spsys/system.hpp"

namespace spsys::io
{

using json = nlohmann::json;

// Sorted keys, no whitespace beyond a trailing newline, doubles as %.17g.
// NaN and infinities are rejected with FormatError.
std::string dump_canonical(const json &j);

// Parse errors become FormatError.
json parse(const std::string &text);

// Complex numbers as [re, im], matrices as arrays of rows.
json to_json(CScalar z);
json to_json(const CMat &m);
json vec_to_json(const CVec &v);
CScalar complex_from_json(const json &j);
CMat matrix_from_json(const json &j, Eigen::Index rows, Eigen::Index cols);
CVec vec_from_json(const json &j, Eigen::Index size);

enum class DocKind { subproduct_system, graded_algebra, triple };

// Dispatch on "kind"; a document with "E2" and "E3" and no kind is a triple.
DocKind kind_of(const json &j);

json to_json(const system::SubproductSystem &sys);
system::SubproductSystem system_from_json(const json &j);

json to_json(const graded::GradedAlgebra &g);
graded::GradedAlgebra graded_from_json(const json &j);

json to_json(const classify::Triple &t);
classify::Triple triple_from_json(const json &j, double eps = default_eps);

json morphism_to_json(const graded::LevelMaps &theta);

json report_to_json(const classify::TripleClassification &c);
json report_to_json(const system::SystemClassification &c);
json report_to_json(const system::AxiomReport &r);

// "2+0i" style rendering for text output; parts below 1e-12 of the modulus
// print as 0.
std::string complex_text(CScalar z);

} // namespace spsys::io

#endif
