#include "spsys/json_io.hpp"

#include <cmath>
#include <cstdio>

#include "spsys/errors.hpp"

namespace spsys::io
{

namespace
{

void emit(const json &j, std::string &out)
{
    switch (j.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (const auto &[k, v] : j.items()) {
                if (!first) {
                    out += ',';
                }
                first = false;
                out += json(k).dump();
                out += ':';
                emit(v, out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto &v : j) {
                if (!first) {
                    out += ',';
                }
                first = false;
                emit(v, out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float: {
            double v = j.get<double>();
            if (!std::isfinite(v)) {
                throw FormatError("NaN or infinity cannot be serialized");
            }
            if (v == 0.0) {
                v = 0.0;
            }
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out += buf;
            break;
        }
        default:
            out += j.dump();
    }
}

std::string key(int s, int t)
{
    return std::to_string(s) + "," + std::to_string(t);
}

std::pair<int, int> parse_key(const std::string &k)
{
    int s = 0, t = 0;
    char tail = 0;
    if (std::sscanf(k.c_str(), "%d,%d%c", &s, &t, &tail) != 2) {
        throw FormatError("bad level key '" + k + "', expected \"s,t\"");
    }
    return {s, t};
}

int parse_horizon(const json &j)
{
    if (!j.contains("horizon") || !j["horizon"].is_number_integer()) {
        throw FormatError("missing integer \"horizon\"");
    }
    return j["horizon"].get<int>();
}

const json &field(const json &j, const char *name)
{
    if (!j.is_object() || !j.contains(name)) {
        throw FormatError(std::string("missing field \"") + name + "\"");
    }
    return j[name];
}

std::map<std::pair<int, int>, CMat> level_pairs(const json &j, Eigen::Index rows, Eigen::Index cols)
{
    if (!j.is_object()) {
        throw FormatError("level maps must be an object keyed by \"s,t\"");
    }
    std::map<std::pair<int, int>, CMat> out;
    for (const auto &[k, v] : j.items()) {
        out[parse_key(k)] = matrix_from_json(v, rows, cols);
    }
    return out;
}

template <typename F>
auto rethrow_as_format(F &&f) -> decltype(f())
{
    try {
        return f();
    } catch (const FormatError &) {
        throw;
    } catch (const Error &e) {
        throw FormatError(e.what());
    }
}

json rank_json(const classify::RankInfo &r)
{
    return {{"rank", r.rank},
            {"rank_confident", r.confident},
            {"rank_singular_values", json::array({r.singular_values[0], r.singular_values[1]})}};
}

} // namespace

std::string dump_canonical(const json &j)
{
    std::string out;
    emit(j, out);
    out += '\n';
    return out;
}

json parse(const std::string &text)
{
    try {
        return json::parse(text);
    } catch (const json::exception &e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
}

json to_json(CScalar z)
{
    return json::array({z.real(), z.imag()});
}

json to_json(const CMat &m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json vec_to_json(const CVec &v)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(to_json(v(i)));
    }
    return out;
}

CScalar complex_from_json(const json &j)
{
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw FormatError("complex number must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

CMat matrix_from_json(const json &j, Eigen::Index rows, Eigen::Index cols)
{
    if (!j.is_array() || j.size() != static_cast<std::size_t>(rows)) {
        throw FormatError("expected a matrix with " + std::to_string(rows) + " rows");
    }
    CMat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto &row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(cols)) {
            throw FormatError("expected matrix rows of length " + std::to_string(cols));
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(i, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
        }
    }
    return m;
}

CVec vec_from_json(const json &j, Eigen::Index size)
{
    if (!j.is_array() || j.size() != static_cast<std::size_t>(size)) {
        throw FormatError("expected a vector of length " + std::to_string(size));
    }
    CVec v(size);
    for (Eigen::Index i = 0; i < size; ++i) {
        v(i) = complex_from_json(j[static_cast<std::size_t>(i)]);
    }
    return v;
}

DocKind kind_of(const json &j)
{
    if (!j.is_object()) {
        throw FormatError("top-level JSON value must be an object");
    }
    if (j.contains("kind")) {
        const auto &k = j["kind"];
        if (k == "subproduct_system") {
            return DocKind::subproduct_system;
        }
        if (k == "graded_algebra") {
            return DocKind::graded_algebra;
        }
        if (k == "triple") {
            return DocKind::triple;
        }
        throw FormatError("unknown kind " + k.dump());
    }
    if (j.contains("E2") && j.contains("E3")) {
        return DocKind::triple;
    }
    throw FormatError("cannot tell the document kind: no \"kind\" field and no E2/E3");
}

json to_json(const system::SubproductSystem &sys)
{
    json beta = json::object();
    for (const auto &[st, b] : sys.maps()) {
        beta[key(st.first, st.second)] = to_json(b);
    }
    return {{"kind", "subproduct_system"}, {"horizon", sys.horizon()}, {"beta", std::move(beta)}};
}

system::SubproductSystem system_from_json(const json &j)
{
    if (kind_of(j) != DocKind::subproduct_system) {
        throw FormatError("expected kind \"subproduct_system\"");
    }
    const int horizon = parse_horizon(j);
    auto beta = level_pairs(field(j, "beta"), 4, 2);
    return rethrow_as_format([&] { return system::SubproductSystem::make(horizon, std::move(beta)); });
}

json to_json(const graded::GradedAlgebra &g)
{
    json m = json::object();
    for (const auto &[st, mult] : g.maps()) {
        m[key(st.first, st.second)] = to_json(mult);
    }
    return {{"kind", "graded_algebra"}, {"horizon", g.horizon()}, {"M", std::move(m)}};
}

graded::GradedAlgebra graded_from_json(const json &j)
{
    if (kind_of(j) != DocKind::graded_algebra) {
        throw FormatError("expected kind \"graded_algebra\"");
    }
    const int horizon = parse_horizon(j);
    auto m = level_pairs(field(j, "M"), 2, 4);
    return rethrow_as_format([&] { return graded::GradedAlgebra::make(horizon, std::move(m)); });
}

json to_json(const classify::Triple &t)
{
    auto cols = [](const tensor::Subspace &s) {
        json out = json::array();
        for (Eigen::Index c = 0; c < s.basis().cols(); ++c) {
            out.push_back(vec_to_json(s.basis().col(c)));
        }
        return out;
    };
    return {{"E2", cols(t.e2())}, {"E3", cols(t.e3())}};
}

classify::Triple triple_from_json(const json &j, double eps)
{
    if (kind_of(j) != DocKind::triple) {
        throw FormatError("expected a triple document");
    }
    auto vectors = [](const json &arr, Eigen::Index n) {
        if (!arr.is_array()) {
            throw FormatError("E2/E3 must be arrays of vectors");
        }
        std::vector<CVec> out;
        for (const auto &v : arr) {
            out.push_back(vec_from_json(v, n));
        }
        return out;
    };
    const auto e2 = vectors(field(j, "E2"), 4);
    const auto e3 = vectors(field(j, "E3"), 8);
    return classify::Triple::make(tensor::Subspace::span(e2, 4, eps), tensor::Subspace::span(e3, 8, eps), eps);
}

json morphism_to_json(const graded::LevelMaps &theta)
{
    json out = json::object();
    for (const auto &[t, m] : theta) {
        out[std::to_string(t)] = to_json(m);
    }
    return {{"theta", std::move(out)}};
}

json report_to_json(const classify::TripleClassification &c)
{
    json out = rank_json(c.rank);
    out["label"] = classify::to_string(c.cls.label);
    if (c.cls.lambda) {
        out["lambda"] = to_json(*c.cls.lambda);
    }
    out["theta"] = to_json(c.iso.theta);
    out["residual"] = c.residual;
    return out;
}

json report_to_json(const system::SystemClassification &c)
{
    json out = rank_json(c.rank);
    out["label"] = system::to_string(c.label.label);
    if (c.label.lambda) {
        out["lambda"] = to_json(*c.label.lambda);
    }
    out["theta"] = morphism_to_json(c.iso.theta)["theta"];
    out["residual"] = c.iso.max_residual;
    json levels = json::object();
    for (const auto &[n, r] : c.iso.level_residuals) {
        levels[std::to_string(n)] = r;
    }
    out["level_residuals"] = std::move(levels);
    out["triple_residual"] = c.triple_residual;
    return out;
}

json report_to_json(const system::AxiomReport &r)
{
    json out = {{"ok", r.ok}, {"worst_residual", r.worst_residual}};
    if (r.first_failure) {
        out["failure_kind"] = r.failure_kind;
        out["first_failure"] = json::array({(*r.first_failure)[0], (*r.first_failure)[1], (*r.first_failure)[2]});
        out["message"] = r.message;
    }
    return out;
}

std::string complex_text(CScalar z)
{
    char buf[64];
    // Parts below 1e-12 of the modulus are rounding noise in text output.
    const double cut = 1e-12 * std::abs(z);
    const double re = std::abs(z.real()) <= cut ? 0.0 : z.real();
    const double im = std::abs(z.imag()) <= cut ? 0.0 : z.imag();
    std::snprintf(buf, sizeof buf, "%.12g%c%.12gi", re, std::signbit(im) ? '-' : '+', std::abs(im));
    return buf;
}

} // namespace spsys::io
