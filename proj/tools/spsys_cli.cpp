// spsys command-line tool. Exit codes:
//   0 success, 1 nonzero identity residual, 2 malformed input or usage error,
//   3 axiom failure, 4 input that cannot be classified.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "spsys/determinant.hpp"
#include "spsys/errors.hpp"
#include "spsys/json_io.hpp"

namespace
{

using namespace spsys;
using io::json;

enum Exit { ok = 0, residual = 1, usage = 2, axioms = 3, unclassifiable = 4 };

struct Config {
    double tolerance = default_eps;
    int horizon = system::default_horizon;
    std::uint64_t seed = 0;
    std::string output;
    std::string format = "text";
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_out(const Config &cfg, const std::string &text)
{
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) {
        throw UsageError("cannot write " + cfg.output);
    }
    f << text;
}

json read_doc(const std::string &path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw FormatError("cannot read " + path);
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return io::parse(ss.str());
}

std::string matrix_text(const CMat &m)
{
    std::string out = "[";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out += i ? "; " : "";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out += (j ? " " : "") + io::complex_text(m(i, j));
        }
    }
    return out + "]";
}

std::string rank_text(const classify::RankInfo &r)
{
    return "rank: " + std::to_string(r.rank) + (r.confident ? " (confident)" : " (near threshold)") + "\n";
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

int cmd_verify_identity(const Config &cfg, bool emit_terms, int spot_check)
{
    const auto res = poly::main_identity_residual();
    std::string text;
    json report;
    const bool zero = res.is_zero();
    report["residual_zero"] = zero;
    report["residual_terms"] = res.num_terms();
    if (zero) {
        text += "residual: 0 (zero polynomial); OK\n";
    } else {
        text += "residual: " + std::to_string(res.num_terms()) + " nonzero terms\n" + res.to_string() + "\n";
        report["residual"] = res.to_string();
    }

    if (emit_terms) {
        const auto terms = poly::surviving_laplace_terms(poly::det8_matrix());
        json arr = json::array();
        for (const auto &t : terms) {
            std::string cols;
            for (auto c : t.columns) {
                cols += (cols.empty() ? "" : ",") + std::to_string(c + 1);
            }
            text += "term columns {" + cols + "} sign " + (t.sign > 0 ? "+" : "-") + ": (" + t.minor.to_string() +
                    ") * (" + t.complement.to_string() + ")\n";
            arr.push_back({{"columns", t.columns}, {"sign", t.sign}, {"minor", t.minor.to_string()},
                           {"complement", t.complement.to_string()}});
        }
        text += std::to_string(terms.size()) + " surviving terms\n";
        report["terms"] = std::move(arr);
    }

    bool spot_ok = true;
    if (spot_check > 0) {
        const auto p8 = poly::d8();
        const auto p4 = poly::d4();
        std::mt19937_64 rng(cfg.seed);
        int matches = 0;
        for (int i = 0; i < spot_check; ++i) {
            std::array<std::int64_t, poly::num_vars> v{};
            for (auto &x : v) {
                x = static_cast<std::int64_t>(rng() % 19) - 9;
            }
            const std::span<const std::int64_t, poly::num_vars> sv(v);
            const auto sym = poly::eval_poly(p8, sv);
            const auto oracle = poly::integer_det(poly::det8_numeric(sv), 8);
            if (sym == oracle && sym == -poly::eval_poly(p4, sv)) {
                ++matches;
            }
        }
        spot_ok = matches == spot_check;
        text += "spot-check: " + std::to_string(matches) + "/" + std::to_string(spot_check) + " matches\n";
        report["spot_check"] = {{"matches", matches}, {"total", spot_check}};
    }

    write_out(cfg, cfg.format == "json" ? io::dump_canonical(report) : text);
    return zero && spot_ok ? Exit::ok : Exit::residual;
}

int cmd_classify(const Config &cfg, const std::string &path)
{
    const json doc = read_doc(path);
    const double eps = cfg.tolerance;
    switch (io::kind_of(doc)) {
        case io::DocKind::triple: {
            classify::Triple t = [&] {
                try {
                    return io::triple_from_json(doc, eps);
                } catch (const PreconditionError &e) {
                    throw PipelineError("axioms", e.what());
                }
            }();
            const auto c = classify::classify_triple(t, eps);
            if (cfg.format == "json") {
                write_out(cfg, io::dump_canonical(io::report_to_json(c)));
            } else {
                std::string text = "label: " + classify::to_string(c.cls.label);
                if (c.cls.lambda) {
                    text += ", lambda: " + io::complex_text(*c.cls.lambda);
                }
                text += "\ntheta: " + matrix_text(c.iso.theta) + "\nresidual: " + sci(c.residual) + "\n" +
                        rank_text(c.rank);
                write_out(cfg, text);
            }
            return Exit::ok;
        }
        case io::DocKind::graded_algebra: {
            const auto g = io::graded_from_json(doc);
            const auto assoc = graded::check_associativity(g, eps);
            if (!assoc.ok) {
                throw PipelineError("axioms", assoc.message);
            }
            const auto sys = system::dualize(g);
            const auto c = system::classify_system(sys, eps);
            // The inverse transpose of the system isomorphism maps the input
            // algebra onto the canonical one.
            graded::LevelMaps theta;
            for (const auto &[n, m] : c.iso.theta) {
                theta[n] = m.transpose().inverse();
            }
            json rep = io::report_to_json(c);
            const std::string label = "B" + system::to_string(c.label.label).substr(1);
            rep["label"] = label;
            rep["theta"] = io::morphism_to_json(theta)["theta"];
            if (cfg.format == "json") {
                write_out(cfg, io::dump_canonical(rep));
            } else {
                std::string text = "label: " + label;
                if (c.label.lambda) {
                    text += ", lambda: " + io::complex_text(*c.label.lambda);
                }
                text += "\nresidual: " + sci(c.iso.max_residual) + "\n" + rank_text(c.rank);
                for (const auto &[n, m] : theta) {
                    text += "theta[" + std::to_string(n) + "]: " + matrix_text(m) + "\n";
                }
                write_out(cfg, text);
            }
            return Exit::ok;
        }
        case io::DocKind::subproduct_system: {
            const auto sys = io::system_from_json(doc);
            const auto c = system::classify_system(sys, eps);
            if (cfg.format == "json") {
                write_out(cfg, io::dump_canonical(io::report_to_json(c)));
            } else {
                std::string text = "label: " + system::to_string(c.label.label);
                if (c.label.lambda) {
                    text += ", lambda: " + io::complex_text(*c.label.lambda);
                }
                text += "\nresidual: " + sci(c.iso.max_residual) + "\n" + rank_text(c.rank);
                for (const auto &[n, m] : c.iso.theta) {
                    text += "theta[" + std::to_string(n) + "]: " + matrix_text(m) + " (residual " +
                            sci(c.iso.level_residuals.at(n)) + ")\n";
                }
                write_out(cfg, text);
            }
            return Exit::ok;
        }
    }
    return Exit::usage;
}

int cmd_check(const Config &cfg, const std::string &path)
{
    const json doc = read_doc(path);
    const double eps = cfg.tolerance;
    json rep;
    std::string text;
    bool pass = true;
    switch (io::kind_of(doc)) {
        case io::DocKind::subproduct_system: {
            const auto r = system::check_axioms(io::system_from_json(doc), eps);
            rep = io::report_to_json(r);
            pass = r.ok;
            text = pass ? "axioms: pass (worst residual " + sci(r.worst_residual) + ")\n"
                        : "axioms: FAIL, " + r.message + "\n";
            break;
        }
        case io::DocKind::graded_algebra: {
            const auto g = io::graded_from_json(doc);
            const auto a = graded::check_associativity(g, eps);
            const bool image = graded::check_image_condition(g, eps);
            const bool kernel = graded::check_kernel_condition(g, eps);
            pass = a.ok && image;
            rep = {{"ok", pass}, {"worst_residual", a.worst_residual}, {"image_condition", image},
                   {"kernel_condition", kernel}};
            if (!a.ok) {
                rep["failure_kind"] = "associativity";
                rep["first_failure"] = *a.first_failure;
                rep["message"] = a.message;
            }
            text = std::string("associativity: ") + (a.ok ? "pass" : "FAIL, " + a.message) +
                   "\nimage condition: " + (image ? "pass" : "FAIL") + "\nkernel condition: " +
                   (kernel ? "pass" : "FAIL") + "\n";
            break;
        }
        case io::DocKind::triple: {
            try {
                io::triple_from_json(doc, eps);
                rep = {{"ok", true}};
                text = "triple: pass\n";
            } catch (const PreconditionError &e) {
                pass = false;
                rep = {{"ok", false}, {"message", e.what()}};
                text = std::string("triple: FAIL, ") + e.what() + "\n";
            }
            break;
        }
    }
    write_out(cfg, cfg.format == "json" ? io::dump_canonical(rep) : text);
    return pass ? Exit::ok : Exit::axioms;
}

std::optional<CScalar> parse_lambda(const std::string &s)
{
    if (s.empty()) {
        return std::nullopt;
    }
    double re = 0.0, im = 0.0;
    char tail = 0;
    const int n = std::sscanf(s.c_str(), "%lf,%lf%c", &re, &im, &tail);
    if (n == 1 && s.find(',') == std::string::npos) {
        return CScalar(re, 0.0);
    }
    if (n != 2) {
        throw UsageError("--lambda expects re,im (for example 2,1), got '" + s + "'");
    }
    return CScalar(re, im);
}

int cmd_generate(const Config &cfg, const std::string &cls, const std::string &lambda_text, bool scramble)
{
    const auto label = system::label_from_string(cls);
    const auto lambda = parse_lambda(lambda_text);
    if (label == system::Label::E3 && !lambda) {
        throw UsageError("--class E3 needs --lambda re,im");
    }
    if (label != system::Label::E3 && lambda) {
        throw UsageError("--lambda applies only to --class E3");
    }
    if (lambda && *lambda == 0.0) {
        throw UsageError("lambda must be nonzero");
    }
    auto sys = system::canonical_system(system::SystemLabel::make(label, lambda), cfg.horizon);
    if (scramble) {
        sys = system::scramble(sys, cfg.seed);
    }
    write_out(cfg, io::dump_canonical(io::to_json(sys)));
    return Exit::ok;
}

int cmd_dualize(const Config &cfg, const std::string &path)
{
    const json doc = read_doc(path);
    switch (io::kind_of(doc)) {
        case io::DocKind::subproduct_system:
            write_out(cfg, io::dump_canonical(io::to_json(system::dualize(io::system_from_json(doc)))));
            return Exit::ok;
        case io::DocKind::graded_algebra:
            write_out(cfg, io::dump_canonical(io::to_json(system::dualize(io::graded_from_json(doc)))));
            return Exit::ok;
        case io::DocKind::triple:
            throw UsageError("dualize accepts subproduct systems and graded algebras only");
    }
    return Exit::usage;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Classification toolkit for two-dimensional subproduct systems"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    if (const char *env = std::getenv("SPSYS_TOLERANCE")) {
        try {
            cfg.tolerance = std::stod(env);
        } catch (const std::exception &) {
            std::cerr << "error: SPSYS_TOLERANCE is not a number\n";
            return Exit::usage;
        }
    }
    app.add_option("--tolerance", cfg.tolerance, "Rank and residual tolerance (default 1e-9)");
    app.add_option("--horizon", cfg.horizon, "Truncation level for generated systems (default 6)");
    app.add_option("--seed", cfg.seed, "Random seed");
    app.add_option("--output", cfg.output, "Write to this file instead of stdout");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));

    bool emit_terms = false;
    int spot_check = 0;
    auto *verify = app.add_subcommand("verify-identity", "Prove D8 + D4 = 0 symbolically");
    verify->add_flag("--emit-terms", emit_terms, "Print the surviving Laplace terms");
    verify->add_option("--spot-check", spot_check, "Random integer evaluations against a determinant oracle");

    std::string input;
    auto *classify = app.add_subcommand("classify", "Classify a system, graded algebra or triple");
    classify->add_option("input", input, "JSON document")->required();
    auto *check = app.add_subcommand("check", "Check the axioms of a JSON document");
    check->add_option("input", input, "JSON document")->required();
    auto *dualize = app.add_subcommand("dualize", "Transpose a system into its graded algebra and back");
    dualize->add_option("input", input, "JSON document")->required();

    std::string cls, lambda;
    bool scramble = false;
    auto *generate = app.add_subcommand("generate", "Emit a canonical or scrambled subproduct system");
    generate->add_option("--class", cls, "E1..E5")
        ->required()
        ->check(CLI::IsMember({"E1", "E2", "E3", "E4", "E5"}));
    generate->add_option("--lambda", lambda, "Parameter of E3 as re,im");
    generate->add_flag("--scramble", scramble, "Apply seeded random changes of basis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return Exit::usage;
    }

    try {
        if (!(cfg.tolerance > 0.0)) {
            throw UsageError("tolerance must be positive");
        }
        if (cfg.horizon < 3) {
            throw UsageError("horizon must be at least 3");
        }
        if (*verify) {
            return cmd_verify_identity(cfg, emit_terms, spot_check);
        }
        if (*classify) {
            return cmd_classify(cfg, input);
        }
        if (*check) {
            return cmd_check(cfg, input);
        }
        if (*generate) {
            return cmd_generate(cfg, cls, lambda, scramble);
        }
        return cmd_dualize(cfg, input);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return Exit::usage;
    } catch (const FormatError &e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return Exit::usage;
    } catch (const PipelineError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.stage() == "axioms" ? Exit::axioms : Exit::unclassifiable;
    } catch (const PreconditionError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::axioms;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::unclassifiable;
    }
}
