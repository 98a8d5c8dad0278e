#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "spsys/errors.hpp"
#include "spsys/json_io.hpp"

using namespace spsys;
using namespace spsys::io;
using system::Label;
using system::SystemLabel;

TEST(Canonical, SortedKeysAndNumbers)
{
    json j = {{"b", 1}, {"a", json::array({0.1, -0.0, 2.5e-300})}, {"c", "x"}};
    EXPECT_EQ(dump_canonical(j), "{\"a\":[0.10000000000000001,0,2.5e-300],\"b\":1,\"c\":\"x\"}\n");
}

TEST(Canonical, RejectsNonFinite)
{
    EXPECT_THROW(dump_canonical(json(std::numeric_limits<double>::quiet_NaN())), FormatError);
    EXPECT_THROW(dump_canonical(json::array({std::numeric_limits<double>::infinity()})), FormatError);
}

TEST(Canonical, DoublesRoundTripExactly)
{
    const auto sys = system::random_system(SystemLabel::make(Label::E3, CScalar(2.0, 1.0)), 9);
    const std::string text = dump_canonical(to_json(sys));
    const auto back = system_from_json(parse(text));
    EXPECT_EQ(back.maps(), sys.maps());
    EXPECT_EQ(dump_canonical(to_json(back)), text);
}

TEST(Parse, MalformedInput)
{
    EXPECT_THROW(parse("{\"kind\":"), FormatError);
    EXPECT_THROW(kind_of(parse("[1,2]")), FormatError);
    EXPECT_THROW(kind_of(parse("{\"kind\":\"other\"}")), FormatError);
}

TEST(Complex, Encoding)
{
    EXPECT_EQ(to_json(CScalar(1.5, -2.0)), json::array({1.5, -2.0}));
    EXPECT_EQ(complex_from_json(json(3.0)), CScalar(3.0));
    EXPECT_EQ(complex_from_json(json::array({1, 2})), CScalar(1.0, 2.0));
    EXPECT_THROW(complex_from_json(json::array({1, 2, 3})), FormatError);
    EXPECT_THROW(complex_from_json(json("1+2i")), FormatError);
}

TEST(Matrix, ShapeErrors)
{
    const json m = to_json(CMat(CMat::Identity(2, 2)));
    EXPECT_EQ(matrix_from_json(m, 2, 2), CMat(CMat::Identity(2, 2)));
    EXPECT_THROW(matrix_from_json(m, 4, 2), FormatError);
    EXPECT_THROW(matrix_from_json(m, 2, 4), FormatError);
    EXPECT_THROW(vec_from_json(json::array({1, 2}), 4), FormatError);
}

TEST(Documents, KindDispatch)
{
    const auto sys = system::canonical_system(SystemLabel::make(Label::E1));
    EXPECT_EQ(kind_of(to_json(sys)), DocKind::subproduct_system);
    EXPECT_EQ(kind_of(to_json(system::dualize(sys))), DocKind::graded_algebra);
    const auto t = system::triple_of_system(sys);
    json tj = to_json(t);
    EXPECT_EQ(kind_of(tj), DocKind::triple);
    tj["kind"] = "triple";
    EXPECT_EQ(kind_of(tj), DocKind::triple);
}

TEST(Documents, SystemSchema)
{
    const auto sys = system::canonical_system(SystemLabel::make(Label::E4), 3);
    const json j = to_json(sys);
    EXPECT_EQ(j["kind"], "subproduct_system");
    EXPECT_EQ(j["horizon"], 3);
    ASSERT_TRUE(j["beta"].contains("1,2"));
    EXPECT_EQ(j["beta"].size(), 3u);
    EXPECT_EQ(j["beta"]["1,1"].size(), 4u);

    json bad = j;
    bad["beta"]["x"] = bad["beta"]["1,1"];
    EXPECT_THROW(system_from_json(bad), FormatError);
    json missing = j;
    missing.erase("horizon");
    EXPECT_THROW(system_from_json(missing), FormatError);
    EXPECT_THROW(graded_from_json(j), FormatError);
}

TEST(Documents, GradedRoundTrip)
{
    const auto g = graded::build_graded(graded::catalog("D2"), CMat(CMat::Identity(2, 2)), 4);
    const json j = to_json(g);
    EXPECT_EQ(j["kind"], "graded_algebra");
    const auto back = graded_from_json(j);
    EXPECT_EQ(back.maps(), g.maps());
}

TEST(Documents, TripleRoundTrip)
{
    const auto t = classify::canonical_triple(classify::TripleClass::make(classify::TripleLabel::C3, CScalar(2.0)));
    const auto back = triple_from_json(to_json(t));
    EXPECT_LT(back.distance(t), 1e-15);
    json bad = to_json(t);
    bad["E3"] = bad["E2"];
    EXPECT_THROW(triple_from_json(bad), FormatError);
}

TEST(Reports, SystemClassification)
{
    const auto c = system::classify_system(system::canonical_system(SystemLabel::make(Label::E3, CScalar(2.0))));
    const json r = report_to_json(c);
    EXPECT_EQ(r["label"], "E3");
    EXPECT_EQ(complex_from_json(r["lambda"]), CScalar(2.0));
    EXPECT_EQ(r["theta"].size(), 6u);
    EXPECT_EQ(r["level_residuals"].size(), 6u);
    for (const char *k : {"residual", "rank", "rank_confident", "rank_singular_values", "triple_residual"}) {
        EXPECT_TRUE(r.contains(k)) << k;
    }
    EXPECT_NO_THROW(dump_canonical(r));
}

TEST(Reports, Axioms)
{
    auto beta = system::canonical_system(SystemLabel::make(Label::E1)).maps();
    beta[{2, 1}](1, 0) += 1e-3;
    const json r = report_to_json(system::check_axioms(system::SubproductSystem::make(6, beta)));
    EXPECT_EQ(r["ok"], false);
    EXPECT_EQ(r["failure_kind"], "associativity");
    EXPECT_EQ(r["first_failure"], json::array({1, 1, 1}));
    const json ok = report_to_json(system::check_axioms(system::canonical_system(SystemLabel::make(Label::E1))));
    EXPECT_EQ(ok["ok"], true);
    EXPECT_FALSE(ok.contains("failure_kind"));
}

TEST(ComplexText, Rendering)
{
    EXPECT_EQ(complex_text(CScalar(2.0, 1.0)), "2+1i");
    EXPECT_EQ(complex_text(CScalar(2.0, 1e-15)), "2+0i");
    EXPECT_EQ(complex_text(CScalar(-0.5, -3.0)), "-0.5-3i");
}
