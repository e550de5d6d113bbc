#include <gtest/gtest.h>

#include <filesystem>

#include "kzhol/error.hpp"
#include "kzhol/json_io.hpp"
#include "test_support.hpp"

using namespace kzhol;

TEST(JsonIo, SeriesRoundTrip) {
    const auto g = make_catalogue({"t[1,z]", "t[2,z]"});
    auto s = exp(Series::generator(g, 3, 0) * Complex(0.5, -0.25) + Series::generator(g, 3, 1));
    const auto j = series_to_json(s);
    EXPECT_EQ(j.at("degree"), 3);
    EXPECT_EQ(j.at("terms")[0].at("word").size(), 0u);
    const auto back = series_from_json(j);
    EXPECT_EQ(back.catalogue()->labels(), g->labels());
    EXPECT_EQ((series_from_json(j, g) - s).max_abs(), 0.0);
}

TEST(JsonIo, PathRoundTrip) {
    const auto p = fixtures::load_path("three_punctures");
    const auto q = path_from_json(path_to_json(p));
    EXPECT_EQ(q.punctures, p.punctures);
    EXPECT_EQ(q.waypoints, p.waypoints);
    EXPECT_EQ(q.start.puncture, 1);
    EXPECT_EQ(q.end.v, p.end.v);
}

TEST(JsonIo, MalformedInputIsAnIoError) {
    EXPECT_THROW(path_from_json(Json::parse(R"({"punctures": [[0,0]]})")), IoError);
    EXPECT_THROW(read_json_file("/nonexistent/x.json"), IoError);
    const auto g = make_catalogue({"A"});
    EXPECT_THROW(series_from_json(Json::parse(R"({"degree": 1, "terms": [{"word": ["B"], "re": 1, "im": 0}]})"), g),
                 Error);
}

TEST(JsonIo, AnalyzedPathFields) {
    const auto p = analyze(fixtures::load_path("figure_eight"));
    const auto j = analyzed_path_to_json(p, 5);
    EXPECT_EQ(j.at("crossings").size(), 1u);
    for (const char* key : {"t", "s", "position", "sign", "u", "theta"}) EXPECT_TRUE(j.at("crossings")[0].contains(key));
    EXPECT_EQ(j.at("samples").size(), 5u);
    EXPECT_NEAR(j.at("rot").get<double>(), 1.0, 1e-12);
}
