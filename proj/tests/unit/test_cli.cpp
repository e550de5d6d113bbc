#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "kzhol/json_io.hpp"
#include "test_support.hpp"

using kzhol::Json;
using kzhol::fixtures::data_file;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(KZHOL_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST(Cli, PathInfo) {
    auto r = run("path-info " + data_file("straight"));
    ASSERT_EQ(r.code, 0);
    auto j = Json::parse(r.out);
    EXPECT_TRUE(j.at("crossings").empty());
    EXPECT_EQ(j.at("rot"), 0.0);
    r = run("path-info --samples 7 " + data_file("figure_eight"));
    ASSERT_EQ(r.code, 0);
    j = Json::parse(r.out);
    EXPECT_EQ(j.at("crossings").size(), 1u);
    EXPECT_EQ(j.at("samples").size(), 7u);
}

TEST(Cli, GeometryErrorsExitThree) {
    auto r = run("path-info " + data_file("collinear_crossings"));
    EXPECT_EQ(r.code, 3);
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j.at("error").at("category"), "geometry");
    EXPECT_NE(j.at("error").at("message").get<std::string>().find("perturbation required"), std::string::npos);
    EXPECT_EQ(run("holonomy " + data_file("through_puncture")).code, 3);
}

TEST(Cli, ConfigErrorsExitTwo) {
    EXPECT_EQ(run("verify " + data_file("straight") + " --backend tensor").code, 2);
    EXPECT_EQ(run("verify " + data_file("straight") + " --quad-order 0").code, 2);
    EXPECT_EQ(run("verify " + data_file("straight") + " --tol -1").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    const auto r = run("holonomy");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(Json::parse(r.out).at("error").at("category"), "config");
}

TEST(Cli, IoErrorsExitFive) {
    EXPECT_EQ(run("path-info /nonexistent/path.json").code, 5);
    EXPECT_EQ(run("verify " + data_file("straight") + " --out " + data_file("straight") + "/report.json").code, 5);
}

TEST(Cli, AssociatorAnchor) {
    const auto r = run("associator --degree 2");
    ASSERT_EQ(r.code, 0);
    const auto j = Json::parse(r.out);
    double ab = 0.0;
    for (const auto& t : j.at("series").at("terms"))
        if (t.at("word") == Json::array({"A", "B"}))
            ab = std::hypot(t.at("re").get<double>(), t.at("im").get<double>());
    EXPECT_NEAR(ab, kzhol::fixtures::zeta2_over_4pi2(), 1e-8);
}

TEST(Cli, VerifyExitCodeFollowsPass) {
    const auto dir = std::filesystem::temp_directory_path() / "kzhol_cli_test";
    std::filesystem::create_directories(dir);
    const auto out = (dir / "report.json").string();
    EXPECT_EQ(run("verify " + data_file("straight") + " --out " + out).code, 0);
    EXPECT_TRUE(kzhol::read_json_file(out).at("pass").get<bool>());
    EXPECT_EQ(run("verify " + data_file("figure_eight") + " --backend both").code, 0);
    EXPECT_EQ(run("verify " + data_file("figure_eight") + " --omit-rotation-factor").code, 1);
    EXPECT_EQ(run("verify " + data_file("long_tangent") + " --omit-vratio-factor").code, 1);
    EXPECT_EQ(run("verify " + data_file("long_tangent") + " --vratio-exponent 2pi").code, 1);
    EXPECT_EQ(run("verify " + data_file("double_kink") + " --crossing-order as-written").code, 0);
    std::filesystem::remove_all(dir);
}

TEST(Cli, HolonomyIsDeterministic) {
    const auto a = run("holonomy --degree 3 " + data_file("winding"));
    const auto b = run("holonomy --degree 3 " + data_file("winding"));
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_LT(Json::parse(a.out).at("grouplike_defect").get<double>(), 1e-8);
}
