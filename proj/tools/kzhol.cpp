#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "kzhol/associator.hpp"
#include "kzhol/error.hpp"
#include "kzhol/holonomy.hpp"
#include "kzhol/json_io.hpp"
#include "kzhol/path.hpp"
#include "kzhol/verifier.hpp"

namespace {

using namespace kzhol;

// Exit codes. Keep in sync with README.
constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kConfig = 2;
constexpr int kGeometry = 3;
constexpr int kNumerics = 4;
constexpr int kIo = 5;

int exit_code(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::config: return kConfig;
        case ErrorCategory::geometry: return kGeometry;
        case ErrorCategory::numerics: return kNumerics;
        case ErrorCategory::io: return kIo;
    }
    return kConfig;
}

void print_error(std::string_view category, const std::string& message) {
    const Json j = {{"error", {{"category", category}, {"message", message}}}};
    std::cout << j.dump(2) << "\n";
}

struct Options {
    std::string input;
    std::string out;
    std::string cache_dir;
    std::string backend = "series";
    std::string crossing_order = "telescoping";
    std::string vratio_exponent = "2pii";
    int matrix_dim = 2;
    int samples = 0;
    bool omit_rotation = false;
    bool omit_vratio = false;
    EngineConfig engine;
    double tolerance = 1e-6;
};

void emit(const Options& o, const Json& j) {
    if (o.out.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(o.out, j);
}

VerifyConfig verify_config(const Options& o) {
    VerifyConfig v;
    v.engine = o.engine;
    v.tolerance = o.tolerance;
    v.omit_rotation = o.omit_rotation;
    v.omit_vratio = o.omit_vratio;
    v.order = o.crossing_order == "as-written" ? CrossingOrder::as_written : CrossingOrder::telescoping;
    v.vratio_exponent = o.vratio_exponent == "2pi" ? VratioExponent::two_pi : VratioExponent::two_pi_i;
    v.cache_dir = o.cache_dir;
    return v;
}

int cmd_path_info(const Options& o) {
    const auto spec = path_from_json(read_json_file(o.input));
    emit(o, analyzed_path_to_json(analyze(spec), o.samples));
    return kOk;
}

int cmd_holonomy(const Options& o) {
    validate(o.engine);
    const auto spec = path_from_json(read_json_file(o.input));
    validate(spec);
    const auto conn = ConnectionSpec::standard(spec.punctures);
    const Series H = hol_reg(conn, spec, o.engine);
    emit(o, {{"holonomy", series_to_json(H)},
             {"grouplike_defect", grouplike_defect(H)},
             {"rot", rotation_number(spec)},
             {"vratio", vratio(spec)},
             {"config", engine_config_to_json(o.engine)}});
    return kOk;
}

int cmd_associator(const Options& o) {
    validate(o.engine);
    emit(o, associator_to_json(cached_associator(o.engine, o.cache_dir)));
    return kOk;
}

int cmd_verify(const Options& o) {
    const auto spec = path_from_json(read_json_file(o.input));
    const auto cfg = verify_config(o);
    if (!(cfg.tolerance > 0.0)) throw ConfigError("--tol must be positive");
    Json out;
    bool pass = true;
    if (o.backend == "series" || o.backend == "both") {
        const auto r = verify_pentagon(spec, cfg);
        out = report_to_json(r);
        pass = pass && r.pass;
    }
    if (o.backend == "matrix" || o.backend == "both") {
        const auto r = verify_pentagon_matrix(spec, o.matrix_dim, cfg);
        if (o.backend == "both")
            out = {{"series", out}, {"matrix", report_to_json(r)}, {"pass", pass && r.pass}};
        else
            out = report_to_json(r);
        pass = pass && r.pass;
    }
    emit(o, out);
    return pass ? kOk : kVerifyFailed;
}

void add_engine_flags(CLI::App* app, Options& o) {
    app->add_option("--degree", o.engine.degree, "truncation degree D")->check(CLI::PositiveNumber);
    app->add_option("--expansion-order", o.engine.expansion_order, "minimal local expansion order K");
    app->add_option("--quad-order", o.engine.quad_order, "Gauss-Legendre nodes per panel");
    app->add_option("--cache-dir", o.cache_dir, "directory for associator and ideal-basis caches");
    app->add_option("--out", o.out, "write JSON here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Regularized KZ holonomies and generalized pentagon checks"};
    app.require_subcommand(1);

    auto* info = app.add_subcommand("path-info", "crossings, rotation number and |v_j/v_i| of a path");
    info->add_option("file", o.input, "path JSON")->required();
    info->add_option("--samples", o.samples, "number of polyline sample points")->check(CLI::NonNegativeNumber);
    info->add_option("--out", o.out, "write JSON here instead of stdout");

    auto* hol = app.add_subcommand("holonomy", "regularized holonomy over t[k,z]");
    hol->add_option("file", o.input, "path JSON")->required();
    add_engine_flags(hol, o);

    auto* assoc = app.add_subcommand("associator", "KZ associator table");
    add_engine_flags(assoc, o);

    auto* ver = app.add_subcommand("verify", "check the generalized pentagon identity");
    ver->add_option("file", o.input, "path JSON")->required();
    add_engine_flags(ver, o);
    ver->add_option("--tol", o.tolerance, "per-degree residual tolerance");
    ver->add_option("--backend", o.backend)->check(CLI::IsMember({"series", "matrix", "both"}));
    ver->add_option("--matrix-dim", o.matrix_dim, "local dimension N of the flip representation");
    ver->add_flag("--omit-rotation-factor", o.omit_rotation, "debug: drop exp(rot t_zw)");
    ver->add_flag("--omit-vratio-factor", o.omit_vratio, "debug: drop the |v_j/v_i| factor");
    ver->add_option("--crossing-order", o.crossing_order)->check(CLI::IsMember({"telescoping", "as-written"}));
    ver->add_option("--vratio-exponent", o.vratio_exponent)->check(CLI::IsMember({"2pii", "2pi"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("config", e.what());
        return kConfig;
    }

    try {
        if (*info) return cmd_path_info(o);
        if (*hol) return cmd_holonomy(o);
        if (*assoc) return cmd_associator(o);
        return cmd_verify(o);
    } catch (const Error& e) {
        print_error(to_string(e.category()), e.what());
        return exit_code(e.category());
    } catch (const Json::exception& e) {
        print_error("io", e.what());
        return kIo;
    } catch (const std::exception& e) {
        print_error("numerics", e.what());
        return kNumerics;
    }
}
