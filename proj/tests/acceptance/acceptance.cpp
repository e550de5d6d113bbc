// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include "kzhol/associator.hpp"
#include "kzhol/holonomy.hpp"
#include "kzhol/verifier.hpp"
#include "test_support.hpp"

using namespace kzhol;
using kzhol::fixtures::load_path;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

double seconds(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(2);
    s << std::scientific << x;
    return s.str();
}

const std::vector<Complex> kThree{0.0, 1.0, {0.4, 0.9}};

void criterion1() {
    const auto t0 = Clock::now();
    VerifyConfig cfg;
    const auto r = verify_pentagon(load_path("straight"), cfg);
    const double t = seconds(t0);
    EngineConfig e;
    const auto pent = associator_pentagon_residuals(compute_associator(e), 3);
    const bool ok = r.pass && max_of(r.residuals) <= 1e-6 && max_of(pent) <= 1e-6 && t <= 120.0;
    report(1, ok, "straight-path residual " + fmt(max_of(r.residuals)) + ", t4 pentagon " + fmt(max_of(pent)) +
                      ", " + fmt(t) + " s");
}

void criterion2() {
    EngineConfig e;
    const double oracle = fixtures::zeta2_over_4pi2();
    const auto phi = compute_associator(e).phi;
    const double ab = std::abs(phi.coeff({0, 1}));
    report(2, std::abs(ab - oracle) <= 1e-8, "|Phi_AB| = " + std::to_string(ab) + ", oracle " +
                                                  std::to_string(oracle) + ", diff " + fmt(std::abs(ab - oracle)));
}

void criterion3() {
    const auto t0 = Clock::now();
    VerifyConfig cfg;
    const auto spec = load_path("figure_eight");
    const auto crossings = analyze(spec).crossings.size();
    const auto s = verify_pentagon(spec, cfg);
    const auto m = verify_pentagon_matrix(spec, 2, cfg);
    const auto dev = cross_backend_deviation(spec, 2, cfg);
    const double t = seconds(t0);
    const bool ok = crossings == 1 && s.pass && max_of(s.residuals) <= 1e-6 && m.residual <= 1e-6 &&
                    max_of(dev) <= 1e-6 && t <= 600.0;
    report(3, ok, "figure-eight crossings " + std::to_string(crossings) + ", series " + fmt(max_of(s.residuals)) +
                      ", matrix N=2 " + fmt(m.residual) + ", backend deviation " + fmt(max_of(dev)) + ", " +
                      fmt(t) + " s");
}

void criterion4() {
    EngineConfig e;
    double worst = 0.0;
    int paths = 0, one = 0, two = 0;
    for (const char* name : {"figure_eight", "double_kink", "winding", "three_punctures_kink"}) {
        const auto res = verify_projection_Cl(load_path(name), e);
        worst = std::max(worst, max_of(res));
        ++paths;
        one += res.size() == 1;
        two += res.size() == 2;
    }
    report(4, worst <= 1e-8 && paths >= 3 && one > 0 && two > 0,
           std::to_string(paths) + " paths, max |pi(C_l) - Hol_z Hol_w| " + fmt(worst));
}

void criterion5() {
    std::mt19937_64 rng(4242);
    const auto conn = ConnectionSpec::standard(kThree);
    EngineConfig e;
    std::uniform_int_distribution<int> pick(1, 3);
    double worst = 0.0, rot_worst = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
        const auto a = fixtures::random_tangent(rng, pick(rng)), b = fixtures::random_tangent(rng, pick(rng)),
                   c = fixtures::random_tangent(rng, pick(rng));
        const auto g1 = fixtures::random_path(rng, kThree, a, b, 2);
        const auto g2 = fixtures::random_path(rng, kThree, b, c, 2);
        const auto comp = compose(g1, g2);
        worst = std::max(worst,
                         (hol_reg(conn, comp, e) - hol_reg(conn, g2, e) * hol_reg(conn, g1, e)).max_abs());
        rot_worst = std::max(rot_worst,
                             std::abs(rotation_number(comp) - rotation_number(g1) - rotation_number(g2) + 0.5));
    }
    report(5, worst <= 1e-8 && rot_worst <= 1e-9,
           "10 pairs, max multiplicativity defect " + fmt(worst) + ", rot bookkeeping " + fmt(rot_worst));
}

void criterion6() {
    VerifyConfig cfg;
    double worst = 0.0;
    std::size_t count = 0;
    for (const char* name : {"straight", "figure_eight", "double_kink", "winding", "three_punctures",
                             "three_punctures_kink", "long_tangent"}) {
        const auto r = verify_pentagon(load_path(name), cfg);
        for (const auto& [k, v] : r.grouplike_defects) {
            worst = std::max(worst, v);
            ++count;
        }
    }
    report(6, worst <= 1e-8, std::to_string(count) + " holonomies/associators/C_l, max defect " + fmt(worst));
}

void criterion7() {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> pick(1, 3);
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const auto a = fixtures::random_tangent(rng, pick(rng)), b = fixtures::random_tangent(rng, pick(rng));
        const auto spec = fixtures::random_path(rng, kThree, a, b, 4);
        const double x = rotation_number(spec) - 0.5 - (std::arg(b.v) - std::arg(a.v)) / (2.0 * std::numbers::pi);
        worst = std::max(worst, std::abs(x - std::round(x)));
    }
    PathSpec loop;
    loop.punctures = {0.0};
    loop.start = {1, 1.0};
    loop.end = {1, 1.0};
    loop.waypoints = {1.0, {1, 1}, {-1, 1}, {-1, -1}, {0.5, -1}, 0.5};
    const auto conn = ConnectionSpec::standard(loop.punctures);
    EngineConfig e;
    const double loop_err = (hol_reg(conn, loop, e) - exp(Series::generator(conn.gens, e.degree, 0))).max_abs();
    report(7, worst <= 1e-9 && loop_err <= 1e-8,
           "20 random paths, max congruence defect " + fmt(worst) + ", loop vs e^t " + fmt(loop_err));
}

void criterion8() {
    VerifyConfig cfg;
    cfg.omit_rotation = true;
    const auto fig = load_path("figure_eight");
    const double rot = analyze(fig).rot;
    const double r1 = verify_pentagon(fig, cfg).residuals.at(1);
    cfg = {};
    cfg.omit_vratio = true;
    const auto lt = load_path("long_tangent");
    const double vr = vratio(lt);
    const double r2 = verify_pentagon(lt, cfg).residuals.at(1);
    report(8, rot != 0.0 && vr != 1.0 && r1 > 1e-3 && r2 > 1e-3,
           "degree-1 residual without rotation factor (rot " + fmt(rot) + ") " + fmt(r1) +
               ", without vratio factor (|v_j/v_i| " + fmt(vr) + ") " + fmt(r2));
}

void criterion9() {
    double worst = 0.0;
    for (const char* name : {"straight", "figure_eight", "double_kink", "winding", "three_punctures",
                             "three_punctures_kink", "long_tangent"}) {
        const auto spec = load_path(name);
        VerifyConfig base;
        const auto r0 = verify_pentagon(spec, base);
        const auto m0 = verify_pentagon_matrix(spec, 2, base);
        VerifyConfig quad = base;
        quad.engine.quad_order *= 2;
        VerifyConfig eval = base;
        eval.engine.eval_fraction /= 2;
        for (const auto& cfg : {quad, eval}) {
            const auto r = verify_pentagon(spec, cfg);
            for (std::size_t d = 0; d < r.residuals.size(); ++d)
                worst = std::max(worst, std::abs(r.residuals[d] - r0.residuals[d]));
            for (std::size_t l = 0; l < r.projection.size(); ++l)
                worst = std::max(worst, std::abs(r.projection[l] - r0.projection[l]));
            for (std::size_t l = 0; l < r.C.size(); ++l) worst = std::max(worst, (r.C[l] - r0.C[l]).max_abs());
            worst = std::max(worst, (*r.holonomy - *r0.holonomy).max_abs());
            worst = std::max(worst, std::abs(verify_pentagon_matrix(spec, 2, cfg).residual - m0.residual));
        }
    }
    report(9, worst < 1e-8, "max change under quad_order x2 and evaluation radius / 2: " + fmt(worst));
}

}  // namespace

int main() {
    for (auto* c : {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8,
                    criterion9}) {
        try {
            c();
        } catch (const std::exception& e) {
            std::printf("criterion error: %s\n", e.what());
            ++failures;
        }
    }
    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
