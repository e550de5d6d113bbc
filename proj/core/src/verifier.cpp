#include "kzhol/verifier.hpp"

#include <chrono>
#include <numbers>

namespace kzhol {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Endpoints {
    int n, i, j;
};

Endpoints endpoints(const PathSpec& spec) {
    const Endpoints e{static_cast<int>(spec.punctures.size()), spec.start.puncture, spec.end.puncture};
    if (e.i == e.j)
        throw ConfigError("the pentagon identity is stated for paths between distinct punctures (i != j)");
    return e;
}

std::string str(int k) { return std::to_string(k); }

std::vector<double> per_degree(const Series& g) {
    std::vector<double> out;
    for (int d = 0; d <= g.degree(); ++d) out.push_back(g.max_abs(d));
    return out;
}

double projection_residual(const AnalyzedPath& path, const DKAlgebra& alg, const Series& C, std::size_t l,
                          const EngineConfig& cfg) {
    const int n = static_cast<int>(path.spec.punctures.size());
    const auto conn = ConnectionSpec::standard(path.spec.punctures);
    const Crossing& c = path.crossings.at(l);
    const Series hz = hol_reg(conn, prefix_leg(path, c.t), cfg);
    const Series hw = hol_reg(conn, reversed_suffix_leg(path, c.s), cfg);

    const auto tau = tau_catalogue(n);
    LinearSubstitution to_z{conn.gens, tau, {}}, to_w{conn.gens, tau, {}};
    for (int k = 0; k < n; ++k) {
        to_z.images.push_back({{static_cast<GeneratorId>(k), 1.0}});
        to_w.images.push_back({{static_cast<GeneratorId>(n + k), 1.0}});
    }
    const Series expected =
        canonicalize_tau(apply_linear_substitution(hz, to_z) * apply_linear_substitution(hw, to_w));
    return (projection_pi(C, alg) - expected).max_abs();
}

}  // namespace

Complex vratio_coefficient(double vratio, VratioExponent e) {
    const double lg = std::log(vratio);
    return e == VratioExponent::two_pi_i ? lg / kTwoPiI : Complex(lg / (2.0 * std::numbers::pi));
}

PentagonFactors<SeriesOps> series_factors(const DKAlgebra& alg, const AnalyzedPath& path, const Series& H,
                                          const AssociatorTable& table, const VerifyConfig& cfg) {
    const auto [n, i, j] = endpoints(path.spec);
    const int D = cfg.engine.degree;
    const auto& cat = alg.catalogue();
    const SeriesOps ops(cat, D);
    const auto tzw = alg.t("z", "w");
    const Series Tzw = Series::generator(cat, D, tzw);

    PentagonFactors<SeriesOps> f{
        phi_at(table, cat, tzw, alg.t("w", str(j)), D),
        apply_linear_substitution(H, substitution_Hzw(alg, H.catalogue(), n)),
        ops.exp_scaled(Tzw, vratio_coefficient(path.vratio, cfg.vratio_exponent)),
        ops.exp_scaled(Tzw, path.rot),
        phi_at(table, cat, alg.t(str(i), "z"), tzw, D),
        apply_linear_substitution(H, substitution_Hz(alg, H.catalogue(), n, i, j)),
        apply_linear_substitution(H, substitution_Hw(alg, H.catalogue(), n, i, j)),
        {},
        {}};
    const auto pc = series_pair_connection(alg, path.spec.punctures, D);
    for (std::size_t l = 0; l < path.crossings.size(); ++l) {
        f.C.push_back(compute_Cl(ops, pc, path, l, cfg.engine));
        f.crossing.push_back(crossing_factor(ops, f.C.back(), Tzw, path.crossings[l].sign));
    }
    return f;
}

PentagonFactors<MatrixOps> matrix_factors(const MatrixRep& rep, const AnalyzedPath& path, const VerifyConfig& cfg,
                                          Complex scale) {
    const auto [n, i, j] = endpoints(path.spec);
    const MatrixOps ops(rep.dim(), scale);
    auto g = [&](const std::string& a, const std::string& b) -> Matrix { return scale * rep.of(a, b); };
    const Matrix tzw = g("z", "w");

    PointConnection<MatrixOps> cz{path.spec.punctures, {}}, cw{path.spec.punctures, {}}, czw{path.spec.punctures, {}};
    PairConnection<MatrixOps> pc{path.spec.punctures, {}, {}, tzw};
    for (int k = 1; k <= n; ++k) {
        const Matrix tkz = g(str(k), "z"), tkw = g(str(k), "w");
        cz.generators.push_back(k == j ? Matrix(tkz + tzw) : tkz);
        cw.generators.push_back(k == i ? Matrix(tkw + tzw) : tkw);
        czw.generators.push_back(tkz + tkw);
        pc.tz.push_back(tkz);
        pc.tw.push_back(tkw);
    }
    const Leg leg = Leg::from_path(path.spec);
    const auto& e = cfg.engine;
    PentagonFactors<MatrixOps> f{associator_value(ops, tzw, g("w", str(j)), e),
                                 hol_reg(ops, czw, leg, e),
                                 ops.exp_scaled(tzw, vratio_coefficient(path.vratio, cfg.vratio_exponent)),
                                 ops.exp_scaled(tzw, path.rot),
                                 associator_value(ops, g(str(i), "z"), tzw, e),
                                 hol_reg(ops, cz, leg, e),
                                 hol_reg(ops, cw, leg, e),
                                 {},
                                 {}};
    for (std::size_t l = 0; l < path.crossings.size(); ++l) {
        f.C.push_back(compute_Cl(ops, pc, path, l, e));
        f.crossing.push_back(crossing_factor(ops, f.C.back(), tzw, path.crossings[l].sign));
    }
    return f;
}

PentagonReport verify_pentagon(const PathSpec& spec, const VerifyConfig& cfg) {
    validate(cfg.engine);
    if (cfg.engine.degree < 1) throw ConfigError("verification needs degree >= 1");
    if (!(cfg.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
    const auto t_start = Clock::now();
    PentagonReport r;
    r.degree = cfg.engine.degree;
    r.tolerance = cfg.tolerance;
    r.config = cfg;

    const AnalyzedPath path = analyze(spec);
    const auto [n, i, j] = endpoints(spec);
    r.rot = path.rot;
    r.vratio = path.vratio;
    for (const auto& c : path.crossings) r.signs.push_back(c.sign);
    const auto alg = DKAlgebra::with_two_moving_points(n);

    auto t0 = Clock::now();
    r.holonomy = hol_reg(ConnectionSpec::standard(spec.punctures), Leg::from_path(spec), cfg.engine);
    r.timings["holonomy"] = seconds_since(t0);

    t0 = Clock::now();
    const auto table = cached_associator(cfg.engine, cfg.cache_dir);
    r.phi = table.phi;
    r.timings["associator"] = seconds_since(t0);

    t0 = Clock::now();
    const auto f = series_factors(alg, path, *r.holonomy, table, cfg);
    r.C = f.C;
    r.timings["crossings"] = seconds_since(t0);

    t0 = Clock::now();
    const auto basis = cached_ideal_basis(alg, cfg.engine.degree, cfg.cache_dir);
    r.timings["ideal_basis"] = seconds_since(t0);

    const SeriesOps ops(alg.catalogue(), cfg.engine.degree);
    auto [lhs, rhs] = assemble(ops, f, cfg, cfg.order);
    r.residuals = per_degree(reduce(lhs - rhs, basis));
    const auto other = cfg.order == CrossingOrder::telescoping ? CrossingOrder::as_written : CrossingOrder::telescoping;
    auto [lhs2, rhs2] = assemble(ops, f, cfg, other);
    r.alternate_residuals = per_degree(reduce(lhs2 - rhs2, basis));

    r.grouplike_defects["holonomy"] = grouplike_defect(*r.holonomy);
    r.grouplike_defects["associator"] = grouplike_defect(table.phi);
    for (std::size_t l = 0; l < f.C.size(); ++l) {
        r.grouplike_defects["C_" + str(static_cast<int>(l) + 1)] = grouplike_defect(f.C[l]);
        r.grouplike_defects["crossing_factor_" + str(static_cast<int>(l) + 1)] = grouplike_defect(f.crossing[l]);
    }
    r.grouplike_defects["lhs"] = grouplike_defect(lhs);
    r.grouplike_defects["rhs"] = grouplike_defect(rhs);

    t0 = Clock::now();
    for (std::size_t l = 0; l < f.C.size(); ++l)
        r.projection.push_back(projection_residual(path, alg, f.C[l], l, cfg.engine));
    r.timings["projection"] = seconds_since(t0);

    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    r.pass = std::all_of(r.residuals.begin(), r.residuals.end(), [&](double x) { return x <= cfg.tolerance; });
    r.timings["total"] = seconds_since(t_start);
    return r;
}

MatrixReport verify_pentagon_matrix(const PathSpec& spec, int local_dim, const VerifyConfig& cfg) {
    validate(cfg.engine);
    if (local_dim < 2) throw ConfigError("matrix backend needs N >= 2");
    const auto t0 = Clock::now();
    const AnalyzedPath path = analyze(spec);
    const auto [n, i, j] = endpoints(spec);
    const auto alg = DKAlgebra::with_two_moving_points(n);
    const MatrixRep rep(alg, local_dim);

    MatrixReport r;
    r.local_dim = local_dim;
    r.dim = rep.dim();
    r.tolerance = cfg.tolerance;
    for (const auto& rel : alg.relations())
        r.relation_defect = std::max(r.relation_defect, operator_norm(rep.apply(rel)));

    const MatrixOps ops(rep.dim());
    const auto f = matrix_factors(rep, path, cfg);
    const auto [lhs, rhs] = assemble(ops, f, cfg, cfg.order);
    r.residual = operator_norm(lhs - rhs);
    r.lhs_norm = operator_norm(lhs);
    const auto other = cfg.order == CrossingOrder::telescoping ? CrossingOrder::as_written : CrossingOrder::telescoping;
    const auto [lhs2, rhs2] = assemble(ops, f, cfg, other);
    r.alternate_residual = operator_norm(lhs2 - rhs2);
    r.pass = r.residual <= cfg.tolerance;
    r.seconds = seconds_since(t0);
    return r;
}

std::vector<double> verify_projection_Cl(const PathSpec& spec, const EngineConfig& cfg) {
    validate(cfg);
    const AnalyzedPath path = analyze(spec);
    const int n = static_cast<int>(spec.punctures.size());
    const auto alg = DKAlgebra::with_two_moving_points(n);
    std::vector<double> out;
    for (std::size_t l = 0; l < path.crossings.size(); ++l)
        out.push_back(projection_residual(path, alg, compute_Cl(path, l, alg, cfg), l, cfg));
    return out;
}

std::vector<double> cross_backend_deviation(const PathSpec& spec, int local_dim, const VerifyConfig& cfg,
                                            int samples, double radius) {
    if (samples <= cfg.engine.degree) throw ConfigError("need more DFT samples than the truncation degree");
    const AnalyzedPath path = analyze(spec);
    const int n = static_cast<int>(spec.punctures.size());
    const auto alg = DKAlgebra::with_two_moving_points(n);
    const MatrixRep rep(alg, local_dim);
    const int D = cfg.engine.degree;

    const Series H = hol_reg(ConnectionSpec::standard(spec.punctures), Leg::from_path(spec), cfg.engine);
    const auto table = cached_associator(cfg.engine, cfg.cache_dir);
    const auto sf = series_factors(alg, path, H, table, cfg);
    const SeriesOps sops(alg.catalogue(), D);
    const auto [slhs, srhs] = assemble(sops, sf, cfg, cfg.order);

    auto flatten_series = [&](const PentagonFactors<SeriesOps>& f, const Series& l, const Series& r) {
        std::vector<Series> v{f.phi_left, f.h_zw, f.vratio, f.rotation, f.phi_right, f.h_z, f.h_w};
        v.insert(v.end(), f.C.begin(), f.C.end());
        v.insert(v.end(), f.crossing.begin(), f.crossing.end());
        v.push_back(l);
        v.push_back(r);
        return v;
    };
    const auto series_list = flatten_series(sf, slhs, srhs);

    std::vector<std::vector<Matrix>> taylor(series_list.size(),
                                            std::vector<Matrix>(D + 1, Matrix::Zero(rep.dim(), rep.dim())));
    for (int m = 0; m < samples; ++m) {
        const Complex h = std::polar(radius, 2.0 * std::numbers::pi * m / samples);
        const MatrixOps ops(rep.dim(), h);
        const auto f = matrix_factors(rep, path, cfg, h);
        const auto [l, r] = assemble(ops, f, cfg, cfg.order);
        std::vector<Matrix> v{f.phi_left, f.h_zw, f.vratio, f.rotation, f.phi_right, f.h_z, f.h_w};
        v.insert(v.end(), f.C.begin(), f.C.end());
        v.insert(v.end(), f.crossing.begin(), f.crossing.end());
        v.push_back(l);
        v.push_back(r);
        for (std::size_t k = 0; k < v.size(); ++k)
            for (int d = 0; d <= D; ++d) taylor[k][d] += v[k] / (std::pow(h, d) * static_cast<double>(samples));
    }
    std::vector<double> out(D + 1, 0.0);
    for (std::size_t k = 0; k < series_list.size(); ++k)
        for (int d = 0; d <= D; ++d)
            out[d] = std::max(out[d], operator_norm(taylor[k][d] - rep.apply_degree(series_list[k], d)));
    return out;
}

Json verify_config_to_json(const VerifyConfig& cfg) {
    return {{"engine", engine_config_to_json(cfg.engine)},
            {"tolerance", cfg.tolerance},
            {"omit_rotation_factor", cfg.omit_rotation},
            {"omit_vratio_factor", cfg.omit_vratio},
            {"crossing_order", cfg.order == CrossingOrder::telescoping ? "telescoping" : "as-written"},
            {"vratio_exponent", cfg.vratio_exponent == VratioExponent::two_pi_i ? "2pii" : "2pi"}};
}

Json report_to_json(const PentagonReport& r) {
    Json factors = {{"grouplike_defects", r.grouplike_defects}, {"projection_residuals", r.projection}};
    if (r.holonomy) factors["holonomy"] = series_to_json(*r.holonomy);
    if (r.phi) factors["associator"] = series_to_json(*r.phi);
    Json cs = Json::array();
    for (const auto& c : r.C) cs.push_back(series_to_json(c));
    factors["C"] = cs;
    return {{"degrees", r.residuals},
            {"alternate_order_degrees", r.alternate_residuals},
            {"tolerance", r.tolerance},
            {"pass", r.pass},
            {"rot", r.rot},
            {"vratio", r.vratio},
            {"signs", r.signs},
            {"factors", factors},
            {"config", verify_config_to_json(r.config)},
            {"timings", r.timings}};
}

Json report_to_json(const MatrixReport& r) {
    return {{"backend", "matrix"},
            {"N", r.local_dim},
            {"dimension", r.dim},
            {"residual", r.residual},
            {"alternate_order_residual", r.alternate_residual},
            {"lhs_norm", r.lhs_norm},
            {"relation_defect", r.relation_defect},
            {"tolerance", r.tolerance},
            {"pass", r.pass},
            {"timings", {{"total", r.seconds}}}};
}

}  // namespace kzhol
