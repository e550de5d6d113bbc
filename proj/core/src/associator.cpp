#include "kzhol/associator.hpp"

#include <cstdint>
#include <cstdio>

#include "kzhol/dk_algebra.hpp"
#include "kzhol/json_io.hpp"

namespace kzhol {

CataloguePtr associator_catalogue() {
    static const CataloguePtr gens = make_catalogue({"A", "B"});
    return gens;
}

PathSpec associator_path() {
    PathSpec p;
    p.punctures = {0.0, 1.0};
    p.start = {1, 1.0};
    p.end = {2, -1.0};
    return p;
}

std::string config_hash(const EngineConfig& cfg) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "K=%d;Kmax=%d;ktol=%.17g;q=%d;eval=%.17g;rho=%.17g;panel=%.17g",
                  cfg.expansion_order, cfg.max_expansion_order, cfg.expansion_tolerance, cfg.quad_order,
                  cfg.eval_fraction, cfg.bernstein_min, cfg.max_panel);
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (const char* c = buf; *c; ++c) {
        h ^= static_cast<unsigned char>(*c);
        h *= 1099511628211ull;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

namespace {

double degree_one_max(const Series& g) { return g.degree() >= 1 ? g.max_abs(1) : 0.0; }

}  // namespace

AssociatorTable compute_associator(const EngineConfig& cfg) {
    if (cfg.degree < 1) throw ConfigError("associator needs degree >= 1");
    const SeriesOps ops(associator_catalogue(), cfg.degree);
    AssociatorTable t{associator_value(ops, Series::generator(ops.gens, cfg.degree, 0),
                                       Series::generator(ops.gens, cfg.degree, 1), cfg),
                      cfg, config_hash(cfg)};
    t.grouplike_defect = grouplike_defect(t.phi);
    t.degree_one_max = degree_one_max(t.phi);
    return t;
}

Series phi_at(const AssociatorTable& table, const CataloguePtr& target, const LinearImage& imageA,
              const LinearImage& imageB, int degree) {
    if (degree < 0) degree = table.phi.degree();
    if (degree > table.phi.degree()) throw ConfigError("phi_at: requested degree exceeds the associator table");
    if (imageA == imageB) throw ConfigError("phi_at: the two generator images must differ");
    for (const auto* img : {&imageA, &imageB})
        for (const auto& [id, c] : *img)
            if (id >= target->size()) throw ConfigError("phi_at: generator outside the target catalogue");
    LinearSubstitution phi{associator_catalogue(), target, {imageA, imageB}};
    return apply_linear_substitution(table.phi.truncated(degree), phi);
}

Series phi_at(const AssociatorTable& table, const CataloguePtr& target, GeneratorId genA, GeneratorId genB,
              int degree) {
    if (genA == genB) throw ConfigError("phi_at: generators must differ");
    return phi_at(table, target, LinearImage{{genA, 1.0}}, LinearImage{{genB, 1.0}}, degree);
}

Json associator_to_json(const AssociatorTable& table) {
    return {{"format", "kzhol-associator"},
              {"version", 1},
              {"degree", table.phi.degree()},
              {"config_hash", table.config_hash},
              {"config", engine_config_to_json(table.config)},
              {"grouplike_defect", table.grouplike_defect},
              {"degree_one_max", table.degree_one_max},
              {"series", series_to_json(table.phi)}};
}

void save_associator(const AssociatorTable& table, const std::filesystem::path& file) {
    write_json_file(file, associator_to_json(table));
}

AssociatorTable load_associator(const std::filesystem::path& file, int degree) {
    const Json j = read_json_file(file);
    AssociatorTable t{Series::zero(associator_catalogue(), 0), {}, {}};
    try {
        if (j.at("format") != "kzhol-associator") throw IoError("not an associator file: " + file.string());
        const int stored = j.at("degree").get<int>();
        if (degree > stored)
            throw IoError("cached associator has degree " + std::to_string(stored) + " < requested " +
                          std::to_string(degree) + "; recompute");
        const auto& c = j.at("config");
        t.config.degree = stored;
        t.config.expansion_order = c.at("expansion_order").get<int>();
        t.config.max_expansion_order = c.at("max_expansion_order").get<int>();
        t.config.expansion_tolerance = c.at("expansion_tolerance").get<double>();
        t.config.quad_order = c.at("quad_order").get<int>();
        t.config.eval_fraction = c.at("eval_fraction").get<double>();
        t.config.bernstein_min = c.at("bernstein_min").get<double>();
        t.config.max_panel = c.at("max_panel").get<double>();
        t.config_hash = j.at("config_hash").get<std::string>();
        t.phi = series_from_json(j.at("series"), associator_catalogue());
    } catch (const Json::exception& e) {
        throw IoError("corrupt associator file " + file.string() + ": " + e.what());
    }
    if (t.phi.degree() != t.config.degree) throw IoError("corrupt associator file: degree mismatch");
    if (degree >= 0 && degree < t.phi.degree()) {
        t.phi = t.phi.truncated(degree);
        t.config.degree = degree;
    }
    t.grouplike_defect = grouplike_defect(t.phi);
    t.degree_one_max = degree_one_max(t.phi);
    if (std::abs(t.phi.constant() - 1.0) > 1e-12 || t.degree_one_max > 1e-8 || t.grouplike_defect > 1e-8)
        throw IoError("associator file " + file.string() + " fails the associator invariants");
    return t;
}

AssociatorTable cached_associator(const EngineConfig& cfg, const std::filesystem::path& cache_dir) {
    if (cache_dir.empty()) return compute_associator(cfg);
    const auto file =
        cache_dir / ("associator_D" + std::to_string(cfg.degree) + "_" + config_hash(cfg) + ".json");
    if (std::filesystem::exists(file)) {
        auto t = load_associator(file, cfg.degree);
        t.config = cfg;
        return t;
    }
    auto t = compute_associator(cfg);
    save_associator(t, file);
    return t;
}

std::vector<double> associator_pentagon_residuals(const AssociatorTable& table, int degree,
                                                  const std::filesystem::path& cache_dir) {
    if (degree > table.phi.degree()) throw ConfigError("pentagon degree exceeds the associator table");
    const auto alg = DKAlgebra::numbered(4);
    const auto& gens = alg.catalogue();
    auto t = [&](int a, int b) { return alg.t(std::to_string(a), std::to_string(b)); };
    auto phi = [&](LinearImage a, LinearImage b) { return phi_at(table, gens, a, b, degree); };
    const LinearImage t12{{t(1, 2), 1.0}}, t23{{t(2, 3), 1.0}}, t34{{t(3, 4), 1.0}};
    const LinearImage t1_23{{t(1, 2), 1.0}, {t(1, 3), 1.0}}, t23_4{{t(2, 4), 1.0}, {t(3, 4), 1.0}};
    const LinearImage t2_34{{t(2, 3), 1.0}, {t(2, 4), 1.0}}, t12_3{{t(1, 3), 1.0}, {t(2, 3), 1.0}};

    const Series lhs = phi(t23, t34) * phi(t1_23, t23_4) * phi(t12, t23);
    const Series rhs = phi(t12, t2_34) * phi(t12_3, t34);
    const auto basis = cached_ideal_basis(alg, degree, cache_dir);
    const Series diff = reduce(lhs - rhs, basis);
    std::vector<double> out;
    for (int d = 0; d <= degree; ++d) out.push_back(diff.max_abs(d));
    return out;
}

}  // namespace kzhol
