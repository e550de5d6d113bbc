#include "kzhol/holonomy.hpp"

#include <algorithm>

#include <cmath>
#include <limits>

#include "kzhol/dk_algebra.hpp"

namespace kzhol {

Leg Leg::from_path(const PathSpec& spec) { return {spec.vertices(), spec.start, spec.end}; }

Leg prefix_leg(const AnalyzedPath& path, double t) {
    if (!(t > 0.0 && t < 1.0)) throw ConfigError("prefix_leg needs 0 < t < 1");
    Leg leg;
    leg.start = path.spec.start;
    for (std::size_t k = 0; k < path.vertices.size() && path.breakpoints[k] < t; ++k)
        leg.vertices.push_back(path.vertices[k]);
    leg.vertices.push_back(path.position(t));
    return leg;
}

Leg reversed_suffix_leg(const AnalyzedPath& path, double s) {
    if (!(s > 0.0 && s < 1.0)) throw ConfigError("reversed_suffix_leg needs 0 < s < 1");
    Leg leg;
    leg.start = path.spec.end;
    for (std::size_t k = path.vertices.size(); k-- > 0 && path.breakpoints[k] > s;)
        leg.vertices.push_back(path.vertices[k]);
    leg.vertices.push_back(path.position(s));
    return leg;
}

double tangential_radius(const std::vector<Complex>& punctures, const TangentialPoint& base) {
    const Complex zi = punctures.at(base.puncture - 1);
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < punctures.size(); ++k)
        if (static_cast<int>(k) + 1 != base.puncture) r = std::min(r, std::abs(punctures[k] - zi));
    return r / std::abs(base.v);
}

double tangential_eval_point(const std::vector<Complex>& punctures, const TangentialPoint& base,
                             double segment_length, const EngineConfig& cfg) {
    const double seg = segment_length / std::abs(base.v);
    return cfg.eval_fraction * std::min(tangential_radius(punctures, base), seg);
}

void check_leg(const Leg& leg, const std::vector<Complex>& punctures) {
    const auto& V = leg.vertices;
    if (V.size() < 2) throw GeometryError("a path needs at least two vertices");
    for (std::size_t k = 0; k + 1 < V.size(); ++k)
        if (V[k + 1] == V[k]) throw GeometryError("consecutive vertices coincide");
    auto check = [&](const TangentialPoint& tp, Complex at, Complex dir, const char* which) {
        if (tp.puncture < 1 || tp.puncture > static_cast<int>(punctures.size()))
            throw GeometryError(std::string(which) + " puncture index out of range");
        if (tp.v == Complex(0.0)) throw GeometryError("tangent vector must be nonzero");
        const Complex z = punctures[tp.puncture - 1];
        if (std::abs(at - z) > 1e-12 * std::max(1.0, std::abs(z)))
            throw GeometryError(std::string(which) + " vertex is not the tangential base puncture");
        if (std::abs(std::arg(dir / tp.v)) > 1e-9)
            throw GeometryError(std::string(which) + " segment is not aligned with the tangent vector");
    };
    if (leg.start) check(*leg.start, V.front(), V[1] - V[0], "start");
    if (leg.end) check(*leg.end, V.back(), V[V.size() - 2] - V.back(), "end");
}

ConnectionSpec ConnectionSpec::standard(std::vector<Complex> punctures) {
    ConnectionSpec c;
    const int n = static_cast<int>(punctures.size());
    c.punctures = std::move(punctures);
    c.gens = one_point_catalogue(n);
    for (int k = 0; k < n; ++k) c.generators.push_back(static_cast<GeneratorId>(k));
    return c;
}

void ConnectionSpec::validate() const {
    if (!gens) throw ConfigError("connection has no generator catalogue");
    if (generators.size() != punctures.size()) throw ConfigError("one generator per puncture required");
    for (std::size_t a = 0; a < generators.size(); ++a) {
        if (generators[a] >= gens->size()) throw ConfigError("generator id out of range");
        for (std::size_t b = a + 1; b < generators.size(); ++b) {
            if (generators[a] == generators[b]) throw ConfigError("generator assignment must be injective");
            if (std::abs(punctures[a] - punctures[b]) <= 1e-12 * std::max(1.0, std::abs(punctures[a])))
                throw GeometryError("coincident punctures");
        }
    }
}

PointConnection<SeriesOps> ConnectionSpec::bind(int degree) const {
    validate();
    PointConnection<SeriesOps> pc{punctures, {}};
    for (GeneratorId g : generators) pc.generators.push_back(Series::generator(gens, degree, g));
    return pc;
}

LocalSolution local_solution(const ConnectionSpec& conn, const TangentialPoint& base, const EngineConfig& cfg,
                             double eval_radius) {
    validate(cfg);
    const SeriesOps ops(conn.gens, cfg.degree);
    const auto pc = conn.bind(cfg.degree);
    if (base.puncture < 1 || base.puncture > static_cast<int>(conn.punctures.size()))
        throw ConfigError("base puncture not in connection");
    const auto le = local_expansion(ops, tangential_form(pc, base), eval_radius, cfg);
    return {base, conn.punctures[base.puncture - 1], le.residue, le.coefficients, le.radius};
}

Series evaluate_local(const LocalSolution& sol, Complex z, double log_branch) {
    const Complex w = (z - sol.puncture) / sol.base.v;
    if (std::abs(w) >= sol.radius) throw NumericsError("evaluate_local outside the convergence radius");
    if (w == Complex(0.0)) throw NumericsError("evaluate_local at the puncture itself");
    Series F = sol.coefficients.back();
    for (std::size_t k = sol.coefficients.size() - 1; k-- > 0;) F = sol.coefficients[k] + F * w;
    return F * exp(sol.residue * Complex(std::log(std::abs(w)), log_branch));
}

Series transport(const ConnectionSpec& conn, const Series& start_value, const std::vector<Complex>& points,
                 const EngineConfig& cfg) {
    validate(cfg);
    const SeriesOps ops(conn.gens, cfg.degree);
    for (std::size_t k = 0; k + 1 < points.size(); ++k)
        for (Complex z : conn.punctures) {
            const Complex d = points[k + 1] - points[k];
            if (d == Complex(0.0)) continue;
            const double a = std::clamp(((z - points[k]) * std::conj(d)).real() / std::norm(d), 0.0, 1.0);
            if (std::abs(points[k] + a * d - z) <= 1e-12 * std::max(1.0, std::abs(z)))
                throw GeometryError("transport path meets a puncture");
        }
    return transport_polyline(ops, conn.bind(cfg.degree), points, start_value, cfg);
}

Series hol_reg(const ConnectionSpec& conn, const Leg& leg, const EngineConfig& cfg) {
    const SeriesOps ops(conn.gens, cfg.degree);
    return hol_reg(ops, conn.bind(cfg.degree), leg, cfg);
}

Series hol_reg(const ConnectionSpec& conn, const PathSpec& path, const EngineConfig& cfg) {
    validate(path);
    if (path.punctures != conn.punctures) throw ConfigError("path and connection use different punctures");
    return hol_reg(conn, Leg::from_path(path), cfg);
}

}  // namespace kzhol
