#include "kzhol/pairline.hpp"

#include <algorithm>

namespace kzhol {

PairConnection<SeriesOps> series_pair_connection(const DKAlgebra& alg, const std::vector<Complex>& punctures,
                                                 int degree) {
    const auto& gens = alg.catalogue();
    PairConnection<SeriesOps> c{punctures, {}, {}, Series::generator(gens, degree, alg.t("z", "w"))};
    for (std::size_t k = 1; k <= punctures.size(); ++k) {
        c.tz.push_back(Series::generator(gens, degree, alg.t(std::to_string(k), "z")));
        c.tw.push_back(Series::generator(gens, degree, alg.t(std::to_string(k), "w")));
    }
    return c;
}

LineGeometry line_geometry(const AnalyzedPath& path, std::size_t l) {
    if (l >= path.crossings.size()) throw ConfigError("crossing index out of range");
    const Crossing& c = path.crossings[l];
    LineGeometry g;
    g.crossing = l;
    g.t_end = c.t;
    g.slope = (c.s - 1.0) / c.t;
    g.sign = c.sign;
    g.position = c.position;

    std::vector<double> br{0.0, c.t};
    for (double b : path.breakpoints) {
        if (b > 0.0 && b < c.t) br.push_back(b);
        if (b > c.s && b < 1.0) br.push_back((b - 1.0) / g.slope);
    }
    std::sort(br.begin(), br.end());
    g.breaks.clear();
    for (double b : br)
        if (g.breaks.empty() || b - g.breaks.back() > 1e-14) g.breaks.push_back(b);
    if (g.breaks.back() != c.t) g.breaks.back() = c.t;

    const std::size_t last = path.segment_count() - 1;
    g.z_start = path.vertices.front();
    g.w_start = path.vertices.back();
    g.z_rate0 = path.velocity(0);
    g.w_rate0 = path.velocity(last) * g.slope;
    g.z_rate1 = path.velocity(c.segment_t);
    g.w_rate1 = path.velocity(c.segment_s) * g.slope;

    const Complex ci = g.z_rate0 / path.spec.start.v;
    const Complex cw = g.w_rate0 / path.spec.end.v;
    if (std::abs(std::arg(ci)) > 1e-9 || std::abs(std::arg(cw)) > 1e-9)
        throw GeometryError("end segments are not aligned with the tangent vectors");
    g.log_ci = std::log(std::abs(ci));
    g.log_cw = std::log(std::abs(cw));
    return g;
}

Series compute_Cl(const AnalyzedPath& path, std::size_t l, const DKAlgebra& alg, const EngineConfig& cfg) {
    const SeriesOps ops(alg.catalogue(), cfg.degree);
    return compute_Cl(ops, series_pair_connection(alg, path.spec.punctures, cfg.degree), path, l, cfg);
}

Series crossing_factor(const Series& C, const DKAlgebra& alg, int sign) {
    const SeriesOps ops(C.catalogue(), C.degree());
    return crossing_factor(ops, C, Series::generator(C.catalogue(), C.degree(), alg.t("z", "w")), sign);
}

}  // namespace kzhol
