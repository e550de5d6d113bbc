#include "kzhol/engine.hpp"

namespace kzhol {

void validate(const EngineConfig& cfg) {
    if (cfg.degree < 0) throw ConfigError("truncation degree must be non-negative");
    if (cfg.expansion_order < 1) throw ConfigError("expansion order K must be at least 1");
    if (cfg.max_expansion_order < cfg.expansion_order) throw ConfigError("max_expansion_order below expansion_order");
    if (cfg.quad_order < 2) throw ConfigError("quadrature order must be at least 2");
    if (!(cfg.eval_fraction > 0.0 && cfg.eval_fraction <= 0.5))
        throw ConfigError("eval_fraction must lie in (0, 0.5]");
    if (!(cfg.bernstein_min > 1.0)) throw ConfigError("bernstein_min must exceed 1");
    if (!(cfg.max_panel > 0.0)) throw ConfigError("max_panel must be positive");
    if (!(cfg.expansion_tolerance > 0.0)) throw ConfigError("expansion_tolerance must be positive");
}

double bernstein_parameter(Complex pole, double a, double b) {
    const Complex x = (2.0 * pole - a - b) / (b - a);
    const Complex s = std::sqrt(x - 1.0) * std::sqrt(x + 1.0);
    return std::max(std::abs(x + s), std::abs(x - s));
}

std::vector<std::pair<double, double>> split_panels(const std::vector<Complex>& poles, double a, double b,
                                                    const EngineConfig& cfg) {
    std::vector<std::pair<double, double>> out;
    std::vector<std::pair<double, double>> stack{{a, b}};
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        bool ok = hi - lo <= cfg.max_panel;
        for (std::size_t k = 0; ok && k < poles.size(); ++k) ok = bernstein_parameter(poles[k], lo, hi) >= cfg.bernstein_min;
        if (ok) {
            out.emplace_back(lo, hi);
            continue;
        }
        if (hi - lo < 1e-13 * std::max(1.0, std::abs(b - a)) || static_cast<int>(out.size()) > cfg.max_panels)
            throw NumericsError("panel refinement exceeded near a singularity of the connection");
        const double mid = 0.5 * (lo + hi);
        stack.emplace_back(mid, hi);
        stack.emplace_back(lo, mid);
    }
    return out;
}

}  // namespace kzhol
