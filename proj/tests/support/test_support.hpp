#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/linestring.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "kzhol/error.hpp"
#include "kzhol/json_io.hpp"
#include "kzhol/path.hpp"
#include "kzhol/series.hpp"

namespace kzhol::fixtures {

inline PathSpec load_path(const std::string& name) {
    return path_from_json(read_json_file(std::string(KZHOL_TEST_DATA_DIR) + "/" + name + ".json"));
}

inline std::string data_file(const std::string& name) {
    return std::string(KZHOL_TEST_DATA_DIR) + "/" + name + ".json";
}

/// zeta(2) / (2 pi)^2 from the integral of -log(1-t)/t over [0,1].
inline double zeta2_over_4pi2() {
    boost::math::quadrature::tanh_sinh<double> ts;
    const double z2 = ts.integrate([](double t) { return -std::log1p(-t) / t; }, 0.0, 1.0);
    return z2 / (4.0 * std::numbers::pi * std::numbers::pi);
}

/// Graded dimensions of U(t_m): product over k < m of 1/(1 - k x), up to x^D.
inline std::vector<long> dk_hilbert_series(int strands, int D) {
    std::vector<long> c(D + 1, 0);
    c[0] = 1;
    for (int k = 1; k < strands; ++k)
        for (int d = 1; d <= D; ++d) c[d] += k * c[d - 1];
    return c;
}

struct OracleCrossing {
    double t, s;
    Complex position;
    int sign;
};

/// Self-intersections found with boost::geometry, segment pair by segment pair.
inline std::vector<OracleCrossing> oracle_crossings(const PathSpec& spec) {
    namespace bg = boost::geometry;
    using Pt = bg::model::d2::point_xy<double>;
    using Line = bg::model::linestring<Pt>;
    const auto V = spec.vertices();
    std::vector<double> cum{0.0};
    for (std::size_t k = 0; k + 1 < V.size(); ++k) cum.push_back(cum.back() + std::abs(V[k + 1] - V[k]));
    const double L = cum.back();
    auto param = [&](std::size_t seg, Complex p) { return (cum[seg] + std::abs(p - V[seg])) / L; };
    std::vector<OracleCrossing> out;
    for (std::size_t a = 0; a + 1 < V.size(); ++a)
        for (std::size_t b = a + 2; b + 1 < V.size(); ++b) {
            const Line la{{V[a].real(), V[a].imag()}, {V[a + 1].real(), V[a + 1].imag()}};
            const Line lb{{V[b].real(), V[b].imag()}, {V[b + 1].real(), V[b + 1].imag()}};
            std::vector<Pt> pts;
            bg::intersection(la, lb, pts);
            for (const auto& p : pts) {
                const Complex z(p.x(), p.y());
                const double t = param(a, z), s = param(b, z);
                if (t < 1e-9 || s > 1.0 - 1e-9) continue;  // shared endpoint of a loop
                const Complex ratio = (V[b + 1] - V[b]) / (V[a + 1] - V[a]);
                out.push_back({t, s, z, ratio.imag() > 0 ? 1 : -1});
            }
        }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.t < y.t; });
    return out;
}

inline Complex random_unit(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    return std::polar(1.0, ang(rng));
}

/// Random path between tangential points; waypoints in the box around the punctures.
inline PathSpec random_path(std::mt19937_64& rng, const std::vector<Complex>& punctures, TangentialPoint start,
                            TangentialPoint end, int interior = 3) {
    std::uniform_real_distribution<double> box(-0.6, 1.6), lead(0.12, 0.3);
    for (;;) {
        PathSpec p;
        p.punctures = punctures;
        p.start = start;
        p.end = end;
        p.waypoints.push_back(p.start_point() + start.v / std::abs(start.v) * lead(rng));
        for (int k = 0; k < interior; ++k) p.waypoints.push_back({box(rng), box(rng)});
        p.waypoints.push_back(p.end_point() + end.v / std::abs(end.v) * lead(rng));
        try {
            validate(p);
        } catch (const Error&) {
            continue;
        }
        // keep away from punctures so that the tests are about the identities, not conditioning
        const auto V = p.vertices();
        bool close = false;
        for (std::size_t k = 0; k + 1 < V.size(); ++k)
            for (std::size_t m = 0; m < punctures.size(); ++m) {
                if ((k == 0 && static_cast<int>(m) == start.puncture - 1) ||
                    (k + 2 == V.size() && static_cast<int>(m) == end.puncture - 1))
                    continue;
                const Complex d = V[k + 1] - V[k];
                const double u = std::clamp(std::real((punctures[m] - V[k]) * std::conj(d)) / std::norm(d), 0.0, 1.0);
                if (std::abs(V[k] + u * d - punctures[m]) < 0.05) close = true;
            }
        if (!close) return p;
    }
}

inline TangentialPoint random_tangent(std::mt19937_64& rng, int puncture) {
    std::uniform_real_distribution<double> mag(0.5, 2.0);
    return {puncture, random_unit(rng) * mag(rng)};
}

}  // namespace kzhol::fixtures
