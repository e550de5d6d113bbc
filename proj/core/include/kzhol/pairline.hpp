#pragma once

#include <cmath>
#include <vector>

#include "kzhol/algebra_ops.hpp"
#include "kzhol/dk_algebra.hpp"
#include "kzhol/engine.hpp"
#include "kzhol/path.hpp"

namespace kzhol {

/// Two moving points z, w: sum_k (t_{k,z} dlog(z - z_k) + t_{k,w} dlog(w - z_k)) + t_{z,w} dlog(z - w),
/// all divided by 2 pi i. Generators are stored unnormalized.
template <class Ops>
struct PairConnection {
    std::vector<Complex> punctures;
    std::vector<typename Ops::Elem> tz;  // t_{k,z}
    std::vector<typename Ops::Elem> tw;  // t_{k,w}
    typename Ops::Elem tzw;
};

/// Generators of DKAlgebra::with_two_moving_points(n) as series of the given degree.
PairConnection<SeriesOps> series_pair_connection(const DKAlgebra& alg, const std::vector<Complex>& punctures,
                                                 int degree);

/// The line L_l: z = gamma(t), w = gamma(sigma(t)), sigma(t) = 1 + slope t, t in [0, t_l].
struct LineGeometry {
    std::size_t crossing = 0;
    double t_end = 0.0;  // t_l
    double slope = 0.0;  // (s_l - 1) / t_l
    std::vector<double> breaks;  // 0 < ... < t_l where z or w changes segment, with 0 and t_l included
    Complex z_start, w_start;    // z_i, z_j
    Complex z_rate0, w_rate0;    // dz/dt, dw/dt on the first piece
    Complex position;            // a_l
    Complex z_rate1, w_rate1;    // dz/dt, dw/dt on the last piece
    int sign = 0;
    double log_ci = 0.0;  // log of (dz/dt) / v_i at t = 0 (positive real)
    double log_cw = 0.0;  // log of (dw/dt) / v_j at t = 0 (positive real)
};

LineGeometry line_geometry(const AnalyzedPath& path, std::size_t l);

template <class Ops>
void add_pair_terms(Form<typename Ops::Elem>& form, const PairConnection<Ops>& conn, Complex z0, Complex dz,
                    Complex w0, Complex dw, bool exact_corner = false, bool exact_diagonal = false,
                    int zi = -1, int wj = -1) {
    const Complex scale = Complex(1.0) / kTwoPiI;
    for (std::size_t k = 0; k < conn.punctures.size(); ++k) {
        auto X = conn.tz[k];
        X *= scale;
        const Complex a = exact_corner && static_cast<int>(k) == zi ? Complex(0.0) : z0 - conn.punctures[k];
        form.push_back({std::move(X), a, dz});
    }
    for (std::size_t k = 0; k < conn.punctures.size(); ++k) {
        auto X = conn.tw[k];
        X *= scale;
        const Complex a = exact_corner && static_cast<int>(k) == wj ? Complex(0.0) : w0 - conn.punctures[k];
        form.push_back({std::move(X), a, dw});
    }
    auto X = conn.tzw;
    X *= scale;
    form.push_back({std::move(X), exact_diagonal ? Complex(0.0) : z0 - w0, dz - dw});
}

/// Local solution at the corner t = 0 in the variable t, and the constant right
/// factor turning F(t) t^R into the solution with the prescribed asymptotics
/// ((z - z_i)/v_i)^{t_iz/2 pi i} ((w - z_j)/v_j)^{t_wj/2 pi i}.
template <class Ops>
struct LineEndSolution {
    LocalExpansion<Ops> expansion;
    typename Ops::Elem normalization;
    double delta = 0.0;  // evaluation parameter
};

template <class Ops>
LineEndSolution<Ops> corner_solution(const Ops& ops, const PairConnection<Ops>& conn, const LineGeometry& line,
                                     int start_puncture, int end_puncture, const EngineConfig& cfg) {
    Form<typename Ops::Elem> form;
    add_pair_terms(form, conn, line.z_start, line.z_rate0, line.w_start, line.w_rate0, true, false,
                   start_puncture - 1, end_puncture - 1);
    double radius = std::numeric_limits<double>::infinity();
    for (const auto& term : form)
        if (term.alpha != Complex(0.0)) radius = std::min(radius, std::abs(term.alpha / term.beta));
    const double delta = cfg.eval_fraction * std::min(radius, line.breaks[1]);
    auto le = local_expansion(ops, form, delta, cfg);
    auto norm = ops.mul(ops.exp_scaled(conn.tz[start_puncture - 1], line.log_ci / kTwoPiI),
                        ops.exp_scaled(conn.tw[end_puncture - 1], line.log_cw / kTwoPiI));
    return {std::move(le), std::move(norm), delta};
}

enum class CrossingSide { up, down };

/// Local solution at t = t_l in x = t_l - t: F(x) x^{t_zw / 2 pi i} exp(-+ eps t_zw / 2).
template <class Ops>
LineEndSolution<Ops> crossing_solution(const Ops& ops, const PairConnection<Ops>& conn, const LineGeometry& line,
                                       CrossingSide side, const EngineConfig& cfg) {
    Form<typename Ops::Elem> form;
    add_pair_terms(form, conn, line.position, -line.z_rate1, line.position, -line.w_rate1, false, true);
    double radius = std::numeric_limits<double>::infinity();
    for (const auto& term : form)
        if (term.alpha != Complex(0.0) && term.beta != Complex(0.0))
            radius = std::min(radius, std::abs(term.alpha / term.beta));
    const double last = line.t_end - line.breaks[line.breaks.size() - 2];
    const double delta = cfg.eval_fraction * std::min(radius, last);
    auto le = local_expansion(ops, form, delta, cfg);
    const double shift = (side == CrossingSide::up ? 0.5 : -0.5) * line.sign;
    return {std::move(le), ops.exp_scaled(conn.tzw, shift), delta};
}

template <class Ops>
typename Ops::Elem evaluate(const Ops& ops, const LineEndSolution<Ops>& sol) {
    return ops.mul(evaluate(ops, sol.expansion, sol.delta), sol.normalization);
}

/// C_l = Psi_{a_l,d}^{-1} (transport along L_l) Psi_5.
template <class Ops>
typename Ops::Elem compute_Cl(const Ops& ops, const PairConnection<Ops>& conn, const AnalyzedPath& path,
                              std::size_t l, const EngineConfig& cfg) {
    validate(cfg);
    const LineGeometry line = line_geometry(path, l);
    const auto corner = corner_solution(ops, conn, line, path.spec.start.puncture, path.spec.end.puncture, cfg);
    const auto cross = crossing_solution(ops, conn, line, CrossingSide::down, cfg);

    auto U = evaluate(ops, corner);
    std::vector<double> ts{corner.delta};
    for (std::size_t k = 1; k + 1 < line.breaks.size(); ++k) ts.push_back(line.breaks[k]);
    ts.push_back(line.t_end - cross.delta);
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
        const double ta = ts[k], tb = ts[k + 1];
        const Complex za = path.position(ta), zb = path.position(tb);
        const Complex wa = path.position(1.0 + line.slope * ta), wb = path.position(1.0 + line.slope * tb);
        Form<typename Ops::Elem> form;
        add_pair_terms(form, conn, za, zb - za, wa, wb - wa);
        U = transport(ops, form, std::move(U), 0.0, 1.0, cfg);
    }
    return ops.mul(ops.inverse(evaluate(ops, cross)), U);
}

/// C^{-1} exp(-eps t_zw) C.
template <class Ops>
typename Ops::Elem crossing_factor(const Ops& ops, const typename Ops::Elem& C, const typename Ops::Elem& tzw,
                                   int sign) {
    return ops.mul(ops.inverse(C), ops.mul(ops.exp_scaled(tzw, -static_cast<double>(sign)), C));
}

Series compute_Cl(const AnalyzedPath& path, std::size_t l, const DKAlgebra& alg, const EngineConfig& cfg);
Series crossing_factor(const Series& C, const DKAlgebra& alg, int sign);

}  // namespace kzhol
