#pragma once

#include <optional>
#include <vector>

#include "kzhol/algebra_ops.hpp"
#include "kzhol/engine.hpp"
#include "kzhol/path.hpp"
#include "kzhol/series.hpp"

namespace kzhol {

/// Polyline with optional tangential data at either end. When `start` is set,
/// vertices.front() is that puncture and the first segment points along v;
/// likewise `end` with the last segment arriving along -v. An end without
/// tangential data is a regular point where the local solution is 1.
struct Leg {
    std::vector<Complex> vertices;
    std::optional<TangentialPoint> start;
    std::optional<TangentialPoint> end;

    static Leg from_path(const PathSpec& spec);
};

/// gamma restricted to [0, t], ending at the regular point gamma(t).
Leg prefix_leg(const AnalyzedPath& path, double t);
/// gamma restricted to [s, 1] traversed backwards, from the end puncture to gamma(s).
Leg reversed_suffix_leg(const AnalyzedPath& path, double s);

/// Connection sum_k X_k dlog(z - z_k) / (2 pi i) with X_k = generators[k].
template <class Ops>
struct PointConnection {
    std::vector<Complex> punctures;
    std::vector<typename Ops::Elem> generators;
};

template <class Elem>
Elem normalized_generator(const Elem& X) {
    Elem Y = X;
    Y *= Complex(1.0) / kTwoPiI;
    return Y;
}

/// Pull-back of the connection to the segment p + tau (q - p), tau in [0,1].
template <class Ops>
Form<typename Ops::Elem> segment_form(const PointConnection<Ops>& conn, Complex p, Complex q) {
    Form<typename Ops::Elem> form;
    for (std::size_t k = 0; k < conn.punctures.size(); ++k)
        form.push_back({normalized_generator(conn.generators[k]), p - conn.punctures[k], q - p});
    return form;
}

/// Pull-back to the ray z = z_i + v w; the term of puncture i has alpha = 0 exactly.
template <class Ops>
Form<typename Ops::Elem> tangential_form(const PointConnection<Ops>& conn, const TangentialPoint& base) {
    Form<typename Ops::Elem> form;
    const std::size_t i = static_cast<std::size_t>(base.puncture - 1);
    for (std::size_t k = 0; k < conn.punctures.size(); ++k) {
        const Complex alpha = k == i ? Complex(0.0) : conn.punctures[i] - conn.punctures[k];
        form.push_back({normalized_generator(conn.generators[k]), alpha, base.v});
    }
    return form;
}

/// Convergence radius of the local expansion at `base`, in the w = (z - z_i)/v coordinate.
double tangential_radius(const std::vector<Complex>& punctures, const TangentialPoint& base);

/// Evaluation parameter w used on an end segment of length `segment_length`.
double tangential_eval_point(const std::vector<Complex>& punctures, const TangentialPoint& base,
                             double segment_length, const EngineConfig& cfg);

void check_leg(const Leg& leg, const std::vector<Complex>& punctures);

/// Transport of U0 along the polyline through `points`.
template <class Ops>
typename Ops::Elem transport_polyline(const Ops& ops, const PointConnection<Ops>& conn,
                                      const std::vector<Complex>& points, typename Ops::Elem U0,
                                      const EngineConfig& cfg) {
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        if (points[k + 1] == points[k]) continue;
        U0 = transport(ops, segment_form(conn, points[k], points[k + 1]), std::move(U0), 0.0, 1.0, cfg);
    }
    return U0;
}

/// Psi_q^{-1} (transport) Psi_p with local solutions matched on the end segments.
template <class Ops>
typename Ops::Elem hol_reg(const Ops& ops, const PointConnection<Ops>& conn, const Leg& leg,
                           const EngineConfig& cfg) {
    validate(cfg);
    check_leg(leg, conn.punctures);
    const auto& V = leg.vertices;
    std::vector<Complex> points(V.begin(), V.end());

    auto psi_p = ops.identity();
    if (leg.start) {
        const double w = tangential_eval_point(conn.punctures, *leg.start, std::abs(V[1] - V[0]), cfg);
        const auto le = local_expansion(ops, tangential_form(conn, *leg.start), w, cfg);
        psi_p = evaluate(ops, le, w);
        points.front() = V.front() + leg.start->v * w;
    }
    auto psi_q_inv = ops.identity();
    if (leg.end) {
        const std::size_t n = V.size();
        const double w = tangential_eval_point(conn.punctures, *leg.end, std::abs(V[n - 1] - V[n - 2]), cfg);
        const auto le = local_expansion(ops, tangential_form(conn, *leg.end), w, cfg);
        psi_q_inv = ops.inverse(evaluate(ops, le, w));
        points.back() = V.back() + leg.end->v * w;
    }
    auto U = transport_polyline(ops, conn, points, std::move(psi_p), cfg);
    return ops.mul(psi_q_inv, U);
}

// Series-valued interface on the free algebra generated by t[1,z]..t[n,z].

struct ConnectionSpec {
    std::vector<Complex> punctures;
    CataloguePtr gens;
    /// Generator attached to each puncture.
    std::vector<GeneratorId> generators;

    /// Punctures with t[k,z] attached to puncture k.
    static ConnectionSpec standard(std::vector<Complex> punctures);
    /// Throws ConfigError / GeometryError on inconsistent data.
    void validate() const;
    PointConnection<SeriesOps> bind(int degree) const;
};

struct LocalSolution {
    TangentialPoint base;
    Complex puncture;
    Series residue;                  // t_{i,z} / 2 pi i
    std::vector<Series> coefficients;  // f_0 .. f_K
    double radius = 0.0;             // in w = (z - z_i) / v
    int order() const { return static_cast<int>(coefficients.size()) - 1; }
};

/// Local solution f(w) w^{t_i/2 pi i} at a tangential base point, expanded far
/// enough to be accurate to cfg.expansion_tolerance for |w| <= eval_radius.
LocalSolution local_solution(const ConnectionSpec& conn, const TangentialPoint& base, const EngineConfig& cfg,
                             double eval_radius);

/// f(w) exp((t_i / 2 pi i)(log|w| + i arg)) with arg the chosen branch of arg w.
Series evaluate_local(const LocalSolution& sol, Complex z, double log_branch);

/// Transport of `start_value` along the polyline through `points`.
Series transport(const ConnectionSpec& conn, const Series& start_value, const std::vector<Complex>& points,
                 const EngineConfig& cfg);

Series hol_reg(const ConnectionSpec& conn, const Leg& leg, const EngineConfig& cfg);
Series hol_reg(const ConnectionSpec& conn, const PathSpec& path, const EngineConfig& cfg);

}  // namespace kzhol
