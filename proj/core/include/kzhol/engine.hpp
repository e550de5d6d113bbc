#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "kzhol/error.hpp"
#include "kzhol/quadrature.hpp"

// Algebra-independent parts of the holonomy engine. An "Ops" type supplies
// the element arithmetic; see SeriesOps and MatrixOps in algebra_ops.hpp.
//
//   Elem zero() / identity()
//   Elem mul(a, b); void axpy(Elem& y, Complex c, const Elem& x); double norm(x)
//   Elem inverse(x)
//   Residue residue(R)                      (R is a sum of normalized generators)
//   Elem resolvent(const Residue&, double k, const Elem& y)   (k - ad_R)^{-1} y
//   Elem power(const Residue&, Complex log_x)                  exp(R log x)
//   bool picard_done(int iteration, double change, double scale)

namespace kzhol {

using Complex = std::complex<double>;

inline constexpr Complex kTwoPiI{0.0, 2.0 * std::numbers::pi};

struct EngineConfig {
    int degree = 3;
    /// Minimal local expansion order; raised until the tail estimate drops below expansion_tolerance.
    int expansion_order = 12;
    int max_expansion_order = 600;
    double expansion_tolerance = 1e-17;
    int quad_order = 16;
    /// Evaluation radius of local expansions, as a fraction of min(convergence radius, end segment).
    double eval_fraction = 0.25;
    /// Panels are bisected until every pole lies outside the Bernstein ellipse of this parameter.
    double bernstein_min = 6.0;
    /// Largest panel, in units of the linear piece parameter.
    double max_panel = 0.25;
    int max_panels = 200000;
};

void validate(const EngineConfig& cfg);

/// One term X * dlog(alpha + beta * x) of a connection pulled back to a line.
/// X already carries the 1/(2 pi i) normalization.
template <class Elem>
struct FormTerm {
    Elem X;
    Complex alpha;
    Complex beta;
};

template <class Elem>
using Form = std::vector<FormTerm<Elem>>;

/// Largest rho such that the pole lies on the Bernstein ellipse E_rho of [a, b].
double bernstein_parameter(Complex pole, double a, double b);

/// Splits [a, b] into panels resolving the poles -alpha/beta of the form.
std::vector<std::pair<double, double>> split_panels(const std::vector<Complex>& poles, double a, double b,
                                                    const EngineConfig& cfg);

template <class Elem>
std::vector<Complex> form_poles(const Form<Elem>& form) {
    std::vector<Complex> poles;
    for (const auto& term : form)
        if (term.beta != Complex(0.0)) poles.push_back(-term.alpha / term.beta);
    return poles;
}

template <class Ops>
typename Ops::Elem form_value(const Ops& ops, const Form<typename Ops::Elem>& form, double x) {
    auto a = ops.zero();
    for (const auto& term : form) {
        if (term.beta == Complex(0.0)) continue;
        ops.axpy(a, term.beta / (term.alpha + term.beta * x), term.X);
    }
    return a;
}

/// Solution operator of dU/dx = A(x) U from x = a to x = b, applied to U0.
template <class Ops>
typename Ops::Elem transport(const Ops& ops, const Form<typename Ops::Elem>& form, typename Ops::Elem U0,
                             double a, double b, const EngineConfig& cfg) {
    using Elem = typename Ops::Elem;
    if (b == a) return U0;
    const auto& gl = gauss_legendre(cfg.quad_order);
    const int q = gl.order;
    const auto poles = form_poles(form);
    for (Complex p : poles) {
        const double lo = std::min(a, b), hi = std::max(a, b);
        const double dist = p.real() < lo ? std::abs(p - lo) : p.real() > hi ? std::abs(p - hi) : std::abs(p.imag());
        if (dist <= 1e-13 * std::max(1.0, hi - lo))
            throw NumericsError("transport: path passes through a singularity of the connection");
    }

    std::vector<Elem> A(q, ops.zero()), U(q, ops.zero()), AU(q, ops.zero());
    Elem current = std::move(U0);
    const double lo = std::min(a, b), hi = std::max(a, b);
    auto panels = split_panels(poles, lo, hi, cfg);
    if (b < a) {
        std::reverse(panels.begin(), panels.end());
        for (auto& p : panels) std::swap(p.first, p.second);
    }

    for (const auto& [pa, pb] : panels) {
        const double h = pb - pa;
        for (int m = 0; m < q; ++m) {
            A[m] = form_value(ops, form, pa + h * gl.nodes[m]);
            U[m] = current;
        }
        for (int iter = 1;; ++iter) {
            for (int m = 0; m < q; ++m) AU[m] = ops.mul(A[m], U[m]);
            double change = 0.0, scale = 0.0;
            for (int m = 0; m < q; ++m) {
                Elem next = current;
                for (int n = 0; n < q; ++n) ops.axpy(next, h * gl.integral[m][n], AU[n]);
                Elem diff = next;
                ops.axpy(diff, -1.0, U[m]);
                change = std::max(change, ops.norm(diff));
                scale = std::max(scale, ops.norm(next));
                U[m] = std::move(next);
            }
            if (ops.picard_done(iter, change, scale)) break;
            // Rounding floor reached without meeting the backend's threshold.
            if (iter >= 60 && change <= 1e-12 * std::max(1.0, scale)) break;
            if (iter > 400) throw NumericsError("transport: Picard iteration did not converge on a panel");
        }
        for (int m = 0; m < q; ++m) AU[m] = ops.mul(A[m], U[m]);
        Elem next = current;
        for (int n = 0; n < q; ++n) ops.axpy(next, h * gl.weights[n], AU[n]);
        current = std::move(next);
    }
    return current;
}

/// Solution F(x) x^R of dU/dx = A(x) U near a regular singular point x = 0,
/// with F analytic and F(0) = 1. R collects the terms with alpha = 0.
template <class Ops>
struct LocalExpansion {
    typename Ops::Elem residue;
    typename Ops::Residue prepared;
    std::vector<typename Ops::Elem> coefficients;  // F = sum_k coefficients[k] x^k
    double radius = 0.0;                           // convergence radius in x
};

template <class Ops>
LocalExpansion<Ops> local_expansion(const Ops& ops, const Form<typename Ops::Elem>& form, double eval_radius,
                                    const EngineConfig& cfg) {
    using Elem = typename Ops::Elem;
    struct Regular {
        const Elem* X;
        Complex first;  // beta / alpha
        Complex ratio;  // -beta / alpha
    };
    Elem R = ops.zero();
    std::vector<Regular> regular;
    double radius = std::numeric_limits<double>::infinity();
    for (const auto& term : form) {
        if (term.beta == Complex(0.0)) continue;
        if (std::abs(term.alpha) <= 1e-14 * std::abs(term.beta)) {
            ops.axpy(R, 1.0, term.X);
            continue;
        }
        regular.push_back({&term.X, term.beta / term.alpha, -term.beta / term.alpha});
        radius = std::min(radius, std::abs(term.alpha / term.beta));
    }
    if (eval_radius >= radius) throw NumericsError("local expansion evaluated outside its convergence radius");

    LocalExpansion<Ops> out{R, ops.residue(R), {}, radius};
    std::vector<Elem> g;  // Taylor coefficients of the regular part
    auto g_at = [&](int k) -> const Elem& {
        while (static_cast<int>(g.size()) <= k) {
            const int m = static_cast<int>(g.size());
            Elem gm = ops.zero();
            for (const auto& r : regular) ops.axpy(gm, r.first * std::pow(r.ratio, m), *r.X);
            g.push_back(std::move(gm));
        }
        return g[k];
    };

    out.coefficients.push_back(ops.identity());
    double peak = 1.0;
    int quiet = 0;
    for (int k = 1;; ++k) {
        Elem rhs = ops.zero();
        for (int a = 0; a < k; ++a) ops.axpy(rhs, 1.0, ops.mul(g_at(a), out.coefficients[k - 1 - a]));
        Elem fk = ops.resolvent(out.prepared, static_cast<double>(k), rhs);
        const double size = ops.norm(fk) * std::pow(eval_radius, k);
        out.coefficients.push_back(std::move(fk));
        peak = std::max(peak, size);
        quiet = size <= cfg.expansion_tolerance * peak ? quiet + 1 : 0;
        if (k >= cfg.expansion_order && quiet >= 3) break;
        if (k >= cfg.max_expansion_order)
            throw NumericsError("local expansion did not converge within max_expansion_order terms");
    }
    return out;
}

/// F(x) exp(R log_x) where log_x is the chosen branch of log x.
template <class Ops>
typename Ops::Elem evaluate(const Ops& ops, const LocalExpansion<Ops>& le, Complex x, Complex log_x) {
    if (std::abs(x) >= le.radius) throw NumericsError("local solution evaluated outside its convergence radius");
    auto F = le.coefficients.back();
    for (std::size_t k = le.coefficients.size() - 1; k-- > 0;) {
        auto next = le.coefficients[k];
        ops.axpy(next, x, F);
        F = std::move(next);
    }
    return ops.mul(F, ops.power(le.prepared, log_x));
}

template <class Ops>
typename Ops::Elem evaluate(const Ops& ops, const LocalExpansion<Ops>& le, double x) {
    if (x <= 0.0) throw NumericsError("local solution needs a positive parameter on the real branch");
    return evaluate(ops, le, Complex(x), Complex(std::log(x)));
}

}  // namespace kzhol
