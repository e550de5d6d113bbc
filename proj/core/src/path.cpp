#include "kzhol/path.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kzhol/error.hpp"

namespace kzhol {

namespace {

constexpr double kPi = std::numbers::pi;

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }
double dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }

std::string fmt_point(Complex z) {
    std::ostringstream os;
    os << "(" << z.real() << ", " << z.imag() << ")";
    return os.str();
}

// Closest parameter in [0,1] of segment p + a d to the point q.
double closest_param(Complex p, Complex d, Complex q) {
    const double a = dot(q - p, d) / std::norm(d);
    return std::clamp(a, 0.0, 1.0);
}

double scale_of(const std::vector<Complex>& pts) {
    double s = 0.0;
    for (Complex z : pts) s = std::max(s, std::abs(z));
    return std::max(s, 1.0);
}

}  // namespace

std::vector<Complex> PathSpec::vertices() const {
    std::vector<Complex> v;
    v.reserve(waypoints.size() + 2);
    v.push_back(start_point());
    v.insert(v.end(), waypoints.begin(), waypoints.end());
    v.push_back(end_point());
    return v;
}

std::vector<double> turning_angles(const std::vector<Complex>& vertices) {
    std::vector<double> out;
    for (std::size_t k = 1; k + 1 < vertices.size(); ++k) {
        const Complex a = vertices[k] - vertices[k - 1];
        const Complex b = vertices[k + 1] - vertices[k];
        out.push_back(std::atan2(cross(a, b), dot(a, b)));
    }
    return out;
}

void validate(const PathSpec& spec, const GeometryConfig& cfg) {
    const auto& pz = spec.punctures;
    if (pz.empty()) throw GeometryError("path needs at least one puncture");
    const double scale = scale_of(pz);
    for (std::size_t a = 0; a < pz.size(); ++a)
        for (std::size_t b = a + 1; b < pz.size(); ++b)
            if (std::abs(pz[a] - pz[b]) <= 1e-12 * scale)
                throw GeometryError("coincident punctures " + std::to_string(a + 1) + " and " + std::to_string(b + 1));
    for (const auto* tp : {&spec.start, &spec.end}) {
        if (tp->puncture < 1 || tp->puncture > static_cast<int>(pz.size()))
            throw GeometryError("tangential base point refers to puncture " + std::to_string(tp->puncture) +
                                " which does not exist");
        if (std::abs(tp->v) == 0.0) throw GeometryError("tangent vector must be nonzero");
    }

    const auto verts = spec.vertices();
    const double vscale = scale_of(verts);
    for (std::size_t k = 0; k + 1 < verts.size(); ++k)
        if (std::abs(verts[k + 1] - verts[k]) <= 1e-14 * vscale)
            throw GeometryError("consecutive vertices coincide at " + fmt_point(verts[k]));

    const Complex first_dir = (verts[1] - verts[0]) / spec.start.v;
    if (std::abs(std::arg(first_dir)) > cfg.tangent_tolerance)
        throw GeometryError("first segment does not leave the start puncture along its tangent vector");
    const Complex last_dir = (verts[verts.size() - 2] - verts.back()) / spec.end.v;
    if (std::abs(std::arg(last_dir)) > cfg.tangent_tolerance)
        throw GeometryError("last segment does not arrive at the end puncture along minus its tangent vector");

    const std::size_t nseg = verts.size() - 1;
    for (std::size_t k = 0; k < nseg; ++k) {
        const Complex p = verts[k], d = verts[k + 1] - verts[k];
        for (std::size_t m = 0; m < pz.size(); ++m) {
            const double a = closest_param(p, d, pz[m]);
            if (std::abs(p + a * d - pz[m]) > 1e-12 * vscale) continue;
            const int label = static_cast<int>(m) + 1;
            const bool at_start = k == 0 && label == spec.start.puncture && a == 0.0;
            const bool at_end = k + 1 == nseg && label == spec.end.puncture && a == 1.0;
            if (!at_start && !at_end)
                throw GeometryError("path meets puncture " + std::to_string(label) + " at an interior point");
        }
    }

    for (double ang : turning_angles(verts))
        if (std::abs(ang) >= kPi - 1e-12) throw GeometryError("path reverses direction at a vertex");
}

Complex log_velocity_integral(const PathSpec& spec) {
    validate(spec);
    double total = 0.0;
    for (double a : turning_angles(spec.vertices())) total += a;
    return {std::log(std::abs(spec.end.v) / std::abs(spec.start.v)), total};
}

double rotation_number(const PathSpec& spec) { return log_velocity_integral(spec).imag() / (2.0 * kPi); }

double vratio(const PathSpec& spec) { return std::exp(log_velocity_integral(spec).real()); }

std::size_t AnalyzedPath::segment_at(double t) const {
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    std::size_t k = it == breakpoints.begin() ? 0 : static_cast<std::size_t>(it - breakpoints.begin()) - 1;
    return std::min(k, segment_count() - 1);
}

Complex AnalyzedPath::position(double t) const {
    const std::size_t k = segment_at(t);
    const double a = (t - breakpoints[k]) / (breakpoints[k + 1] - breakpoints[k]);
    return vertices[k] + a * (vertices[k + 1] - vertices[k]);
}

Complex AnalyzedPath::velocity(std::size_t segment) const {
    return (vertices[segment + 1] - vertices[segment]) / (breakpoints[segment + 1] - breakpoints[segment]);
}

AnalyzedPath analyze(const PathSpec& spec, const GeometryConfig& cfg) {
    validate(spec, cfg);
    AnalyzedPath out;
    out.spec = spec;
    out.vertices = spec.vertices();
    const auto& V = out.vertices;
    const std::size_t nseg = V.size() - 1;

    std::vector<double> cum(V.size(), 0.0);
    for (std::size_t k = 0; k < nseg; ++k) cum[k + 1] = cum[k] + std::abs(V[k + 1] - V[k]);
    out.length = cum.back();
    out.breakpoints.resize(V.size());
    for (std::size_t k = 0; k < V.size(); ++k) out.breakpoints[k] = cum[k] / out.length;
    out.breakpoints.back() = 1.0;

    const Complex lv = log_velocity_integral(spec);
    out.rot = lv.imag() / (2.0 * kPi);
    out.vratio = std::exp(lv.real());

    constexpr double kVertexTol = 1e-9;
    for (std::size_t i = 0; i < nseg; ++i) {
        const Complex p = V[i], d1 = V[i + 1] - V[i];
        for (std::size_t j = i + 2; j < nseg; ++j) {
            const Complex q = V[j], d2 = V[j + 1] - V[j];
            const double den = cross(d1, d2);
            if (std::abs(den) <= 1e-12 * std::abs(d1) * std::abs(d2)) {
                if (std::abs(cross(q - p, d1)) > 1e-12 * std::abs(d1) * std::max(std::abs(q - p), 1e-300)) continue;
                const double a0 = dot(q - p, d1) / std::norm(d1);
                const double a1 = dot(q + d2 - p, d1) / std::norm(d1);
                if (std::max(std::min(a0, a1), 0.0) <= std::min(std::max(a0, a1), 1.0) + kVertexTol)
                    throw GeometryError("non-transverse self-intersection: overlapping collinear segments " +
                                        std::to_string(i) + " and " + std::to_string(j));
                continue;
            }
            const double a = cross(q - p, d2) / den;
            const double b = cross(q - p, d1) / den;
            if (a < -kVertexTol || a > 1 + kVertexTol || b < -kVertexTol || b > 1 + kVertexTol) continue;
            const bool path_ends_touch = i == 0 && j + 1 == nseg && a < kVertexTol && b > 1 - kVertexTol;
            if (path_ends_touch) continue;
            if (a < kVertexTol || a > 1 - kVertexTol || b < kVertexTol || b > 1 - kVertexTol)
                throw GeometryError("self-intersection at a polyline vertex near " + fmt_point(p + a * d1) +
                                    "; move the vertex off the other strand");

            Crossing c;
            c.segment_t = i;
            c.segment_s = j;
            c.t = out.breakpoints[i] + a * (out.breakpoints[i + 1] - out.breakpoints[i]);
            c.s = out.breakpoints[j] + b * (out.breakpoints[j + 1] - out.breakpoints[j]);
            c.position = p + a * d1;
            c.sign = den > 0 ? 1 : -1;
            const double slope = (c.s - 1.0) / c.t;
            c.u = out.velocity(j) * slope - out.velocity(i);
            c.theta = std::atan2(c.s - 1.0, c.t);
            if (c.t < cfg.min_param_separation || 1.0 - c.s < cfg.min_param_separation)
                throw GeometryError("self-intersection too close to a path endpoint (t=" + std::to_string(c.t) +
                                    ", s=" + std::to_string(c.s) + ")");
            out.crossings.push_back(c);
        }
    }
    std::sort(out.crossings.begin(), out.crossings.end(),
              [](const Crossing& x, const Crossing& y) { return x.theta < y.theta; });
    for (std::size_t k = 1; k < out.crossings.size(); ++k)
        if (out.crossings[k].theta - out.crossings[k - 1].theta < cfg.min_angle_separation)
            throw GeometryError(
                "perturbation required: two self-intersections lie on (nearly) the same ray from (t,s)=(0,1); "
                "perturb the path by a small regular homotopy, e.g. shift a waypoint near " +
                fmt_point(out.crossings[k].position));
    return out;
}

PathSpec compose(const PathSpec& first, const PathSpec& second, const CompositionConfig& cfg) {
    validate(first);
    validate(second);
    if (first.punctures != second.punctures) throw GeometryError("composed paths use different punctures");
    if (first.end.puncture != second.start.puncture)
        throw GeometryError("endpoint mismatch: first path ends where the second does not start");
    if (std::abs(first.end.v - second.start.v) > 1e-12 * std::abs(first.end.v))
        throw GeometryError("endpoint mismatch: tangent vectors at the shared puncture differ");
    if (cfg.arc_vertices < 2) throw ConfigError("half-turn needs at least two arc vertices");

    const Complex zj = first.end_point();
    const Complex vhat = first.end.v / std::abs(first.end.v);
    const auto v1 = first.vertices();
    const auto v2 = second.vertices();
    const double len1 = std::abs(v1[v1.size() - 2] - zj);
    const double len2 = std::abs(v2[1] - zj);
    double near = std::min(len1, len2);
    for (std::size_t m = 0; m < first.punctures.size(); ++m)
        if (static_cast<int>(m) + 1 != first.end.puncture) near = std::min(near, std::abs(first.punctures[m] - zj));
    const double r = cfg.turn_fraction * near;
    const double rho = 0.5 * r;

    PathSpec out;
    out.punctures = first.punctures;
    out.start = first.start;
    out.end = second.end;
    out.waypoints.assign(first.waypoints.begin(), first.waypoints.end());
    // Heading -vhat towards zj, turn right (clockwise) by pi around the centre.
    const Complex turn_start = zj + r * vhat;
    const Complex centre = turn_start + Complex(0.0, rho) * vhat;
    out.waypoints.push_back(turn_start);
    for (int k = 1; k <= cfg.arc_vertices; ++k) {
        const double phi = kPi * k / cfg.arc_vertices;
        out.waypoints.push_back(centre + (turn_start - centre) * std::polar(1.0, -phi));
    }
    // Rejoin the first segment of the second path before continuing along it.
    out.waypoints.push_back(zj + std::max(0.5 * len2, 2.0 * r) * vhat);
    out.waypoints.insert(out.waypoints.end(), second.waypoints.begin(), second.waypoints.end());
    validate(out);
    return out;
}

std::vector<Complex> sample(const AnalyzedPath& path, int count) {
    std::vector<Complex> pts;
    if (count < 2) count = 2;
    for (int k = 0; k < count; ++k) pts.push_back(path.position(static_cast<double>(k) / (count - 1)));
    return pts;
}

}  // namespace kzhol
