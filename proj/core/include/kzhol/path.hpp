#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace kzhol {

using Complex = std::complex<double>;

/// A puncture together with a nonzero tangent vector at it. `puncture` is
/// 1-based, matching the strand labels "1".."n".
struct TangentialPoint {
    int puncture = 1;
    Complex v{1.0, 0.0};
};

/// Piecewise-linear path z_i -> waypoints -> z_j between tangential base
/// points. The first segment leaves z_i along v_i and the last one arrives
/// at z_j along -v_j.
struct PathSpec {
    std::vector<Complex> punctures;
    TangentialPoint start;
    TangentialPoint end;
    std::vector<Complex> waypoints;

    Complex start_point() const { return punctures.at(start.puncture - 1); }
    Complex end_point() const { return punctures.at(end.puncture - 1); }
    std::vector<Complex> vertices() const;
};

struct GeometryConfig {
    /// Minimal distance of a crossing parameter from the path endpoints.
    double min_param_separation = 1e-3;
    /// Minimal angle between two lines L_l seen from the (t,s) = (0,1) corner.
    double min_angle_separation = 1e-3;
    /// Angular tolerance for end segments being aligned with the tangent vectors.
    double tangent_tolerance = 1e-9;
};

/// Transverse self-intersection gamma(t) = gamma(s) = position, t < s.
struct Crossing {
    double t = 0.0;
    double s = 0.0;
    Complex position;
    int sign = 0;  // sign Im(gamma'(s) / gamma'(t))
    Complex u;     // d/dt (gamma(sigma(t)) - gamma(t)) at t, sigma the L_l parameterization
    double theta = 0.0;  // atan2(s - 1, t)
    std::size_t segment_t = 0;
    std::size_t segment_s = 0;

    /// s-coordinate of the line L_l through (0,1) and (t,s).
    double line_s(double tau) const { return (s - 1.0) / t * tau + 1.0; }
};

/// Path with its constant-speed parameterization over [0,1], ordered
/// crossings, and the tangent data entering the pentagon identity.
struct AnalyzedPath {
    PathSpec spec;
    std::vector<Complex> vertices;
    std::vector<double> breakpoints;  // parameter value at each vertex
    double length = 0.0;
    std::vector<Crossing> crossings;  // ascending theta
    double rot = 0.0;
    double vratio = 1.0;  // |v_j / v_i|

    std::size_t segment_count() const { return vertices.size() - 1; }
    /// Segment containing parameter t; the right-hand segment at breakpoints.
    std::size_t segment_at(double t) const;
    Complex position(double t) const;
    Complex velocity(std::size_t segment) const;
};

/// Checks punctures, tangency of end segments, distinct consecutive
/// vertices, puncture avoidance, and that no vertex reverses direction.
/// Throws GeometryError.
void validate(const PathSpec& spec, const GeometryConfig& cfg = {});

AnalyzedPath analyze(const PathSpec& spec, const GeometryConfig& cfg = {});

/// Regularized integral of d log(gamma'): log|v_j/v_i| + 2 pi i rot.
Complex log_velocity_integral(const PathSpec& spec);
double rotation_number(const PathSpec& spec);
double vratio(const PathSpec& spec);

/// Signed exterior angles at interior vertices, each in (-pi, pi).
std::vector<double> turning_angles(const std::vector<Complex>& vertices);

struct CompositionConfig {
    int arc_vertices = 8;
    /// Distance from the shared puncture at which the half-turn starts,
    /// relative to the shortest adjacent segment / puncture distance.
    double turn_fraction = 0.2;
};

/// gamma2 after gamma1 with a clockwise half-turn near the shared marked
/// point, so that rot(composite) = rot(gamma1) + rot(gamma2) - 1/2.
/// The two strands near the junction run along the same ray, so composites
/// are suited to holonomy and rotation computations, not crossing analysis.
PathSpec compose(const PathSpec& first, const PathSpec& second, const CompositionConfig& cfg = {});

/// Polyline sampled at `count` equally spaced parameters, for plotting.
std::vector<Complex> sample(const AnalyzedPath& path, int count);

}  // namespace kzhol
