#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kzhol/algebra_ops.hpp"
#include "kzhol/associator.hpp"
#include "kzhol/dk_algebra.hpp"
#include "kzhol/holonomy.hpp"
#include "kzhol/json_io.hpp"
#include "kzhol/matrix_rep.hpp"
#include "kzhol/pairline.hpp"
#include "kzhol/path.hpp"

namespace kzhol {

enum class CrossingOrder { telescoping, as_written };
enum class VratioExponent { two_pi_i, two_pi };

struct VerifyConfig {
    EngineConfig engine;
    double tolerance = 1e-6;
    /// Debug switches dropping one factor of the left-hand side.
    bool omit_rotation = false;
    bool omit_vratio = false;
    CrossingOrder order = CrossingOrder::telescoping;
    VratioExponent vratio_exponent = VratioExponent::two_pi_i;
    std::filesystem::path cache_dir;
};

/// Every factor of both sides, in one backend.
template <class Ops>
struct PentagonFactors {
    using Elem = typename Ops::Elem;
    Elem phi_left;   // Phi(t_zw, t_wj)
    Elem h_zw;
    Elem vratio;     // |v_j/v_i|^{t_zw / 2 pi i}
    Elem rotation;   // exp(rot t_zw)
    Elem phi_right;  // Phi(t_iz, t_zw)
    Elem h_z;
    Elem h_w;
    std::vector<Elem> C;
    std::vector<Elem> crossing;  // C_l^{-1} exp(-eps_l t_zw) C_l
};

/// Returns {LHS, RHS}. With telescoping order the factor of the last crossing is leftmost.
template <class Ops>
std::pair<typename Ops::Elem, typename Ops::Elem> assemble(const Ops& ops, const PentagonFactors<Ops>& f,
                                                           const VerifyConfig& cfg, CrossingOrder order) {
    auto lhs = f.phi_left;
    lhs = ops.mul(lhs, f.h_zw);
    if (!cfg.omit_vratio) lhs = ops.mul(lhs, f.vratio);
    if (!cfg.omit_rotation) lhs = ops.mul(lhs, f.rotation);
    lhs = ops.mul(lhs, f.phi_right);

    auto rhs = f.h_z;
    const std::size_t m = f.crossing.size();
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t l = order == CrossingOrder::telescoping ? m - 1 - k : k;
        rhs = ops.mul(rhs, f.crossing[l]);
    }
    rhs = ops.mul(rhs, f.h_w);
    return {std::move(lhs), std::move(rhs)};
}

/// Coefficient of t_zw in the vratio factor.
Complex vratio_coefficient(double vratio, VratioExponent e);

struct PentagonReport {
    int degree = 0;
    double tolerance = 0.0;
    bool pass = false;
    std::vector<double> residuals;            // per degree, after reduction
    std::vector<double> alternate_residuals;  // other crossing order
    std::map<std::string, double> grouplike_defects;
    std::vector<double> projection;  // per crossing
    std::map<std::string, double> timings;
    double rot = 0.0;
    double vratio = 1.0;
    std::vector<int> signs;
    VerifyConfig config;
    std::optional<Series> holonomy;  // H over t[k,z]
    std::optional<Series> phi;       // over {A, B}
    std::vector<Series> C;
    std::optional<Series> lhs;
    std::optional<Series> rhs;
};

PentagonFactors<SeriesOps> series_factors(const DKAlgebra& alg, const AnalyzedPath& path, const Series& H,
                                          const AssociatorTable& table, const VerifyConfig& cfg);

PentagonFactors<MatrixOps> matrix_factors(const MatrixRep& rep, const AnalyzedPath& path, const VerifyConfig& cfg,
                                          Complex scale = 1.0);

PentagonReport verify_pentagon(const PathSpec& spec, const VerifyConfig& cfg);

struct MatrixReport {
    int local_dim = 0;
    int dim = 0;
    double residual = 0.0;  // spectral norm of LHS - RHS
    double alternate_residual = 0.0;
    double lhs_norm = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double relation_defect = 0.0;  // max norm of rho(relation)
    double seconds = 0.0;
};

MatrixReport verify_pentagon_matrix(const PathSpec& spec, int local_dim, const VerifyConfig& cfg);

/// max |pi(C_l) - Hol_z(gamma[0,t_l]) Hol_w(gamma[1,s_l])| for every crossing.
std::vector<double> verify_projection_Cl(const PathSpec& spec, const EngineConfig& cfg);

/// Degree-by-degree comparison of the series factors pushed through rho with
/// Taylor coefficients of the matrix factors in a generator scale h, extracted
/// by a discrete Fourier transform over `samples` points on |h| = radius.
/// Returns max over factors of the spectral-norm difference, per degree.
std::vector<double> cross_backend_deviation(const PathSpec& spec, int local_dim, const VerifyConfig& cfg,
                                            int samples = 16, double radius = 0.25);

Json report_to_json(const PentagonReport& r);
Json report_to_json(const MatrixReport& r);
Json verify_config_to_json(const VerifyConfig& cfg);

}  // namespace kzhol
