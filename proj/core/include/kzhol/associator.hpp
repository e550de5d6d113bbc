#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "kzhol/engine.hpp"
#include "kzhol/holonomy.hpp"
#include "kzhol/json_io.hpp"
#include "kzhol/series.hpp"

namespace kzhol {

/// Catalogue {A, B} of the universal associator.
CataloguePtr associator_catalogue();

/// Punctures {0, 1}, straight path from (0, v = 1) to (1, v = -1).
PathSpec associator_path();

struct AssociatorTable {
    Series phi;  // over associator_catalogue()
    EngineConfig config;
    std::string config_hash;
    double grouplike_defect = 0.0;
    double degree_one_max = 0.0;
};

/// Stable hash of the engine settings that influence coefficients (degree excluded).
std::string config_hash(const EngineConfig& cfg);

AssociatorTable compute_associator(const EngineConfig& cfg);

/// Associator in any backend: regularized holonomy with X_1 = A, X_2 = B.
template <class Ops>
typename Ops::Elem associator_value(const Ops& ops, const typename Ops::Elem& A, const typename Ops::Elem& B,
                                    const EngineConfig& cfg) {
    const auto path = associator_path();
    PointConnection<Ops> conn{path.punctures, {A, B}};
    return hol_reg(ops, conn, Leg::from_path(path), cfg);
}

using LinearImage = std::vector<std::pair<GeneratorId, Complex>>;

/// Phi(A -> imageA, B -> imageB) over `target`, truncated at `degree` (<= table degree).
Series phi_at(const AssociatorTable& table, const CataloguePtr& target, const LinearImage& imageA,
              const LinearImage& imageB, int degree = -1);
Series phi_at(const AssociatorTable& table, const CataloguePtr& target, GeneratorId genA, GeneratorId genB,
              int degree = -1);

Json associator_to_json(const AssociatorTable& table);
void save_associator(const AssociatorTable& table, const std::filesystem::path& file);
/// Loads and checks invariants; truncates to `degree` when lower, throws IoError when higher.
AssociatorTable load_associator(const std::filesystem::path& file, int degree);

/// Cached table for cfg in `cache_dir` (computed and stored when absent). Empty dir: no cache.
AssociatorTable cached_associator(const EngineConfig& cfg, const std::filesystem::path& cache_dir);

/// Max coefficient of the Drinfeld pentagon defect in t_4 after reduction, per degree.
std::vector<double> associator_pentagon_residuals(const AssociatorTable& table, int degree,
                                                  const std::filesystem::path& cache_dir = {});

}  // namespace kzhol
