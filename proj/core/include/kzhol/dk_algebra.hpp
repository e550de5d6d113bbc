#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kzhol/series.hpp"

namespace kzhol {

/// Strand labels are "1".."n" for punctures plus the reserved "z" and "w".
using StrandLabel = std::string;

/// Label of the generator t_{a,b}, e.g. "t[1,z]".
std::string pair_label(const StrandLabel& a, const StrandLabel& b);

/// The Drinfeld-Kohno algebra t_m: generators t_{a,b} for unordered pairs of
/// strands, modulo [t_ab, t_cd] = 0 (disjoint pairs) and
/// [t_ab + t_ac, t_bc] = 0 (distinct a, b, c).
class DKAlgebra {
public:
    explicit DKAlgebra(std::vector<StrandLabel> strands);

    /// Strands 1..n followed by z and w.
    static DKAlgebra with_two_moving_points(int punctures);
    /// Strands 1..m.
    static DKAlgebra numbered(int strands);

    const std::vector<StrandLabel>& strands() const noexcept { return strands_; }
    const CataloguePtr& catalogue() const noexcept { return gens_; }

    /// Generator t_{a,b}; order of a and b is irrelevant.
    GeneratorId t(const StrandLabel& a, const StrandLabel& b) const;
    bool has_strand(const StrandLabel& s) const;

    /// Degree-2 relation elements, each stored in a series truncated at degree 2.
    const std::vector<Series>& relations() const noexcept { return relations_; }
    std::size_t disjoint_relation_count() const noexcept { return disjoint_count_; }
    std::size_t triple_relation_count() const noexcept { return relations_.size() - disjoint_count_; }

    /// Embeds a degree-1 combination sum_k t_{a_k, b_k} as a Series at degree D.
    Series element(int degree, const std::vector<std::pair<StrandLabel, StrandLabel>>& pairs) const;

private:
    std::vector<StrandLabel> strands_;
    CataloguePtr gens_;
    std::vector<Series> relations_;
    std::size_t disjoint_count_ = 0;
};

/// Row-reduced basis of the two-sided ideal generated by the relations, one
/// block per degree. Reduction against it gives a canonical representative
/// of a class in the quotient U(t_m) up to the truncation degree.
class IdealBasis {
public:
    struct Level {
        std::size_t columns = 0;
        std::vector<std::size_t> pivots;       // pivot word index per row
        std::vector<std::vector<double>> rows;  // dense rows, pivot entry 1, zero on other pivots
    };

    IdealBasis() = default;
    IdealBasis(CataloguePtr gens, int degree, double tolerance, std::vector<Level> levels)
        : gens_(std::move(gens)), degree_(degree), tolerance_(tolerance), levels_(std::move(levels)) {}

    const CataloguePtr& catalogue() const noexcept { return gens_; }
    int degree() const noexcept { return degree_; }
    double tolerance() const noexcept { return tolerance_; }
    const Level& level(int d) const { return levels_.at(d); }

    std::size_t rank(int d) const { return levels_.at(d).rows.size(); }
    /// dim of degree-d part of the quotient.
    std::size_t quotient_dimension(int d) const { return levels_.at(d).columns - rank(d); }

    void save(const std::filesystem::path& file) const;
    static IdealBasis load(const std::filesystem::path& file);

private:
    CataloguePtr gens_;
    int degree_ = 0;
    double tolerance_ = 0.0;
    std::vector<Level> levels_;
};

IdealBasis ideal_basis(const DKAlgebra& alg, int degree, double pivot_tolerance = 1e-10);

/// Loads the cached basis for (strand count, D, tolerance) from `cache_dir`
/// when present, otherwise builds and stores it. An empty dir disables caching.
IdealBasis cached_ideal_basis(const DKAlgebra& alg, int degree, const std::filesystem::path& cache_dir,
                              double pivot_tolerance = 1e-10);

/// Canonical representative modulo the ideal.
Series reduce(const Series& g, const IdealBasis& basis);

/// Generator maps from the free algebra on {t_{k,z}} into t_{n+2}.
/// i is the start puncture, j the end puncture (1-based).
LinearSubstitution substitution_Hz(const DKAlgebra& alg, CataloguePtr source, int n, int i, int j);
LinearSubstitution substitution_Hw(const DKAlgebra& alg, CataloguePtr source, int n, int i, int j);
LinearSubstitution substitution_Hzw(const DKAlgebra& alg, CataloguePtr source, int n);

/// Catalogue of the free algebra on t_{1,z}..t_{n,z}.
CataloguePtr one_point_catalogue(int n);

/// Target of the projection killing t_{z,w}: generators t_{k,z} then t_{k,w}.
CataloguePtr tau_catalogue(int n);

/// Rewrites a series over tau_catalogue into the form where every word lists
/// its z-letters before its w-letters (the two blocks commute).
Series canonicalize_tau(const Series& g);

/// Quotient by the ideal generated by t_{z,w}. Throws ConfigError if a
/// puncture-puncture generator carries a nonzero coefficient.
Series projection_pi(const Series& g, const DKAlgebra& alg);

}  // namespace kzhol
