#include "kzhol/dk_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "kzhol/error.hpp"

namespace kzhol {

std::string pair_label(const StrandLabel& a, const StrandLabel& b) { return "t[" + a + "," + b + "]"; }

namespace {

std::size_t ipow(std::size_t base, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// [x, y] for degree-1 elements x, y given as coefficient vectors, written into
// a degree-2 series.
Series bracket_linear(const CataloguePtr& gens, const std::vector<std::pair<GeneratorId, double>>& x,
                      const std::vector<std::pair<GeneratorId, double>>& y) {
    Series r(gens, 2);
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) {
            const GeneratorId ab[2] = {a, b};
            const GeneratorId ba[2] = {b, a};
            r.add_coeff(ab, ca * cb);
            r.add_coeff(ba, -ca * cb);
        }
    return r;
}

}  // namespace

DKAlgebra::DKAlgebra(std::vector<StrandLabel> strands) : strands_(std::move(strands)) {
    if (strands_.size() < 2) throw ConfigError("Drinfeld-Kohno algebra needs at least two strands");
    std::set<StrandLabel> seen;
    for (const auto& s : strands_) {
        if (s.empty()) throw ConfigError("empty strand label");
        if (!seen.insert(s).second) throw ConfigError("duplicate strand label '" + s + "'");
    }
    std::vector<std::string> labels;
    const std::size_t m = strands_.size();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) labels.push_back(pair_label(strands_[a], strands_[b]));
    gens_ = make_catalogue(std::move(labels));

    // Disjoint pairs {a,b}, {c,d}: each unordered pair of pairs once.
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            for (std::size_t c = a + 1; c < m; ++c)
                for (std::size_t d = c + 1; d < m; ++d) {
                    if (c == b || d == b) continue;
                    const auto x = t(strands_[a], strands_[b]);
                    const auto y = t(strands_[c], strands_[d]);
                    relations_.push_back(bracket_linear(gens_, {{x, 1.0}}, {{y, 1.0}}));
                }
    disjoint_count_ = relations_.size();

    // [t_ab + t_ac, t_bc] for every apex a and unordered pair {b, c} not containing a.
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t c = b + 1; c < m; ++c) {
                if (a == b || a == c) continue;
                const auto ab = t(strands_[a], strands_[b]);
                const auto ac = t(strands_[a], strands_[c]);
                const auto bc = t(strands_[b], strands_[c]);
                relations_.push_back(bracket_linear(gens_, {{ab, 1.0}, {ac, 1.0}}, {{bc, 1.0}}));
            }
}

DKAlgebra DKAlgebra::with_two_moving_points(int punctures) {
    if (punctures < 1) throw ConfigError("need at least one puncture");
    std::vector<StrandLabel> s;
    for (int k = 1; k <= punctures; ++k) s.push_back(std::to_string(k));
    s.push_back("z");
    s.push_back("w");
    return DKAlgebra(std::move(s));
}

DKAlgebra DKAlgebra::numbered(int strands) {
    std::vector<StrandLabel> s;
    for (int k = 1; k <= strands; ++k) s.push_back(std::to_string(k));
    return DKAlgebra(std::move(s));
}

bool DKAlgebra::has_strand(const StrandLabel& s) const {
    return std::find(strands_.begin(), strands_.end(), s) != strands_.end();
}

GeneratorId DKAlgebra::t(const StrandLabel& a, const StrandLabel& b) const {
    if (a == b) throw ConfigError("t_{a,a} is not a generator");
    if (auto id = gens_->find(pair_label(a, b))) return *id;
    if (auto id = gens_->find(pair_label(b, a))) return *id;
    throw ConfigError("no generator t[" + a + "," + b + "] in this algebra");
}

Series DKAlgebra::element(int degree, const std::vector<std::pair<StrandLabel, StrandLabel>>& pairs) const {
    Series s(gens_, degree);
    if (degree < 1) return s;
    for (const auto& [a, b] : pairs) s.part(1)[t(a, b)] += 1.0;
    return s;
}

IdealBasis ideal_basis(const DKAlgebra& alg, int degree, double pivot_tolerance) {
    if (degree < 0) throw ConfigError("ideal basis degree must be >= 0");
    const auto& gens = alg.catalogue();
    const std::size_t G = gens->size();

    // Sparse (index, coefficient) form of each relation's degree-2 block.
    std::vector<std::vector<std::pair<std::size_t, double>>> rels;
    for (const auto& r : alg.relations()) {
        std::vector<std::pair<std::size_t, double>> sparse;
        const auto block = r.part(2);
        for (std::size_t i = 0; i < block.size(); ++i)
            if (block[i] != Complex{}) sparse.emplace_back(i, block[i].real());
        rels.push_back(std::move(sparse));
    }

    std::vector<IdealBasis::Level> levels(static_cast<std::size_t>(degree) + 1);
    for (int d = 0; d <= degree; ++d) {
        auto& lvl = levels[d];
        lvl.columns = ipow(G, d);
        if (d < 2) continue;

        std::vector<std::vector<double>>& rows = lvl.rows;
        std::vector<std::size_t>& pivots = lvl.pivots;
        std::vector<double> v(lvl.columns);

        for (const auto& rel : rels) {
            for (int left = 0; left <= d - 2; ++left) {
                const int right = d - 2 - left;
                const std::size_t nl = ipow(G, left), nr = ipow(G, right);
                for (std::size_t wl = 0; wl < nl; ++wl)
                    for (std::size_t wr = 0; wr < nr; ++wr) {
                        std::fill(v.begin(), v.end(), 0.0);
                        for (const auto& [ri, c] : rel) v[(wl * G * G + ri) * nr + wr] = c;
                        // Forward reduction: row k vanishes on the pivots of rows < k.
                        for (std::size_t k = 0; k < rows.size(); ++k) {
                            const double f = v[pivots[k]];
                            if (f == 0.0) continue;
                            const double* rk = rows[k].data();
                            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * rk[i];
                        }
                        std::size_t p = 0;
                        double best = 0.0;
                        for (std::size_t i = 0; i < v.size(); ++i)
                            if (std::abs(v[i]) > best) {
                                best = std::abs(v[i]);
                                p = i;
                            }
                        if (best <= pivot_tolerance) continue;
                        const double inv = 1.0 / v[p];
                        for (double& x : v) x *= inv;
                        v[p] = 1.0;
                        rows.push_back(v);
                        pivots.push_back(p);
                    }
            }
        }
        // Back substitution to reduced echelon form.
        for (std::size_t k = rows.size(); k-- > 0;) {
            const double* rk = rows[k].data();
            for (std::size_t j = 0; j < k; ++j) {
                const double f = rows[j][pivots[k]];
                if (f == 0.0) continue;
                double* rj = rows[j].data();
                for (std::size_t i = 0; i < lvl.columns; ++i) rj[i] -= f * rk[i];
                rj[pivots[k]] = 0.0;
            }
        }
        for (auto& row : rows)
            for (double& x : row)
                if (std::abs(x) < 1e-15) x = 0.0;
    }
    return IdealBasis(gens, degree, pivot_tolerance, std::move(levels));
}

Series reduce(const Series& g, const IdealBasis& basis) {
    if (!same_catalogue(g.catalogue(), basis.catalogue()))
        throw ConfigError("reduce: series and ideal basis use different catalogues");
    if (g.degree() > basis.degree()) throw ConfigError("reduce: ideal basis built for a lower degree");
    Series out = g;
    for (int d = 2; d <= g.degree(); ++d) {
        const auto& lvl = basis.level(d);
        auto block = out.part(d);
        for (std::size_t k = 0; k < lvl.rows.size(); ++k) {
            const Complex f = block[lvl.pivots[k]];
            if (f == Complex{}) continue;
            const double* row = lvl.rows[k].data();
            for (std::size_t i = 0; i < block.size(); ++i)
                if (row[i] != 0.0) block[i] -= f * row[i];
            block[lvl.pivots[k]] = 0.0;
        }
    }
    return out;
}

namespace {

constexpr char kIdealMagic[8] = {'K', 'Z', 'H', 'I', 'D', 'L', '0', '1'};

template <class T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw IoError("truncated ideal-basis cache file");
    return v;
}

}  // namespace

void IdealBasis::save(const std::filesystem::path& file) const {
    std::ofstream os(file, std::ios::binary);
    if (!os) throw IoError("cannot write ideal-basis cache " + file.string());
    os.write(kIdealMagic, sizeof kIdealMagic);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(gens_->size()));
    for (const auto& l : gens_->labels()) {
        put<std::uint32_t>(os, static_cast<std::uint32_t>(l.size()));
        os.write(l.data(), static_cast<std::streamsize>(l.size()));
    }
    put<std::int32_t>(os, degree_);
    put<double>(os, tolerance_);
    for (const auto& lvl : levels_) {
        put<std::uint64_t>(os, lvl.columns);
        put<std::uint64_t>(os, lvl.rows.size());
        for (std::size_t k = 0; k < lvl.rows.size(); ++k) {
            put<std::uint64_t>(os, lvl.pivots[k]);
            os.write(reinterpret_cast<const char*>(lvl.rows[k].data()),
                     static_cast<std::streamsize>(lvl.columns * sizeof(double)));
        }
    }
    if (!os) throw IoError("failed writing ideal-basis cache " + file.string());
}

IdealBasis IdealBasis::load(const std::filesystem::path& file) {
    std::ifstream is(file, std::ios::binary);
    if (!is) throw IoError("cannot open ideal-basis cache " + file.string());
    char magic[8];
    is.read(magic, sizeof magic);
    if (!is || std::memcmp(magic, kIdealMagic, sizeof magic) != 0)
        throw IoError("not an ideal-basis cache file: " + file.string());
    const auto g = get<std::uint32_t>(is);
    std::vector<std::string> labels(g);
    for (auto& l : labels) {
        const auto len = get<std::uint32_t>(is);
        l.resize(len);
        is.read(l.data(), len);
    }
    const auto degree = get<std::int32_t>(is);
    const auto tol = get<double>(is);
    if (degree < 0 || degree > 16) throw IoError("corrupt ideal-basis cache (degree)");
    std::vector<Level> levels(static_cast<std::size_t>(degree) + 1);
    for (auto& lvl : levels) {
        lvl.columns = get<std::uint64_t>(is);
        const auto rank = get<std::uint64_t>(is);
        if (rank > lvl.columns) throw IoError("corrupt ideal-basis cache (rank)");
        lvl.rows.resize(rank);
        lvl.pivots.resize(rank);
        for (std::size_t k = 0; k < rank; ++k) {
            lvl.pivots[k] = get<std::uint64_t>(is);
            lvl.rows[k].resize(lvl.columns);
            is.read(reinterpret_cast<char*>(lvl.rows[k].data()),
                    static_cast<std::streamsize>(lvl.columns * sizeof(double)));
            if (!is) throw IoError("truncated ideal-basis cache file");
        }
    }
    return IdealBasis(make_catalogue(std::move(labels)), degree, tol, std::move(levels));
}

IdealBasis cached_ideal_basis(const DKAlgebra& alg, int degree, const std::filesystem::path& cache_dir,
                              double pivot_tolerance) {
    if (cache_dir.empty()) return ideal_basis(alg, degree, pivot_tolerance);
    std::ostringstream name;
    name << "ideal_m" << alg.strands().size() << "_D" << degree << "_tol" << pivot_tolerance << ".bin";
    const auto file = cache_dir / name.str();
    if (std::filesystem::exists(file)) {
        IdealBasis b = IdealBasis::load(file);
        if (*b.catalogue() != *alg.catalogue() || b.degree() != degree)
            throw IoError("ideal-basis cache " + file.string() + " does not match the requested algebra");
        // Rebind to the caller's catalogue so reduce() accepts its series.
        std::vector<IdealBasis::Level> levels;
        for (int d = 0; d <= degree; ++d) levels.push_back(b.level(d));
        return IdealBasis(alg.catalogue(), degree, b.tolerance(), std::move(levels));
    }
    IdealBasis b = ideal_basis(alg, degree, pivot_tolerance);
    std::filesystem::create_directories(cache_dir);
    b.save(file);
    return b;
}

CataloguePtr one_point_catalogue(int n) {
    std::vector<std::string> labels;
    for (int k = 1; k <= n; ++k) labels.push_back(pair_label(std::to_string(k), "z"));
    return make_catalogue(std::move(labels));
}

CataloguePtr tau_catalogue(int n) {
    std::vector<std::string> labels;
    for (int k = 1; k <= n; ++k) labels.push_back(pair_label(std::to_string(k), "z"));
    for (int k = 1; k <= n; ++k) labels.push_back(pair_label(std::to_string(k), "w"));
    return make_catalogue(std::move(labels));
}

namespace {

void check_indices(const DKAlgebra& alg, const CataloguePtr& source, int n, std::initializer_list<int> idx) {
    if (static_cast<int>(source->size()) != n) throw ConfigError("source catalogue must have n generators");
    if (!alg.has_strand("z") || !alg.has_strand("w")) throw ConfigError("target algebra lacks strands z, w");
    for (int k : idx)
        if (k < 1 || k > n) throw ConfigError("puncture index out of range");
}

}  // namespace

LinearSubstitution substitution_Hz(const DKAlgebra& alg, CataloguePtr source, int n, int i, int j) {
    check_indices(alg, source, n, {i, j});
    if (i == j) throw ConfigError("substitution_Hz needs distinct start and end punctures");
    LinearSubstitution phi{source, alg.catalogue(), {}};
    phi.images.resize(n);
    for (int k = 1; k <= n; ++k) {
        const auto ks = std::to_string(k);
        phi.images[k - 1] = {{alg.t(ks, "z"), 1.0}};
        if (k == j) phi.images[k - 1].emplace_back(alg.t("z", "w"), 1.0);
    }
    return phi;
}

LinearSubstitution substitution_Hw(const DKAlgebra& alg, CataloguePtr source, int n, int i, int j) {
    check_indices(alg, source, n, {i, j});
    if (i == j) throw ConfigError("substitution_Hw needs distinct start and end punctures");
    LinearSubstitution phi{source, alg.catalogue(), {}};
    phi.images.resize(n);
    for (int k = 1; k <= n; ++k) {
        const auto ks = std::to_string(k);
        phi.images[k - 1] = {{alg.t(ks, "w"), 1.0}};
        if (k == i) phi.images[k - 1].emplace_back(alg.t("z", "w"), 1.0);
    }
    return phi;
}

LinearSubstitution substitution_Hzw(const DKAlgebra& alg, CataloguePtr source, int n) {
    check_indices(alg, source, n, {});
    LinearSubstitution phi{source, alg.catalogue(), {}};
    phi.images.resize(n);
    for (int k = 1; k <= n; ++k) {
        const auto ks = std::to_string(k);
        phi.images[k - 1] = {{alg.t(ks, "z"), 1.0}, {alg.t(ks, "w"), 1.0}};
    }
    return phi;
}

Series canonicalize_tau(const Series& g) {
    const std::size_t G = g.generator_count();
    if (G % 2 != 0) throw ConfigError("not a tau catalogue");
    const GeneratorId n = static_cast<GeneratorId>(G / 2);
    Series out(g.catalogue(), g.degree());
    g.for_each_term([&](const Word& w, Complex c) {
        Word sorted = w;
        std::stable_partition(sorted.begin(), sorted.end(), [n](GeneratorId x) { return x < n; });
        out.add_coeff(sorted, c);
    });
    return out;
}

Series projection_pi(const Series& g, const DKAlgebra& alg) {
    if (!same_catalogue(g.catalogue(), alg.catalogue())) throw ConfigError("projection_pi: catalogue mismatch");
    const auto& strands = alg.strands();
    if (strands.size() < 3 || strands[strands.size() - 2] != "z" || strands.back() != "w")
        throw ConfigError("projection_pi needs an algebra with strands 1..n, z, w");
    const int n = static_cast<int>(strands.size()) - 2;
    auto tau = tau_catalogue(n);

    constexpr int kKill = -1, kInvalid = -2;
    std::vector<int> image(g.generator_count(), kInvalid);
    image[alg.t("z", "w")] = kKill;
    for (int k = 1; k <= n; ++k) {
        image[alg.t(std::to_string(k), "z")] = k - 1;
        image[alg.t(std::to_string(k), "w")] = n + k - 1;
    }

    Series out(tau, g.degree());
    Word mapped;
    g.for_each_term([&](const Word& w, Complex c) {
        mapped.clear();
        bool killed = false;
        for (GeneratorId x : w) {
            if (image[x] == kInvalid)
                throw ConfigError("projection_pi: puncture-puncture generator " + g.catalogue()->label(x) +
                                  " in input");
            if (image[x] == kKill) killed = true;
            mapped.push_back(static_cast<GeneratorId>(std::max(image[x], 0)));
        }
        if (killed) return;
        std::stable_partition(mapped.begin(), mapped.end(), [n](GeneratorId x) { return x < n; });
        out.add_coeff(mapped, c);
    });
    return out;
}

}  // namespace kzhol
