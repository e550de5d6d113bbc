#include "kzhol/series.hpp"

#include <algorithm>
#include <cmath>

#include "kzhol/error.hpp"

namespace kzhol {

std::string_view to_string(ErrorCategory c) noexcept {
    switch (c) {
        case ErrorCategory::config: return "config";
        case ErrorCategory::geometry: return "geometry";
        case ErrorCategory::numerics: return "numerics";
        case ErrorCategory::io: return "io";
    }
    return "unknown";
}

GeneratorCatalogue::GeneratorCatalogue(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.size() > 0xFFFF) throw ConfigError("too many generators");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (!index_.emplace(labels_[i], static_cast<GeneratorId>(i)).second)
            throw ConfigError("duplicate generator label '" + labels_[i] + "'");
    }
}

std::optional<GeneratorId> GeneratorCatalogue::find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

GeneratorId GeneratorCatalogue::at(std::string_view label) const {
    if (auto id = find(label)) return *id;
    throw ConfigError("unknown generator '" + std::string(label) + "'");
}

CataloguePtr make_catalogue(std::vector<std::string> labels) {
    return std::make_shared<const GeneratorCatalogue>(std::move(labels));
}

bool same_catalogue(const CataloguePtr& a, const CataloguePtr& b) {
    return a == b || (a && b && *a == *b);
}

std::size_t word_index(std::span<const GeneratorId> word, std::size_t generator_count) {
    std::size_t idx = 0;
    for (GeneratorId g : word) {
        if (g >= generator_count) throw ConfigError("generator id out of range");
        idx = idx * generator_count + g;
    }
    return idx;
}

Word word_at(std::size_t index, int degree, std::size_t generator_count) {
    Word w(static_cast<std::size_t>(degree));
    for (int k = degree - 1; k >= 0; --k) {
        w[k] = static_cast<GeneratorId>(index % generator_count);
        index /= generator_count;
    }
    return w;
}

namespace {

std::size_t ipow(std::size_t base, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

bool all_zero(std::span<const Complex> block) {
    return std::all_of(block.begin(), block.end(), [](Complex c) { return c == Complex{}; });
}

}  // namespace

Series::Series(CataloguePtr gens, int degree) : gens_(std::move(gens)), degree_(degree) {
    if (!gens_) throw ConfigError("series needs a generator catalogue");
    if (degree_ < 0) throw ConfigError("truncation degree must be >= 0");
    parts_.resize(static_cast<std::size_t>(degree_) + 1);
    const std::size_t g = gens_->size();
    for (int d = 0; d <= degree_; ++d) {
        const std::size_t n = g == 0 && d > 0 ? 0 : ipow(g, d);
        parts_[d].assign(n, Complex{});
    }
}

Series Series::one(CataloguePtr gens, int degree) {
    Series s(std::move(gens), degree);
    s.parts_[0][0] = 1.0;
    return s;
}

Series Series::generator(CataloguePtr gens, int degree, GeneratorId id) {
    Series s(std::move(gens), degree);
    if (id >= s.generator_count()) throw ConfigError("generator id out of range");
    if (degree >= 1) s.parts_[1][id] = 1.0;
    return s;
}

Series Series::linear(CataloguePtr gens, int degree, std::span<const std::pair<GeneratorId, Complex>> terms) {
    Series s(std::move(gens), degree);
    for (const auto& [id, c] : terms) {
        if (id >= s.generator_count()) throw ConfigError("generator id out of range");
        if (degree >= 1) s.parts_[1][id] += c;
    }
    return s;
}

Complex Series::coeff(std::span<const GeneratorId> word) const {
    const int d = static_cast<int>(word.size());
    if (d > degree_) return {};
    return parts_[d][word_index(word, generator_count())];
}

void Series::set_coeff(std::span<const GeneratorId> word, Complex value) {
    const int d = static_cast<int>(word.size());
    if (d > degree_) throw ConfigError("word exceeds truncation degree");
    parts_[d][word_index(word, generator_count())] = value;
}

void Series::add_coeff(std::span<const GeneratorId> word, Complex value) {
    const int d = static_cast<int>(word.size());
    if (d > degree_) return;
    parts_[d][word_index(word, generator_count())] += value;
}

double Series::max_abs() const {
    double m = 0.0;
    for (int d = 0; d <= degree_; ++d) m = std::max(m, max_abs(d));
    return m;
}

double Series::max_abs(int d) const {
    double m = 0.0;
    for (Complex c : parts_.at(d)) m = std::max(m, std::abs(c));
    return m;
}

Series Series::truncated(int d) const {
    if (d > degree_) throw ConfigError("cannot raise truncation degree by truncating");
    Series s(gens_, d);
    for (int k = 0; k <= d; ++k) s.parts_[k] = parts_[k];
    return s;
}

void Series::require_compatible(const Series& other) const {
    if (degree_ != other.degree_) throw ConfigError("truncation degree mismatch");
    if (!same_catalogue(gens_, other.gens_)) throw ConfigError("generator catalogue mismatch");
}

Series& Series::operator+=(const Series& rhs) {
    require_compatible(rhs);
    for (int d = 0; d <= degree_; ++d) {
        auto& a = parts_[d];
        const auto& b = rhs.parts_[d];
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    }
    return *this;
}

Series& Series::operator-=(const Series& rhs) {
    require_compatible(rhs);
    for (int d = 0; d <= degree_; ++d) {
        auto& a = parts_[d];
        const auto& b = rhs.parts_[d];
        for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    }
    return *this;
}

Series& Series::operator*=(Complex s) {
    for (auto& block : parts_)
        for (auto& c : block) c *= s;
    return *this;
}

Series operator*(const Series& a, const Series& b) {
    a.require_compatible(b);
    Series out(a.gens_, a.degree_);
    for (int da = 0; da <= a.degree_; ++da) {
        const auto& pa = a.parts_[da];
        if (all_zero(pa)) continue;
        for (int db = 0; da + db <= a.degree_; ++db) {
            const auto& pb = b.parts_[db];
            auto& po = out.parts_[da + db];
            const std::size_t nb = pb.size();
            for (std::size_t i = 0; i < pa.size(); ++i) {
                const Complex ca = pa[i];
                if (ca == Complex{}) continue;
                Complex* dst = po.data() + i * nb;
                for (std::size_t j = 0; j < nb; ++j) dst[j] += ca * pb[j];
            }
        }
    }
    return out;
}

Series exp(const Series& x) {
    if (x.constant() != Complex{}) throw ConfigError("exp needs a series without constant term");
    Series result = Series::one(x.catalogue(), x.degree());
    Series term = result;
    for (int k = 1; k <= x.degree(); ++k) {
        term = term * x;
        term *= 1.0 / k;
        result += term;
    }
    return result;
}

Series log(const Series& g) {
    if (std::abs(g.constant() - 1.0) > 1e-12) throw ConfigError("log needs constant term 1");
    Series x = g;
    x.part(0)[0] = 0.0;
    Series result = Series::zero(g.catalogue(), g.degree());
    Series power = x;
    for (int k = 1; k <= g.degree(); ++k) {
        result += power * Complex((k % 2 == 1 ? 1.0 : -1.0) / k);
        power = power * x;
    }
    return result;
}

Series inverse(const Series& g) {
    const Complex c = g.constant();
    if (c == Complex{}) throw ConfigError("inverse needs an invertible constant term");
    // g = c (1 + x)  =>  g^{-1} = c^{-1} sum (-x)^k
    Series x = g * (1.0 / c);
    x.part(0)[0] = 0.0;
    Series result = Series::one(g.catalogue(), g.degree());
    Series power = result;
    for (int k = 1; k <= g.degree(); ++k) {
        power = power * x;
        power *= -1.0;
        result += power;
    }
    return result * (1.0 / c);
}

Series commutator(const Series& a, const Series& b) { return a * b - b * a; }

TensorSquareSeries::TensorSquareSeries(CataloguePtr gens, int degree) : gens_(std::move(gens)), degree_(degree) {
    const std::size_t g = gens_->size();
    blocks_.resize(static_cast<std::size_t>(degree_) + 1);
    for (int l = 0; l <= degree_; ++l) {
        blocks_[l].resize(static_cast<std::size_t>(degree_ - l) + 1);
        for (int r = 0; l + r <= degree_; ++r) blocks_[l][r].assign(ipow(g, l) * ipow(g, r), Complex{});
    }
}

Complex TensorSquareSeries::coeff(std::span<const GeneratorId> left, std::span<const GeneratorId> right) const {
    const int l = static_cast<int>(left.size());
    const int r = static_cast<int>(right.size());
    if (l + r > degree_) return {};
    const std::size_t g = generator_count();
    return blocks_[l][r][word_index(left, g) * ipow(g, r) + word_index(right, g)];
}

TensorSquareSeries& TensorSquareSeries::operator-=(const TensorSquareSeries& rhs) {
    for (int l = 0; l <= degree_; ++l)
        for (int r = 0; l + r <= degree_; ++r) {
            auto& a = blocks_[l][r];
            const auto& b = rhs.blocks_.at(l).at(r);
            for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
        }
    return *this;
}

double TensorSquareSeries::max_abs() const {
    double m = 0.0;
    for (const auto& row : blocks_)
        for (const auto& b : row)
            for (Complex c : b) m = std::max(m, std::abs(c));
    return m;
}

TensorSquareSeries coproduct(const Series& g) {
    const std::size_t G = g.generator_count();
    TensorSquareSeries out(g.catalogue(), g.degree());
    std::vector<std::size_t> pw(static_cast<std::size_t>(g.degree()) + 1);
    for (int d = 0; d <= g.degree(); ++d) pw[d] = ipow(G, d);
    for (int d = 0; d <= g.degree(); ++d) {
        const auto block = g.part(d);
        for (std::size_t idx = 0; idx < block.size(); ++idx) {
            const Complex c = block[idx];
            if (c == Complex{}) continue;
            const Word w = word_at(idx, d, G);
            for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
                std::size_t li = 0, ri = 0;
                int nl = 0;
                for (int k = 0; k < d; ++k) {
                    if (mask & (1u << k)) {
                        li = li * G + w[k];
                        ++nl;
                    } else {
                        ri = ri * G + w[k];
                    }
                }
                out.block(nl, d - nl)[li * pw[d - nl] + ri] += c;
            }
        }
    }
    return out;
}

TensorSquareSeries tensor_product(const Series& a, const Series& b) {
    a.require_compatible(b);
    TensorSquareSeries out(a.catalogue(), a.degree());
    for (int l = 0; l <= a.degree(); ++l) {
        const auto pa = a.part(l);
        for (int r = 0; l + r <= a.degree(); ++r) {
            const auto pb = b.part(r);
            auto dst = out.block(l, r);
            for (std::size_t i = 0; i < pa.size(); ++i) {
                if (pa[i] == Complex{}) continue;
                for (std::size_t j = 0; j < pb.size(); ++j) dst[i * pb.size() + j] = pa[i] * pb[j];
            }
        }
    }
    return out;
}

double grouplike_defect(const Series& g) {
    TensorSquareSeries delta = coproduct(g);
    delta -= tensor_product(g, g);
    return delta.max_abs();
}

LinearSubstitution LinearSubstitution::identity(CataloguePtr gens) {
    LinearSubstitution phi{gens, gens, {}};
    phi.images.resize(gens->size());
    for (std::size_t i = 0; i < gens->size(); ++i)
        phi.images[i] = {{static_cast<GeneratorId>(i), Complex(1.0)}};
    return phi;
}

LinearSubstitution LinearSubstitution::from_labels(
    CataloguePtr source, CataloguePtr target,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& rules) {
    LinearSubstitution phi{source, target, {}};
    phi.images.resize(source->size());
    for (const auto& [from, to] : rules) {
        auto& img = phi.images[source->at(from)];
        img.clear();
        for (const auto& t : to) img.emplace_back(target->at(t), Complex(1.0));
    }
    return phi;
}

Series apply_linear_substitution(const Series& g, const LinearSubstitution& phi) {
    if (!same_catalogue(g.catalogue(), phi.source))
        throw ConfigError("substitution source catalogue does not match the series");
    if (phi.images.size() != phi.source->size()) throw ConfigError("substitution image list has wrong size");
    const std::size_t gs = phi.source->size();
    const std::size_t gt = phi.target->size();
    for (const auto& img : phi.images)
        for (const auto& [t, c] : img)
            if (t >= gt) throw ConfigError("substitution image refers to an unknown generator");

    Series out(phi.target, g.degree());
    out.part(0)[0] = g.constant();
    for (int d = 1; d <= g.degree(); ++d) {
        // Apply the generator map one tensor slot at a time.
        std::vector<Complex> cur(g.part(d).begin(), g.part(d).end());
        for (int mode = 0; mode < d; ++mode) {
            const std::size_t outer = ipow(gt, mode);
            const std::size_t inner = ipow(gs, d - mode - 1);
            std::vector<Complex> next(outer * gt * inner, Complex{});
            for (std::size_t o = 0; o < outer; ++o)
                for (std::size_t b = 0; b < gs; ++b) {
                    const Complex* src = cur.data() + (o * gs + b) * inner;
                    for (const auto& [a, c] : phi.images[b]) {
                        Complex* dst = next.data() + (o * gt + a) * inner;
                        for (std::size_t i = 0; i < inner; ++i) dst[i] += c * src[i];
                    }
                }
            cur = std::move(next);
        }
        std::copy(cur.begin(), cur.end(), out.part(d).begin());
    }
    return out;
}

}  // namespace kzhol
