#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kzhol {

using Complex = std::complex<double>;
using GeneratorId = std::uint16_t;
using Word = std::vector<GeneratorId>;

/// Ordered set of labelled generators. Ids are dense in [0, size()).
class GeneratorCatalogue {
public:
    explicit GeneratorCatalogue(std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& label(GeneratorId id) const { return labels_.at(id); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    std::optional<GeneratorId> find(std::string_view label) const;
    /// Throws ConfigError for an unknown label.
    GeneratorId at(std::string_view label) const;

    bool operator==(const GeneratorCatalogue& other) const { return labels_ == other.labels_; }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, GeneratorId> index_;
};

using CataloguePtr = std::shared_ptr<const GeneratorCatalogue>;

CataloguePtr make_catalogue(std::vector<std::string> labels);

bool same_catalogue(const CataloguePtr& a, const CataloguePtr& b);

/// Packed position of a word of length d inside the dense degree-d block.
std::size_t word_index(std::span<const GeneratorId> word, std::size_t generator_count);
Word word_at(std::size_t index, int degree, std::size_t generator_count);

/// Noncommutative power series truncated at total degree D.
///
/// Coefficients are stored densely per degree: degree d holds G^d entries
/// indexed by the base-G reading of the word (first letter most
/// significant), so lexicographic word order equals index order.
class Series {
public:
    Series(CataloguePtr gens, int degree);

    static Series zero(CataloguePtr gens, int degree) { return Series(std::move(gens), degree); }
    static Series one(CataloguePtr gens, int degree);
    static Series generator(CataloguePtr gens, int degree, GeneratorId id);
    static Series linear(CataloguePtr gens, int degree,
                         std::span<const std::pair<GeneratorId, Complex>> terms);

    const CataloguePtr& catalogue() const noexcept { return gens_; }
    int degree() const noexcept { return degree_; }
    std::size_t generator_count() const noexcept { return gens_->size(); }

    std::span<const Complex> part(int d) const { return parts_.at(d); }
    std::span<Complex> part(int d) { return parts_.at(d); }

    Complex constant() const { return parts_[0][0]; }
    Complex coeff(std::span<const GeneratorId> word) const;
    Complex coeff(std::initializer_list<GeneratorId> word) const {
        return coeff(std::span<const GeneratorId>(word.begin(), word.size()));
    }
    void set_coeff(std::span<const GeneratorId> word, Complex value);
    void add_coeff(std::span<const GeneratorId> word, Complex value);

    /// Largest |coefficient| overall or within one degree.
    double max_abs() const;
    double max_abs(int d) const;

    /// Copy with all words above degree d discarded (d <= degree()).
    Series truncated(int d) const;

    /// Visits every stored coefficient with magnitude above `threshold`.
    template <class F>
    void for_each_term(F&& visit, double threshold = 0.0) const {
        Word w;
        for (int d = 0; d <= degree_; ++d) {
            const auto& block = parts_[d];
            for (std::size_t i = 0; i < block.size(); ++i) {
                if (std::abs(block[i]) > threshold) {
                    w = word_at(i, d, generator_count());
                    visit(static_cast<const Word&>(w), block[i]);
                }
            }
        }
    }

    Series& operator+=(const Series& rhs);
    Series& operator-=(const Series& rhs);
    Series& operator*=(Complex s);

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator-(Series a) { return a *= -1.0; }
    friend Series operator*(Series a, Complex s) { return a *= s; }
    friend Series operator*(Complex s, Series a) { return a *= s; }
    friend Series operator*(const Series& a, const Series& b);

    /// Throws ConfigError unless catalogue and truncation degree agree.
    void require_compatible(const Series& other) const;

private:
    CataloguePtr gens_;
    int degree_;
    std::vector<std::vector<Complex>> parts_;
};

Series exp(const Series& x);
Series log(const Series& g);
Series inverse(const Series& g);
Series commutator(const Series& a, const Series& b);

/// Elements of the tensor square, truncated on the sum of both word degrees.
class TensorSquareSeries {
public:
    TensorSquareSeries(CataloguePtr gens, int degree);

    int degree() const noexcept { return degree_; }
    std::size_t generator_count() const noexcept { return gens_->size(); }

    std::span<const Complex> block(int left, int right) const { return blocks_.at(left).at(right); }
    std::span<Complex> block(int left, int right) { return blocks_.at(left).at(right); }

    Complex coeff(std::span<const GeneratorId> left, std::span<const GeneratorId> right) const;

    TensorSquareSeries& operator-=(const TensorSquareSeries& rhs);
    double max_abs() const;

private:
    CataloguePtr gens_;
    int degree_;
    std::vector<std::vector<std::vector<Complex>>> blocks_;
};

/// Unshuffle coproduct: generators are primitive, Delta is an algebra morphism.
TensorSquareSeries coproduct(const Series& g);
TensorSquareSeries tensor_product(const Series& a, const Series& b);
/// max |Delta(g) - g (x) g| over all words of total degree <= D.
double grouplike_defect(const Series& g);

/// Degree-preserving algebra morphism given by the images of the generators.
struct LinearSubstitution {
    CataloguePtr source;
    CataloguePtr target;
    /// images[s] = linear combination of target generators that s maps to.
    std::vector<std::vector<std::pair<GeneratorId, Complex>>> images;

    static LinearSubstitution identity(CataloguePtr gens);
    /// Sends source label -> sum of target labels; unlisted source generators map to 0.
    static LinearSubstitution from_labels(
        CataloguePtr source, CataloguePtr target,
        const std::vector<std::pair<std::string, std::vector<std::string>>>& rules);
};

Series apply_linear_substitution(const Series& g, const LinearSubstitution& phi);

}  // namespace kzhol
