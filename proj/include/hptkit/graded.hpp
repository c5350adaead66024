#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hptkit/scalar.hpp"

namespace hptkit {

/// Finitely supported graded module with named basis elements per degree.
class GradedModule {
public:
    using LabelMap = std::map<int, std::vector<std::string>>;

    GradedModule() = default;
    /// Throws StructuralError when a label repeats within a degree. Empty degrees are dropped.
    explicit GradedModule(LabelMap labels);

    std::size_t dim(int degree) const;
    std::size_t total_dim() const;
    const std::vector<std::string>& labels(int degree) const;
    std::optional<std::size_t> index_of(int degree, std::string_view label) const;

    /// Degrees carrying at least one basis element, ascending.
    std::vector<int> degrees() const;
    const LabelMap& label_map() const noexcept { return labels_; }

    /// Degrees in which `label` occurs.
    std::vector<int> degrees_of(std::string_view label) const;

    bool operator==(const GradedModule& other) const { return labels_ == other.labels_; }

private:
    LabelMap labels_;
    std::map<int, std::unordered_map<std::string, std::size_t>> index_;
};

using ModulePtr = std::shared_ptr<const GradedModule>;

ModulePtr make_module(GradedModule::LabelMap labels);

/// Sparse column: row index in the target degree -> nonzero coefficient.
using SparseColumn = std::map<std::size_t, Scalar>;

/// Homogeneous linear map between graded modules. Blocks are keyed by source
/// degree j and map source_j -> target_{j+degree}. Zero entries are never stored.
class GradedMap {
public:
    GradedMap(ModulePtr source, ModulePtr target, int degree);

    static GradedMap zero(ModulePtr source, ModulePtr target, int degree);
    static GradedMap identity(const ModulePtr& module);

    const ModulePtr& source() const noexcept { return source_; }
    const ModulePtr& target() const noexcept { return target_; }
    int degree() const noexcept { return degree_; }

    /// Sets (or clears, when zero) the coefficient of target row `row` in the image of
    /// source column `col` of degree `src_degree`.
    void set(int src_degree, std::size_t row, std::size_t col, const Scalar& value);
    void add(int src_degree, std::size_t row, std::size_t col, const Scalar& value);
    /// Label-based variant; resolves the source label's degree uniquely.
    void set(std::string_view from, std::string_view to, const Scalar& value);

    Scalar entry(int src_degree, std::size_t row, std::size_t col) const;
    /// Coefficient of `to` in the image of `from` (labels resolved uniquely).
    Scalar coeff(std::string_view from, std::string_view to) const;

    /// Image of basis column `col` in degree `src_degree`; empty when zero.
    const SparseColumn& column(int src_degree, std::size_t col) const;
    SparseColumn apply(int src_degree, const SparseColumn& vector) const;

    bool is_zero() const;
    /// Source degrees with at least one nonzero entry.
    std::vector<int> support() const;

    GradedMap& operator+=(const GradedMap& other);
    GradedMap& operator-=(const GradedMap& other);
    GradedMap& operator*=(const Scalar& factor);

    friend bool operator==(const GradedMap& a, const GradedMap& b);

    /// Visits every nonzero entry as (source degree, row, col, value).
    void for_each(const std::function<void(int, std::size_t, std::size_t, const Scalar&)>& visit) const;

private:
    ModulePtr source_;
    ModulePtr target_;
    int degree_;
    std::map<int, std::vector<SparseColumn>> blocks_;

    std::vector<SparseColumn>& block(int src_degree);
    void check_compatible(const GradedMap& other, const char* op) const;
};

GradedMap operator+(GradedMap a, const GradedMap& b);
GradedMap operator-(GradedMap a, const GradedMap& b);
GradedMap operator-(GradedMap a);
GradedMap operator*(const Scalar& factor, GradedMap a);

/// f ∘ g. Throws StructuralError naming the first degree where g.target and f.source differ.
GradedMap compose(const GradedMap& f, const GradedMap& g);

/// Left-to-right product of a chain: product({a, b, c}) = a ∘ b ∘ c.
GradedMap product(std::initializer_list<std::reference_wrapper<const GradedMap>> factors);

bool same_module(const ModulePtr& a, const ModulePtr& b);

/// Restricts a comparison to selected basis elements. `column` filters source basis
/// elements, `row` filters target components; an empty function accepts everything.
struct Window {
    std::function<bool(int degree, const std::string& label)> column;
    std::function<bool(int degree, const std::string& label)> row;
};

/// Describes the first entry where a and b differ, or nullopt when equal (inside `window`).
std::optional<std::string> first_difference(const GradedMap& a, const GradedMap& b,
                                            const Window* window = nullptr);

/// Lists every differing entry as "(degree j) from -> to: a vs b".
std::vector<std::string> all_differences(const GradedMap& a, const GradedMap& b,
                                         std::size_t limit = 16);

/// A graded module with a degree -1 differential. Construction checks shapes only;
/// the square-zero condition is reported by validate_complex.
class ChainComplex {
public:
    ChainComplex(ModulePtr module, GradedMap d);
    /// Module with zero differential.
    explicit ChainComplex(ModulePtr module);

    const ModulePtr& module() const noexcept { return module_; }
    const GradedMap& d() const noexcept { return d_; }

private:
    ModulePtr module_;
    GradedMap d_;
};

}  // namespace hptkit
