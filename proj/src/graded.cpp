#include "hptkit/graded.hpp"

#include <sstream>

#include "hptkit/errors.hpp"

namespace hptkit {

namespace {

const std::vector<std::string> kNoLabels;
const SparseColumn kZeroColumn;

std::string describe_mismatch(const GradedModule& a, const GradedModule& b) {
    std::map<int, int> degrees;
    for (const auto& [deg, _] : a.label_map()) degrees[deg] = 0;
    for (const auto& [deg, _] : b.label_map()) degrees[deg] = 0;
    for (const auto& [deg, _] : degrees) {
        if (a.labels(deg) != b.labels(deg)) {
            std::ostringstream os;
            os << "degree " << deg << " (dimensions " << a.dim(deg) << " vs " << b.dim(deg) << ")";
            return os.str();
        }
    }
    return "no degree";
}

}  // namespace

GradedModule::GradedModule(LabelMap labels) {
    for (auto& [deg, names] : labels) {
        if (names.empty()) continue;
        auto& idx = index_[deg];
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (!idx.emplace(names[i], i).second) {
                throw StructuralError("duplicate label \"" + names[i] + "\" in degree " + std::to_string(deg));
            }
        }
        labels_.emplace(deg, std::move(names));
    }
}

std::size_t GradedModule::dim(int degree) const {
    auto it = labels_.find(degree);
    return it == labels_.end() ? 0 : it->second.size();
}

std::size_t GradedModule::total_dim() const {
    std::size_t n = 0;
    for (const auto& [_, names] : labels_) n += names.size();
    return n;
}

const std::vector<std::string>& GradedModule::labels(int degree) const {
    auto it = labels_.find(degree);
    return it == labels_.end() ? kNoLabels : it->second;
}

std::optional<std::size_t> GradedModule::index_of(int degree, std::string_view label) const {
    auto it = index_.find(degree);
    if (it == index_.end()) return std::nullopt;
    auto jt = it->second.find(std::string(label));
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

std::vector<int> GradedModule::degrees() const {
    std::vector<int> out;
    out.reserve(labels_.size());
    for (const auto& [deg, _] : labels_) out.push_back(deg);
    return out;
}

std::vector<int> GradedModule::degrees_of(std::string_view label) const {
    std::vector<int> out;
    for (const auto& [deg, idx] : index_) {
        if (idx.count(std::string(label))) out.push_back(deg);
    }
    return out;
}

ModulePtr make_module(GradedModule::LabelMap labels) {
    return std::make_shared<const GradedModule>(std::move(labels));
}

bool same_module(const ModulePtr& a, const ModulePtr& b) {
    return a == b || *a == *b;
}

// ---------------------------------------------------------------------------

GradedMap::GradedMap(ModulePtr source, ModulePtr target, int degree)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree) {
    if (!source_ || !target_) throw StructuralError("graded map needs a source and a target module");
}

GradedMap GradedMap::zero(ModulePtr source, ModulePtr target, int degree) {
    return GradedMap(std::move(source), std::move(target), degree);
}

GradedMap GradedMap::identity(const ModulePtr& module) {
    GradedMap id(module, module, 0);
    for (const auto& [deg, names] : module->label_map()) {
        for (std::size_t i = 0; i < names.size(); ++i) id.set(deg, i, i, Scalar(1));
    }
    return id;
}

std::vector<SparseColumn>& GradedMap::block(int src_degree) {
    auto it = blocks_.find(src_degree);
    if (it == blocks_.end()) {
        it = blocks_.emplace(src_degree, std::vector<SparseColumn>(source_->dim(src_degree))).first;
    }
    return it->second;
}

void GradedMap::set(int src_degree, std::size_t row, std::size_t col, const Scalar& value) {
    if (col >= source_->dim(src_degree) || row >= target_->dim(src_degree + degree_)) {
        throw StructuralError("entry (" + std::to_string(row) + ", " + std::to_string(col) +
                              ") out of range in degree " + std::to_string(src_degree));
    }
    auto& column = block(src_degree)[col];
    if (hptkit::is_zero(value)) {
        column.erase(row);
    } else {
        column[row] = value;
    }
}

void GradedMap::add(int src_degree, std::size_t row, std::size_t col, const Scalar& value) {
    if (hptkit::is_zero(value)) return;
    if (col >= source_->dim(src_degree) || row >= target_->dim(src_degree + degree_)) {
        throw StructuralError("entry (" + std::to_string(row) + ", " + std::to_string(col) +
                              ") out of range in degree " + std::to_string(src_degree));
    }
    auto& column = block(src_degree)[col];
    auto [it, inserted] = column.emplace(row, value);
    if (!inserted) {
        it->second += value;
        if (hptkit::is_zero(it->second)) column.erase(it);
    }
}

void GradedMap::set(std::string_view from, std::string_view to, const Scalar& value) {
    const auto degs = source_->degrees_of(from);
    if (degs.size() != 1) {
        throw StructuralError("source label \"" + std::string(from) + "\" is " +
                              (degs.empty() ? "unknown" : "ambiguous"));
    }
    const int deg = degs.front();
    const auto row = target_->index_of(deg + degree_, to);
    if (!row) {
        throw StructuralError("target label \"" + std::string(to) + "\" not found in degree " +
                              std::to_string(deg + degree_));
    }
    set(deg, *row, *source_->index_of(deg, from), value);
}

Scalar GradedMap::entry(int src_degree, std::size_t row, std::size_t col) const {
    const auto& c = column(src_degree, col);
    auto it = c.find(row);
    return it == c.end() ? Scalar(0) : it->second;
}

Scalar GradedMap::coeff(std::string_view from, std::string_view to) const {
    const auto degs = source_->degrees_of(from);
    if (degs.size() != 1) throw StructuralError("source label \"" + std::string(from) + "\" not unique");
    const int deg = degs.front();
    const auto row = target_->index_of(deg + degree_, to);
    if (!row) return Scalar(0);
    return entry(deg, *row, *source_->index_of(deg, from));
}

const SparseColumn& GradedMap::column(int src_degree, std::size_t col) const {
    auto it = blocks_.find(src_degree);
    if (it == blocks_.end() || col >= it->second.size()) return kZeroColumn;
    return it->second[col];
}

SparseColumn GradedMap::apply(int src_degree, const SparseColumn& vector) const {
    SparseColumn out;
    auto it = blocks_.find(src_degree);
    if (it == blocks_.end()) return out;
    for (const auto& [idx, coeff] : vector) {
        for (const auto& [row, value] : it->second.at(idx)) {
            auto [slot, inserted] = out.emplace(row, coeff * value);
            if (!inserted) {
                slot->second += coeff * value;
                if (hptkit::is_zero(slot->second)) out.erase(slot);
            }
        }
    }
    return out;
}

bool GradedMap::is_zero() const {
    for (const auto& [_, cols] : blocks_) {
        for (const auto& c : cols) {
            if (!c.empty()) return false;
        }
    }
    return true;
}

std::vector<int> GradedMap::support() const {
    std::vector<int> out;
    for (const auto& [deg, cols] : blocks_) {
        for (const auto& c : cols) {
            if (!c.empty()) {
                out.push_back(deg);
                break;
            }
        }
    }
    return out;
}

void GradedMap::check_compatible(const GradedMap& other, const char* op) const {
    if (degree_ != other.degree_) {
        throw StructuralError(std::string(op) + ": degrees " + std::to_string(degree_) + " and " +
                              std::to_string(other.degree_) + " differ");
    }
    if (!same_module(source_, other.source_)) {
        throw StructuralError(std::string(op) + ": sources differ at " + describe_mismatch(*source_, *other.source_));
    }
    if (!same_module(target_, other.target_)) {
        throw StructuralError(std::string(op) + ": targets differ at " + describe_mismatch(*target_, *other.target_));
    }
}

GradedMap& GradedMap::operator+=(const GradedMap& other) {
    check_compatible(other, "add");
    other.for_each([this](int deg, std::size_t r, std::size_t c, const Scalar& v) { add(deg, r, c, v); });
    return *this;
}

GradedMap& GradedMap::operator-=(const GradedMap& other) {
    check_compatible(other, "subtract");
    other.for_each([this](int deg, std::size_t r, std::size_t c, const Scalar& v) { add(deg, r, c, -v); });
    return *this;
}

GradedMap& GradedMap::operator*=(const Scalar& factor) {
    if (hptkit::is_zero(factor)) {
        blocks_.clear();
        return *this;
    }
    for (auto& [_, cols] : blocks_) {
        for (auto& c : cols) {
            for (auto& [__, v] : c) v *= factor;
        }
    }
    return *this;
}

void GradedMap::for_each(const std::function<void(int, std::size_t, std::size_t, const Scalar&)>& visit) const {
    for (const auto& [deg, cols] : blocks_) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            for (const auto& [r, v] : cols[c]) visit(deg, r, c, v);
        }
    }
}

bool operator==(const GradedMap& a, const GradedMap& b) {
    if (a.degree_ != b.degree_ || !same_module(a.source_, b.source_) || !same_module(a.target_, b.target_)) {
        return false;
    }
    return !first_difference(a, b).has_value();
}

GradedMap operator+(GradedMap a, const GradedMap& b) { return a += b; }
GradedMap operator-(GradedMap a, const GradedMap& b) { return a -= b; }
GradedMap operator-(GradedMap a) { return a *= Scalar(-1); }
GradedMap operator*(const Scalar& factor, GradedMap a) { return a *= factor; }

GradedMap compose(const GradedMap& f, const GradedMap& g) {
    if (!same_module(g.target(), f.source())) {
        throw StructuralError("compose: target of inner map and source of outer map differ at " +
                              describe_mismatch(*g.target(), *f.source()));
    }
    GradedMap out(g.source(), f.target(), f.degree() + g.degree());
    for (int deg : g.support()) {
        const int mid = deg + g.degree();
        const std::size_t ncols = g.source()->dim(deg);
        for (std::size_t c = 0; c < ncols; ++c) {
            const auto& gc = g.column(deg, c);
            if (gc.empty()) continue;
            for (const auto& [r, gv] : gc) {
                for (const auto& [row, fv] : f.column(mid, r)) out.add(deg, row, c, gv * fv);
            }
        }
    }
    return out;
}

GradedMap product(std::initializer_list<std::reference_wrapper<const GradedMap>> factors) {
    if (factors.size() == 0) throw StructuralError("product of no factors");
    auto it = factors.end();
    --it;
    GradedMap acc = it->get();
    while (it != factors.begin()) {
        --it;
        acc = compose(it->get(), acc);
    }
    return acc;
}

namespace {

std::string entry_text(const GradedMap& a, int deg, std::size_t row, std::size_t col, const Scalar& lhs,
                       const Scalar& rhs) {
    std::ostringstream os;
    os << "degree " << deg << ": " << a.source()->labels(deg)[col] << " -> "
       << a.target()->labels(deg + a.degree())[row] << ": " << to_string(lhs) << " vs " << to_string(rhs);
    return os.str();
}

template <typename Visit>
void visit_differences(const GradedMap& a, const GradedMap& b, const Window* window, Visit&& visit) {
    if (a.degree() != b.degree() || !same_module(a.source(), b.source()) || !same_module(a.target(), b.target())) {
        throw StructuralError("comparison of maps with different shapes");
    }
    for (const auto& [deg, names] : a.source()->label_map()) {
        const int tdeg = deg + a.degree();
        const auto& tnames = a.target()->labels(tdeg);
        for (std::size_t c = 0; c < names.size(); ++c) {
            if (window && window->column && !window->column(deg, names[c])) continue;
            const auto& ca = a.column(deg, c);
            const auto& cb = b.column(deg, c);
            if (ca == cb) continue;
            std::map<std::size_t, std::pair<Scalar, Scalar>> rows;
            for (const auto& [r, v] : ca) rows[r].first = v;
            for (const auto& [r, v] : cb) rows[r].second = v;
            for (const auto& [r, pair] : rows) {
                if (pair.first == pair.second) continue;
                if (window && window->row && !window->row(tdeg, tnames[r])) continue;
                if (!visit(deg, r, c, pair.first, pair.second)) return;
            }
        }
    }
}

}  // namespace

std::optional<std::string> first_difference(const GradedMap& a, const GradedMap& b, const Window* window) {
    std::optional<std::string> out;
    visit_differences(a, b, window, [&](int deg, std::size_t r, std::size_t c, const Scalar& x, const Scalar& y) {
        out = entry_text(a, deg, r, c, x, y);
        return false;
    });
    return out;
}

std::vector<std::string> all_differences(const GradedMap& a, const GradedMap& b, std::size_t limit) {
    std::vector<std::string> out;
    visit_differences(a, b, nullptr, [&](int deg, std::size_t r, std::size_t c, const Scalar& x, const Scalar& y) {
        out.push_back(entry_text(a, deg, r, c, x, y));
        return out.size() < limit;
    });
    return out;
}

// ---------------------------------------------------------------------------

ChainComplex::ChainComplex(ModulePtr module, GradedMap d) : module_(std::move(module)), d_(std::move(d)) {
    if (d_.degree() != -1) throw StructuralError("differential must have degree -1");
    if (!same_module(d_.source(), module_) || !same_module(d_.target(), module_)) {
        throw StructuralError("differential must be an endomorphism of the complex's module");
    }
}

ChainComplex::ChainComplex(ModulePtr module) : ChainComplex(module, GradedMap(module, module, -1)) {}

}  // namespace hptkit
