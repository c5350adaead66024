#include "hptkit/report.hpp"

#include <algorithm>
#include <sstream>

namespace hptkit {

void Report::add(std::string label, bool passed, std::string detail) {
    checks_.push_back({std::move(label), passed, std::move(detail)});
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (const auto& check : other.checks_) {
        checks_.push_back({prefix.empty() ? check.label : prefix + "/" + check.label, check.passed, check.detail});
    }
}

bool Report::passed() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* Report::find(const std::string& label) const {
    for (const auto& check : checks_) {
        if (check.label == label) return &check;
    }
    return nullptr;
}

std::vector<std::string> Report::failures() const {
    std::vector<std::string> out;
    for (const auto& check : checks_) {
        if (!check.passed) out.push_back(check.label);
    }
    return out;
}

std::string Report::to_text() const {
    std::ostringstream os;
    if (!subject_.empty()) os << subject_ << '\n';
    for (const auto& check : checks_) {
        os << "  [" << (check.passed ? "pass" : "FAIL") << "] " << check.label;
        if (!check.detail.empty()) os << "  " << check.detail;
        os << '\n';
    }
    return os.str();
}

}  // namespace hptkit
