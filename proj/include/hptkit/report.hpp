#pragma once

#include <string>
#include <vector>

namespace hptkit {

/// Outcome of a single named check. `label` is the identity or axiom tag
/// (e.g. "co1", "insp3"); `detail` carries the first violation when failed.
struct CheckResult {
    std::string label;
    bool passed = true;
    std::string detail;
};

class Report {
public:
    Report() = default;
    explicit Report(std::string subject) : subject_(std::move(subject)) {}

    void add(std::string label, bool passed, std::string detail = {});
    void add(CheckResult result) { checks_.push_back(std::move(result)); }

    /// Appends every check of `other`, prefixing labels with `prefix` when non-empty.
    void merge(const Report& other, const std::string& prefix = {});

    bool passed() const;
    const std::string& subject() const noexcept { return subject_; }
    const std::vector<CheckResult>& checks() const noexcept { return checks_; }

    /// Looks up a check by label; nullptr when absent.
    const CheckResult* find(const std::string& label) const;
    std::vector<std::string> failures() const;

    std::string to_text() const;

private:
    std::string subject_;
    std::vector<CheckResult> checks_;
};

}  // namespace hptkit
