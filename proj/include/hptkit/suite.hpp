#pragma once

// The acceptance suite: eight exact criteria shared by `hptkit verify` and the
// acceptance test binary.

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "hptkit/hatseries.hpp"
#include "hptkit/report.hpp"

namespace hptkit {

struct SuiteConfig {
    std::size_t order = 8;
    std::uint64_t seed = 1;
    std::size_t instances = 200;
    std::size_t hodge_instances = 100;
    std::optional<std::size_t> cap;
    /// 0 picks the hardware concurrency.
    unsigned threads = 0;
};

/// Default truncation order, overridden by HPTKIT_DEFAULT_ORDER when it holds a
/// positive integer.
std::size_t default_order();

struct CriterionResult {
    int number;
    std::string name;
    Report report;
    /// Extra lines shown in text mode (reduction traces, transfer diagnostics).
    std::vector<std::string> notes;
};

CriterionResult criterion_structural(const SuiteConfig& cfg, bool traces = false);
CriterionResult criterion_identities(const SuiteConfig& cfg);
CriterionResult criterion_pseudo_lemma(const SuiteConfig& cfg);
CriterionResult criterion_ordinary_lemma(const SuiteConfig& cfg);
CriterionResult criterion_a0(const SuiteConfig& cfg);
CriterionResult criterion_transfer(const SuiteConfig& cfg);
CriterionResult criterion_hodge(const SuiteConfig& cfg);
CriterionResult criterion_degenerate(const SuiteConfig& cfg);

/// Names accepted by `verify`: structural, identities, pseudo, ordinary, a0,
/// transfer, hodge, degenerate.
const std::vector<std::string>& criterion_names();
/// Runs one criterion by name. Throws ParseError for an unknown name.
CriterionResult run_criterion(const std::string& name, const SuiteConfig& cfg, bool traces = false);

/// Exit status for an exception escaping a command: 1 for axiom and invariant
/// failures, 2 for input errors, 3 for nontermination.
int exit_code_for(const std::exception_ptr& error);

}  // namespace hptkit
