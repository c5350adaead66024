#pragma once

// JSON-document operations shared by the command line and the Python module.

#include <cstddef>
#include <optional>

#include "hptkit/freealg.hpp"
#include "hptkit/json_io.hpp"
#include "hptkit/report.hpp"
#include "hptkit/suite.hpp"
#include "hptkit/transfer.hpp"

namespace hptkit {

/// Axioms of a parsed structure, with the complexes it contains prefixed "N", "M" or "X".
Report validate_parsed(const ParsedStructure& s);

/// Validates a structure document, or a kit document ("kind": "kit") through its
/// perturbed structure.
Report validate_document(const Json& j);

struct PerturbOutcome {
    /// Input axioms (prefix "input") followed, when they hold, by every kit check.
    Report report;
    /// Kit document; null when the input failed validation.
    Json kit;
    std::size_t alpha_terms = 0;
    std::size_t beta_terms = 0;
};

/// Applies the lemma matching the structure's kind. Throws ParseError for a bare
/// complex or Hodge data and InvertibilityUnestablished when a series does not terminate.
PerturbOutcome perturb_document(const ParsedStructure& s, const Json& perturbation,
                                std::optional<std::size_t> cap = std::nullopt);

Json criterion_to_json(const CriterionResult& c);
Json a0_basis_to_json(const A0Basis& b, std::size_t order);
Json transfer_to_json(const TransferResult& t);

}  // namespace hptkit
