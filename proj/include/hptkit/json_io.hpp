#pragma once

// JSON forms of complexes, operators, structures, perturbations, kits and reports.
// Scalars are written as reduced fraction strings; integers are also accepted on input.

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "hptkit/perturbation.hpp"
#include "hptkit/report.hpp"
#include "hptkit/structures.hpp"

namespace hptkit {

using Json = nlohmann::ordered_json;

/// {"degrees": {"<int>": [labels]}, "d": [entries]}.
Json complex_to_json(const ChainComplex& c);
ChainComplex complex_from_json(const Json& j, const std::string& location = "complex");

/// Operator entries [{"from", "to", "coeff"}]; "from_degree" is added when the
/// source label occurs in more than one degree.
Json map_to_json(const GradedMap& f);
GradedMap map_from_json(const Json& j, const ModulePtr& source, const ModulePtr& target, int degree,
                        const std::string& location);

using ParsedStructure = std::variant<ChainComplex, Pseudocontraction, WeakContraction, Contraction, HodgeData>;

/// "kind" is one of complex, pseudocontraction, weak, contraction, hodge. A document
/// without "kind" but with "degrees" is a complex.
ParsedStructure structure_from_json(const Json& j);
Json structure_to_json(const ParsedStructure& s);
const char* structure_kind(const ParsedStructure& s);

/// {"del": [entries]} on the complex `base`.
Perturbation perturbation_from_json(const Json& j, const ChainComplex& base);
Json perturbation_to_json(const Perturbation& p);

Json report_to_json(const Report& r);

/// Every operator of the kit, the identity report and the perturbed structure.
Json kit_to_json(const PerturbedKit& kit, const Report& report, const ParsedStructure& perturbed);

struct ParsedKit {
    ParsedStructure perturbed;
    GradedMap alpha;
    GradedMap beta;
    GradedMap t_del;
    GradedMap h_del;
    std::optional<GradedMap> Dcal;
    std::optional<GradedMap> nabla_del;
    std::optional<GradedMap> pi_del;
};
ParsedKit kit_from_json(const Json& j);

/// Reads and parses a file. Throws ParseError with "path:line:column" on failure.
Json read_json_file(const std::string& path);
/// Parses text. Throws ParseError naming `location`.
Json parse_json_text(const std::string& text, const std::string& location);

}  // namespace hptkit
