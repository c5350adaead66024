#include "hptkit/documents.hpp"

#include <type_traits>

#include "hptkit/contraction.hpp"
#include "hptkit/errors.hpp"
#include "hptkit/excore.hpp"
#include "hptkit/perturbation.hpp"

namespace hptkit {

Report validate_parsed(const ParsedStructure& s) {
    Report report(std::string("validate ") + structure_kind(s));
    std::visit(
        [&report](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ChainComplex>) {
                report.merge(validate_complex(v));
            } else if constexpr (std::is_same_v<T, Pseudocontraction>) {
                report.merge(validate_complex(v.N), "N");
                report.merge(validate_structure(v));
            } else if constexpr (std::is_same_v<T, HodgeData>) {
                report.merge(validate_complex(v.X), "X");
                report.merge(validate_structure(v));
            } else {
                report.merge(validate_complex(v.M), "M");
                report.merge(validate_complex(v.N), "N");
                report.merge(validate_structure(v));
            }
        },
        s);
    return report;
}

namespace {

Report validate_kit(const Json& j) {
    const ParsedKit kit = kit_from_json(j);
    Report report("validate kit");
    report.merge(validate_parsed(kit.perturbed), "perturbed");
    const GradedMap& h = std::visit(
        [](const auto& v) -> const GradedMap& {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ChainComplex>) {
                throw ParseError("perturbed", "a kit carries a structure, not a complex");
            } else {
                return v.h;
            }
        },
        kit.perturbed);
    report.add("h_del-matches", kit.h_del == h);
    return report;
}

}  // namespace

Report validate_document(const Json& j) {
    if (j.is_object() && j.contains("kind") && j["kind"] == "kit") return validate_kit(j);
    return validate_parsed(structure_from_json(j));
}

PerturbOutcome perturb_document(const ParsedStructure& s, const Json& perturbation,
                                std::optional<std::size_t> cap) {
    PerturbOutcome out{Report("perturbation kit"), Json(), 0, 0};
    const Report input_report = validate_parsed(s);
    out.report.merge(input_report, "input");
    if (!input_report.passed()) return out;

    auto finish = [&](const PerturbedKit& kit, const PerturbationInput& in, const Perturbation& p,
                      const Report& result, const ParsedStructure& perturbed) {
        out.report.merge(check_perturbation(p));
        out.report.merge(verify_kit_identities(kit, in, p));
        out.report.merge(series_formulas_check(kit, in, p, cap));
        out.report.merge(kit_properties(kit, p));
        out.report.merge(result);
        out.kit = kit_to_json(kit, out.report, perturbed);
        out.alpha_terms = kit.alpha_terms;
        out.beta_terms = kit.beta_terms;
        return out;
    };

    if (auto* ps = std::get_if<Pseudocontraction>(&s)) {
        const Perturbation p = perturbation_from_json(perturbation, ps->N);
        const PseudoResult r = perturb_pseudo(*ps, p, cap);
        return finish(r.kit, perturbation_input(*ps), p, r.report, r.pseudo);
    }
    if (auto* ws = std::get_if<WeakContraction>(&s)) {
        const Perturbation p = perturbation_from_json(perturbation, ws->N);
        const WeakResult r = perturb_weak(*ws, p, cap);
        return finish(r.kit, perturbation_input(*ws), p, r.report, r.weak);
    }
    if (auto* cs = std::get_if<Contraction>(&s)) {
        const Perturbation p = perturbation_from_json(perturbation, cs->N);
        const ContractionResult r = perturb_contraction(*cs, p, cap);
        return finish(r.kit, perturbation_input(*cs), p, r.report, r.contraction);
    }
    throw ParseError("kind", std::string("cannot perturb a ") + structure_kind(s));
}

Json criterion_to_json(const CriterionResult& c) {
    Json j = Json::object();
    j["criterion"] = c.number;
    j["name"] = c.name;
    j["passed"] = c.report.passed();
    j["report"] = report_to_json(c.report);
    j["failures"] = c.report.failures();
    return j;
}

Json a0_basis_to_json(const A0Basis& b, std::size_t order) {
    Json words = Json::array();
    for (const auto& w : b.words) {
        Json e = Json::object();
        e["word"] = word_to_string(w.word);
        e["shape"] = shape_name(w.shape);
        e["monomial"] = w.monomial;
        words.push_back(std::move(e));
    }
    Json out = Json::object();
    out["order"] = order;
    out["count"] = b.words.size();
    out["oracle_rank"] = b.oracle_rank;
    out["words"] = std::move(words);
    return out;
}

Json transfer_to_json(const TransferResult& t) {
    Json out = Json::object();
    if (t.contraction) {
        out = structure_to_json(*t.contraction);
    } else {
        out["kind"] = "none";
    }
    out["algebra"] = algebra_name(t.algebra);
    out["bound"] = t.bound;
    out["window"] = t.window;
    if (t.valid_through) out["valid_through"] = *t.valid_through;
    if (t.nontermination) out["nontermination"] = *t.nontermination;
    out["diagnostics"] = t.diagnostics;
    out["passed"] = t.passed();
    out["report"] = report_to_json(t.report);
    return out;
}

}  // namespace hptkit
