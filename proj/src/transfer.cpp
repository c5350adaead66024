#include "hptkit/transfer.hpp"

#include <memory>
#include <sstream>
#include <unordered_map>

#include "hptkit/errors.hpp"
#include "hptkit/excore.hpp"
#include "hptkit/linalg.hpp"

namespace hptkit {

const char* algebra_name(Algebra a) {
    switch (a) {
        case Algebra::H: return "H";
        case Algebra::P: return "P";
        case Algebra::A: return "A";
        case Algebra::Ax: return "Ax";
    }
    return "?";
}

Algebra parse_algebra(const std::string& name) {
    if (name == "H") return Algebra::H;
    if (name == "P") return Algebra::P;
    if (name == "A") return Algebra::A;
    if (name == "Ax") return Algebra::Ax;
    throw ParseError("--algebra", "expected one of H, P, A, Ax; got \"" + name + "\"");
}

namespace {

std::vector<Word> basis_words(Algebra algebra, std::size_t bound) {
    std::vector<Word> out;
    for (const auto& w : normal_words(bound)) {
        bool keep = true;
        if (algebra == Algebra::H) keep = w.find('x') == Word::npos;
        if (algebra == Algebra::P) keep = w.find_first_not_of('x') == Word::npos;
        if (keep) out.push_back(w);
    }
    return out;
}

FreeElement differential_of(Algebra algebra, const Word& w) {
    const FreeElement e = FreeElement::word(w);
    return algebra == Algebra::Ax ? twist_differential(e) : apply_differential(e);
}

ModulePtr ground_module() { return make_module({{0, {"1"}}}); }

}  // namespace

GradedMap realize_operator(const TruncatedRealization& r, int degree,
                           const std::function<FreeElement(const Word&)>& op) {
    const auto& N = r.complex.module();
    GradedMap out(N, N, degree);
    for (const auto& w : r.words) {
        const int deg = word_degree(w);
        const std::size_t col = *N->index_of(deg, word_to_string(w));
        const FreeElement value = op(w);
        for (const auto& [image, c] : value.terms()) {
            if (image.size() > r.bound) continue;
            if (word_degree(image) != deg + degree) {
                throw InternalConsistencyError("operator is not homogeneous of degree " + std::to_string(degree));
            }
            out.set(deg, *N->index_of(deg + degree, word_to_string(image)), col, c);
        }
    }
    return out;
}

TruncatedRealization realize(Algebra algebra, std::size_t bound) {
    TruncatedRealization r{algebra, bound, ChainComplex(make_module({})), basis_words(algebra, bound), {}};
    GradedModule::LabelMap labels;
    for (const auto& w : r.words) labels[word_degree(w)].push_back(word_to_string(w));
    const auto N = make_module(std::move(labels));
    r.complex = ChainComplex(N);
    const GradedMap d = realize_operator(r, -1, [algebra](const Word& w) { return differential_of(algebra, w); });
    for (const auto& w : r.words) {
        if (differential_of(algebra, w).max_length() > bound) r.flagged.push_back(w);
    }
    r.complex = ChainComplex(N, d);
    require_complex(r.complex, "truncated realization");
    return r;
}

FreeElement h_on_H(const Word& w) {
    if (w.empty() || w.find_first_not_of('T') != Word::npos) return {};
    return FreeElement::word(Word(w.size() - 1, 'T') + "s");
}

FreeElement h_on_P(const Word& w) {
    if (w.empty() || w.find_first_not_of('x') != Word::npos || w.size() % 2 != 0) return {};
    return FreeElement::word(Word(w.size() - 1, 'x'), -1);
}

FreeElement h_on_A(const Word& w) {
    if (w.empty()) return {};
    const auto blocks = split_blocks(w);
    const Block& first = blocks.front();
    const FreeElement head = first.from_h ? h_on_H(first.letters) : h_on_P(first.letters);
    return head * FreeElement::word(w.substr(first.letters.size()));
}

bool TransferResult::passed() const {
    return contraction && !nontermination && report.passed() && valid_through && *valid_through >= window;
}

namespace {

struct LengthWindow {
    std::shared_ptr<const std::unordered_map<std::string, std::size_t>> lengths;

    Window upto(std::size_t max) const {
        auto table = lengths;
        return Window{[table, max](int, const std::string& label) { return table->at(label) <= max; }, {}};
    }
    Window exactly(std::size_t len) const {
        auto table = lengths;
        return Window{[table, len](int, const std::string& label) { return table->at(label) == len; }, {}};
    }
};

LengthWindow length_table(const TruncatedRealization& r) {
    auto table = std::make_shared<std::unordered_map<std::string, std::size_t>>();
    for (const auto& w : r.words) table->emplace(word_to_string(w), w.size());
    return {table};
}

// Axiom report on the judged window plus a per-length scan.
void judge(TransferResult& result, const Contraction& c) {
    const LengthWindow lw = length_table(result.realization);
    const Window judged = lw.upto(result.window);
    result.report.merge(validate_complex(c.N), "N");
    result.report.merge(validate_structure(c, &judged));

    std::optional<std::size_t> valid;
    bool broken = false;
    for (std::size_t len = 0; len <= result.bound; ++len) {
        const Window one = lw.exactly(len);
        const Report r = validate_structure(c, &one);
        std::string line = "length " + std::to_string(len) + ": ";
        if (r.passed()) {
            line += "all axioms hold";
            if (!broken) valid = len;
        } else {
            broken = true;
            line += "fails";
            for (const auto& f : r.failures()) line += " " + f;
        }
        result.diagnostics.push_back(line);
    }
    result.valid_through = valid;
    result.report.add("validity-window", valid && *valid >= result.window,
                      "holds through length " + (valid ? std::to_string(*valid) : std::string("none")) +
                          ", judged on length <= " + std::to_string(result.window));
}

Contraction ground_contraction(const TruncatedRealization& r, const std::function<FreeElement(const Word&)>& h) {
    const auto& N = r.complex.module();
    const auto R = ground_module();
    GradedMap pi(N, R, 0);
    GradedMap nabla(R, N, 0);
    pi.set("1", "1", 1);
    nabla.set("1", "1", 1);
    return Contraction{ChainComplex(R), r.complex, std::move(pi), std::move(nabla), realize_operator(r, 1, h)};
}

TransferResult transfer_for(Algebra algebra, std::size_t bound, std::size_t window,
                            const std::function<FreeElement(const Word&)>& h) {
    TransferResult result{algebra, bound, realize(algebra, bound), std::nullopt, std::nullopt, window, {}, {}, {}};
    result.report = Report(std::string("contraction of ") + algebra_name(algebra) + " onto R");
    Contraction c = ground_contraction(result.realization, h);
    judge(result, c);
    result.contraction = std::move(c);
    return result;
}

std::string vector_text(const TruncatedRealization& r, int degree, const linalg::Vector& v) {
    FreeElement e;
    const auto& labels = r.complex.module()->labels(degree);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (is_zero(v[i])) continue;
        for (const auto& w : r.words) {
            if (word_degree(w) == degree && word_to_string(w) == labels[i]) e.add_term(w, v[i]);
        }
    }
    return to_string(e);
}

}  // namespace

TransferResult contraction_H(std::size_t bound) { return transfer_for(Algebra::H, bound, bound, h_on_H); }

TransferResult contraction_P(std::size_t bound) {
    return transfer_for(Algebra::P, bound, bound == 0 ? 0 : bound - 1, h_on_P);
}

TransferResult contraction_A(std::size_t L) { return transfer_for(Algebra::A, L, L == 0 ? 0 : L - 1, h_on_A); }

TransferResult contraction_A_twisted(std::size_t L, std::optional<std::size_t> cap) {
    const TransferResult base = contraction_A(L);
    TransferResult result{Algebra::Ax, L, realize(Algebra::Ax, L), std::nullopt, std::nullopt,
                          L == 0 ? 0 : L - 1, {}, {}, {}};
    result.report = Report("perturbed contraction of Ax onto R");

    const TruncatedRealization& rA = base.realization;
    const Perturbation p{rA.complex, realize_operator(rA, -1, [](const Word& w) {
                             return commutator_with_x(FreeElement::word(w));
                         })};
    result.report.merge(check_perturbation(p));
    {
        const bool same = (rA.complex.d() + p.del) == GradedMap(result.realization.complex.d());
        result.report.add("twisted-differential", same, same ? "D + [x,-] matches the Ax realization" : "mismatch");
    }

    const Contraction& cA = *base.contraction;
    const PerturbationInput in = perturbation_input(cA);
    try {
        const PerturbedKit kit = build_kit(in, p, cap);
        const ChainComplex Nd = perturbed_complex(p);
        Contraction out{ChainComplex(cA.M.module(), cA.M.d() + *kit.Dcal), Nd, *kit.pi_del, *kit.nabla_del,
                        kit.h_del};
        judge(result, out);
        result.contraction = std::move(out);
    } catch (const InvertibilityUnestablished& e) {
        result.nontermination = e.what();
        // Obstructions that no iteration cap can remove.
        const GradedMap hd = compose(cA.h, p.del);
        const GradedMap one_plus = GradedMap::identity(rA.complex.module()) + hd;
        for (int deg : rA.complex.module()->degrees()) {
            for (const auto& v : linalg::nullspace(linalg::block(one_plus, deg))) {
                result.diagnostics.push_back("1 + h∂ annihilates " + vector_text(rA, deg, v) + " (degree " +
                                             std::to_string(deg) + ")");
            }
        }
        std::size_t shown = 0;
        for (const auto& w : rA.words) {
            const int deg = word_degree(w);
            const std::size_t col = *rA.complex.module()->index_of(deg, word_to_string(w));
            const auto& image = hd.column(deg, col);
            if (image.size() == 1 && image.begin()->first == col && shown < 4) {
                result.diagnostics.push_back("h∂(" + word_to_string(w) + ") = " + to_string(image.begin()->second) +
                                             "*" + word_to_string(w));
                ++shown;
            }
        }
    }
    return result;
}

TransferResult run_transfer(Algebra algebra, std::size_t bound, std::optional<std::size_t> cap) {
    switch (algebra) {
        case Algebra::H: return contraction_H(bound);
        case Algebra::P: return contraction_P(bound);
        case Algebra::A: return contraction_A(bound);
        case Algebra::Ax: return contraction_A_twisted(bound, cap);
    }
    throw StructuralError("unknown algebra");
}

}  // namespace hptkit
