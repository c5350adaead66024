// Degree-zero part of the free product: basis enumeration and products.

#include <map>
#include <set>

#include "hptkit/errors.hpp"
#include "hptkit/freealg.hpp"
#include "hptkit/linalg.hpp"

namespace hptkit {

const char* shape_name(A0Shape shape) {
    switch (shape) {
        case A0Shape::TauMonomial: return "tau";
        case A0Shape::P: return "p";
        case A0Shape::Q: return "q";
        case A0Shape::PQ: return "pq";
    }
    return "?";
}

namespace {

std::size_t monomial_length(const std::string& m) {
    std::size_t n = 0;
    for (char c : m) n += (c == 'T') ? 1 : 2;
    return n;
}

Word expand(const std::string& monomial) {
    Word w;
    for (char c : monomial) {
        if (c == 'u') {
            w += "sx";
        } else if (c == 'v') {
            w += "xs";
        } else {
            w += 'T';
        }
    }
    return w;
}

// Shape of a u/v/τ monomial; nullopt when some v precedes some u.
std::optional<A0Shape> monomial_shape(const std::string& m) {
    const auto first_v = m.find('v');
    const auto last_u = m.rfind('u');
    const bool has_u = last_u != std::string::npos;
    const bool has_v = first_v != std::string::npos;
    if (has_u && has_v && first_v < last_u) return std::nullopt;
    if (!has_u && !has_v) return A0Shape::TauMonomial;
    if (!has_v) return A0Shape::P;
    if (!has_u) return A0Shape::Q;
    return A0Shape::PQ;
}

std::vector<std::string> monomials_up_to(std::size_t L) {
    std::vector<std::string> out{""};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (char c : {'u', 'v', 'T'}) {
            std::string next = out[i] + c;
            if (monomial_length(next) <= L) out.push_back(std::move(next));
        }
    }
    return out;
}

struct Classified {
    A0Shape shape;
    std::string monomial;
};

// Normal forms of nonzero u/v/τ monomials, keyed by word.
std::map<Word, Classified> classify_monomials(std::size_t L) {
    std::map<Word, Classified> out;
    for (const auto& m : monomials_up_to(L)) {
        const auto nf = normal_form(expand(m));
        const auto shape = monomial_shape(m);
        if (!shape) {
            if (nf) throw InvariantViolation("monomial " + m + " with v before u is nonzero");
            continue;
        }
        if (!nf) throw InvariantViolation("basis monomial " + m + " reduces to zero");
        auto [it, inserted] = out.emplace(*nf, Classified{*shape, m});
        if (!inserted) {
            throw InvariantViolation("monomials " + it->second.monomial + " and " + m + " share the normal form " +
                                     word_to_string(*nf));
        }
    }
    return out;
}

std::size_t reduction_rank(std::size_t L) {
    // Columns: every degree-0 word; rows: normal forms that occur. Repeated columns
    // do not change the rank and are skipped.
    std::map<Word, std::size_t, WordLess> rows;
    std::set<Word> distinct_columns;
    for (const auto& w : all_words(L)) {
        if (word_degree(w) != 0) continue;
        const auto nf = normal_form(w);
        if (!nf) continue;
        rows.emplace(*nf, rows.size());
        distinct_columns.insert(*nf);
    }
    std::vector<linalg::Vector> columns;
    for (const auto& w : distinct_columns) {
        linalg::Vector col(rows.size());
        col[rows.at(w)] = 1;
        columns.push_back(std::move(col));
    }
    return linalg::rank(linalg::Matrix::from_columns(rows.size(), columns));
}

}  // namespace

A0Basis enumerate_A0_basis(std::size_t L) {
    const auto classes = classify_monomials(L);
    A0Basis basis;
    for (const auto& w : normal_words(L)) {
        if (word_degree(w) != 0) continue;
        auto it = classes.find(w);
        if (it == classes.end()) {
            throw InvariantViolation("degree-0 word " + word_to_string(w) + " matches none of the four shapes");
        }
        basis.words.push_back({w, it->second.shape, it->second.monomial});
    }
    if (basis.words.size() != classes.size()) {
        throw InvariantViolation("monomial classes and enumerated words differ in number");
    }
    basis.oracle_rank = reduction_rank(L);
    if (basis.oracle_rank != basis.words.size()) {
        throw InvariantViolation("enumeration found " + std::to_string(basis.words.size()) +
                                 " words, reduction rank is " + std::to_string(basis.oracle_rank));
    }
    return basis;
}

Report check_A0_products(std::size_t L) {
    const A0Basis basis = enumerate_A0_basis(L);
    std::map<A0Shape, std::vector<const A0Word*>> by_shape;
    for (const auto& w : basis.words) by_shape[w.shape].push_back(&w);
    const auto& taus = by_shape[A0Shape::TauMonomial];
    const auto& ps = by_shape[A0Shape::P];
    const auto& qs = by_shape[A0Shape::Q];
    const auto& pqs = by_shape[A0Shape::PQ];

    Report report("A0 products");

    // Juxtaposition: the product equals the normal form of the concatenated monomial,
    // which is a nonzero basis monomial of the expected shape.
    auto juxtaposition = [&report](const std::string& label, const std::vector<const A0Word*>& left,
                                   const std::vector<const A0Word*>& right, A0Shape expected, auto accept) {
        std::size_t checked = 0;
        for (const A0Word* a : left) {
            for (const A0Word* b : right) {
                if (!accept(*a, *b)) continue;
                ++checked;
                const std::string m = a->monomial + b->monomial;
                const FreeElement product = FreeElement::word(a->word) * FreeElement::word(b->word);
                const FreeElement juxta = FreeElement::word(expand(m));
                const auto shape = monomial_shape(m);
                if (juxta.is_zero() || product != juxta || shape != expected || juxta.size() != 1 ||
                    juxta.terms().begin()->second != 1) {
                    report.add(label, false, word_to_string(a->word) + " · " + word_to_string(b->word) + " = " +
                                                 to_string(product));
                    return;
                }
            }
        }
        report.add(label, true, std::to_string(checked) + " products");
    };
    auto any = [](const A0Word&, const A0Word&) { return true; };

    juxtaposition("ii-p.tau", ps, taus, A0Shape::P, any);
    juxtaposition("ii-tau.p", taus, ps, A0Shape::P, any);
    juxtaposition("ii-q.tau", qs, taus, A0Shape::Q, any);
    juxtaposition("ii-tau.q", taus, qs, A0Shape::Q, any);
    juxtaposition("ii-p.q", ps, qs, A0Shape::PQ, any);
    juxtaposition("ii-p2.p1q", ps, pqs, A0Shape::PQ, any);
    juxtaposition("ii-pq1.q2", pqs, qs, A0Shape::PQ, any);

    auto vanishing = [&report](const std::string& label, const std::vector<const A0Word*>& left,
                               const std::vector<const A0Word*>& right) {
        std::size_t checked = 0;
        for (const A0Word* a : left) {
            for (const A0Word* b : right) {
                ++checked;
                const FreeElement product = FreeElement::word(a->word) * FreeElement::word(b->word);
                if (!product.is_zero()) {
                    report.add(label, false, word_to_string(a->word) + " · " + word_to_string(b->word) + " = " +
                                                 to_string(product));
                    return;
                }
            }
        }
        report.add(label, true, std::to_string(checked) + " products");
    };
    vanishing("iii-q.p", qs, ps);
    vanishing("iii-p1q.p2", pqs, ps);
    vanishing("iii-q2.pq1", qs, pqs);

    {
        std::size_t checked = 0;
        std::string failure;
        for (const A0Word* w : pqs) {
            const FreeElement e = FreeElement::word(w->word);
            ++checked;
            if (!(e * e).is_zero() && failure.empty()) failure = word_to_string(w->word);
        }
        report.add("iv", failure.empty(), failure.empty() ? std::to_string(checked) + " squares" : failure);
    }
    {
        const std::size_t jmax = L >= 8 ? L - 4 : 4;
        std::string failure;
        for (std::size_t j = 0; j <= jmax; ++j) {
            const FreeElement e = elem_v() * FreeElement::word(Word(j, 'T')) * elem_u();
            if (!e.is_zero() && failure.empty()) failure = "j = " + std::to_string(j);
        }
        report.add("v", failure.empty(), failure.empty() ? "v.tau^j.u = 0 for j <= " + std::to_string(jmax) : failure);
    }
    return report;
}

}  // namespace hptkit
