#include "hptkit/hatseries.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hptkit/errors.hpp"

namespace hptkit {

HatElement::HatElement(FreeElement body, std::size_t order) : body_(body.truncated(order)), order_(order) {}

HatElement HatElement::truncated(std::size_t order) const {
    if (order > order_) throw ContractViolation("cannot raise the truncation order of a series element");
    return HatElement(body_, order);
}

bool HatElement::agrees_with(const HatElement& other) const {
    const std::size_t L = std::min(order_, other.order_);
    return body_.truncated(L) == other.body_.truncated(L);
}

HatElement operator+(const HatElement& a, const HatElement& b) {
    return HatElement(a.body() + b.body(), std::min(a.order(), b.order()));
}

HatElement operator-(const HatElement& a, const HatElement& b) {
    return HatElement(a.body() - b.body(), std::min(a.order(), b.order()));
}

HatElement operator-(const HatElement& a) { return HatElement(-a.body(), a.order()); }

HatElement operator*(const Scalar& c, const HatElement& a) { return HatElement(c * a.body(), a.order()); }

HatElement multiply(const HatElement& a, const HatElement& b, RewriteLog* log) {
    const std::size_t L = std::min(a.order(), b.order());
    return HatElement(nf_multiply(a.body(), b.body(), L, log), L);
}

HatElement operator*(const HatElement& a, const HatElement& b) { return multiply(a, b); }

HatElement at_order(const FreeElement& a, std::size_t L) { return HatElement(a, L); }

HatElement differential(const HatElement& a, RewriteLog* log) {
    return HatElement(apply_differential(a.body(), log), a.order());
}

namespace {

HatElement geometric(const FreeElement& u, std::size_t L) {
    FreeElement sum(1);
    FreeElement power(1);
    const FreeElement minus_u = -u;
    while (true) {
        power = nf_multiply(power, minus_u, L);
        if (power.is_zero()) break;
        sum += power;
    }
    return HatElement(sum, L);
}

std::string show(const HatElement& a) { return to_string(a.body()); }

void check_agree(Report& report, const std::string& label, const HatElement& lhs, const HatElement& rhs) {
    const std::size_t L = std::min(lhs.order(), rhs.order());
    const FreeElement diff = (lhs - rhs).body();
    report.add(label, diff.is_zero(),
               diff.is_zero() ? "mod length > " + std::to_string(L) : "difference " + to_string(diff));
}

}  // namespace

HatElement alpha_series(std::size_t L) { return geometric(elem_u(), L); }
HatElement beta_series(std::size_t L) { return geometric(elem_v(), L); }

PhiImages phi_generators(std::size_t L) {
    const HatElement alpha = alpha_series(L);
    const HatElement beta = beta_series(L);
    const HatElement x = at_order(-elem_x(), L);
    const HatElement s = alpha * at_order(elem_s(), L);
    const HatElement tau = at_order(FreeElement(1), L) - alpha * at_order(elem_t(), L) * beta;
    std::size_t min_val = L + 1;
    for (const HatElement* g : {&x, &s, &tau}) {
        if (auto v = g->body().valuation()) min_val = std::min(min_val, *v);
    }
    const std::size_t loss = min_val >= 1 ? 0 : 1;
    return {x, s, tau, loss};
}

HatElement phi_map(const HatElement& a, RewriteLog* log) {
    const std::size_t L = a.order();
    const PhiImages images = phi_generators(L);
    if (images.loss != 0) {
        throw InvariantViolation("a generator image has valuation zero; truncation order not preserved");
    }
    std::map<Word, HatElement> memo;
    memo.emplace(Word{}, at_order(FreeElement(1), L));
    auto image_of = [&](const Word& w) -> const HatElement& {
        // Extend the longest memoized prefix one letter at a time.
        std::size_t k = w.size();
        while (memo.find(w.substr(0, k)) == memo.end()) --k;
        for (; k < w.size(); ++k) {
            const HatElement& prefix = memo.at(w.substr(0, k));
            const char c = w[k];
            const HatElement& g = c == 'x' ? images.x : (c == 's' ? images.s : images.tau);
            memo.emplace(w.substr(0, k + 1), multiply(prefix, g, log));
        }
        return memo.at(w);
    };
    FreeElement out;
    for (const auto& [w, c] : a.body().terms()) out += c * image_of(w).body();
    return HatElement(out, L - images.loss);
}

Report inspection_identities_check(std::size_t L) {
    const HatElement one = at_order(FreeElement(1), L);
    const HatElement x = at_order(elem_x(), L);
    const HatElement s = at_order(elem_s(), L);
    const HatElement alpha = alpha_series(L);
    const HatElement beta = beta_series(L);
    const HatElement xas = x * alpha * s;
    const HatElement sbx = s * beta * x;

    Report report("inspection identities");
    check_agree(report, "alpha-inverse", at_order(FreeElement(1) + elem_u(), L) * alpha, one);
    check_agree(report, "beta-inverse", at_order(FreeElement(1) + elem_v(), L) * beta, one);
    check_agree(report, "insp1", beta, one - xas);
    check_agree(report, "insp2", alpha, one - sbx);
    check_agree(report, "insp3", beta + xas, one);
    check_agree(report, "insp4", alpha + sbx, one);
    return report;
}

Report dalpha_dbeta_check(std::size_t L) {
    const HatElement x = at_order(elem_x(), L);
    const HatElement s = at_order(elem_s(), L);
    const HatElement tau = at_order(elem_tau(), L);
    const HatElement alpha = alpha_series(L);
    const HatElement beta = beta_series(L);

    Report report("derivatives of alpha and beta");
    check_agree(report, "dif1", differential(alpha), -(alpha * (tau * x + s * x * x) * alpha));
    check_agree(report, "dif2", differential(beta), beta * (x * tau + x * x * s) * beta);
    check_agree(report, "comm", x * alpha, beta * x);
    check_agree(report, "comm2", alpha * s, s * beta);
    return report;
}

Report involution_check(std::size_t L) {
    const HatElement one = at_order(FreeElement(1), L);
    const HatElement alpha = alpha_series(L);
    const HatElement beta = beta_series(L);
    const PhiImages images = phi_generators(L);

    Report report("involution");
    check_agree(report, "phi2-x", phi_map(images.x), at_order(elem_x(), L));
    check_agree(report, "phi2-s", phi_map(images.s), at_order(elem_s(), L));
    check_agree(report, "phi2-t", phi_map(one - images.tau), at_order(elem_t(), L));
    check_agree(report, "phi-alpha", phi_map(alpha) * alpha, one);
    check_agree(report, "phi-beta", phi_map(beta) * beta, one);
    check_agree(report, "phi-alpha-inverse", phi_map(alpha), at_order(FreeElement(1) + elem_u(), L));
    check_agree(report, "phi-beta-inverse", phi_map(beta), at_order(FreeElement(1) + elem_v(), L));
    {
        const HatElement sq = images.s * images.s;
        report.add("phi-s2", sq.body().is_zero(), sq.body().is_zero() ? "" : show(sq));
    }
    check_agree(report, "phi-s-tau", images.s * images.tau, images.tau * images.s);
    return report;
}

Report structural_check(std::size_t L, StructuralTrace* trace) {
    Report report("structural theorem");
    const std::size_t loss = phi_generators(L).loss;

    auto note = [trace](const std::string& line) {
        if (trace) trace->lines.push_back(line);
    };
    auto note_log = [&note](const char* stage, const RewriteLog& log) {
        std::ostringstream os;
        os << "    " << stage << ": " << log.commute << " × sτ→τs, " << log.square << " × ss→0";
        note(os.str());
        for (const auto& step : log.steps) {
            note("      [" + std::string(step.rule) + "] " + word_to_string(step.before) + " ⟶ " +
                 (step.after ? word_to_string(*step.after) : std::string("0")));
        }
        const std::size_t total = log.commute + log.square;
        if (total > log.steps.size()) note("      … " + std::to_string(total - log.steps.size()) + " more steps");
    };

    struct Generator {
        const char* name;
        FreeElement value;
    };
    for (const Generator& g : {Generator{"x", elem_x()}, Generator{"s", elem_s()}, Generator{"t", elem_t()}}) {
        RewriteLog phi1_log, d_log, phi2_log;
        RewriteLog* p1 = trace ? &phi1_log : nullptr;
        RewriteLog* pd = trace ? &d_log : nullptr;
        RewriteLog* p2 = trace ? &phi2_log : nullptr;

        const HatElement phi_g = phi_map(at_order(g.value, L), p1);
        const HatElement d_phi_g = differential(phi_g, pd);
        const HatElement lhs = phi_map(d_phi_g, p2);
        const HatElement rhs = at_order(twist_differential(g.value), L);
        const std::size_t window = L >= loss ? L - loss : 0;
        const FreeElement diff = (lhs.truncated(window) - rhs.truncated(window)).body();

        note(std::string("g = ") + g.name + "  (order " + std::to_string(L) + ", valuation loss " +
             std::to_string(loss) + ")");
        note("  φ(g)       = " + show(phi_g));
        note_log("φ", phi1_log);
        note("  D(φ(g))    = " + show(d_phi_g));
        note_log("D", d_log);
        note("  φ(D(φ(g))) = " + show(lhs));
        note_log("φ", phi2_log);
        note("  Dˣ(g)      = " + to_string(twist_differential(g.value)));
        note(std::string("  ") + (diff.is_zero() ? "agree" : "DIFFER") + " modulo length > " + std::to_string(window));

        const std::string label = std::string("structural-") + g.name;
        report.add(label, diff.is_zero(),
                   diff.is_zero() ? show(rhs.truncated(window)) + " mod length > " + std::to_string(window) +
                                        ", c = " + std::to_string(loss)
                                  : "difference " + to_string(diff));
        if (std::string(g.name) == "x" && window >= 2) {
            const FreeElement exact = twist_differential(g.value);
            const bool ok = lhs.body() == exact && exact.max_length() <= window;
            report.add("structural-x-exact", ok, ok ? "x^2 = x^2" : show(lhs));
        }
    }
    return report;
}

}  // namespace hptkit
