#include "hptkit/suite.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <map>
#include <thread>

#include "hptkit/contraction.hpp"
#include "hptkit/errors.hpp"
#include "hptkit/examples.hpp"
#include "hptkit/excore.hpp"
#include "hptkit/freealg.hpp"
#include "hptkit/perturbation.hpp"
#include "hptkit/random_instances.hpp"
#include "hptkit/transfer.hpp"

namespace hptkit {

namespace {

// Runs f(k) for k < n on a small thread pool; results are stored by index.
template <class F>
std::vector<Report> parallel_reports(std::size_t n, unsigned threads, F f) {
    std::vector<Report> out(n);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < n; k = next++) out[k] = f(k);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

// Collapses per-instance reports into one line per label, in first-seen order.
class Tally {
public:
    void add(const Report& r, std::size_t instance, std::uint64_t seed) {
        for (const auto& c : r.checks()) {
            auto [it, inserted] = entries_.try_emplace(c.label);
            if (inserted) order_.push_back(c.label);
            Entry& e = it->second;
            ++e.total;
            if (c.passed) {
                ++e.passed;
            } else if (e.first_failure.empty()) {
                e.first_failure = "instance " + std::to_string(instance) + " (seed " + std::to_string(seed) +
                                  "): " + c.detail;
            }
        }
    }

    void emit(Report& out) const {
        for (const auto& label : order_) {
            const Entry& e = entries_.at(label);
            const bool ok = e.passed == e.total;
            std::string detail = std::to_string(e.passed) + "/" + std::to_string(e.total) + " instances";
            if (!ok) detail += "; first failure " + e.first_failure;
            out.add(label, ok, detail);
        }
    }

private:
    struct Entry {
        std::size_t passed = 0;
        std::size_t total = 0;
        std::string first_failure;
    };
    std::vector<std::string> order_;
    std::map<std::string, Entry> entries_;
};

void tally_into(Report& out, const std::vector<Report>& reports, std::uint64_t seed) {
    Tally t;
    for (std::size_t k = 0; k < reports.size(); ++k) t.add(reports[k], k, seed + k);
    t.emit(out);
}

std::string error_text(const std::exception& e) {
    std::string s = e.what();
    const auto nl = s.find('\n');
    return nl == std::string::npos ? s : s.substr(0, nl);
}

template <class F>
void guarded(Report& r, const std::string& label, F f) {
    try {
        f();
    } catch (const Error& e) {
        r.add(label, false, error_text(e));
    }
}

// Per instance: whether ∂ ≠ 0 and the longer of the two Neumann series.
struct Coverage {
    std::vector<char> perturbed;
    std::vector<std::size_t> terms;

    explicit Coverage(std::size_t n) : perturbed(n, 0), terms(n, 0) {}

    void record(std::size_t k, const Perturbation& p, const PerturbedKit& kit) {
        perturbed[k] = !p.del.is_zero();
        terms[k] = std::max(kit.alpha_terms, kit.beta_terms);
    }

    std::string note() const {
        std::size_t nonzero = 0, active = 0, deep = 0, longest = 0;
        for (std::size_t k = 0; k < terms.size(); ++k) {
            nonzero += perturbed[k] ? 1 : 0;
            active += terms[k] >= 2 ? 1 : 0;
            deep += terms[k] >= 3 ? 1 : 0;
            longest = std::max(longest, terms[k]);
        }
        return "coverage: ∂ ≠ 0 in " + std::to_string(nonzero) + "/" + std::to_string(terms.size()) +
               ", h∂ or ∂h ≠ 0 in " + std::to_string(active) + ", series of 3+ terms in " + std::to_string(deep) +
               ", longest " + std::to_string(longest) + " terms";
    }
};

}  // namespace

std::size_t default_order() {
    const char* env = std::getenv("HPTKIT_DEFAULT_ORDER");
    if (!env || !*env) return 8;
    const std::string text(env);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
        throw ParseError("HPTKIT_DEFAULT_ORDER", "expected a positive integer, got \"" + text + "\"");
    }
    return value;
}

CriterionResult criterion_structural(const SuiteConfig& cfg, bool traces) {
    CriterionResult out{1, "structural", Report("structural theorem"), {}};
    std::vector<std::size_t> orders;
    for (std::size_t L : {2u, 4u, 6u, 8u}) {
        if (L <= cfg.order) orders.push_back(L);
    }
    if (orders.empty() || orders.back() != cfg.order) orders.push_back(cfg.order);
    for (std::size_t L : orders) {
        StructuralTrace trace;
        out.report.merge(structural_check(L, traces ? &trace : nullptr), "L=" + std::to_string(L));
        if (traces) {
            out.notes.push_back("L = " + std::to_string(L));
            for (auto& line : trace.lines) out.notes.push_back("  " + line);
        }
    }
    return out;
}

CriterionResult criterion_identities(const SuiteConfig& cfg) {
    CriterionResult out{2, "identities", Report("identity suite"), {}};
    const std::string at = "L=" + std::to_string(cfg.order);
    out.report.merge(inspection_identities_check(cfg.order), at);
    out.report.merge(dalpha_dbeta_check(cfg.order), at);
    out.report.merge(involution_check(cfg.order), at);

    Coverage coverage(cfg.instances);
    const auto reports = parallel_reports(cfg.instances, cfg.threads, [&](std::size_t k) {
        Report r;
        guarded(r, "instance", [&] {
            const PseudoInstance inst = random_pseudo_instance(cfg.seed + k);
            const Perturbation& p = inst.perturbation;
            const PerturbationInput in = perturbation_input(inst.pseudo);
            const PerturbedKit kit = build_kit(Structure{inst.pseudo}, p, cfg.cap);
            coverage.record(k, p, kit);
            r.merge(verify_kit_identities(kit, in, p), "pseudo");
            const WeakContraction weak = pseudo_to_weak(inst.pseudo);
            const PerturbationInput win = perturbation_input(weak);
            r.merge(verify_kit_identities(build_kit(Structure{weak}, p, cfg.cap), win, p), "weak");
        });
        return r;
    });
    tally_into(out.report, reports, cfg.seed);
    out.notes.push_back(coverage.note());
    return out;
}

CriterionResult criterion_pseudo_lemma(const SuiteConfig& cfg) {
    CriterionResult out{3, "pseudo-lemma", Report("pseudo perturbation lemma"), {}};
    const auto reports = parallel_reports(cfg.instances, cfg.threads, [&](std::size_t k) {
        Report r;
        guarded(r, "instance", [&] {
            const PseudoInstance inst = random_pseudo_instance(cfg.seed + k);
            const Perturbation& p = inst.perturbation;
            guarded(r, "pseudo perturb", [&] {
                const PseudoResult pr = perturb_pseudo(inst.pseudo, p, cfg.cap);
                r.merge(pr.report, "pseudo");
                r.merge(kit_properties(pr.kit, p), "pseudo");
            });
            guarded(r, "weak perturb", [&] {
                const WeakResult wr = perturb_weak(pseudo_to_weak(inst.pseudo), p, cfg.cap);
                r.merge(wr.report, "weak");
            });
        });
        return r;
    });
    tally_into(out.report, reports, cfg.seed);
    return out;
}

CriterionResult criterion_ordinary_lemma(const SuiteConfig& cfg) {
    CriterionResult out{4, "ordinary-lemma", Report("ordinary perturbation lemma"), {}};
    Coverage coverage(cfg.instances);
    const auto reports = parallel_reports(cfg.instances, cfg.threads, [&](std::size_t k) {
        Report r;
        guarded(r, "instance", [&] {
            const ContractionInstance inst = random_contraction_instance(cfg.seed + k);
            const Perturbation& p = inst.perturbation;
            const ContractionResult cr = perturb_contraction(inst.contraction, p, cfg.cap);
            r.merge(cr.report);
            r.merge(series_formulas_check(cr.kit, perturbation_input(inst.contraction), p, cfg.cap));
            coverage.record(k, p, cr.kit);
        });
        return r;
    });
    tally_into(out.report, reports, cfg.seed);
    out.notes.push_back(coverage.note());
    return out;
}

CriterionResult criterion_a0(const SuiteConfig& cfg) {
    CriterionResult out{5, "a0", Report("degree-zero subalgebra"), {}};
    const std::size_t top = std::min<std::size_t>(cfg.order, 8);
    const std::map<std::size_t, std::size_t> anchors{{1, 2}, {3, 10}};
    for (std::size_t L = 0; L <= top; ++L) {
        const std::string label = "count-L" + std::to_string(L);
        guarded(out.report, label, [&] {
            const A0Basis b = enumerate_A0_basis(L);
            const bool ok = b.words.size() == b.oracle_rank;
            out.report.add(label, ok,
                           std::to_string(b.words.size()) + " words, oracle rank " + std::to_string(b.oracle_rank));
            auto it = anchors.find(L);
            if (it != anchors.end()) {
                const bool anchored = ok && b.oracle_rank == it->second;
                out.report.add("anchor-L" + std::to_string(L), anchored,
                               "oracle rank " + std::to_string(b.oracle_rank) + ", expected " +
                                   std::to_string(it->second));
            }
        });
    }
    const std::size_t products = std::min<std::size_t>(cfg.order, 6);
    out.report.merge(check_A0_products(products), "L=" + std::to_string(products));
    return out;
}

CriterionResult criterion_transfer(const SuiteConfig& cfg) {
    CriterionResult out{6, "transfer", Report("transfer contractions"), {}};
    const std::size_t L = std::min<std::size_t>(cfg.order, 6);
    const std::vector<std::pair<Algebra, std::size_t>> runs{
        {Algebra::H, 10}, {Algebra::P, 11}, {Algebra::A, L}, {Algebra::Ax, L}};
    for (const auto& [algebra, bound] : runs) {
        const std::string name = algebra_name(algebra);
        const TransferResult t = run_transfer(algebra, bound, cfg.cap);
        out.report.merge(t.report, name );
        out.report.add(name + "/termination", !t.nontermination, t.nontermination.value_or(""));
        out.notes.push_back(name + " (bound " + std::to_string(bound) + ", judged on length <= " +
                            std::to_string(t.window) + ")");
        for (const auto& d : t.diagnostics) out.notes.push_back("  " + d);
    }
    return out;
}

CriterionResult criterion_hodge(const SuiteConfig& cfg) {
    CriterionResult out{7, "hodge", Report("Hodge decomposition"), {}};
    const auto reports = parallel_reports(cfg.hodge_instances, cfg.threads, [&](std::size_t k) {
        Report r;
        guarded(r, "instance", [&] {
            const Contraction c = homology_contraction(random_complex(cfg.seed + k));
            r.merge(validate_structure(c));
            r.merge(hodge_decomposition_check(c));
            r.add("compar", compar_classify(weak_to_pseudo(c.as_weak())).holds);
        });
        return r;
    });
    tally_into(out.report, reports, cfg.seed);
    return out;
}

namespace {

void expect_unestablished(Report& r, const std::string& label, const std::function<void()>& f) {
    try {
        f();
        r.add(label, false, "returned a kit");
    } catch (const InvertibilityUnestablished& e) {
        const int code = exit_code_for(std::current_exception());
        r.add(label, code == 3, std::string(e.what()) + "; exit " + std::to_string(code));
    } catch (const Error& e) {
        r.add(label, false, std::string("unexpected error: ") + error_text(e));
    }
}

Perturbation zero_perturbation(const ChainComplex& N) {
    return {N, GradedMap::zero(N.module(), N.module(), -1)};
}

void identical(Report& r, const std::string& label, bool same) { r.add(label, same, same ? "" : "output differs"); }

Report zero_pseudo(const Pseudocontraction& s) {
    Report r;
    const Perturbation p = zero_perturbation(s.N);
    const PseudoResult pr = perturb_pseudo(s, p);
    const auto id = GradedMap::identity(s.N.module());
    identical(r, "zero-pseudo", pr.pseudo.N.d() == s.N.d() && pr.pseudo.tau == s.tau && pr.pseudo.h == s.h &&
                                    pr.kit.alpha == id && pr.kit.beta == id);
    return r;
}

template <class S>
bool same_weak_data(const S& out, const S& in, const GradedMap& Dcal) {
    return out.N.d() == in.N.d() && out.M.d() == in.M.d() && out.pi == in.pi && out.nabla == in.nabla &&
           out.h == in.h && Dcal.is_zero();
}

Report zero_weak(const WeakContraction& w) {
    Report r;
    const WeakResult wr = perturb_weak(w, zero_perturbation(w.N));
    identical(r, "zero-weak", same_weak_data(wr.weak, w, wr.Dcal));
    return r;
}

Report zero_contraction(const Contraction& c) {
    Report r;
    const ContractionResult cr = perturb_contraction(c, zero_perturbation(c.N));
    identical(r, "zero-contraction", same_weak_data(cr.contraction, c, cr.Dcal));
    return r;
}

}  // namespace

CriterionResult criterion_degenerate(const SuiteConfig& cfg) {
    CriterionResult out{8, "degenerate", Report("degenerate inputs"), {}};
    const ConeExample cone = cone_example(1);
    expect_unestablished(out.report, "cone-pseudo",
                         [&] { (void)perturb_pseudo(cone.pseudo, cone.perturbation, cfg.cap); });
    expect_unestablished(out.report, "cone-contraction",
                         [&] { (void)perturb_contraction(cone.contraction, cone.perturbation, cfg.cap); });
    expect_unestablished(out.report, "cone-kit",
                         [&] { (void)build_kit(Structure{cone.pseudo}, cone.perturbation, cfg.cap); });

    guarded(out.report, "zero-fixed", [&] {
        const StandardExample ex = standard_example();
        out.report.merge(zero_contraction(ex.contraction), "standard");
        out.report.merge(zero_weak(ex.contraction.as_weak()), "standard");
        out.report.merge(zero_pseudo(weak_to_pseudo(ex.contraction.as_weak())), "standard");
        out.report.merge(zero_pseudo(cone.pseudo), "cone");
        out.report.merge(zero_contraction(cone.contraction), "cone");
        out.report.merge(zero_pseudo(scaled_cone_pseudo()), "scaled-cone");
    });

    const std::size_t n = std::min<std::size_t>(cfg.instances, 20);
    const auto reports = parallel_reports(n, cfg.threads, [&](std::size_t k) {
        Report r;
        guarded(r, "instance", [&] {
            const PseudoInstance pi = random_pseudo_instance(cfg.seed + k);
            r.merge(zero_pseudo(pi.pseudo));
            r.merge(zero_weak(pseudo_to_weak(pi.pseudo)));
            r.merge(zero_contraction(random_contraction_instance(cfg.seed + k).contraction));
        });
        return r;
    });
    tally_into(out.report, reports, cfg.seed);
    return out;
}

const std::vector<std::string>& criterion_names() {
    static const std::vector<std::string> names{"structural", "identities", "pseudo",     "ordinary",
                                                "a0",         "transfer",   "hodge",      "degenerate"};
    return names;
}

CriterionResult run_criterion(const std::string& name, const SuiteConfig& cfg, bool traces) {
    if (name == "structural") return criterion_structural(cfg, traces);
    if (name == "identities") return criterion_identities(cfg);
    if (name == "pseudo") return criterion_pseudo_lemma(cfg);
    if (name == "ordinary") return criterion_ordinary_lemma(cfg);
    if (name == "a0") return criterion_a0(cfg);
    if (name == "transfer") return criterion_transfer(cfg);
    if (name == "hodge") return criterion_hodge(cfg);
    if (name == "degenerate") return criterion_degenerate(cfg);
    throw ParseError("verify", "unknown suite \"" + name + "\"");
}

int exit_code_for(const std::exception_ptr& error) {
    try {
        std::rethrow_exception(error);
    } catch (const NonNilpotentError&) {
        return 3;
    } catch (const ParseError&) {
        return 2;
    } catch (const StructuralError&) {
        return 2;
    } catch (const Error&) {
        return 1;
    } catch (...) {
        return 2;
    }
}

}  // namespace hptkit
