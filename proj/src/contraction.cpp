#include "hptkit/contraction.hpp"

#include <sstream>

#include "hptkit/errors.hpp"
#include "hptkit/linalg.hpp"

namespace hptkit {

namespace {

void require_shape(const GradedMap& f, const ModulePtr& source, const ModulePtr& target, int degree,
                   const char* name) {
    if (f.degree() != degree) {
        throw StructuralError(std::string(name) + " must have degree " + std::to_string(degree) + ", has " +
                              std::to_string(f.degree()));
    }
    if (!same_module(f.source(), source) || !same_module(f.target(), target)) {
        throw StructuralError(std::string(name) + " has the wrong source or target module");
    }
}

void check_equal(Report& report, const char* label, const GradedMap& lhs, const GradedMap& rhs,
                 const Window* window) {
    const auto diff = first_difference(lhs, rhs, window);
    report.add(label, !diff, diff.value_or(""));
}

void check_zero(Report& report, const char* label, const GradedMap& f, const Window* window) {
    check_equal(report, label, f, GradedMap::zero(f.source(), f.target(), f.degree()), window);
}

// Rank of f in each degree equals the dimension of its target (surjective) or source (injective).
void check_rank(Report& report, const char* label, const GradedMap& f, bool surjective) {
    for (int deg : (surjective ? f.target() : f.source())->degrees()) {
        const int src = surjective ? deg - f.degree() : deg;
        const std::size_t want = surjective ? f.target()->dim(deg) : f.source()->dim(deg);
        const std::size_t got = linalg::rank_at(f, src);
        if (got != want) {
            std::ostringstream os;
            os << "degree " << deg << ": rank " << got << " < " << want;
            report.add(label, false, os.str());
            return;
        }
    }
    report.add(label, true);
}

Report validate_weak_part(const ModulePtr& m_mod, const ChainComplex& M, const ChainComplex& N, const GradedMap& pi,
                          const GradedMap& nabla, const GradedMap& h, const Window* window, const char* subject) {
    require_shape(pi, N.module(), m_mod, 0, "pi");
    require_shape(nabla, m_mod, N.module(), 0, "nabla");
    require_shape(h, N.module(), N.module(), 1, "h");
    Report report(subject);
    // Chain-map checks for π run over columns of N, for ∇ over columns of M; the
    // window (phrased in N's basis) applies to both only where it makes sense.
    check_equal(report, "pi-chain", compose(M.d(), pi), compose(pi, N.d()), window);
    check_equal(report, "nabla-chain", compose(N.d(), nabla), compose(nabla, M.d()), nullptr);
    check_rank(report, "pi-surjective", pi, true);
    check_rank(report, "nabla-injective", nabla, false);
    check_equal(report, "co1", homotopy_boundary(N, h), GradedMap::identity(N.module()) - compose(nabla, pi), window);
    check_zero(report, "side1", compose(h, h), window);
    return report;
}

}  // namespace

GradedMap homotopy_boundary(const ChainComplex& N, const GradedMap& h) {
    return compose(N.d(), h) + compose(h, N.d());
}

Report validate_structure(const Pseudocontraction& s, const Window* window) {
    const auto& N = s.N.module();
    require_shape(s.tau, N, N, 0, "tau");
    require_shape(s.h, N, N, 1, "h");
    Report report("pseudocontraction");
    check_equal(report, "pc1", homotopy_boundary(s.N, s.h), s.tau, window);
    check_zero(report, "pc2", compose(s.h, s.h), window);
    check_equal(report, "tau-chain", compose(s.N.d(), s.tau), compose(s.tau, s.N.d()), window);
    return report;
}

Report validate_structure(const WeakContraction& s, const Window* window) {
    return validate_weak_part(s.M.module(), s.M, s.N, s.pi, s.nabla, s.h, window, "weak contraction");
}

Report validate_structure(const Contraction& s, const Window* window) {
    Report report = validate_weak_part(s.M.module(), s.M, s.N, s.pi, s.nabla, s.h, window, "contraction");
    check_equal(report, "co0", compose(s.pi, s.nabla), GradedMap::identity(s.M.module()), nullptr);
    check_zero(report, "side-pi-h", compose(s.pi, s.h), window);
    check_zero(report, "side-h-nabla", compose(s.h, s.nabla), nullptr);
    return report;
}

Report validate_structure(const HodgeData& s, const Window* window) {
    const auto& X = s.X.module();
    require_shape(s.t, X, X, 0, "t");
    require_shape(s.h, X, X, 1, "h");
    Report report("abstract Hodge decomposition");
    check_zero(report, "h2", compose(s.h, s.h), window);
    check_equal(report, "Dh", homotopy_boundary(s.X, s.h), GradedMap::identity(X) - s.t, window);
    check_equal(report, "Dt", compose(s.X.d(), s.t), compose(s.t, s.X.d()), window);
    check_equal(report, "ah4", compose(s.t, s.t), s.t, window);
    const GradedMap th = compose(s.t, s.h);
    const GradedMap ht = compose(s.h, s.t);
    const auto d1 = first_difference(th, GradedMap::zero(X, X, 1), window);
    const auto d2 = first_difference(ht, GradedMap::zero(X, X, 1), window);
    report.add("ah5", !d1 && !d2, d1 ? "th: " + *d1 : (d2 ? "ht: " + *d2 : ""));
    return report;
}

Report validate_structure(const Structure& s, const Window* window) {
    return std::visit([window](const auto& v) { return validate_structure(v, window); }, s);
}

Pseudocontraction weak_to_pseudo(const WeakContraction& w) {
    const Report r = validate_structure(w);
    if (!r.passed()) throw ContractViolation("weak_to_pseudo: invalid weak contraction:\n" + r.to_text());
    return Pseudocontraction{w.N, GradedMap::identity(w.N.module()) - compose(w.nabla, w.pi), w.h};
}

WeakContraction pseudo_to_weak(const Pseudocontraction& p) {
    const Report r = validate_structure(p);
    if (!r.passed()) throw ContractViolation("pseudo_to_weak: invalid pseudocontraction:\n" + r.to_text());
    const GradedMap t = GradedMap::identity(p.N.module()) - p.tau;
    ImageSubcomplex image = image_subcomplex(p.N, t);
    WeakContraction w{image.complex, p.N, image.corestrict(t), image.inclusion, p.h};
    const Report out = validate_structure(w);
    if (!out.passed()) throw InternalConsistencyError("pseudo_to_weak produced:\n" + out.to_text());
    return w;
}

ComparClassification compar_classify(const Pseudocontraction& p) {
    const Report r = validate_structure(p);
    if (!r.passed()) throw ContractViolation("compar_classify: invalid pseudocontraction:\n" + r.to_text());
    const auto& N = p.N.module();
    const GradedMap t = GradedMap::identity(N) - p.tau;

    ComparClassification out;
    out.hodge_axioms = validate_structure(HodgeData{p.N, t, p.h});

    out.idempotent_side = Report("ah4 + ah5");
    check_equal(out.idempotent_side, "ah4", compose(t, t), t, nullptr);
    check_zero(out.idempotent_side, "ah5-th", compose(t, p.h), nullptr);
    check_zero(out.idempotent_side, "ah5-ht", compose(p.h, t), nullptr);

    const ImageSubcomplex image = image_subcomplex(p.N, t);
    out.side_conditions = Report("side conditions on (tN ⇄ N, h)");
    check_zero(out.side_conditions, "hh", compose(p.h, p.h), nullptr);
    check_zero(out.side_conditions, "th", compose(t, p.h), nullptr);
    check_zero(out.side_conditions, "hj", compose(p.h, image.inclusion), nullptr);

    const bool i = out.hodge_axioms.passed();
    const bool ii = out.idempotent_side.passed();
    const bool iii = out.side_conditions.passed();
    if (i != ii || ii != iii) {
        throw InvariantViolation("compar_classify: conditions disagree (i=" + std::to_string(i) +
                                 ", ii=" + std::to_string(ii) + ", iii=" + std::to_string(iii) + ")");
    }
    out.holds = i;
    return out;
}

Report hodge_decomposition_check(const Contraction& c) {
    if (!c.M.d().is_zero()) {
        throw ContractViolation("hodge_decomposition_check: small complex must have zero differential");
    }
    const auto& N = c.N.module();
    const GradedMap hd = compose(c.h, c.N.d());
    Report report("Hodge decomposition");
    for (int deg : N->degrees()) {
        const std::size_t dim = N->dim(deg);
        std::vector<linalg::Vector> span;
        const auto boundaries = linalg::column_space_basis(linalg::block(c.N.d(), deg + 1));
        const auto hd_part = linalg::column_space_basis(linalg::block(hd, deg));

        // 𝓗_j = ker h ∩ ker d: kernel of the stacked matrix [h_j; d_j]
        const auto hj = linalg::block(c.h, deg);
        const auto dj = linalg::block(c.N.d(), deg);
        linalg::Matrix stacked(hj.rows() + dj.rows(), dim);
        for (std::size_t col = 0; col < dim; ++col) {
            for (std::size_t r = 0; r < hj.rows(); ++r) stacked(r, col) = hj(r, col);
            for (std::size_t r = 0; r < dj.rows(); ++r) stacked(hj.rows() + r, col) = dj(r, col);
        }
        const auto harmonic = linalg::nullspace(stacked);

        for (const auto& v : boundaries) span.push_back(v);
        for (const auto& v : harmonic) span.push_back(v);
        for (const auto& v : hd_part) span.push_back(v);

        const std::size_t total = boundaries.size() + harmonic.size() + hd_part.size();
        const std::size_t r = linalg::rank(linalg::Matrix::from_columns(dim, span));
        std::ostringstream os;
        os << boundaries.size() << " + " << harmonic.size() << " + " << hd_part.size() << " = " << total
           << ", dim " << dim << ", rank " << r << ", homology " << c.M.module()->dim(deg);
        const bool ok = total == dim && r == dim && harmonic.size() == c.M.module()->dim(deg);
        report.add("deg " + std::to_string(deg), ok, os.str());
    }
    return report;
}

}  // namespace hptkit
