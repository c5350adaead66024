#include "hptkit/perturbation.hpp"

#include <set>
#include <sstream>

#include "hptkit/errors.hpp"
#include "hptkit/excore.hpp"
#include "hptkit/linalg.hpp"

namespace hptkit {

namespace {

void check_equal(Report& report, const std::string& label, const GradedMap& lhs, const GradedMap& rhs,
                 const Window* window = nullptr) {
    const auto diff = first_difference(lhs, rhs, window);
    report.add(label, !diff, diff.value_or(""));
}

GradedMap zero_like(const GradedMap& f) { return GradedMap::zero(f.source(), f.target(), f.degree()); }

std::size_t cap_for(const ChainComplex& N, std::optional<std::size_t> cap) {
    return cap.value_or(default_cap(*N.module()));
}

NeumannSeries certified_series(const GradedMap& u, std::size_t cap, const char* name) {
    try {
        return neumann_series(u, cap);
    } catch (const NonNilpotentError& e) {
        throw InvertibilityUnestablished(name, e.iterations());
    }
}

// Term-by-term sum of (−u)ⁿ applied on the right of `left` and the left of `right`:
// Σ left (−u)ⁿ right. Returns the sum and the number of nonzero terms.
std::pair<GradedMap, std::size_t> explicit_sum(const GradedMap& left, const GradedMap& u, const GradedMap& right,
                                               std::size_t cap) {
    const GradedMap minus_u = -u;
    GradedMap power = GradedMap::identity(u.source());
    GradedMap sum = compose(left, compose(power, right));
    std::size_t terms = 1;
    while (true) {
        power = compose(minus_u, power);
        if (power.is_zero()) break;
        if (terms >= cap) {
            throw NonNilpotentError("explicit series did not terminate within " + std::to_string(cap) + " terms",
                                    terms);
        }
        sum += compose(left, compose(power, right));
        ++terms;
    }
    return {std::move(sum), terms};
}

void require_same_base(const PerturbationInput& in, const Perturbation& p) {
    if (!same_module(in.N.module(), p.base.module()) || in.N.d() != p.base.d()) {
        throw ContractViolation("perturbation is defined on a different complex than the structure");
    }
}

}  // namespace

Report check_perturbation(const Perturbation& p) {
    const auto& N = p.base.module();
    if (p.del.degree() != -1 || !same_module(p.del.source(), N) || !same_module(p.del.target(), N)) {
        throw StructuralError("a perturbation must be a degree -1 endomorphism of the base module");
    }
    Report report("perturbation");
    const GradedMap& d = p.base.d();
    const GradedMap sq = compose(d, p.del) + compose(p.del, d) + compose(p.del, p.del);
    check_equal(report, "perturbation-square-zero", sq, zero_like(sq));
    return report;
}

ChainComplex perturbed_complex(const Perturbation& p) {
    const Report r = check_perturbation(p);
    if (!r.passed()) throw ContractViolation("(d + ∂)² ≠ 0: " + r.checks().front().detail);
    return ChainComplex(p.base.module(), p.base.d() + p.del);
}

PerturbationInput perturbation_input(const Pseudocontraction& s) {
    return {s.N, GradedMap::identity(s.N.module()) - s.tau, s.h, std::nullopt, std::nullopt, std::nullopt};
}

PerturbationInput perturbation_input(const WeakContraction& s) {
    return {s.N, compose(s.nabla, s.pi), s.h, s.M, s.pi, s.nabla};
}

PerturbationInput perturbation_input(const Contraction& s) { return perturbation_input(s.as_weak()); }

PerturbationInput perturbation_input(const Structure& s) {
    return std::visit([](const auto& v) { return perturbation_input(v); }, s);
}

PerturbedKit build_kit(const PerturbationInput& in, const Perturbation& p, std::optional<std::size_t> cap) {
    require_same_base(in, p);
    {
        const Report r = check_perturbation(p);
        if (!r.passed()) throw ContractViolation("build_kit: (d + ∂)² ≠ 0: " + r.checks().front().detail);
    }
    const std::size_t limit = cap_for(in.N, cap);
    const GradedMap& del = p.del;

    NeumannSeries a = certified_series(compose(in.h, del), limit, "N + h∂");
    NeumannSeries b = certified_series(compose(del, in.h), limit, "N + ∂h");

    const GradedMap id = GradedMap::identity(in.N.module());
    if (compose(a.value, id + compose(in.h, del)) != id || compose(b.value, id + compose(del, in.h)) != id) {
        throw InternalConsistencyError("build_kit: Neumann sums are not inverses");
    }

    PerturbedKit kit{a.value, b.value, product({a.value, in.t, b.value}), compose(a.value, in.h),
                     std::nullopt, std::nullopt, std::nullopt, a.terms, b.terms};
    if (kit.h_del != compose(in.h, kit.beta)) throw InvariantViolation("build_kit: αh ≠ hβ");

    if (in.M) {
        kit.nabla_del = compose(kit.alpha, *in.nabla);
        kit.pi_del = compose(*in.pi, kit.beta);
        kit.Dcal = product({*in.pi, del, *kit.nabla_del});
        if (*kit.Dcal != product({*kit.pi_del, del, *in.nabla})) {
            throw InvariantViolation("build_kit: π∂α∇ ≠ πβ∂∇");
        }
    }
    return kit;
}

PerturbedKit build_kit(const Structure& s, const Perturbation& p, std::optional<std::size_t> cap) {
    const Report r = validate_structure(s);
    if (!r.passed()) throw ContractViolation("build_kit: invalid " + r.subject() + ":\n" + r.to_text());
    return build_kit(perturbation_input(s), p, cap);
}

Report verify_kit_identities(const PerturbedKit& kit, const PerturbationInput& in, const Perturbation& p) {
    const auto& N = in.N.module();
    const GradedMap id = GradedMap::identity(N);
    const GradedMap& d = in.N.d();
    const GradedMap& del = p.del;
    const GradedMap& h = in.h;
    const GradedMap tau = id - in.t;
    const GradedMap del2 = compose(del, del);

    Report report("kit identities");
    check_equal(report, "insp3", kit.beta + product({del, kit.alpha, h}), id);
    check_equal(report, "insp4", kit.alpha + product({h, kit.beta, del}), id);
    const GradedMap du = compose(tau, del) + compose(h, del2);
    const GradedMap dv = compose(del, tau) + compose(del2, h);
    check_equal(report, "dif1", compose(d, kit.alpha) - compose(kit.alpha, d), -product({kit.alpha, du, kit.alpha}));
    check_equal(report, "dif2", compose(d, kit.beta) - compose(kit.beta, d), product({kit.beta, dv, kit.beta}));
    check_equal(report, "comm", compose(del, kit.alpha), compose(kit.beta, del));
    check_equal(report, "comm2", compose(kit.alpha, h), compose(h, kit.beta));
    if (kit.nabla_del && kit.pi_del) {
        check_equal(report, "plainly", kit.t_del, compose(*kit.nabla_del, *kit.pi_del));
    }
    return report;
}

Report series_formulas_check(const PerturbedKit& kit, const PerturbationInput& in, const Perturbation& p,
                             std::optional<std::size_t> cap) {
    const std::size_t limit = cap_for(in.N, cap);
    const auto& N = in.N.module();
    const GradedMap id = GradedMap::identity(N);
    const GradedMap hd = compose(in.h, p.del);
    const GradedMap dh = compose(p.del, in.h);

    Report report("explicit series");
    auto line = [&report](const std::string& label, const std::pair<GradedMap, std::size_t>& sum,
                          const GradedMap& expected) {
        const auto diff = first_difference(sum.first, expected);
        report.add(label, !diff, diff ? *diff : std::to_string(sum.second) + " terms");
    };

    line("series-h_del", explicit_sum(id, hd, in.h, limit), kit.h_del);
    // t_∂ = Σ(−h∂)ⁿ t Σ(−∂h)ⁿ
    const auto left = explicit_sum(id, hd, id, limit);
    const auto right = explicit_sum(id, dh, id, limit);
    const auto td = product({left.first, in.t, right.first});
    {
        const auto diff = first_difference(td, kit.t_del);
        report.add("series-t_del", !diff,
                   diff ? *diff : std::to_string(left.second) + " + " + std::to_string(right.second) + " terms");
    }
    if (in.M && kit.nabla_del && kit.pi_del && kit.Dcal) {
        line("series-nabla_del", explicit_sum(id, hd, *in.nabla, limit), *kit.nabla_del);
        line("series-pi_del", explicit_sum(*in.pi, dh, id, limit), *kit.pi_del);
        line("series-Dcal", explicit_sum(compose(*in.pi, p.del), hd, *in.nabla, limit), *kit.Dcal);
    }
    return report;
}

Report kit_properties(const PerturbedKit& kit, const Perturbation& p, const Window* window) {
    const GradedMap dd = p.base.d() + p.del;
    const GradedMap id = GradedMap::identity(p.base.module());
    Report report("kit properties");
    const GradedMap hh = compose(kit.h_del, kit.h_del);
    check_equal(report, "h_del-square", hh, zero_like(hh), window);
    check_equal(report, "t_del-chain", compose(dd, kit.t_del), compose(kit.t_del, dd), window);
    check_equal(report, "h_del-homotopy", compose(dd, kit.h_del) + compose(kit.h_del, dd), id - kit.t_del, window);
    return report;
}

PseudoResult perturb_pseudo(const Pseudocontraction& s, const Perturbation& p, std::optional<std::size_t> cap) {
    PerturbedKit kit = build_kit(Structure{s}, p, cap);
    const ChainComplex Nd = perturbed_complex(p);
    Pseudocontraction out{Nd, GradedMap::identity(Nd.module()) - kit.t_del, kit.h_del};
    Report report = validate_structure(out);
    if (!report.passed()) {
        throw InvariantViolation("perturbed data is not a pseudocontraction:\n" + report.to_text());
    }
    return {std::move(out), std::move(kit), std::move(report)};
}

Report content_isomorphism_check(const PerturbedKit& kit, const ChainComplex& M) {
    Report report("content isomorphism");
    if (!kit.nabla_del) throw ContractViolation("content_isomorphism_check: kit has no M side");
    const auto& nabla = *kit.nabla_del;
    const auto& N = kit.t_del.source();
    std::set<int> degrees;
    for (int deg : N->degrees()) degrees.insert(deg);
    for (int deg : M.module()->degrees()) degrees.insert(deg);

    std::string image_fail;
    std::string iso_fail;
    for (int deg : degrees) {
        const auto t = linalg::block(kit.t_del, deg);
        const auto n = linalg::block(nabla, deg);
        linalg::Matrix joint(t.rows(), t.cols() + n.cols());
        for (std::size_t r = 0; r < t.rows(); ++r) {
            for (std::size_t c = 0; c < t.cols(); ++c) joint(r, c) = t(r, c);
            for (std::size_t c = 0; c < n.cols(); ++c) joint(r, t.cols() + c) = n(r, c);
        }
        const std::size_t rt = linalg::rank(t);
        const std::size_t rj = linalg::rank(joint);
        const std::size_t rn = linalg::rank(n);
        const std::size_t dm = M.module()->dim(deg);
        if (rj != rt && image_fail.empty()) {
            image_fail = "degree " + std::to_string(deg) + ": rank [t_∂|∇_∂] = " + std::to_string(rj) +
                         " > rank t_∂ = " + std::to_string(rt);
        }
        if ((rn != dm || rn != rt) && iso_fail.empty()) {
            iso_fail = "degree " + std::to_string(deg) + ": rank ∇_∂ = " + std::to_string(rn) + ", dim M = " +
                       std::to_string(dm) + ", rank t_∂ = " + std::to_string(rt);
        }
    }
    report.add("tech3-image", image_fail.empty(), image_fail);
    report.add("tech3-iso", iso_fail.empty(), iso_fail);
    return report;
}

WeakResult perturb_weak(const WeakContraction& w, const Perturbation& p, std::optional<std::size_t> cap) {
    PerturbedKit kit = build_kit(Structure{w}, p, cap);
    const ChainComplex Nd = perturbed_complex(p);
    const GradedMap Dcal = *kit.Dcal;
    const ChainComplex MD(w.M.module(), w.M.d() + Dcal);

    WeakContraction out{MD, Nd, *kit.pi_del, *kit.nabla_del, kit.h_del};
    Report report("perturbed weak contraction");
    {
        const Report sq = validate_complex(MD);
        report.add("MD-square-zero", sq.passed(), sq.checks().front().detail);
    }
    report.merge(validate_structure(out));
    check_equal(report, "tech1", compose(*kit.pi_del, Nd.d()), compose(MD.d(), *kit.pi_del));
    check_equal(report, "tech2", compose(Nd.d(), *kit.nabla_del), compose(*kit.nabla_del, MD.d()));
    report.merge(content_isomorphism_check(kit, MD));
    if (!report.passed()) {
        throw InvariantViolation("perturbed data is not a weak contraction:\n" + report.to_text());
    }
    return {std::move(out), Dcal, std::move(kit), std::move(report)};
}

ContractionResult perturb_contraction(const Contraction& c, const Perturbation& p, std::optional<std::size_t> cap) {
    PerturbedKit kit = build_kit(Structure{c}, p, cap);
    const ChainComplex Nd = perturbed_complex(p);
    const GradedMap Dcal = *kit.Dcal;
    const ChainComplex MD(c.M.module(), c.M.d() + Dcal);
    Contraction out{MD, Nd, *kit.pi_del, *kit.nabla_del, kit.h_del};

    Report report("perturbed contraction");
    {
        const Report sq = validate_complex(MD);
        report.add("MD-square-zero", sq.passed(), sq.checks().front().detail);
    }
    report.merge(validate_structure(out));
    check_equal(report, "tech1", compose(*kit.pi_del, Nd.d()), compose(MD.d(), *kit.pi_del));
    check_equal(report, "tech2", compose(Nd.d(), *kit.nabla_del), compose(*kit.nabla_del, MD.d()));
    if (!report.passed()) {
        throw InvariantViolation("perturbed data is not a contraction:\n" + report.to_text());
    }
    return {std::move(out), Dcal, std::move(kit), std::move(report)};
}

}  // namespace hptkit
