#include "hptkit/examples.hpp"

namespace hptkit {

StandardExample standard_example() {
    const auto N = make_module({{1, {"b"}}, {0, {"a", "c"}}});
    const auto M = make_module({{0, {"a"}}});
    GradedMap d(N, N, -1);
    d.set("b", "c", 1);
    GradedMap pi(N, M, 0);
    pi.set("a", "a", 1);
    GradedMap nabla(M, N, 0);
    nabla.set("a", "a", 1);
    GradedMap h(N, N, 1);
    h.set("c", "b", 1);
    GradedMap del(N, N, -1);
    del.set("b", "a", 2);
    const ChainComplex NC(N, d);
    return {Contraction{ChainComplex(M), NC, pi, nabla, h}, Perturbation{NC, del}};
}

ConeExample cone_example(const Scalar& lambda) {
    const auto N = make_module({{1, {"e1"}}, {0, {"e0"}}});
    const auto Z = make_module({});
    GradedMap d(N, N, -1);
    d.set("e1", "e0", 1);
    GradedMap h(N, N, 1);
    h.set("e0", "e1", 1);
    GradedMap del(N, N, -1);
    del.set("e1", "e0", lambda);
    const ChainComplex NC(N, d);
    return {Pseudocontraction{NC, GradedMap::identity(N), h},
            Contraction{ChainComplex(Z), NC, GradedMap(N, Z, 0), GradedMap(Z, N, 0), h}, Perturbation{NC, del}};
}

Pseudocontraction scaled_cone_pseudo() {
    const auto N = make_module({{1, {"e1"}}, {0, {"e0"}}});
    GradedMap d(N, N, -1);
    d.set("e1", "e0", 2);
    GradedMap h(N, N, 1);
    h.set("e0", "e1", 1);
    return {ChainComplex(N, d), Scalar(2) * GradedMap::identity(N), h};
}

}  // namespace hptkit
