#include "kk/corpus.hpp"

#include <random>

namespace kk {

GradedModule random_module(const PresentedAlgebra& a, std::uint64_t seed, int window_top) {
    FieldContext ctx(a.field());
    std::mt19937_64 rng(seed);
    const int nv = a.quiver().vertex_count();
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };

    const int gens = 1 + pick(2);
    GradedModule p;
    for (int g = 0; g < gens; ++g) {
        const int v = pick(nv);
        const int t = pick(3);
        GradedModule summand = projective(a, v, t, std::min(window_top, t + a.degree_bound()));
        p = g == 0 ? summand : direct_sum(p, summand);
    }

    // seed a few radical vectors, then close under the arrow actions
    SubspaceFamily rows = SubspaceFamily::empty_like(p);
    const int seeds = 1 + pick(3);
    for (int s = 0; s < seeds; ++s) {
        const int d = p.lo() + 1 + pick(std::max(p.hi() - p.lo(), 1));
        if (d > p.hi()) continue;
        const int v = pick(nv);
        const int n = p.dim(d, v);
        if (n == 0) continue;
        Mat vec(1, n);
        for (int j = 0; j < n; ++j) vec(0, j) = Fp(static_cast<int>(rng() % Fp::modulus()));
        rows.at(d, v) = stack_rows(rows.at(d, v), vec);
    }
    const auto& q = a.quiver();
    for (int d = p.lo(); d < p.hi(); ++d)
        for (int x = 0; x < q.arrow_count(); ++x) {
            const Arrow& ar = q.arrow(x);
            const Mat img = (p.action(x, d) * rows.at(d, ar.src).transpose()).transpose();
            rows.at(d + 1, ar.tgt) = row_space_basis(stack_rows(rows.at(d + 1, ar.tgt), img));
        }
    return quotient_module(p, rows).module;
}

}  // namespace kk
