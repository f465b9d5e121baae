#pragma once

#include "kk/algebra.hpp"
#include "kk/module.hpp"

namespace kk {

/// Stock algebras used by the verification corpus and the test suite.

/// Exterior algebra on n generators: loops x_0..x_{n-1} on one vertex,
/// relations x_i^2 and x_i x_j + x_j x_i for i < j.
inline PresentedAlgebra exterior_algebra(int n, const PrimeField& field, int degree_bound) {
    std::vector<Arrow> arrows;
    for (int i = 0; i < n; ++i) arrows.push_back({i, 0, 0});
    Quiver q(1, arrows);
    FieldContext ctx(field);
    std::vector<PathElement> rels;
    auto loop = [&](int i, int j) {
        PathWord w;
        w.word = {i, j};
        w.src = w.tgt = 0;
        return w;
    };
    for (int i = 0; i < n; ++i)
        rels.push_back(make_path_element(q, {{Fp(1), loop(i, i)}}));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            rels.push_back(make_path_element(q, {{Fp(1), loop(i, j)}, {Fp(1), loop(j, i)}}));
    return build_algebra(q, std::move(rels), field, degree_bound);
}

/// Polynomial ring on n variables (truncated at the degree bound):
/// commutator relations x_i x_j - x_j x_i.
inline PresentedAlgebra truncated_polynomial(int n, const PrimeField& field, int degree_bound) {
    std::vector<Arrow> arrows;
    for (int i = 0; i < n; ++i) arrows.push_back({i, 0, 0});
    Quiver q(1, arrows);
    FieldContext ctx(field);
    std::vector<PathElement> rels;
    auto loop = [&](int i, int j) {
        PathWord w;
        w.word = {i, j};
        w.src = w.tgt = 0;
        return w;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            rels.push_back(make_path_element(q, {{Fp(1), loop(i, j)}, {-Fp(1), loop(j, i)}}));
    return build_algebra(q, std::move(rels), field, degree_bound);
}

/// k[x]/(x^e): one loop, one monomial relation of degree e.
inline PresentedAlgebra truncated_power_algebra(int e, const PrimeField& field, int degree_bound) {
    Quiver q(1, {{0, 0, 0}});
    FieldContext ctx(field);
    PathWord w;
    w.word.assign(static_cast<std::size_t>(e), 0);
    w.src = w.tgt = 0;
    std::vector<PathElement> rels{make_path_element(q, {{Fp(1), w}})};
    return build_algebra(q, std::move(rels), field, degree_bound);
}

/// Two vertices, a single arrow 0 -> 1, no relations.
inline PresentedAlgebra two_vertex_example(const PrimeField& field, int degree_bound) {
    Quiver q(2, {{0, 0, 1}});
    return build_algebra(q, {}, field, degree_bound);
}

/// Semisimple: vertices only, no arrows.
inline PresentedAlgebra semisimple_algebra(int n, const PrimeField& field, int degree_bound) {
    Quiver q(n, {});
    return build_algebra(q, {}, field, degree_bound);
}

/// Deterministic pseudo-random module: a quotient of a small sum of
/// projectives by a randomly generated invariant submodule, realized on
/// a window inside [0, window_top].
GradedModule random_module(const PresentedAlgebra& a, std::uint64_t seed, int window_top = 6);

}  // namespace kk
