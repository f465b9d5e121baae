#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kk/corpus.hpp"

using namespace kk;

namespace {

// Independent oracle: realize A_d literally as the span of all length-d
// paths modulo the two-sided ideal component span{ u.r.w }, by dense
// enumeration. Only usable at small bounds; that is the point.
struct BruteForce {
    const Quiver& q;
    std::vector<std::vector<PathWord>> paths;  // per degree

    explicit BruteForce(const Quiver& quiver, int max_deg) : q(quiver) {
        paths.resize(static_cast<std::size_t>(max_deg) + 1);
        for (int v = 0; v < q.vertex_count(); ++v) paths[0].push_back(idempotent_path(v));
        for (int d = 1; d <= max_deg; ++d)
            for (const PathWord& w : paths[static_cast<std::size_t>(d) - 1])
                for (int a = 0; a < q.arrow_count(); ++a) {
                    if (q.arrow(a).src != w.tgt) continue;
                    PathWord nw = w;
                    nw.word.push_back(a);
                    nw.tgt = q.arrow(a).tgt;
                    paths[static_cast<std::size_t>(d)].push_back(std::move(nw));
                }
    }

    int index_of(int d, const PathWord& w) const {
        const auto& list = paths[static_cast<std::size_t>(d)];
        for (std::size_t i = 0; i < list.size(); ++i)
            if (list[i] == w) return static_cast<int>(i);
        throw std::logic_error("oracle: path not found");
    }

    int dim_of_degree(const std::vector<PathElement>& rels, int d) const {
        const auto& all = paths[static_cast<std::size_t>(d)];
        std::vector<Vec> rows;
        for (const PathElement& r : rels) {
            if (r.degree > d) continue;
            for (int len_u = 0; len_u + r.degree <= d; ++len_u)
            for (const PathWord& u : paths[static_cast<std::size_t>(len_u)]) {
                // u is the travel prefix, suffix completes the degree
                if (u.tgt != r.src) continue;
                for (const PathWord& suffix : suffix_candidates(r, d, u)) {
                    Vec row = Vec::Zero(static_cast<Index>(all.size()));
                    for (const auto& [c, mid] : r.terms) {
                        PathWord full = u;
                        full.word.insert(full.word.end(), mid.word.begin(), mid.word.end());
                        full.word.insert(full.word.end(), suffix.word.begin(), suffix.word.end());
                        full.tgt = suffix.length() ? suffix.tgt : mid.tgt;
                        row(index_of(d, full)) += c;
                    }
                    rows.push_back(std::move(row));
                }
            }
        }
        Mat m(static_cast<Index>(rows.size()), static_cast<Index>(all.size()));
        for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Index>(i)) = rows[i].transpose();
        return static_cast<int>(all.size()) - static_cast<int>(rank_of(m));
    }

  private:
    std::vector<PathWord> suffix_candidates(const PathElement& r, int d, const PathWord& u) const {
        std::vector<PathWord> out;
        const int len = d - r.degree - u.length();
        if (len < 0) return out;
        for (const PathWord& w : paths[static_cast<std::size_t>(len)])
            if (w.src == r.tgt) out.push_back(w);
        return out;
    }
};

int oracle_dim(const PresentedAlgebra& a, int d) {
    FieldContext ctx(a.field());
    BruteForce bf(a.quiver(), d);
    return bf.dim_of_degree(a.relations(), d);
}

}  // namespace

TEST_CASE("k[x]/(x^2) dimensions (span/quotient oracle)") {
    PresentedAlgebra a = truncated_power_algebra(2, PrimeField(101), 6);
    const std::vector<int> expected{1, 1, 0, 0, 0, 0, 0};
    for (int d = 0; d <= 6; ++d) {
        CHECK(a.dim(d) == expected[static_cast<std::size_t>(d)]);
        CHECK(a.dim(d) == oracle_dim(a, d));
    }
}

TEST_CASE("exterior(2) dimensions (exterior basis oracle)") {
    PresentedAlgebra a = exterior_algebra(2, PrimeField(101), 6);
    const std::vector<int> expected{1, 2, 1, 0, 0, 0, 0};
    for (int d = 0; d <= 6; ++d) {
        CHECK(a.dim(d) == expected[static_cast<std::size_t>(d)]);
        CHECK(a.dim(d) == oracle_dim(a, d));
    }
    CHECK(a.is_finite_dimensional());
    CHECK(a.top_degree() == 2);
}

TEST_CASE("exterior(3) dimensions match binomials and the ideal oracle") {
    PresentedAlgebra a = exterior_algebra(3, PrimeField(101), 6);
    const std::vector<int> expected{1, 3, 3, 1, 0, 0, 0};
    for (int d = 0; d <= 6; ++d) {
        CHECK(a.dim(d) == expected[static_cast<std::size_t>(d)]);
        CHECK(a.dim(d) == oracle_dim(a, d));
    }
}

TEST_CASE("free algebra on one loop is k[x] degreewise") {
    Quiver q(1, {{0, 0, 0}});
    PresentedAlgebra a = build_algebra(q, {}, PrimeField(101), 4);
    for (int d = 0; d <= 4; ++d) CHECK(a.dim(d) == 1);
}

TEST_CASE("truncated polynomial ring dimensions (monomial count oracle)") {
    PresentedAlgebra a = truncated_polynomial(2, PrimeField(101), 12);
    for (int d = 0; d <= 12; ++d) CHECK(a.dim(d) == d + 1);
    PresentedAlgebra b = truncated_polynomial(3, PrimeField(101), 8);
    for (int d = 0; d <= 8; ++d) CHECK(b.dim(d) == (d + 1) * (d + 2) / 2);
    CHECK(oracle_dim(b, 5) == 21);
}

TEST_CASE("build_algebra rejects malformed input") {
    Quiver q(1, {{0, 0, 0}});
    FieldContext ctx(PrimeField(5));
    PathWord x2;
    x2.word = {0, 0};
    x2.src = x2.tgt = 0;
    auto rel = make_path_element(q, {{Fp(1), x2}});
    CHECK_THROWS_AS(build_algebra(q, {rel}, PrimeField(5), 1), std::invalid_argument);

    PathWord deg1;
    deg1.word = {0};
    deg1.src = deg1.tgt = 0;
    auto rel1 = make_path_element(q, {{Fp(1), deg1}});
    CHECK_THROWS_AS(build_algebra(q, {rel1}, PrimeField(5), 4), std::invalid_argument);

    PathWord bad;
    bad.word = {0};
    bad.src = bad.tgt = 0;
    CHECK_THROWS_AS(make_path_element(q, {{Fp(1), x2}, {Fp(1), bad}}), std::invalid_argument);
}

TEST_CASE("relation soundness: every relation evaluates to zero") {
    for (const PresentedAlgebra& a :
         {exterior_algebra(3, PrimeField(101), 6), truncated_power_algebra(3, PrimeField(7), 6),
          truncated_polynomial(2, PrimeField(101), 8)}) {
        FieldContext ctx(a.field());
        for (const PathElement& r : a.relations()) {
            Vec acc = Vec::Zero(a.dim(r.degree));
            for (const auto& [c, w] : r.terms) acc += c * a.evaluate_word(w);
            CHECK(is_zero(acc));
        }
    }
}

TEST_CASE("associativity on basis triples") {
    for (const PresentedAlgebra& a :
         {exterior_algebra(2, PrimeField(101), 6), truncated_power_algebra(3, PrimeField(101), 6),
          two_vertex_example(PrimeField(101), 4)}) {
        FieldContext ctx(a.field());
        const int D = a.degree_bound();
        // (arrow * b) * c == arrow * (b * c) exhaustively; general triples
        // follow by linearity and are sampled below
        for (int d2 = 0; d2 <= D - 1; ++d2)
            for (int d3 = 0; d3 + d2 + 1 <= D; ++d3)
                for (int ib = 0; ib < a.dim(d2); ++ib)
                    for (int ic = 0; ic < a.dim(d3); ++ic) {
                        Vec b = Vec::Zero(a.dim(d2));
                        b(ib) = Fp(1);
                        Vec c = Vec::Zero(a.dim(d3));
                        c(ic) = Fp(1);
                        Vec bc = a.multiply(d2, b, d3, c);
                        for (int ia = 0; ia < a.dim(1); ++ia) {
                            Vec x = Vec::Zero(a.dim(1));
                            x(ia) = Fp(1);
                            Vec ab = a.multiply(1, x, d2, b);
                            CHECK(a.multiply(1 + d2, ab, d3, c) == a.multiply(1, x, d2 + d3, bc));
                        }
                    }

        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 50; ++trial) {
            const int d1 = static_cast<int>(rng() % 3), d2 = static_cast<int>(rng() % 3),
                      d3 = static_cast<int>(rng() % 3);
            if (d1 + d2 + d3 > D) continue;
            auto rand_vec = [&](int d) {
                Vec v(a.dim(d));
                for (int i = 0; i < a.dim(d); ++i) v(i) = Fp(static_cast<int>(rng() % 101));
                return v;
            };
            Vec x = rand_vec(d1), y = rand_vec(d2), z = rand_vec(d3);
            CHECK(a.multiply(d1 + d2, a.multiply(d1, x, d2, y), d3, z) ==
                  a.multiply(d1, x, d2 + d3, a.multiply(d2, y, d3, z)));
        }
    }
}

TEST_CASE("opposite algebra transposes the Hilbert table and is an involution") {
    for (const PresentedAlgebra& a :
         {exterior_algebra(2, PrimeField(101), 6), two_vertex_example(PrimeField(101), 4)}) {
        PresentedAlgebra op = opposite(a);
        HilbertTable ha = hilbert_table(a), hop = hilbert_table(op);
        for (int d = 0; d <= a.degree_bound(); ++d)
            CHECK(hop.degrees[static_cast<std::size_t>(d)] ==
                  ha.degrees[static_cast<std::size_t>(d)].transpose());
        HilbertTable hopop = hilbert_table(opposite(op));
        for (int d = 0; d <= a.degree_bound(); ++d)
            CHECK(hopop.degrees[static_cast<std::size_t>(d)] == ha.degrees[static_cast<std::size_t>(d)]);
    }
}

TEST_CASE("quadratic dual of exterior(2) is the polynomial ring") {
    PresentedAlgebra a = exterior_algebra(2, PrimeField(101), 10);
    PresentedAlgebra dual = quadratic_dual(a);
    for (int d = 0; d <= 10; ++d) CHECK(dual.dim(d) == d + 1);
    // cross-check against the direct commutator presentation
    PresentedAlgebra poly = truncated_polynomial(2, PrimeField(101), 10);
    for (int d = 0; d <= 10; ++d) CHECK(dual.dim(d) == poly.dim(d));
}

TEST_CASE("quadratic dual of k[x]/(x^2) is k[y]") {
    PresentedAlgebra a = truncated_power_algebra(2, PrimeField(101), 8);
    PresentedAlgebra dual = quadratic_dual(a);
    CHECK(dual.relations().empty());
    for (int d = 0; d <= 8; ++d) CHECK(dual.dim(d) == 1);
}

TEST_CASE("double dual restores the Hilbert table") {
    for (int n : {2, 3}) {
        PresentedAlgebra a = exterior_algebra(n, PrimeField(101), 6);
        PresentedAlgebra dd = quadratic_dual(quadratic_dual(a));
        HilbertTable ha = hilbert_table(a), hdd = hilbert_table(dd);
        for (int d = 0; d <= 6; ++d)
            CHECK(ha.degrees[static_cast<std::size_t>(d)] == hdd.degrees[static_cast<std::size_t>(d)]);
    }
}

TEST_CASE("dual degree-2 dimension accounting") {
    // rank-nullity of the annihilator: independent dual relations
    // = (degree-2 dual path space) - (independent quadratic relations of A)
    for (const PresentedAlgebra& a :
         {exterior_algebra(2, PrimeField(101), 4), exterior_algebra(3, PrimeField(101), 4),
          truncated_power_algebra(2, PrimeField(101), 4)}) {
        PresentedAlgebra dual = quadratic_dual(a);
        int paths2 = 0;
        const Quiver& q = a.quiver();
        for (int x = 0; x < q.arrow_count(); ++x)
            for (int y = 0; y < q.arrow_count(); ++y)
                if (q.arrow(x).tgt == q.arrow(y).src) ++paths2;
        const int independent_of_a = paths2 - a.dim(2);
        const int independent_of_dual = paths2 - dual.dim(2);
        CHECK(independent_of_dual == paths2 - independent_of_a);
        CHECK(static_cast<int>(dual.relations().size()) == independent_of_dual);
    }
}

TEST_CASE("hilbert_table H_0 is the identity") {
    PresentedAlgebra a = two_vertex_example(PrimeField(101), 4);
    CHECK(hilbert_table(a).degrees[0] == Eigen::MatrixXi::Identity(2, 2));
}

TEST_CASE("confluence certificate holds on the PBW corpus and fails off it") {
    CHECK(quadratic_confluence_certificate(exterior_algebra(2, PrimeField(101), 6)));
    CHECK(quadratic_confluence_certificate(exterior_algebra(3, PrimeField(101), 6)));
    CHECK(quadratic_confluence_certificate(truncated_power_algebra(2, PrimeField(101), 6)));
    CHECK(quadratic_confluence_certificate(truncated_polynomial(2, PrimeField(101), 6)));
    CHECK(quadratic_confluence_certificate(truncated_polynomial(3, PrimeField(101), 6)));
    CHECK(quadratic_confluence_certificate(two_vertex_example(PrimeField(101), 4)));
    // cubic relation: certificate does not apply
    CHECK(!quadratic_confluence_certificate(truncated_power_algebra(3, PrimeField(101), 6)));
}
