#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kk/linalg.hpp"

using namespace kk;

namespace {

Mat from_ints(std::initializer_list<std::initializer_list<int>> rows) {
    const Index r = static_cast<Index>(rows.size());
    const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
    Mat m(r, c);
    Index i = 0;
    for (const auto& row : rows) {
        Index j = 0;
        for (int x : row) m(i, j++) = Fp(x);
        ++i;
    }
    return m;
}

Mat random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
    std::uniform_int_distribution<int> dist(0, static_cast<int>(Fp::modulus()) - 1);
    Mat m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = Fp(dist(rng));
    return m;
}

}  // namespace

TEST_CASE("rref on the spec examples") {
    FieldContext ctx(PrimeField(5));

    Mat id = Mat::Identity(2, 2);
    Rref r1 = rref(id);
    CHECK(r1.rank == 2);
    CHECK(r1.pivots == std::vector<Index>{0, 1});
    CHECK(r1.reduced == id);

    Rref r2 = rref(Mat::Zero(3, 4));
    CHECK(r2.rank == 0);
    CHECK(r2.pivots.empty());
    CHECK(is_zero(r2.reduced));

    // [[1,2],[2,4]] over GF(5): hand row-reduction gives [[1,2],[0,0]]
    Rref r3 = rref(from_ints({{1, 2}, {2, 4}}));
    CHECK(r3.rank == 1);
    CHECK(r3.pivots == std::vector<Index>{0});
    CHECK(r3.reduced == from_ints({{1, 2}, {0, 0}}));
}

TEST_CASE("kernel_basis on the spec examples") {
    FieldContext ctx(PrimeField(7));

    CHECK(kernel_basis(Mat::Identity(3, 3)).rows() == 0);

    Mat k0 = kernel_basis(Mat::Zero(4, 4));
    CHECK(k0 == Mat::Identity(4, 4));

    // x + y = 0 over GF(7): solving by hand gives (1, 6) up to scale
    Mat k1 = kernel_basis(from_ints({{1, 1}}));
    REQUIRE(k1.rows() == 1);
    Fp scale = k1(0, 0);
    CHECK(k1(0, 1) == scale * Fp(6));
}

TEST_CASE("solve on the spec examples") {
    FieldContext ctx(PrimeField(5));

    Mat rhs = from_ints({{1}, {4}});
    auto x = solve(Mat::Identity(2, 2), rhs);
    REQUIRE(x.has_value());
    CHECK(*x == rhs);

    CHECK(!solve(Mat::Zero(2, 2), rhs).has_value());

    // 2 * 3 = 6 = 1 mod 5
    auto y = solve(from_ints({{2}}), from_ints({{1}}));
    REQUIRE(y.has_value());
    CHECK((*y)(0, 0) == Fp(3));
}

TEST_CASE("rank-nullity, idempotence, solve consistency on random matrices") {
    FieldContext ctx(PrimeField(101));
    std::mt19937_64 rng(20240811);

    for (int trial = 0; trial < 40; ++trial) {
        const Index rows = 1 + static_cast<Index>(rng() % 8);
        const Index cols = 1 + static_cast<Index>(rng() % 8);
        Mat m = random_matrix(rng, rows, cols);

        Rref rr = rref(m);
        Mat k = kernel_basis(m);
        CHECK(rr.rank + k.rows() == cols);
        CHECK(rref(rr.reduced).reduced == rr.reduced);
        for (Index i = 0; i < k.rows(); ++i)
            CHECK(is_zero(m * k.row(i).transpose()));

        Mat x = random_matrix(rng, cols, 2);
        auto back = solve(m, m * x);
        REQUIRE(back.has_value());
        CHECK(is_zero(m * *back - m * x));
    }
}

TEST_CASE("intersection dimension formula on random subspaces") {
    FieldContext ctx(PrimeField(101));
    std::mt19937_64 rng(7777);

    for (int trial = 0; trial < 30; ++trial) {
        const Index n = 4 + static_cast<Index>(rng() % 5);
        Mat u = random_matrix(rng, 1 + static_cast<Index>(rng() % 4), n);
        Mat v = random_matrix(rng, 1 + static_cast<Index>(rng() % 4), n);
        const Index du = rank_of(u), dv = rank_of(v);
        const Index dsum = rank_of(stack_rows(u, v));
        Mat w = intersection_of_row_spaces(u, v);
        CHECK(w.rows() == du + dv - dsum);
        for (Index i = 0; i < w.rows(); ++i) {
            CHECK(rows_contained_in(w.row(i), u));
            CHECK(rows_contained_in(w.row(i), v));
        }
    }
}

TEST_CASE("quotient_map projects onto a complement") {
    FieldContext ctx(PrimeField(101));
    std::mt19937_64 rng(31337);

    for (int trial = 0; trial < 30; ++trial) {
        const Index n = 3 + static_cast<Index>(rng() % 5);
        Mat sub = random_matrix(rng, 1 + static_cast<Index>(rng() % 3), n);
        const Index r = rank_of(sub);
        QuotientMap qm = quotient_map(sub, n);
        CHECK(qm.projection.rows() == n - r);
        // the subspace maps to zero
        CHECK(is_zero(qm.projection * sub.transpose()));
        // kept coordinates map to the standard basis of the quotient
        for (Index t = 0; t < static_cast<Index>(qm.kept.size()); ++t) {
            Vec e = Vec::Zero(n);
            e(qm.kept[static_cast<std::size_t>(t)]) = Fp(1);
            Vec img = qm.projection * e;
            for (Index s = 0; s < img.size(); ++s) CHECK(img(s) == (s == t ? Fp(1) : Fp(0)));
        }
    }
}
