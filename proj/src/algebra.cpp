#include "kk/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kk {

struct PresentedAlgebra::Impl {
    Quiver quiver;
    PrimeField field{101};
    int degree_bound{0};
    std::vector<PathElement> relations;

    struct DegreeData {
        std::vector<PathWord> basis;                          // flat, lex order
        std::vector<std::vector<std::vector<int>>> by_pair;   // [src][tgt] -> flat indices
        std::vector<Mat> leftmul;                             // per arrow: dim_d x dim_{d-1}
    };
    std::vector<DegreeData> deg;  // index d in [0, D]
};

namespace {

constexpr int kDimGuard = 100000;  // desk scale; fail loudly past this

using Impl = PresentedAlgebra::Impl;

void build_pair_index(Impl::DegreeData& dd, int nv) {
    dd.by_pair.assign(static_cast<std::size_t>(nv),
                      std::vector<std::vector<int>>(static_cast<std::size_t>(nv)));
    for (std::size_t i = 0; i < dd.basis.size(); ++i) {
        const PathWord& w = dd.basis[i];
        dd.by_pair[static_cast<std::size_t>(w.src)][static_cast<std::size_t>(w.tgt)].push_back(
            static_cast<int>(i));
    }
}

}  // namespace

PresentedAlgebra build_algebra(const Quiver& q, std::vector<PathElement> relations,
                               const PrimeField& field, int degree_bound) {
    if (degree_bound < 2) throw std::invalid_argument("build_algebra: degree bound must be >= 2");
    for (const PathElement& r : relations) {
        if (r.degree < 2) throw std::invalid_argument("build_algebra: relation of degree < 2");
        if (r.degree > degree_bound)
            throw std::invalid_argument("build_algebra: degree bound below a relation degree");
        for (const auto& [c, w] : r.terms) {
            (void)c;
            if (w.src != r.src || w.tgt != r.tgt)
                throw std::invalid_argument("build_algebra: relation with mismatched endpoints");
        }
    }

    FieldContext ctx(field);
    auto impl = std::make_shared<Impl>();
    impl->quiver = q;
    impl->field = field;
    impl->degree_bound = degree_bound;
    impl->relations = std::move(relations);
    impl->deg.resize(static_cast<std::size_t>(degree_bound) + 1);

    const int nv = q.vertex_count();
    const int na = q.arrow_count();

    // degree 0: one idempotent per vertex
    auto& d0 = impl->deg[0];
    for (int v = 0; v < nv; ++v) d0.basis.push_back(idempotent_path(v));
    build_pair_index(d0, nv);

    for (int d = 1; d <= degree_bound; ++d) {
        auto& prev = impl->deg[static_cast<std::size_t>(d) - 1];
        auto& cur = impl->deg[static_cast<std::size_t>(d)];
        const int prev_dim = static_cast<int>(prev.basis.size());

        // step space: pairs (b, a) with src(a) == tgt(b), ordered b-major
        // so that step order matches lex order of the extended paths
        std::vector<std::pair<int, int>> steps;  // (prev flat index, arrow index)
        std::vector<std::vector<int>> step_of(static_cast<std::size_t>(prev_dim),
                                              std::vector<int>(static_cast<std::size_t>(na), -1));
        for (int b = 0; b < prev_dim; ++b) {
            for (int a = 0; a < na; ++a) {
                if (q.arrow(a).src != prev.basis[static_cast<std::size_t>(b)].tgt) continue;
                step_of[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] =
                    static_cast<int>(steps.size());
                steps.emplace_back(b, a);
            }
        }
        const int s = static_cast<int>(steps.size());
        if (s > kDimGuard)
            throw std::runtime_error("build_algebra: degree " + std::to_string(d) +
                                     " exceeds the desk-scale dimension guard");

        // kernel rows: r * b for every relation r of degree e <= d and
        // every basis element b of A_{d-e} with tgt(b) == src(r)
        std::vector<Vec> kernel_rows;
        for (const PathElement& r : impl->relations) {
            if (r.degree > d) continue;
            const int e = r.degree;
            const auto& low = impl->deg[static_cast<std::size_t>(d - e)];
            for (int b0 = 0; b0 < static_cast<int>(low.basis.size()); ++b0) {
                if (low.basis[static_cast<std::size_t>(b0)].tgt != r.src) continue;
                Vec row = Vec::Zero(s);
                for (const auto& [c, w] : r.terms) {
                    // u = (first e-1 arrows of w) * b, then the last arrow
                    // stays in step coordinates
                    Vec u = Vec::Zero(static_cast<Index>(low.basis.size()));
                    u(b0) = Fp(1);
                    for (int k = 0; k + 1 < e; ++k)
                        u = impl->deg[static_cast<std::size_t>(d - e + k + 1)]
                                .leftmul[static_cast<std::size_t>(w.word[static_cast<std::size_t>(k)])] *
                            u;
                    const int last = w.word.back();
                    const auto& mid = impl->deg[static_cast<std::size_t>(d) - 1];
                    for (int bp = 0; bp < static_cast<int>(mid.basis.size()); ++bp) {
                        if (u(bp).is_zero()) continue;
                        const int st = step_of[static_cast<std::size_t>(bp)][static_cast<std::size_t>(last)];
                        if (st < 0)
                            throw std::logic_error("build_algebra: non-composable relation term");
                        row(st) += c * u(bp);
                    }
                }
                kernel_rows.push_back(std::move(row));
            }
        }

        Mat kernel(static_cast<Index>(kernel_rows.size()), s);
        for (std::size_t i = 0; i < kernel_rows.size(); ++i) kernel.row(static_cast<Index>(i)) = kernel_rows[i].transpose();

        const QuotientMap qm = quotient_map(kernel, s);
        // pivot columns of the projection are the lex-least independent
        // steps; the rref expresses every step in that basis
        Rref nf = rref(qm.projection);
        const Index q_dim = static_cast<Index>(qm.kept.size());
        if (nf.rank != q_dim)
            throw std::logic_error("build_algebra: quotient projection lost rank");

        cur.basis.reserve(static_cast<std::size_t>(q_dim));
        for (Index t = 0; t < q_dim; ++t) {
            const auto& [b, a] = steps[static_cast<std::size_t>(nf.pivots[static_cast<std::size_t>(t)])];
            PathWord w = prev.basis[static_cast<std::size_t>(b)];
            w.word.push_back(a);
            w.tgt = q.arrow(a).tgt;
            cur.basis.push_back(std::move(w));
        }
        build_pair_index(cur, nv);

        cur.leftmul.assign(static_cast<std::size_t>(na), Mat::Zero(q_dim, prev_dim));
        for (int b = 0; b < prev_dim; ++b)
            for (int a = 0; a < na; ++a) {
                const int st = step_of[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
                if (st >= 0) cur.leftmul[static_cast<std::size_t>(a)].col(b) = nf.reduced.col(st);
            }
    }

    return PresentedAlgebra(std::move(impl));
}

const Quiver& PresentedAlgebra::quiver() const { return impl_->quiver; }
const PrimeField& PresentedAlgebra::field() const { return impl_->field; }
int PresentedAlgebra::degree_bound() const { return impl_->degree_bound; }
const std::vector<PathElement>& PresentedAlgebra::relations() const { return impl_->relations; }

int PresentedAlgebra::dim(int d) const {
    if (d < 0) return 0;
    if (d > impl_->degree_bound)
        throw std::out_of_range("PresentedAlgebra::dim: degree beyond bound");
    return static_cast<int>(impl_->deg[static_cast<std::size_t>(d)].basis.size());
}

int PresentedAlgebra::dim(int d, int src, int tgt) const {
    if (d < 0) return 0;
    return static_cast<int>(pair_indices(d, src, tgt).size());
}

const std::vector<PathWord>& PresentedAlgebra::basis(int d) const {
    return impl_->deg.at(static_cast<std::size_t>(d)).basis;
}

const std::vector<int>& PresentedAlgebra::pair_indices(int d, int src, int tgt) const {
    return impl_->deg.at(static_cast<std::size_t>(d))
        .by_pair.at(static_cast<std::size_t>(src))
        .at(static_cast<std::size_t>(tgt));
}

int PresentedAlgebra::src_of(int d, int flat) const {
    return impl_->deg.at(static_cast<std::size_t>(d)).basis.at(static_cast<std::size_t>(flat)).src;
}
int PresentedAlgebra::tgt_of(int d, int flat) const {
    return impl_->deg.at(static_cast<std::size_t>(d)).basis.at(static_cast<std::size_t>(flat)).tgt;
}

const Mat& PresentedAlgebra::leftmul(int arrow_index, int from_degree) const {
    return impl_->deg.at(static_cast<std::size_t>(from_degree) + 1)
        .leftmul.at(static_cast<std::size_t>(arrow_index));
}

Vec PresentedAlgebra::multiply(int e, const Vec& y, int d, const Vec& x) const {
    FieldContext ctx(impl_->field);
    if (e + d > impl_->degree_bound)
        throw std::out_of_range("PresentedAlgebra::multiply: product degree beyond bound");
    Vec out = Vec::Zero(dim(e + d));
    for (int i = 0; i < dim(e); ++i) {
        if (y(i).is_zero()) continue;
        const PathWord& w = basis(e)[static_cast<std::size_t>(i)];
        // an idempotent projects onto its vertex block
        Vec acc = Vec::Zero(dim(d));
        for (int j = 0; j < dim(d); ++j)
            if (tgt_of(d, j) == w.src) acc(j) = x(j);
        int cur = d;
        for (int a : w.word) {
            acc = leftmul(a, cur) * acc;
            ++cur;
        }
        out += y(i) * acc;
    }
    return out;
}

Vec PresentedAlgebra::evaluate_word(const PathWord& w) const {
    FieldContext ctx(impl_->field);
    if (w.length() > impl_->degree_bound)
        throw std::out_of_range("PresentedAlgebra::evaluate_word: degree beyond bound");
    Vec acc = Vec::Zero(dim(0));
    // the idempotent at the word's source
    for (int i = 0; i < dim(0); ++i)
        if (basis(0)[static_cast<std::size_t>(i)].src == w.src) acc(i) = Fp(1);
    int cur = 0;
    for (int a : w.word) {
        acc = leftmul(a, cur) * acc;
        ++cur;
    }
    return acc;
}

bool PresentedAlgebra::is_quadratic() const {
    for (const PathElement& r : impl_->relations)
        if (r.degree != 2) return false;
    return true;
}

bool PresentedAlgebra::is_finite_dimensional() const {
    for (int d = 1; d <= impl_->degree_bound; ++d)
        if (dim(d) == 0) return true;
    return false;
}

int PresentedAlgebra::top_degree() const {
    if (!is_finite_dimensional())
        throw std::logic_error("top_degree: not finite-dimensional within the bound");
    int top = 0;
    for (int d = 0; d <= impl_->degree_bound; ++d)
        if (dim(d) > 0) top = d;
    return top;
}

PresentedAlgebra opposite(const PresentedAlgebra& a) {
    const Quiver rev = a.quiver().reversed();
    std::vector<PathElement> rel;
    rel.reserve(a.relations().size());
    for (const PathElement& r : a.relations()) {
        std::vector<std::pair<Fp, PathWord>> terms;
        for (const auto& [c, w] : r.terms) {
            PathWord rw;
            rw.word.assign(w.word.rbegin(), w.word.rend());
            rw.src = w.tgt;
            rw.tgt = w.src;
            terms.emplace_back(c, std::move(rw));
        }
        rel.push_back(make_path_element(rev, std::move(terms)));
    }
    return build_algebra(rev, std::move(rel), a.field(), a.degree_bound());
}

namespace {

// composable length-2 travel words (a, b), ordered lexicographically
std::vector<std::pair<int, int>> paths2(const Quiver& q) {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < q.arrow_count(); ++a)
        for (int b = 0; b < q.arrow_count(); ++b)
            if (q.arrow(a).tgt == q.arrow(b).src) out.emplace_back(a, b);
    return out;
}

}  // namespace

PresentedAlgebra quadratic_dual(const PresentedAlgebra& a) {
    if (!a.is_quadratic())
        throw std::invalid_argument("quadratic_dual: algebra has a relation of degree != 2");
    FieldContext ctx(a.field());
    const Quiver& q = a.quiver();
    const Quiver rev = q.reversed();

    const auto p2 = paths2(q);
    const auto p2_op = paths2(rev);
    std::map<std::pair<int, int>, int> op_index;
    for (std::size_t i = 0; i < p2_op.size(); ++i) op_index[p2_op[i]] = static_cast<int>(i);

    // pairing matrix: Q-word (a, b) pairs with the reversed op-word (b, a)
    Mat rels = Mat::Zero(static_cast<Index>(a.relations().size()), static_cast<Index>(p2_op.size()));
    std::map<std::pair<int, int>, int> q_index;
    for (std::size_t i = 0; i < p2.size(); ++i) q_index[p2[i]] = static_cast<int>(i);
    for (std::size_t r = 0; r < a.relations().size(); ++r) {
        for (const auto& [c, w] : a.relations()[r].terms) {
            const std::pair<int, int> key{w.word[1], w.word[0]};
            rels(static_cast<Index>(r), op_index.at(key)) += c;
        }
    }

    Mat ann = kernel_basis(rels);
    std::vector<PathElement> dual_rels;
    for (Index i = 0; i < ann.rows(); ++i) {
        std::vector<std::pair<Fp, PathWord>> terms;
        for (Index j = 0; j < ann.cols(); ++j) {
            if (ann(i, j).is_zero()) continue;
            const auto& [x, y] = p2_op[static_cast<std::size_t>(j)];
            PathWord w;
            w.word = {x, y};
            w.src = rev.arrow(x).src;
            w.tgt = rev.arrow(y).tgt;
            terms.emplace_back(ann(i, j), std::move(w));
        }
        dual_rels.push_back(make_path_element(rev, std::move(terms)));
    }
    return build_algebra(rev, std::move(dual_rels), a.field(), a.degree_bound());
}

HilbertTable hilbert_table(const PresentedAlgebra& a) {
    HilbertTable h;
    const int nv = a.quiver().vertex_count();
    for (int d = 0; d <= a.degree_bound(); ++d) {
        Eigen::MatrixXi m(nv, nv);
        for (int i = 0; i < nv; ++i)
            for (int j = 0; j < nv; ++j) m(i, j) = a.dim(d, i, j);
        h.degrees.push_back(std::move(m));
    }
    return h;
}

bool quadratic_confluence_certificate(const PresentedAlgebra& a) {
    if (!a.is_quadratic() || a.degree_bound() < 3) return false;
    FieldContext ctx(a.field());
    const Quiver& q = a.quiver();
    const auto p2 = paths2(q);
    if (a.relations().empty()) return true;  // free quadratic

    // leading word = lex-greatest: reduce with columns in reverse order
    std::map<std::pair<int, int>, int> q_index;
    for (std::size_t i = 0; i < p2.size(); ++i) q_index[p2[i]] = static_cast<int>(i);
    Mat rel(static_cast<Index>(a.relations().size()), static_cast<Index>(p2.size()));
    rel.setZero();
    const Index n2 = static_cast<Index>(p2.size());
    for (std::size_t r = 0; r < a.relations().size(); ++r)
        for (const auto& [c, w] : a.relations()[r].terms)
            rel(static_cast<Index>(r), n2 - 1 - q_index.at({w.word[0], w.word[1]})) += c;
    Rref rr = rref(std::move(rel));
    std::set<std::pair<int, int>> leading;
    for (Index p : rr.pivots) leading.insert(p2[static_cast<std::size_t>(n2 - 1 - p)]);

    // standard length-3 words avoid leading factors
    long standard3 = 0;
    for (int x = 0; x < q.arrow_count(); ++x)
        for (int y = 0; y < q.arrow_count(); ++y) {
            if (q.arrow(x).tgt != q.arrow(y).src || leading.count({x, y})) continue;
            for (int z = 0; z < q.arrow_count(); ++z) {
                if (q.arrow(y).tgt != q.arrow(z).src || leading.count({y, z})) continue;
                ++standard3;
            }
        }
    return standard3 == a.dim(3);
}

}  // namespace kk
