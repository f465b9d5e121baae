#include "kk/module.hpp"

#include <algorithm>
#include <random>

namespace kk {

namespace {

int checked_nv(const PresentedAlgebra& a) { return a.quiver().vertex_count(); }

}  // namespace

GradedModule GradedModule::zero(const PresentedAlgebra& a, int at) {
    FieldContext ctx(a.field());
    Data d;
    d.algebra = a;
    d.lo = at;
    d.hi = at + a.degree_bound();
    const int nv = checked_nv(a);
    d.dims.assign(static_cast<std::size_t>(d.hi - d.lo) + 1, std::vector<int>(static_cast<std::size_t>(nv), 0));
    d.act.assign(static_cast<std::size_t>(d.hi - d.lo),
                 std::vector<Mat>(static_cast<std::size_t>(a.quiver().arrow_count()), Mat::Zero(0, 0)));
    return GradedModule(std::make_shared<Data>(std::move(d)));
}

GradedModule GradedModule::build(Data data, bool check_relations) {
    const PresentedAlgebra a = data.algebra;  // keep a handle across the move below
    if (!a.valid()) throw std::invalid_argument("GradedModule: missing algebra");
    FieldContext ctx(a.field());
    const int nv = checked_nv(a);
    const int na = a.quiver().arrow_count();

    if (data.hi >= data.lo) {
        if (data.hi - data.lo > a.degree_bound())
            throw std::invalid_argument("GradedModule: window exceeds the degree bound");
        const std::size_t span = static_cast<std::size_t>(data.hi - data.lo);
        if (data.dims.size() != span + 1) throw std::invalid_argument("GradedModule: dims size");
        for (const auto& row : data.dims)
            if (static_cast<int>(row.size()) != nv)
                throw std::invalid_argument("GradedModule: dims row size");
        if (data.act.size() != span) throw std::invalid_argument("GradedModule: act size");
        for (std::size_t k = 0; k < span; ++k) {
            if (static_cast<int>(data.act[k].size()) != na)
                throw std::invalid_argument("GradedModule: act row size");
            for (int x = 0; x < na; ++x) {
                const Arrow& ar = a.quiver().arrow(x);
                const Mat& m = data.act[k][static_cast<std::size_t>(x)];
                if (m.rows() != data.dims[k + 1][static_cast<std::size_t>(ar.tgt)] ||
                    m.cols() != data.dims[k][static_cast<std::size_t>(ar.src)])
                    throw std::invalid_argument("GradedModule: action block shape");
            }
        }
    }

    GradedModule mod(std::make_shared<Data>(std::move(data)));
    if (check_relations) {
        for (const PathElement& r : a.relations()) {
            for (int d = mod.lo(); d + r.degree <= mod.hi(); ++d) {
                Mat acc = Mat::Zero(mod.dim(d + r.degree), mod.dim(d));
                for (const auto& [c, w] : r.terms) acc += c * mod.path_action(w, d);
                if (!is_zero(acc))
                    throw std::invalid_argument("GradedModule: relation acts nonzero at degree " +
                                                std::to_string(d));
            }
        }
    }
    return mod;
}

int GradedModule::dim(int d, int v) const {
    if (d < data_->lo || d > data_->hi) return 0;
    return data_->dims[static_cast<std::size_t>(d - data_->lo)][static_cast<std::size_t>(v)];
}

int GradedModule::dim(int d) const {
    if (d < data_->lo || d > data_->hi) return 0;
    int s = 0;
    for (int x : data_->dims[static_cast<std::size_t>(d - data_->lo)]) s += x;
    return s;
}

int GradedModule::offset(int d, int v) const {
    int off = 0;
    for (int u = 0; u < v; ++u) off += dim(d, u);
    return off;
}

int GradedModule::total_dim() const {
    int s = 0;
    for (int d = lo(); d <= hi(); ++d) s += dim(d);
    return s;
}

const Mat& GradedModule::action(int arrow, int d) const {
    return data_->act.at(static_cast<std::size_t>(d - data_->lo)).at(static_cast<std::size_t>(arrow));
}

Mat GradedModule::action_flat(int arrow, int d) const {
    Mat out = Mat::Zero(dim(d + 1), dim(d));
    if (d < lo() || d + 1 > hi()) return out;
    const Arrow& ar = algebra().quiver().arrow(arrow);
    const Mat& b = action(arrow, d);
    out.block(offset(d + 1, ar.tgt), offset(d, ar.src), b.rows(), b.cols()) = b;
    return out;
}

Mat GradedModule::path_action(const PathWord& w, int d) const {
    FieldContext ctx(algebra().field());
    Mat acc = Mat::Zero(dim(d), dim(d));
    const int off = offset(d, w.src), block = dim(d, w.src);
    for (int i = 0; i < block; ++i) acc(off + i, off + i) = Fp(1);
    int cur = d;
    for (int a : w.word) {
        acc = action_flat(a, cur) * acc;
        ++cur;
    }
    return acc;
}

std::vector<int> GradedModule::dim_vector(int d) const {
    std::vector<int> out(static_cast<std::size_t>(checked_nv(algebra())), 0);
    for (int v = 0; v < checked_nv(algebra()); ++v) out[static_cast<std::size_t>(v)] = dim(d, v);
    return out;
}

bool GradedModule::operator==(const GradedModule& o) const {
    if (!(algebra() == o.algebra()) || lo() != o.lo() || hi() != o.hi()) return false;
    if (data_->dims != o.data_->dims) return false;
    for (std::size_t k = 0; k < data_->act.size(); ++k)
        for (std::size_t x = 0; x < data_->act[k].size(); ++x) {
            const Mat &a = data_->act[k][x], &b = o.data_->act[k][x];
            if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
            if (a.size() > 0 && !(a == b)) return false;
        }
    return true;
}

GradedModuleMap::GradedModuleMap(GradedModule source, GradedModule target,
                                 std::vector<std::vector<Mat>> blocks, bool check)
    : source_(std::move(source)), target_(std::move(target)), blocks_(std::move(blocks)) {
    lo_ = source_.lo();
    hi_ = std::min(source_.hi(), target_.hi());
    const int nv = checked_nv(source_.algebra());
    if (!(source_.algebra() == target_.algebra()))
        throw std::invalid_argument("GradedModuleMap: different algebras");
    if (hi_ >= lo_) {
        if (blocks_.size() != static_cast<std::size_t>(hi_ - lo_) + 1)
            throw std::invalid_argument("GradedModuleMap: blocks size");
        for (int d = lo_; d <= hi_; ++d)
            for (int v = 0; v < nv; ++v) {
                const Mat& b = blocks_[static_cast<std::size_t>(d - lo_)][static_cast<std::size_t>(v)];
                if (b.rows() != target_.dim(d, v) || b.cols() != source_.dim(d, v))
                    throw std::invalid_argument("GradedModuleMap: block shape at degree " +
                                                std::to_string(d));
            }
    }
    if (check && !commutes())
        throw std::invalid_argument("GradedModuleMap: does not commute with the arrow actions");
}

GradedModuleMap GradedModuleMap::zero(const GradedModule& source, const GradedModule& target) {
    FieldContext ctx(source.algebra().field());
    const int lo = source.lo(), hi = std::min(source.hi(), target.hi());
    const int nv = checked_nv(source.algebra());
    std::vector<std::vector<Mat>> blocks;
    for (int d = lo; d <= hi; ++d) {
        std::vector<Mat> row;
        for (int v = 0; v < nv; ++v) row.push_back(Mat::Zero(target.dim(d, v), source.dim(d, v)));
        blocks.push_back(std::move(row));
    }
    return GradedModuleMap(source, target, std::move(blocks), false);
}

GradedModuleMap GradedModuleMap::identity(const GradedModule& m) {
    FieldContext ctx(m.algebra().field());
    const int nv = checked_nv(m.algebra());
    std::vector<std::vector<Mat>> blocks;
    for (int d = m.lo(); d <= m.hi(); ++d) {
        std::vector<Mat> row;
        for (int v = 0; v < nv; ++v) row.push_back(Mat::Identity(m.dim(d, v), m.dim(d, v)));
        blocks.push_back(std::move(row));
    }
    return GradedModuleMap(m, m, std::move(blocks), false);
}

const Mat& GradedModuleMap::block(int d, int v) const {
    return blocks_.at(static_cast<std::size_t>(d - lo_)).at(static_cast<std::size_t>(v));
}

Mat GradedModuleMap::flat(int d) const {
    Mat out = Mat::Zero(target_.dim(d), source_.dim(d));
    if (d < lo_ || d > hi_) return out;
    for (int v = 0; v < checked_nv(source_.algebra()); ++v) {
        const Mat& b = block(d, v);
        out.block(target_.offset(d, v), source_.offset(d, v), b.rows(), b.cols()) = b;
    }
    return out;
}

bool GradedModuleMap::commutes() const {
    FieldContext ctx(source_.algebra().field());
    const auto& q = source_.algebra().quiver();
    for (int d = lo_; d < hi_; ++d) {
        for (int x = 0; x < q.arrow_count(); ++x) {
            const Arrow& ar = q.arrow(x);
            const Mat lhs = block(d + 1, ar.tgt) * source_.action(x, d);
            const Mat rhs = (d >= target_.lo() && d < target_.hi())
                                ? Mat(target_.action(x, d) * block(d, ar.src))
                                : Mat::Zero(lhs.rows(), lhs.cols());
            if (lhs.rows() * lhs.cols() > 0 && !(lhs == rhs)) return false;
            if (rhs.rows() * rhs.cols() > 0 && lhs.size() == 0 && !is_zero(rhs)) return false;
        }
    }
    return true;
}

bool GradedModuleMap::is_zero_map() const {
    for (int d = lo_; d <= hi_; ++d)
        for (int v = 0; v < checked_nv(source_.algebra()); ++v)
            if (!is_zero(block(d, v))) return false;
    return true;
}

GradedModuleMap compose(const GradedModuleMap& g, const GradedModuleMap& f) {
    FieldContext ctx(f.source().algebra().field());
    if (!(f.target() == g.source()))
        throw std::invalid_argument("compose: middle modules differ");
    const GradedModule& m = f.source();
    const GradedModule& p = g.target();
    const int lo = m.lo();
    const int hi = std::min({f.hi(), g.hi(), std::min(m.hi(), p.hi())});
    const int nv = checked_nv(m.algebra());
    std::vector<std::vector<Mat>> blocks;
    for (int d = lo; d <= hi; ++d) {
        std::vector<Mat> row;
        for (int v = 0; v < nv; ++v) {
            if (d >= g.lo() && d <= g.hi() && d >= f.lo())
                row.push_back(Mat(g.block(d, v) * f.block(d, v)));
            else
                row.push_back(Mat::Zero(p.dim(d, v), m.dim(d, v)));
        }
        blocks.push_back(std::move(row));
    }
    // narrower window than canonical is possible; rebuild on a shrunk target view
    GradedModuleMap out = GradedModuleMap::zero(m, p);
    if (hi < out.hi_)
        out.blocks_.resize(static_cast<std::size_t>(std::max(hi - lo + 1, 0)));
    for (int d = lo; d <= hi; ++d)
        out.blocks_[static_cast<std::size_t>(d - lo)] = blocks[static_cast<std::size_t>(d - lo)];
    out.hi_ = hi;
    return out;
}

GradedModuleMap add(const GradedModuleMap& f, const GradedModuleMap& g) {
    FieldContext ctx(f.source().algebra().field());
    if (!(f.source() == g.source()) || !(f.target() == g.target()))
        throw std::invalid_argument("add: map shapes differ");
    GradedModuleMap out = f;
    const int hi = std::min(f.hi(), g.hi());
    out.blocks_.resize(static_cast<std::size_t>(std::max(hi - out.lo_ + 1, 0)));
    out.hi_ = hi;
    for (int d = out.lo_; d <= hi; ++d)
        for (std::size_t v = 0; v < out.blocks_[static_cast<std::size_t>(d - out.lo_)].size(); ++v)
            out.blocks_[static_cast<std::size_t>(d - out.lo_)][v] += g.block(d, static_cast<int>(v));
    return out;
}

GradedModuleMap scale(Fp c, const GradedModuleMap& f) {
    GradedModuleMap out = f;
    for (auto& row : out.blocks_)
        for (Mat& b : row) b *= c;
    return out;
}

SubspaceFamily SubspaceFamily::empty_like(const GradedModule& m) {
    SubspaceFamily s;
    s.lo = m.lo();
    const int nv = checked_nv(m.algebra());
    for (int d = m.lo(); d <= m.hi(); ++d) {
        std::vector<Mat> row;
        for (int v = 0; v < nv; ++v) row.push_back(Mat::Zero(0, m.dim(d, v)));
        s.rows.push_back(std::move(row));
    }
    return s;
}

namespace {

GradedModule restrict_window(const GradedModule& m, int new_hi) {
    if (new_hi >= m.hi()) return m;
    if (new_hi < m.lo()) throw std::invalid_argument("restrict_window: empty window");
    GradedModule::Data d;
    d.algebra = m.algebra();
    d.lo = m.lo();
    d.hi = new_hi;
    for (int deg = m.lo(); deg <= new_hi; ++deg) {
        d.dims.push_back(m.dim_vector(deg));
        if (deg < new_hi) {
            std::vector<Mat> row;
            for (int a = 0; a < m.algebra().quiver().arrow_count(); ++a)
                row.push_back(m.action(a, deg));
            d.act.push_back(std::move(row));
        }
    }
    return GradedModule::build(std::move(d), false);
}

}  // namespace

SubmodulePair submodule(const GradedModule& m, const SubspaceFamily& rows) {
    FieldContext ctx(m.algebra().field());
    const int nv = checked_nv(m.algebra());
    const auto& q = m.algebra().quiver();

    std::vector<std::vector<Mat>> incl;  // [d][v]: m.dim x k.dim columns
    GradedModule::Data data;
    data.algebra = m.algebra();
    data.lo = m.lo();
    data.hi = m.hi();
    for (int d = m.lo(); d <= m.hi(); ++d) {
        std::vector<int> dims;
        std::vector<Mat> inc_row;
        for (int v = 0; v < nv; ++v) {
            Mat basis = row_space_basis(rows.at(d, v));
            dims.push_back(static_cast<int>(basis.rows()));
            inc_row.push_back(basis.transpose());
        }
        data.dims.push_back(std::move(dims));
        incl.push_back(std::move(inc_row));
    }
    for (int d = m.lo(); d < m.hi(); ++d) {
        std::vector<Mat> act_row;
        for (int x = 0; x < q.arrow_count(); ++x) {
            const Arrow& ar = q.arrow(x);
            const Mat img = m.action(x, d) * incl[static_cast<std::size_t>(d - m.lo())][static_cast<std::size_t>(ar.src)];
            auto sol = solve(incl[static_cast<std::size_t>(d + 1 - m.lo())][static_cast<std::size_t>(ar.tgt)], img);
            if (!sol)
                throw std::invalid_argument("submodule: rows are not action-invariant");
            act_row.push_back(std::move(*sol));
        }
        data.act.push_back(std::move(act_row));
    }
    GradedModule sub = GradedModule::build(std::move(data), false);
    GradedModuleMap inclusion(sub, m, std::move(incl));
    return {std::move(sub), std::move(inclusion)};
}

SubmodulePair quotient_module(const GradedModule& m, const SubspaceFamily& rows) {
    FieldContext ctx(m.algebra().field());
    const int nv = checked_nv(m.algebra());
    const auto& q = m.algebra().quiver();

    std::vector<std::vector<QuotientMap>> qms;
    GradedModule::Data data;
    data.algebra = m.algebra();
    data.lo = m.lo();
    data.hi = m.hi();
    std::vector<std::vector<Mat>> proj;
    for (int d = m.lo(); d <= m.hi(); ++d) {
        std::vector<int> dims;
        std::vector<Mat> proj_row;
        std::vector<QuotientMap> qm_row;
        for (int v = 0; v < nv; ++v) {
            QuotientMap qm = quotient_map(rows.at(d, v), m.dim(d, v));
            dims.push_back(static_cast<int>(qm.kept.size()));
            proj_row.push_back(qm.projection);
            qm_row.push_back(std::move(qm));
        }
        data.dims.push_back(std::move(dims));
        proj.push_back(std::move(proj_row));
        qms.push_back(std::move(qm_row));
    }
    for (int d = m.lo(); d < m.hi(); ++d) {
        std::vector<Mat> act_row;
        for (int x = 0; x < q.arrow_count(); ++x) {
            const Arrow& ar = q.arrow(x);
            const auto& qs = qms[static_cast<std::size_t>(d - m.lo())][static_cast<std::size_t>(ar.src)];
            const auto& qt = qms[static_cast<std::size_t>(d + 1 - m.lo())][static_cast<std::size_t>(ar.tgt)];
            // well-defined iff the rows are action-invariant
            const Mat& sub_rows = rows.at(d, ar.src);
            if (sub_rows.rows() > 0 && !is_zero(qt.projection * (m.action(x, d) * sub_rows.transpose())))
                throw std::invalid_argument("quotient_module: rows are not action-invariant");
            Mat section = Mat::Zero(m.dim(d, ar.src), static_cast<Index>(qs.kept.size()));
            for (Index t = 0; t < static_cast<Index>(qs.kept.size()); ++t)
                section(qs.kept[static_cast<std::size_t>(t)], t) = Fp(1);
            act_row.push_back(Mat(qt.projection * (m.action(x, d) * section)));
        }
        data.act.push_back(std::move(act_row));
    }
    GradedModule quot = GradedModule::build(std::move(data), false);
    GradedModuleMap projection(m, quot, std::move(proj));
    return {std::move(quot), std::move(projection)};
}

SubmodulePair kernel(const GradedModuleMap& f) {
    FieldContext ctx(f.source().algebra().field());
    GradedModule m = restrict_window(f.source(), f.hi());
    SubspaceFamily rows = SubspaceFamily::empty_like(m);
    for (int d = m.lo(); d <= m.hi(); ++d)
        for (int v = 0; v < checked_nv(m.algebra()); ++v)
            rows.at(d, v) = kernel_basis(f.block(d, v));
    return submodule(m, rows);
}

SubmodulePair image(const GradedModuleMap& f) {
    FieldContext ctx(f.source().algebra().field());
    GradedModule n = restrict_window(f.target(), f.hi());
    SubspaceFamily rows = SubspaceFamily::empty_like(n);
    for (int d = std::max(n.lo(), f.lo()); d <= f.hi(); ++d)
        for (int v = 0; v < checked_nv(n.algebra()); ++v)
            rows.at(d, v) = row_space_basis(f.block(d, v).transpose());
    return submodule(n, rows);
}

SubmodulePair cokernel(const GradedModuleMap& f) {
    FieldContext ctx(f.source().algebra().field());
    GradedModule n = restrict_window(f.target(), f.hi());
    SubspaceFamily rows = SubspaceFamily::empty_like(n);
    for (int d = std::max(n.lo(), f.lo()); d <= f.hi(); ++d)
        for (int v = 0; v < checked_nv(n.algebra()); ++v)
            rows.at(d, v) = row_space_basis(f.block(d, v).transpose());
    return quotient_module(n, rows);
}

GradedModule shift(const GradedModule& m, int i) {
    GradedModule::Data d = m.data();
    d.lo -= i;
    d.hi -= i;
    return GradedModule::build(std::move(d), false);
}

GradedModule truncate_at_least(const GradedModule& m, int s) {
    if (s <= m.lo()) return m;
    if (s > m.hi()) return GradedModule::zero(m.algebra(), s);
    GradedModule::Data d;
    d.algebra = m.algebra();
    d.lo = s;
    d.hi = m.hi();
    for (int deg = s; deg <= d.hi; ++deg) {
        d.dims.push_back(m.dim_vector(deg));
        if (deg < d.hi) {
            std::vector<Mat> row;
            for (int a = 0; a < m.algebra().quiver().arrow_count(); ++a)
                row.push_back(m.action(a, deg));
            d.act.push_back(std::move(row));
        }
    }
    return GradedModule::build(std::move(d), false);
}

GradedModule quotient_below(const GradedModule& m, int s) {
    GradedModule::Data d;
    d.algebra = m.algebra();
    d.lo = m.lo();
    d.hi = m.hi();
    const int nv = checked_nv(m.algebra());
    const int na = m.algebra().quiver().arrow_count();
    for (int deg = d.lo; deg <= d.hi; ++deg)
        d.dims.push_back(deg < s ? m.dim_vector(deg) : std::vector<int>(static_cast<std::size_t>(nv), 0));
    for (int deg = d.lo; deg < d.hi; ++deg) {
        std::vector<Mat> row;
        for (int a = 0; a < na; ++a) {
            const Arrow& ar = m.algebra().quiver().arrow(a);
            if (deg + 1 < s)
                row.push_back(m.action(a, deg));
            else
                row.push_back(Mat::Zero(d.dims[static_cast<std::size_t>(deg + 1 - d.lo)][static_cast<std::size_t>(ar.tgt)],
                                        d.dims[static_cast<std::size_t>(deg - d.lo)][static_cast<std::size_t>(ar.src)]));
        }
        d.act.push_back(std::move(row));
    }
    return GradedModule::build(std::move(d), false);
}

GradedModule simple(const PresentedAlgebra& a, int vertex, int twist) {
    GradedModule::Data d;
    d.algebra = a;
    d.lo = twist;
    d.hi = twist + a.degree_bound();
    const int nv = checked_nv(a);
    const int na = a.quiver().arrow_count();
    for (int deg = d.lo; deg <= d.hi; ++deg) {
        std::vector<int> row(static_cast<std::size_t>(nv), 0);
        if (deg == twist) row[static_cast<std::size_t>(vertex)] = 1;
        d.dims.push_back(std::move(row));
    }
    for (int deg = d.lo; deg < d.hi; ++deg) {
        std::vector<Mat> row;
        for (int x = 0; x < na; ++x) {
            const Arrow& ar = a.quiver().arrow(x);
            row.push_back(Mat::Zero(d.dims[static_cast<std::size_t>(deg + 1 - d.lo)][static_cast<std::size_t>(ar.tgt)],
                                    d.dims[static_cast<std::size_t>(deg - d.lo)][static_cast<std::size_t>(ar.src)]));
        }
        d.act.push_back(std::move(row));
    }
    return GradedModule::build(std::move(d), false);
}

GradedModule projective(const PresentedAlgebra& a, int vertex, int twist, int top) {
    FieldContext ctx(a.field());
    if (top < 0) top = twist + a.degree_bound();
    if (top < twist || top > twist + a.degree_bound())
        throw std::invalid_argument("projective: window overflow");
    GradedModule::Data d;
    d.algebra = a;
    d.lo = twist;
    d.hi = top;
    const int nv = checked_nv(a);
    const int na = a.quiver().arrow_count();
    for (int deg = twist; deg <= top; ++deg) {
        std::vector<int> row;
        for (int j = 0; j < nv; ++j) row.push_back(a.dim(deg - twist, vertex, j));
        d.dims.push_back(std::move(row));
    }
    for (int deg = twist; deg < top; ++deg) {
        std::vector<Mat> row;
        const int ad = deg - twist;
        for (int x = 0; x < na; ++x) {
            const Arrow& ar = a.quiver().arrow(x);
            const auto& rows_idx = a.pair_indices(ad + 1, vertex, ar.tgt);
            const auto& cols_idx = a.pair_indices(ad, vertex, ar.src);
            const Mat& L = a.leftmul(x, ad);
            Mat b(static_cast<Index>(rows_idx.size()), static_cast<Index>(cols_idx.size()));
            for (std::size_t i = 0; i < rows_idx.size(); ++i)
                for (std::size_t j = 0; j < cols_idx.size(); ++j)
                    b(static_cast<Index>(i), static_cast<Index>(j)) =
                        L(rows_idx[i], cols_idx[j]);
            row.push_back(std::move(b));
        }
        d.act.push_back(std::move(row));
    }
    return GradedModule::build(std::move(d), false);
}

GradedModule truncated_quotient(const PresentedAlgebra& a, int k) {
    FieldContext ctx(a.field());
    if (k < 1 || k > a.degree_bound())
        throw std::invalid_argument("truncated_quotient: k out of range");
    GradedModule::Data d;
    d.algebra = a;
    d.lo = 0;
    d.hi = a.degree_bound();
    const int nv = checked_nv(a);
    const int na = a.quiver().arrow_count();

    // per (degree, tgt vertex): flat algebra indices, ascending
    auto tgt_block = [&](int deg, int v) {
        std::vector<int> idx;
        for (int i = 0; i < nv; ++i)
            for (int f : a.pair_indices(deg, i, v)) idx.push_back(f);
        std::sort(idx.begin(), idx.end());
        return idx;
    };

    for (int deg = 0; deg <= d.hi; ++deg) {
        std::vector<int> row;
        for (int v = 0; v < nv; ++v)
            row.push_back(deg < k ? static_cast<int>(tgt_block(deg, v).size()) : 0);
        d.dims.push_back(std::move(row));
    }
    for (int deg = 0; deg < d.hi; ++deg) {
        std::vector<Mat> row;
        for (int x = 0; x < na; ++x) {
            const Arrow& ar = a.quiver().arrow(x);
            const int rows_n = d.dims[static_cast<std::size_t>(deg + 1)][static_cast<std::size_t>(ar.tgt)];
            const int cols_n = d.dims[static_cast<std::size_t>(deg)][static_cast<std::size_t>(ar.src)];
            Mat b = Mat::Zero(rows_n, cols_n);
            if (deg + 1 < k) {
                const auto ridx = tgt_block(deg + 1, ar.tgt);
                const auto cidx = tgt_block(deg, ar.src);
                const Mat& L = a.leftmul(x, deg);
                for (std::size_t i = 0; i < ridx.size(); ++i)
                    for (std::size_t j = 0; j < cidx.size(); ++j)
                        b(static_cast<Index>(i), static_cast<Index>(j)) = L(ridx[i], cidx[j]);
            }
            row.push_back(std::move(b));
        }
        d.act.push_back(std::move(row));
    }
    return GradedModule::build(std::move(d), false);
}

SubmodulePair radical(const GradedModule& m) {
    FieldContext ctx(m.algebra().field());
    SubspaceFamily rows = SubspaceFamily::empty_like(m);
    const auto& q = m.algebra().quiver();
    for (int d = m.lo() + 1; d <= m.hi(); ++d)
        for (int v = 0; v < checked_nv(m.algebra()); ++v) {
            Mat stacked(0, m.dim(d, v));
            for (int x = 0; x < q.arrow_count(); ++x)
                if (q.arrow(x).tgt == v)
                    stacked = stack_rows(stacked, Mat(m.action(x, d - 1).transpose()));
            rows.at(d, v) = row_space_basis(stacked);
        }
    return submodule(m, rows);
}

GradedModule direct_sum(const GradedModule& a, const GradedModule& b) {
    FieldContext ctx(a.algebra().field());
    if (!(a.algebra() == b.algebra())) throw std::invalid_argument("direct_sum: algebras differ");
    GradedModule::Data d;
    d.algebra = a.algebra();
    d.lo = std::min(a.lo(), b.lo());
    d.hi = std::min(a.hi(), b.hi());
    if (d.hi - d.lo > a.algebra().degree_bound())
        throw std::invalid_argument("direct_sum: window overflow");
    const int nv = checked_nv(a.algebra());
    const int na = a.algebra().quiver().arrow_count();
    for (int deg = d.lo; deg <= d.hi; ++deg) {
        std::vector<int> row;
        for (int v = 0; v < nv; ++v) row.push_back(a.dim(deg, v) + b.dim(deg, v));
        d.dims.push_back(std::move(row));
    }
    auto block_of = [](const GradedModule& m, int x, int deg, int r, int c) {
        if (deg >= m.lo() && deg + 1 <= m.hi()) return m.action(x, deg);
        return Mat(Mat::Zero(r, c));
    };
    for (int deg = d.lo; deg < d.hi; ++deg) {
        std::vector<Mat> row;
        for (int x = 0; x < na; ++x) {
            const Arrow& ar = a.algebra().quiver().arrow(x);
            Mat ba = block_of(a, x, deg, a.dim(deg + 1, ar.tgt), a.dim(deg, ar.src));
            Mat bb = block_of(b, x, deg, b.dim(deg + 1, ar.tgt), b.dim(deg, ar.src));
            Mat out = Mat::Zero(ba.rows() + bb.rows(), ba.cols() + bb.cols());
            out.topLeftCorner(ba.rows(), ba.cols()) = ba;
            out.bottomRightCorner(bb.rows(), bb.cols()) = bb;
            row.push_back(std::move(out));
        }
        d.act.push_back(std::move(row));
    }
    return GradedModule::build(std::move(d), false);
}

std::vector<GradedModuleMap> hom_degree_zero(const GradedModule& m, const GradedModule& n) {
    FieldContext ctx(m.algebra().field());
    if (!(m.algebra() == n.algebra())) throw std::invalid_argument("hom: algebras differ");
    const int nv = checked_nv(m.algebra());
    const auto& q = m.algebra().quiver();
    const int lo = m.lo(), hi = std::min(m.hi(), n.hi());

    // unknown layout: blocks f_{d,v}, column-major within a block
    std::vector<std::vector<int>> block_offset(static_cast<std::size_t>(std::max(hi - lo + 1, 0)),
                                               std::vector<int>(static_cast<std::size_t>(nv), 0));
    int unknowns = 0;
    for (int d = lo; d <= hi; ++d)
        for (int v = 0; v < nv; ++v) {
            block_offset[static_cast<std::size_t>(d - lo)][static_cast<std::size_t>(v)] = unknowns;
            unknowns += m.dim(d, v) * n.dim(d, v);
        }

    std::vector<Vec> rows_out;
    auto emit_square = [&](int d, int x) {
        const Arrow& ar = q.arrow(x);
        const int ms = m.dim(d, ar.src), mt = m.dim(d + 1, ar.tgt);
        const int ns = n.dim(d, ar.src), nt = n.dim(d + 1, ar.tgt);
        if (mt * nt == 0 && ms * ns == 0) return;
        const Mat am = m.action(x, d);
        const Mat an = (d >= n.lo() && d + 1 <= n.hi()) ? n.action(x, d) : Mat::Zero(nt, ns);
        // rows indexed by (i in nt, j in ms): sum_k f_{d+1}(i,k) am(k,j) - sum_l an(i,l) f_d(l,j) = 0
        for (int i = 0; i < nt; ++i)
            for (int j = 0; j < ms; ++j) {
                Vec row = Vec::Zero(unknowns);
                bool nonzero = false;
                if (d + 1 <= hi)
                    for (int k = 0; k < mt; ++k) {
                        if (am(k, j).is_zero()) continue;
                        row(block_offset[static_cast<std::size_t>(d + 1 - lo)][static_cast<std::size_t>(ar.tgt)] +
                            k * nt + i) += am(k, j);
                        nonzero = true;
                    }
                if (d >= lo)
                    for (int l = 0; l < ns; ++l) {
                        if (an(i, l).is_zero()) continue;
                        row(block_offset[static_cast<std::size_t>(d - lo)][static_cast<std::size_t>(ar.src)] +
                            j * ns + l) -= an(i, l);
                        nonzero = true;
                    }
                if (nonzero) rows_out.push_back(std::move(row));
            }
    };
    for (int d = lo; d < hi; ++d)
        for (int x = 0; x < q.arrow_count(); ++x) emit_square(d, x);

    Mat constraints(static_cast<Index>(rows_out.size()), unknowns);
    for (std::size_t i = 0; i < rows_out.size(); ++i)
        constraints.row(static_cast<Index>(i)) = rows_out[i].transpose();
    Mat sols = unknowns == 0 ? Mat::Zero(0, 0) : kernel_basis(constraints);

    std::vector<GradedModuleMap> out;
    for (Index s = 0; s < sols.rows(); ++s) {
        std::vector<std::vector<Mat>> blocks;
        for (int d = lo; d <= hi; ++d) {
            std::vector<Mat> row;
            for (int v = 0; v < nv; ++v) {
                Mat b(n.dim(d, v), m.dim(d, v));
                const int off = block_offset[static_cast<std::size_t>(d - lo)][static_cast<std::size_t>(v)];
                for (int j = 0; j < m.dim(d, v); ++j)
                    for (int i = 0; i < n.dim(d, v); ++i)
                        b(i, j) = sols(s, off + j * n.dim(d, v) + i);
                row.push_back(std::move(b));
            }
            blocks.push_back(std::move(row));
        }
        out.emplace_back(m, n, std::move(blocks), false);
    }
    return out;
}

IsoSearch find_isomorphism(const GradedModule& m, const GradedModule& n, int attempts) {
    IsoSearch res;
    if (m.lo() != n.lo() || m.hi() != n.hi()) {
        // compare on the honest overlap only
    }
    for (int d = std::min(m.lo(), n.lo()); d <= std::min(m.hi(), n.hi()); ++d)
        for (int v = 0; v < checked_nv(m.algebra()); ++v)
            if (m.dim(d, v) != n.dim(d, v)) {
                res.provably_non_isomorphic = true;
                return res;
            }
    FieldContext ctx(m.algebra().field());
    auto homs = hom_degree_zero(m, n);
    if (homs.empty()) {
        if (m.total_dim() == 0 && n.total_dim() == 0) {
            res.found = true;
            res.iso = GradedModuleMap::zero(m, n);
        }
        return res;
    }
    auto invertible = [&](const GradedModuleMap& f) {
        for (int d = f.lo(); d <= f.hi(); ++d)
            for (int v = 0; v < checked_nv(m.algebra()); ++v) {
                const Mat& b = f.block(d, v);
                if (b.rows() != b.cols()) return false;
                if (b.rows() > 0 && rank_of(b) != b.rows()) return false;
            }
        return true;
    };
    for (const auto& f : homs)
        if (invertible(f)) {
            res.found = true;
            res.iso = f;
            return res;
        }
    std::mt19937_64 rng(0xC0FFEE);
    std::uniform_int_distribution<int> dist(0, static_cast<int>(Fp::modulus()) - 1);
    for (int t = 0; t < attempts; ++t) {
        GradedModuleMap f = GradedModuleMap::zero(m, n);
        for (const auto& h : homs) f = add(f, scale(Fp(dist(rng)), h));
        if (invertible(f)) {
            res.found = true;
            res.iso = f;
            return res;
        }
    }
    return res;
}

}  // namespace kk
