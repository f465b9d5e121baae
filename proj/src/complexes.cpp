#include "kk/complexes.hpp"

namespace kk {

void GradedComplex::set_term(int i, GradedModule m) {
    if (!(m.algebra() == algebra_)) throw std::invalid_argument("GradedComplex: algebra mismatch");
    terms_.insert_or_assign(i, std::move(m));
}

void GradedComplex::set_differential(int i, GradedModuleMap d) {
    if (!has_term(i) || !has_term(i - 1))
        throw std::invalid_argument("GradedComplex: differential needs both terms");
    if (!(d.source() == term(i)) || !(d.target() == term(i - 1)))
        throw std::invalid_argument("GradedComplex: differential endpoints mismatch");
    diff_.insert_or_assign(i, std::move(d));
}

const GradedModule& GradedComplex::term(int i) const {
    auto it = terms_.find(i);
    if (it == terms_.end()) throw std::out_of_range("GradedComplex: no term " + std::to_string(i));
    return it->second;
}

const GradedModuleMap& GradedComplex::differential(int i) const {
    auto it = diff_.find(i);
    if (it == diff_.end())
        throw std::out_of_range("GradedComplex: no differential " + std::to_string(i));
    return it->second;
}

int GradedComplex::min_index() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int GradedComplex::max_index() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

void GradedComplex::check_composable() const {
    for (const auto& [i, d] : diff_) {
        auto up = diff_.find(i + 1);
        if (up == diff_.end()) continue;
        if (!compose(d, up->second).is_zero_map())
            throw std::logic_error("GradedComplex: d.d != 0 at index " + std::to_string(i));
    }
}

int GradedComplex::total_dim() const {
    int s = 0;
    for (const auto& [i, t] : terms_) {
        (void)i;
        s += t.total_dim();
    }
    return s;
}

GradedModule homology(const GradedComplex& c, int i) {
    if (!c.has_term(i)) return GradedModule::zero(c.algebra(), 0);
    const GradedModule& mid = c.term(i);
    FieldContext ctx(c.algebra().field());

    SubmodulePair ker_pair = c.has_differential(i)
                                 ? kernel(c.differential(i))
                                 : submodule(mid, [&] {
                                       SubspaceFamily all = SubspaceFamily::empty_like(mid);
                                       for (int d = mid.lo(); d <= mid.hi(); ++d)
                                           for (int v = 0; v < mid.algebra().quiver().vertex_count(); ++v)
                                               all.at(d, v) = Mat::Identity(mid.dim(d, v), mid.dim(d, v));
                                       return all;
                                   }());
    const GradedModule& K = ker_pair.module;
    const GradedModuleMap& incl = ker_pair.map;

    SubspaceFamily img_in_k = SubspaceFamily::empty_like(K);
    if (c.has_differential(i + 1)) {
        const GradedModuleMap& din = c.differential(i + 1);
        for (int d = K.lo(); d <= K.hi(); ++d)
            for (int v = 0; v < K.algebra().quiver().vertex_count(); ++v) {
                if (d > din.hi() || d < din.lo()) continue;
                const Mat img_cols = din.block(d, v);  // image of d_{i+1} in mid coords
                if (img_cols.cols() == 0 || K.dim(d, v) == 0) {
                    if (img_cols.cols() > 0 && !is_zero(img_cols))
                        throw std::logic_error("homology: image escapes the kernel");
                    continue;
                }
                auto in_k = solve(incl.block(d, v), img_cols);
                if (!in_k) throw std::logic_error("homology: image escapes the kernel");
                img_in_k.at(d, v) = row_space_basis(in_k->transpose());
            }
    }
    return quotient_module(K, img_in_k).module;
}

bool ChainMap::commutes_with_differentials() const {
    for (const auto& [i, f] : components) {
        if (!source->has_differential(i)) continue;
        auto below = components.find(i - 1);
        if (below == components.end()) continue;
        if (!target->has_differential(i)) {
            if (!compose(below->second, source->differential(i)).is_zero_map()) return false;
            continue;
        }
        GradedModuleMap lhs = compose(target->differential(i), f);
        GradedModuleMap rhs = compose(below->second, source->differential(i));
        const int hi = std::min(lhs.hi(), rhs.hi());
        for (int d = lhs.lo(); d <= hi; ++d)
            for (int v = 0; v < source->algebra().quiver().vertex_count(); ++v)
                if (lhs.block(d, v).size() > 0 && !(lhs.block(d, v) == rhs.block(d, v))) return false;
    }
    return true;
}

GradedComplex cone(const ChainMap& f) {
    const GradedComplex& c = *f.source;
    const GradedComplex& dcx = *f.target;
    const PresentedAlgebra& a = c.algebra();
    FieldContext ctx(a.field());
    GradedComplex out(a);

    const int lo = std::min(c.min_index() + 1, dcx.min_index());
    const int hi = std::max(c.max_index() + 1, dcx.max_index());
    auto part = [&](const GradedComplex& x, int i, int anchor_lo) {
        return x.has_term(i) ? x.term(i) : GradedModule::zero(a, anchor_lo);
    };
    for (int k = lo; k <= hi; ++k) {
        GradedModule dk = part(dcx, k, dcx.empty() ? 0 : dcx.term(dcx.min_index()).lo());
        GradedModule ck1 = part(c, k - 1, dk.lo());
        out.set_term(k, direct_sum(dk, ck1));
    }
    for (int k = lo + 1; k <= hi; ++k) {
        const GradedModule& src = out.term(k);
        const GradedModule& tgt = out.term(k - 1);
        GradedModule dk = part(dcx, k, 0), dk1 = part(dcx, k - 1, 0);
        GradedModule ck1 = part(c, k - 1, 0), ck2 = part(c, k - 2, 0);
        std::vector<std::vector<Mat>> blocks;
        const int blo = src.lo(), bhi = std::min(src.hi(), tgt.hi());
        for (int d = blo; d <= bhi; ++d) {
            std::vector<Mat> row;
            for (int v = 0; v < a.quiver().vertex_count(); ++v) {
                Mat b = Mat::Zero(tgt.dim(d, v), src.dim(d, v));
                auto put = [&](int roff, int coff, const Mat& m) {
                    if (m.rows() > 0 && m.cols() > 0) b.block(roff, coff, m.rows(), m.cols()) = m;
                };
                const int rD = dk1.dim(d, v);
                const int cD = dk.dim(d, v);
                if (dcx.has_differential(k)) {
                    const auto& dd = dcx.differential(k);
                    if (d >= dd.lo() && d <= dd.hi()) put(0, 0, dd.block(d, v));
                }
                auto fit = f.components.find(k - 1);
                if (fit != f.components.end() && d >= fit->second.lo() && d <= fit->second.hi())
                    put(0, cD, fit->second.block(d, v));
                if (c.has_differential(k - 1)) {
                    const auto& dc = c.differential(k - 1);
                    if (d >= dc.lo() && d <= dc.hi()) put(rD, cD, Mat(-dc.block(d, v)));
                }
                (void)ck1;
                (void)ck2;
                row.push_back(std::move(b));
            }
            blocks.push_back(std::move(row));
        }
        out.set_differential(k, GradedModuleMap(src, tgt, std::move(blocks)));
    }
    out.check_composable();
    return out;
}

ExactnessReport exactness_within(const GradedComplex& c, int idx_lo, int idx_hi, int deg_lo,
                                 int deg_hi) {
    ExactnessReport rep;
    for (int i = idx_lo; i <= idx_hi; ++i) {
        GradedModule h = homology(c, i);
        for (int d = std::max(deg_lo, h.lo()); d <= std::min(deg_hi, h.hi()); ++d) {
            if (h.dim(d) != 0) {
                rep.exact = false;
                rep.first_bad_index = i;
                rep.first_bad_degree = d;
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace kk
