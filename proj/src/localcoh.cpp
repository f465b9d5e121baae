#include "kk/localcoh.hpp"

#include <algorithm>

namespace kk {

namespace {

/// Cached flat path-action matrices of one target module.
class ActionCache {
  public:
    explicit ActionCache(const GradedModule& n) : n_(n) {}

    const Mat& flat(int e, int flat_idx, int from_deg) {
        auto key = std::make_tuple(e, flat_idx, from_deg);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        const PathWord& w = n_.algebra().basis(e)[static_cast<std::size_t>(flat_idx)];
        return cache_.emplace(key, n_.path_action(w, from_deg)).first->second;
    }

    const GradedModule& module() const { return n_; }

  private:
    const GradedModule& n_;
    std::map<std::tuple<int, int, int>, Mat> cache_;
};

int hom_space_dim(const GradedModule& n, const std::vector<ProjGen>& gens, int d) {
    int s = 0;
    for (const ProjGen& g : gens) s += n.dim(g.degree + d, g.vertex);
    return s;
}

bool hom_space_known(const GradedModule& n, const std::vector<ProjGen>& gens, int d) {
    for (const ProjGen& g : gens)
        if (g.degree + d > n.hi()) return false;
    return true;
}

/// Matrix of psi |-> psi . f on internal degree d, where f has
/// generator matrix `entries` (rows = gens of f's target, cols = gens
/// of f's source). Maps Hom(P(rows), N)_d -> Hom(P(cols), N)_d.
Mat hom_action_matrix(ActionCache& cache, int d, const std::vector<ProjGen>& row_gens,
                      const std::vector<ProjGen>& col_gens,
                      const std::vector<std::vector<Vec>>& entries) {
    const GradedModule& n = cache.module();
    Mat out = Mat::Zero(hom_space_dim(n, col_gens, d), hom_space_dim(n, row_gens, d));
    int coff = 0;
    for (std::size_t c = 0; c < col_gens.size(); ++c) {
        const int ct = col_gens[c].degree, cv = col_gens[c].vertex;
        const int crows = n.dim(ct + d, cv);
        int roff = 0;
        for (std::size_t r = 0; r < row_gens.size(); ++r) {
            const int rt = row_gens[r].degree, rv = row_gens[r].vertex;
            const int rcols = n.dim(rt + d, rv);
            if (crows > 0 && rcols > 0) {
                const Vec& x = entries[r][c];
                const int e = ct - rt;
                if (e >= 0 && x.size() > 0) {
                    Mat block = Mat::Zero(crows, rcols);
                    for (int b = 0; b < x.size(); ++b) {
                        if (x(b).is_zero()) continue;
                        const Mat& act = cache.flat(e, b, rt + d);
                        block += x(b) * act.block(n.offset(ct + d, cv), n.offset(rt + d, rv),
                                                  crows, rcols);
                    }
                    out.block(coff, roff, crows, rcols) = block;
                }
            }
            roff += rcols;
        }
        coff += crows;
    }
    return out;
}

struct ExtCell {
    int dim{0};
    bool known{false};
    Mat cycles;       // rows: cycle basis in Hom(P_i, N)_d coordinates
    QuotientMap quo;  // homology coordinates on the cycle space
};

/// Ext^i(R.module's resolution, N) in internal degree d, with an
/// explicit homology basis.
ExtCell ext_cell(ActionCache& cache, const Resolution& r, int i, int d) {
    ExtCell cell;
    const GradedModule& n = cache.module();
    const int steps = r.computed_steps();
    auto gens_at = [&](int j) -> const std::vector<ProjGen>& {
        static const std::vector<ProjGen> none;
        if (j < 0 || j >= steps) return none;
        return r.steps[static_cast<std::size_t>(j)].gens;
    };
    // honesty: all three participating spaces must be inside the window
    for (int j = i - 1; j <= i + 1; ++j) {
        if (j >= 0 && j < steps && !hom_space_known(n, gens_at(j), d)) return cell;
        if (j >= 0 && j >= steps && !r.terminated) return cell;
    }
    cell.known = true;

    const int dim_i = hom_space_dim(n, gens_at(i), d);
    Mat delta_out =
        (i + 1 < steps)
            ? hom_action_matrix(cache, d, gens_at(i), gens_at(i + 1),
                                r.gen_matrices[static_cast<std::size_t>(i)].entries)
            : Mat::Zero(0, dim_i);
    cell.cycles = kernel_basis(delta_out);
    Mat boundary_cols =
        (i >= 1 && i - 1 < static_cast<int>(r.gen_matrices.size()))
            ? Mat(hom_action_matrix(cache, d, gens_at(i - 1), gens_at(i),
                                    r.gen_matrices[static_cast<std::size_t>(i) - 1].entries))
            : Mat::Zero(dim_i, 0);
    Mat in_cycles(0, cell.cycles.rows());
    if (boundary_cols.cols() > 0 && cell.cycles.rows() > 0) {
        auto sol = solve(Mat(cell.cycles.transpose()), boundary_cols);
        if (!sol) throw std::logic_error("ext_cell: boundaries escape the cycles");
        in_cycles = sol->transpose();
    }
    cell.quo = quotient_map(in_cycles, cell.cycles.rows());
    cell.dim = static_cast<int>(cell.quo.kept.size());
    return cell;
}

/// Chain lift of pi : from.module ->> to.module over the two minimal
/// resolutions; returns one generator matrix per homological step.
std::vector<GenMatrix> lift_chain_map(const Resolution& to, const Resolution& from,
                                      const GradedModuleMap& pi, int steps) {
    const PresentedAlgebra& a = to.module.algebra();
    FieldContext ctx(a.field());
    std::vector<GenMatrix> out;
    GradedModuleMap prev_f;  // f_{i-1}, materialized

    for (int i = 0; i < steps; ++i) {
        if (i >= from.computed_steps() || i >= to.computed_steps()) break;
        const auto& from_step = from.steps[static_cast<std::size_t>(i)];
        const auto& to_step = to.steps[static_cast<std::size_t>(i)];
        GenMatrix gm;
        gm.rows = to_step.gens;
        gm.cols = from_step.gens;
        gm.entries.assign(gm.rows.size(), std::vector<Vec>(gm.cols.size()));

        GradedModuleMap rhs_map;
        if (i == 0) {
            rhs_map = compose(pi, from_step.cover);
        } else {
            GradedModuleMap d_from = compose(from.steps[static_cast<std::size_t>(i) - 1].syzygy.map,
                                             from_step.cover);
            rhs_map = compose(prev_f, d_from);
        }
        // solve through the target cover / differential, generator by generator
        GradedModuleMap tgt =
            i == 0 ? to_step.cover
                   : compose(to.steps[static_cast<std::size_t>(i) - 1].syzygy.map, to_step.cover);
        for (std::size_t c = 0; c < gm.cols.size(); ++c) {
            const ProjGen& gc = gm.cols[c];
            Vec rhs = rhs_map.block(gc.degree, gc.vertex)
                          .col(projective_gen_offset(a, gm.cols, c));
            auto x = solve(tgt.block(gc.degree, gc.vertex), rhs);
            if (!x) throw std::logic_error("lift_chain_map: comparison lift failed");
            auto coeffs = decompose_over_gens(a, gm.rows, gc.degree, gc.vertex, Vec(*x));
            for (std::size_t r = 0; r < gm.rows.size(); ++r) gm.entries[r][c] = std::move(coeffs[r]);
        }
        prev_f = projective_map(to_step.proj, gm.rows, from_step.proj, gm.cols, gm.entries);
        out.push_back(std::move(gm));
    }
    return out;
}

/// Surjection T_{k+1} ->> T_k (identity below degree k, zero at k).
GradedModuleMap tower_surjection(const GradedModule& from_t, const GradedModule& to_t) {
    const PresentedAlgebra& a = from_t.algebra();
    FieldContext ctx(a.field());
    std::vector<std::vector<Mat>> blocks;
    for (int d = from_t.lo(); d <= std::min(from_t.hi(), to_t.hi()); ++d) {
        std::vector<Mat> row;
        for (int v = 0; v < a.quiver().vertex_count(); ++v) {
            Mat b = Mat::Zero(to_t.dim(d, v), from_t.dim(d, v));
            const int common = std::min(to_t.dim(d, v), from_t.dim(d, v));
            for (int t = 0; t < common; ++t) b(t, t) = Fp(1);
            row.push_back(std::move(b));
        }
        blocks.push_back(std::move(row));
    }
    return GradedModuleMap(from_t, to_t, std::move(blocks));
}

}  // namespace

LocalCohomologyTable local_cohomology(const GradedModule& m, const LocalCohomologyOptions& opts) {
    const PresentedAlgebra& a = m.algebra();
    FieldContext ctx(a.field());
    LocalCohomologyTable table;
    table.opts = opts;

    int k_top = opts.tower_height;
    if (a.is_finite_dimensional() && a.top_degree() + 1 <= opts.tower_height) {
        k_top = a.top_degree() + 1;
        table.tower_constant = true;
    }
    if (k_top > a.degree_bound())
        throw std::invalid_argument("local_cohomology: tower height beyond the degree bound");

    const int res_steps = opts.i_max + 1;
    std::vector<int> levels;
    if (table.tower_constant)
        levels = {k_top};
    else
        for (int k = std::max(1, k_top - 2); k <= k_top; ++k) levels.push_back(k);

    std::vector<GradedModule> ts;
    std::vector<Resolution> rs;
    for (int k : levels) {
        ts.push_back(truncated_quotient(a, k));
        rs.push_back(resolve(ts.back(), res_steps));
    }
    std::vector<std::vector<GenMatrix>> lifts;  // between consecutive levels
    for (std::size_t t = 0; t + 1 < levels.size(); ++t) {
        GradedModuleMap pi = tower_surjection(ts[t + 1], ts[t]);
        lifts.push_back(lift_chain_map(rs[t], rs[t + 1], pi, res_steps));
    }

    ActionCache cache(m);
    for (int i = 0; i <= opts.i_max; ++i) {
        for (int d = opts.deg_lo; d <= opts.deg_hi; ++d) {
            std::vector<ExtCell> cells;
            for (std::size_t t = 0; t < rs.size(); ++t) cells.push_back(ext_cell(cache, rs[t], i, d));
            LocalCohomologyTable::Cell out;
            const ExtCell& top = cells.back();
            out.dim = top.dim;
            if (!top.known) {
                out.dim = 0;
                out.stable = false;
            } else if (table.tower_constant) {
                out.stable = true;
            } else {
                bool stable = cells.size() >= 3;
                for (const auto& c : cells) stable = stable && c.known && c.dim == top.dim;
                // connecting maps must be isomorphisms on the cell
                for (std::size_t t = 0; stable && t + 1 < cells.size(); ++t) {
                    const ExtCell& lo_cell = cells[t];
                    const ExtCell& hi_cell = cells[t + 1];
                    if (lo_cell.dim == 0) continue;
                    if (static_cast<int>(t) >= static_cast<int>(lifts.size()) ||
                        i >= static_cast<int>(lifts[t].size())) {
                        stable = false;
                        break;
                    }
                    const GenMatrix& f = lifts[t][static_cast<std::size_t>(i)];
                    Mat big = hom_action_matrix(cache, d, f.rows, f.cols, f.entries);
                    Mat induced = Mat::Zero(hi_cell.dim, lo_cell.dim);
                    for (int col = 0; col < lo_cell.dim; ++col) {
                        Vec cyc = lo_cell.cycles
                                      .row(lo_cell.quo.kept[static_cast<std::size_t>(col)])
                                      .transpose();
                        Vec w = big * cyc;
                        auto in_cyc = solve(Mat(hi_cell.cycles.transpose()), Mat(w));
                        if (!in_cyc) throw std::logic_error("local_cohomology: map leaves cycles");
                        induced.col(col) = hi_cell.quo.projection * Vec(in_cyc->col(0));
                    }
                    stable = stable && rank_of(induced) == lo_cell.dim;
                }
                out.stable = stable;
            }
            if (out.dim != 0 || !out.stable || !table.tower_constant)
                table.cells[{i, d}] = out;
        }
    }
    return table;
}

BoundedInt cm_regularity_from_table(const LocalCohomologyTable& t, bool module_zero) {
    if (module_zero)
        return {BoundedInt::Kind::MinusInfinity, 0, true, "zero module"};
    bool any = false;
    bool all_stable = true;
    int best = std::numeric_limits<int>::min();
    for (const auto& [key, cell] : t.cells) {
        all_stable = all_stable && cell.stable;
        if (cell.dim != 0 && cell.stable) {
            any = true;
            best = std::max(best, key.second + key.first);  // p >= d + i
        }
    }
    if (!any) {
        return {BoundedInt::Kind::MinusInfinity, 0, false,
                "table vanishes on the computed window"};
    }
    BoundedInt out = BoundedInt::finite(best, t.tower_constant && all_stable,
                                        t.tower_constant ? "constant tower"
                                                         : "stabilized cells on the window");
    if (!t.tower_constant || !all_stable) out.exact = false;
    return out;
}

BoundedInt cm_regularity(const GradedModule& m, const LocalCohomologyOptions& opts) {
    LocalCohomologyOptions o = opts;
    if (o.deg_lo == 0 && o.deg_hi == 0) {
        o.deg_lo = m.lo() - m.algebra().degree_bound();
        o.deg_hi = m.hi();
    }
    LocalCohomologyTable t = local_cohomology(m, o);
    BoundedInt r = cm_regularity_from_table(t, m.is_zero_module());
    // exactness additionally needs the window to cover the module support
    if (r.exact && (o.deg_lo > m.lo() || o.deg_hi < m.hi())) {
        r.exact = false;
        r.reason += " (window does not cover the module)";
    }
    return r;
}

namespace {

GradedComplex dualize_resolution(const Resolution& r, const PresentedAlgebra& aop) {
    const PresentedAlgebra& a = r.module.algebra();
    GradedComplex c(aop);
    std::vector<std::vector<ProjGen>> op_gens;
    for (const auto& step : r.steps) {
        std::vector<ProjGen> gens;
        int max_t = 0;
        for (const ProjGen& g : step.gens) {
            gens.push_back({g.vertex, -g.degree});
            max_t = std::max(max_t, g.degree);
        }
        op_gens.push_back(gens);
        c.set_term(-static_cast<int>(op_gens.size()) + 1,
                   projective_sum(aop, gens, a.degree_bound() - max_t));
    }
    for (std::size_t i = 0; i + 1 < op_gens.size(); ++i) {
        const GenMatrix& x = r.gen_matrices[i];
        std::vector<std::vector<Vec>> entries(op_gens[i + 1].size(),
                                              std::vector<Vec>(op_gens[i].size()));
        for (std::size_t g = 0; g < op_gens[i + 1].size(); ++g)
            for (std::size_t h = 0; h < op_gens[i].size(); ++h) {
                const Vec& orig = x.entries[h][g];
                entries[g][h] = orig.size() > 0
                                    ? transport_opposite(
                                          a, aop,
                                          x.cols[g].degree - x.rows[h].degree, orig)
                                    : orig;
            }
        c.set_differential(-static_cast<int>(i),
                           projective_map(c.term(-static_cast<int>(i) - 1), op_gens[i + 1],
                                          c.term(-static_cast<int>(i)), op_gens[i], entries));
    }
    c.check_composable();
    return c;
}

struct SimpleShape {
    bool is_simple{false};
    int vertex{0};
    int degree{0};
};

SimpleShape identify_simple(const GradedModule& h) {
    SimpleShape s;
    if (h.total_dim() != 1) return s;
    for (int d = h.lo(); d <= h.hi(); ++d)
        for (int v = 0; v < h.algebra().quiver().vertex_count(); ++v)
            if (h.dim(d, v) == 1) {
                s.is_simple = true;
                s.vertex = v;
                s.degree = d;
                return s;
            }
    return s;
}

}  // namespace

GorensteinReport as_gorenstein_check(const PresentedAlgebra& a, int steps) {
    FieldContext ctx(a.field());
    GorensteinReport rep;
    const int nv = a.quiver().vertex_count();
    PresentedAlgebra aop = opposite(a);

    rep.sigma.assign(static_cast<std::size_t>(nv), -1);
    rep.shifts.assign(static_cast<std::size_t>(nv), 0);

    bool all_terminated = true;
    bool ext1_vanish = true;
    int n_found = -1;
    std::vector<SimpleShape> duals(static_cast<std::size_t>(nv));

    for (int v = 0; v < nv; ++v) {
        Resolution r = resolve(simple(a, v, 0), steps);
        all_terminated = all_terminated && r.terminated;
        GradedComplex dual = dualize_resolution(r, aop);
        std::vector<int> nonzero;
        SimpleShape shape;
        for (int i = 0; i < r.computed_steps(); ++i) {
            GradedModule h = homology(dual, -i);
            if (h.total_dim() != 0) {
                nonzero.push_back(i);
                shape = identify_simple(h);
            }
            if (i == 1 && h.total_dim() != 0) ext1_vanish = false;
        }
        if (nonzero.size() != 1 || !shape.is_simple) {
            rep.gorenstein = false;
            rep.reason = "Ext(S_" + std::to_string(v) + ", A) is not a single shifted simple";
            rep.exact = all_terminated && nonzero.size() > 1;
            return rep;
        }
        if (n_found < 0) n_found = nonzero[0];
        if (n_found != nonzero[0]) {
            rep.gorenstein = false;
            rep.exact = all_terminated;
            rep.reason = "injective dimension differs between simples";
            return rep;
        }
        duals[static_cast<std::size_t>(v)] = shape;
        rep.sigma[static_cast<std::size_t>(v)] = shape.vertex;
        rep.shifts[static_cast<std::size_t>(v)] = shape.degree;
    }
    rep.n = n_found;

    // condition (iii): double Ext returns the simple
    bool ext1_vanish_op = true;
    bool all_terminated_op = true;
    for (int v = 0; v < nv; ++v) {
        const SimpleShape& s = duals[static_cast<std::size_t>(v)];
        Resolution rop = resolve(simple(aop, s.vertex, 0), steps);
        all_terminated_op = all_terminated_op && rop.terminated;
        GradedComplex dd = dualize_resolution(rop, a);
        std::vector<int> nonzero;
        SimpleShape back;
        for (int i = 0; i < rop.computed_steps(); ++i) {
            GradedModule h = homology(dd, -i);
            if (h.total_dim() != 0) {
                nonzero.push_back(i);
                back = identify_simple(h);
            }
            if (i == 1 && h.total_dim() != 0) ext1_vanish_op = false;
        }
        if (nonzero.size() != 1 || nonzero[0] != rep.n || !back.is_simple ||
            back.vertex != v || back.degree != s.degree) {
            rep.gorenstein = false;
            rep.exact = all_terminated && all_terminated_op;
            rep.reason = "double-Ext condition fails at vertex " + std::to_string(v);
            return rep;
        }
    }

    rep.gorenstein = true;
    if (all_terminated && all_terminated_op) {
        rep.exact = true;
        rep.reason = "all resolutions terminated";
    } else if (a.is_finite_dimensional() && rep.n == 0 && ext1_vanish && ext1_vanish_op) {
        rep.exact = true;
        rep.reason = "finite-dimensional selfinjective (Ext^1(S, A) = 0 on both sides)";
    } else {
        rep.exact = false;
        rep.reason = "conditions hold up to the computed step bound";
    }
    return rep;
}

GradedModule dual_module(const GradedModule& n, const PresentedAlgebra& target_algebra) {
    FieldContext ctx(target_algebra.field());
    GradedModule::Data d;
    d.algebra = target_algebra;
    d.lo = -n.hi();
    d.hi = -n.lo();
    const int nv = target_algebra.quiver().vertex_count();
    const int na = target_algebra.quiver().arrow_count();
    for (int deg = d.lo; deg <= d.hi; ++deg) {
        std::vector<int> row;
        for (int v = 0; v < nv; ++v) row.push_back(n.dim(-deg, v));
        d.dims.push_back(std::move(row));
    }
    for (int deg = d.lo; deg < d.hi; ++deg) {
        std::vector<Mat> row;
        for (int x = 0; x < na; ++x) {
            // the same arrow id acts on the dual by the transpose of the
            // reversed arrow's action one degree down
            const int op_idx = n.algebra().quiver().index_of(target_algebra.quiver().arrow(x).id);
            row.push_back(Mat(n.action(op_idx, -deg - 1).transpose()));
        }
        d.act.push_back(std::move(row));
    }
    return GradedModule::build(std::move(d), true);
}

RegularityReport regularity_report(const GradedModule& m, int steps,
                                   const LocalCohomologyOptions& opts) {
    const PresentedAlgebra& a = m.algebra();
    FieldContext ctx(a.field());
    RegularityReport rep;
    rep.gorenstein = as_gorenstein_check(a, steps);

    rep.ext_reg = ext_regularity(m, steps);
    rep.cm_reg = cm_regularity(m, opts);

    KoszulVerdict kv = is_koszul(a, steps);
    // Ext-reg(A_0) and CMreg(A)
    GradedModule a0 = simple(a, 0, 0);
    for (int v = 1; v < a.quiver().vertex_count(); ++v) a0 = direct_sum(a0, simple(a, v, 0));
    BoundedInt r0 = ext_regularity(a0, steps);
    GradedModule regular = projective(a, 0, 0);
    for (int v = 1; v < a.quiver().vertex_count(); ++v)
        regular = direct_sum(regular, projective(a, v, 0));
    BoundedInt cma = cm_regularity(regular, opts);

    // pinch the Ext-reg verdict by the theorem's upper bound
    if (!rep.ext_reg.exact && rep.ext_reg.kind == BoundedInt::Kind::Finite &&
        rep.cm_reg.kind == BoundedInt::Kind::Finite && rep.cm_reg.exact &&
        rep.gorenstein.gorenstein && kv.koszul && kv.exact &&
        rep.ext_reg.value == rep.cm_reg.value) {
        rep.ext_reg.exact = true;
        rep.ext_reg.reason = "pinched: lower bound meets CMreg over a certified Koszul Gorenstein algebra";
    }

    auto leq = [](const BoundedInt& x, const BoundedInt& y, const BoundedInt& z) {
        // x <= y + z with infinities
        if (y.kind == BoundedInt::Kind::PlusInfinity || z.kind == BoundedInt::Kind::PlusInfinity)
            return true;
        if (x.kind == BoundedInt::Kind::MinusInfinity) return true;
        if (x.kind == BoundedInt::Kind::PlusInfinity) return false;
        if (y.kind == BoundedInt::Kind::MinusInfinity || z.kind == BoundedInt::Kind::MinusInfinity)
            return false;  // -inf + finite below any finite value
        return x.value <= y.value + z.value;
    };

    if (rep.gorenstein.gorenstein) {
        // I: Ext-reg(X) <= CMreg(X) + Ext-reg(A_0)
        if ((rep.ext_reg.exact || rep.ext_reg.kind == BoundedInt::Kind::Finite) &&
            rep.cm_reg.exact && (r0.exact || r0.kind == BoundedInt::Kind::PlusInfinity)) {
            const bool ok = leq(rep.ext_reg, rep.cm_reg, r0);
            if (rep.ext_reg.exact || !ok) {
                rep.inequality_one_checked = true;
                rep.inequality_one_holds = ok;
            }
        }
        // II: CMreg(X) <= Ext-reg(X) + CMreg(A); a lower bound for
        // Ext-reg already witnesses the inequality when it is satisfied
        if (rep.cm_reg.exact && cma.exact) {
            const bool ok = leq(rep.cm_reg, rep.ext_reg, cma);
            if (ok || rep.ext_reg.exact) {
                rep.inequality_two_checked = true;
                rep.inequality_two_holds = ok;
            }
        }
    } else {
        rep.notes = "hypotheses not satisfied: " + rep.gorenstein.reason;
    }

    if (!m.is_zero_module() && rep.cm_reg.kind == BoundedInt::Kind::Finite) {
        TruncationIndexReport t = koszul_truncation_index(m, steps, opts);
        rep.truncation_index = t.s;
        rep.empirical_truncation_index = t.s_empirical;
    }
    return rep;
}

TruncationIndexReport koszul_truncation_index(const GradedModule& m, int steps,
                                              const LocalCohomologyOptions& opts) {
    if (m.is_zero_module())
        throw std::invalid_argument("koszul_truncation_index: zero module");
    BoundedInt cm = cm_regularity(m, opts);
    if (cm.kind != BoundedInt::Kind::Finite)
        throw std::logic_error("koszul_truncation_index: CM-regularity not finite");
    TruncationIndexReport rep;
    rep.s = cm.value;

    auto linear_at = [&](int s) {
        GradedModule t = truncate_at_least(m, s);
        if (t.is_zero_module()) return true;
        GradedModule shifted = shift(t, s);
        const int cap = std::min(steps, shifted.hi());
        Resolution r = resolve(shifted, std::max(cap, 0));
        return linear_resolution_verdict(r, 0).koszul;
    };

    if (!linear_at(rep.s))
        throw std::logic_error(
            "koszul_truncation_index: truncation at CMreg failed the linearity check");
    rep.verified = true;
    rep.s_empirical = rep.s;
    for (int s = m.lo(); s < rep.s; ++s)
        if (linear_at(s)) {
            rep.s_empirical = s;
            break;
        }
    return rep;
}

LocalDualityReport local_duality_crosscheck(const GradedModule& m, int i, int steps,
                                            const LocalCohomologyOptions& opts) {
    LocalDualityReport rep;
    const PresentedAlgebra& a = m.algebra();
    FieldContext ctx(a.field());
    GorensteinReport g = as_gorenstein_check(a, steps);
    if (!g.gorenstein) {
        rep.reason = "algebra is not AS Gorenstein: " + g.reason;
        return rep;
    }
    const int n = g.n;
    if (i > n) {
        rep.reason = "index beyond the Gorenstein parameter";
        return rep;
    }

    // left side: Gamma^i(M) on the table window
    LocalCohomologyOptions lopts = opts;
    lopts.i_max = std::max(lopts.i_max, n);
    if (lopts.deg_lo == 0 && lopts.deg_hi == 0) {
        lopts.deg_lo = m.lo() - a.degree_bound();
        lopts.deg_hi = m.hi();
    }
    LocalCohomologyTable lhs = local_cohomology(m, lopts);

    // dualizing module: omega = D(Gamma^n(A))
    PresentedAlgebra aop = opposite(a);
    int k_top = lopts.tower_height;
    if (a.is_finite_dimensional() && a.top_degree() + 1 <= k_top) k_top = a.top_degree() + 1;
    Resolution rt = resolve(truncated_quotient(a, k_top), n + 2);
    GradedComplex dual = dualize_resolution(rt, aop);
    GradedModule gamma_n = homology(dual, -n);
    GradedModule omega = dual_module(gamma_n, a);

    // right side: Ext^{n-i}(M, omega), degreewise
    Resolution rm = resolve(m, n - i + 1);
    ActionCache cache(omega);
    rep.checked = true;
    rep.holds = true;
    for (int d = lopts.deg_lo; d <= lopts.deg_hi; ++d) {
        if (!lhs.stable(i, d)) continue;
        ExtCell cell = ext_cell(cache, rm, n - i, -d);
        if (!cell.known) continue;
        ++rep.cells_compared;
        if (cell.dim != lhs.dim(i, d)) {
            rep.holds = false;
            rep.reason = "mismatch at degree " + std::to_string(d);
            return rep;
        }
    }
    rep.reason = "dimensions agree on all stabilized cells";
    return rep;
}

}  // namespace kk
