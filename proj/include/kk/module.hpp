#pragma once

#include <memory>

#include "kk/algebra.hpp"

namespace kk {

/// A finitely generated graded left module over a PresentedAlgebra,
/// known exactly on a degree window [lo, hi]: zero below lo, undefined
/// (not silently zero) above hi. Immutable and cheap to copy.
///
/// Per degree d the space is the direct sum of vertex blocks e_v M_d;
/// arrow actions are stored blockwise: arrow a: s -> t maps e_s M_d to
/// e_t M_{d+1}.
class GradedModule {
  public:
    GradedModule() = default;

    struct Data {
        PresentedAlgebra algebra;
        int lo{0};
        int hi{-1};                          // hi < lo encodes the zero module
        std::vector<std::vector<int>> dims;  // [d-lo][v]
        std::vector<std::vector<Mat>> act;   // [d-lo][arrow], for d in [lo, hi-1]
    };

    static GradedModule zero(const PresentedAlgebra& a, int at = 0);
    /// Validates shapes, window width and relation compatibility.
    static GradedModule build(Data data, bool check_relations = true);

    const PresentedAlgebra& algebra() const { return data_->algebra; }
    int lo() const { return data_->lo; }
    int hi() const { return data_->hi; }

    int dim(int d, int v) const;
    int dim(int d) const;  // flat dimension of degree d
    int offset(int d, int v) const;
    int total_dim() const;
    bool is_zero_module() const { return total_dim() == 0; }

    /// Per-arrow block action e_src M_d -> e_tgt M_{d+1}.
    const Mat& action(int arrow, int d) const;
    /// Flat-coordinates action of one arrow, dim(d+1) x dim(d).
    Mat action_flat(int arrow, int d) const;
    /// Flat action of a path (projects onto the source-vertex block first).
    Mat path_action(const PathWord& w, int d) const;

    std::vector<int> dim_vector(int d) const;

    bool operator==(const GradedModule& o) const;
    bool valid() const { return data_ != nullptr; }

    const Data& data() const { return *data_; }

  private:
    explicit GradedModule(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
    std::shared_ptr<const Data> data_;
};

/// Degree-zero module map, stored blockwise per (degree, vertex) on the
/// window [source.lo, min(source.hi, target.hi)]. Blocks for degrees
/// below target.lo are forced zero.
class GradedModuleMap {
  public:
    GradedModuleMap() = default;
    GradedModuleMap(GradedModule source, GradedModule target,
                    std::vector<std::vector<Mat>> blocks, bool check = true);

    static GradedModuleMap zero(const GradedModule& source, const GradedModule& target);
    static GradedModuleMap identity(const GradedModule& m);

    const GradedModule& source() const { return source_; }
    const GradedModule& target() const { return target_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }

    const Mat& block(int d, int v) const;
    Mat flat(int d) const;  // target.dim(d) x source.dim(d)

    /// Exact commutation with every arrow action inside the window,
    /// including the zero boundary below the target window.
    bool commutes() const;

    bool is_zero_map() const;

    friend GradedModuleMap compose(const GradedModuleMap& g, const GradedModuleMap& f);
    friend GradedModuleMap add(const GradedModuleMap& f, const GradedModuleMap& g);
    friend GradedModuleMap scale(Fp c, const GradedModuleMap& f);

  private:
    GradedModule source_, target_;
    int lo_{0}, hi_{-1};
    std::vector<std::vector<Mat>> blocks_;  // [d-lo][v]
};

/// Rows spanning a subspace of each (degree, vertex) block of a module.
/// Missing entries mean the zero subspace.
struct SubspaceFamily {
    int lo{0};
    std::vector<std::vector<Mat>> rows;  // [d-lo][v]

    Mat& at(int d, int v) { return rows.at(static_cast<std::size_t>(d - lo)).at(static_cast<std::size_t>(v)); }
    const Mat& at(int d, int v) const {
        return rows.at(static_cast<std::size_t>(d - lo)).at(static_cast<std::size_t>(v));
    }
    static SubspaceFamily empty_like(const GradedModule& m);
};

struct SubmodulePair {
    GradedModule module;
    GradedModuleMap map;  // inclusion (submodule) or projection (quotient)
};

/// Submodule spanned by the given rows (must be action-invariant; checked).
SubmodulePair submodule(const GradedModule& m, const SubspaceFamily& rows);
/// Quotient by the span of the given rows (must be action-invariant; checked).
SubmodulePair quotient_module(const GradedModule& m, const SubspaceFamily& rows);

SubmodulePair kernel(const GradedModuleMap& f);
SubmodulePair image(const GradedModuleMap& f);   // inclusion into the target
SubmodulePair cokernel(const GradedModuleMap& f);

GradedModule shift(const GradedModule& m, int i);
GradedModule truncate_at_least(const GradedModule& m, int s);
/// The finite-length quotient M / M_{>= s}.
GradedModule quotient_below(const GradedModule& m, int s);

GradedModule simple(const PresentedAlgebra& a, int vertex, int twist = 0);
/// A e_vertex generated in degree `twist`, realized on [twist, top]
/// (default twist + degree bound). Throws on window overflow.
GradedModule projective(const PresentedAlgebra& a, int vertex, int twist, int top = -1);
/// The left module A / A_{>= k} on the window [0, k-1]; 1 <= k <= D.
GradedModule truncated_quotient(const PresentedAlgebra& a, int k);

/// The radical submodule m.M together with its inclusion.
SubmodulePair radical(const GradedModule& m);

GradedModule direct_sum(const GradedModule& a, const GradedModule& b);

/// Basis of the space of degree-zero module maps M -> N, deterministic.
std::vector<GradedModuleMap> hom_degree_zero(const GradedModule& m, const GradedModule& n);

/// Searches for an invertible degree-zero map M -> N. Dimension
/// mismatch reports "provably non-isomorphic" (false, exhausted=true);
/// otherwise a bounded deterministic search that may report "not found".
struct IsoSearch {
    bool found{false};
    bool provably_non_isomorphic{false};
    GradedModuleMap iso;
};
IsoSearch find_isomorphism(const GradedModule& m, const GradedModule& n, int attempts = 64);

}  // namespace kk
