#pragma once

#include <memory>

#include <Eigen/Dense>

#include "kk/quiver.hpp"

namespace kk {

/// Per-degree dimension matrices: entry (i, j) of H_d is dim e_j A_d e_i.
struct HilbertTable {
    std::vector<Eigen::MatrixXi> degrees;  // index d in [0, D]

    int total_dim(int d) const { return static_cast<int>(degrees.at(static_cast<std::size_t>(d)).sum()); }
};

/// A positively graded quiver algebra kQ/I realized degree by degree:
/// for each d <= D a normal-form basis of A_d (lexicographically least
/// paths independent modulo the degree-d ideal component) and the
/// left-multiplication matrix of every arrow A_{d-1} -> A_d. Immutable
/// after construction and cheap to copy.
class PresentedAlgebra {
  public:
    PresentedAlgebra() = default;

    const Quiver& quiver() const;
    const PrimeField& field() const;
    int degree_bound() const;
    const std::vector<PathElement>& relations() const;

    int dim(int d) const;
    int dim(int d, int src, int tgt) const;
    const std::vector<PathWord>& basis(int d) const;
    const std::vector<int>& pair_indices(int d, int src, int tgt) const;
    int src_of(int d, int flat) const;
    int tgt_of(int d, int flat) const;

    /// Left multiplication by the arrow at `arrow_index`:
    /// A_{from_degree} -> A_{from_degree+1}, dim x dim matrix acting on
    /// flat coordinates (columns outside the matching source-vertex
    /// block are zero).
    const Mat& leftmul(int arrow_index, int from_degree) const;

    /// Product y * x of y in A_e (flat coords) and x in A_d; e + d must
    /// stay within the degree bound.
    Vec multiply(int e, const Vec& y, int d, const Vec& x) const;

    /// Normal form of an arbitrary path as flat coordinates in its degree.
    Vec evaluate_word(const PathWord& w) const;

    bool is_quadratic() const;
    /// True when some A_d with d <= D vanishes (degrees are generated by
    /// A_1, so vanishing persists); then `top_degree` is the last
    /// nonzero degree.
    bool is_finite_dimensional() const;
    int top_degree() const;

    bool operator==(const PresentedAlgebra& o) const { return impl_ == o.impl_; }
    bool valid() const { return impl_ != nullptr; }

    struct Impl;
    explicit PresentedAlgebra(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    const Impl& impl() const { return *impl_; }

  private:
    std::shared_ptr<const Impl> impl_;
};

/// Realizes kQ/I up to the degree bound. Throws std::invalid_argument
/// for inhomogeneous relations, mismatched endpoints, relation degree
/// below 2 or above the bound.
PresentedAlgebra build_algebra(const Quiver& q, std::vector<PathElement> relations,
                               const PrimeField& field, int degree_bound);

/// Opposite algebra: reversed quiver, every relation path reversed.
PresentedAlgebra opposite(const PresentedAlgebra& a);

/// Quadratic dual on the opposite quiver; relations are the annihilator
/// of the degree-2 relation span under the pairing <a*.b*, b.a> = 1
/// (no signs). Requires every relation to have degree exactly 2.
PresentedAlgebra quadratic_dual(const PresentedAlgebra& a);

HilbertTable hilbert_table(const PresentedAlgebra& a);

/// Sound Koszulity certificate for quadratic algebras: the degree-2
/// reduction system is confluent iff dim A_3 equals the number of
/// length-3 paths avoiding leading words, and confluence gives a PBW
/// basis. Returns false when the certificate does not apply (not
/// quadratic, or D < 3) or the count differs.
bool quadratic_confluence_certificate(const PresentedAlgebra& a);

}  // namespace kk
