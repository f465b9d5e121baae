#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "kk/fp.hpp"

namespace kk {

using Mat = Eigen::Matrix<Fp, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Fp, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

struct Rref {
    Mat reduced;
    std::vector<Index> pivots;
    Index rank{0};
};

/// Reduced row-echelon form over GF(p). Pivoting is deterministic:
/// leftmost nonzero column, topmost nonzero row, so results are
/// reproducible bit for bit.
Rref rref(Mat m);

/// Rows form a basis of the right null space of m (m * row^T = 0);
/// row count equals cols(m) - rank(m). Canonical w.r.t. rref of m.
Mat kernel_basis(const Mat& m);

/// One particular solution X of m X = rhs, or nullopt if inconsistent.
/// Free coordinates are set to zero, so the solution is canonical.
std::optional<Mat> solve(const Mat& m, const Mat& rhs);

/// Columns of m at its pivot-column indices: a deterministic basis of
/// the column space.
Mat image_basis(const Mat& m);

/// Basis (as rows, row-reduced) of the intersection of the row spaces
/// of u and v inside the common ambient row length.
Mat intersection_of_row_spaces(const Mat& u, const Mat& v);

/// Coordinates on the quotient of the ambient space by the row space of
/// `subspace_rows`. `projection` maps ambient vectors (columns) to
/// quotient coordinates; `kept` lists the ambient coordinates whose
/// standard basis vectors descend to the chosen quotient basis.
struct QuotientMap {
    Mat projection;            // (ambient - rank) x ambient
    std::vector<Index> kept;   // non-pivot coordinates, ascending
};
QuotientMap quotient_map(const Mat& subspace_rows, Index ambient_dim);

/// Row-space basis in rref form (drops zero rows).
Mat row_space_basis(const Mat& m);

Index rank_of(const Mat& m);

/// True if the row space of `sub` is contained in the row space of `space`.
bool rows_contained_in(const Mat& sub, const Mat& space);

bool is_zero(const Mat& m);

Mat stack_rows(const Mat& a, const Mat& b);

}  // namespace kk
