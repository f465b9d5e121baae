#include "kk/linalg.hpp"

#include <ostream>

namespace kk {

std::ostream& operator<<(std::ostream& os, Fp x) { return os << x.v; }

Rref rref(Mat m) {
    const Index rows = m.rows(), cols = m.cols();
    Rref out;
    out.pivots.reserve(static_cast<std::size_t>(std::min(rows, cols)));
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index pivot = -1;
        for (Index i = r; i < rows; ++i) {
            if (!m(i, c).is_zero()) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != r) m.row(pivot).swap(m.row(r));
        const Fp inv = m(r, c).inverse();
        for (Index j = c; j < cols; ++j) m(r, j) *= inv;
        for (Index i = 0; i < rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Fp f = m(i, c);
            for (Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    out.reduced = std::move(m);
    return out;
}

Mat kernel_basis(const Mat& m) {
    const Index cols = m.cols();
    Rref rr = rref(m);
    const Index nullity = cols - rr.rank;
    Mat basis = Mat::Zero(nullity, cols);
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (Index p : rr.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    Index row = 0;
    for (Index c = 0; c < cols; ++c) {
        if (is_pivot[static_cast<std::size_t>(c)]) continue;
        basis(row, c) = Fp(1);
        for (Index i = 0; i < rr.rank; ++i)
            basis(row, rr.pivots[static_cast<std::size_t>(i)]) = -rr.reduced(i, c);
        ++row;
    }
    return basis;
}

std::optional<Mat> solve(const Mat& m, const Mat& rhs) {
    if (m.rows() != rhs.rows())
        throw std::invalid_argument("solve: row counts differ");
    const Index cols = m.cols(), extra = rhs.cols();
    Mat aug(m.rows(), cols + extra);
    aug << m, rhs;
    Rref rr = rref(std::move(aug));
    // a pivot in the rhs block means an inconsistent column
    for (Index p : rr.pivots)
        if (p >= cols) return std::nullopt;
    Mat x = Mat::Zero(cols, extra);
    for (Index i = 0; i < rr.rank; ++i)
        x.row(rr.pivots[static_cast<std::size_t>(i)]) = rr.reduced.block(i, cols, 1, extra);
    return x;
}

Mat image_basis(const Mat& m) {
    Rref rr = rref(m);
    Mat basis(m.rows(), rr.rank);
    for (Index i = 0; i < rr.rank; ++i)
        basis.col(i) = m.col(rr.pivots[static_cast<std::size_t>(i)]);
    return basis;
}

Mat row_space_basis(const Mat& m) {
    Rref rr = rref(m);
    return rr.reduced.topRows(rr.rank);
}

Index rank_of(const Mat& m) { return rref(m).rank; }

Mat intersection_of_row_spaces(const Mat& u, const Mat& v) {
    if (u.cols() != v.cols())
        throw std::invalid_argument("intersection_of_row_spaces: ambient dims differ");
    const Index n = u.cols(), ru = u.rows(), rv = v.rows();
    if (ru == 0 || rv == 0) return Mat::Zero(0, n);
    // pairs (a, b) with a*u = b*v are the left kernel of [u; -v]
    Mat stacked(ru + rv, n);
    stacked << u, -v;
    Mat left_kernel = kernel_basis(stacked.transpose());
    Mat vectors(left_kernel.rows(), n);
    for (Index i = 0; i < left_kernel.rows(); ++i)
        vectors.row(i) = left_kernel.block(i, 0, 1, ru) * u;
    return row_space_basis(vectors);
}

QuotientMap quotient_map(const Mat& subspace_rows, Index ambient_dim) {
    if (subspace_rows.rows() != 0 && subspace_rows.cols() != ambient_dim)
        throw std::invalid_argument("quotient_map: ambient dim mismatch");
    Rref rr = rref(subspace_rows.rows() == 0 ? Mat::Zero(0, ambient_dim)
                                             : subspace_rows);
    std::vector<bool> is_pivot(static_cast<std::size_t>(ambient_dim), false);
    for (Index p : rr.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    QuotientMap qm;
    qm.projection = Mat::Zero(ambient_dim - rr.rank, ambient_dim);
    qm.kept.reserve(static_cast<std::size_t>(ambient_dim - rr.rank));
    Index t = 0;
    for (Index c = 0; c < ambient_dim; ++c) {
        if (is_pivot[static_cast<std::size_t>(c)]) continue;
        qm.kept.push_back(c);
        qm.projection(t, c) = Fp(1);
        // subtract the reduction of each pivot coordinate
        for (Index i = 0; i < rr.rank; ++i)
            qm.projection(t, rr.pivots[static_cast<std::size_t>(i)]) = -rr.reduced(i, c);
        ++t;
    }
    return qm;
}

bool rows_contained_in(const Mat& sub, const Mat& space) {
    if (sub.rows() == 0) return true;
    Mat basis = row_space_basis(space);
    return rank_of(stack_rows(basis, sub)) == basis.rows();
}

bool is_zero(const Mat& m) {
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) return false;
    return true;
}

Mat stack_rows(const Mat& a, const Mat& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols())
        throw std::invalid_argument("stack_rows: column counts differ");
    Mat out(a.rows() + b.rows(), a.cols());
    out << a, b;
    return out;
}

}  // namespace kk
