#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hm/mat.hpp"

namespace hm::la {

/// Reduced row echelon form with the pivot column of each nonzero row.
/// The RREF of a matrix is unique, so every elimination route agrees on it.
struct Echelon {
    Mat rref;  // rank x cols
    std::vector<std::size_t> pivots;

    std::size_t rank() const { return pivots.size(); }
};

// Pivoting is deterministic: leftmost nonzero column, topmost nonzero row.
// GF(p) uses Gauss-Jordan on residues; Q uses fraction-free Bareiss
// elimination on integer rows followed by back substitution.
Echelon rref(const Mat& m, Exec exec = Exec::Parallel);
std::size_t rank(const Mat& m, Exec exec = Exec::Parallel);

/// Columns form a basis of ker m, one per non-pivot column in increasing order.
Mat kernel_basis(const Mat& m);

/// Canonical particular solution of a x = b (free variables set to zero).
/// Throws Error(DimensionMismatch) when rows(a) != rows(b).
std::optional<Mat> solve(const Mat& a, const Mat& b);

/// dim(A/B) for B inside A, both given by spanning columns.
/// Throws Error(ContainmentViolation) when B is not contained in A.
std::size_t subquotient_dim(const Mat& span_a, const Mat& span_b);

/// A subspace of K^n stored by an echelon basis: basis^T is in RREF, so the
/// rows of `basis` at `pivots` form an identity block and the coordinates of
/// a member vector v are simply v[pivots].
struct Subspace {
    Mat basis;
    std::vector<std::size_t> pivots;

    std::size_t dim() const { return pivots.size(); }
    std::size_t ambient() const { return basis.rows(); }
    Mat coords(const Mat& v) const { return v.select_rows(pivots); }
    bool contains(const Mat& v) const;
};

Subspace column_space(const Mat& spanning);
Subspace column_space(const FieldSpec& field, std::size_t ambient, const Mat& spanning);

/// The quotient K^n / W with the complement of W's pivots as basis.
struct Quotient {
    Subspace sub;
    std::vector<std::size_t> free;  // ambient positions that survive
    Mat projection;                 // (n - dim W) x n
    Mat section;                    // n x (n - dim W), unit vectors at `free`

    std::size_t dim() const { return free.size(); }
};

Quotient quotient(const Subspace& w);

/// Z/B for B inside Z inside K^n, as in cohomology ker/im.
class Subquotient {
public:
    Subquotient() = default;
    /// Throws Error(ContainmentViolation) unless span(b) lies in span(z).
    Subquotient(const FieldSpec& field, std::size_t ambient, const Mat& z, const Mat& b);

    std::size_t dim() const { return image_.dim(); }
    /// One representative in Z per basis class; columns.
    const Mat& representatives() const { return reps_; }
    /// Class coordinates of columns of v (each column must lie in Z).
    Mat coords(const Mat& v) const;

private:
    Quotient mod_b_;
    Subspace image_;
    Mat reps_;
};

namespace reference {

/// Textbook Gauss-Jordan through the Scalar interface. Slow; kept as an
/// independent oracle for the optimized kernels.
Echelon rref(const Mat& m);
Mat multiply(const Mat& a, const Mat& b);

}  // namespace reference

}  // namespace hm::la
