#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cm {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense matrix of arbitrary-precision integers, row-major.
///
/// Vectors are columns when a matrix acts on them (`M * v`); lattices are
/// stored as the row span of a basis matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVector row(std::size_t i) const;
    IntVector column(std::size_t j) const;
    IntMatrix transpose() const;
    IntMatrix submatrix_rows(std::size_t first, std::size_t count) const;
    /// Rows of `this` followed by rows of `below`; column counts must match.
    IntMatrix stack(const IntMatrix& below) const;
    bool is_zero() const;

    IntVector apply(const IntVector& v) const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b);

    std::string to_string() const;

    // Elementary operations, used by the normal-form routines.
    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);
    /// row(i) -= q * row(j)
    void sub_row_multiple(std::size_t i, std::size_t j, const Integer& q);
    /// col(i) -= q * col(j)
    void sub_col_multiple(std::size_t i, std::size_t j, const Integer& q);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

IntVector operator*(const IntVector& v, const IntMatrix& m); // row vector times matrix
Integer dot(const IntVector& a, const IntVector& b);

/// Row-style Hermite normal form: `U * M == H`, U unimodular, nonzero rows of
/// H first with strictly increasing pivot columns, positive pivots, and the
/// entries above each pivot reduced into [0, pivot).
struct HermiteForm {
    IntMatrix H;
    IntMatrix U;
    std::size_t rank = 0;
};
HermiteForm hermite_normal_form(const IntMatrix& m);

/// Smith normal form: `U * M * V == D`, D diagonal with d_i | d_{i+1} and
/// d_i >= 0; zeros (rank deficiency) trail.
struct SmithForm {
    IntMatrix D;
    IntMatrix U;
    IntMatrix V;
    std::size_t rank = 0;

    IntVector invariant_factors() const; // the first `rank` diagonal entries
};
SmithForm smith_normal_form(const IntMatrix& m);

Integer determinant(const IntMatrix& m);

/// A sublattice of Z^n, carried by its row basis in Hermite normal form.
/// Two lattices are equal iff their bases are identical.
class Lattice {
public:
    Lattice() = default;
    explicit Lattice(std::size_t ambient_rank); // the zero lattice
    static Lattice full(std::size_t ambient_rank);
    /// Lattice spanned by the rows of `generators`.
    static Lattice span(const IntMatrix& generators);

    std::size_t ambient_rank() const { return ambient_; }
    std::size_t rank() const { return basis_.rows(); }
    const IntMatrix& basis() const { return basis_; }

    bool contains(const IntVector& v) const;
    bool contains(const Lattice& other) const;
    /// Coordinates of `v` in terms of the basis rows, if `v` lies in the lattice.
    std::optional<IntVector> coordinates(const IntVector& v) const;

    Lattice saturation() const;
    Lattice operator+(const Lattice& other) const;

    friend bool operator==(const Lattice& a, const Lattice& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_ = 0;
    IntMatrix basis_;
};

/// Basis (rows, Hermite form) of {x in Z^cols : M x = 0}. Always saturated.
IntMatrix integer_kernel(const IntMatrix& m);
Lattice kernel_lattice(const IntMatrix& m);
/// The column span of M as a sublattice of Z^rows. Not saturated.
Lattice image_lattice(const IntMatrix& m);
/// The image of `source` under `m` (column convention).
Lattice image_of(const IntMatrix& m, const Lattice& source);
bool lattice_equal(const Lattice& a, const Lattice& b);
/// [super : sub]; nullopt when the index is infinite (rank drop).
/// Throws InternalInconsistency if `sub` is not contained in `super`.
std::optional<Integer> lattice_index(const Lattice& sub, const Lattice& super);

/// Some integer solution of M x = b, or nullopt.
std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b);

} // namespace cm
