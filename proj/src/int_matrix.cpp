#include "cm/int_matrix.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <utility>

#include "cm/errors.hpp"

namespace cm {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw InputError("ragged matrix literal");
        for (long x : r)
            data_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw InputError("row length mismatch");
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

IntVector IntMatrix::row(std::size_t i) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        c[i] = (*this)(i, j);
    return c;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::submatrix_rows(std::size_t first, std::size_t count) const {
    IntMatrix s(count, cols_);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            s(i, j) = (*this)(first + i, j);
    return s;
}

IntMatrix IntMatrix::stack(const IntMatrix& below) const {
    if (rows_ == 0)
        return below;
    if (below.rows_ == 0)
        return *this;
    if (cols_ != below.cols_)
        throw InputError("stack: column mismatch");
    IntMatrix s(rows_ + below.rows_, cols_);
    std::copy(data_.begin(), data_.end(), s.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(),
              s.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return s;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

IntVector IntMatrix::apply(const IntVector& v) const {
    if (v.size() != cols_)
        throw InputError("apply: dimension mismatch");
    IntVector out(rows_, Integer(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0)
                out[i] += (*this)(i, j) * v[j];
    return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_)
        throw InputError("matrix product: dimension mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& aik = a(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw InputError("matrix sum: dimension mismatch");
    IntMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i)
        c.data_[i] += b.data_[i];
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw InputError("matrix difference: dimension mismatch");
    IntMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i)
        c.data_[i] -= b.data_[i];
    return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? ", " : "") << (*this)(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j)
        return;
    for (std::size_t k = 0; k < cols_; ++k)
        std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j)
        return;
    for (std::size_t k = 0; k < rows_; ++k)
        std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k)
        (*this)(i, k) = -(*this)(i, k);
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t k = 0; k < rows_; ++k)
        (*this)(k, j) = -(*this)(k, j);
}

void IntMatrix::sub_row_multiple(std::size_t i, std::size_t j, const Integer& q) {
    if (q == 0)
        return;
    for (std::size_t k = 0; k < cols_; ++k)
        if ((*this)(j, k) != 0)
            (*this)(i, k) -= q * (*this)(j, k);
}

void IntMatrix::sub_col_multiple(std::size_t i, std::size_t j, const Integer& q) {
    if (q == 0)
        return;
    for (std::size_t k = 0; k < rows_; ++k)
        if ((*this)(k, j) != 0)
            (*this)(k, i) -= q * (*this)(k, j);
}

IntVector operator*(const IntVector& v, const IntMatrix& m) {
    if (v.size() != m.rows())
        throw InputError("row vector product: dimension mismatch");
    IntVector out(m.cols(), Integer(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i] == 0)
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[j] += v[i] * m(i, j);
    }
    return out;
}

Integer dot(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size())
        throw InputError("dot: dimension mismatch");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

namespace {

// Replace rows (r, i) of both matrices by the unimodular combination
// [s t; -b/g a/g] so that entry (i, col) of `h` vanishes.
void gcd_combine_rows(IntMatrix& h, IntMatrix& u, std::size_t r, std::size_t i, std::size_t col) {
    Integer a = h(r, col);
    Integer b = h(i, col);
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer ag = a / g;
    Integer bg = b / g;
    auto combine = [&](IntMatrix& m) {
        for (std::size_t k = 0; k < m.cols(); ++k) {
            Integer x = m(r, k);
            Integer y = m(i, k);
            m(r, k) = s * x + t * y;
            m(i, k) = ag * y - bg * x;
        }
    };
    combine(h);
    combine(u);
}

} // namespace

HermiteForm hermite_normal_form(const IntMatrix& m) {
    HermiteForm f{m, IntMatrix::identity(m.rows()), 0};
    IntMatrix& h = f.H;
    IntMatrix& u = f.U;
    std::size_t r = 0;
    for (std::size_t col = 0; col < h.cols() && r < h.rows(); ++col) {
        for (std::size_t i = r + 1; i < h.rows(); ++i)
            if (h(i, col) != 0)
                gcd_combine_rows(h, u, r, i, col);
        if (h(r, col) == 0)
            continue;
        if (h(r, col) < 0) {
            h.negate_row(r);
            u.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(r, col).get_mpz_t());
            h.sub_row_multiple(i, r, q);
            u.sub_row_multiple(i, r, q);
        }
        ++r;
    }
    f.rank = r;
#ifndef NDEBUG
    assert(f.U * m == f.H);
#endif
    return f;
}

IntVector SmithForm::invariant_factors() const {
    IntVector d(rank);
    for (std::size_t i = 0; i < rank; ++i)
        d[i] = D(i, i);
    return d;
}

SmithForm smith_normal_form(const IntMatrix& m) {
    SmithForm f{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), 0};
    IntMatrix& d = f.D;
    const std::size_t rows = d.rows();
    const std::size_t cols = d.cols();
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (d(i, j) != 0 && (pi == rows || abs(d(i, j)) < abs(d(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows)
            break;
        d.swap_rows(t, pi);
        f.U.swap_rows(t, pi);
        d.swap_cols(t, pj);
        f.V.swap_cols(t, pj);

        bool done = false;
        while (!done) {
            done = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0)
                    continue;
                Integer q = d(i, t) / d(t, t);
                d.sub_row_multiple(i, t, q);
                f.U.sub_row_multiple(i, t, q);
                if (d(i, t) != 0) {
                    d.swap_rows(t, i);
                    f.U.swap_rows(t, i);
                    done = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0)
                    continue;
                Integer q = d(t, j) / d(t, t);
                d.sub_col_multiple(j, t, q);
                f.V.sub_col_multiple(j, t, q);
                if (d(t, j) != 0) {
                    d.swap_cols(t, j);
                    f.V.swap_cols(t, j);
                    done = false;
                }
            }
            if (!done)
                continue;
            // Divisibility: fold a row with a non-multiple into the pivot row.
            for (std::size_t i = t + 1; i < rows && done; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        d.sub_row_multiple(t, i, Integer(-1));
                        f.U.sub_row_multiple(t, i, Integer(-1));
                        done = false;
                        break;
                    }
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            f.U.negate_row(t);
        }
    }
    f.rank = t;
#ifndef NDEBUG
    assert(f.U * m * f.V == f.D);
#endif
    return f;
}

Integer determinant(const IntMatrix& m) {
    if (m.rows() != m.cols())
        throw InputError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    // Bareiss fraction-free elimination.
    IntMatrix a = m;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

Lattice::Lattice(std::size_t ambient_rank) : ambient_(ambient_rank), basis_(0, ambient_rank) {}

Lattice Lattice::full(std::size_t ambient_rank) {
    Lattice l(ambient_rank);
    l.basis_ = IntMatrix::identity(ambient_rank);
    return l;
}

Lattice Lattice::span(const IntMatrix& generators) {
    Lattice l(generators.cols());
    if (generators.rows() == 0)
        return l;
    HermiteForm h = hermite_normal_form(generators);
    l.basis_ = h.H.submatrix_rows(0, h.rank);
    return l;
}

std::optional<IntVector> Lattice::coordinates(const IntVector& v) const {
    if (v.size() != ambient_)
        throw InputError("lattice coordinates: dimension mismatch");
    if (rank() == 0) {
        bool zero = std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
        return zero ? std::optional<IntVector>(IntVector{}) : std::nullopt;
    }
    return solve(basis_.transpose(), v);
}

bool Lattice::contains(const IntVector& v) const { return coordinates(v).has_value(); }

bool Lattice::contains(const Lattice& other) const {
    if (other.ambient_ != ambient_)
        return false;
    for (std::size_t i = 0; i < other.rank(); ++i)
        if (!contains(other.basis_.row(i)))
            return false;
    return true;
}

Lattice Lattice::saturation() const {
    if (rank() == 0)
        return *this;
    // {x : C x = 0} where the rows of C span the orthogonal complement.
    IntMatrix complement = integer_kernel(basis_);
    if (complement.rows() == 0)
        return full(ambient_);
    return kernel_lattice(complement);
}

Lattice Lattice::operator+(const Lattice& other) const {
    if (other.ambient_ != ambient_)
        throw InputError("lattice sum: ambient mismatch");
    return span(basis_.stack(other.basis_));
}

IntMatrix integer_kernel(const IntMatrix& m) {
    // U M^T = H; rows of U against the zero rows of H span the kernel.
    HermiteForm h = hermite_normal_form(m.transpose());
    const std::size_t n = m.cols();
    IntMatrix k = h.U.submatrix_rows(h.rank, n - h.rank);
    if (k.rows() == 0)
        return IntMatrix(0, n);
    HermiteForm kh = hermite_normal_form(k);
    return kh.H.submatrix_rows(0, kh.rank);
}

Lattice kernel_lattice(const IntMatrix& m) { return Lattice::span(integer_kernel(m)); }

Lattice image_lattice(const IntMatrix& m) { return Lattice::span(m.transpose()); }

Lattice image_of(const IntMatrix& m, const Lattice& source) {
    if (source.ambient_rank() != m.cols())
        throw InputError("image_of: dimension mismatch");
    if (source.rank() == 0)
        return Lattice(m.rows());
    return Lattice::span(source.basis() * m.transpose());
}

bool lattice_equal(const Lattice& a, const Lattice& b) { return a == b; }

std::optional<Integer> lattice_index(const Lattice& sub, const Lattice& super) {
    if (!super.contains(sub))
        throw InternalInconsistency("lattice_index: not a sublattice");
    if (sub.rank() < super.rank())
        return std::nullopt;
    if (sub.rank() == 0)
        return Integer(1);
    IntMatrix coords(sub.rank(), super.rank());
    for (std::size_t i = 0; i < sub.rank(); ++i) {
        IntVector c = *super.coordinates(sub.basis().row(i));
        for (std::size_t j = 0; j < c.size(); ++j)
            coords(i, j) = c[j];
    }
    return Integer(abs(determinant(coords)));
}

std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b) {
    if (b.size() != m.rows())
        throw InputError("solve: dimension mismatch");
    SmithForm s = smith_normal_form(m);
    IntVector ub = s.U.apply(b);
    IntVector y(m.cols(), Integer(0));
    for (std::size_t i = 0; i < ub.size(); ++i) {
        if (i < s.rank) {
            if (ub[i] % s.D(i, i) != 0)
                return std::nullopt;
            y[i] = ub[i] / s.D(i, i);
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V.apply(y);
}

} // namespace cm
