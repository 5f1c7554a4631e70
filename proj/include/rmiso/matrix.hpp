#pragma once

#include <cassert>
#include <cstddef>
#include <utility>
#include <vector>

#include "rmiso/bigint.hpp"

namespace rmiso {

/// Dense row-major matrix over an exact ring (Int or Rat).
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n, T(0));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        if (rows.empty()) return Matrix();
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            assert(rows[i].size() == m.cols_);
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    void set_row(std::size_t i, const std::vector<T>& v) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
    }

    std::vector<std::vector<T>> to_rows() const {
        std::vector<std::vector<T>> out;
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
        return out;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        assert(a.cols_ == b.rows_);
        Matrix c(a.rows_, b.cols_, T(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
        return c;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
        return c;
    }

    Matrix scaled(const T& s) const {
        Matrix c = *this;
        for (auto& x : c.data_) x *= s;
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    T trace() const {
        T s = 0;
        for (std::size_t i = 0; i < rows_ && i < cols_; ++i) s += (*this)(i, i);
        return s;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

inline RatMatrix to_rat(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

/// Converts a rational matrix with integral entries; throws otherwise.
inline IntMatrix to_int(const RatMatrix& m) {
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).get_den() != 1) throw PreconditionViolation("matrix entry not integral");
            r(i, j) = m(i, j).get_num();
        }
    return r;
}

inline bool is_integral(const RatMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j).get_den() != 1) return false;
    return true;
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
inline Int determinant(IntMatrix a) {
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    Int prev = 1;
    int s = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            a.swap_rows(k, piv);
            s = -s;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return s * a(n - 1, n - 1);
}

inline Rat determinant(const RatMatrix& m) {
    const std::size_t n = m.rows();
    Int den = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) den = lcm(den, Int(m(i, j).get_den()));
    IntMatrix scaled(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scaled(i, j) = Int(m(i, j) * den);
    return Rat(determinant(scaled)) / Rat(pow_int(den, static_cast<unsigned long>(n)));
}

/// Inverse of a nonsingular rational matrix by Gauss-Jordan elimination.
inline RatMatrix inverse(RatMatrix a) {
    const std::size_t n = a.rows();
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a(piv, c) == 0) ++piv;
        if (piv == n) throw PreconditionViolation("singular matrix");
        a.swap_rows(c, piv);
        inv.swap_rows(c, piv);
        Rat d = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= d;
            inv(c, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            Rat f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

inline std::size_t rank(RatMatrix a) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t piv = r;
        while (piv < a.rows() && a(piv, c) == 0) ++piv;
        if (piv == a.rows()) continue;
        a.swap_rows(r, piv);
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0) continue;
            Rat f = a(i, c) / a(r, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

/// Solves x * A = b for a row vector x (A square nonsingular).
inline std::vector<Rat> solve_left(const RatMatrix& a, const std::vector<Rat>& b) {
    RatMatrix inv = inverse(a);
    std::vector<Rat> x(a.rows(), Rat(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) x[i] += b[j] * inv(j, i);
    return x;
}

/// Characteristic polynomial det(xI - A), constant term first, via Faddeev-LeVerrier.
inline std::vector<Rat> charpoly(const RatMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<Rat> c(n + 1, Rat(0));
    c[n] = 1;
    RatMatrix m(n, n, Rat(0));
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I
        RatMatrix am = a * m;
        for (std::size_t i = 0; i < n; ++i) am(i, i) += c[n - k + 1];
        m = am;
        RatMatrix prod = a * m;
        c[n - k] = -prod.trace() / Rat(static_cast<long>(k));
    }
    return c;
}

struct HermiteResult {
    IntMatrix h;          ///< nonzero rows of the Hermite normal form
    IntMatrix transform;  ///< unimodular U with U * A = [h; 0]
    std::size_t rank = 0;
};

/// Row-style Hermite normal form: upper echelon, positive pivots, entries above a pivot in [0, pivot).
inline HermiteResult hermite(IntMatrix a, bool with_transform = true) {
    const std::size_t r = a.rows(), c = a.cols();
    IntMatrix u = with_transform ? IntMatrix::identity(r) : IntMatrix();
    auto combine = [&](std::size_t i, std::size_t k, const Int& s, const Int& t, const Int& x, const Int& y) {
        // row_i <- s*row_i + t*row_k ; row_k <- x*row_i + y*row_k (old rows)
        for (std::size_t j = 0; j < c; ++j) {
            Int ai = a(i, j), ak = a(k, j);
            a(i, j) = s * ai + t * ak;
            a(k, j) = x * ai + y * ak;
        }
        if (with_transform)
            for (std::size_t j = 0; j < r; ++j) {
                Int ui = u(i, j), uk = u(k, j);
                u(i, j) = s * ui + t * uk;
                u(k, j) = x * ui + y * uk;
            }
    };
    std::size_t row = 0;
    for (std::size_t col = 0; col < c && row < r; ++col) {
        for (std::size_t k = row + 1; k < r; ++k) {
            if (a(k, col) == 0) continue;
            if (a(row, col) == 0) {
                a.swap_rows(row, k);
                if (with_transform) u.swap_rows(row, k);
                continue;
            }
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a(row, col).get_mpz_t(), a(k, col).get_mpz_t());
            Int x = -a(k, col) / g, y = a(row, col) / g;
            combine(row, k, s, t, x, y);
        }
        if (a(row, col) == 0) continue;
        if (a(row, col) < 0) {
            for (std::size_t j = 0; j < c; ++j) a(row, j) = -a(row, j);
            if (with_transform)
                for (std::size_t j = 0; j < r; ++j) u(row, j) = -u(row, j);
        }
        for (std::size_t k = 0; k < row; ++k) {
            Int f = fdiv(a(k, col), a(row, col));
            if (f == 0) continue;
            for (std::size_t j = 0; j < c; ++j) a(k, j) -= f * a(row, j);
            if (with_transform)
                for (std::size_t j = 0; j < r; ++j) u(k, j) -= f * u(row, j);
        }
        ++row;
    }
    HermiteResult res;
    res.rank = row;
    res.h = IntMatrix(row, c);
    for (std::size_t i = 0; i < row; ++i)
        for (std::size_t j = 0; j < c; ++j) res.h(i, j) = a(i, j);
    res.transform = std::move(u);
    return res;
}

/// Basis (rows) of the integer left kernel {z : z * A = 0}.
inline IntMatrix integer_left_kernel(const IntMatrix& a) {
    HermiteResult hr = hermite(a, true);
    const std::size_t r = a.rows();
    IntMatrix k(r - hr.rank, r);
    for (std::size_t i = hr.rank; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) k(i - hr.rank, j) = hr.transform(i, j);
    if (k.rows() == 0) return k;
    return hermite(k, false).h;
}

struct SmithResult {
    std::vector<Int> diagonal;  ///< invariant factors d_1 | d_2 | ... (nonnegative)
    IntMatrix left;             ///< U with U * A * V = diag
    IntMatrix right;            ///< V
};

/// Smith normal form of a square integer matrix with transforms.
inline SmithResult smith(IntMatrix a) {
    const std::size_t n = a.rows();
    assert(a.cols() == n);
    IntMatrix u = IntMatrix::identity(n), v = IntMatrix::identity(n);
    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            // pivot: smallest nonzero absolute value in the trailing block
            std::size_t pi = n, pj = n;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a(i, j) != 0 && (pi == n || abs_int(a(i, j)) < abs_int(a(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == n) break;
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                Int f = fdiv(a(i, t), a(t, t));
                if (f != 0) {
                    for (std::size_t j = 0; j < n; ++j) a(i, j) -= f * a(t, j);
                    for (std::size_t j = 0; j < n; ++j) u(i, j) -= f * u(t, j);
                }
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                Int f = fdiv(a(t, j), a(t, t));
                if (f != 0) {
                    for (std::size_t i = 0; i < n; ++i) a(i, j) -= f * a(i, t);
                    for (std::size_t i = 0; i < n; ++i) v(i, j) -= f * v(i, t);
                }
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility of the trailing block
            std::size_t bad = n;
            for (std::size_t i = t + 1; i < n && bad == n; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == n) break;
            for (std::size_t j = 0; j < n; ++j) a(t, j) += a(bad, j);
            for (std::size_t j = 0; j < n; ++j) u(t, j) += u(bad, j);
        }
        if (a(t, t) < 0) {
            for (std::size_t j = 0; j < n; ++j) a(t, j) = -a(t, j);
            for (std::size_t j = 0; j < n; ++j) u(t, j) = -u(t, j);
        }
    }
    SmithResult res;
    for (std::size_t i = 0; i < n; ++i) res.diagonal.push_back(a(i, i));
    res.left = std::move(u);
    res.right = std::move(v);
    return res;
}

}  // namespace rmiso
