#pragma once

// Dense exact linear algebra over GF(p^m): matrices, canonical reduced
// row-echelon form, kernels, eigenspaces and canonicalized subspaces.
// Subspace bases are kept in RREF with zero rows dropped, so two subspaces
// are equal iff their basis matrices are identical.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hopfrep/field.hpp"

namespace hopfrep {

class NotContained : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vec = std::vector<Scalar>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr F, std::size_t rows, std::size_t cols)
      : F_(std::move(F)), rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(FieldPtr F, std::size_t n) {
    Matrix m(F, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F->one();
    return m;
  }

  static Matrix from_rows(FieldPtr F, const std::vector<Vec>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(F, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw std::invalid_argument("ragged rows");
      for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
  }

  const FieldPtr& field() const { return F_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  Scalar at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Vec row(std::size_t r) const { return Vec(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_); }
  void set_row(std::size_t r, const Vec& v) {
    for (std::size_t c = 0; c < cols_; ++c) at(r, c) = v[c];
  }

  Scalar* row_ptr(std::size_t r) { return a_.data() + r * cols_; }
  const Scalar* row_ptr(std::size_t r) const { return a_.data() + r * cols_; }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

  Matrix operator+(const Matrix& o) const {
    Matrix r(F_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->add(a_[i], o.a_[i]);
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    Matrix r(F_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->sub(a_[i], o.a_[i]);
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(F_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        Scalar x = at(i, k);
        if (F_->is_zero(x)) continue;
        const Scalar* src = o.row_ptr(k);
        Scalar* dst = r.row_ptr(i);
        for (std::size_t j = 0; j < o.cols_; ++j)
          dst[j] = F_->add(dst[j], F_->mul(x, src[j]));
      }
    }
    return r;
  }

  Matrix scaled(Scalar x) const {
    Matrix r(F_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->mul(x, a_[i]);
    return r;
  }

  Matrix pow(std::uint64_t e) const {
    if (rows_ != cols_) throw std::invalid_argument("pow of non-square matrix");
    Matrix acc = identity(F_, rows_), base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  Matrix transpose() const {
    Matrix r(F_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x.v != 0) return false;
    return true;
  }

 private:
  FieldPtr F_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

inline Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) throw std::invalid_argument("vstack width mismatch");
  Matrix r(top.field(), top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) r.at(i, j) = top.at(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < bottom.cols(); ++j) r.at(top.rows() + i, j) = bottom.at(i, j);
  return r;
}

inline Matrix kron(const Matrix& x, const Matrix& y) {
  const auto& F = x.field();
  Matrix r(F, x.rows() * y.rows(), x.cols() * y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      Scalar c = x.at(i, j);
      if (F->is_zero(c)) continue;
      for (std::size_t k = 0; k < y.rows(); ++k)
        for (std::size_t l = 0; l < y.cols(); ++l)
          r.at(i * y.rows() + k, j * y.cols() + l) = F->mul(c, y.at(k, l));
    }
  return r;
}

struct RrefResult {
  Matrix mat;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

inline RrefResult rref(Matrix m) {
  const auto& F = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  RrefResult out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!F->is_zero(m.at(i, c))) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    Scalar ip = F->inv(m.at(r, c));
    if (!F->is_one(ip)) {
      Scalar* pr = m.row_ptr(r);
      for (std::size_t j = c; j < cols; ++j) pr[j] = F->mul(ip, pr[j]);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      Scalar f = m.at(i, c);
      if (F->is_zero(f)) continue;
      Scalar nf = F->neg(f);
      const Scalar* pr = m.row_ptr(r);
      Scalar* pi = m.row_ptr(i);
      for (std::size_t j = c; j < cols; ++j) pi[j] = F->add(pi[j], F->mul(nf, pr[j]));
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.mat = std::move(m);
  return out;
}

inline std::size_t rank_of(const Matrix& m) { return rref(m).rank; }

// Row space in canonical form.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(FieldPtr F, std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix(std::move(F), 0, ambient);
    return s;
  }

  static Subspace full(FieldPtr F, std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix::identity(std::move(F), ambient);
    return s;
  }

  static Subspace from_matrix(const Matrix& rows) {
    RrefResult r = rref(rows);
    Subspace s;
    s.ambient_ = rows.cols();
    s.basis_ = Matrix(rows.field(), r.rank, rows.cols());
    for (std::size_t i = 0; i < r.rank; ++i)
      for (std::size_t j = 0; j < rows.cols(); ++j) s.basis_.at(i, j) = r.mat.at(i, j);
    s.pivots_.assign(r.pivots.begin(), r.pivots.end());
    return s;
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vec basis_row(std::size_t i) const { return basis_.row(i); }

  // v minus its projection onto the row space; zero iff v is contained.
  Vec reduce(Vec v) const {
    const auto& F = basis_.field();
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
      Scalar f = v[pivots_[i]];
      if (F->is_zero(f)) continue;
      Scalar nf = F->neg(f);
      const Scalar* br = basis_.row_ptr(i);
      for (std::size_t j = 0; j < ambient_; ++j) v[j] = F->add(v[j], F->mul(nf, br[j]));
    }
    return v;
  }

  bool contains(const Vec& v) const {
    if (dim() == 0) {
      for (const auto& x : v)
        if (x.v != 0) return false;
      return true;
    }
    Vec res = reduce(v);
    for (const auto& x : res)
      if (x.v != 0) return false;
    return true;
  }

  bool contains(const Subspace& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_row(i))) return false;
    return true;
  }

  // Coordinates of v in the RREF basis; nullopt when v is outside.
  std::optional<Vec> coords(const Vec& v) const {
    Vec c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
    if (!contains(v)) return std::nullopt;
    return c;
  }

  friend bool operator==(const Subspace& x, const Subspace& y) {
    return x.ambient_ == y.ambient_ && x.basis_ == y.basis_;
  }
  friend bool operator!=(const Subspace& x, const Subspace& y) { return !(x == y); }

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

inline Subspace kernel(const Matrix& m) {
  const auto& F = m.field();
  RrefResult r = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : r.pivots) is_pivot[c] = true;
  Matrix basis(F, cols - r.rank, cols);
  std::size_t row = 0;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    basis.at(row, f) = F->one();
    for (std::size_t i = 0; i < r.rank; ++i)
      basis.at(row, r.pivots[i]) = F->neg(r.mat.at(i, f));
    ++row;
  }
  return Subspace::from_matrix(basis);
}

inline Subspace eigenspace(const Matrix& m, Scalar alpha) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenspace of non-square matrix");
  return kernel(m - Matrix::identity(m.field(), m.rows()).scaled(alpha));
}

inline Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) throw std::invalid_argument("subspace sum ambient mismatch");
  return Subspace::from_matrix(vstack(u.basis(), v.basis()));
}

inline std::size_t quotient_dim(const Subspace& u, const Subspace& v) {
  if (!u.contains(v)) throw NotContained("quotient_dim: V is not contained in U");
  return u.dim() - v.dim();
}

// Particular solution of A x = b (free variables set to zero).
inline std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  const auto& F = a.field();
  Matrix aug(F, a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  RrefResult r = rref(aug);
  for (auto c : r.pivots)
    if (c == a.cols()) return std::nullopt;
  Vec x(a.cols(), F->zero());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.mat.at(i, a.cols());
  return x;
}

}  // namespace hopfrep
