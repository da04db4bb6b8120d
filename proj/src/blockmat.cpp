#include "mwdlab/blockmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "mwdlab/error.hpp"

namespace mwdlab {

namespace {

// In-place LU with partial pivoting. Returns false when a pivot falls below
// the relative singularity threshold.
struct Lu {
  std::size_t n = 0;
  std::vector<double> lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool ok = true;
};

Lu factor(const SquareMatrix& m) {
  Lu f;
  f.n = m.dim();
  f.lu.assign(m.entries().begin(), m.entries().end());
  f.perm.resize(f.n);
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  const double scale = m.max_abs();
  const double tiny = kSingularityThreshold * (scale > 0.0 ? scale : 1.0);
  if (scale == 0.0) {
    f.ok = false;
    return f;
  }
  const std::size_t n = f.n;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(f.lu[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(f.lu[i * n + k]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= tiny) {
      f.ok = false;
      return f;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu[k * n + j], f.lu[piv * n + j]);
      std::swap(f.perm[k], f.perm[piv]);
      f.sign = -f.sign;
    }
    const double pivot = f.lu[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = f.lu[i * n + k] / pivot;
      f.lu[i * n + k] = factor;
      for (std::size_t j = k + 1; j < n; ++j) f.lu[i * n + j] -= factor * f.lu[k * n + j];
    }
  }
  return f;
}

void check_same_dim(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::InvalidArgument, "matrix dimensions differ");
}

}  // namespace

SquareMatrix::SquareMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, 0.0) {}

SquareMatrix::SquareMatrix(std::size_t dim, std::vector<double> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_)
    fail(ErrorKind::InvalidArgument, "entry count does not match dimension");
  for (double v : entries_)
    if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "matrix entries must be finite");
}

SquareMatrix::SquareMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : dim_(rows.size()) {
  entries_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) fail(ErrorKind::InvalidArgument, "matrix must be square");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

SquareMatrix SquareMatrix::identity(std::size_t dim) { return scalar(dim, 1.0); }

SquareMatrix SquareMatrix::scalar(std::size_t dim, double value) {
  SquareMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = value;
  return m;
}

SquareMatrix SquareMatrix::transpose() const {
  SquareMatrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double SquareMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

double SquareMatrix::determinant() const {
  if (dim_ == 0) return 1.0;
  // Exact-zero pivots are the only ones that matter for the determinant, so
  // factor without the relative threshold.
  std::vector<double> a = entries_;
  const std::size_t n = dim_;
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
    if (a[piv * n + k] == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      det = -det;
    }
    det *= a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / a[k * n + k];
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return det;
}

bool SquareMatrix::is_invertible() const { return dim_ == 0 || factor(*this).ok; }

SquareMatrix SquareMatrix::inverse() const {
  const Lu f = factor(*this);
  if (!f.ok) fail(ErrorKind::SingularMatrix, "LU pivot below threshold");
  const std::size_t n = dim_;
  SquareMatrix inv(n);
  std::vector<double> col(n);
  for (std::size_t c = 0; c < n; ++c) {
    // Solve L U x = P e_c.
    for (std::size_t i = 0; i < n; ++i) col[i] = (f.perm[i] == c) ? 1.0 : 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) col[i] -= f.lu[i * n + j] * col[j];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) col[i] -= f.lu[i * n + j] * col[j];
      col[i] /= f.lu[i * n + i];
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, c) = col[i];
  }
  return inv;
}

std::vector<double> SquareMatrix::apply(std::span<const double> x) const {
  std::vector<double> y(dim_);
  apply(x, y);
  return y;
}

void SquareMatrix::apply(std::span<const double> x, std::span<double> out) const {
  for (std::size_t i = 0; i < dim_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) acc += entries_[i * dim_ + j] * x[j];
    out[i] = acc;
  }
}

SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
  check_same_dim(a, b);
  SquareMatrix r(a.dim());
  for (std::size_t k = 0; k < a.entries_.size(); ++k) r.entries_[k] = a.entries_[k] + b.entries_[k];
  return r;
}

SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
  check_same_dim(a, b);
  SquareMatrix r(a.dim());
  for (std::size_t k = 0; k < a.entries_.size(); ++k) r.entries_[k] = a.entries_[k] - b.entries_[k];
  return r;
}

SquareMatrix operator-(const SquareMatrix& a) { return -1.0 * a; }

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
  check_same_dim(a, b);
  const std::size_t n = a.dim();
  SquareMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

SquareMatrix operator*(double s, const SquareMatrix& a) {
  SquareMatrix r(a.dim());
  for (std::size_t k = 0; k < a.entries_.size(); ++k) r.entries_[k] = s * a.entries_[k];
  return r;
}

double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) { return (a - b).max_abs(); }

BlockMatrix::BlockMatrix(SquareMatrix b11, SquareMatrix b12, SquareMatrix b21, SquareMatrix b22)
    : a11(std::move(b11)), a12(std::move(b12)), a21(std::move(b21)), a22(std::move(b22)) {
  const std::size_t d = a11.dim();
  if (d == 0 || a12.dim() != d || a21.dim() != d || a22.dim() != d)
    fail(ErrorKind::InvalidArgument, "blocks must share a positive dimension");
}

SquareMatrix BlockMatrix::full() const {
  const std::size_t d = dim();
  SquareMatrix m(2 * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      m(i, j) = a11(i, j);
      m(i, j + d) = a12(i, j);
      m(i + d, j) = a21(i, j);
      m(i + d, j + d) = a22(i, j);
    }
  return m;
}

BlockMatrix BlockMatrix::from_full(const SquareMatrix& m) {
  if (m.dim() == 0 || m.dim() % 2 != 0)
    fail(ErrorKind::InvalidArgument, "full matrix must have even positive dimension");
  const std::size_t d = m.dim() / 2;
  SquareMatrix b11(d), b12(d), b21(d), b22(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      b11(i, j) = m(i, j);
      b12(i, j) = m(i, j + d);
      b21(i, j) = m(i + d, j);
      b22(i, j) = m(i + d, j + d);
    }
  return {std::move(b11), std::move(b12), std::move(b21), std::move(b22)};
}

BlockMatrix BlockMatrix::transpose() const {
  return {a11.transpose(), a21.transpose(), a12.transpose(), a22.transpose()};
}

double BlockMatrix::determinant() const { return full().determinant(); }

void BlockMatrix::apply(std::span<const double> x, std::span<const double> y, std::span<double> u,
                        std::span<double> v) const {
  const std::size_t d = dim();
  for (std::size_t i = 0; i < d; ++i) {
    double su = 0.0, sv = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      su += a11(i, j) * x[j] + a12(i, j) * y[j];
      sv += a21(i, j) * x[j] + a22(i, j) * y[j];
    }
    u[i] = su;
    v[i] = sv;
  }
}

BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

double max_abs_diff(const BlockMatrix& a, const BlockMatrix& b) {
  return std::max({max_abs_diff(a.a11, b.a11), max_abs_diff(a.a12, b.a12),
                   max_abs_diff(a.a21, b.a21), max_abs_diff(a.a22, b.a22)});
}

BlockMatrix invert(const BlockMatrix& a) { return BlockMatrix::from_full(a.full().inverse()); }

BlockMatrix sharp(const BlockMatrix& a) { return invert(a).transpose(); }

bool is_right_regular(const BlockMatrix& a) {
  return a.a12.is_invertible() && a.a22.is_invertible();
}

bool is_left_regular(const BlockMatrix& a) {
  return a.a11.is_invertible() && a.a21.is_invertible();
}

std::optional<SquareMatrix> detect_cohen(const BlockMatrix& a) {
  constexpr double tol = 1e-12;
  const auto id = SquareMatrix::identity(a.dim());
  if (max_abs_diff(a.a11, id) > tol || max_abs_diff(a.a21, id) > tol) return std::nullopt;
  if (max_abs_diff(a.a12 - a.a22, id) > tol) return std::nullopt;
  return a.a12 - SquareMatrix::scalar(a.dim(), 0.5);
}

CohenMatrix cohen_matrix(const SquareMatrix& m) {
  const std::size_t d = m.dim();
  const auto id = SquareMatrix::identity(d);
  const auto half = SquareMatrix::scalar(d, 0.5);
  const SquareMatrix plus = m + half;
  const SquareMatrix minus = m - half;
  CohenMatrix c;
  c.m = m;
  c.a_m = BlockMatrix(id, plus, id, minus);
  c.p_m = BlockMatrix(-plus, SquareMatrix::zero(d), SquareMatrix::zero(d), minus);
  c.s = id + 4.0 * (m.transpose() * m);
  if (plus.is_invertible() && minus.is_invertible())
    c.c_m = std::abs(plus.determinant() * minus.determinant());
  return c;
}

CohenMatrix cohen_from_quadratic(const SquareMatrix& u, const SquareMatrix& v) {
  return cohen_matrix(u + v.transpose());
}

namespace named {

BlockMatrix j(std::size_t d) {
  return {SquareMatrix::zero(d), SquareMatrix::identity(d), SquareMatrix::scalar(d, -1.0),
          SquareMatrix::zero(d)};
}

BlockMatrix flip(std::size_t d) {
  return {SquareMatrix::zero(d), SquareMatrix::identity(d), SquareMatrix::identity(d),
          SquareMatrix::zero(d)};
}

BlockMatrix reflect_second(std::size_t d) {
  return {SquareMatrix::identity(d), SquareMatrix::zero(d), SquareMatrix::zero(d),
          SquareMatrix::scalar(d, -1.0)};
}

BlockMatrix identity(std::size_t d) {
  return {SquareMatrix::identity(d), SquareMatrix::zero(d), SquareMatrix::zero(d),
          SquareMatrix::identity(d)};
}

BlockMatrix stft(std::size_t d) {
  return {SquareMatrix::zero(d), SquareMatrix::identity(d), SquareMatrix::scalar(d, -1.0),
          SquareMatrix::identity(d)};
}

BlockMatrix ambiguity(std::size_t d) {
  return {SquareMatrix::scalar(d, 0.5), SquareMatrix::identity(d), SquareMatrix::scalar(d, -0.5),
          SquareMatrix::identity(d)};
}

BlockMatrix tau(std::size_t d, double t) {
  return {SquareMatrix::identity(d), SquareMatrix::scalar(d, t), SquareMatrix::identity(d),
          SquareMatrix::scalar(d, -(1.0 - t))};
}

BlockMatrix wigner(std::size_t d) { return tau(d, 0.5); }
BlockMatrix rihaczek(std::size_t d) { return tau(d, 0.0); }
BlockMatrix conj_rihaczek(std::size_t d) { return tau(d, 1.0); }
BlockMatrix cohen(const SquareMatrix& m) { return cohen_matrix(m).a_m; }

}  // namespace named

}  // namespace mwdlab
