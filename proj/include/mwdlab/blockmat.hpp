#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace mwdlab {

/// Threshold used by every invertibility test: the smallest LU pivot must
/// exceed this multiple of the largest absolute entry.
inline constexpr double kSingularityThreshold = 1e-12;

/// Dense d x d real matrix, row-major.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t dim);
  SquareMatrix(std::size_t dim, std::vector<double> entries);
  SquareMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static SquareMatrix identity(std::size_t dim);
  static SquareMatrix zero(std::size_t dim) { return SquareMatrix(dim); }
  static SquareMatrix scalar(std::size_t dim, double value);

  std::size_t dim() const noexcept { return dim_; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  std::span<const double> entries() const noexcept { return entries_; }

  SquareMatrix transpose() const;
  double max_abs() const noexcept;
  double determinant() const;
  bool is_invertible() const;
  /// Throws Error(SingularMatrix) when the pivot test fails.
  SquareMatrix inverse() const;

  /// y = M x
  std::vector<double> apply(std::span<const double> x) const;
  void apply(std::span<const double> x, std::span<double> out) const;

  friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b);
  friend SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b);
  friend SquareMatrix operator-(const SquareMatrix& a);
  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
  friend SquareMatrix operator*(double s, const SquareMatrix& a);
  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> entries_;
};

/// Elementwise max |a - b|.
double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b);

/// 2d x 2d matrix kept as four d x d blocks so formulas naming A_ij read
/// as field accesses.
struct BlockMatrix {
  SquareMatrix a11, a12, a21, a22;

  BlockMatrix() = default;
  BlockMatrix(SquareMatrix b11, SquareMatrix b12, SquareMatrix b21, SquareMatrix b22);

  std::size_t dim() const noexcept { return a11.dim(); }

  SquareMatrix full() const;
  static BlockMatrix from_full(const SquareMatrix& m);

  BlockMatrix transpose() const;
  double determinant() const;

  /// (u, v) = A (x, y)
  void apply(std::span<const double> x, std::span<const double> y, std::span<double> u,
             std::span<double> v) const;

  friend BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b);
  friend bool operator==(const BlockMatrix& a, const BlockMatrix& b) = default;
};

double max_abs_diff(const BlockMatrix& a, const BlockMatrix& b);

BlockMatrix invert(const BlockMatrix& a);
/// A^# = (A^{-1})^T
BlockMatrix sharp(const BlockMatrix& a);

bool is_right_regular(const BlockMatrix& a);
bool is_left_regular(const BlockMatrix& a);

/// Returns M when A = [[I, M + I/2], [I, M - I/2]] up to 1e-12 elementwise.
std::optional<SquareMatrix> detect_cohen(const BlockMatrix& a);

/// A Cohen-type matrix together with the quantities derived from M.
struct CohenMatrix {
  SquareMatrix m;
  BlockMatrix a_m;
  BlockMatrix p_m;
  SquareMatrix s;                ///< I + 4 M^T M
  std::optional<double> c_m;     ///< |det(M + I/2) det(M - I/2)|, right-regular only
};

CohenMatrix cohen_matrix(const SquareMatrix& m);
/// Cohen matrix attached to the quadratic form [[0, V], [U, 0]]: M = U + V^T.
CohenMatrix cohen_from_quadratic(const SquareMatrix& u, const SquareMatrix& v);

namespace named {
BlockMatrix j(std::size_t d);
BlockMatrix flip(std::size_t d);            ///< [[0, I], [I, 0]]
BlockMatrix reflect_second(std::size_t d);  ///< I_2 = [[I, 0], [0, -I]]
BlockMatrix identity(std::size_t d);
BlockMatrix stft(std::size_t d);            ///< [[0, I], [-I, I]]
BlockMatrix ambiguity(std::size_t d);       ///< [[I/2, I], [-I/2, I]]
BlockMatrix tau(std::size_t d, double tau); ///< [[I, tau I], [I, -(1 - tau) I]]
BlockMatrix wigner(std::size_t d);
BlockMatrix rihaczek(std::size_t d);
BlockMatrix conj_rihaczek(std::size_t d);
BlockMatrix cohen(const SquareMatrix& m);
}  // namespace named

}  // namespace mwdlab
