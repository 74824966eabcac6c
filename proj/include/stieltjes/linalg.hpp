#pragma once

#include <complex>

#include <Eigen/Dense>

#include "stieltjes/error.hpp"

namespace stieltjes {

using cplx = std::complex<double>;
using Index = Eigen::Index;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

/// Largest singular value.
double opnorm(const Mat& m);

/// (M + M*)/2 with exactly mirrored off-diagonal entries and a real diagonal.
Mat symmetrized(const Mat& m);

/// re A = (A + A*)/2 and im A = (A - A*)/(2i).
Mat re_part(const Mat& m);
Mat im_part(const Mat& m);

/// Smallest eigenvalue of the Hermitian part of `m`.
double min_eigenvalue(const Mat& m);

/// Singular values in descending order.
RVec singular_values(const Mat& m);

/// Count of singular values above rtol * sigma_1 (0 for the zero matrix).
int numerical_rank(const Mat& m, double rtol);

/// Orthogonal projector onto the column space of `m`, with the rank cut taken
/// relative to the largest singular value.
Mat range_projector(const Mat& m, double rtol);

/// Orthogonal projector onto the null space of `m`.
Mat null_projector(const Mat& m, double rtol);

/// Horizontal concatenation [a b]; both must have the same row count.
Mat hcat(const Mat& a, const Mat& b);

bool is_hermitian(const Mat& m);
bool is_psd(const Mat& m);

/// Hermitian q x q matrix, stored symmetrized.
class HermMatrix {
 public:
  HermMatrix() = default;
  /// Throws NotHermitian if ||M - M*|| exceeds 1e-10 (1 + ||M||).
  explicit HermMatrix(const Mat& m);

  static HermMatrix zero(Index q);

  const Mat& mat() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

  friend bool operator==(const HermMatrix& a, const HermMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_.cols() == b.m_.cols() &&
           a.m_ == b.m_;
  }

 protected:
  struct Trusted {};
  HermMatrix(Trusted, Mat m) : m_(std::move(m)) {}

  Mat m_;
};

/// Nonnegative Hermitian matrix: lambda_min >= -1e-10 (1 + ||M||).
class PsdMatrix : public HermMatrix {
 public:
  PsdMatrix() = default;
  explicit PsdMatrix(const Mat& m);

  static PsdMatrix zero(Index q);
  static PsdMatrix identity(Index q);
};

}  // namespace stieltjes
