#include "stieltjes/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace stieltjes {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPsd: return "NotPsd";
    case ErrorKind::NonFiniteKernel: return "NonFiniteKernel";
    case ErrorKind::DegenerateMap: return "DegenerateMap";
    case ErrorKind::NonPsdDensity: return "NonPsdDensity";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IllegalConversion: return "IllegalConversion";
    case ErrorKind::UnsupportedPath: return "UnsupportedPath";
    case ErrorKind::UnsupportedKind: return "UnsupportedKind";
    case ErrorKind::NotAnAtom: return "NotAnAtom";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ClassMismatch: return "ClassMismatch";
    case ErrorKind::EvaluationFailed: return "EvaluationFailed";
    case ErrorKind::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorKind::InconsistentEquivalence: return "InconsistentEquivalence";
    case ErrorKind::RankInstability: return "RankInstability";
    case ErrorKind::ShiftNotPsd: return "ShiftNotPsd";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

RVec singular_values(const Mat& m) {
  if (m.size() == 0) return RVec();
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues();
}

double opnorm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  return singular_values(m)(0);
}

Mat symmetrized(const Mat& m) {
  const Index q = m.rows();
  Mat out(q, q);
  for (Index j = 0; j < q; ++j) {
    out(j, j) = cplx(m(j, j).real(), 0.0);
    for (Index k = j + 1; k < q; ++k) {
      const cplx upper = m(j, k);
      const cplx lower = m(k, j);
      const double re = 0.5 * (upper.real() + lower.real());
      const double im = 0.5 * (upper.imag() - lower.imag());
      out(j, k) = cplx(re, im);
      out(k, j) = cplx(re, -im);
    }
  }
  return out;
}

Mat re_part(const Mat& m) { return symmetrized(m); }

Mat im_part(const Mat& m) {
  // im A = re(-iA)
  return symmetrized(cplx(0.0, -1.0) * m);
}

double min_eigenvalue(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(symmetrized(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

namespace {

struct RangeBasis {
  Mat u;
  int rank = 0;
};

RangeBasis left_basis(const Mat& m, double rtol) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU);
  const RVec& s = svd.singularValues();
  int r = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    const double cut = rtol * s(0);
    for (Index i = 0; i < s.size(); ++i)
      if (s(i) > cut) ++r;
  }
  return {svd.matrixU(), r};
}

}  // namespace

int numerical_rank(const Mat& m, double rtol) {
  const RVec s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > rtol * s(0)) ++r;
  return r;
}

Mat range_projector(const Mat& m, double rtol) {
  const RangeBasis b = left_basis(m, rtol);
  const Mat u = b.u.leftCols(b.rank);
  return u * u.adjoint();
}

Mat null_projector(const Mat& m, double rtol) {
  // N(M) = R(M*)^perp
  const Index n = m.cols();
  return Mat::Identity(n, n) - range_projector(m.adjoint(), rtol);
}

Mat hcat(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows())
    throw Error(ErrorKind::DimensionMismatch, "hcat: row counts differ");
  Mat out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

bool is_hermitian(const Mat& m) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= kHermTol * (1.0 + opnorm(m));
}

bool is_psd(const Mat& m) {
  return is_hermitian(m) && min_eigenvalue(m) >= -kPsdTol * (1.0 + opnorm(m));
}

HermMatrix::HermMatrix(const Mat& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorKind::DimensionMismatch, "Hermitian matrix must be square");
  if (!m.allFinite())
    throw Error(ErrorKind::InvalidArgument, "matrix has non-finite entries");
  if (!is_hermitian(m))
    throw Error(ErrorKind::NotHermitian, "matrix is not Hermitian within tolerance");
  m_ = symmetrized(m);
}

HermMatrix HermMatrix::zero(Index q) { return HermMatrix(Trusted{}, Mat::Zero(q, q)); }

PsdMatrix::PsdMatrix(const Mat& m) : HermMatrix(m) {
  if (min_eigenvalue(m_) < -kPsdTol * (1.0 + opnorm(m_)))
    throw Error(ErrorKind::NotPsd, "matrix is not nonnegative Hermitian within tolerance");
}

PsdMatrix PsdMatrix::zero(Index q) {
  PsdMatrix p;
  p.m_ = Mat::Zero(q, q);
  return p;
}

PsdMatrix PsdMatrix::identity(Index q) {
  PsdMatrix p;
  p.m_ = Mat::Identity(q, q);
  return p;
}

}  // namespace stieltjes
