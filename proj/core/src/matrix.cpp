#include "windcert/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace windcert {

namespace {

constexpr double kBranchCutTol = 1e-12;

bool offdiagonal_is_zero(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != Complex(0.0, 0.0)) return false;
  return true;
}

}  // namespace

double unitarity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInputError("unitarity_defect: matrix must be square");
  ComplexMatrix e = m.adjoint() * m;
  e.diagonal().array() -= 1.0;
  // e is Hermitian, so its operator norm is the largest |eigenvalue|.  The
  // Frobenius norm bounds it from above and usually settles the question.
  const double frob = e.norm();
  if (frob <= 1e-14 * static_cast<double>(m.rows())) return frob;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(e, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw InvalidInputError("UnitaryMatrix: matrix must be square and nonempty");
  if (tol < 0.0) tol = default_unitarity_tol(m.rows());
  const double defect = unitarity_defect(m);
  if (defect > tol)
    throw InvalidInputError("UnitaryMatrix: ||U*U - I||_inf = " + std::to_string(defect) +
                            " exceeds tolerance " + std::to_string(tol));
  m_ = std::move(m);
}

UnitaryMatrix UnitaryMatrix::trusted(ComplexMatrix m) {
  UnitaryMatrix u;
  u.m_ = std::move(m);
  return u;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInputError("singular_values: matrix must be square");
  std::vector<double> s(static_cast<std::size_t>(m.rows()));
  if (offdiagonal_is_zero(m)) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) s[static_cast<std::size_t>(i)] = std::abs(m(i, i));
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      s[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, es.eigenvalues()(i)));
  }
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

double schatten_norm(const ComplexMatrix& m, double p) {
  if (std::isnan(p) || p < 1.0)
    throw InvalidInputError("schatten_norm: exponent must satisfy p >= 1 or p = inf");
  const std::vector<double> s = singular_values(m);
  if (std::isinf(p)) return s.empty() ? 0.0 : s.front();
  if (p == 1.0) {
    double sum = 0.0;
    for (double v : s) sum += v;
    return sum;
  }
  if (p == 2.0) {
    double sum = 0.0;
    for (double v : s) sum += v * v;
    return std::sqrt(sum);
  }
  // Scale by the largest singular value to avoid overflow for large p.
  const double top = s.empty() ? 0.0 : s.front();
  if (top == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : s) sum += std::pow(v / top, p);
  return top * std::pow(sum, 1.0 / p);
}

Complex trace(const ComplexMatrix& m) { return m.trace(); }

ComplexMatrix principal_log_unitary(const UnitaryMatrix& u) {
  const ComplexMatrix& m = u.matrix();
  const Eigen::Index n = m.rows();

  auto phase_of = [](Complex lambda) {
    const double theta = std::arg(lambda);
    if (M_PI - std::abs(theta) <= kBranchCutTol)
      throw BranchCutError("principal_log_unitary: eigenvalue phase within 1e-12 of pi");
    return theta;
  };

  // Monomial-derived defects are exactly diagonal; log them directly.
  if (offdiagonal_is_zero(m)) {
    ComplexMatrix log = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) log(i, i) = Complex(0.0, phase_of(m(i, i)));
    return log;
  }

  // A unitary matrix is normal, so its Schur form is diagonal up to rounding;
  // the strictly upper triangle of T is discarded (it is O(machine eps)).
  Eigen::ComplexSchur<ComplexMatrix> schur(m);
  if (schur.info() != Eigen::Success)
    throw IntegrityError("principal_log_unitary: Schur decomposition failed");
  const ComplexMatrix& q = schur.matrixU();
  Eigen::VectorXcd diag(n);
  for (Eigen::Index i = 0; i < n; ++i) diag(i) = Complex(0.0, phase_of(schur.matrixT()(i, i)));
  return q * diag.asDiagonal() * q.adjoint();
}

UnitaryMatrix exp_skew_hermitian(const ComplexMatrix& s) {
  if (s.rows() != s.cols()) throw InvalidInputError("exp_skew_hermitian: matrix must be square");
  const ComplexMatrix h = Complex(0.0, -1.0) * s;  // Hermitian when s is skew-Hermitian
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success)
    throw IntegrityError("exp_skew_hermitian: eigendecomposition failed");
  Eigen::VectorXcd phases(s.rows());
  for (Eigen::Index i = 0; i < s.rows(); ++i)
    phases(i) = std::polar(1.0, es.eigenvalues()(i));
  return UnitaryMatrix::trusted(es.eigenvectors() * phases.asDiagonal() *
                                es.eigenvectors().adjoint());
}

}  // namespace windcert
