#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <vector>

#include "windcert/errors.hpp"

namespace windcert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

// Schatten exponent for the operator norm.
inline constexpr double p_inf = std::numeric_limits<double>::infinity();

// Default tolerance for the unitarity certificate; grows with dimension since
// accumulated floating error does.
inline double default_unitarity_tol(Eigen::Index dim) { return 1e-10 * static_cast<double>(dim); }

// ||U*U - I||_inf, exact via the Hermitian spectrum of the defect.
double unitarity_defect(const ComplexMatrix& m);

/// A dense complex square matrix certified unitary at construction.
class UnitaryMatrix {
 public:
  // Checks ||U*U - I||_inf <= tol; tol < 0 selects default_unitarity_tol(dim).
  explicit UnitaryMatrix(ComplexMatrix m, double tol = -1.0);

  // Bypasses the certificate for matrices unitary by construction (monomial
  // fast paths, eigenvector frames).  Callers own the proof obligation.
  static UnitaryMatrix trusted(ComplexMatrix m);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  UnitaryMatrix adjoint() const { return trusted(m_.adjoint()); }

 private:
  UnitaryMatrix() = default;
  ComplexMatrix m_;
};

// Singular values in decreasing order, computed from the Hermitian
// eigendecomposition of M*M (exact-zero off-diagonal matrices short-circuit).
std::vector<double> singular_values(const ComplexMatrix& m);

// Unnormalized Schatten p-norm: (sum s_i^p)^(1/p), max s_i for p = inf.
// Throws InvalidInputError for p < 1.
double schatten_norm(const ComplexMatrix& m, double p);

inline double operator_norm(const ComplexMatrix& m) { return schatten_norm(m, p_inf); }

Complex trace(const ComplexMatrix& m);

// Principal logarithm of a unitary matrix: the skew-Hermitian L with
// exp(L) = U and eigenvalue phases in (-pi, pi).  Agrees with the power series
// log(1 + X) on ||U - I||_inf < 1.  Throws BranchCutError when an eigenvalue
// phase is within 1e-12 of pi; no side is ever chosen silently.
ComplexMatrix principal_log_unitary(const UnitaryMatrix& u);

// exp(S) for skew-Hermitian S, evaluated through the Hermitian spectrum of
// -iS so the result is unitary to rounding error.
UnitaryMatrix exp_skew_hermitian(const ComplexMatrix& s);

}  // namespace windcert
