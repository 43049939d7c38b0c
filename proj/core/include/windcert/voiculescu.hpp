#pragma once

#include "windcert/group.hpp"
#include "windcert/matrix.hpp"

namespace windcert {

// The n x n Voiculescu pair: u_n the cyclic downward shift (entry
// (j+1 mod n, j) = 1) and v_n = diag(exp(2 pi i j / n)), j = 1..n.  They obey
// v_n u_n = exp(2 pi i / n) u_n v_n.
UnitaryMatrix voiculescu_u(int n);
UnitaryMatrix voiculescu_v(int n);

/// The pullback map rho(g) = u_n^alpha(g) v_n^beta(g): an asymptotic
/// representation of the group whose multiplicative defect is the scalar
/// exp(-2 pi i beta(g) alpha(h) / n).
class AsymptoticRep {
 public:
  AsymptoticRep(GroupData group, IntHom alpha, IntHom beta, int n);

  int dim() const noexcept { return n_; }
  const GroupData& group() const noexcept { return group_; }
  const IntHom& alpha() const noexcept { return alpha_; }
  const IntHom& beta() const noexcept { return beta_; }

  // Monomial fast path: entry (j + a mod n, j) = exp(2 pi i j b / n) with
  // a = alpha(w), b = beta(w); O(n) time, exact phases.
  UnitaryMatrix operator()(const GroupWord& w) const;

  // u_n^a v_n^b by index arithmetic (never repeated multiplication).
  UnitaryMatrix monomial(std::int64_t a, std::int64_t b) const;

 private:
  GroupData group_;
  IntHom alpha_, beta_;
  int n_;
};

// The product rho(gh) rho(h)^-1 rho(g)^-1, computed by dense multiplication.
// Equal to twist_scalar(...) times the identity up to rounding error.
UnitaryMatrix twist_defect(const AsymptoticRep& rep, const GroupWord& g, const GroupWord& h);

// exp(-2 pi i beta(g) alpha(h) / n).
Complex twist_scalar(const AsymptoticRep& rep, const GroupWord& g, const GroupWord& h);

// ||rho(gh) - rho(g) rho(h)||_p.  Closed form n^(1/p) * |exp(-2 pi i m/n) - 1|
// with m = beta(g) alpha(h); for n <= 256 a dense evaluation is run alongside
// and must agree to 1e-10 (IntegrityError otherwise).
double defect_norm(const AsymptoticRep& rep, const GroupWord& g, const GroupWord& h, double p);

}  // namespace windcert
