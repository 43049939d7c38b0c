#include "windcert/voiculescu.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace windcert {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Nonnegative remainder of x mod n.
std::int64_t imod(std::int64_t x, std::int64_t n) {
  const std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

}  // namespace

UnitaryMatrix voiculescu_u(int n) {
  if (n < 1) throw InvalidInputError("voiculescu_u: dimension must be positive");
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) u((j + 1) % n, j) = 1.0;
  return UnitaryMatrix::trusted(std::move(u));
}

UnitaryMatrix voiculescu_v(int n) {
  if (n < 1) throw InvalidInputError("voiculescu_v: dimension must be positive");
  ComplexMatrix v = ComplexMatrix::Zero(n, n);
  for (int j = 1; j <= n; ++j)
    v(j - 1, j - 1) = std::polar(1.0, two_pi * static_cast<double>(j) / n);
  return UnitaryMatrix::trusted(std::move(v));
}

AsymptoticRep::AsymptoticRep(GroupData group, IntHom alpha, IntHom beta, int n)
    : group_(std::move(group)), alpha_(std::move(alpha)), beta_(std::move(beta)), n_(n) {
  if (n < 1) throw InvalidInputError("AsymptoticRep: dimension must be positive");
  if (alpha_.images().size() != group_.generator_count() ||
      beta_.images().size() != group_.generator_count())
    throw InvalidInputError("AsymptoticRep: homomorphisms must match the group's generators");
}

UnitaryMatrix AsymptoticRep::monomial(std::int64_t a, std::int64_t b) const {
  ComplexMatrix m = ComplexMatrix::Zero(n_, n_);
  const std::int64_t shift = imod(a, n_);
  for (std::int64_t col = 0; col < n_; ++col) {
    // column col carries basis vector e_{col+1}; phase exp(2 pi i (col+1) b / n)
    const std::int64_t phase_index = imod((col + 1) * imod(b, n_), n_);
    m((col + shift) % n_, col) =
        std::polar(1.0, two_pi * static_cast<double>(phase_index) / n_);
  }
  return UnitaryMatrix::trusted(std::move(m));
}

UnitaryMatrix AsymptoticRep::operator()(const GroupWord& w) const {
  return monomial(alpha_(w), beta_(w));
}

UnitaryMatrix twist_defect(const AsymptoticRep& rep, const GroupWord& g, const GroupWord& h) {
  const GroupWord gh = rep.group().multiply(g, h);
  const ComplexMatrix product =
      rep(gh).matrix() * rep(h).adjoint().matrix() * rep(g).adjoint().matrix();
  return UnitaryMatrix::trusted(product);
}

Complex twist_scalar(const AsymptoticRep& rep, const GroupWord& g, const GroupWord& h) {
  const double m = static_cast<double>(rep.beta()(g)) * static_cast<double>(rep.alpha()(h));
  return std::polar(1.0, -two_pi * m / rep.dim());
}

double defect_norm(const AsymptoticRep& rep, const GroupWord& g, const GroupWord& h, double p) {
  if (std::isnan(p) || p < 1.0)
    throw InvalidInputError("defect_norm: exponent must satisfy p >= 1 or p = inf");
  const std::int64_t n = rep.dim();
  const std::int64_t m = rep.beta()(g) * rep.alpha()(h);
  // rho(gh) - rho(g) rho(h) = (1 - w^m) rho(gh): all singular values equal
  // |1 - w^m| = 2 |sin(pi m / n)|.
  const double factor = 2.0 * std::abs(std::sin(std::numbers::pi * static_cast<double>(m) / n));
  const double closed = std::isinf(p) ? factor : std::pow(static_cast<double>(n), 1.0 / p) * factor;
  if (n <= 256) {
    const GroupWord gh = rep.group().multiply(g, h);
    const ComplexMatrix dense = rep(gh).matrix() - rep(g).matrix() * rep(h).matrix();
    const double measured = schatten_norm(dense, p);
    if (std::abs(measured - closed) > 1e-10)
      throw IntegrityError("defect_norm: closed form " + std::to_string(closed) +
                           " disagrees with dense evaluation " + std::to_string(measured));
  }
  return closed;
}

}  // namespace windcert
