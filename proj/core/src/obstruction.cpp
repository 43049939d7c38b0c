#include "windcert/obstruction.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "windcert/parallel.hpp"

namespace windcert {

namespace {

constexpr double kRadiusLimit = 1.0 - 1e-9;  // strict "< 1" with a branch guard margin
constexpr double kQuantizeTol = 1e-6;
constexpr double kIntegrityTol = 0.1;

}  // namespace

RepMap as_rep_map(const AsymptoticRep& rep) {
  return [rep](const GroupWord& w) { return rep(w).matrix(); };
}

PairingResult winding_pair(const GroupData& group, const RepMap& rho, const TwoChain& chain,
                           bool verified_cycle) {
  PairingResult result;
  struct Cell {
    std::int64_t coeff;
    ComplexMatrix log_argument;  // rho(ab) rho(b)^-1 rho(a)^-1
  };
  std::vector<Cell> cells;
  cells.reserve(chain.terms().size());

  for (const ChainTerm<2>& term : chain.terms()) {
    const GroupWord& a = term.cell[0];
    const GroupWord& b = term.cell[1];
    const ComplexMatrix ma = rho(a);
    const ComplexMatrix mb = rho(b);
    const ComplexMatrix mab = rho(group.multiply(a, b));
    ComplexMatrix radius_product = mab * (mb * ma).adjoint();  // rho(ab) rho(a)^-1 rho(b)^-1
    radius_product.diagonal().array() -= 1.0;
    result.max_defect = std::max(result.max_defect, operator_norm(radius_product));
    cells.push_back({term.coeff, mab * (ma * mb).adjoint()});
  }

  if (result.max_defect > kRadiusLimit) return result;  // raw omitted, valid = false

  Complex trace_sum{0.0, 0.0};
  try {
    for (const Cell& cell : cells)
      trace_sum += static_cast<double>(cell.coeff) *
                   trace(principal_log_unitary(UnitaryMatrix(cell.log_argument)));
  } catch (const BranchCutError&) {
    // Spectrum of a log argument touched the cut; treat like a radius failure.
    return result;
  }
  result.raw = trace_sum / Complex(0.0, 2.0 * std::numbers::pi);
  result.rounded = std::llround(result.raw.real());
  const double gap = std::abs(result.raw - Complex(static_cast<double>(result.rounded), 0.0));

  if (!verified_cycle) {
    result.valid = true;
    return result;
  }
  if (gap <= kQuantizeTol) {
    result.valid = true;
  } else if (gap <= kIntegrityTol) {
    result.valid = false;  // float noise beyond budget; fail soft
  } else {
    throw IntegrityError("winding_pair: raw value " + std::to_string(result.raw.real()) + "+" +
                         std::to_string(result.raw.imag()) + "i is " + std::to_string(gap) +
                         " away from an integer on a verified cycle");
  }
  return result;
}

PairingResult winding_pair(const GroupData& group, const RepMap& rho, const VerifiedCycle& cycle) {
  return winding_pair(group, rho, cycle.chain, true);
}

Rational Rational::reduced(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidInputError("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

Rational expected_pairing(const GroupData& group, const IntCocycle& sigma, const TwoChain& chain,
                          std::int64_t k_n, std::int64_t n) {
  return Rational::reduced(kronecker_pair(group, sigma, chain) * k_n, n);
}

Certificate certify_nonstable(const GroupData& group, const IntHom& alpha, const IntHom& beta,
                              const VerifiedCycle& cycle, std::span<const int> n_values,
                              int jobs) {
  Certificate cert;
  cert.group = group.name();
  cert.alpha = alpha.images();
  cert.beta = beta.images();
  cert.cycle = cycle;
  const IntCocycle sigma = twist_cocycle(alpha, beta);
  cert.sigma_kronecker = kronecker_pair(group, sigma, cycle.chain);

  std::vector<int> ns(n_values.begin(), n_values.end());
  const std::function<CertificateEntry(std::size_t)> run = [&](std::size_t i) {
    const int n = ns[i];
    const AsymptoticRep rep(group, alpha, beta, n);
    return CertificateEntry{n, winding_pair(group, as_rep_map(rep), cycle)};
  };
  cert.results = parallel_index_map<CertificateEntry>(ns.size(), jobs, run);

  cert.verdict = cert.sigma_kronecker != 0 && !cert.results.empty();
  for (const CertificateEntry& entry : cert.results)
    if (!entry.pairing.valid || entry.pairing.rounded != cert.sigma_kronecker)
      cert.verdict = false;

  if (cert.verdict) {
    cert.conclusion =
        "For every listed n the winding pairing of the pullback representation against the "
        "pinned 2-cycle equals " +
        std::to_string(cert.sigma_kronecker) +
        " and is nonzero. If some genuine representation pi of dimension n satisfied "
        "||rho_n(g) - pi(g)||_inf < 1/24 for all g in the cycle support, the pairing of pi "
        "would be defined and equal to 0; since it is nonzero, every genuine representation "
        "of dimension n differs from rho_n by at least 1/24 in operator norm somewhere on "
        "the support set.";
  } else {
    cert.conclusion =
        "No non-stability conclusion: the pairing data does not establish a nonzero "
        "quantized winding value for every listed n.";
  }
  return cert;
}

}  // namespace windcert
