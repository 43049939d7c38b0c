#pragma once

#include <functional>
#include <span>
#include <string>

#include "windcert/chains.hpp"
#include "windcert/matrix.hpp"
#include "windcert/voiculescu.hpp"

namespace windcert {

// Operator-norm distance below which a genuine representation would force the
// winding pairing to vanish; the basis of every non-stability verdict.
inline constexpr double nonstability_threshold = 1.0 / 24.0;

/// Outcome of one winding pairing evaluation.
struct PairingResult {
  Complex raw{0.0, 0.0};     // (1/2 pi i) sum x_j Tr log(defect_j); 0 when not computed
  std::int64_t rounded = 0;  // nearest integer to Re(raw)
  bool valid = false;        // radius condition met and, on verified cycles, quantized
  double max_defect = 0.0;   // max_j ||rho(a_j b_j) rho(a_j)^-1 rho(b_j)^-1 - I||_inf
};

// Unitary-valued evaluation map; inverses are taken as adjoints.
using RepMap = std::function<ComplexMatrix(const GroupWord&)>;

RepMap as_rep_map(const AsymptoticRep& rep);

// The pairing of Definition-style trace-log type:
//   raw = (1/2 pi i) sum_j x_j Tr(log(rho(a_j b_j) rho(b_j)^-1 rho(a_j)^-1)).
// Every cell must satisfy ||rho(a_j b_j) rho(a_j)^-1 rho(b_j)^-1 - I||_inf
// <= 1 - 1e-9; otherwise valid = false and raw is left at 0.  On verified
// cycles the raw value must sit within 1e-6 of an integer (valid = true);
// gaps in (1e-6, 0.1] fail soft (valid = false), larger gaps throw
// IntegrityError since they signal a bug or a broken cycle certificate.
PairingResult winding_pair(const GroupData& group, const RepMap& rho, const TwoChain& chain,
                           bool verified_cycle = false);
PairingResult winding_pair(const GroupData& group, const RepMap& rho, const VerifiedCycle& cycle);

/// Exact rational arithmetic for the predicted pairing value.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational reduced(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const { return den == 1; }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// <sigma, c> * k_n / n, exactly.
Rational expected_pairing(const GroupData& group, const IntCocycle& sigma, const TwoChain& chain,
                          std::int64_t k_n, std::int64_t n);

struct CertificateEntry {
  int n = 0;
  PairingResult pairing;
};

/// A re-checkable non-stability claim with all inputs pinned.
struct Certificate {
  std::string group;
  std::vector<std::int64_t> alpha, beta;
  VerifiedCycle cycle;
  std::int64_t sigma_kronecker = 0;
  double threshold = nonstability_threshold;
  std::vector<CertificateEntry> results;
  bool verdict = false;
  std::string conclusion;
};

// Runs the winding pairing of the pullback representation against a verified
// cycle for each n in n_values (k_n = n).  verdict is true iff the Kronecker
// value is nonzero and every pairing is valid and equals it.  jobs > 1 fans
// the n sweep across threads; results are merged in n order.
Certificate certify_nonstable(const GroupData& group, const IntHom& alpha, const IntHom& beta,
                              const VerifiedCycle& cycle, std::span<const int> n_values,
                              int jobs = 1);

}  // namespace windcert
