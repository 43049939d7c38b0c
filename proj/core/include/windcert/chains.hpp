#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "windcert/group.hpp"

namespace windcert {

template <std::size_t Arity>
struct ChainTerm {
  std::int64_t coeff = 0;
  std::array<GroupWord, Arity> cell;
  friend bool operator==(const ChainTerm&, const ChainTerm&) = default;
};

/// Integer chain on the (unnormalized) bar complex.  Terms are kept as given;
/// simplification merges cells with equal normal forms and drops zeros.
template <std::size_t Arity>
class BarChain {
 public:
  BarChain() = default;
  BarChain(std::initializer_list<ChainTerm<Arity>> terms) : terms_(terms) {}

  void add(std::int64_t coeff, std::array<GroupWord, Arity> cell) {
    if (coeff != 0) terms_.push_back({coeff, std::move(cell)});
  }

  const std::vector<ChainTerm<Arity>>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  BarChain& operator+=(const BarChain& other) {
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
  }
  BarChain operator-() const {
    BarChain out = *this;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
  }

 private:
  std::vector<ChainTerm<Arity>> terms_;
};

using OneChain = BarChain<1>;
using TwoChain = BarChain<2>;
using ThreeChain = BarChain<3>;

// Canonical form: every cell word normalized, identical cells merged, zero
// coefficients dropped, terms sorted.  Requires a normal form that decides
// equality; on NormalFormKind::None groups use the syntactic variant below.
template <std::size_t Arity>
BarChain<Arity> simplify(const GroupData& group, const BarChain<Arity>& chain);

// Same merging but with free reduction only.  Sound in every group (merged
// cells are genuinely equal) yet not complete; used for cell bookkeeping on
// groups without a normal form.
template <std::size_t Arity>
BarChain<Arity> simplify_free(const BarChain<Arity>& chain);

// d2[a|b] = [a] - [ab] + [b], extended linearly and simplified.
// Throws CannotVerifyError if the group does not decide equality.
OneChain boundary2(const GroupData& group, const TwoChain& chain);

// d3[a|b|c] = [a|b] - [a|bc] + [ab|c] - [b|c], extended linearly.
TwoChain boundary3(const GroupData& group, const ThreeChain& chain);

bool is_cycle(const GroupData& group, const TwoChain& chain);

/// Provenance of the claim "this chain is a 2-cycle".
struct PushforwardInfo {
  std::string source_group;                  // name of the group the cycle came from
  std::vector<std::string> source_generators;
  std::vector<GroupWord> splitting;          // image of each source generator
  TwoChain source_cycle;                     // directly verified on the source group
  bool relators_checked = false;             // true when the target's normal form
                                             // allowed verifying the splitting
};

struct CycleCertificate {
  enum class Mode { Direct, Structural };
  Mode mode = Mode::Direct;
  std::optional<PushforwardInfo> pushforward;  // set for Structural
};

struct VerifiedCycle {
  TwoChain chain;
  CycleCertificate certificate;
};

// Direct route: runs boundary2 and requires it to vanish.
VerifiedCycle verify_cycle(const GroupData& group, TwoChain chain);

// Applies a generator-image substitution to a word (images indexed like the
// source group's generators; negative exponents use inverted images).
GroupWord map_word(const GroupData& target, std::span<const GroupWord> images, const GroupWord& w);

// Pushforward along the homomorphism determined by generator images.  When the
// target decides equality, every source relator image is checked to be the
// identity (throws InvalidInputError otherwise); the structural certificate
// records whether that check ran.
VerifiedCycle push_forward_cycle(const GroupData& source, const GroupData& target,
                                 std::span<const GroupWord> images, const VerifiedCycle& cycle);

TwoChain push_forward_chain(const GroupData& target, std::span<const GroupWord> images,
                            const TwoChain& chain);

// Support set {a_j, b_j, a_j b_j} of a 2-chain, deduplicated.
std::vector<GroupWord> cycle_support(const GroupData& group, const TwoChain& chain);

/// Integer-valued 2-cocycle in one of three shapes: a cup product of two
/// homomorphisms, a coboundary of a finite integer table, or a plain table.
class IntCocycle {
 public:
  struct Cup {
    IntHom alpha, beta;
    int sign = +1;  // evaluates as sign * alpha(g) * beta(h)
  };
  struct Coboundary {
    std::map<GroupWord, std::int64_t> gamma;  // keys normalized; 0 outside
  };
  struct Table {
    std::map<std::pair<GroupWord, GroupWord>, std::int64_t> values;  // keys normalized; 0 outside
  };

  static IntCocycle cup(IntHom alpha, IntHom beta, int sign = +1);
  static IntCocycle coboundary(std::map<GroupWord, std::int64_t> gamma);
  static IntCocycle table(std::map<std::pair<GroupWord, GroupWord>, std::int64_t> values);

  std::int64_t evaluate(const GroupData& group, const GroupWord& g, const GroupWord& h) const;
  bool is_cup() const noexcept { return std::holds_alternative<Cup>(form_); }
  const Cup* as_cup() const noexcept { return std::get_if<Cup>(&form_); }

 private:
  explicit IntCocycle(std::variant<Cup, Coboundary, Table> form) : form_(std::move(form)) {}
  std::variant<Cup, Coboundary, Table> form_;
};

// The cocycle sigma(g,h) = -beta(g) alpha(h), whose scalar exp(2 pi i
// sigma(g,h)/n) is exactly the multiplicative defect of the pullback
// representation; it represents the same class as the cup product of alpha
// and beta.
IntCocycle twist_cocycle(const IntHom& alpha, const IntHom& beta);

// Checks sigma(g,h) - sigma(g,hk) + sigma(gh,k) - sigma(h,k) = 0 on the
// supplied triples; vacuously true on an empty list.
bool verify_cocycle(const GroupData& group, const IntCocycle& sigma,
                    std::span<const std::array<GroupWord, 3>> triples);

// <sigma, sum x_j [a_j|b_j]> = sum x_j sigma(a_j, b_j).
std::int64_t kronecker_pair(const GroupData& group, const IntCocycle& sigma,
                            const TwoChain& chain);

}  // namespace windcert
