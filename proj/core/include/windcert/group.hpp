#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "windcert/errors.hpp"

namespace windcert {

/// One maximal run of a single generator: gen^exp with exp != 0.
struct Syllable {
  int gen = 0;
  std::int64_t exp = 0;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// A word in abstract generators.  Words are plain data; all group-sensitive
/// operations (normalization, multiplication) live on GroupData.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<Syllable> syllables) : syllables_(std::move(syllables)) {}

  const std::vector<Syllable>& syllables() const noexcept { return syllables_; }
  bool empty() const noexcept { return syllables_.empty(); }
  std::size_t length() const;  // number of letters, counting |exp|

  friend auto operator<=>(const GroupWord&, const GroupWord&) = default;

 private:
  std::vector<Syllable> syllables_;
};

enum class NormalFormKind {
  FreeReduction,     // canonical for free groups
  AbelianExponents,  // canonical for free-abelian groups
  UserRewriting,     // user-supplied rule list, declared confluent by the user
  None,              // free reduction only; word equality is NOT decidable
};

struct RewriteRule {
  GroupWord lhs, rhs;
};

/// A finitely generated group presented by generators, relators, and a normal
/// form strategy.  Equality of elements means equality of normal forms; for
/// NormalFormKind::None no equality judgments are made.
class GroupData {
 public:
  GroupData(std::string name, std::vector<std::string> generator_names,
            const std::vector<std::string>& relator_words, NormalFormKind normal_form);

  // User rewriting systems: rules applied leftmost-first to a fixed point.
  // Termination is enforced through max_steps; confluence is the user's claim.
  void set_rewriting_rules(const std::vector<std::pair<std::string, std::string>>& rules,
                           std::int64_t max_steps = 10000);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& generator_names() const noexcept { return generator_names_; }
  std::size_t generator_count() const noexcept { return generator_names_.size(); }
  const std::vector<GroupWord>& relators() const noexcept { return relators_; }
  NormalFormKind normal_form() const noexcept { return normal_form_; }
  const std::vector<RewriteRule>& rewriting_rules() const noexcept { return rules_; }
  std::int64_t rewriting_max_steps() const noexcept { return max_steps_; }

  // Whether normal forms decide the word problem under the declared strategy.
  bool decides_equality() const noexcept { return normal_form_ != NormalFormKind::None; }

  int generator_index(std::string_view gen_name) const;  // throws InvalidInputError

  // Word text: whitespace-separated tokens; a token is a generator name,
  // its first-letter-uppercased form for the inverse, optionally ^k.
  // "a b A B" is the commutator [a,b]; "a^2 B" is a^2 b^-1.
  GroupWord parse_word(std::string_view text) const;
  std::string format_word(const GroupWord& w) const;

  GroupWord normalize(const GroupWord& w) const;
  bool is_identity(const GroupWord& w) const;  // requires decides_equality
  GroupWord multiply(const GroupWord& a, const GroupWord& b) const;
  GroupWord invert(const GroupWord& w) const;

 private:
  GroupWord rewrite_to_fixed_point(GroupWord w) const;

  std::string name_;
  std::vector<std::string> generator_names_;
  std::vector<GroupWord> relators_;
  NormalFormKind normal_form_;
  std::vector<RewriteRule> rules_;
  std::int64_t max_steps_ = 10000;
};

// Free reduction (merge adjacent syllables of one generator, drop zeros);
// valid in every group, canonical only for free groups.
GroupWord free_reduce(const GroupWord& w);

// Word formatting against an explicit name list (uppercase first letter marks
// an inverse, ^k marks exponents).
std::string format_word_with(const std::vector<std::string>& generator_names, const GroupWord& w);

/// Report produced when a candidate homomorphism fails a relator.
struct HomRejection {
  std::size_t relator_index = 0;
  std::int64_t value = 0;  // image of the failing relator
};

// Verifies that generator images define a homomorphism to Z, i.e. every
// relator has exponent-weighted image 0.  Returns the first failure, if any.
std::optional<HomRejection> check_hom(const GroupData& group,
                                      const std::vector<std::int64_t>& images);

/// A homomorphism to the integers, given by one image per generator.
/// Construction enforces that all relators map to 0.
class IntHom {
 public:
  IntHom(const GroupData& group, std::vector<std::int64_t> images);

  const std::vector<std::int64_t>& images() const noexcept { return images_; }

  // Sum of images[gen] * exp over the word; constant on normal-form classes.
  std::int64_t operator()(const GroupWord& w) const;

 private:
  std::vector<std::int64_t> images_;
};

}  // namespace windcert
