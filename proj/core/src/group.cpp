#include "windcert/group.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace windcert {

namespace {

// Letter sequence form used by the rewriting engine: one entry per letter.
std::vector<Syllable> flatten(const GroupWord& w) {
  std::vector<Syllable> out;
  out.reserve(w.length());
  for (const Syllable& s : w.syllables()) {
    const std::int64_t step = s.exp > 0 ? 1 : -1;
    for (std::int64_t k = 0; k != s.exp; k += step) out.push_back({s.gen, step});
  }
  return out;
}

std::vector<Syllable> free_reduce_letters(const std::vector<Syllable>& letters) {
  std::vector<Syllable> stack;
  for (const Syllable& l : letters) {
    if (!stack.empty() && stack.back().gen == l.gen) {
      stack.back().exp += l.exp;
      if (stack.back().exp == 0) stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return stack;
}

}  // namespace

std::size_t GroupWord::length() const {
  std::size_t n = 0;
  for (const Syllable& s : syllables_) n += static_cast<std::size_t>(s.exp < 0 ? -s.exp : s.exp);
  return n;
}

GroupWord free_reduce(const GroupWord& w) {
  return GroupWord(free_reduce_letters(w.syllables()));
}

GroupData::GroupData(std::string name, std::vector<std::string> generator_names,
                     const std::vector<std::string>& relator_words, NormalFormKind normal_form)
    : name_(std::move(name)),
      generator_names_(std::move(generator_names)),
      normal_form_(normal_form) {
  if (generator_names_.empty()) throw InvalidInputError("GroupData: at least one generator required");
  for (std::size_t i = 0; i < generator_names_.size(); ++i) {
    const std::string& g = generator_names_[i];
    if (g.empty() || !std::islower(static_cast<unsigned char>(g.front())))
      throw InvalidInputError("GroupData: generator name '" + g + "' must start lowercase");
    for (std::size_t j = i + 1; j < generator_names_.size(); ++j)
      if (g == generator_names_[j])
        throw InvalidInputError("GroupData: duplicate generator name '" + g + "'");
  }
  relators_.reserve(relator_words.size());
  for (const std::string& r : relator_words) relators_.push_back(parse_word(r));
}

void GroupData::set_rewriting_rules(
    const std::vector<std::pair<std::string, std::string>>& rules, std::int64_t max_steps) {
  if (max_steps <= 0) throw InvalidInputError("GroupData: rewriting step bound must be positive");
  rules_.clear();
  rules_.reserve(rules.size());
  for (const auto& [lhs, rhs] : rules) {
    RewriteRule rule{parse_word(lhs), parse_word(rhs)};
    if (rule.lhs.empty()) throw InvalidInputError("GroupData: empty rewrite rule lhs");
    rules_.push_back(std::move(rule));
  }
  max_steps_ = max_steps;
}

int GroupData::generator_index(std::string_view gen_name) const {
  for (std::size_t i = 0; i < generator_names_.size(); ++i)
    if (generator_names_[i] == gen_name) return static_cast<int>(i);
  throw InvalidInputError("GroupData: unknown generator '" + std::string(gen_name) + "'");
}

GroupWord GroupData::parse_word(std::string_view text) const {
  std::vector<Syllable> syllables;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    std::int64_t exp = 1;
    if (const auto caret = token.find('^'); caret != std::string::npos) {
      const std::string exp_text = token.substr(caret + 1);
      try {
        exp = std::stoll(exp_text);
      } catch (const std::exception&) {
        throw InvalidInputError("parse_word: bad exponent '" + exp_text + "'");
      }
      token.resize(caret);
    }
    if (token.empty()) throw InvalidInputError("parse_word: empty generator token");
    bool inverse = false;
    if (std::isupper(static_cast<unsigned char>(token.front()))) {
      inverse = true;
      token.front() = static_cast<char>(std::tolower(static_cast<unsigned char>(token.front())));
    }
    if (exp == 0) continue;
    syllables.push_back({generator_index(token), inverse ? -exp : exp});
  }
  return free_reduce(GroupWord(std::move(syllables)));
}

std::string format_word_with(const std::vector<std::string>& generator_names, const GroupWord& w) {
  std::string out;
  for (const Syllable& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    std::string tok = generator_names.at(static_cast<std::size_t>(s.gen));
    if (s.exp < 0) tok.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(tok.front())));
    out += tok;
    const std::int64_t mag = s.exp < 0 ? -s.exp : s.exp;
    if (mag != 1) out += "^" + std::to_string(mag);
  }
  return out;
}

std::string GroupData::format_word(const GroupWord& w) const {
  return format_word_with(generator_names_, w);
}

GroupWord GroupData::rewrite_to_fixed_point(GroupWord w) const {
  std::vector<Syllable> letters = free_reduce_letters(flatten(w));
  std::int64_t steps = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const RewriteRule& rule : rules_) {
      const std::vector<Syllable> lhs = flatten(rule.lhs);
      if (lhs.size() > letters.size()) continue;
      for (std::size_t i = 0; i + lhs.size() <= letters.size(); ++i) {
        if (!std::equal(lhs.begin(), lhs.end(), letters.begin() + static_cast<std::ptrdiff_t>(i)))
          continue;
        std::vector<Syllable> next(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(i));
        const std::vector<Syllable> rhs = flatten(rule.rhs);
        next.insert(next.end(), rhs.begin(), rhs.end());
        next.insert(next.end(), letters.begin() + static_cast<std::ptrdiff_t>(i + lhs.size()),
                    letters.end());
        letters = free_reduce_letters(next);
        if (++steps > max_steps_)
          throw RewriteLimitError("rewriting exceeded " + std::to_string(max_steps_) +
                                  " steps; non-confluence suspected (group '" + name_ + "')");
        changed = true;
        break;
      }
      if (changed) break;
    }
  }
  return GroupWord(free_reduce_letters(letters));
}

GroupWord GroupData::normalize(const GroupWord& w) const {
  for (const Syllable& s : w.syllables())
    if (s.gen < 0 || s.gen >= static_cast<int>(generator_names_.size()))
      throw InvalidInputError("normalize: word references unknown generator index");
  switch (normal_form_) {
    case NormalFormKind::FreeReduction:
    case NormalFormKind::None:
      return free_reduce(w);
    case NormalFormKind::AbelianExponents: {
      std::vector<std::int64_t> exps(generator_names_.size(), 0);
      for (const Syllable& s : w.syllables()) exps[static_cast<std::size_t>(s.gen)] += s.exp;
      std::vector<Syllable> out;
      for (std::size_t i = 0; i < exps.size(); ++i)
        if (exps[i] != 0) out.push_back({static_cast<int>(i), exps[i]});
      return GroupWord(std::move(out));
    }
    case NormalFormKind::UserRewriting:
      return rewrite_to_fixed_point(w);
  }
  throw InvalidInputError("normalize: unknown normal form kind");
}

bool GroupData::is_identity(const GroupWord& w) const {
  if (!decides_equality())
    throw CannotVerifyError("is_identity: group '" + name_ + "' has no normal form");
  return normalize(w).empty();
}

GroupWord GroupData::multiply(const GroupWord& a, const GroupWord& b) const {
  std::vector<Syllable> cat = a.syllables();
  cat.insert(cat.end(), b.syllables().begin(), b.syllables().end());
  return normalize(GroupWord(std::move(cat)));
}

GroupWord GroupData::invert(const GroupWord& w) const {
  std::vector<Syllable> rev(w.syllables().rbegin(), w.syllables().rend());
  for (Syllable& s : rev) s.exp = -s.exp;
  return normalize(GroupWord(std::move(rev)));
}

std::optional<HomRejection> check_hom(const GroupData& group,
                                      const std::vector<std::int64_t>& images) {
  if (images.size() != group.generator_count())
    throw InvalidInputError("check_hom: expected one image per generator");
  for (std::size_t r = 0; r < group.relators().size(); ++r) {
    std::int64_t value = 0;
    for (const Syllable& s : group.relators()[r].syllables())
      value += images[static_cast<std::size_t>(s.gen)] * s.exp;
    if (value != 0) return HomRejection{r, value};
  }
  return std::nullopt;
}

IntHom::IntHom(const GroupData& group, std::vector<std::int64_t> images) {
  if (const auto rejection = check_hom(group, images)) {
    throw InvalidInputError(
        "IntHom: relator '" + group.format_word(group.relators()[rejection->relator_index]) +
        "' maps to " + std::to_string(rejection->value) + ", not 0");
  }
  images_ = std::move(images);
}

std::int64_t IntHom::operator()(const GroupWord& w) const {
  std::int64_t value = 0;
  for (const Syllable& s : w.syllables()) {
    if (s.gen < 0 || static_cast<std::size_t>(s.gen) >= images_.size())
      throw InvalidInputError("IntHom: word references unknown generator index");
    value += images_[static_cast<std::size_t>(s.gen)] * s.exp;
  }
  return value;
}

}  // namespace windcert
