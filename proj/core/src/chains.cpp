#include "windcert/chains.hpp"

#include <algorithm>

namespace windcert {

namespace {

template <std::size_t Arity, class Normalizer>
BarChain<Arity> merge_cells(const BarChain<Arity>& chain, Normalizer&& normalize) {
  std::map<std::array<GroupWord, Arity>, std::int64_t> acc;
  for (const ChainTerm<Arity>& term : chain.terms()) {
    std::array<GroupWord, Arity> cell;
    for (std::size_t i = 0; i < Arity; ++i) cell[i] = normalize(term.cell[i]);
    acc[std::move(cell)] += term.coeff;
  }
  BarChain<Arity> out;
  for (auto& [cell, coeff] : acc)
    if (coeff != 0) out.add(coeff, cell);
  return out;
}

void require_equality_decision(const GroupData& group, const char* op) {
  if (!group.decides_equality())
    throw CannotVerifyError(std::string(op) + ": group '" + group.name() +
                            "' has no normal form and the chain carries no structural certificate");
}

}  // namespace

template <std::size_t Arity>
BarChain<Arity> simplify(const GroupData& group, const BarChain<Arity>& chain) {
  require_equality_decision(group, "simplify");
  return merge_cells(chain, [&](const GroupWord& w) { return group.normalize(w); });
}

template <std::size_t Arity>
BarChain<Arity> simplify_free(const BarChain<Arity>& chain) {
  return merge_cells(chain, [](const GroupWord& w) { return free_reduce(w); });
}

template BarChain<1> simplify<1>(const GroupData&, const BarChain<1>&);
template BarChain<2> simplify<2>(const GroupData&, const BarChain<2>&);
template BarChain<3> simplify<3>(const GroupData&, const BarChain<3>&);
template BarChain<1> simplify_free<1>(const BarChain<1>&);
template BarChain<2> simplify_free<2>(const BarChain<2>&);
template BarChain<3> simplify_free<3>(const BarChain<3>&);

OneChain boundary2(const GroupData& group, const TwoChain& chain) {
  require_equality_decision(group, "boundary2");
  OneChain out;
  for (const ChainTerm<2>& term : chain.terms()) {
    const auto& [a, b] = term.cell;
    out.add(term.coeff, {a});
    out.add(-term.coeff, {group.multiply(a, b)});
    out.add(term.coeff, {b});
  }
  return simplify(group, out);
}

TwoChain boundary3(const GroupData& group, const ThreeChain& chain) {
  require_equality_decision(group, "boundary3");
  TwoChain out;
  for (const ChainTerm<3>& term : chain.terms()) {
    const auto& [a, b, c] = term.cell;
    out.add(term.coeff, {a, b});
    out.add(-term.coeff, {a, group.multiply(b, c)});
    out.add(term.coeff, {group.multiply(a, b), c});
    out.add(-term.coeff, {b, c});
  }
  return simplify(group, out);
}

bool is_cycle(const GroupData& group, const TwoChain& chain) {
  return boundary2(group, chain).empty();
}

VerifiedCycle verify_cycle(const GroupData& group, TwoChain chain) {
  if (!is_cycle(group, chain))
    throw InvalidInputError("verify_cycle: boundary2 of the chain does not vanish in group '" +
                            group.name() + "'");
  return VerifiedCycle{std::move(chain), CycleCertificate{CycleCertificate::Mode::Direct, {}}};
}

GroupWord map_word(const GroupData& target, std::span<const GroupWord> images, const GroupWord& w) {
  std::vector<Syllable> out;
  for (const Syllable& s : w.syllables()) {
    if (s.gen < 0 || static_cast<std::size_t>(s.gen) >= images.size())
      throw InvalidInputError("map_word: word references a generator without an image");
    const GroupWord& image = images[static_cast<std::size_t>(s.gen)];
    const std::int64_t reps = s.exp < 0 ? -s.exp : s.exp;
    for (std::int64_t r = 0; r < reps; ++r) {
      if (s.exp > 0) {
        for (const Syllable& t : image.syllables()) out.push_back(t);
      } else {
        for (auto it = image.syllables().rbegin(); it != image.syllables().rend(); ++it)
          out.push_back({it->gen, -it->exp});
      }
    }
  }
  GroupWord word(std::move(out));
  return target.decides_equality() ? target.normalize(word) : free_reduce(word);
}

TwoChain push_forward_chain(const GroupData& target, std::span<const GroupWord> images,
                            const TwoChain& chain) {
  TwoChain out;
  for (const ChainTerm<2>& term : chain.terms())
    out.add(term.coeff, {map_word(target, images, term.cell[0]),
                         map_word(target, images, term.cell[1])});
  return simplify_free(out);
}

VerifiedCycle push_forward_cycle(const GroupData& source, const GroupData& target,
                                 std::span<const GroupWord> images, const VerifiedCycle& cycle) {
  if (images.size() != source.generator_count())
    throw InvalidInputError("push_forward_cycle: expected one splitting word per source generator");
  bool relators_checked = false;
  if (target.decides_equality()) {
    for (const GroupWord& relator : source.relators()) {
      const GroupWord image = map_word(target, images, relator);
      if (!target.is_identity(image))
        throw InvalidInputError("push_forward_cycle: source relator '" +
                                source.format_word(relator) + "' maps to '" +
                                target.format_word(image) + "' != e; not a homomorphism");
    }
    relators_checked = true;
  }
  PushforwardInfo info{source.name(), source.generator_names(),
                       {images.begin(), images.end()}, cycle.chain, relators_checked};
  return VerifiedCycle{
      push_forward_chain(target, images, cycle.chain),
      CycleCertificate{CycleCertificate::Mode::Structural, std::move(info)}};
}

std::vector<GroupWord> cycle_support(const GroupData& group, const TwoChain& chain) {
  auto canon = [&](const GroupWord& w) {
    return group.decides_equality() ? group.normalize(w) : free_reduce(w);
  };
  std::vector<GroupWord> support;
  auto push = [&](GroupWord w) {
    if (std::find(support.begin(), support.end(), w) == support.end())
      support.push_back(std::move(w));
  };
  for (const ChainTerm<2>& term : chain.terms()) {
    const GroupWord a = canon(term.cell[0]);
    const GroupWord b = canon(term.cell[1]);
    GroupWord ab = group.multiply(a, b);
    push(a);
    push(b);
    push(std::move(ab));
  }
  return support;
}

IntCocycle IntCocycle::cup(IntHom alpha, IntHom beta, int sign) {
  if (sign != 1 && sign != -1) throw InvalidInputError("IntCocycle::cup: sign must be +1 or -1");
  return IntCocycle(Cup{std::move(alpha), std::move(beta), sign});
}

IntCocycle IntCocycle::coboundary(std::map<GroupWord, std::int64_t> gamma) {
  return IntCocycle(Coboundary{std::move(gamma)});
}

IntCocycle IntCocycle::table(std::map<std::pair<GroupWord, GroupWord>, std::int64_t> values) {
  return IntCocycle(Table{std::move(values)});
}

std::int64_t IntCocycle::evaluate(const GroupData& group, const GroupWord& g,
                                  const GroupWord& h) const {
  if (const Cup* cup = std::get_if<Cup>(&form_))
    return cup->sign * cup->alpha(g) * cup->beta(h);
  // Table-backed forms key on normal forms, so they need a deciding one.
  require_equality_decision(group, "IntCocycle::evaluate");
  if (const Coboundary* cob = std::get_if<Coboundary>(&form_)) {
    auto gamma = [&](const GroupWord& w) {
      const auto it = cob->gamma.find(group.normalize(w));
      return it == cob->gamma.end() ? 0 : it->second;
    };
    return gamma(g) - gamma(group.multiply(g, h)) + gamma(h);
  }
  const Table& tab = std::get<Table>(form_);
  const auto it = tab.values.find({group.normalize(g), group.normalize(h)});
  return it == tab.values.end() ? 0 : it->second;
}

IntCocycle twist_cocycle(const IntHom& alpha, const IntHom& beta) {
  return IntCocycle::cup(beta, alpha, -1);
}

bool verify_cocycle(const GroupData& group, const IntCocycle& sigma,
                    std::span<const std::array<GroupWord, 3>> triples) {
  for (const auto& [g, h, k] : triples) {
    const std::int64_t lhs = sigma.evaluate(group, g, h) -
                             sigma.evaluate(group, g, group.multiply(h, k)) +
                             sigma.evaluate(group, group.multiply(g, h), k) -
                             sigma.evaluate(group, h, k);
    if (lhs != 0) return false;
  }
  return true;
}

std::int64_t kronecker_pair(const GroupData& group, const IntCocycle& sigma,
                            const TwoChain& chain) {
  std::int64_t sum = 0;
  for (const ChainTerm<2>& term : chain.terms())
    sum += term.coeff * sigma.evaluate(group, term.cell[0], term.cell[1]);
  return sum;
}

}  // namespace windcert
