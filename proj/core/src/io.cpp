#include "windcert/io.hpp"

#include <fstream>

#include <json.hpp>

namespace windcert {

namespace {

using nlohmann::json;

NormalFormKind parse_normal_form(const std::string& text) {
  if (text == "free-reduction") return NormalFormKind::FreeReduction;
  if (text == "abelian-exponent-vector") return NormalFormKind::AbelianExponents;
  if (text == "user-rewriting") return NormalFormKind::UserRewriting;
  if (text == "none") return NormalFormKind::None;
  throw InvalidInputError("load_group_file: unknown normal_form '" + text + "'");
}

TwoChain parse_terms(const GroupData& group, const json& terms) {
  TwoChain chain;
  for (const json& term : terms) {
    const auto& cell = term.at("cell");
    if (!cell.is_array() || cell.size() != 2)
      throw InvalidInputError("load_group_file: cycle cell must be a pair of words");
    chain.add(term.at("coeff").get<std::int64_t>(),
              {group.parse_word(cell[0].get<std::string>()),
               group.parse_word(cell[1].get<std::string>())});
  }
  return chain;
}

GroupFile load_group_file_impl(const std::filesystem::path& path, int depth) {
  if (depth > 4)
    throw InvalidInputError("load_group_file: pushforward source chain too deep at '" +
                            path.string() + "'");
  std::ifstream in(path);
  if (!in) throw InvalidInputError("load_group_file: cannot open '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInputError("load_group_file: '" + path.string() + "': " + e.what());
  }

  try {
    GroupData group(doc.at("name").get<std::string>(),
                    doc.at("generators").get<std::vector<std::string>>(),
                    doc.value("relators", std::vector<std::string>{}),
                    parse_normal_form(doc.at("normal_form").get<std::string>()));
    if (doc.contains("rewriting_rules")) {
      std::vector<std::pair<std::string, std::string>> rules;
      for (const json& rule : doc.at("rewriting_rules")) {
        if (!rule.is_array() || rule.size() != 2)
          throw InvalidInputError("load_group_file: rewrite rule must be [lhs, rhs]");
        rules.emplace_back(rule[0].get<std::string>(), rule[1].get<std::string>());
      }
      group.set_rewriting_rules(rules, doc.value("rewriting_max_steps", std::int64_t{10000}));
    }

    GroupFile file{std::move(group), std::nullopt, std::nullopt, {}};
    if (doc.contains("homs")) {
      const json& homs = doc.at("homs");
      if (homs.contains("alpha"))
        file.alpha.emplace(file.group, homs.at("alpha").get<std::vector<std::int64_t>>());
      if (homs.contains("beta"))
        file.beta.emplace(file.group, homs.at("beta").get<std::vector<std::int64_t>>());
    }

    for (const json& cycle : doc.value("cycles", json::array())) {
      const TwoChain declared = parse_terms(file.group, cycle.at("terms"));
      const json& verified = cycle.at("verified");
      if (verified.is_string() && verified.get<std::string>() == "direct") {
        file.cycles.push_back(verify_cycle(file.group, declared));
      } else if (verified.is_object() && verified.contains("pushforward")) {
        const json& push = verified.at("pushforward");
        const auto source_rel = push.at("source_group").get<std::string>();
        const GroupFile source =
            load_group_file_impl(path.parent_path() / source_rel, depth + 1);
        const std::size_t index = push.value("source_cycle_index", std::size_t{0});
        if (index >= source.cycles.size())
          throw InvalidInputError("load_group_file: source group '" + source_rel +
                                  "' has no cycle at index " + std::to_string(index));
        std::vector<GroupWord> images;
        for (const json& word : push.at("splitting"))
          images.push_back(file.group.parse_word(word.get<std::string>()));
        VerifiedCycle pushed =
            push_forward_cycle(source.group, file.group, images, source.cycles[index]);
        TwoChain difference = pushed.chain;
        difference += -declared;
        if (!simplify_free(difference).empty())
          throw InvalidInputError(
              "load_group_file: declared cycle terms do not match the computed pushforward");
        file.cycles.push_back(std::move(pushed));
      } else {
        throw InvalidInputError(
            "load_group_file: cycle 'verified' must be \"direct\" or {pushforward: ...}");
      }
    }
    return file;
  } catch (const json::exception& e) {
    throw InvalidInputError("load_group_file: '" + path.string() + "': " + e.what());
  }
}

json cycle_to_json(const GroupData& group, const VerifiedCycle& cycle) {
  json terms = json::array();
  for (const ChainTerm<2>& term : cycle.chain.terms())
    terms.push_back({{"coeff", term.coeff},
                     {"cell", {group.format_word(term.cell[0]), group.format_word(term.cell[1])}}});
  json verified;
  if (cycle.certificate.mode == CycleCertificate::Mode::Direct) {
    verified = "direct";
  } else {
    const PushforwardInfo& info = cycle.certificate.pushforward.value();
    json splitting = json::array();
    for (const GroupWord& w : info.splitting) splitting.push_back(group.format_word(w));
    json source_terms = json::array();
    for (const ChainTerm<2>& term : info.source_cycle.terms())
      source_terms.push_back(
          {{"coeff", term.coeff},
           {"cell", {format_word_with(info.source_generators, term.cell[0]),
                     format_word_with(info.source_generators, term.cell[1])}}});
    verified = {{"pushforward",
                 {{"source_group", info.source_group},
                  {"source_cycle", source_terms},
                  {"splitting", splitting},
                  {"relators_checked", info.relators_checked}}}};
  }
  return {{"terms", terms}, {"verified", verified}};
}

}  // namespace

GroupFile load_group_file(const std::filesystem::path& path) {
  return load_group_file_impl(path, 0);
}

const IntHom& require_alpha(const GroupFile& file) {
  if (!file.alpha)
    throw InvalidInputError("group file '" + file.group.name() + "' does not define homs.alpha");
  return *file.alpha;
}

const IntHom& require_beta(const GroupFile& file) {
  if (!file.beta)
    throw InvalidInputError("group file '" + file.group.name() + "' does not define homs.beta");
  return *file.beta;
}

std::string certificate_to_json(const Certificate& cert, const GroupData& group, int indent) {
  json results = json::array();
  for (const CertificateEntry& entry : cert.results)
    results.push_back({{"n", entry.n},
                       {"raw_re", entry.pairing.raw.real()},
                       {"raw_im", entry.pairing.raw.imag()},
                       {"rounded", entry.pairing.rounded},
                       {"valid", entry.pairing.valid},
                       {"max_defect", entry.pairing.max_defect}});
  const json doc = {{"group", cert.group},
                    {"alpha", cert.alpha},
                    {"beta", cert.beta},
                    {"cycle", cycle_to_json(group, cert.cycle)},
                    {"sigma_kronecker", cert.sigma_kronecker},
                    {"threshold", cert.threshold},
                    {"results", results},
                    {"verdict", cert.verdict},
                    {"conclusion", cert.conclusion}};
  return doc.dump(indent);
}

}  // namespace windcert
