#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "windcert/chains.hpp"
#include "windcert/obstruction.hpp"

namespace windcert {

/// A group data file: presentation, optional integer homomorphisms, and
/// machine-verified 2-cycles.
struct GroupFile {
  GroupData group;
  std::optional<IntHom> alpha, beta;
  std::vector<VerifiedCycle> cycles;
};

// Loads and fully verifies a group data file.  Direct cycles are checked with
// boundary2; pushforward cycles load their source group (path relative to the
// file), verify the source cycle there, recompute the pushforward, and demand
// it match the declared terms.  Throws InvalidInputError on any mismatch.
GroupFile load_group_file(const std::filesystem::path& path);

// Requires both alpha and beta to be present.
const IntHom& require_alpha(const GroupFile& file);
const IntHom& require_beta(const GroupFile& file);

// Canonical JSON (sorted keys, round-trip floats) with all inputs inlined so
// certificates are independently re-checkable.
std::string certificate_to_json(const Certificate& cert, const GroupData& group, int indent = 2);

}  // namespace windcert
