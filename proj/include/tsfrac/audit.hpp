#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

// Catalog of identities that are evaluated numerically rather than assumed.
// Each case is generated from a seed into a self-contained JSON instance, so
// a verdict can be reproduced from the instance alone.

namespace tsfrac::audit {

using nlohmann::json;

struct Entry {
  std::string name;
  std::string description;
};

/// Every identity in the catalog, in a fixed order.
const std::vector<Entry>& catalog();

/// Random instance for `name`. Throws CatalogError for unknown names.
json make_instance(const std::string& name, std::uint64_t seed);

/// Evaluates both sides: {identity, instance, lhs, rhs, abs_diff, rel_diff,
/// verdict in {holds, fails, diverges}, convention_flags}.
json audit_identity(const std::string& name, const json& instance);

/// One verdict per catalog entry, instances seeded from `seed`.
json run_catalog(std::uint64_t seed);

/// Fixed-width table of identity, verdict, lhs, rhs and abs_diff.
std::string summary_table(const json& verdicts);

}  // namespace tsfrac::audit
