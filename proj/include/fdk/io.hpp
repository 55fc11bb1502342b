#pragma once

// JSON encoding of groups, subsets, pairs, certificates and reports
// (schema "fdk/1"), plus CSV for scan tables.

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "fdk/applications.hpp"
#include "fdk/constructions.hpp"
#include "fdk/duality.hpp"
#include "fdk/euclid.hpp"
#include "fdk/search.hpp"

namespace fdk::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "fdk/1";

// Malformed or schema-violating input.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A pair as read from disk, before any verification.
struct PairDocument {
  FiniteAbelianGroup group;
  SubsetConfig s;
  SubsetConfig t;
  Provenance provenance;
};

Json to_json(const FiniteAbelianGroup& g);
Json to_json(const GroupElement& x);
Json to_json(const SubsetConfig& s);
Json to_json(const Provenance& p);
Json to_json(const DualPair& pair);
Json to_json(const DualityCertificate& cert);
// Timing is left out when include_timing is false so reports compare byte for byte.
Json to_json(const SearchReport& report, bool include_timing = true);
Json to_json(const BarlowVerdict& v);
Json to_json(const BarlowScan& scan);
Json to_json(const PeriodicConfiguration& p);
Json to_json(const NumericReport& report);

FiniteAbelianGroup group_from_json(const Json& j);
GroupElement element_from_json(const FiniteAbelianGroup& g, const Json& j);
// A subset object {"group": ..., "points": [...]}; its group must equal `g` when given.
SubsetConfig subset_from_json(const Json& j, const FiniteAbelianGroup* g = nullptr);
PairDocument pair_document_from_json(const Json& j);
PairDocument pair_document_from_text(const std::string& text);
// Throws std::logic_error (from DualPair) if the pair is not dual.
DualPair pair_from_document(const PairDocument& doc);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
std::string dump(const Json& j);  // two-space indent, trailing newline

std::string barlow_csv(const BarlowScan& scan);
std::string orbits_csv(const SearchReport& report);

}  // namespace fdk::io
