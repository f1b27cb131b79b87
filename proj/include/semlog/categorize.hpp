#ifndef SEMLOG_CATEGORIZE_HPP
#define SEMLOG_CATEGORIZE_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "semlog/log.hpp"
#include "semlog/pos.hpp"

namespace semlog {

/// Exclusion reasons used by categorize_attributes.
inline constexpr const char* kReasonTimestamp = "timestamp";
inline constexpr const char* kReasonNumeric = "non-semantic numeric";

struct AttributePartition {
  std::set<std::string> textual;
  std::set<std::string> miscellaneous;
  std::map<std::string, std::string> excluded;  // name -> reason
  /// Tagged tokenization of every distinct value of every string-typed
  /// attribute, for downstream reuse. Keyed by the raw value text.
  std::map<std::string, std::vector<Token>> token_cache;
};

/// Splits the event attributes into textual, miscellaneous, and excluded:
/// - string-typed attributes are textual iff their values have at least
///   two distinct tokenizations and at least one value carries a NOUN,
///   VERB, ADV, or ADJ token (checked on a capped seeded sample);
/// - timestamps and real or negative numerics are excluded;
/// - everything else (booleans, non-negative integers, failed strings)
///   is miscellaneous.
AttributePartition categorize_attributes(
    const std::vector<AttributeProfile>& profiles, const PosTagger& tagger);

}  // namespace semlog

#endif
