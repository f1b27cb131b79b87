#ifndef SEMLOG_AUGMENT_HPP
#define SEMLOG_AUGMENT_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semlog/bio.hpp"
#include "semlog/log.hpp"
#include "semlog/roles.hpp"

namespace semlog {

/// One (role, value) pair extracted for one event, either from a chunk of
/// a textual attribute value or from a whole attribute-classified value.
struct RoleAssignment {
  std::size_t trace = 0;
  std::size_t event = 0;
  SemanticRole role = SemanticRole::Other;
  std::string value;
  std::string source_attribute;
  bool instance_level = false;
  std::size_t chunk_begin = 0;  // meaningful only when instance_level
  std::size_t chunk_end = 0;

  friend bool operator==(const RoleAssignment& a, const RoleAssignment& b) {
    return a.trace == b.trace && a.event == b.event && a.role == b.role &&
           a.value == b.value && a.source_attribute == b.source_attribute &&
           a.instance_level == b.instance_level &&
           a.chunk_begin == b.chunk_begin && a.chunk_end == b.chunk_end;
  }
};

enum class MultiValuePolicy { SingleListAttribute, IndexedAttributes };

/// Walks every event in order. Attributes keyed in `taggings` contribute
/// one assignment per non-Other chunk of their value; attributes keyed in
/// `attribute_roles` contribute one whole-value assignment unless their
/// role is Other. Attributes in neither map are ignored.
std::vector<RoleAssignment> collect_assignments(
    const EventLog& log,
    const std::map<std::string, std::map<std::string, std::vector<TaggedChunk>>>&
        taggings,
    const std::map<std::string, SemanticRole>& attribute_roles);

/// Per trace, per event: the name of the single true attribute among
/// `attrs`, names of several true ones joined with "+" in lexicographic
/// order, or nullopt when none is true. Absent attributes count as false;
/// a non-Boolean value under one of these names throws InvalidArgument.
std::vector<std::vector<std::optional<std::string>>> consolidate_boolean_status(
    const EventLog& log, const std::set<std::string>& attrs);

/// Copy of the log with the assignments written as `semantic:` attributes
/// after the original ones, which stay byte-identical. Repeated roles on
/// one event become either one comma-joined list value or numbered
/// attributes (:0, :1, ...), by policy. Any original event attribute
/// already under the reserved prefix raises CollisionError.
EventLog augment_log(const EventLog& log,
                     const std::vector<RoleAssignment>& assignments,
                     MultiValuePolicy policy);

/// Escapes backslashes and commas, joins with ",".
std::string join_list_value(const std::vector<std::string>& values);

/// Inverse of join_list_value.
std::vector<std::string> split_list_value(const std::string& joined);

}  // namespace semlog

#endif
