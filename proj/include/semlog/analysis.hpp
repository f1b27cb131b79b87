#ifndef SEMLOG_ANALYSIS_HPP
#define SEMLOG_ANALYSIS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semlog/log.hpp"
#include "semlog/roles.hpp"

namespace semlog {

/// Reads a role's values off an augmented event, accepting both the
/// comma-joined list form and the numbered :0, :1, ... form.
std::vector<std::string> role_values(const Event& event, SemanticRole role);

struct EventClassMap {
  /// original event label -> refined class key, fixed by the label's
  /// first occurrence in the log
  std::map<std::string, std::string> refined;
  std::size_t before = 0;
  std::size_t after = 0;
};

/// Groups event labels by their (sorted actions, sorted objects) pair;
/// events carrying neither keep their original label as the class key.
/// Throws MissingAugmentation when the log has no semantic attributes.
EventClassMap refine_event_classes(const EventLog& log);

/// label<TAB>refined-key lines plus a summary line, label-sorted.
std::string render_refinement(const EventClassMap& map);

inline constexpr std::string_view kDfgStart = "<start>";
inline constexpr std::string_view kDfgEnd = "<end>";

struct DirectlyFollowsGraph {
  std::string object;
  /// action class -> absolute event frequency (always complete)
  std::map<std::string, std::int64_t> nodes;
  /// kept edges, including the artificial start/end ones
  std::map<std::pair<std::string, std::string>, std::int64_t> edges;
  std::int64_t traces = 0;  // traces with at least one matching event
};

/// Projects every trace onto the events whose semantic:object:name values
/// include `object`, classes them by their sorted "+"-joined actions
/// (falling back to concept:name when an event has none), and counts
/// directly-follows pairs. Keeps all nodes but only the top
/// `path_keep_fraction` of internal edges by frequency, ties included;
/// start/end edges are always kept. Throws EmptySelection when the
/// object never occurs and InvalidArgument on a fraction outside (0,1].
DirectlyFollowsGraph object_dfg(const EventLog& log, const std::string& object,
                                double path_keep_fraction);

std::string render_dot(const DirectlyFollowsGraph& graph);
void export_dot(const DirectlyFollowsGraph& graph, const std::string& path);

}  // namespace semlog

#endif
