#ifndef SEMLOG_LOG_HPP
#define SEMLOG_LOG_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "semlog/value.hpp"

namespace semlog {

/// Attribute map that keeps insertion order, so a log written back out
/// lists attributes exactly as they were read. Names are unique.
class AttrMap {
 public:
  using Entry = std::pair<std::string, AttributeValue>;

  bool contains(const std::string& name) const {
    return index_.count(name) != 0;
  }
  const AttributeValue* find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &entries_[it->second].second;
  }
  /// Inserts a new entry; returns false if the name already exists.
  bool insert(std::string name, AttributeValue value) {
    if (contains(name)) return false;
    index_.emplace(name, entries_.size());
    entries_.emplace_back(std::move(name), std::move(value));
    return true;
  }
  /// Inserts or overwrites.
  void set(const std::string& name, AttributeValue value) {
    auto it = index_.find(name);
    if (it != index_.end())
      entries_[it->second].second = std::move(value);
    else
      insert(name, std::move(value));
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const AttrMap& a, const AttrMap& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Event {
  AttrMap attributes;
  /// Raw XML of nested sub-attributes, keyed by owning attribute name.
  /// Preserved verbatim on write; empty for ordinary flat logs.
  std::unordered_map<std::string, std::vector<std::string>> opaque_children;

  friend bool operator==(const Event& a, const Event& b) {
    return a.attributes == b.attributes;
  }
};

struct Trace {
  AttrMap trace_attributes;
  std::vector<Event> events;
  std::unordered_map<std::string, std::vector<std::string>> opaque_children;

  friend bool operator==(const Trace& a, const Trace& b) {
    return a.trace_attributes == b.trace_attributes && a.events == b.events;
  }
};

struct EventLog {
  /// XML attributes of the <log> element itself (xes.version etc.).
  std::vector<std::pair<std::string, std::string>> xml_attrs;
  /// Header elements (<extension>, <global>, <classifier>, ...) kept
  /// verbatim and re-emitted before the log attributes.
  std::vector<std::string> opaque_header;
  AttrMap log_attributes;
  std::unordered_map<std::string, std::vector<std::string>> opaque_children;
  std::vector<Trace> traces;

  std::size_t event_count() const {
    std::size_t n = 0;
    for (const auto& t : traces) n += t.events.size();
    return n;
  }

  /// Structural equality: same traces, events, and attribute maps in order.
  friend bool operator==(const EventLog& a, const EventLog& b) {
    return a.log_attributes == b.log_attributes && a.traces == b.traces;
  }
};

/// Per-attribute summary over all events of a log.
struct AttributeProfile {
  std::string name;
  AttrKind inferred_type = AttrKind::String;
  std::set<AttributeValue> distinct_values;
  std::int64_t occurrence_count = 0;
  bool distinct_overflow = false;  // true once the cap was hit

  static constexpr std::size_t kDistinctCap = 10'000;
};

/// One profile per distinct event-attribute name, sorted by name so the
/// result is independent of trace order. Trace-level attributes are not
/// profiled.
std::vector<AttributeProfile> attribute_profiles(const EventLog& log);

}  // namespace semlog

#endif
