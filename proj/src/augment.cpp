#include "semlog/augment.hpp"

#include <algorithm>

#include "semlog/errors.hpp"

namespace semlog {

std::vector<RoleAssignment> collect_assignments(
    const EventLog& log,
    const std::map<std::string, std::map<std::string, std::vector<TaggedChunk>>>&
        taggings,
    const std::map<std::string, SemanticRole>& attribute_roles) {
  std::vector<RoleAssignment> out;
  for (std::size_t ti = 0; ti < log.traces.size(); ++ti) {
    const auto& trace = log.traces[ti];
    for (std::size_t ei = 0; ei < trace.events.size(); ++ei) {
      for (const auto& [name, value] : trace.events[ei].attributes) {
        auto tagged = taggings.find(name);
        if (tagged != taggings.end()) {
          if (!value.is_text()) continue;
          auto chunks = tagged->second.find(value.text());
          if (chunks == tagged->second.end()) continue;
          for (const auto& c : chunks->second) {
            if (c.role == SemanticRole::Other) continue;
            RoleAssignment a;
            a.trace = ti;
            a.event = ei;
            a.role = c.role;
            a.value = c.text;
            a.source_attribute = name;
            a.instance_level = true;
            a.chunk_begin = c.begin;
            a.chunk_end = c.end;
            out.push_back(std::move(a));
          }
          continue;
        }
        auto classified = attribute_roles.find(name);
        if (classified == attribute_roles.end()) continue;
        if (classified->second == SemanticRole::Other) continue;
        RoleAssignment a;
        a.trace = ti;
        a.event = ei;
        a.role = classified->second;
        a.value = value.to_display_string();
        a.source_attribute = name;
        out.push_back(std::move(a));
      }
    }
  }
  return out;
}

std::vector<std::vector<std::optional<std::string>>> consolidate_boolean_status(
    const EventLog& log, const std::set<std::string>& attrs) {
  std::vector<std::vector<std::optional<std::string>>> out;
  out.reserve(log.traces.size());
  for (const auto& trace : log.traces) {
    auto& row = out.emplace_back();
    row.reserve(trace.events.size());
    for (const auto& event : trace.events) {
      std::vector<std::string> on;
      for (const auto& name : attrs) {
        const AttributeValue* v = event.attributes.find(name);
        if (!v) continue;
        if (v->kind() != AttrKind::Boolean)
          throw InvalidArgument("status attribute '" + name +
                                "' holds a non-boolean value");
        if (v->boolean()) on.push_back(name);
      }
      if (on.empty()) {
        row.emplace_back(std::nullopt);
        continue;
      }
      std::string joined = on.front();  // std::set iterates sorted
      for (std::size_t i = 1; i < on.size(); ++i) joined += "+" + on[i];
      row.emplace_back(std::move(joined));
    }
  }
  return out;
}

std::string join_list_value(const std::vector<std::string>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    for (char c : values[i]) {
      if (c == '\\' || c == ',') out += '\\';
      out += c;
    }
  }
  return out;
}

std::vector<std::string> split_list_value(const std::string& joined) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 0; i < joined.size(); ++i) {
    char c = joined[i];
    if (c == '\\' && i + 1 < joined.size()) {
      cur += joined[++i];
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

EventLog augment_log(const EventLog& log,
                     const std::vector<RoleAssignment>& assignments,
                     MultiValuePolicy policy) {
  for (const auto& trace : log.traces)
    for (const auto& event : trace.events)
      for (const auto& [name, value] : event.attributes)
        if (name.rfind(kSemanticPrefix, 0) == 0)
          throw CollisionError("attribute '" + name +
                               "' already uses the reserved prefix");

  // role -> ordered values, per (trace, event)
  std::map<std::pair<std::size_t, std::size_t>,
           std::map<SemanticRole, std::vector<std::string>>>
      grouped;
  for (const auto& a : assignments)
    grouped[{a.trace, a.event}][a.role].push_back(a.value);

  EventLog augmented = log;
  for (const auto& [locator, roles] : grouped) {
    auto& event = augmented.traces[locator.first].events[locator.second];
    for (const auto& [role, values] : roles) {
      std::string path = role_attribute_path(role);
      if (policy == MultiValuePolicy::SingleListAttribute) {
        event.attributes.insert(path, AttributeValue(join_list_value(values)));
      } else {
        for (std::size_t i = 0; i < values.size(); ++i)
          event.attributes.insert(path + ":" + std::to_string(i),
                                  AttributeValue(values[i]));
      }
    }
  }
  return augmented;
}

}  // namespace semlog
