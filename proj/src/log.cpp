#include "semlog/log.hpp"

#include <algorithm>

namespace semlog {

namespace {

// Widening rule for attributes that mix declared kinds across events:
// int and float widen to float, any other mix degrades to string.
AttrKind merge_kind(AttrKind a, AttrKind b) {
  if (a == b) return a;
  if ((a == AttrKind::Integer && b == AttrKind::Real) ||
      (a == AttrKind::Real && b == AttrKind::Integer))
    return AttrKind::Real;
  return AttrKind::String;
}

}  // namespace

std::vector<AttributeProfile> attribute_profiles(const EventLog& log) {
  std::vector<AttributeProfile> profiles;
  std::unordered_map<std::string, std::size_t> index;

  for (const auto& trace : log.traces) {
    for (const auto& event : trace.events) {
      for (const auto& [name, value] : event.attributes) {
        auto it = index.find(name);
        AttributeProfile* p;
        if (it == index.end()) {
          index.emplace(name, profiles.size());
          profiles.emplace_back();
          p = &profiles.back();
          p->name = name;
          p->inferred_type = value.kind();
        } else {
          p = &profiles[it->second];
          p->inferred_type = merge_kind(p->inferred_type, value.kind());
        }
        p->occurrence_count += 1;
        if (p->distinct_values.size() < AttributeProfile::kDistinctCap) {
          p->distinct_values.insert(value);
        } else if (!p->distinct_values.count(value)) {
          p->distinct_overflow = true;
        }
      }
    }
  }
  std::sort(profiles.begin(), profiles.end(),
            [](const AttributeProfile& a, const AttributeProfile& b) {
              return a.name < b.name;
            });
  return profiles;
}

}  // namespace semlog
