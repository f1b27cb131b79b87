#include "semlog/categorize.hpp"

#include "semlog/rng.hpp"
#include "semlog/tokenize.hpp"

namespace semlog {

namespace {

constexpr std::size_t kPosSampleCap = 1'000;
constexpr std::uint64_t kPosSampleSeed = 1;

bool any_negative(const AttributeProfile& p) {
  for (const auto& v : p.distinct_values)
    if (v.kind() == AttrKind::Integer && v.integer() < 0) return true;
  return false;
}

}  // namespace

AttributePartition categorize_attributes(
    const std::vector<AttributeProfile>& profiles, const PosTagger& tagger) {
  AttributePartition out;
  for (const auto& p : profiles) {
    switch (p.inferred_type) {
      case AttrKind::Timestamp:
        out.excluded.emplace(p.name, kReasonTimestamp);
        continue;
      case AttrKind::Real:
        out.excluded.emplace(p.name, kReasonNumeric);
        continue;
      case AttrKind::Integer:
        if (any_negative(p))
          out.excluded.emplace(p.name, kReasonNumeric);
        else
          out.miscellaneous.insert(p.name);
        continue;
      case AttrKind::Boolean:
        out.miscellaneous.insert(p.name);
        continue;
      case AttrKind::String:
        break;
    }

    std::vector<std::string> values;
    values.reserve(p.distinct_values.size());
    for (const auto& v : p.distinct_values)
      values.push_back(v.to_display_string());

    std::set<std::vector<std::string>> shapes;
    for (const auto& v : values) {
      auto [it, fresh] = out.token_cache.try_emplace(v);
      if (fresh) it->second = tagger.tag(tokenize(v));
      std::vector<std::string> texts;
      texts.reserve(it->second.size());
      for (const auto& t : it->second) texts.push_back(t.text);
      shapes.insert(std::move(texts));
    }

    bool diverse = shapes.size() >= 2;
    bool has_content = false;
    if (diverse) {
      for (std::size_t i :
           sample_indices(values.size(), kPosSampleCap, kPosSampleSeed)) {
        for (const auto& t : out.token_cache.at(values[i])) {
          if (is_content_tag(t.pos)) {
            has_content = true;
            break;
          }
        }
        if (has_content) break;
      }
    }

    if (diverse && has_content)
      out.textual.insert(p.name);
    else
      out.miscellaneous.insert(p.name);
  }
  return out;
}

}  // namespace semlog
