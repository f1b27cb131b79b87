#include "semlog/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "semlog/augment.hpp"
#include "semlog/errors.hpp"

namespace semlog {

namespace {

std::string event_label(const Event& event) {
  const AttributeValue* v = event.attributes.find("concept:name");
  return v ? v->to_display_string() : std::string();
}

bool has_semantic_attribute(const EventLog& log) {
  for (const auto& trace : log.traces)
    for (const auto& event : trace.events)
      for (const auto& [name, value] : event.attributes)
        if (name.rfind(kSemanticPrefix, 0) == 0) return true;
  return false;
}

std::string class_key(std::vector<std::string> actions,
                      std::vector<std::string> objects) {
  std::sort(actions.begin(), actions.end());
  std::sort(objects.begin(), objects.end());
  return "actions=[" + join_list_value(actions) + "] objects=[" +
         join_list_value(objects) + "]";
}

// sorted actions joined with "+", or the original label when none
std::string action_class(const Event& event) {
  auto actions = role_values(event, SemanticRole::ActionName);
  if (actions.empty()) return event_label(event);
  std::sort(actions.begin(), actions.end());
  std::string out = actions.front();
  for (std::size_t i = 1; i < actions.size(); ++i) out += "+" + actions[i];
  return out;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::vector<std::string> role_values(const Event& event, SemanticRole role) {
  std::string path = role_attribute_path(role);
  std::vector<std::string> values;
  if (const AttributeValue* v = event.attributes.find(path)) {
    auto parts = split_list_value(v->to_display_string());
    values.insert(values.end(), parts.begin(), parts.end());
  }
  for (std::size_t i = 0;; ++i) {
    const AttributeValue* v =
        event.attributes.find(path + ":" + std::to_string(i));
    if (!v) break;
    values.push_back(v->to_display_string());
  }
  return values;
}

EventClassMap refine_event_classes(const EventLog& log) {
  if (!has_semantic_attribute(log))
    throw MissingAugmentation(
        "log carries no semantic attributes; annotate it first");
  EventClassMap map;
  for (const auto& trace : log.traces) {
    for (const auto& event : trace.events) {
      std::string label = event_label(event);
      if (map.refined.count(label)) continue;
      auto actions = role_values(event, SemanticRole::ActionName);
      auto objects = role_values(event, SemanticRole::ObjectName);
      if (actions.empty() && objects.empty())
        map.refined.emplace(label, "label=" + label);
      else
        map.refined.emplace(label,
                            class_key(std::move(actions), std::move(objects)));
    }
  }
  map.before = map.refined.size();
  std::set<std::string> classes;
  for (const auto& [label, key] : map.refined) classes.insert(key);
  map.after = classes.size();
  return map;
}

std::string render_refinement(const EventClassMap& map) {
  std::ostringstream out;
  for (const auto& [label, key] : map.refined)
    out << label << '\t' << key << '\n';
  out << map.before << " event classes -> " << map.after << "\n";
  return out.str();
}

DirectlyFollowsGraph object_dfg(const EventLog& log, const std::string& object,
                                double path_keep_fraction) {
  if (object.empty()) throw InvalidArgument("object filter must be non-empty");
  if (!(path_keep_fraction > 0.0) || path_keep_fraction > 1.0)
    throw InvalidArgument("path keep fraction must be in (0, 1]");

  DirectlyFollowsGraph graph;
  graph.object = object;
  std::map<std::pair<std::string, std::string>, std::int64_t> all_edges;
  for (const auto& trace : log.traces) {
    std::vector<std::string> projection;
    for (const auto& event : trace.events) {
      auto objects = role_values(event, SemanticRole::ObjectName);
      if (std::find(objects.begin(), objects.end(), object) == objects.end())
        continue;
      projection.push_back(action_class(event));
    }
    if (projection.empty()) continue;
    ++graph.traces;
    for (const auto& cls : projection) ++graph.nodes[cls];
    ++all_edges[{std::string(kDfgStart), projection.front()}];
    for (std::size_t i = 0; i + 1 < projection.size(); ++i)
      ++all_edges[{projection[i], projection[i + 1]}];
    ++all_edges[{projection.back(), std::string(kDfgEnd)}];
  }
  if (graph.traces == 0)
    throw EmptySelection("no event has object '" + object + "'");

  std::vector<std::pair<std::pair<std::string, std::string>, std::int64_t>>
      internal;
  for (const auto& [edge, freq] : all_edges) {
    if (edge.first == kDfgStart || edge.second == kDfgEnd)
      graph.edges.emplace(edge, freq);
    else
      internal.emplace_back(edge, freq);
  }
  if (!internal.empty()) {
    auto keep = static_cast<std::size_t>(
        std::ceil(path_keep_fraction * double(internal.size())));
    std::sort(internal.begin(), internal.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    std::int64_t threshold = internal[keep - 1].second;
    for (const auto& [edge, freq] : internal)
      if (freq >= threshold) graph.edges.emplace(edge, freq);
  }
  return graph;
}

std::string render_dot(const DirectlyFollowsGraph& graph) {
  std::ostringstream out;
  out << "digraph dfg {\n  rankdir=LR;\n";
  out << "  " << dot_quote(kDfgStart)
      << " [shape=circle, label=\"start\"];\n";
  out << "  " << dot_quote(kDfgEnd)
      << " [shape=doublecircle, label=\"end\"];\n";
  for (const auto& [cls, freq] : graph.nodes)
    out << "  " << dot_quote(cls) << " [shape=box, label="
        << dot_quote(cls + " (" + std::to_string(freq) + ")") << "];\n";
  for (const auto& [edge, freq] : graph.edges)
    out << "  " << dot_quote(edge.first) << " -> " << dot_quote(edge.second)
        << " [label=\"" << freq << "\"];\n";
  out << "}\n";
  return out.str();
}

void export_dot(const DirectlyFollowsGraph& graph, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write DOT file '" + path + "'");
  out << render_dot(graph);
  if (!out) throw IoError("failed writing DOT file '" + path + "'");
}

}  // namespace semlog
