#include "semlog/roles.hpp"

#include <cassert>

namespace semlog {

std::string_view role_name(SemanticRole r) {
  switch (r) {
    case SemanticRole::ObjectName: return "ObjectName";
    case SemanticRole::ObjectStatus: return "ObjectStatus";
    case SemanticRole::ActionName: return "ActionName";
    case SemanticRole::ActionStatus: return "ActionStatus";
    case SemanticRole::ActorName: return "ActorName";
    case SemanticRole::ActorInstance: return "ActorInstance";
    case SemanticRole::PassiveName: return "PassiveName";
    case SemanticRole::PassiveInstance: return "PassiveInstance";
    case SemanticRole::Other: return "Other";
  }
  return "Other";
}

std::optional<SemanticRole> parse_role(std::string_view name) {
  for (SemanticRole r : all_roles())
    if (role_name(r) == name) return r;
  return std::nullopt;
}

std::string role_attribute_path(SemanticRole r) {
  switch (r) {
    case SemanticRole::ObjectName: return "semantic:object:name";
    case SemanticRole::ObjectStatus: return "semantic:object:status";
    case SemanticRole::ActionName: return "semantic:action:name";
    case SemanticRole::ActionStatus: return "semantic:action:status";
    case SemanticRole::ActorName: return "semantic:actor:name";
    case SemanticRole::ActorInstance: return "semantic:actor:instance";
    case SemanticRole::PassiveName: return "semantic:passive:name";
    case SemanticRole::PassiveInstance: return "semantic:passive:instance";
    case SemanticRole::Other: break;
  }
  assert(false && "Other has no attribute path");
  return {};
}

}  // namespace semlog
