#ifndef SEMLOG_ROLES_HPP
#define SEMLOG_ROLES_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace semlog {

/// The eight semantic roles plus Other. Declaration order is load-bearing:
/// it fixes the BIO label order and every tie-break in the system.
enum class SemanticRole {
  ObjectName,
  ObjectStatus,
  ActionName,
  ActionStatus,
  ActorName,
  ActorInstance,
  PassiveName,
  PassiveInstance,
  Other,
};

constexpr int kNumRoles = 8;  // excludes Other

constexpr std::array<SemanticRole, 9> all_roles() {
  return {SemanticRole::ObjectName,   SemanticRole::ObjectStatus,
          SemanticRole::ActionName,   SemanticRole::ActionStatus,
          SemanticRole::ActorName,    SemanticRole::ActorInstance,
          SemanticRole::PassiveName,  SemanticRole::PassiveInstance,
          SemanticRole::Other};
}

/// True for the name-level subset: every role except the two instance
/// roles and Other. Attribute classification draws from this set first.
constexpr bool is_name_level(SemanticRole r) {
  return r != SemanticRole::ActorInstance &&
         r != SemanticRole::PassiveInstance && r != SemanticRole::Other;
}

std::string_view role_name(SemanticRole r);
std::optional<SemanticRole> parse_role(std::string_view name);

/// Attribute name written into augmented logs, e.g. "semantic:action:name".
/// Other has no attribute and must never be asked for one.
std::string role_attribute_path(SemanticRole r);

inline constexpr std::string_view kSemanticPrefix = "semantic:";

}  // namespace semlog

#endif
