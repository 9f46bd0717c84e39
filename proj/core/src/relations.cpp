#include "temprel/relations.hpp"

namespace temprel {

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::kBefore:
      return "before";
    case Relation::kAfter:
      return "after";
    case Relation::kIncludes:
      return "includes";
    case Relation::kIncluded:
      return "included";
    case Relation::kEqual:
      return "equal";
    case Relation::kVague:
      return "vague";
  }
  return "vague";
}

std::optional<Relation> relation_from_string(std::string_view name) {
  for (Relation r : kAllRelations) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

}  // namespace temprel
