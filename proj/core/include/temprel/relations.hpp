#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string_view>

namespace temprel {

/// The six temporal labels. The enum order is the canonical label order and
/// is used for deterministic tie-breaking everywhere a tie can occur.
enum class Relation : std::uint8_t {
  kBefore = 0,
  kAfter = 1,
  kIncludes = 2,
  kIncluded = 3,
  kEqual = 4,
  kVague = 5,
};

inline constexpr int kRelationCount = 6;

inline constexpr std::array<Relation, kRelationCount> kAllRelations = {
    Relation::kBefore,   Relation::kAfter, Relation::kIncludes,
    Relation::kIncluded, Relation::kEqual, Relation::kVague,
};

constexpr int index_of(Relation r) { return static_cast<int>(r); }

constexpr Relation reverse(Relation r) {
  switch (r) {
    case Relation::kBefore:
      return Relation::kAfter;
    case Relation::kAfter:
      return Relation::kBefore;
    case Relation::kIncludes:
      return Relation::kIncluded;
    case Relation::kIncluded:
      return Relation::kIncludes;
    case Relation::kEqual:
    case Relation::kVague:
      return r;
  }
  return r;
}

std::string_view to_string(Relation r);

/// Parses one of the six lowercase label names; nullopt for anything else.
std::optional<Relation> relation_from_string(std::string_view name);

/// A subset of the six labels, packed into one byte.
class RelationSet {
 public:
  constexpr RelationSet() = default;

  static constexpr RelationSet full() { return RelationSet{0x3f}; }
  static constexpr RelationSet single(Relation r) {
    return RelationSet{static_cast<std::uint8_t>(1u << index_of(r))};
  }

  constexpr void add(Relation r) { bits_ |= 1u << index_of(r); }
  constexpr bool contains(Relation r) const {
    return (bits_ >> index_of(r)) & 1u;
  }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }

  /// The unique member; only meaningful when size() == 1.
  constexpr Relation sole_member() const {
    return static_cast<Relation>(std::countr_zero(bits_));
  }

  constexpr RelationSet reversed() const {
    RelationSet out;
    for (Relation r : kAllRelations) {
      if (contains(r)) out.add(reverse(r));
    }
    return out;
  }

  constexpr RelationSet operator&(RelationSet other) const {
    return RelationSet{static_cast<std::uint8_t>(bits_ & other.bits_)};
  }

  constexpr bool operator==(const RelationSet&) const = default;

  constexpr std::uint8_t bits() const { return bits_; }

 private:
  constexpr explicit RelationSet(std::uint8_t bits) : bits_(bits) {}

  std::uint8_t bits_ = 0;
};

}  // namespace temprel
