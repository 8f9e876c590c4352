#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modalcheck/formula.hpp"

namespace modalcheck {

/// Worlds are dense indices in [0, world_count).
using World = std::size_t;

class InvalidWorld : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class SerialNotClosable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class FrameCondition : std::uint8_t { Reflexive, Symmetric, Transitive, Euclidean, Serial };

inline constexpr FrameCondition kAllConditions[] = {
    FrameCondition::Reflexive, FrameCondition::Symmetric, FrameCondition::Transitive,
    FrameCondition::Euclidean, FrameCondition::Serial};

/// Lowercase name: "reflexive", "symmetric", ...
std::string to_string(FrameCondition c);
std::optional<FrameCondition> condition_from_string(const std::string& s);

/// A set of frame conditions, stored as a bitmask over kAllConditions.
class FrameClass {
 public:
  constexpr FrameClass() = default;
  FrameClass(std::initializer_list<FrameCondition> cs) {
    for (auto c : cs) insert(c);
  }
  static constexpr FrameClass from_bits(std::uint8_t bits) {
    FrameClass f;
    f.bits_ = bits & 0x1f;
    return f;
  }

  void insert(FrameCondition c) { bits_ |= bit(c); }
  bool contains(FrameCondition c) const { return (bits_ & bit(c)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const;
  std::uint8_t bits() const { return bits_; }
  bool subset_of(const FrameClass& other) const { return (bits_ & ~other.bits_) == 0; }
  std::vector<FrameCondition> conditions() const;

  friend bool operator==(const FrameClass&, const FrameClass&) = default;

 private:
  static constexpr std::uint8_t bit(FrameCondition c) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(c));
  }
  std::uint8_t bits_ = 0;
};

/// "{reflexive, euclidean}" in condition order.
std::string to_string(const FrameClass& f);

enum class Logic { K, T, D, B, S4, S5 };

FrameClass frame_of(Logic l);
std::optional<Logic> logic_from_string(const std::string& s);

/// Accessibility relation as a sorted set of (from, to) pairs.
class AccessRelation {
 public:
  AccessRelation() = default;
  AccessRelation(std::initializer_list<std::pair<World, World>> pairs) : pairs_(pairs) {}
  explicit AccessRelation(std::set<std::pair<World, World>> pairs) : pairs_(std::move(pairs)) {}

  bool contains(World from, World to) const { return pairs_.contains({from, to}); }
  bool insert(World from, World to) { return pairs_.insert({from, to}).second; }
  std::vector<World> successors(World from) const;
  const std::set<std::pair<World, World>>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }

  friend bool operator==(const AccessRelation&, const AccessRelation&) = default;

 private:
  std::set<std::pair<World, World>> pairs_;
};

using Valuation = std::map<AtomName, std::set<World>>;

class KripkeModel {
 public:
  /// Throws std::invalid_argument if world_count is zero or any pair or
  /// valuation entry names a world outside [0, world_count).
  KripkeModel(std::size_t world_count, AccessRelation access, Valuation valuation);

  std::size_t world_count() const { return world_count_; }
  const AccessRelation& access() const { return access_; }
  const Valuation& valuation() const { return valuation_; }
  bool holds_atom(const AtomName& a, World w) const;

  friend bool operator==(const KripkeModel&, const KripkeModel&) = default;

 private:
  std::size_t world_count_;
  AccessRelation access_;
  Valuation valuation_;
};

/// Truth of f at world w. Atoms missing from the valuation are false
/// everywhere; strict implication is evaluated through its desugaring.
bool eval(const KripkeModel& m, World w, const Formula& f);
bool holds_globally(const KripkeModel& m, const Formula& f);

bool frame_satisfies(std::size_t world_count, const AccessRelation& r, FrameCondition c);
bool frame_satisfies(const KripkeModel& m, FrameCondition c);
bool frame_satisfies(const KripkeModel& m, const FrameClass& f);

/// Least superset of r closed under the Horn conditions in cs.
AccessRelation frame_closure(std::size_t world_count, const AccessRelation& r, const FrameClass& cs);

/// {"worlds": n, "access": [[i,j],...], "valuation": {...}} with sorted pairs
/// and world lists.
std::string to_json(const KripkeModel& m);
KripkeModel model_from_json(const std::string& text);

}  // namespace modalcheck
