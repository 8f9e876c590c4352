#include "modalcheck/kripke.hpp"

#include <bit>

#include <json.hpp>

namespace modalcheck {

std::string to_string(FrameCondition c) {
  switch (c) {
    case FrameCondition::Reflexive: return "reflexive";
    case FrameCondition::Symmetric: return "symmetric";
    case FrameCondition::Transitive: return "transitive";
    case FrameCondition::Euclidean: return "euclidean";
    case FrameCondition::Serial: return "serial";
  }
  return "?";
}

std::optional<FrameCondition> condition_from_string(const std::string& s) {
  for (auto c : kAllConditions) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::size_t FrameClass::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<FrameCondition> FrameClass::conditions() const {
  std::vector<FrameCondition> out;
  for (auto c : kAllConditions) {
    if (contains(c)) out.push_back(c);
  }
  return out;
}

std::string to_string(const FrameClass& f) {
  std::string out = "{";
  bool first = true;
  for (auto c : f.conditions()) {
    if (!first) out += ", ";
    out += to_string(c);
    first = false;
  }
  return out + "}";
}

FrameClass frame_of(Logic l) {
  using C = FrameCondition;
  switch (l) {
    case Logic::K: return {};
    case Logic::T: return {C::Reflexive};
    case Logic::D: return {C::Serial};
    case Logic::B: return {C::Reflexive, C::Symmetric};
    case Logic::S4: return {C::Reflexive, C::Transitive};
    case Logic::S5: return {C::Reflexive, C::Euclidean};
  }
  return {};
}

std::optional<Logic> logic_from_string(const std::string& s) {
  if (s == "K") return Logic::K;
  if (s == "T") return Logic::T;
  if (s == "D") return Logic::D;
  if (s == "B" || s == "B4") return Logic::B;
  if (s == "S4") return Logic::S4;
  if (s == "S5") return Logic::S5;
  return std::nullopt;
}

std::vector<World> AccessRelation::successors(World from) const {
  std::vector<World> out;
  for (auto it = pairs_.lower_bound({from, 0}); it != pairs_.end() && it->first == from; ++it) {
    out.push_back(it->second);
  }
  return out;
}

KripkeModel::KripkeModel(std::size_t world_count, AccessRelation access, Valuation valuation)
    : world_count_(world_count), access_(std::move(access)), valuation_(std::move(valuation)) {
  if (world_count_ == 0) throw std::invalid_argument("a Kripke model needs at least one world");
  for (const auto& [u, v] : access_.pairs()) {
    if (u >= world_count_ || v >= world_count_) {
      throw std::invalid_argument("access pair names a world outside the model");
    }
  }
  for (const auto& [atom, worlds] : valuation_) {
    if (!is_identifier(atom)) throw std::invalid_argument("invalid atom name '" + atom + "'");
    if (!worlds.empty() && *worlds.rbegin() >= world_count_) {
      throw std::invalid_argument("valuation of '" + atom + "' names a world outside the model");
    }
  }
}

bool KripkeModel::holds_atom(const AtomName& a, World w) const {
  auto it = valuation_.find(a);
  return it != valuation_.end() && it->second.contains(w);
}

bool eval(const KripkeModel& m, World w, const Formula& f) {
  if (w >= m.world_count()) {
    throw InvalidWorld("world " + std::to_string(w) + " out of range");
  }
  switch (f.op()) {
    case Op::Atom: return m.holds_atom(f.name(), w);
    case Op::Not: return !eval(m, w, f.lhs());
    case Op::And: return eval(m, w, f.lhs()) && eval(m, w, f.rhs());
    case Op::Or: return eval(m, w, f.lhs()) || eval(m, w, f.rhs());
    case Op::Implies: return !eval(m, w, f.lhs()) || eval(m, w, f.rhs());
    case Op::Iff: return eval(m, w, f.lhs()) == eval(m, w, f.rhs());
    case Op::Box:
      for (World v : m.access().successors(w)) {
        if (!eval(m, v, f.lhs())) return false;
      }
      return true;
    case Op::Diamond:
      for (World v : m.access().successors(w)) {
        if (eval(m, v, f.lhs())) return true;
      }
      return false;
    case Op::StrictImplies:
      return eval(m, w, desugar(f));
  }
  return false;
}

bool holds_globally(const KripkeModel& m, const Formula& f) {
  for (World w = 0; w < m.world_count(); ++w) {
    if (!eval(m, w, f)) return false;
  }
  return true;
}

bool frame_satisfies(std::size_t n, const AccessRelation& r, FrameCondition c) {
  switch (c) {
    case FrameCondition::Reflexive:
      for (World u = 0; u < n; ++u) {
        if (!r.contains(u, u)) return false;
      }
      return true;
    case FrameCondition::Symmetric:
      for (World u = 0; u < n; ++u) {
        for (World v = 0; v < n; ++v) {
          if (r.contains(u, v) && !r.contains(v, u)) return false;
        }
      }
      return true;
    case FrameCondition::Transitive:
      for (World u = 0; u < n; ++u) {
        for (World v = 0; v < n; ++v) {
          for (World w = 0; w < n; ++w) {
            if (r.contains(u, v) && r.contains(v, w) && !r.contains(u, w)) return false;
          }
        }
      }
      return true;
    case FrameCondition::Euclidean:
      for (World u = 0; u < n; ++u) {
        for (World v = 0; v < n; ++v) {
          for (World w = 0; w < n; ++w) {
            if (r.contains(u, v) && r.contains(u, w) && !r.contains(v, w)) return false;
          }
        }
      }
      return true;
    case FrameCondition::Serial:
      for (World u = 0; u < n; ++u) {
        bool any = false;
        for (World v = 0; v < n && !any; ++v) any = r.contains(u, v);
        if (!any) return false;
      }
      return true;
  }
  return false;
}

bool frame_satisfies(const KripkeModel& m, FrameCondition c) {
  return frame_satisfies(m.world_count(), m.access(), c);
}

bool frame_satisfies(const KripkeModel& m, const FrameClass& f) {
  for (auto c : f.conditions()) {
    if (!frame_satisfies(m, c)) return false;
  }
  return true;
}

AccessRelation frame_closure(std::size_t n, const AccessRelation& r, const FrameClass& cs) {
  if (cs.contains(FrameCondition::Serial)) {
    throw SerialNotClosable("seriality is not a closure condition");
  }
  AccessRelation out = r;
  for (bool changed = true; changed;) {
    changed = false;
    if (cs.contains(FrameCondition::Reflexive)) {
      for (World u = 0; u < n; ++u) changed |= out.insert(u, u);
    }
    // Snapshot so insertions don't invalidate iteration.
    const auto pairs = out.pairs();
    for (const auto& [u, v] : pairs) {
      if (cs.contains(FrameCondition::Symmetric)) changed |= out.insert(v, u);
      for (const auto& [x, y] : pairs) {
        if (cs.contains(FrameCondition::Transitive) && v == x) changed |= out.insert(u, y);
        if (cs.contains(FrameCondition::Euclidean) && u == x) changed |= out.insert(v, y);
      }
    }
  }
  return out;
}

std::string to_json(const KripkeModel& m) {
  nlohmann::ordered_json j;
  j["worlds"] = m.world_count();
  auto access = nlohmann::ordered_json::array();
  for (const auto& [u, v] : m.access().pairs()) access.push_back({u, v});
  j["access"] = access;
  auto val = nlohmann::ordered_json::object();
  for (const auto& [atom, worlds] : m.valuation()) {
    val[atom] = std::vector<World>(worlds.begin(), worlds.end());
  }
  j["valuation"] = val;
  return j.dump();
}

KripkeModel model_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  AccessRelation access;
  for (const auto& pair : j.at("access")) {
    access.insert(pair.at(0).get<World>(), pair.at(1).get<World>());
  }
  Valuation val;
  for (const auto& [atom, worlds] : j.at("valuation").items()) {
    auto& set = val[atom];
    for (const auto& w : worlds) set.insert(w.get<World>());
  }
  return KripkeModel(j.at("worlds").get<std::size_t>(), std::move(access), std::move(val));
}

}  // namespace modalcheck
