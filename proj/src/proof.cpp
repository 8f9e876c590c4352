// Independent replay of tableau proofs. The replay state is a plain map of
// label -> formula set plus an edge set; none of the prover's machinery is
// used, so a prover bug cannot vouch for itself.

#include <json.hpp>

#include "modalcheck/tableau.hpp"

namespace modalcheck {
namespace {

struct ReplayState {
  std::vector<std::set<Formula>> labels;
  std::set<std::pair<std::size_t, std::size_t>> edges;

  bool has_label(std::size_t x) const { return x < labels.size(); }
  bool holds(std::size_t x, const Formula& f) const { return has_label(x) && labels[x].contains(f); }
  bool edge(std::size_t u, std::size_t v) const { return edges.contains({u, v}); }
};

class Replayer {
 public:
  Replayer(std::set<Formula> premises, FrameClass frame) : premises_(std::move(premises)), frame_(frame) {}

  bool replay(const ProofNode& n, ReplayState s) const {
    const std::size_t x = n.label;
    auto only_child = [&](ReplayState next) {
      return n.children.size() == 1 && replay(n.children.front(), std::move(next));
    };

    switch (n.rule) {
      case RuleKind::Closure: {
        if (!n.children.empty() || !n.principal || !n.principal->is_atom()) return false;
        return s.holds(x, *n.principal) && s.holds(x, Formula::neg(*n.principal));
      }
      case RuleKind::GlobalPremise: {
        if (!n.principal || !s.has_label(x) || !premises_.contains(*n.principal)) return false;
        s.labels[x].insert(*n.principal);
        return only_child(std::move(s));
      }
      case RuleKind::Alpha: {
        if (!n.principal || n.principal->op() != Op::And || !s.holds(x, *n.principal)) return false;
        s.labels[x].insert(n.principal->lhs());
        s.labels[x].insert(n.principal->rhs());
        return only_child(std::move(s));
      }
      case RuleKind::Beta: {
        if (!n.principal || n.principal->op() != Op::Or || !s.holds(x, *n.principal)) return false;
        if (n.children.size() != 2) return false;
        ReplayState left = s;
        left.labels[x].insert(n.principal->lhs());
        s.labels[x].insert(n.principal->rhs());
        return replay(n.children[0], std::move(left)) && replay(n.children[1], std::move(s));
      }
      case RuleKind::Box: {
        if (!n.principal || n.principal->op() != Op::Box || !s.holds(x, *n.principal)) return false;
        if (n.affected.size() != 1) return false;
        const std::size_t y = n.affected[0];
        if (!s.has_label(y) || !s.edge(x, y)) return false;
        s.labels[y].insert(n.principal->lhs());
        return only_child(std::move(s));
      }
      case RuleKind::Diamond:
      case RuleKind::Serial: {
        if (n.rule == RuleKind::Diamond) {
          if (!n.principal || n.principal->op() != Op::Diamond || !s.holds(x, *n.principal)) return false;
        } else if (!frame_.contains(FrameCondition::Serial) || !s.has_label(x)) {
          return false;
        }
        if (n.affected.size() != 1 || n.affected[0] != s.labels.size()) return false;
        const std::size_t y = n.affected[0];
        s.labels.emplace_back();
        s.edges.insert({x, y});
        if (n.rule == RuleKind::Diamond) s.labels[y].insert(n.principal->lhs());
        return only_child(std::move(s));
      }
      case RuleKind::FrameClosure: {
        if (!n.condition || !frame_.contains(*n.condition) || n.affected.size() != 2) return false;
        const std::size_t u = n.affected[0];
        const std::size_t v = n.affected[1];
        if (!s.has_label(u) || !s.has_label(v) || !derivable(s, *n.condition, u, v)) return false;
        s.edges.insert({u, v});
        return only_child(std::move(s));
      }
    }
    return false;
  }

 private:
  static bool derivable(const ReplayState& s, FrameCondition c, std::size_t u, std::size_t v) {
    switch (c) {
      case FrameCondition::Reflexive:
        return u == v;
      case FrameCondition::Symmetric:
        return s.edge(v, u);
      case FrameCondition::Transitive:
        for (std::size_t z = 0; z < s.labels.size(); ++z) {
          if (s.edge(u, z) && s.edge(z, v)) return true;
        }
        return false;
      case FrameCondition::Euclidean:
        for (std::size_t z = 0; z < s.labels.size(); ++z) {
          if (s.edge(z, u) && s.edge(z, v)) return true;
        }
        return false;
      case FrameCondition::Serial:
        return false;
    }
    return false;
  }

  std::set<Formula> premises_;
  FrameClass frame_;
};

nlohmann::ordered_json node_json(const ProofNode& n) {
  nlohmann::ordered_json j;
  j["id"] = n.id;
  j["rule"] = to_string(n.rule);
  j["label"] = n.label;
  if (n.principal) j["principal"] = print(*n.principal);
  j["affected"] = n.affected;
  if (n.condition) j["condition"] = to_string(*n.condition);
  auto kids = nlohmann::ordered_json::array();
  for (const auto& c : n.children) kids.push_back(node_json(c));
  j["children"] = std::move(kids);
  return j;
}

ProofNode node_from_json(const nlohmann::json& j) {
  ProofNode n;
  n.id = j.at("id").get<std::size_t>();
  auto rule = rule_from_string(j.at("rule").get<std::string>());
  if (!rule) throw std::invalid_argument("unknown rule " + j.at("rule").dump());
  n.rule = *rule;
  n.label = j.at("label").get<std::size_t>();
  if (j.contains("principal")) n.principal = parse(j.at("principal").get<std::string>());
  n.affected = j.at("affected").get<std::vector<std::size_t>>();
  if (j.contains("condition")) {
    auto c = condition_from_string(j.at("condition").get<std::string>());
    if (!c) throw std::invalid_argument("unknown frame condition " + j.at("condition").dump());
    n.condition = *c;
  }
  for (const auto& c : j.at("children")) n.children.push_back(node_from_json(c));
  return n;
}

}  // namespace

bool check_proof(const ProofObject& p, const std::vector<Formula>& premises, const Formula& conclusion,
                 const FrameClass& frame) {
  std::set<Formula> normal;
  for (const auto& f : premises) normal.insert(tableau_normal_form(f));
  ReplayState root;
  root.labels.push_back({tableau_normal_form(Formula::neg(conclusion))});
  return Replayer(std::move(normal), frame).replay(p.root, std::move(root));
}

std::string to_json(const ProofObject& p, int indent) { return node_json(p.root).dump(indent); }

ProofObject proof_from_json(const std::string& text) {
  try {
    return ProofObject{node_from_json(nlohmann::json::parse(text))};
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed proof: ") + e.what());
  }
}

}  // namespace modalcheck
