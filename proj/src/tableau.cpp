#include "modalcheck/tableau.hpp"

#include <unordered_map>

namespace modalcheck {

std::string to_string(RuleKind r) {
  switch (r) {
    case RuleKind::Alpha: return "alpha";
    case RuleKind::Beta: return "beta";
    case RuleKind::Box: return "box";
    case RuleKind::Diamond: return "diamond";
    case RuleKind::Serial: return "serial";
    case RuleKind::GlobalPremise: return "global-premise";
    case RuleKind::FrameClosure: return "frame-closure";
    case RuleKind::Closure: return "closure";
  }
  return "?";
}

std::optional<RuleKind> rule_from_string(const std::string& s) {
  for (auto r : {RuleKind::Alpha, RuleKind::Beta, RuleKind::Box, RuleKind::Diamond, RuleKind::Serial,
                 RuleKind::GlobalPremise, RuleKind::FrameClosure, RuleKind::Closure}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

std::size_t ProofObject::node_count() const {
  std::size_t n = 0;
  std::vector<const ProofNode*> stack{&root};
  while (!stack.empty()) {
    const ProofNode* p = stack.back();
    stack.pop_back();
    ++n;
    for (const auto& c : p->children) stack.push_back(&c);
  }
  return n;
}

Formula tableau_normal_form(const Formula& f) { return nnf(expand_iff(desugar(f))); }

namespace {

using Id = std::int32_t;

// Append-only intern table; ids double as the formula order. Children are
// interned before their parents.
class Pool {
 public:
  struct Entry {
    Formula f;
    Id a = -1;
    Id b = -1;
    Id complement = -1;  // literals only
  };

  Id intern(const Formula& f) {
    if (auto it = ids_.find(f); it != ids_.end()) return it->second;
    Entry e{f};
    if (!f.is_atom()) {
      e.a = intern(f.lhs());
      if (is_binary(f.op())) e.b = intern(f.rhs());
    }
    const auto id = static_cast<Id>(entries_.size());
    if (f.is_atom()) {
      if (auto it = ids_.find(Formula::neg(f)); it != ids_.end()) link(id, it->second, e);
    } else if (f.op() == Op::Not && entries_[static_cast<std::size_t>(e.a)].f.is_atom()) {
      link(id, e.a, e);
    }
    entries_.push_back(std::move(e));
    ids_.emplace(f, id);
    return id;
  }

  Id find(const Formula& f) const {
    auto it = ids_.find(f);
    return it == ids_.end() ? -1 : it->second;
  }

  const Entry& operator[](Id id) const { return entries_[static_cast<std::size_t>(id)]; }
  Id size() const { return static_cast<Id>(entries_.size()); }

 private:
  void link(Id self, Id other, Entry& e) {
    e.complement = other;
    entries_[static_cast<std::size_t>(other)].complement = self;
  }

  std::vector<Entry> entries_;
  std::unordered_map<Formula, Id, FormulaHash> ids_;
};

}  // namespace

struct Branch::Impl {
  FrameClass frame;
  std::vector<Formula> premises;
  std::vector<Id> premise_ids;
  std::shared_ptr<Pool> pool;
  std::vector<std::vector<char>> labels;
  std::set<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::set<std::size_t>> succ;

  bool has(std::size_t label, Id id) const {
    const auto& l = labels[label];
    return id >= 0 && static_cast<std::size_t>(id) < l.size() && l[static_cast<std::size_t>(id)];
  }

  bool add_id(std::size_t label, Id id) {
    auto& l = labels[label];
    if (l.size() <= static_cast<std::size_t>(id)) l.resize(static_cast<std::size_t>(pool->size()), 0);
    if (l[static_cast<std::size_t>(id)]) return false;
    l[static_cast<std::size_t>(id)] = 1;
    return true;
  }

  // Visits (label, id) for every formula present, in label then formula order;
  // stops when fn returns true.
  template <typename Fn>
  bool scan(Fn&& fn) const {
    for (std::size_t x = 0; x < labels.size(); ++x) {
      const auto& l = labels[x];
      for (std::size_t id = 0; id < l.size(); ++id) {
        if (l[id] && fn(x, static_cast<Id>(id))) return true;
      }
    }
    return false;
  }

  std::optional<PendingRule> pending_frame_closure() const {
    auto closure = [](FrameCondition c, std::size_t u, std::size_t v) {
      return PendingRule{RuleKind::FrameClosure, u, std::nullopt, {u, v}, c};
    };
    for (auto c : frame.conditions()) {
      switch (c) {
        case FrameCondition::Reflexive:
          for (std::size_t x = 0; x < labels.size(); ++x) {
            if (!edges.contains({x, x})) return closure(c, x, x);
          }
          break;
        case FrameCondition::Symmetric:
          for (const auto& [u, v] : edges) {
            if (!edges.contains({v, u})) return closure(c, v, u);
          }
          break;
        case FrameCondition::Transitive:
          for (const auto& [u, v] : edges) {
            for (auto w : succ[v]) {
              if (!edges.contains({u, w})) return closure(c, u, w);
            }
          }
          break;
        case FrameCondition::Euclidean:
          for (const auto& [u, v] : edges) {
            for (auto w : succ[u]) {
              if (!edges.contains({v, w})) return closure(c, v, w);
            }
          }
          break;
        case FrameCondition::Serial:
          break;
      }
    }
    return std::nullopt;
  }
};

Branch::Branch(FrameClass frame, std::vector<Formula> premises) : impl_(std::make_unique<Impl>()) {
  impl_->frame = frame;
  impl_->pool = std::make_shared<Pool>();
  for (const auto& p : premises) {
    const Id id = impl_->pool->intern(p);
    bool seen = false;
    for (auto q : impl_->premise_ids) seen = seen || q == id;
    if (!seen) {
      impl_->premise_ids.push_back(id);
      impl_->premises.push_back(p);
    }
  }
}

Branch::~Branch() = default;
Branch::Branch(const Branch& o) : impl_(std::make_unique<Impl>(*o.impl_)) {}
Branch& Branch::operator=(const Branch& o) {
  impl_ = std::make_unique<Impl>(*o.impl_);
  return *this;
}
Branch::Branch(Branch&&) noexcept = default;
Branch& Branch::operator=(Branch&&) noexcept = default;

std::size_t Branch::add_label() {
  impl_->labels.emplace_back(static_cast<std::size_t>(impl_->pool->size()), 0);
  impl_->succ.emplace_back();
  return impl_->labels.size() - 1;
}

bool Branch::add(std::size_t label, const Formula& f) {
  if (label >= impl_->labels.size()) throw std::out_of_range("no such label");
  return impl_->add_id(label, impl_->pool->intern(f));
}

bool Branch::add_edge(std::size_t from, std::size_t to) {
  if (from >= impl_->labels.size() || to >= impl_->labels.size()) throw std::out_of_range("no such label");
  if (!impl_->edges.insert({from, to}).second) return false;
  impl_->succ[from].insert(to);
  return true;
}

const FrameClass& Branch::frame() const { return impl_->frame; }
const std::vector<Formula>& Branch::premises() const { return impl_->premises; }
std::size_t Branch::label_count() const { return impl_->labels.size(); }
const std::set<std::pair<std::size_t, std::size_t>>& Branch::edges() const { return impl_->edges; }

bool Branch::contains(std::size_t label, const Formula& f) const {
  return label < impl_->labels.size() && impl_->has(label, impl_->pool->find(f));
}

std::vector<Formula> Branch::formulas(std::size_t label) const {
  std::vector<Formula> out;
  const auto& l = impl_->labels.at(label);
  for (std::size_t id = 0; id < l.size(); ++id) {
    if (l[id]) out.push_back((*impl_->pool)[static_cast<Id>(id)].f);
  }
  return out;
}

std::optional<std::pair<std::size_t, Formula>> Branch::clash() const {
  const Pool& pool = *impl_->pool;
  std::optional<std::pair<std::size_t, Formula>> found;
  impl_->scan([&](std::size_t x, Id id) {
    const auto& e = pool[id];
    if (e.f.is_atom() && impl_->has(x, e.complement)) {
      found.emplace(x, e.f);
      return true;
    }
    return false;
  });
  return found;
}

std::optional<PendingRule> Branch::next_rule() const {
  const Impl& b = *impl_;
  const Pool& pool = *b.pool;

  for (std::size_t x = 0; x < b.labels.size(); ++x) {
    for (std::size_t i = 0; i < b.premise_ids.size(); ++i) {
      if (!b.has(x, b.premise_ids[i])) return PendingRule{RuleKind::GlobalPremise, x, b.premises[i], {}, {}};
    }
  }
  if (auto fc = b.pending_frame_closure()) return fc;

  std::optional<PendingRule> found;
  auto pass = [&](auto&& match) {
    b.scan([&](std::size_t x, Id id) {
      if (auto r = match(x, pool[id])) {
        found = std::move(r);
        return true;
      }
      return false;
    });
    return found.has_value();
  };

  if (pass([&](std::size_t x, const Pool::Entry& e) -> std::optional<PendingRule> {
        if (e.f.op() == Op::And && !(b.has(x, e.a) && b.has(x, e.b))) {
          return PendingRule{RuleKind::Alpha, x, e.f, {}, {}};
        }
        return std::nullopt;
      })) {
    return found;
  }
  if (pass([&](std::size_t x, const Pool::Entry& e) -> std::optional<PendingRule> {
        if (e.f.op() != Op::Box) return std::nullopt;
        for (auto y : b.succ[x]) {
          if (!b.has(y, e.a)) return PendingRule{RuleKind::Box, x, e.f, {y}, {}};
        }
        return std::nullopt;
      })) {
    return found;
  }
  if (pass([&](std::size_t x, const Pool::Entry& e) -> std::optional<PendingRule> {
        if (e.f.op() == Op::Or && !b.has(x, e.a) && !b.has(x, e.b)) {
          return PendingRule{RuleKind::Beta, x, e.f, {}, {}};
        }
        return std::nullopt;
      })) {
    return found;
  }
  if (pass([&](std::size_t x, const Pool::Entry& e) -> std::optional<PendingRule> {
        if (e.f.op() != Op::Diamond) return std::nullopt;
        for (auto y : b.succ[x]) {
          if (b.has(y, e.a)) return std::nullopt;
        }
        return PendingRule{RuleKind::Diamond, x, e.f, {}, {}};
      })) {
    return found;
  }
  if (b.frame.contains(FrameCondition::Serial)) {
    for (std::size_t x = 0; x < b.labels.size(); ++x) {
      if (b.succ[x].empty()) return PendingRule{RuleKind::Serial, x, std::nullopt, {}, {}};
    }
  }
  return std::nullopt;
}

bool Branch::saturated() const { return !clash() && !next_rule(); }

void Branch::apply(const PendingRule& r) {
  switch (r.rule) {
    case RuleKind::GlobalPremise:
      add(r.label, *r.principal);
      return;
    case RuleKind::FrameClosure:
      add_edge(r.affected.at(0), r.affected.at(1));
      return;
    case RuleKind::Alpha:
      add(r.label, r.principal->lhs());
      add(r.label, r.principal->rhs());
      return;
    case RuleKind::Box:
      add(r.affected.at(0), r.principal->lhs());
      return;
    default:
      throw std::logic_error("Branch::apply: " + to_string(r.rule) + " is a branching rule");
  }
}

CountermodelWitness extract_countermodel(const Branch& b) {
  if (b.label_count() == 0 || b.clash() || b.next_rule()) {
    throw NotSaturated("countermodel extraction needs an open saturated branch");
  }
  Valuation val;
  for (std::size_t x = 0; x < b.label_count(); ++x) {
    for (const auto& f : b.formulas(x)) {
      for (const auto& a : atoms(f)) val[a];
      if (f.is_atom()) val[f.name()].insert(x);
    }
  }
  return {KripkeModel(b.label_count(), AccessRelation(b.edges()), std::move(val)), 0};
}

// ---------------------------------------------------------------------------
// Search.
//
// Depth-first over branches. An unfulfilled <>A (or a serial obligation) at x
// is met either by a fresh label or by pointing x at an existing label. Only
// the fresh alternative is sound for refutation, so proofs are built from it
// alone; the reuse alternatives exist to find finite countermodels. A cap on
// labels per branch bounds the fresh alternative and is raised until the
// search is conclusive.
//
// Closed outcomes carry the facts their refutation reads. Steps whose output
// is never read are dropped from the proof, and a beta whose left refutation
// ignores the left disjunct closes the parent branch directly (backjumping).

namespace {

struct Needs {
  std::set<std::pair<std::size_t, Formula>> facts;
  std::set<std::pair<std::size_t, std::size_t>> edges;
  bool any_edge = false;  // some transitive or Euclidean step read unspecified edges

  bool reads(std::size_t x, const Formula& f) const { return facts.contains({x, f}); }
  bool reads_edge(std::size_t u, std::size_t v) const { return any_edge || edges.contains({u, v}); }

  void merge(Needs other) {
    facts.merge(other.facts);
    edges.merge(other.edges);
    any_edge = any_edge || other.any_edge;
  }

  void forget_label(std::size_t y) {
    std::erase_if(facts, [y](const auto& f) { return f.first == y; });
    std::erase_if(edges, [y](const auto& e) { return e.first == y || e.second == y; });
  }
};

struct Refutation {
  ProofNode proof;
  Needs needs;
};

struct Outcome {
  enum Kind { Open, Closed, Incomplete } kind;
  std::optional<Branch> open;
  std::optional<Refutation> refutation;
};

struct Search {
  std::size_t cap;
  std::size_t ceiling;
  std::size_t& labels_created;
  bool fresh_only = false;  // skip reuse alternatives: a pure refutation attempt

  std::size_t new_label(Branch& b) {
    if (++labels_created > ceiling) {
      throw ResourceLimit("tableau exceeded the node ceiling of " + std::to_string(ceiling) + " labels");
    }
    return b.add_label();
  }

  static ProofNode node_of(const PendingRule& r) {
    ProofNode n;
    n.rule = r.rule;
    n.label = r.label;
    n.principal = r.principal;
    n.affected = r.affected;
    n.condition = r.condition;
    return n;
  }

  static Outcome closed(Refutation r) { return {Outcome::Closed, std::nullopt, std::move(r)}; }

  // Prepends a linear step if the refutation below reads anything it adds.
  static void prepend(ProofNode step, Refutation& r) {
    Needs& n = r.needs;
    const std::size_t x = step.label;
    switch (step.rule) {
      case RuleKind::GlobalPremise:
        if (!n.reads(x, *step.principal)) return;
        n.facts.erase({x, *step.principal});
        break;
      case RuleKind::Alpha: {
        const Formula& l = step.principal->lhs();
        const Formula& rr = step.principal->rhs();
        if (!n.reads(x, l) && !n.reads(x, rr)) return;
        n.facts.erase({x, l});
        n.facts.erase({x, rr});
        n.facts.insert({x, *step.principal});
        break;
      }
      case RuleKind::Box: {
        const std::size_t y = step.affected[0];
        if (!n.reads(y, step.principal->lhs())) return;
        n.facts.erase({y, step.principal->lhs()});
        n.facts.insert({x, *step.principal});
        n.edges.insert({x, y});
        break;
      }
      case RuleKind::FrameClosure: {
        const std::size_t u = step.affected[0];
        const std::size_t v = step.affected[1];
        if (!n.reads_edge(u, v)) return;
        n.edges.erase({u, v});
        if (*step.condition == FrameCondition::Symmetric) {
          n.edges.insert({v, u});
        } else if (*step.condition != FrameCondition::Reflexive) {
          n.any_edge = true;
        }
        break;
      }
      default:
        break;
    }
    step.children.push_back(std::move(r.proof));
    r.proof = std::move(step);
  }

  static Refutation fold(std::vector<ProofNode> chain, Refutation tail) {
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) prepend(std::move(*it), tail);
    return tail;
  }

  // Links x to target and, for a diamond, adds its operand there.
  static void connect(Branch& b, const PendingRule& r, std::size_t target) {
    b.add_edge(r.label, target);
    if (r.rule == RuleKind::Diamond) b.add(target, r.principal->lhs());
  }

  Outcome explore(Branch b) {
    std::vector<ProofNode> chain;
    for (;;) {
      if (auto c = b.clash()) {
        Refutation leaf;
        leaf.proof.rule = RuleKind::Closure;
        leaf.proof.label = c->first;
        leaf.proof.principal = c->second;
        leaf.needs.facts = {{c->first, c->second}, {c->first, Formula::neg(c->second)}};
        return closed(fold(std::move(chain), std::move(leaf)));
      }
      auto r = b.next_rule();
      if (!r) return {Outcome::Open, std::move(b), std::nullopt};

      switch (r->rule) {
        case RuleKind::Beta: {
          const std::size_t x = r->label;
          const Formula& l = r->principal->lhs();
          const Formula& rr = r->principal->rhs();
          Branch left = b;
          left.add(x, l);
          Outcome lo = explore(std::move(left));
          if (lo.kind == Outcome::Open) return lo;
          if (lo.kind == Outcome::Closed && !lo.refutation->needs.reads(x, l)) {
            return closed(fold(std::move(chain), std::move(*lo.refutation)));
          }
          b.add(x, rr);
          Outcome ro = explore(std::move(b));
          if (ro.kind == Outcome::Open) return ro;
          if (ro.kind == Outcome::Closed && !ro.refutation->needs.reads(x, rr)) {
            return closed(fold(std::move(chain), std::move(*ro.refutation)));
          }
          if (lo.kind == Outcome::Closed && ro.kind == Outcome::Closed) {
            Refutation joined;
            joined.proof = node_of(*r);
            lo.refutation->needs.facts.erase({x, l});
            ro.refutation->needs.facts.erase({x, rr});
            joined.needs = std::move(lo.refutation->needs);
            joined.needs.merge(std::move(ro.refutation->needs));
            joined.needs.facts.insert({x, *r->principal});
            joined.proof.children.push_back(std::move(lo.refutation->proof));
            joined.proof.children.push_back(std::move(ro.refutation->proof));
            return closed(fold(std::move(chain), std::move(joined)));
          }
          return {Outcome::Incomplete, std::nullopt, std::nullopt};
        }
        case RuleKind::Diamond:
        case RuleKind::Serial: {
          if (b.label_count() < cap) {
            Branch fresh = b;
            const std::size_t y = new_label(fresh);
            connect(fresh, *r, y);
            Outcome fo = explore(std::move(fresh));
            if (fo.kind == Outcome::Open) return fo;
            if (fo.kind == Outcome::Closed) {
              // Fresh labels are numbered in order, so the step stays even if unread.
              Refutation& sub = *fo.refutation;
              ProofNode n = node_of(*r);
              n.affected = {y};
              n.children.push_back(std::move(sub.proof));
              sub.proof = std::move(n);
              sub.needs.forget_label(y);
              if (r->rule == RuleKind::Diamond) sub.needs.facts.insert({r->label, *r->principal});
              return closed(fold(std::move(chain), std::move(sub)));
            }
          }
          if (fresh_only) return {Outcome::Incomplete, std::nullopt, std::nullopt};
          for (std::size_t c = 0; c < b.label_count(); ++c) {
            Branch reuse = b;
            connect(reuse, *r, c);
            Outcome ro = explore(std::move(reuse));
            if (ro.kind == Outcome::Open) return ro;
          }
          return {Outcome::Incomplete, std::nullopt, std::nullopt};
        }
        default:
          b.apply(*r);
          chain.push_back(node_of(*r));
      }
    }
  }
};

void number(ProofNode& n, std::size_t& next) {
  n.id = next++;
  for (auto& c : n.children) number(c, next);
}

}  // namespace

Verdict decide(const std::vector<Formula>& premises, const Formula& conclusion, const FrameClass& frame,
               const DecideOptions& options) {
  std::vector<Formula> normal;
  normal.reserve(premises.size());
  for (const auto& p : premises) normal.push_back(tableau_normal_form(p));
  const Formula refuted = tableau_normal_form(Formula::neg(conclusion));

  std::size_t labels_created = 1;
  for (std::size_t cap = 1;; ++cap) {
    auto attempt = [&](std::size_t limit, bool fresh_only) {
      Branch root(frame, normal);
      root.add_label();
      root.add(0, refuted);
      Search search{limit, options.node_ceiling, labels_created, fresh_only};
      return search.explore(std::move(root));
    };
    // A deeper refutation without reuse is cheap and often closes before the
    // full search at this cap would.
    Outcome o = attempt(2 * cap, true);
    if (o.kind == Outcome::Incomplete) o = attempt(cap, false);
    if (o.kind == Outcome::Closed) {
      ProofNode proof = std::move(o.refutation->proof);
      std::size_t next = 0;
      number(proof, next);
      return Verdict::valid(ProofObject{std::move(proof)});
    }
    if (o.kind == Outcome::Open) {
      CountermodelWitness w = extract_countermodel(*o.open);
      if (!verify_witness(w, premises, conclusion, frame)) {
        throw std::logic_error("tableau produced a countermodel that fails re-verification");
      }
      return Verdict::invalid(std::move(w));
    }
    if (cap >= options.node_ceiling) {
      throw ResourceLimit("tableau search inconclusive within the node ceiling");
    }
  }
}

Verdict prove_valid(const Formula& f, const FrameClass& frame, const DecideOptions& options) {
  return decide({}, f, frame, options);
}

}  // namespace modalcheck
