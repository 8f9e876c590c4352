// Reference enumeration: materializes every KripkeModel and evaluates with the
// recursive semantics. Slow, but shares no code with the bitmask kernel in
// enumerator.cpp, which is tested against it.

#include <stdexcept>

#include "modalcheck/enumerator.hpp"

namespace modalcheck {

EnumerationBudget EnumerationBudget::for_query(const std::vector<Formula>& premises,
                                               const Formula& conclusion, std::size_t max_worlds) {
  std::set<AtomName> all = modalcheck::atoms(conclusion);
  for (const auto& p : premises) {
    auto a = modalcheck::atoms(p);
    all.insert(a.begin(), a.end());
  }
  return {max_worlds, std::vector<AtomName>(all.begin(), all.end())};
}

AccessRelation relation_from_bits(std::size_t n, std::uint64_t bits) {
  AccessRelation r;
  const std::size_t total = n * n;
  for (World i = 0; i < n; ++i) {
    for (World j = 0; j < n; ++j) {
      if ((bits >> (total - 1 - (i * n + j))) & 1u) r.insert(i, j);
    }
  }
  return r;
}

Valuation valuation_from_bits(std::size_t n, const std::vector<AtomName>& atoms, std::uint64_t bits) {
  Valuation val;
  const std::size_t total = n * atoms.size();
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    auto& worlds = val[atoms[a]];
    for (World w = 0; w < n; ++w) {
      if ((bits >> (total - 1 - (a * n + w))) & 1u) worlds.insert(w);
    }
  }
  return val;
}

namespace {

void check_budget(const EnumerationBudget& b) {
  if (b.max_worlds == 0) throw std::invalid_argument("enumeration budget needs max_worlds >= 1");
  if (b.max_worlds > kMaxEnumeratedWorlds) {
    throw std::invalid_argument("enumeration budget exceeds " + std::to_string(kMaxEnumeratedWorlds) +
                                " worlds");
  }
  if (b.max_worlds * b.atoms.size() > 62) {
    throw std::invalid_argument("enumeration budget has too many atoms");
  }
}

}  // namespace

ModelStream::ModelStream(EnumerationBudget budget, FrameClass frame)
    : budget_(std::move(budget)), frame_(frame) {
  check_budget(budget_);
  load_shape(1);
}

bool ModelStream::load_shape(std::size_t n) {
  for (; n <= budget_.max_worlds; ++n) {
    relations_.clear();
    const std::uint64_t count = std::uint64_t{1} << (n * n);
    for (std::uint64_t r = 0; r < count; ++r) {
      AccessRelation rel = relation_from_bits(n, r);
      bool ok = true;
      for (auto c : frame_.conditions()) ok = ok && frame_satisfies(n, rel, c);
      if (ok) relations_.push_back(r);
    }
    if (!relations_.empty()) {
      worlds_ = n;
      relation_pos_ = 0;
      valuation_ = 0;
      valuation_count_ = std::uint64_t{1} << (n * budget_.atoms.size());
      return true;
    }
  }
  worlds_ = budget_.max_worlds + 1;
  return false;
}

std::optional<KripkeModel> ModelStream::next() {
  if (worlds_ > budget_.max_worlds) return std::nullopt;
  KripkeModel m(worlds_, relation_from_bits(worlds_, relations_[relation_pos_]),
                valuation_from_bits(worlds_, budget_.atoms, valuation_));
  if (++valuation_ == valuation_count_) {
    valuation_ = 0;
    if (++relation_pos_ == relations_.size()) load_shape(worlds_ + 1);
  }
  return m;
}

std::vector<KripkeModel> enumerate_models(const EnumerationBudget& budget, const FrameClass& frame) {
  std::vector<KripkeModel> out;
  ModelStream stream(budget, frame);
  while (auto m = stream.next()) out.push_back(std::move(*m));
  return out;
}

std::optional<CountermodelWitness> find_countermodel_serial(const std::vector<Formula>& premises,
                                                            const Formula& conclusion,
                                                            const FrameClass& frame,
                                                            const EnumerationBudget& budget) {
  ModelStream stream(budget, frame);
  while (auto m = stream.next()) {
    bool premises_hold = true;
    for (const auto& p : premises) {
      if (!holds_globally(*m, p)) {
        premises_hold = false;
        break;
      }
    }
    if (!premises_hold) continue;
    for (World w = 0; w < m->world_count(); ++w) {
      if (!eval(*m, w, conclusion)) return CountermodelWitness{std::move(*m), w};
    }
  }
  return std::nullopt;
}

bool verify_witness(const CountermodelWitness& w, const std::vector<Formula>& premises,
                    const Formula& conclusion, const FrameClass& frame) {
  if (w.world >= w.model.world_count()) return false;
  if (!frame_satisfies(w.model, frame)) return false;
  for (const auto& p : premises) {
    if (!holds_globally(w.model, p)) return false;
  }
  return !eval(w.model, w.world, conclusion);
}

}  // namespace modalcheck
