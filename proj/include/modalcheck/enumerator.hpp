#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "modalcheck/formula.hpp"
#include "modalcheck/kripke.hpp"

namespace modalcheck {

/// Bounds of an exhaustive search. Worlds range over 1..=max_worlds; atoms
/// not listed are false everywhere.
struct EnumerationBudget {
  std::size_t max_worlds = 3;
  std::vector<AtomName> atoms;

  /// Budget over the sorted atoms of the query.
  static EnumerationBudget for_query(const std::vector<Formula>& premises, const Formula& conclusion,
                                     std::size_t max_worlds = 3);
};

/// Largest world count the enumerator accepts (2^(n*n) relations per shape).
inline constexpr std::size_t kMaxEnumeratedWorlds = 5;

/// A model of the frame class where every premise holds globally and the
/// conclusion fails at `world`.
struct CountermodelWitness {
  KripkeModel model;
  World world;

  friend bool operator==(const CountermodelWitness&, const CountermodelWitness&) = default;
};

/// Lazily yields every model within the budget whose relation satisfies the
/// frame class. Order: world count, then relation, then valuation. A
/// relation (or valuation) is read as a bit string, row-major over (i, j)
/// pairs (atom-major over (atom, world) for valuations), with the first pair
/// as the most significant bit; strings are visited in ascending order.
class ModelStream {
 public:
  ModelStream(EnumerationBudget budget, FrameClass frame);

  std::optional<KripkeModel> next();

 private:
  bool load_shape(std::size_t n);

  EnumerationBudget budget_;
  FrameClass frame_;
  std::size_t worlds_ = 0;
  std::vector<std::uint64_t> relations_;
  std::size_t relation_pos_ = 0;
  std::uint64_t valuation_ = 0;
  std::uint64_t valuation_count_ = 0;
};

std::vector<KripkeModel> enumerate_models(const EnumerationBudget& budget, const FrameClass& frame);

/// Relations on n worlds (as bit strings, see ModelStream) that satisfy
/// every condition of the frame class, in ascending order.
std::vector<std::uint64_t> frame_relations(std::size_t n, const FrameClass& frame);
AccessRelation relation_from_bits(std::size_t n, std::uint64_t bits);
Valuation valuation_from_bits(std::size_t n, const std::vector<AtomName>& atoms, std::uint64_t bits);

/// First witness in enumeration order, failing at its smallest world.
/// Returns nothing if the budget holds no witness, which does not make the
/// query valid. Runs relation shapes in parallel (OpenMP).
std::optional<CountermodelWitness> find_countermodel(const std::vector<Formula>& premises,
                                                     const Formula& conclusion, const FrameClass& frame,
                                                     const EnumerationBudget& budget);

/// Serial reference: walks ModelStream and checks each model with eval().
std::optional<CountermodelWitness> find_countermodel_serial(const std::vector<Formula>& premises,
                                                            const Formula& conclusion,
                                                            const FrameClass& frame,
                                                            const EnumerationBudget& budget);

/// Smallest witness: fewest worlds, then first relation and valuation in
/// enumeration order. Returns w unchanged when it is larger than the
/// enumerator can search.
CountermodelWitness minimize_countermodel(const CountermodelWitness& w,
                                          const std::vector<Formula>& premises, const Formula& conclusion,
                                          const FrameClass& frame);

/// Independent check through kripke semantics.
bool verify_witness(const CountermodelWitness& w, const std::vector<Formula>& premises,
                    const Formula& conclusion, const FrameClass& frame);

}  // namespace modalcheck
