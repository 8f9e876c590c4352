#include <doctest.h>

#include "modalcheck/enumerator.hpp"
#include "support.hpp"

using namespace modalcheck;
using FC = FrameCondition;

namespace {

std::size_t stream_count(const EnumerationBudget& b, const FrameClass& f) {
  ModelStream s(b, f);
  std::size_t n = 0;
  while (s.next()) ++n;
  return n;
}

// Models per world count n with k atoms and no frame: 2^(n*n) * 2^(n*k).
std::size_t formula_count(std::size_t max_worlds, std::size_t k) {
  std::size_t total = 0;
  for (std::size_t n = 1; n <= max_worlds; ++n) total += (std::size_t{1} << (n * n)) << (n * k);
  return total;
}

const std::vector<Formula> kER = {parse("g -> []g"), parse("<>g")};

}  // namespace

TEST_CASE("enumerate_models counts") {
  CHECK(stream_count({1, {"g"}}, {}) == 4);
  CHECK(stream_count({1, {"g"}}, {FC::Reflexive}) == 2);
  CHECK(stream_count({2, {"g"}}, {}) == formula_count(2, 1));
  CHECK(formula_count(2, 1) == 68);
  CHECK(enumerate_models({2, {"g"}}, {}).size() == 68);
  CHECK(stream_count({3, {}}, {}) == formula_count(3, 0));
}

TEST_CASE("enumeration order: world count, relation bits, valuation bits") {
  const auto models = enumerate_models({2, {"g"}}, {});
  CHECK(models[0] == KripkeModel(1, {}, {{"g", {}}}));
  CHECK(models[1] == KripkeModel(1, {}, {{"g", {0}}}));
  CHECK(models[2] == KripkeModel(1, {{0, 0}}, {{"g", {}}}));
  // First 2-world model after the 4 one-world models: empty relation, g nowhere;
  // valuation bits run g@w0 (high) then g@w1 (low).
  CHECK(models[4] == KripkeModel(2, {}, {{"g", {}}}));
  CHECK(models[5] == KripkeModel(2, {}, {{"g", {1}}}));
  CHECK(models[6] == KripkeModel(2, {}, {{"g", {0}}}));
  // Relation bit order: (0,0) is the most significant pair.
  CHECK(relation_from_bits(2, 0b0001) == AccessRelation{{1, 1}});
  CHECK(relation_from_bits(2, 0b1000) == AccessRelation{{0, 0}});
  CHECK(relation_from_bits(2, 0b0101) == AccessRelation{{0, 1}, {1, 1}});
}

TEST_CASE("every streamed model satisfies the frame, checked independently") {
  const FrameClass f{FC::Reflexive, FC::Euclidean};
  ModelStream s({3, {"p"}}, f);
  std::size_t n = 0;
  while (auto m = s.next()) {
    CHECK(testsupport::naive_frame(*m, f));
    ++n;
  }
  // Equivalence relations: 1 on 1 world, 2 on 2, 5 on 3.
  CHECK(n == 1 * 2 + 2 * 4 + 5 * 8);
}

TEST_CASE("find_countermodel: Eder-Ramharter without symmetry") {
  auto w = find_countermodel(kER, parse("g"), {}, EnumerationBudget::for_query(kER, parse("g"), 2));
  REQUIRE(w);
  CHECK(w->model == KripkeModel(2, {{0, 1}, {1, 1}}, {{"g", {1}}}));
  CHECK(w->world == 0);
  CHECK(testsupport::naive_witness(w->model, w->world, kER, parse("g"), {}));
  CHECK(verify_witness(*w, kER, parse("g"), {}));
}

TEST_CASE("find_countermodel: none for valid queries") {
  for (std::size_t n = 1; n <= 3; ++n) {
    CHECK_FALSE(find_countermodel(kER, parse("g"), {FC::Symmetric}, EnumerationBudget::for_query(kER, parse("g"), n)));
  }
  CHECK_FALSE(find_countermodel({}, parse("g | ~g"), {}, {3, {"g"}}));
}

TEST_CASE("minimize_countermodel") {
  const Formula tb = parse("(p -> q) -> ([]~q -> []~p)");
  const FrameClass rst{FC::Reflexive, FC::Symmetric, FC::Transitive};
  // A 3-world witness: full relation, p only at world 2.
  AccessRelation full;
  for (World i = 0; i < 3; ++i)
    for (World j = 0; j < 3; ++j) full.insert(i, j);
  const CountermodelWitness big{KripkeModel(3, full, {{"p", {2}}, {"q", {}}}), 0};
  REQUIRE(testsupport::naive_witness(big.model, big.world, {}, tb, rst));

  const auto small = minimize_countermodel(big, {}, tb, rst);
  CHECK(small.model == KripkeModel(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {{"p", {1}}, {"q", {}}}));
  CHECK(small.world == 0);
  CHECK(testsupport::naive_witness(small.model, small.world, {}, tb, rst));
  CHECK(minimize_countermodel(small, {}, tb, rst) == small);
}

TEST_CASE("budget validation") {
  CHECK_THROWS_AS(ModelStream({0, {"g"}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(ModelStream({6, {"g"}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(find_countermodel({}, parse("g"), {}, {0, {"g"}}), std::invalid_argument);
  CHECK(EnumerationBudget::for_query(kER, parse("q & g")).atoms == std::vector<AtomName>{"g", "q"});
}

TEST_CASE("property: parallel kernel agrees with the serial reference") {
  testsupport::FormulaGen gen(101);
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    std::vector<Formula> premises;
    for (int k = gen.pick(3); k > 0; --k) premises.push_back(gen(2));
    const Formula c = gen(3);
    const FrameClass f = FrameClass::from_bits(static_cast<std::uint8_t>(rng() % 32));
    const auto budget = EnumerationBudget::for_query(premises, c, 3);
    const auto fast = find_countermodel(premises, c, f, budget);
    const auto slow = find_countermodel_serial(premises, c, f, budget);
    REQUIRE(fast.has_value() == slow.has_value());
    if (fast) {
      CHECK(*fast == *slow);
      CHECK(testsupport::naive_witness(fast->model, fast->world, premises, c, f));
    }
  }
}

TEST_CASE("property: deterministic witnesses") {
  testsupport::FormulaGen gen(202);
  for (int i = 0; i < 100; ++i) {
    const Formula c = gen(3);
    const auto budget = EnumerationBudget::for_query({}, c, 3);
    const auto a = find_countermodel({}, c, {}, budget);
    const auto b = find_countermodel({}, c, {}, budget);
    REQUIRE(a.has_value() == b.has_value());
    if (a) CHECK(to_json(a->model) == to_json(b->model));
  }
}
