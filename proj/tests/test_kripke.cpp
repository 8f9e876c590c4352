#include <doctest.h>

#include "modalcheck/enumerator.hpp"
#include "modalcheck/kripke.hpp"
#include "support.hpp"

using namespace modalcheck;
using FC = FrameCondition;

namespace {

KripkeModel one_world_g() { return KripkeModel(1, {}, {{"g", {0}}}); }
KripkeModel er_witness() { return KripkeModel(2, {{0, 1}, {1, 1}}, {{"g", {1}}}); }

}  // namespace

TEST_CASE("eval on small models") {
  const auto m1 = one_world_g();
  CHECK(eval(m1, 0, parse("[]g")));
  CHECK_FALSE(eval(m1, 0, parse("<>g")));

  const auto m2 = er_witness();
  CHECK(eval(m2, 0, parse("<>g")));
  CHECK_FALSE(eval(m2, 0, parse("g")));
  // Cross-check against the test-side semantics.
  for (World w = 0; w < 2; ++w) {
    for (const char* f : {"<>g", "g", "[]g", "g -> []g", "g |> []g", "<>g <-> ~[]~g"}) {
      CHECK(eval(m2, w, parse(f)) == testsupport::naive_eval(m2, w, parse(f)));
    }
  }
  CHECK_THROWS_AS(eval(m2, 2, parse("g")), InvalidWorld);
  CHECK_FALSE(eval(m2, 1, parse("missing")));
}

TEST_CASE("holds_globally") {
  const auto m2 = er_witness();
  CHECK(holds_globally(m2, parse("g | ~g")));
  CHECK(holds_globally(one_world_g(), parse("g | ~g")));
  CHECK_FALSE(holds_globally(m2, parse("g")));
  CHECK(holds_globally(m2, parse("g -> []g")));
  CHECK(testsupport::naive_global(m2, parse("g -> []g")));
}

TEST_CASE("frame_satisfies") {
  const auto m2 = er_witness();
  CHECK(frame_satisfies(m2, FC::Euclidean));
  CHECK_FALSE(frame_satisfies(m2, FC::Symmetric));

  const KripkeModel full(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {});
  for (auto c : kAllConditions) CHECK(frame_satisfies(full, c));

  const KripkeModel empty(1, {}, {});
  CHECK_FALSE(frame_satisfies(empty, FC::Serial));
  CHECK(frame_satisfies(empty, FC::Symmetric));
}

TEST_CASE("frame_closure") {
  CHECK(frame_closure(2, {{0, 1}}, {FC::Symmetric}) == AccessRelation{{0, 1}, {1, 0}});
  CHECK(frame_closure(2, {{0, 1}}, {FC::Reflexive}) == AccessRelation{{0, 1}, {0, 0}, {1, 1}});
  const auto e = frame_closure(3, {{0, 1}, {0, 2}}, {FC::Euclidean});
  CHECK(e == AccessRelation{{0, 1}, {0, 2}, {1, 2}, {2, 1}, {1, 1}, {2, 2}});
  CHECK(frame_satisfies(3, e, FC::Euclidean));
  CHECK_THROWS_AS(frame_closure(2, {}, {FC::Serial}), SerialNotClosable);
}

TEST_CASE("model construction rejects bad worlds") {
  CHECK_THROWS_AS(KripkeModel(0, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(KripkeModel(1, {{0, 1}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(KripkeModel(1, {}, {{"g", {3}}}), std::invalid_argument);
}

TEST_CASE("model JSON is sorted and round-trips") {
  const KripkeModel m(2, {{1, 1}, {0, 1}}, {{"g", {1}}, {"a", {}}});
  CHECK(to_json(m) == R"({"worlds":2,"access":[[0,1],[1,1]],"valuation":{"a":[],"g":[1]}})");
  CHECK(model_from_json(to_json(m)) == m);
  CHECK_THROWS(model_from_json("{\"worlds\":1}"));
}

TEST_CASE("logic aliases") {
  CHECK(frame_of(Logic::K) == FrameClass{});
  CHECK(frame_of(Logic::T) == FrameClass{FC::Reflexive});
  CHECK(frame_of(Logic::D) == FrameClass{FC::Serial});
  CHECK(frame_of(Logic::B) == FrameClass{FC::Reflexive, FC::Symmetric});
  CHECK(frame_of(Logic::S4) == FrameClass{FC::Reflexive, FC::Transitive});
  CHECK(frame_of(Logic::S5) == FrameClass{FC::Reflexive, FC::Euclidean});
  CHECK(logic_from_string("B4") == Logic::B);
  CHECK_FALSE(logic_from_string("S6"));
  CHECK(to_string(FrameClass{FC::Euclidean, FC::Reflexive}) == "{reflexive, euclidean}");
}

TEST_CASE("property: duality on models up to 3 worlds") {
  testsupport::FormulaGen gen(3);
  gen.sugar = false;
  std::mt19937 rng(17);
  for (int i = 0; i < 300; ++i) {
    const Formula f = gen(3);
    const auto m = testsupport::random_model(rng, 3, {"p", "q"});
    for (World w = 0; w < m.world_count(); ++w) {
      CHECK(eval(m, w, Formula::diamond(f)) == eval(m, w, Formula::neg(Formula::box(Formula::neg(f)))));
    }
  }
}

TEST_CASE("property: axiom K holds in every model up to 3 worlds") {
  const Formula k = parse("[](p -> q) -> ([]p -> []q)");
  ModelStream s(EnumerationBudget{3, {"p", "q"}}, {});
  std::size_t count = 0;
  bool ok = true;
  while (auto m = s.next()) {
    ok = ok && holds_globally(*m, k);
    ++count;
  }
  CHECK(ok);
  CHECK(count == 2 * 4 + 16 * 16 + 512 * 64);
}

TEST_CASE("property: model-level correspondence on all frames up to 3 worlds") {
  const std::pair<FC, const char*> axioms[] = {
      {FC::Reflexive, "[]p -> p"},   {FC::Symmetric, "p -> []<>p"},  {FC::Transitive, "[]p -> [][]p"},
      {FC::Euclidean, "<>p -> []<>p"}, {FC::Serial, "[]p -> <>p"},
  };
  for (const auto& [c, text] : axioms) {
    const Formula ax = parse(text);
    ModelStream s(EnumerationBudget{3, {"p"}}, {});
    bool ok = true;
    while (auto m = s.next()) {
      if (frame_satisfies(*m, c)) ok = ok && holds_globally(*m, ax);
      CHECK(frame_satisfies(*m, c) == testsupport::naive_frame(*m, c));
    }
    CHECK_MESSAGE(ok, text);
  }
}

TEST_CASE("property: closure is idempotent, satisfies, and is least") {
  std::mt19937 rng(29);
  const FrameClass classes[] = {{FC::Reflexive}, {FC::Symmetric}, {FC::Transitive}, {FC::Euclidean},
                                {FC::Reflexive, FC::Euclidean}, {FC::Symmetric, FC::Transitive}};
  for (int i = 0; i < 300; ++i) {
    const auto m = testsupport::random_model(rng, 4, {});
    const std::size_t n = m.world_count();
    for (const auto& cs : classes) {
      const auto c = frame_closure(n, m.access(), cs);
      CHECK(frame_closure(n, c, cs) == c);
      for (auto cond : cs.conditions()) CHECK(frame_satisfies(n, c, cond));
      for (const auto& pr : m.access().pairs()) CHECK(c.contains(pr.first, pr.second));
      // Least: every closed superset on 2 worlds contains it.
      if (n <= 2) {
        for (std::uint64_t bits = 0; bits < (1u << (n * n)); ++bits) {
          const auto r = relation_from_bits(n, bits);
          bool super = true, closed = true;
          for (const auto& pr : m.access().pairs()) super = super && r.contains(pr.first, pr.second);
          for (auto cond : cs.conditions()) closed = closed && frame_satisfies(n, r, cond);
          if (!super || !closed) continue;
          for (const auto& pr : c.pairs()) CHECK(r.contains(pr.first, pr.second));
        }
      }
    }
  }
}
