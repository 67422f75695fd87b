#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "setmc/engine.hpp"
#include "setmc/instance.hpp"
#include <stdexcept>

using namespace setmc;

namespace {

// Single element contained in two unit-cost sets, k = 1. The classic
// enumeration: both coins hit (prob 1/4, cost 2), exactly one hits
// (prob 1/2, cost 1), neither hits and greedy pays 1 (prob 1/4).
SetSystem toy_two_sets() {
  return SetSystem(1, 1, {{0, 1.0, {0}}, {1, 1.0, {0}}});
}

double toy_expected_cost() {
  double expected = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const double pr = 0.25;
      const int selected = a + b;
      expected += pr * (selected == 0 ? 1.0 : selected);
    }
  return expected;  // 1.25
}

double total_selected_cost(const SetSystem& system, const OnlineState& st) {
  double c = 0.0;
  for (int s = 0; s < system.num_sets(); ++s)
    if (st.selected[s]) c += system.cost(s);
  return c;
}

}  // namespace

TEST_CASE("stat: j-th least cost under (cost, id) order") {
  using P = std::pair<int, double>;
  const std::vector<P> a{{0, 3.0}, {1, 1.0}, {2, 2.0}};
  CHECK(stat(a, 2) == 2.0);
  const std::vector<P> b{{0, 1.0}, {1, 1.0}, {2, 2.0}};
  CHECK(stat(b, 2) == 1.0);
  const std::vector<P> c{{0, 5.0}};
  CHECK(stat(c, 1) == 5.0);
  CHECK_THROWS_AS(stat(c, 2), std::invalid_argument);
  CHECK_THROWS_AS(stat(c, 0), std::invalid_argument);
}

TEST_CASE("process_element: first element splits probability evenly") {
  const auto system = toy_two_sets();
  auto state = make_state(system, 3);
  const auto rec = process_element(system, state, 0, Variant::Universal);
  CHECK(rec.deficit_before == 1);
  CHECK(rec.mu == 1.0);
  REQUIRE(rec.per_set.size() == 2);
  CHECK(rec.per_set[0].set_id == 0);
  CHECK(rec.per_set[0].p_computed == 0.5);
  CHECK(rec.per_set[1].p_computed == 0.5);
  CHECK(state.cover_count[0] >= 1);
}

TEST_CASE("process_element: covered element exits early with no state change") {
  const auto system = toy_two_sets();
  auto state = make_state(system, 3);
  process_element(system, state, 0, Variant::Universal);
  const auto before = state;
  const auto rec = process_element(system, state, 0, Variant::Universal);
  CHECK(rec.deficit_before <= 0);
  CHECK(rec.per_set.empty());
  CHECK(rec.greedy_selected.empty());
  CHECK(state.selected == before.selected);
  CHECK(state.alpha_p == before.alpha_p);
  CHECK(state.rng == before.rng);
  CHECK(state.total_cost == before.total_cost);
}

TEST_CASE("process_element: accumulated probability past 1 forces selection") {
  const auto system = toy_two_sets();
  auto state = make_state(system, 5);
  state.alpha_p[0] = 2.0;
  state.alpha_p[1] = 2.0;
  const auto rec = process_element(system, state, 0, Variant::Universal);
  REQUIRE(rec.per_set.size() == 2);
  for (const auto& sp : rec.per_set) {
    CHECK(sp.p_computed == 2.5);  // (1/1) * (2.0 + 1/2)
    CHECK(sp.p_used == 1.0);
    CHECK(sp.selected_randomly);
  }
  CHECK(state.alpha_p[0] == 4.5);  // raw accumulation, no cap
  CHECK(state.alpha_p[1] == 4.5);
}

TEST_CASE("toy instance: enumeration expectation matched by Monte Carlo") {
  const auto system = toy_two_sets();
  const Sequence seq{{0}};
  const double expected = toy_expected_cost();
  CHECK(expected == 1.25);

  const int trials = 100000;
  double total = 0.0;
  int cost2 = 0;
  for (int t = 0; t < trials; ++t) {
    const auto result = run(system, seq, Variant::Universal, t);
    CHECK((result.total_cost == 1.0 || result.total_cost == 2.0));
    total += result.total_cost;
    cost2 += result.total_cost == 2.0;
  }
  CHECK(total / trials == doctest::Approx(expected).epsilon(0.016));
  CHECK(static_cast<double>(cost2) / trials == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("run: empty sequence runs and costs nothing") {
  const auto system = toy_two_sets();
  const auto result = run(system, Sequence{{}}, Variant::Universal, 1);
  CHECK(result.total_cost == 0.0);
  CHECK(result.trace.empty());
}

TEST_CASE("run: k equal to the covering count selects everything") {
  const SetSystem system(3, 2,
                         {{0, 1.5, {0, 1}}, {1, 2.0, {0, 1}}, {2, 0.5, {1, 2}}, {3, 3.0, {2}}});
  // presented 0 and 2 each lie in exactly two sets
  const auto result = run(system, Sequence{{0, 2}}, Variant::Universal, 11);
  CHECK(result.total_cost == 1.5 + 2.0 + 0.5 + 3.0);
}

TEST_CASE("run: validation failures propagate") {
  CHECK_THROWS_AS(run(toy_two_sets(), Sequence{{0, 0}}, Variant::Universal, 1),
                  std::invalid_argument);
  CHECK_NOTHROW(run(toy_two_sets(), Sequence{{0, 0}}, Variant::Universal, 1,
                    /*allow_duplicates=*/true));
  const SetSystem weighted(1, 1, {{0, 2.0, {0}}});
  CHECK_THROWS_AS(run(weighted, Sequence{{0}}, Variant::UnweightedK, 1),
                  std::invalid_argument);
}

TEST_CASE("unweighted-k: capped probabilities and capped accumulation") {
  // One element in four unit sets, k = 3: deficit * 1/|S_i| = 3/4.
  const SetSystem system(1, 3, {{0, 1.0, {0}}, {1, 1.0, {0}}, {2, 1.0, {0}}, {3, 1.0, {0}}});
  auto state = make_state(system, 2);
  state.alpha_p[0] = 0.5;  // 0.5 + 0.75 > 1: capped
  const auto rec = process_element(system, state, 0, Variant::UnweightedK);
  CHECK(rec.mu == 1.0);
  REQUIRE(rec.per_set.size() == 4);
  CHECK(rec.per_set[0].p_computed == 1.0);
  CHECK(rec.per_set[1].p_computed == 0.75);
  CHECK(state.alpha_p[0] == 1.5);  // accumulated the capped value
  CHECK(state.alpha_p[1] == 0.75);
  CHECK(rec.per_set[0].selected_randomly);  // p_used = 1
  CHECK(state.cover_count[0] >= 3);
}

TEST_CASE("coverage and determinism over random instances, both variants") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int k = 1 + static_cast<int>(seed % 3);
    const bool unit = seed % 2 == 0;
    const CostModel cm = unit ? CostModel{UnitCosts{}}
                              : CostModel{UniformCosts{0.2, 3.0}};
    const auto inst = random_system(10 + seed % 15, 4 + seed % 8, 0.45, cm, k, seed);
    const Variant variant =
        unit && seed % 4 == 0 ? Variant::UnweightedK : Variant::Universal;

    const auto r1 = run(inst.system, inst.sequence, variant, seed * 31 + 7);
    const auto r2 = run(inst.system, inst.sequence, variant, seed * 31 + 7);
    CHECK(trace_to_jsonl(r1.trace) == trace_to_jsonl(r2.trace));

    for (int e : inst.sequence.elements) {
      int cover = 0;
      for (int s : inst.system.covering_sets(e)) cover += r1.final_state.selected[s];
      CHECK(cover >= k);
    }
    CHECK(r1.total_cost == total_selected_cost(inst.system, r1.final_state));
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("alpha_p is non-decreasing and the selection only grows") {
  const auto inst = random_system(18, 9, 0.4, UniformCosts{0.5, 2.5}, 2, 5);
  auto state = make_state(inst.system, 77);
  auto prev_alpha = state.alpha_p;
  auto prev_selected = state.selected;
  for (int e : inst.sequence.elements) {
    process_element(inst.system, state, e, Variant::Universal);
    for (int s = 0; s < inst.system.num_sets(); ++s) {
      CHECK(state.alpha_p[s] >= prev_alpha[s]);
      CHECK(state.selected[s] >= prev_selected[s]);
    }
    prev_alpha = state.alpha_p;
    prev_selected = state.selected;
  }
  CHECK(state.total_cost == total_selected_cost(inst.system, state));
}

TEST_CASE("unit costs, k=1: probabilities match the simplified update") {
  const auto inst = random_system(16, 6, 0.5, UnitCosts{}, 1, 21);
  const auto result = run(inst.system, inst.sequence, Variant::Universal, 4);
  std::vector<double> alpha(inst.system.num_sets(), 0.0);
  for (const auto& rec : result.trace) {
    const double inv = 1.0 / static_cast<double>(
                                 inst.system.covering_sets(rec.element).size());
    for (const auto& sp : rec.per_set) {
      CHECK(sp.p_computed == alpha[sp.set_id] + inv);
      alpha[sp.set_id] += sp.p_computed;
    }
  }
}

TEST_CASE("greedy completions take the cheapest remaining covering set") {
  const auto inst = random_system(14, 8, 0.5, UniformCosts{0.1, 4.0}, 3, 8);
  const auto result = run(inst.system, inst.sequence, Variant::Universal, 9);
  std::vector<char> selected(inst.system.num_sets(), 0);
  for (const auto& rec : result.trace) {
    for (const auto& sp : rec.per_set)
      if (sp.selected_randomly) selected[sp.set_id] = 1;
    for (int g : rec.greedy_selected) {
      int best = -1;
      for (int s : inst.system.covering_sets(rec.element)) {
        if (selected[s]) continue;
        if (best < 0 || inst.system.cost(s) < inst.system.cost(best)) best = s;
      }
      CHECK(g == best);
      selected[g] = 1;
    }
  }
}

TEST_CASE("diagnostics: potentials and reference-relative quantities") {
  // Single element in one unit set: m = 1, first step drives alpha_p to 1.
  const SetSystem tiny(1, 1, {{0, 1.0, {0}}});
  const auto result = run(tiny, Sequence{{0}}, Variant::Universal, 1);
  const auto diag = diagnostics(result, tiny, {0});
  REQUIRE(diag.lambda_history.size() == 2);
  CHECK(diag.lambda_history[0][0] == 0.0);               // log2(1) before any step
  CHECK(diag.lambda_history[1][0] == doctest::Approx(1.0));  // alpha_p = 1/m
  CHECK(diag.xi[0] == 0.0);  // covering set inside the reference solution
  CHECK(diag.alpha[0] == 0);

  // Toy with both sets: reference solution {0} leaves set 1 outside.
  const auto system = toy_two_sets();
  const auto r = run(system, Sequence{{0}}, Variant::Universal, 1);
  const auto d = diagnostics(r, system, {0});
  CHECK(d.xi[0] == 0.0);  // alpha_p was still zero on arrival
  const auto d_all = diagnostics(r, system, {0, 1});
  CHECK(d_all.xi[0] == 0.0);

  CHECK_THROWS_AS(diagnostics(r, system, {}), std::invalid_argument);
}

TEST_CASE("trace: jsonl round trip") {
  const auto inst = random_system(12, 6, 0.5, UniformCosts{0.5, 2.0}, 2, 3);
  const auto result = run(inst.system, inst.sequence, Variant::Universal, 13);
  const auto text = trace_to_jsonl(result.trace);
  const auto parsed = trace_from_jsonl(text);
  CHECK(parsed == result.trace);
  CHECK_THROWS_AS(trace_from_jsonl("{bad json"), std::runtime_error);
}
