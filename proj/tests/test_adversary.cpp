#include <algorithm>
#include <set>

#include "doctest.h"
#include "setmc/adversary.hpp"
#include "setmc/offline.hpp"
#include <stdexcept>
#include <cmath>
#include <initializer_list>

using namespace setmc;

namespace {

BaseInstance tiny_base() {
  // m' = 3, n' = 4; the presented elements all sit inside set 0
  return BaseInstance{
      SetSystem(4, 1, {{0, 1.0, {0, 1, 2}}, {1, 1.0, {1, 3}}, {2, 1.0, {2, 3}}}),
      Sequence{{0, 1, 2}}};
}

bool sets_pairwise_distinct(const SetSystem& system,
                            const std::vector<int>& ids) {
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      if (system.set(ids[i]).elements == system.set(ids[j]).elements)
        return false;
  return true;
}

}  // namespace

TEST_CASE("lift_osc_k: sizes, coverage, and structure") {
  const auto base = tiny_base();
  for (int k : {1, 2, 4}) {
    const auto lift = lift_osc_k(base, k);
    const int m_base = base.system.num_sets();
    const int n_base = base.system.universe_size();
    const int pad = static_cast<int>(std::ceil(std::log2(k + 1.0)));

    CHECK(lift.system.num_sets() == k + k * m_base);
    CHECK(lift.system.universe_size() == k * n_base + 1 + pad);
    CHECK(lift.system.universe_size() > k * n_base);
    CHECK(lift.system.k() == k);
    CHECK(validate(lift.system, lift.sequence).empty());
    CHECK(static_cast<int>(lift.padding_elements.size()) == pad);

    // x lies in exactly the k extra sets
    CHECK(static_cast<int>(lift.system.covering_sets(lift.element_x).size()) == k);
    for (int s : lift.system.covering_sets(lift.element_x))
      CHECK(std::find(lift.extra_set_ids.begin(), lift.extra_set_ids.end(), s) !=
            lift.extra_set_ids.end());

    // every base-copy element lies in exactly k-1 extra sets
    for (int e = 0; e < k * n_base; ++e) {
      int extra = 0;
      for (int s : lift.system.covering_sets(e)) extra += s < k;
      CHECK(extra == k - 1);
    }

    CHECK(sets_pairwise_distinct(lift.system, lift.extra_set_ids));

    // padding elements never presented
    for (int p : lift.padding_elements)
      CHECK(std::count(lift.sequence.elements.begin(),
                       lift.sequence.elements.end(), p) == 0);

    // x first, then the copies in order
    CHECK(lift.sequence.elements.front() == lift.element_x);
    CHECK(lift.sequence.elements.size() == 1 + k * base.sequence.elements.size());
  }
}

TEST_CASE("lift_osc_k: spec example sizes for k=2, m'=3, n'=4") {
  const auto lift = lift_osc_k(tiny_base(), 2);
  CHECK(lift.system.num_sets() == 8);       // 2 + 2*3
  CHECK(lift.system.universe_size() == 11);  // 8 + 1 + 2
}

TEST_CASE("lift_osc_k: k=1 gives one extra set containing only x") {
  const auto lift = lift_osc_k(tiny_base(), 1);
  REQUIRE(lift.extra_set_ids.size() == 1);
  CHECK(lift.system.set(lift.extra_set_ids[0]).elements ==
        std::vector<int>{lift.element_x});
  CHECK(lift.padding_elements.size() == 1);
}

TEST_CASE("lift_osc_k: optimum at most 2k when each copy has a one-set cover") {
  for (int k : {1, 2, 4}) {
    const auto lift = lift_osc_k(tiny_base(), k);
    const auto opt =
        exact_optimum(lift.system, lift.sequence.elements, lift.system.k());
    CHECK(opt.cost <= 2.0 * k);
    CHECK(lift.opt_hint_forced == 2.0 * k);
  }
}

TEST_CASE("lift_wosc_k: sizes, costs, and optimum") {
  const auto base = tiny_base();
  const double eps = 0.001;
  for (int k : {1, 3}) {
    const auto lift = lift_wosc_k(base, k, eps);
    CHECK(lift.system.num_sets() == k + base.system.num_sets());
    const int pad = static_cast<int>(std::ceil(std::log2(k + 1.0)));
    CHECK(lift.system.universe_size() == base.system.universe_size() + 1 + pad);
    CHECK(validate(lift.system, lift.sequence).empty());

    for (int s : lift.extra_set_ids) CHECK(lift.system.cost(s) == eps);
    for (int s = k; s < lift.system.num_sets(); ++s)
      CHECK(lift.system.cost(s) == 1.0);

    // presenting x forces all k cheap sets; the base needs one more set
    const auto opt =
        exact_optimum(lift.system, lift.sequence.elements, lift.system.k());
    CHECK(opt.cost == doctest::Approx(1.0 + k * eps));
    CHECK(lift.opt_hint_forced == doctest::Approx(1.0 + k * eps));
    CHECK(lift.opt_hint_prose == doctest::Approx(1.0 + eps));
  }

  // spec arithmetic: k=3, m'=5, n'=6 -> m=8, n=9
  const BaseInstance wide{
      SetSystem(6, 1,
                {{0, 1.0, {0, 1, 2, 3, 4, 5}},
                 {1, 1.0, {1}},
                 {2, 1.0, {2}},
                 {3, 1.0, {3}},
                 {4, 1.0, {4, 5}}}),
      Sequence{{0, 1, 2, 3, 4, 5}}};
  const auto lift = lift_wosc_k(wide, 3, eps);
  CHECK(lift.system.num_sets() == 8);
  CHECK(lift.system.universe_size() == 9);
}

TEST_CASE("lift rejects invalid bases") {
  const auto base = tiny_base();
  const BaseInstance bad_k{SetSystem(1, 2, {{0, 1.0, {0}}, {1, 1.0, {0}}}),
                           Sequence{{0}}};
  CHECK_THROWS_AS(lift_osc_k(bad_k, 2), std::invalid_argument);
  const BaseInstance uncovered{SetSystem(2, 1, {{0, 1.0, {0}}}), Sequence{{1}}};
  CHECK_THROWS_AS(lift_osc_k(uncovered, 1), std::invalid_argument);
  CHECK_THROWS_AS(lift_wosc_k(base, 2, 0.0), std::invalid_argument);
}

TEST_CASE("binary_tree_base: root-to-leaf path sets over tree nodes") {
  const auto base = binary_tree_base(2, 1);
  CHECK(base.system.num_sets() == 4);       // leaves
  CHECK(base.system.universe_size() == 7);  // nodes
  CHECK(base.system.k() == 1);
  CHECK(validate(base.system, base.sequence).empty());
  CHECK(base.sequence.elements.front() == 0);  // root presented first
  CHECK(base.sequence.elements.size() == 3);   // depth + 1 nodes on the path

  // the presented path is covered by a single set
  const auto opt = exact_optimum(base.system, base.sequence.elements, 1);
  CHECK(opt.cost == 1.0);

  CHECK_THROWS_AS(binary_tree_base(0), std::invalid_argument);
  CHECK_THROWS_AS(binary_tree_base(2, 4), std::invalid_argument);
}

TEST_CASE("adaptive_stress: emission rule and termination") {
  const SetSystem system(3, 1,
                         {{0, 1.0, {0, 1}}, {1, 1.0, {1, 2}}, {2, 1.0, {2}}});

  struct ScriptedProbe : OnlineProbe {
    std::vector<char> sel;
    std::vector<int> presented;
    explicit ScriptedProbe(int num_sets) : sel(num_sets, 0) {}
    void present(int element) override { presented.push_back(element); }
    const std::vector<char>& selected() const override { return sel; }
  };

  // nothing selected: emits the smallest-id element with >= k covering sets
  ScriptedProbe idle(3);
  const auto first = adaptive_stress(system, 1, idle, 1);
  REQUIRE(first.elements.size() == 1);
  CHECK(first.elements[0] == 0);

  // everything selected: nothing can raise a deficit
  ScriptedProbe sated(3);
  sated.sel.assign(3, 1);
  CHECK(adaptive_stress(system, 1, sated, 10).elements.empty());

  // live engine probe on the two-set toy: one emission, then stop
  const SetSystem toy(1, 1, {{0, 1.0, {0}}, {1, 1.0, {0}}});
  EngineProbe probe(toy, Variant::Universal, 3);
  const auto emitted = adaptive_stress(toy, 1, probe, 10);
  CHECK(emitted.elements == std::vector<int>{0});
  int cover = 0;
  for (int s : toy.covering_sets(0)) cover += probe.selected()[s];
  CHECK(cover >= 1);
}

TEST_CASE("adaptive_stress drives the toy to its expected stressed cost") {
  const SetSystem toy(1, 1, {{0, 1.0, {0}}, {1, 1.0, {0}}});
  double total = 0.0;
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) {
    EngineProbe probe(toy, Variant::Universal, t);
    adaptive_stress(toy, 1, probe, 10);
    total += probe.state().total_cost;
  }
  CHECK(total / trials == doctest::Approx(1.25).epsilon(0.03));
}
