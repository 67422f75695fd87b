#pragma once

#include <cstdint>
#include <vector>

#include "setmc/engine.hpp"
#include "setmc/instance.hpp"

namespace setmc {

// A coverage-1 instance used as the inner building block of the lift
// constructions. Must pass validate() with k = 1.
struct BaseInstance {
  SetSystem system;
  Sequence sequence;
};

// A lifted instance: a forced element x contained in exactly k extra sets,
// renamed base copies whose elements each lie in exactly k-1 of the extra
// sets, and never-presented padding elements that keep the extra sets
// pairwise distinct. The opt hints are reference costs assuming every base
// copy admits a single-set optimum; tests use the exact solver instead.
struct LiftedInstance {
  SetSystem system;
  Sequence sequence;
  std::vector<int> extra_set_ids;
  int element_x = 0;
  std::vector<int> padding_elements;
  double epsilon = 0.0;            // extra-set cost (1 for the unit-cost lift)
  double opt_hint_forced = 0.0;    // cost of the k extra sets + one base set per copy
  double opt_hint_prose = 0.0;     // the figure stated in the source analysis
};

// Unit-cost lift: k renamed copies of the base plus k unit-cost extra sets.
// Output sizes: m = k + k*m', n = k*n' + 1 + ceil(log2(k+1)).
// Sequence: x first, then the base copies' sequences in copy order.
LiftedInstance lift_osc_k(const BaseInstance& base, int k);

// Weighted lift: one base copy with all base costs reset to 1, plus k extra
// sets of cost epsilon. Output sizes: m = k + m', n = n' + 1 + ceil(log2(k+1)).
LiftedInstance lift_wosc_k(const BaseInstance& base, int k, double epsilon);

// Handle onto a running online algorithm: feed one element, observe what it
// has selected so far. One stress session owns one probe.
class OnlineProbe {
 public:
  virtual ~OnlineProbe() = default;
  virtual void present(int element) = 0;
  virtual const std::vector<char>& selected() const = 0;  // by set id
};

// Probe over a live engine run.
class EngineProbe : public OnlineProbe {
 public:
  EngineProbe(const SetSystem& system, Variant variant, std::uint64_t seed)
      : system_(system), variant_(variant), state_(make_state(system, seed)) {}

  void present(int element) override {
    process_element(system_, state_, element, variant_);
  }
  const std::vector<char>& selected() const override {
    return state_.selected;
  }
  const OnlineState& state() const { return state_; }

 private:
  const SetSystem& system_;
  Variant variant_;
  OnlineState state_;
};

// Greedy adaptive adversary: repeatedly present the element (with >= k
// covering sets) whose covering sets contain the fewest already-selected
// ones, ties toward the smallest element id. Stops when every candidate is
// already covered k times or after `rounds` emissions. Stress-tests realized
// random choices; certifies nothing.
Sequence adaptive_stress(const SetSystem& system, int k, OnlineProbe& probe,
                         int rounds);

// Stand-in base family: sets are the root-to-leaf paths of a complete binary
// tree of the given depth (unit cost), elements are the tree nodes, and the
// presented sequence walks the root-to-leaf path of `presented_leaf`. The
// path set of that leaf covers the whole sequence, so the offline optimum is
// a single set.
BaseInstance binary_tree_base(int depth, int presented_leaf = 0);

}  // namespace setmc
