#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace setmc {

struct SetDef {
  int id = 0;
  double cost = 1.0;
  std::vector<int> elements;  // sorted ascending, duplicate-free, in [0, n)

  bool operator==(const SetDef&) const = default;
};

// A weighted set family over the universe {0, ..., universe_size-1} together
// with the coverage factor k. Immutable after construction; safe to share
// across threads. The constructor validates all structural invariants and
// throws std::invalid_argument on violation.
class SetSystem {
 public:
  SetSystem(int universe_size, int k, std::vector<SetDef> sets);

  int universe_size() const { return universe_size_; }
  int k() const { return k_; }
  int num_sets() const { return static_cast<int>(sets_.size()); }
  const std::vector<SetDef>& sets() const { return sets_; }
  const SetDef& set(int id) const { return sets_[id]; }
  double cost(int id) const { return sets_[id].cost; }

  // Ids of the sets containing `element`, ascending. The paper-side S_i.
  std::span<const int> covering_sets(int element) const {
    return covering_[element];
  }

  bool unit_costs() const;

  bool operator==(const SetSystem& o) const {
    return universe_size_ == o.universe_size_ && k_ == o.k_ && sets_ == o.sets_;
  }

 private:
  int universe_size_ = 0;
  int k_ = 1;
  std::vector<SetDef> sets_;
  std::vector<std::vector<int>> covering_;  // element -> covering set ids
};

// The online presentation order.
struct Sequence {
  std::vector<int> elements;

  bool operator==(const Sequence&) const = default;
};

struct InstanceStats {
  int max_frequency = 0;  // m: max number of sets any element belongs to
  int max_set_size = 0;   // d: max |S| over the family
};

// Empty list means ok. Each entry names the offending element or set.
// Duplicated sequence elements are flagged unless allow_duplicates is set.
std::vector<std::string> validate(const SetSystem& system, const Sequence& seq,
                                  bool allow_duplicates = false);

// (m, d). Throws std::invalid_argument on an empty set family.
InstanceStats stats(const SetSystem& system);

struct UnitCosts {};
struct UniformCosts {
  double lo = 0.5;
  double hi = 2.0;
};
using CostModel = std::variant<UnitCosts, UniformCosts>;

struct Instance {
  SetSystem system;
  Sequence sequence;
};

// Random instance: each set contains each element independently with
// probability `density`; element membership rows are redrawn (at most 100
// times each) until every element lies in >= k sets; the sequence is a
// uniform permutation of the universe. Deterministic in `seed`.
// Throws std::runtime_error if coverage is infeasible.
Instance random_system(int universe_size, int num_sets, double density,
                       const CostModel& cost_model, int k, std::uint64_t seed);

// Instance interchange format (UTF-8 JSON):
//   {"universe_size": n, "k": k,
//    "sets": [{"id":0, "cost":1.0, "elements":[...]}, ...],
//    "sequence": [...]}
// write/read round-trip exactly; numbers keep full precision.
std::string write_instance(const SetSystem& system, const Sequence& seq);
Instance read_instance(std::string_view bytes);

}  // namespace setmc
