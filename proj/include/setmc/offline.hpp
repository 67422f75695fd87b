#pragma once

#include <vector>

#include "setmc/instance.hpp"

namespace setmc {

struct Cover {
  std::vector<int> set_ids;  // sorted ascending
  double cost = 0.0;
};

// Minimum-cost k-multicover of `presented` by branch and bound, exact.
// Ties broken toward the lexicographically smallest sorted id vector.
// Throws std::runtime_error if the family exceeds 30 sets (search budget) or
// coverage is infeasible.
Cover exact_optimum(const SetSystem& system, const std::vector<int>& presented,
                    int k);

// Classic multicover greedy: repeatedly take the set covering the most
// still-deficient elements (ties: cheaper cost, then smaller id). For unit
// costs this is (1 + ln d)-approximate. Throws on infeasibility.
Cover greedy_multicover(const SetSystem& system,
                        const std::vector<int>& presented, int k);

// kappa = min over presented i and S in (covering(i) ∩ optimum) of
//   cost(covering(i) ∩ optimum) / cost(S).
// Equals 1 for unit-cost k=1 instances, k for unit-cost coverage-k instances,
// and lies in [1, k] in general. Throws std::invalid_argument if some
// presented element has no covering set inside `optimum`.
double kappa(const SetSystem& system, const Cover& optimum,
             const Sequence& seq);

}  // namespace setmc
