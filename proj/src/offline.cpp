#include "setmc/offline.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace setmc {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void check_feasible(const SetSystem& system, const std::vector<int>& presented,
                    int k) {
  for (int e : presented) {
    if (e < 0 || e >= system.universe_size())
      throw std::runtime_error("offline: presented element " +
                               std::to_string(e) + " outside universe");
    if (static_cast<int>(system.covering_sets(e).size()) < k)
      throw std::runtime_error("offline: element " + std::to_string(e) +
                               " has fewer than " + std::to_string(k) +
                               " covering sets");
  }
}

struct BnB {
  const SetSystem& system;
  const std::vector<int>& presented;  // sorted unique
  int k;
  int d;  // max set size, for the admissible lower bound

  std::vector<int> deficit;      // by element id; <=0 means satisfied
  std::vector<int> chosen;       // current partial solution (ascending ids)
  double chosen_cost = 0.0;

  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<int> best_ids;
  bool found = false;

  // Sum over deficient elements of their deficit's cheapest undecided
  // covering costs, divided by d. Any completion pays at least this much,
  // since a set's cost serves at most d elements. Returns +inf if some
  // element can no longer be covered from sets with id >= next_id.
  double lower_bound(int next_id) const {
    double total = 0.0;
    std::vector<double> costs;
    for (int e : presented) {
      if (deficit[e] <= 0) continue;
      costs.clear();
      for (int s : system.covering_sets(e))
        if (s >= next_id) costs.push_back(system.cost(s));
      if (static_cast<int>(costs.size()) < deficit[e])
        return std::numeric_limits<double>::infinity();
      std::nth_element(costs.begin(), costs.begin() + (deficit[e] - 1),
                       costs.end());
      for (int i = 0; i < deficit[e]; ++i) total += costs[i];
    }
    return total / d;
  }

  bool satisfied() const {
    for (int e : presented)
      if (deficit[e] > 0) return false;
    return true;
  }

  void offer_candidate() {
    if (chosen_cost < best_cost ||
        (chosen_cost == best_cost &&
         (!found || std::lexicographical_compare(chosen.begin(), chosen.end(),
                                                 best_ids.begin(),
                                                 best_ids.end())))) {
      best_cost = chosen_cost;
      best_ids = chosen;
      found = true;
    }
  }

  void search(int next_id) {
    if (satisfied()) {
      offer_candidate();
      return;
    }
    if (next_id >= system.num_sets()) return;
    const double lb = lower_bound(next_id);
    if (chosen_cost + lb > best_cost + 1e-12) return;

    // Include next_id first so equal-cost solutions arrive in roughly
    // lexicographic order; skip the branch if the set helps no one (a
    // strictly positive cost for no progress can never be optimal).
    bool useful = false;
    for (int e : system.set(next_id).elements)
      if (deficit[e] > 0) {
        useful = true;
        break;
      }
    if (useful) {
      chosen.push_back(next_id);
      chosen_cost += system.cost(next_id);
      for (int e : system.set(next_id).elements) --deficit[e];
      search(next_id + 1);
      for (int e : system.set(next_id).elements) ++deficit[e];
      chosen_cost -= system.cost(next_id);
      chosen.pop_back();
    }
    search(next_id + 1);
  }
};

}  // namespace

Cover exact_optimum(const SetSystem& system, const std::vector<int>& presented,
                    int k) {
  if (system.num_sets() > 30)
    throw std::runtime_error("exact_optimum: more than 30 sets exceeds the search budget");
  const auto elems = sorted_unique(presented);
  if (elems.empty()) return Cover{{}, 0.0};
  check_feasible(system, elems, k);

  BnB bnb{system, elems, k, stats(system).max_set_size, {}, {}};
  bnb.deficit.assign(system.universe_size(), 0);
  for (int e : elems) bnb.deficit[e] = k;

  // Seed the incumbent with the greedy cover so pruning bites early.
  const Cover greedy = greedy_multicover(system, elems, k);
  bnb.best_cost = greedy.cost;
  bnb.best_ids = greedy.set_ids;
  bnb.found = true;

  bnb.search(0);
  return Cover{bnb.best_ids, bnb.best_cost};
}

Cover greedy_multicover(const SetSystem& system,
                        const std::vector<int>& presented, int k) {
  const auto elems = sorted_unique(presented);
  check_feasible(system, elems, k);

  std::vector<int> deficit(system.universe_size(), 0);
  int remaining = 0;
  for (int e : elems) {
    deficit[e] = k;
    remaining += k;
  }

  std::vector<char> selected(system.num_sets(), 0);
  Cover cover;
  while (remaining > 0) {
    int best = -1, best_gain = 0;
    for (int s = 0; s < system.num_sets(); ++s) {
      if (selected[s]) continue;
      int gain = 0;
      for (int e : system.set(s).elements) gain += deficit[e] > 0;
      if (gain == 0) continue;
      if (best < 0 || gain > best_gain ||
          (gain == best_gain && system.cost(s) < system.cost(best))) {
        best = s;
        best_gain = gain;
      }
    }
    if (best < 0)
      throw std::runtime_error("greedy_multicover: coverage infeasible");
    selected[best] = 1;
    cover.set_ids.push_back(best);
    cover.cost += system.cost(best);
    for (int e : system.set(best).elements)
      if (deficit[e]-- > 0) --remaining;
  }
  std::sort(cover.set_ids.begin(), cover.set_ids.end());
  return cover;
}

double kappa(const SetSystem& system, const Cover& optimum,
             const Sequence& seq) {
  std::vector<char> in_opt(system.num_sets(), 0);
  for (int s : optimum.set_ids) in_opt[s] = 1;

  double result = std::numeric_limits<double>::infinity();
  for (int e : sorted_unique(seq.elements)) {
    double inter_cost = 0.0;
    double max_single = 0.0;
    bool any = false;
    for (int s : system.covering_sets(e)) {
      if (!in_opt[s]) continue;
      any = true;
      inter_cost += system.cost(s);
      max_single = std::max(max_single, system.cost(s));
    }
    if (!any)
      throw std::invalid_argument("kappa: element " + std::to_string(e) +
                                  " has no covering set in the optimum");
    // The minimum ratio for this element uses its costliest optimal set.
    result = std::min(result, inter_cost / max_single);
  }
  return result;
}

}  // namespace setmc
