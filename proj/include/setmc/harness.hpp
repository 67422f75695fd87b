#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "setmc/engine.hpp"
#include "setmc/instance.hpp"

namespace setmc {

// Aggregate over independent randomized runs on one instance. std_err is the
// standard error of the empirical ratio: (sample stddev of per-trial cost /
// opt_cost) / sqrt(trials); zero when trials == 1.
struct TrialSummary {
  int trials = 0;
  double mean_cost = 0.0;
  double opt_cost = 0.0;
  double empirical_ratio = 0.0;
  double std_err = 0.0;
  std::uint64_t seed = 0;
};

// Runs `trials` independent engine runs; trial t uses seed
// splitmix64_once(master_seed ^ t). The optimum comes from the exact offline
// solver over the presented elements. Trials are independent work units;
// aggregation is in trial-index order.
TrialSummary empirical_ratio(const SetSystem& system, const Sequence& seq,
                             Variant variant, int trials,
                             std::uint64_t master_seed);

enum class Verdict { Pass, Fail };

// One-sided check of a measured mean against an upper bound on the
// expectation: PASS iff empirical_ratio - 3*std_err <= bound.
Verdict compare_to_bounds(const TrialSummary& summary, double bound);
Verdict compare_to_bounds(const TrialSummary& summary,
                          std::span<const double> bounds);

struct SweepConfig {
  std::vector<int> universe_sizes;
  std::vector<int> num_sets;
  std::vector<double> densities;
  std::vector<int> ks;
  std::vector<Variant> variants;
  std::vector<std::uint64_t> seeds;
  int trials = 100;
  CostModel cost_model = UnitCosts{};
};

// JSON config: {"universe_sizes":[...], "num_sets":[...], "densities":[...],
// "ks":[...], "variants":["universal","unweighted-k"], "seeds":[...],
// "trials":N, "cost_model":{"kind":"unit"} or
// {"kind":"uniform","lo":..,"hi":..}}. Scalars are accepted where arrays are
// expected.
SweepConfig parse_sweep_config(std::string_view json_text);

struct SweepRow {
  int m = 0;
  int d = 0;
  int k = 0;
  Variant variant = Variant::Universal;
  std::optional<double> kappa;
  std::optional<double> empirical_ratio;
  std::optional<double> std_err;
  std::optional<double> theorem1;
  std::optional<double> theorem7;
  std::optional<double> theorem10;
  std::string error;  // empty on clean rows; also carries the
                      // "baseline=greedy" label for rows whose denominator is
                      // the greedy cost (families beyond the exact budget)
};

// One row per grid point, emitted in deterministic nested order
// (universe_size, num_sets, density, k, variant, seed). Bounds appear only
// where their preconditions hold. Per-row failures land in `error` and the
// sweep continues.
std::vector<SweepRow> sweep(const SweepConfig& config);

// CSV with header m,d,k,variant,kappa,empirical_ratio,std_err,theorem1,
// theorem7,theorem10,error. Reruns of the same config are byte-identical.
std::string sweep_to_csv(std::span<const SweepRow> rows);

}  // namespace setmc
