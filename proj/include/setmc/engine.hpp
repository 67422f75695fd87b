#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "setmc/instance.hpp"
#include "setmc/rng.hpp"

namespace setmc {

// Universal: selection probability (mu/c_S)(alpha_p[S] + 1/|S_i|); alpha_p
//   accumulates the raw (uncapped) value, which may exceed 1.
// UnweightedK: unit costs only; probability min(alpha_p[S] + deficit/|S_i|, 1)
//   and alpha_p accumulates the capped value.
enum class Variant { Universal, UnweightedK };

const char* variant_name(Variant v);

// Mutable run state. Owned exclusively by one run; a fresh state starts with
// nothing selected and all accumulated probabilities at zero. cover_count
// caches |S_i ∩ T| per element and is derivable from `selected`.
struct OnlineState {
  std::vector<char> selected;     // by set id; the collection T
  std::vector<double> alpha_p;    // accumulated probability per set
  std::vector<int> cover_count;   // per element: selected sets containing it
  SplitMix64 rng;
  double total_cost = 0.0;

  int num_selected = 0;
};

OnlineState make_state(const SetSystem& system, std::uint64_t seed);

struct StepProb {
  int set_id = 0;
  double p_computed = 0.0;  // the raw probability from the selection line
  double p_used = 0.0;      // min(p_computed, 1)
  bool selected_randomly = false;

  bool operator==(const StepProb&) const = default;
};

// One processed element. For an element already covered k times the record
// carries deficit_before <= 0 and no per-set entries (the early-exit path).
struct StepRecord {
  int element = 0;
  int deficit_before = 0;
  double mu = 0.0;
  std::vector<StepProb> per_set;        // ascending set id
  std::vector<int> greedy_selected;     // in insertion order

  bool operator==(const StepRecord&) const = default;
};

struct RunResult {
  double total_cost = 0.0;
  std::vector<StepRecord> trace;
  OnlineState final_state;
};

// The j-th least cost among candidates under (cost, set_id) order.
// Throws std::invalid_argument unless 1 <= j <= |candidates|.
double stat(std::span<const std::pair<int, double>> candidates, int j);

// Process one presented element: randomized selection pass over the
// still-unselected covering sets, then greedy completion to coverage k.
// Consumes one uniform draw per candidate, in ascending set id order.
StepRecord process_element(const SetSystem& system, OnlineState& state,
                           int element, Variant variant);

// Full run over a presentation order. Throws std::invalid_argument listing
// the violations if validation fails, or if the variant needs unit costs and
// the system is weighted. Bit-identical output for identical inputs.
RunResult run(const SetSystem& system, const Sequence& seq, Variant variant,
              std::uint64_t seed, bool allow_duplicates = false);

// Analysis quantities reconstructed by replaying a trace against a reference
// solution (optimum_ids):
//   xi[t]    : sum of alpha_p[S] over covering sets of step t's element that
//              are outside the reference solution, at the moment it arrived
//   alpha[t] : number of already-selected covering sets outside the reference
//   lambda_history[t][S] = log2(m * alpha_p[S] + 1) after step t
//              (row 0 is the initial all-zero state)
struct Diagnostics {
  std::vector<double> xi;
  std::vector<int> alpha;
  std::vector<std::vector<double>> lambda_history;
};

Diagnostics diagnostics(const RunResult& result, const SetSystem& system,
                        const std::vector<int>& optimum_ids);

// Trace interchange: one JSON object per line with the StepRecord fields.
std::string trace_to_jsonl(std::span<const StepRecord> trace);
std::vector<StepRecord> trace_from_jsonl(std::string_view text);

}  // namespace setmc
