#include "setmc/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "setmc/kernels.hpp"

namespace setmc {

const char* variant_name(Variant v) {
  return v == Variant::Universal ? "universal" : "unweighted-k";
}

OnlineState make_state(const SetSystem& system, std::uint64_t seed) {
  OnlineState st;
  st.selected.assign(system.num_sets(), 0);
  st.alpha_p.assign(system.num_sets(), 0.0);
  st.cover_count.assign(system.universe_size(), 0);
  st.rng = SplitMix64(seed);
  return st;
}

double stat(std::span<const std::pair<int, double>> candidates, int j) {
  if (j < 1 || j > static_cast<int>(candidates.size()))
    throw std::invalid_argument("stat: rank " + std::to_string(j) +
                                " outside candidate count " +
                                std::to_string(candidates.size()));
  std::vector<std::pair<double, int>> order;
  order.reserve(candidates.size());
  for (const auto& [id, cost] : candidates) order.emplace_back(cost, id);
  std::nth_element(order.begin(), order.begin() + (j - 1), order.end());
  return order[j - 1].first;
}

namespace {

void select_set(const SetSystem& system, OnlineState& state, int set_id) {
  state.selected[set_id] = 1;
  ++state.num_selected;
  state.total_cost += system.cost(set_id);
  for (int e : system.set(set_id).elements) ++state.cover_count[e];
}

}  // namespace

StepRecord process_element(const SetSystem& system, OnlineState& state,
                           int element, Variant variant) {
  StepRecord rec;
  rec.element = element;

  const auto covering = system.covering_sets(element);
  int deficit = system.k() - state.cover_count[element];
  rec.deficit_before = deficit;
  if (deficit <= 0) return rec;  // already covered enough; nothing to do

  // Snapshot of the unselected covering sets; mu and the selection loop both
  // use this pool even though selections below shrink the real one.
  std::vector<int> cand_ids;
  std::vector<double> cand_alpha, cand_cost;
  for (int s : covering) {
    if (!state.selected[s]) {
      cand_ids.push_back(s);
      cand_alpha.push_back(state.alpha_p[s]);
      cand_cost.push_back(system.cost(s));
    }
  }
  assert(static_cast<int>(cand_ids.size()) >= deficit);

  const double inv_freq = 1.0 / static_cast<double>(covering.size());
  std::vector<double> p(cand_ids.size());
  if (variant == Variant::Universal) {
    std::vector<std::pair<int, double>> pool(cand_ids.size());
    for (std::size_t i = 0; i < cand_ids.size(); ++i)
      pool[i] = {cand_ids[i], cand_cost[i]};
    rec.mu = stat(pool, deficit);
    kernels::step_probs(cand_alpha.data(), cand_cost.data(),
                        static_cast<int>(cand_ids.size()), rec.mu, inv_freq,
                        p.data());
  } else {
    rec.mu = 1.0;
    kernels::step_probs_capped(cand_alpha.data(),
                               static_cast<int>(cand_ids.size()),
                               deficit * inv_freq, p.data());
  }

  rec.per_set.reserve(cand_ids.size());
  for (std::size_t i = 0; i < cand_ids.size(); ++i) {
    const int s = cand_ids[i];
    StepProb sp;
    sp.set_id = s;
    sp.p_computed = p[i];
    sp.p_used = std::min(p[i], 1.0);
    state.alpha_p[s] += p[i];
    sp.selected_randomly = state.rng.uniform01() < sp.p_used;
    if (sp.selected_randomly) select_set(system, state, s);
    rec.per_set.push_back(sp);
  }

  deficit = system.k() - state.cover_count[element];
  for (; deficit > 0; --deficit) {
    int best = -1;
    for (int s : covering) {
      if (state.selected[s]) continue;
      if (best < 0 || system.cost(s) < system.cost(best)) best = s;
    }
    if (best < 0)
      throw std::logic_error("process_element: greedy phase ran out of sets; "
                             "element has fewer than k covering sets");
    select_set(system, state, best);
    rec.greedy_selected.push_back(best);
  }
  return rec;
}

RunResult run(const SetSystem& system, const Sequence& seq, Variant variant,
              std::uint64_t seed, bool allow_duplicates) {
  auto violations = validate(system, seq, allow_duplicates);
  if (!violations.empty()) {
    std::string msg = "run: validation failed:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw std::invalid_argument(msg);
  }
  if (variant == Variant::UnweightedK && !system.unit_costs())
    throw std::invalid_argument("run: unweighted-k variant requires unit costs");

  RunResult result;
  result.final_state = make_state(system, seed);
  result.trace.reserve(seq.elements.size());
  for (int e : seq.elements)
    result.trace.push_back(
        process_element(system, result.final_state, e, variant));
  result.total_cost = result.final_state.total_cost;
  return result;
}

Diagnostics diagnostics(const RunResult& result, const SetSystem& system,
                        const std::vector<int>& optimum_ids) {
  std::vector<char> in_opt(system.num_sets(), 0);
  for (int s : optimum_ids) {
    if (s < 0 || s >= system.num_sets())
      throw std::invalid_argument("diagnostics: optimum id out of range");
    in_opt[s] = 1;
  }
  // The reference solution must k-cover every presented element.
  for (const StepRecord& rec : result.trace) {
    int cover = 0;
    for (int s : system.covering_sets(rec.element)) cover += in_opt[s];
    if (cover < system.k())
      throw std::invalid_argument("diagnostics: reference solution covers element " +
                                  std::to_string(rec.element) + " only " +
                                  std::to_string(cover) + " < k times");
  }

  const int m = stats(system).max_frequency;
  Diagnostics diag;
  std::vector<double> alpha_p(system.num_sets(), 0.0);
  std::vector<char> selected(system.num_sets(), 0);

  auto lambda_row = [&] {
    std::vector<double> row(system.num_sets());
    for (int s = 0; s < system.num_sets(); ++s)
      row[s] = std::log2(m * alpha_p[s] + 1.0);
    return row;
  };
  diag.lambda_history.push_back(lambda_row());

  for (const StepRecord& rec : result.trace) {
    double xi = 0.0;
    int a = 0;
    for (int s : system.covering_sets(rec.element)) {
      if (in_opt[s]) continue;
      xi += alpha_p[s];
      a += selected[s];
    }
    diag.xi.push_back(xi);
    diag.alpha.push_back(a);

    for (const StepProb& sp : rec.per_set) {
      alpha_p[sp.set_id] += sp.p_computed;
      if (sp.selected_randomly) selected[sp.set_id] = 1;
    }
    for (int s : rec.greedy_selected) selected[s] = 1;
    diag.lambda_history.push_back(lambda_row());
  }
  return diag;
}

std::string trace_to_jsonl(std::span<const StepRecord> trace) {
  std::string out;
  for (const StepRecord& rec : trace) {
    nlohmann::json j;
    j["element"] = rec.element;
    j["deficit_before"] = rec.deficit_before;
    j["mu"] = rec.mu;
    auto& per_set = j["per_set"] = nlohmann::json::array();
    for (const StepProb& sp : rec.per_set)
      per_set.push_back({{"set_id", sp.set_id},
                         {"p_computed", sp.p_computed},
                         {"p_used", sp.p_used},
                         {"selected_randomly", sp.selected_randomly}});
    j["greedy_selected"] = rec.greedy_selected;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<StepRecord> trace_from_jsonl(std::string_view text) {
  std::vector<StepRecord> trace;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      StepRecord rec;
      rec.element = j.at("element").get<int>();
      rec.deficit_before = j.at("deficit_before").get<int>();
      rec.mu = j.at("mu").get<double>();
      for (const auto& js : j.at("per_set")) {
        StepProb sp;
        sp.set_id = js.at("set_id").get<int>();
        sp.p_computed = js.at("p_computed").get<double>();
        sp.p_used = js.at("p_used").get<double>();
        sp.selected_randomly = js.at("selected_randomly").get<bool>();
        rec.per_set.push_back(sp);
      }
      rec.greedy_selected = j.at("greedy_selected").get<std::vector<int>>();
      trace.push_back(std::move(rec));
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(std::string("trace parse: ") + e.what());
    }
  }
  return trace;
}

}  // namespace setmc
