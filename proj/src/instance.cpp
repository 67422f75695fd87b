#include "setmc/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "setmc/rng.hpp"

namespace setmc {

SetSystem::SetSystem(int universe_size, int k, std::vector<SetDef> sets)
    : universe_size_(universe_size), k_(k), sets_(std::move(sets)) {
  if (universe_size_ <= 0)
    throw std::invalid_argument("SetSystem: universe_size must be positive");
  if (k_ <= 0) throw std::invalid_argument("SetSystem: k must be positive");
  for (int i = 0; i < static_cast<int>(sets_.size()); ++i) {
    const SetDef& s = sets_[i];
    if (s.id != i)
      throw std::invalid_argument("SetSystem: set ids must be dense 0..N-1 (set at index " +
                                  std::to_string(i) + " has id " +
                                  std::to_string(s.id) + ")");
    if (!(s.cost > 0.0) || !std::isfinite(s.cost))
      throw std::invalid_argument("SetSystem: set " + std::to_string(i) +
                                  " must have a strictly positive finite cost");
    for (std::size_t j = 0; j < s.elements.size(); ++j) {
      const int e = s.elements[j];
      if (e < 0 || e >= universe_size_)
        throw std::invalid_argument("SetSystem: set " + std::to_string(i) +
                                    " contains out-of-range element " +
                                    std::to_string(e));
      if (j > 0 && s.elements[j - 1] >= e)
        throw std::invalid_argument("SetSystem: set " + std::to_string(i) +
                                    " elements must be sorted and duplicate-free");
    }
  }
  covering_.resize(universe_size_);
  for (const SetDef& s : sets_)
    for (int e : s.elements) covering_[e].push_back(s.id);
}

bool SetSystem::unit_costs() const {
  return std::all_of(sets_.begin(), sets_.end(),
                     [](const SetDef& s) { return s.cost == 1.0; });
}

std::vector<std::string> validate(const SetSystem& system, const Sequence& seq,
                                  bool allow_duplicates) {
  std::vector<std::string> violations;
  std::vector<char> seen(system.universe_size(), 0);
  for (int e : seq.elements) {
    if (e < 0 || e >= system.universe_size()) {
      violations.push_back("sequence element " + std::to_string(e) +
                           " outside universe [0, " +
                           std::to_string(system.universe_size()) + ")");
      continue;
    }
    const auto covering = system.covering_sets(e);
    if (static_cast<int>(covering.size()) < system.k())
      violations.push_back("element " + std::to_string(e) + " in " +
                           std::to_string(covering.size()) + " < " +
                           std::to_string(system.k()) + " sets");
    if (seen[e] && !allow_duplicates)
      violations.push_back("element " + std::to_string(e) +
                           " presented more than once");
    seen[e] = 1;
  }
  return violations;
}

InstanceStats stats(const SetSystem& system) {
  if (system.num_sets() == 0)
    throw std::invalid_argument("stats: empty set family");
  InstanceStats st;
  for (const SetDef& s : system.sets())
    st.max_set_size = std::max(st.max_set_size,
                               static_cast<int>(s.elements.size()));
  for (int e = 0; e < system.universe_size(); ++e)
    st.max_frequency = std::max(st.max_frequency,
                                static_cast<int>(system.covering_sets(e).size()));
  return st;
}

Instance random_system(int universe_size, int num_sets, double density,
                       const CostModel& cost_model, int k,
                       std::uint64_t seed) {
  if (universe_size <= 0 || num_sets <= 0 || k <= 0)
    throw std::invalid_argument("random_system: sizes and k must be positive");
  if (!(density > 0.0) || density > 1.0)
    throw std::invalid_argument("random_system: density must be in (0, 1]");
  if (k > num_sets)
    throw std::runtime_error("random_system: coverage " + std::to_string(k) +
                             " infeasible with " + std::to_string(num_sets) +
                             " sets");

  SplitMix64 rng(seed);

  std::vector<double> costs(num_sets, 1.0);
  if (const auto* u = std::get_if<UniformCosts>(&cost_model)) {
    if (!(u->lo > 0.0) || u->hi < u->lo)
      throw std::invalid_argument("random_system: uniform costs need 0 < lo <= hi");
    for (double& c : costs) c = u->lo + rng.uniform01() * (u->hi - u->lo);
  }

  // membership[e][j]: element-major so a deficient element's row can be redrawn
  std::vector<std::vector<char>> membership(
      universe_size, std::vector<char>(num_sets, 0));
  for (int e = 0; e < universe_size; ++e) {
    bool ok = false;
    for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
      int count = 0;
      for (int j = 0; j < num_sets; ++j) {
        membership[e][j] = rng.uniform01() < density ? 1 : 0;
        count += membership[e][j];
      }
      ok = count >= k;
    }
    if (!ok)
      throw std::runtime_error("random_system: element " + std::to_string(e) +
                               " not covered by " + std::to_string(k) +
                               " sets after 100 attempts");
  }

  std::vector<SetDef> sets(num_sets);
  for (int j = 0; j < num_sets; ++j) {
    sets[j].id = j;
    sets[j].cost = costs[j];
    for (int e = 0; e < universe_size; ++e)
      if (membership[e][j]) sets[j].elements.push_back(e);
  }

  Sequence seq;
  seq.elements.resize(universe_size);
  std::iota(seq.elements.begin(), seq.elements.end(), 0);
  for (int i = universe_size - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(i) + 1));
    std::swap(seq.elements[i], seq.elements[j]);
  }

  return Instance{SetSystem(universe_size, k, std::move(sets)), std::move(seq)};
}

std::string write_instance(const SetSystem& system, const Sequence& seq) {
  nlohmann::json j;
  j["universe_size"] = system.universe_size();
  j["k"] = system.k();
  auto& sets = j["sets"] = nlohmann::json::array();
  for (const SetDef& s : system.sets()) {
    sets.push_back({{"id", s.id}, {"cost", s.cost}, {"elements", s.elements}});
  }
  j["sequence"] = seq.elements;
  return j.dump(2) + "\n";
}

namespace {

const nlohmann::json& require_field(const nlohmann::json& j, const char* name,
                                    const std::string& where) {
  auto it = j.find(name);
  if (it == j.end())
    throw std::runtime_error("instance parse: missing field '" +
                             std::string(name) + "' in " + where);
  return *it;
}

}  // namespace

Instance read_instance(std::string_view bytes) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("instance parse: ") + e.what());
  }
  try {
    const int n = require_field(j, "universe_size", "document").get<int>();
    const int k = require_field(j, "k", "document").get<int>();
    const auto& jsets = require_field(j, "sets", "document");
    std::vector<SetDef> sets;
    sets.reserve(jsets.size());
    for (std::size_t i = 0; i < jsets.size(); ++i) {
      const std::string where = "sets[" + std::to_string(i) + "]";
      const auto& js = jsets[i];
      SetDef s;
      s.id = require_field(js, "id", where).get<int>();
      s.cost = require_field(js, "cost", where).get<double>();
      s.elements = require_field(js, "elements", where).get<std::vector<int>>();
      sets.push_back(std::move(s));
    }
    std::sort(sets.begin(), sets.end(),
              [](const SetDef& a, const SetDef& b) { return a.id < b.id; });
    Sequence seq;
    seq.elements = require_field(j, "sequence", "document").get<std::vector<int>>();
    return Instance{SetSystem(n, k, std::move(sets)), std::move(seq)};
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("instance parse: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("instance parse: ") + e.what());
  }
}

}  // namespace setmc
