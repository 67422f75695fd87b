#include "setmc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "setmc/bounds.hpp"
#include "setmc/offline.hpp"

namespace setmc {

TrialSummary empirical_ratio(const SetSystem& system, const Sequence& seq,
                             Variant variant, int trials,
                             std::uint64_t master_seed) {
  if (trials < 1)
    throw std::invalid_argument("empirical_ratio: need at least one trial");

  const Cover opt = exact_optimum(system, seq.elements, system.k());
  if (!(opt.cost > 0.0))
    throw std::invalid_argument("empirical_ratio: optimum cost is zero (empty sequence?)");

  std::vector<double> costs(trials);
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed =
        splitmix64_once(master_seed ^ static_cast<std::uint64_t>(t));
    costs[t] = run(system, seq, variant, trial_seed).total_cost;
  }

  double mean = 0.0;
  for (double c : costs) mean += c;
  mean /= trials;

  double var = 0.0;
  if (trials > 1) {
    for (double c : costs) var += (c - mean) * (c - mean);
    var /= trials - 1;
  }

  TrialSummary s;
  s.trials = trials;
  s.mean_cost = mean;
  s.opt_cost = opt.cost;
  s.empirical_ratio = mean / opt.cost;
  s.std_err = std::sqrt(var / trials) / opt.cost;
  s.seed = master_seed;
  return s;
}

Verdict compare_to_bounds(const TrialSummary& summary, double bound) {
  return summary.empirical_ratio - 3.0 * summary.std_err <= bound
             ? Verdict::Pass
             : Verdict::Fail;
}

Verdict compare_to_bounds(const TrialSummary& summary,
                          std::span<const double> bounds) {
  for (double b : bounds)
    if (compare_to_bounds(summary, b) == Verdict::Fail) return Verdict::Fail;
  return Verdict::Pass;
}

namespace {

template <typename T>
std::vector<T> as_list(const nlohmann::json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

Variant parse_variant(const std::string& name) {
  if (name == "universal") return Variant::Universal;
  if (name == "unweighted-k") return Variant::UnweightedK;
  throw std::runtime_error("sweep config: unknown variant '" + name + "'");
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string format_cell(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

}  // namespace

SweepConfig parse_sweep_config(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
    SweepConfig cfg;
    cfg.universe_sizes = as_list<int>(j.at("universe_sizes"));
    cfg.num_sets = as_list<int>(j.at("num_sets"));
    cfg.densities = as_list<double>(j.at("densities"));
    cfg.ks = as_list<int>(j.at("ks"));
    for (const auto& name : as_list<std::string>(j.at("variants")))
      cfg.variants.push_back(parse_variant(name));
    cfg.seeds = as_list<std::uint64_t>(j.at("seeds"));
    cfg.trials = j.value("trials", 100);
    if (auto it = j.find("cost_model"); it != j.end()) {
      const std::string kind = it->at("kind").get<std::string>();
      if (kind == "unit") {
        cfg.cost_model = UnitCosts{};
      } else if (kind == "uniform") {
        cfg.cost_model = UniformCosts{it->at("lo").get<double>(),
                                      it->at("hi").get<double>()};
      } else {
        throw std::runtime_error("sweep config: unknown cost model '" + kind + "'");
      }
    }
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("sweep config parse: ") + e.what());
  }
}

std::vector<SweepRow> sweep(const SweepConfig& config) {
  std::vector<SweepRow> rows;
  const bool unit = std::holds_alternative<UnitCosts>(config.cost_model);

  for (int n : config.universe_sizes)
    for (int num_sets : config.num_sets)
      for (double density : config.densities)
        for (int k : config.ks)
          for (Variant variant : config.variants)
            for (std::uint64_t seed : config.seeds) {
              SweepRow row;
              row.k = k;
              row.variant = variant;
              try {
                const Instance inst = random_system(
                    n, num_sets, density, config.cost_model, k, seed);
                const InstanceStats st = stats(inst.system);
                row.m = st.max_frequency;
                row.d = st.max_set_size;

                // Denominator: exact optimum within budget, else greedy.
                double baseline;
                std::optional<Cover> opt;
                if (inst.system.num_sets() <= 30) {
                  opt = exact_optimum(inst.system, inst.sequence.elements, k);
                  baseline = opt->cost;
                } else {
                  baseline = greedy_multicover(inst.system,
                                               inst.sequence.elements, k)
                                 .cost;
                  row.error = "baseline=greedy";
                }

                std::vector<double> costs(config.trials);
                for (int t = 0; t < config.trials; ++t)
                  costs[t] = run(inst.system, inst.sequence, variant,
                                 splitmix64_once(seed ^ static_cast<std::uint64_t>(t)))
                                 .total_cost;
                double mean = 0.0;
                for (double c : costs) mean += c;
                mean /= config.trials;
                double var = 0.0;
                if (config.trials > 1) {
                  for (double c : costs) var += (c - mean) * (c - mean);
                  var /= config.trials - 1;
                }
                row.empirical_ratio = mean / baseline;
                row.std_err = std::sqrt(var / config.trials) / baseline;

                if (st.max_frequency >= 2) {
                  double kap;
                  if (opt) {
                    kap = kappa(inst.system, *opt, inst.sequence);
                  } else {
                    kap = unit ? static_cast<double>(k) : 1.0;
                  }
                  row.kappa = kap;
                  row.theorem1 =
                      theorem1_bound(st.max_frequency, st.max_set_size, kap);
                  if (unit && k == 1)
                    row.theorem7 =
                        theorem7_bound(st.max_frequency, st.max_set_size);
                  if (unit && variant == Variant::UnweightedK)
                    row.theorem10 =
                        theorem10_bound(st.max_frequency, st.max_set_size, k);
                }
              } catch (const std::exception& e) {
                row.error = e.what();
              }
              rows.push_back(std::move(row));
            }
  return rows;
}

std::string sweep_to_csv(std::span<const SweepRow> rows) {
  std::string out =
      "m,d,k,variant,kappa,empirical_ratio,std_err,theorem1,theorem7,theorem10,error\n";
  for (const SweepRow& row : rows) {
    out += std::to_string(row.m) + ',' + std::to_string(row.d) + ',' +
           std::to_string(row.k) + ',' + variant_name(row.variant) + ',' +
           format_cell(row.kappa) + ',' + format_cell(row.empirical_ratio) +
           ',' + format_cell(row.std_err) + ',' + format_cell(row.theorem1) +
           ',' + format_cell(row.theorem7) + ',' + format_cell(row.theorem10) +
           ',' + row.error + '\n';
  }
  return out;
}

}  // namespace setmc
