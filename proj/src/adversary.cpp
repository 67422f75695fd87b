#include "setmc/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace setmc {

namespace {

int padding_width(int k) {
  return static_cast<int>(std::ceil(std::log2(static_cast<double>(k) + 1.0)));
}

void check_base(const BaseInstance& base) {
  if (base.system.k() != 1)
    throw std::invalid_argument("lift: base instance must have k = 1");
  auto violations = validate(base.system, base.sequence);
  if (!violations.empty())
    throw std::invalid_argument("lift: base instance invalid: " + violations.front());
}

}  // namespace

LiftedInstance lift_osc_k(const BaseInstance& base, int k) {
  if (k < 1) throw std::invalid_argument("lift_osc_k: k must be >= 1");
  check_base(base);

  const int m_base = base.system.num_sets();
  const int n_base = base.system.universe_size();
  const int pad = padding_width(k);
  const int n = k * n_base + 1 + pad;
  const int element_x = k * n_base;

  std::vector<int> extra_ids, padding;
  for (int b = 0; b < pad; ++b) padding.push_back(element_x + 1 + b);

  std::vector<SetDef> sets;
  sets.reserve(k + k * m_base);
  // Extra set j: {x} plus the padding elements named by the bits of j, plus
  // every copy-c element with c != j.
  for (int j = 0; j < k; ++j) {
    SetDef s;
    s.id = j;
    s.cost = 1.0;
    for (int c = 0; c < k; ++c) {
      if (c == j) continue;
      for (int e = 0; e < n_base; ++e) s.elements.push_back(c * n_base + e);
    }
    s.elements.push_back(element_x);
    for (int b = 0; b < pad; ++b)
      if (j >> b & 1) s.elements.push_back(element_x + 1 + b);
    std::sort(s.elements.begin(), s.elements.end());
    extra_ids.push_back(j);
    sets.push_back(std::move(s));
  }
  // Copy c of the base family, elements renamed into block c.
  for (int c = 0; c < k; ++c) {
    for (const SetDef& bs : base.system.sets()) {
      SetDef s;
      s.id = static_cast<int>(sets.size());
      s.cost = bs.cost;
      for (int e : bs.elements) s.elements.push_back(c * n_base + e);
      sets.push_back(std::move(s));
    }
  }

  Sequence seq;
  seq.elements.push_back(element_x);
  for (int c = 0; c < k; ++c)
    for (int e : base.sequence.elements) seq.elements.push_back(c * n_base + e);

  return LiftedInstance{SetSystem(n, k, std::move(sets)),
                        std::move(seq),
                        std::move(extra_ids),
                        element_x,
                        std::move(padding),
                        /*epsilon=*/1.0,
                        /*opt_hint_forced=*/2.0 * k,
                        /*opt_hint_prose=*/2.0 * k};
}

LiftedInstance lift_wosc_k(const BaseInstance& base, int k, double epsilon) {
  if (k < 1) throw std::invalid_argument("lift_wosc_k: k must be >= 1");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("lift_wosc_k: epsilon must be positive");
  check_base(base);

  const int m_base = base.system.num_sets();
  const int n_base = base.system.universe_size();
  const int pad = padding_width(k);
  const int n = n_base + 1 + pad;
  const int element_x = n_base;

  std::vector<int> extra_ids, padding;
  for (int b = 0; b < pad; ++b) padding.push_back(element_x + 1 + b);

  std::vector<SetDef> sets;
  sets.reserve(k + m_base);
  // Extra set 0 is {x} (+ its padding bits); sets 1..k-1 also contain every
  // base element, so each base element lies in exactly k-1 extra sets.
  for (int j = 0; j < k; ++j) {
    SetDef s;
    s.id = j;
    s.cost = epsilon;
    if (j > 0)
      for (int e = 0; e < n_base; ++e) s.elements.push_back(e);
    s.elements.push_back(element_x);
    for (int b = 0; b < pad; ++b)
      if (j >> b & 1) s.elements.push_back(element_x + 1 + b);
    std::sort(s.elements.begin(), s.elements.end());
    extra_ids.push_back(j);
    sets.push_back(std::move(s));
  }
  for (const SetDef& bs : base.system.sets()) {
    SetDef s;
    s.id = static_cast<int>(sets.size());
    s.cost = 1.0;
    s.elements = bs.elements;
    sets.push_back(std::move(s));
  }

  Sequence seq;
  seq.elements.push_back(element_x);
  for (int e : base.sequence.elements) seq.elements.push_back(e);

  return LiftedInstance{SetSystem(n, k, std::move(sets)),
                        std::move(seq),
                        std::move(extra_ids),
                        element_x,
                        std::move(padding),
                        epsilon,
                        /*opt_hint_forced=*/1.0 + k * epsilon,
                        /*opt_hint_prose=*/1.0 + epsilon};
}

Sequence adaptive_stress(const SetSystem& system, int k, OnlineProbe& probe,
                         int rounds) {
  Sequence emitted;
  for (int r = 0; r < rounds; ++r) {
    const auto& selected = probe.selected();
    int pick = -1, pick_count = 0;
    for (int e = 0; e < system.universe_size(); ++e) {
      const auto covering = system.covering_sets(e);
      if (static_cast<int>(covering.size()) < k) continue;  // never presentable
      int count = 0;
      for (int s : covering) count += selected[s];
      if (count >= k) continue;  // cannot increase the deficit
      if (pick < 0 || count < pick_count) {
        pick = e;
        pick_count = count;
      }
    }
    if (pick < 0) break;
    emitted.elements.push_back(pick);
    probe.present(pick);
  }
  return emitted;
}

BaseInstance binary_tree_base(int depth, int presented_leaf) {
  if (depth < 1) throw std::invalid_argument("binary_tree_base: depth must be >= 1");
  const int leaves = 1 << depth;
  if (presented_leaf < 0 || presented_leaf >= leaves)
    throw std::invalid_argument("binary_tree_base: leaf index out of range");

  // Heap numbering: node 0 is the root; children of v are 2v+1 and 2v+2.
  const int nodes = (1 << (depth + 1)) - 1;
  std::vector<SetDef> sets(leaves);
  for (int leaf = 0; leaf < leaves; ++leaf) {
    int v = (1 << depth) - 1 + leaf;
    sets[leaf].id = leaf;
    sets[leaf].cost = 1.0;
    while (true) {
      sets[leaf].elements.push_back(v);
      if (v == 0) break;
      v = (v - 1) / 2;
    }
    std::sort(sets[leaf].elements.begin(), sets[leaf].elements.end());
  }

  Sequence seq;
  {
    std::vector<int> path;
    int v = (1 << depth) - 1 + presented_leaf;
    while (true) {
      path.push_back(v);
      if (v == 0) break;
      v = (v - 1) / 2;
    }
    seq.elements.assign(path.rbegin(), path.rend());  // root first
  }

  return BaseInstance{SetSystem(nodes, 1, std::move(sets)), std::move(seq)};
}

}  // namespace setmc
