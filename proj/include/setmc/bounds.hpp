#pragma once

namespace setmc {

// Closed-form expected-competitive-ratio bounds. All are pure and total on
// their stated domains; each throws std::invalid_argument off-domain.

// 1 + log2(m) * max(5, 2 + ln(d / (kappa * log2 m))). Requires m >= 2.
double theorem1_bound(int m, double d, double kappa);

// theorem1_bound with kappa = max(1, k / c_ratio), where c_ratio >= 1 is the
// largest-to-smallest weight ratio within an optimal solution.
double corollary2_bound(int m, double d, int k, double c_ratio);

// k = 1, unit costs:
//   m > 15 : log2(m) ln(d)
//   else   : (1/2 + log2 m)(1 + ln d)
double theorem7_bound(int m, double d);

// Unit costs, capped-probability variant:
//   k <= 2e*d : (1/2 + log2 m)(2 ln(d/k) + 3.4) + 1 + 2 log2 m
//   else      : 1 + 2 log2 m
double theorem10_bound(int m, double d, int k);

struct LowerBoundEstimate {
  double value = 0.0;  // the Omega-expression with hidden constant 1, base-2 logs
  bool in_range = false;  // whether (m, n, k) sit in the stated parameter window
};

// Deterministic-algorithm lower-bound expressions:
//   unweighted: log2(m/k) log2(n/k) / (log2 log2 (m/k) + log2 log2 (n/k))
//   weighted  : log2(m) log2(n) / (log2 log2 m + log2 log2 n)
// Reference curves only; never asserted against measured ratios.
LowerBoundEstimate lemma11_lower_expr(int m, int n, int k, bool weighted);

}  // namespace setmc
