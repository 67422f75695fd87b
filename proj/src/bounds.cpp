#include "setmc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace setmc {

namespace {

double log2m(int m) {
  if (m < 2) throw std::invalid_argument("bound: need m >= 2");
  return std::log2(static_cast<double>(m));
}

}  // namespace

double theorem1_bound(int m, double d, double kappa) {
  const double lg = log2m(m);
  if (!(d > 0.0) || !(kappa > 0.0))
    throw std::invalid_argument("theorem1_bound: need d > 0 and kappa > 0");
  const double D = d / (kappa * lg);
  return 1.0 + lg * std::max(5.0, 2.0 + std::log(D));
}

double corollary2_bound(int m, double d, int k, double c_ratio) {
  if (k < 1 || !(c_ratio >= 1.0))
    throw std::invalid_argument("corollary2_bound: need k >= 1 and c_ratio >= 1");
  return theorem1_bound(m, d, std::max(1.0, k / c_ratio));
}

double theorem7_bound(int m, double d) {
  const double lg = log2m(m);
  if (!(d >= 1.0)) throw std::invalid_argument("theorem7_bound: need d >= 1");
  if (m > 15) return lg * std::log(d);
  return (0.5 + lg) * (1.0 + std::log(d));
}

double theorem10_bound(int m, double d, int k) {
  const double lg = log2m(m);
  if (!(d >= 1.0) || k < 1)
    throw std::invalid_argument("theorem10_bound: need d >= 1 and k >= 1");
  if (k <= 2.0 * std::exp(1.0) * d)
    return (0.5 + lg) * (2.0 * std::log(d / k) + 3.4) + 1.0 + 2.0 * lg;
  return 1.0 + 2.0 * lg;
}

LowerBoundEstimate lemma11_lower_expr(int m, int n, int k, bool weighted) {
  if (m < 1 || n < 1 || k < 1)
    throw std::invalid_argument("lemma11_lower_expr: need m, n, k >= 1");
  const double am = weighted ? m : static_cast<double>(m) / k;
  const double an = weighted ? n : static_cast<double>(n) / k;
  const double lm = std::log2(am);
  const double ln2 = std::log2(an);
  if (!(lm > 0.0) || !(ln2 > 0.0))
    throw std::invalid_argument("lemma11_lower_expr: inner log non-positive");
  const double denom = std::log2(lm) + std::log2(ln2);
  if (!(denom > 0.0))
    throw std::invalid_argument("lemma11_lower_expr: log-log denominator non-positive");

  LowerBoundEstimate est;
  est.value = lm * ln2 / denom;

  const double delta = 0.1;
  if (weighted) {
    // k + log2(n-1-ceil(log2(k+1))) <= m <= k + e^((n-1-ceil(log2(k+1)))^(1/2-delta))
    // and k < min(m, 2^(n-1)) / 2
    const double pad = std::ceil(std::log2(static_cast<double>(k) + 1.0));
    const double core = n - 1.0 - pad;
    est.in_range = core > 1.0 &&
                   k + std::log2(core) <= m &&
                   m <= k + std::exp(std::pow(core, 0.5 - delta)) &&
                   k < 0.5 * std::min(static_cast<double>(m),
                                      std::pow(2.0, n - 1.0));
  } else {
    // k log2(n/(k+1)) <= m <= (k+1) e^((n/k)^(1/2-delta)) and k < min(m, n)
    const double ratio = static_cast<double>(n) / (k + 1.0);
    est.in_range = ratio > 1.0 &&
                   k * std::log2(ratio) <= m &&
                   m <= (k + 1.0) * std::exp(std::pow(
                            static_cast<double>(n) / k, 0.5 - delta)) &&
                   k < std::min(m, n);
  }
  return est;
}

}  // namespace setmc
