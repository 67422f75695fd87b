#include "setmc/prob.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "setmc/kernels.hpp"
#include "setmc/rng.hpp"

namespace setmc {

double TrialVector::X() const {
  return std::accumulate(probs.begin(), probs.end(), 0.0);
}

Pmf poisson_binomial(const TrialVector& tv) {
  for (double p : tv.probs)
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("poisson_binomial: probability outside [0,1]");
  const int n = static_cast<int>(tv.probs.size());
  Pmf mass(static_cast<std::size_t>(n) + 1, 0.0);
  mass[0] = 1.0;
  for (int t = 0; t < n; ++t) kernels::pb_update(mass.data(), t, tv.probs[t]);
  return mass;
}

bool check_lemma12(const TrialVector& tv, int a) {
  const double X = tv.X();
  if (!(a > 0) || !(2.0 * a <= X + 1.0))
    throw std::invalid_argument("check_lemma12: need 0 < 2a <= X + 1");
  if (std::none_of(tv.probs.begin(), tv.probs.end(),
                   [](double p) { return p > 0.0 && p < 1.0; }))
    throw std::invalid_argument(
        "check_lemma12: need at least one probability in (0,1)");
  const Pmf mass = poisson_binomial(tv);
  return mass[a] > mass[a - 1];
}

Lemma13Result check_lemma13(const TrialVector& tv, int a) {
  const double X = tv.X();
  if (a < 0 || !(a <= X / 2.0))
    throw std::invalid_argument("check_lemma13: need 0 <= a <= X/2");
  const Pmf mass = poisson_binomial(tv);
  Lemma13Result r;
  for (int j = 0; j <= a; ++j) r.lhs += mass[j];
  double poisson_term = std::exp(-X);  // e^-X X^j / j! at j = 0
  for (int j = 1; j <= a; ++j) poisson_term *= X / j;
  r.rhs = poisson_term;
  r.holds = r.lhs < r.rhs;
  return r;
}

double c_function(double psi, int ell, double x) {
  if (ell < 1) throw std::invalid_argument("c_function: ell must be >= 1");
  double sum = 0.0;   // sum_{j=0}^{ell-2} x^j / j!
  double term = 1.0;  // x^j / j!, starting at j = 0
  for (int j = 0; j <= ell - 2; ++j) {
    sum += term;
    term *= x / (j + 1);
  }
  // term is now x^(ell-1) / (ell-1)!
  return std::exp(-x) * (term * (x - ell * psi) + psi * sum);
}

double x0_root(int ell) {
  if (ell < 2) throw std::invalid_argument("x0_root: ell must be >= 2");
  const double l = ell;
  return (3.0 * l + std::sqrt(l * l + 8.0)) / 2.0;
}

std::vector<Table1Row> reproduce_table1() {
  std::vector<Table1Row> rows;
  rows.reserve(39);
  for (int ell = 40; ell >= 2; --ell) {
    const double x0 = x0_root(ell);
    rows.push_back({ell, x0, c_function(2.0, ell, x0)});
  }
  return rows;
}

std::span<const Table1Row> table1_reference() {
  static const std::array<Table1Row, 39> kRows = {{
      {40, 80.049938, 0.000000267802482750},
      {39, 78.051215, 0.000000367770130466},
      {38, 76.052559, 0.000000505162841918},
      {37, 74.053975, 0.000000694037963620},
      {36, 72.055470, 0.000000953753092710},
      {35, 70.057050, 0.000001310973313578},
      {34, 68.058722, 0.000001802442476141},
      {33, 66.060495, 0.000002478811076980},
      {32, 64.062378, 0.000003409926108503},
      {31, 62.064382, 0.000004692144890365},
      {30, 60.066519, 0.000006458452590756},
      {29, 58.068802, 0.000008892465898008},
      {28, 56.071247, 0.000012247826675415},
      {27, 54.073872, 0.000016875076361489},
      {26, 52.076697, 0.000023258920058581},
      {25, 50.079746, 0.000032069930688629},
      {24, 48.083046, 0.000044236337186173},
      {23, 46.086630, 0.000061043767052413},
      {22, 44.090537, 0.000084273925651732},
      {21, 42.094810, 0.000116397546202183},
      {20, 40.099505, 0.000160843029165595},
      {19, 38.104686, 0.000222370693445282},
      {18, 36.110434, 0.000307594429791974},
      {17, 34.116844, 0.000425709065373619},
      {16, 32.124038, 0.000589504628397967},
      {15, 30.132169, 0.000816780125566277},
      {14, 28.141428, 0.001132311971151022},
      {13, 26.152067, 0.001570588251431389},
      {12, 24.164414, 0.002179590204991318},
      {11, 22.178908, 0.003025980931596380},
      {10, 20.196152, 0.004202124182703906},
      {9, 18.216991, 0.005835328094363729},
      {8, 16.242641, 0.008099376451161879},
      {7, 14.274917, 0.011227174827357965},
      {6, 12.316625, 0.015519482245119539},
      {5, 10.372281, 0.021333034990024608},
      {4, 8.449490, 0.028995023101223379},
      {3, 6.561553, 0.038468799615120751},
      {2, 4.732051, 0.048129928161242959},
  }};
  return kRows;
}

namespace {
const double kLog2E = std::log2(std::exp(1.0));  // log2(e)
}

double f_worst_case(double z) {
  if (!(z > 0.0)) throw std::invalid_argument("f_worst_case: need z > 0");
  if (z >= kLog2E) return 1.0 + std::log2(z);
  if (z >= kLog2E / 2.0) return std::log2(kLog2E) + 1.0 - kLog2E + z;
  return z * std::log2(2.0 * z) + (1.0 - z) * f_worst_case(2.0 * z);
}

SweepReport lemma12_sweep(int count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  SweepReport report;
  while (report.checked < count) {
    TrialVector tv;
    const int n = 2 + static_cast<int>(rng.bounded(29));
    tv.probs.resize(n);
    for (double& p : tv.probs) p = rng.uniform01();
    const int max_a = static_cast<int>(std::floor((tv.X() + 1.0) / 2.0));
    if (max_a < 1) continue;  // no admissible a for this draw
    const int a = 1 + static_cast<int>(rng.bounded(max_a));
    ++report.checked;
    report.failures += check_lemma12(tv, a) ? 0 : 1;
  }
  return report;
}

SweepReport lemma13_sweep(int count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  SweepReport report;
  while (report.checked < count) {
    TrialVector tv;
    const int n = 2 + static_cast<int>(rng.bounded(29));
    tv.probs.resize(n);
    for (double& p : tv.probs) p = rng.uniform01();
    const int max_a = static_cast<int>(std::floor(tv.X() / 2.0));
    const int a = static_cast<int>(rng.bounded(max_a + 1));
    ++report.checked;
    report.failures += check_lemma13(tv, a).holds ? 0 : 1;
  }
  return report;
}

double f_sequence(double z, std::span<const double> p) {
  if (!(z > 0.0)) throw std::invalid_argument("f_sequence: need z > 0");
  double beta = z;  // z + sum of earlier terms
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0) || p[i] > beta)
      throw std::invalid_argument("f_sequence: sequence not z-legal at term " +
                                  std::to_string(i));
    if (p[i] >= 1.0 && i + 1 != p.size())
      throw std::invalid_argument(
          "f_sequence: term >= 1 must be the last term");
    beta += p[i];
  }
  double value = 0.0;
  double weight = 1.0;  // probability the set is still unselected
  double zc = z;
  for (double pi : p) {
    const double w = std::min(pi, 1.0);
    value += weight * w * std::log2(pi + zc);
    weight *= 1.0 - w;
    zc += pi;
  }
  return value;
}

}  // namespace setmc
