#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace setmc {

// Success probabilities of independent 0-1 trials. X() is the expected number
// of successes.
struct TrialVector {
  std::vector<double> probs;

  double X() const;
};

// Exact distribution of the number of successes, indexed 0..N.
using Pmf = std::vector<double>;

// Exact PMF by dynamic programming, O(N^2). Throws std::invalid_argument if
// any probability is outside [0, 1].
Pmf poisson_binomial(const TrialVector& tv);

// Pr[s = a] > Pr[s = a-1], valid on 0 < 2a <= X+1 with at least one
// probability strictly inside (0, 1). Throws on precondition violation.
bool check_lemma12(const TrialVector& tv, int a);

struct Lemma13Result {
  double lhs = 0.0;  // Pr[s <= a], exact
  double rhs = 0.0;  // e^-X X^a / a!
  bool holds = false;
};

// Pr[s <= a] < e^-X X^a / a!, valid on 0 <= a <= X/2. Throws on
// precondition violation.
Lemma13Result check_lemma13(const TrialVector& tv, int a);

// C(psi, l, x) = e^-x ( x^(l-1)/(l-1)! (x - l psi) + psi sum_{j<=l-2} x^j/j! ).
// Terms x^j/j! are built incrementally, so no factorial overflow.
double c_function(double psi, int ell, double x);

// The root of -x^2 + 3 l x - 2(l^2 - 1) lying in (2l, 2l + 2/l), in closed
// form: (3l + sqrt(l^2 + 8)) / 2. Requires ell >= 2.
double x0_root(int ell);

struct Table1Row {
  int ell = 0;
  double x0 = 0.0;
  double c = 0.0;  // C(2, ell, x0)
};

// Rows for ell = 40 down to 2: (ell, x0_root(ell), c_function(2, ell, x0)).
std::vector<Table1Row> reproduce_table1();

// Reference values for the same table (x0 to 6 decimals, C to full printed
// precision), used by the verification report and tests.
std::span<const Table1Row> table1_reference();

// Worst-case expected-potential value F(z):
//   z >= log2(e)             : 1 + log2(z)
//   log2(e)/2 <= z <= log2(e): log2(log2 e) + 1 - log2(e) + z
//   z <  log2(e)/2           : z log2(2z) + (1-z) F(2z)
// Requires z > 0.
double f_worst_case(double z);

// Expected value of a concrete probability sequence:
//   F(z, ())  = 0
//   F(z, p..) = min(p1,1) log2(p1 + z) + (1 - min(p1,1)) F(z + p1, tail)
// The sequence must be z-legal: 0 <= p_i <= z + sum of earlier terms, and a
// term >= 1 may only appear last. Throws std::invalid_argument otherwise.
double f_sequence(double z, std::span<const double> p);

struct SweepReport {
  int checked = 0;
  int failures = 0;
};

// Randomized verification sweeps: `count` precondition-satisfying inputs
// each, deterministic in `seed`. failures == 0 on a passing sweep.
SweepReport lemma12_sweep(int count, std::uint64_t seed);
SweepReport lemma13_sweep(int count, std::uint64_t seed);

}  // namespace setmc
