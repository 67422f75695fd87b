#include <immintrin.h>

namespace setmc::kernels::detail {

// Descending in-place update. Each vector block reads only values that have
// not yet been overwritten (stores at [a-3..a], subsequent reads at <= a-4),
// so lane results equal the scalar recurrence exactly.
void pb_update_avx2(double* mass, int count, double p) {
  const double q = 1.0 - p;
  const __m256d vq = _mm256_set1_pd(q);
  const __m256d vp = _mm256_set1_pd(p);
  mass[count + 1] = mass[count] * p;
  int a = count;
  for (; a >= 4; a -= 4) {
    const __m256d hi = _mm256_loadu_pd(mass + a - 3);
    const __m256d lo = _mm256_loadu_pd(mass + a - 4);
    const __m256d res = _mm256_fmadd_pd(hi, vq, _mm256_mul_pd(lo, vp));
    _mm256_storeu_pd(mass + a - 3, res);
  }
  for (; a >= 1; --a) {
    mass[a] = __builtin_fma(mass[a], q, mass[a - 1] * p);
  }
  mass[0] *= q;
}

void step_probs_avx2(const double* alpha, const double* cost, int n, double mu,
                     double add, double* out) {
  const __m256d vmu = _mm256_set1_pd(mu);
  const __m256d vadd = _mm256_set1_pd(add);
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d c = _mm256_loadu_pd(cost + i);
    const __m256d al = _mm256_loadu_pd(alpha + i);
    const __m256d r =
        _mm256_mul_pd(_mm256_div_pd(vmu, c), _mm256_add_pd(al, vadd));
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) out[i] = (mu / cost[i]) * (alpha[i] + add);
}

void step_probs_capped_avx2(const double* alpha, int n, double add,
                            double* out) {
  const __m256d vadd = _mm256_set1_pd(add);
  const __m256d ones = _mm256_set1_pd(1.0);
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d al = _mm256_loadu_pd(alpha + i);
    const __m256d r = _mm256_min_pd(_mm256_add_pd(al, vadd), ones);
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) out[i] = alpha[i] + add < 1.0 ? alpha[i] + add : 1.0;
}

}  // namespace setmc::kernels::detail
