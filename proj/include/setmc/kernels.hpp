#pragma once

#include <string>
#include <vector>

namespace setmc::kernels {

// The library's data-parallel inner loops. Each has a scalar reference
// implementation and, on x86-64 with AVX2+FMA, a vectorized variant selected
// at runtime. Variants are bit-identical: both sides perform the same IEEE
// operation sequence per element (including the fused multiply-add in
// pb_update), so results do not depend on the chosen backend.

enum class Backend { Scalar, Avx2 };

const char* backend_name(Backend b);

// Backends usable on this machine; Scalar is always first.
std::vector<Backend> available_backends();

// Currently active backend (auto-detected on first use).
Backend active_backend();

// Force a specific backend. Throws std::invalid_argument if unavailable.
void force_backend(Backend b);

// One Poisson-binomial DP step: given mass[0..count] = PMF of the number of
// successes over `count` trials, fold in one more trial with success
// probability p, producing mass[0..count+1] in place.
void pb_update(double* mass, int count, double p);

// out[i] = (mu / cost[i]) * (alpha[i] + add)         -- selection line A-style
void step_probs(const double* alpha, const double* cost, int n, double mu,
                double add, double* out);

// out[i] = min(alpha[i] + add, 1.0)                  -- capped variant
void step_probs_capped(const double* alpha, int n, double add, double* out);

}  // namespace setmc::kernels
