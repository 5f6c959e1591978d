#pragma once

// Seeded generators of positive-definite matrices with prescribed spectral
// range, and of pairs meeting the hypotheses of the operator bounds.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "revyoung/linalg.hpp"
#include "revyoung/operator_means.hpp"
#include "revyoung/rng.hpp"

namespace revyoung {

struct SamplerConfig {
  std::size_t n = 4;
  std::uint64_t seed = 0;
  double spectrum_lo = 0.1;
  double spectrum_hi = 1.0;
  std::size_t count = 1;
};

/// Throws PreconditionError unless 1 <= n <= kMaxDim, 0 < lo <= hi and count >= 1.
void validate(const SamplerConfig& config);

/// Haar-distributed orthogonal matrix: Gram-Schmidt (applied twice) on
/// independent standard normals, column signs fixed by R_ii > 0.
[[nodiscard]] Matrix random_orthogonal(std::size_t n, CounterRng& rng);

/// n eigenvalues uniform on [lo, hi].  For n >= 2 the first two are pinned to lo
/// and hi; for n == 1 the value is lo at index 0, hi at index 1, uniform after.
[[nodiscard]] std::vector<double> sample_spectrum(std::size_t n, double lo, double hi,
                                                  std::uint64_t index, CounterRng& rng);

/// Q diag(d) Q^T for sample `index` of the configured stream.
[[nodiscard]] SymMatrix random_spd(const SamplerConfig& config, std::uint64_t index = 0);
/// config.count matrices, indices 0 .. count - 1.
[[nodiscard]] std::vector<SymMatrix> random_spd_batch(const SamplerConfig& config);

/// A = B^{1/2} T B^{1/2}.  Needs spec(B) in (0, 1] and spec(T) in (0, 1]; the
/// result is verified to satisfy the ordered hypothesis, with NumericalError on
/// failure.
[[nodiscard]] SpdPair ordered_pair_from_factors(const SymMatrix& b, const SymMatrix& t);

/// Ordered pair m I <= A <= B <= M I <= I.  B and T have spectra in
/// [h_target^{-1/2}, 1], so the realized h never exceeds h_target.  Every fourth
/// index (index % 4 == 0) draws T in B's eigenbasis with aligned endpoints,
/// which realizes h == h_target.
[[nodiscard]] SpdPair random_ordered_pair(std::size_t n, std::uint64_t seed, double h_target,
                                          std::uint64_t index = 0);

/// A and B drawn independently with spectra in [m, M].
[[nodiscard]] SpdPair random_box_pair(std::size_t n, std::uint64_t seed, double m, double M,
                                      std::uint64_t index = 0);

}  // namespace revyoung
