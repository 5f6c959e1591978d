#include "revyoung/sampling.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "revyoung/errors.hpp"

namespace revyoung {
namespace {

enum Role : std::uint64_t {
  kRoleSpd = 1,
  kRoleOrderedB = 2,
  kRoleOrderedT = 3,
  kRoleBoxA = 4,
  kRoleBoxB = 5,
};

void require_dim(std::size_t n) {
  if (n == 0 || n > kMaxDim) {
    throw PreconditionError("dimension must be in [1, " + std::to_string(kMaxDim) + "], got " +
                            std::to_string(n));
  }
}

SymMatrix conjugate_diagonal(const Matrix& q, std::span<const double> d) { return reassemble(q, d); }

}  // namespace

void validate(const SamplerConfig& config) {
  require_dim(config.n);
  if (!(config.spectrum_lo > 0.0) || !(config.spectrum_lo <= config.spectrum_hi) ||
      !std::isfinite(config.spectrum_hi)) {
    throw PreconditionError("sampler spectrum needs 0 < lo <= hi < inf");
  }
  if (config.count == 0) throw PreconditionError("sampler count must be positive");
}

Matrix random_orthogonal(std::size_t n, CounterRng& rng) {
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.normal();

  // Modified Gram-Schmidt on columns, two passes.  The first-pass norms are the
  // R_ii of the QR factorization, which are positive by construction.
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += g(i, k) * g(i, j);
        for (std::size_t i = 0; i < n; ++i) g(i, j) -= dot * g(i, k);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += g(i, j) * g(i, j);
    norm = std::sqrt(norm);
    if (!(norm > 1e-300)) throw NumericalError("degenerate Gaussian draw while orthogonalizing");
    for (std::size_t i = 0; i < n; ++i) g(i, j) /= norm;
  }
  return g;
}

std::vector<double> sample_spectrum(std::size_t n, double lo, double hi, std::uint64_t index,
                                    CounterRng& rng) {
  std::vector<double> d(n);
  for (double& x : d) x = rng.uniform(lo, hi);
  if (n >= 2) {
    d[0] = lo;
    d[1] = hi;
  } else if (index == 0) {
    d[0] = lo;
  } else if (index == 1) {
    d[0] = hi;
  }
  return d;
}

SymMatrix random_spd(const SamplerConfig& config, std::uint64_t index) {
  validate(config);
  CounterRng rng(config.seed, stream_key(index, kRoleSpd));
  const Matrix q = random_orthogonal(config.n, rng);
  const std::vector<double> d = sample_spectrum(config.n, config.spectrum_lo, config.spectrum_hi, index, rng);
  return conjugate_diagonal(q, d);
}

std::vector<SymMatrix> random_spd_batch(const SamplerConfig& config) {
  validate(config);
  std::vector<SymMatrix> out;
  out.reserve(config.count);
  for (std::size_t i = 0; i < config.count; ++i) out.push_back(random_spd(config, i));
  return out;
}

SpdPair ordered_pair_from_factors(const SymMatrix& b, const SymMatrix& t) {
  const SymMatrix b_half = matrix_sqrt(b);
  SymMatrix a = congruence(b_half, t);
  SpdPair pair = make_pair(std::move(a), b);
  if (!pair.ordered) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "constructed pair fails m I <= A <= B <= M I <= I: M = " << pair.M
        << ", min eig(B - A) = " << loewner_geq(pair.b, pair.a).min_eigenvalue;
    throw NumericalError(msg.str());
  }
  return pair;
}

SpdPair random_ordered_pair(std::size_t n, std::uint64_t seed, double h_target, std::uint64_t index) {
  require_dim(n);
  if (!(h_target >= 1.0) || !std::isfinite(h_target)) {
    throw PreconditionError("h_target must be a finite number >= 1");
  }
  const double lo = 1.0 / std::sqrt(h_target);

  CounterRng rng_b(seed, stream_key(index, kRoleOrderedB));
  const Matrix qb = random_orthogonal(n, rng_b);
  const SymMatrix b = conjugate_diagonal(qb, sample_spectrum(n, lo, 1.0, index, rng_b));

  CounterRng rng_t(seed, stream_key(index, kRoleOrderedT));
  const bool aligned = index % 4 == 0;
  const Matrix qt = aligned ? qb : random_orthogonal(n, rng_t);
  const SymMatrix t = conjugate_diagonal(qt, sample_spectrum(n, lo, 1.0, index, rng_t));
  return ordered_pair_from_factors(b, t);
}

SpdPair random_box_pair(std::size_t n, std::uint64_t seed, double m, double M, std::uint64_t index) {
  require_dim(n);
  if (!(m > 0.0) || !(m <= M) || !std::isfinite(M)) throw PreconditionError("box needs 0 < m <= M < inf");
  CounterRng rng_a(seed, stream_key(index, kRoleBoxA));
  const Matrix qa = random_orthogonal(n, rng_a);
  SymMatrix a = conjugate_diagonal(qa, sample_spectrum(n, m, M, index, rng_a));
  CounterRng rng_b(seed, stream_key(index, kRoleBoxB));
  const Matrix qb = random_orthogonal(n, rng_b);
  SymMatrix b = conjugate_diagonal(qb, sample_spectrum(n, m, M, index, rng_b));
  return make_pair(std::move(a), std::move(b));
}

}  // namespace revyoung
