#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "expobasis/certificate.hpp"
#include "expobasis/clusters.hpp"
#include "expobasis/domain.hpp"
#include "expobasis/rational.hpp"

namespace expobasis {

/// Signed sin(pi M t) / sin(pi t), with the limit value at integer t.
double g(std::int64_t M, double t);

struct BetaSolution {
  std::int64_t M = 0;
  double beta = 0.0;
  double residual = 0.0;
};

/// The root of g_M(beta) = M sin(1/M) in (0, 1/M), by bisection. Stops when the
/// residual is at most 1e-12 or the bracket no longer splits in double
/// precision; at most 200 steps.
BetaSolution solve_beta(std::int64_t M);

/// |sin(pi M t) / sin(pi (1/M - t))| < M sin(1/M) for 0 < t <= 1/(2 M^2).
bool lemma_p_k_1_bound(std::int64_t M, double t);

/// omega_N(t) = sin(pi (t-u)/N) / sin(pi t/N) strictly increasing on a grid of (u, N/2].
bool omega_increasing_check(std::int64_t N, double u, int grid_points = 10000);

// -- perturbed unions: s intervals [a_k + eps_k, a_k + eps_k + 1) --

struct DeltaRange {
  Rational lo;  // exact: 1 / (2 s^2 N^3 m)
  double hi = 0.0;
  std::int64_t N = 1;
  std::int64_t m = 0;
  BetaSolution beta;
};

/// Validates (s, a, eps) and returns the admissible window for |delta|.
/// Throws "empty_delta_range" when the window is empty.
DeltaRange delta_range_thm_main(std::int64_t s, std::span<const std::int64_t> a, std::span<const Rational> eps);

/// System offsets j/s + j*delta on the perturbed union. The certificate is
/// checked on the dilated union (scale N) against the progression
/// J * (1/(sN) + delta), J = 0..sN-1.
FrameCertificate construct_thm_main(std::int64_t s, std::span<const std::int64_t> a, std::span<const Rational> eps,
                                    const Rational& delta);

// -- sub-unions of [0, N) with offsets (j-1)/N --

/// Lower limit for u; u must be an integer strictly above it.
double thm_main_3_u_threshold(std::int64_t N, std::int64_t M);
/// |cos(pi u/N)| for even N, |cos(pi/(2N) + pi u/N) / cos(pi/(2N))| for odd N.
double thm_main_3_cos_factor(std::int64_t N, std::int64_t u);
/// min_m |d/N - m| - min_m |dM/N - m|, exact.
Rational separation_margin(std::int64_t d, std::int64_t N, std::int64_t M);

FrameCertificate certify_thm_main_3(std::int64_t N, std::int64_t M, std::span<const std::int64_t> a, std::int64_t u);

/// Clusters of at most two endpoints; only pairs from different clusters need
/// the separation condition. alpha is the largest coherence inside a cluster
/// (0 when every cluster is a singleton).
FrameCertificate certify_thm_main_3_corollary(std::int64_t N, std::int64_t M, std::span<const std::int64_t> a,
                                              std::int64_t u, const ClusterPartition& partition);
/// Uses partition_by_coherence(a, 1/N, M) with threshold M sin(1/M).
FrameCertificate certify_thm_main_3_corollary(std::int64_t N, std::int64_t M, std::span<const std::int64_t> a,
                                              std::int64_t u);

// -- [0, N) with one unit interval removed --

struct OpenRange {
  Rational lo;  // exact: 1 / (2 (N-1)^2), excluded
  double hi = 0.0;  // 1/(N-1) - beta, excluded
  BetaSolution beta;
};
OpenRange delta_range_thm_main_2(std::int64_t N);

/// Offsets j/(N-1) - j*delta, j = 0..N-2, on [0, N) minus (m, m+1).
FrameCertificate construct_thm_main_2(std::int64_t N, std::int64_t m, const Rational& delta);

/// Offsets (j-1)/N, j = 1..M, for distinct endpoints in [0, N). Throws
/// "singular" if the node matrix is numerically singular.
ExponentSystem prop_basis(std::int64_t N, std::int64_t M, std::span<const std::int64_t> a);

/// Offsets j/s on s unit intervals with distinct residues mod s: A = B = s.
FrameCertificate prop_basisMod(std::int64_t s, std::span<const std::int64_t> a);

/// Complementary lattice frequencies on [0, Delta) minus the certified domain:
/// A' = Delta - B, B' = Delta - A.
FrameCertificate complement_certificate(std::int64_t Delta, const FrameCertificate& cert);

}  // namespace expobasis
