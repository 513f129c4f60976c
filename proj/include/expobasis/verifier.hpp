#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expobasis/certificate.hpp"
#include "expobasis/domain.hpp"
#include "expobasis/matrix.hpp"
#include "expobasis/spectral.hpp"

namespace expobasis {

/// <e_lambda, e_mu> over the union: the integral of exp(2 pi i (lambda - mu) x).
Complex gram_entry(double lambda, double mu, const RationalIntervalUnion& u);

struct GramForm {
  std::vector<double> frequencies;
  /// gram(i, j) = <e_j, e_i>, so a^H G a = ||sum_j a_j e_j||^2.
  CMatrix gram;
};

inline constexpr int kDefaultNmax = 8;

GramForm build_gram(const ExponentSystem& sys, const RationalIntervalUnion& u, int n_max = kDefaultNmax);

struct RatioSample {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  int n_max = 0;
};

/// Rayleigh quotients a^H G a / a^H a for complex Gaussian coefficient vectors.
/// Trial t draws from mt19937_64 seeded with seed + t; normals by Box-Muller on
/// 53-bit uniforms.
RatioSample riesz_ratio_sample(const ExponentSystem& sys, const RationalIntervalUnion& u, int n_max, int trials,
                               std::uint64_t seed);
RatioSample riesz_ratio_sample(const GramForm& form, int trials, std::uint64_t seed, int n_max);

/// A half-open interval [lo, hi).
struct Interval {
  Rational lo;
  Rational hi;
};

std::vector<Interval> intervals_of(const RationalIntervalUnion& u);

struct RestrictionResult {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  int trials = 0;
  bool within = false;
};

/// Frame sums sum_lambda |<f, e_lambda>|^2 / ||f||^2 for random step functions
/// f supported on `support`, computed exactly through Parseval on each branch.
/// The system must be a lattice system (integer scale) on the unit intervals of
/// `superset`. Ratios are compared against [A - tol, B + tol].
RestrictionResult bessel_check_restriction(const ExponentSystem& sys, const RationalIntervalUnion& superset,
                                           std::span<const Interval> support, double A, double B, int trials,
                                           std::uint64_t seed, double tol = 1e-8);

struct RegressionCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RegressionReport {
  std::vector<RegressionCheck> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

/// The two-interval counterexamples: orthogonal unperturbed matrix, singular
/// perturbed matrices for N = 2..8, and the singular 2x2 sub-system of [0, 3).
RegressionReport regression_examples();

struct Violation {
  std::size_t index = 0;  // position in the descending spectrum
  std::string side;       // "lower" or "upper"
  double value = 0.0;     // sigma_j^2
  double bound = 0.0;     // scaled certificate bound
};

struct VerificationReport {
  FrameCertificate certificate;
  FrameConstants oracle;  // in the certificate's own coordinates
  SingularSpectrum spectrum;
  std::optional<RatioSample> sample;
  std::vector<Violation> violations;
  std::vector<std::string> notes;
  bool verdict = false;
};

inline constexpr double kContainmentTol = 1e-8;
inline constexpr double kSampleTol = 1e-6;

/// Every sigma_j^2 of the frame matrix must lie in [A rho - tol, B rho + tol].
/// With trials > 0 a ratio sample of the system is also compared to [A, B].
VerificationReport verify_certificate(const FrameCertificate& cert, int trials = 0, std::uint64_t seed = 42,
                                      int n_max = kDefaultNmax);

/// Certificate holding the exact optimal constants of a node matrix.
FrameCertificate oracle_certificate(std::span<const Rational> deltas, std::span<const std::int64_t> nodes);

}  // namespace expobasis
