#include "expobasis/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "expobasis/error.hpp"

namespace expobasis {

namespace {

void check_finite(const CMatrix& a) {
  for (const auto& z : a.data())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error("nonfinite_entry", "matrix has non-finite entries");
}

// Rotation that zeroes the off-diagonal of [[alpha, gamma], [conj(gamma), beta]].
struct Rotation {
  double c;
  double s;
  Complex phase;  // gamma / |gamma|
};

Rotation jacobi_rotation(double alpha, double beta, Complex gamma) {
  const double g = std::abs(gamma);
  const double zeta = (beta - alpha) / (2.0 * g);
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, c * t, gamma / g};
}

}  // namespace

SingularSpectrum singular_values(const CMatrix& input) {
  check_finite(input);
  // Orthogonalize the columns of the taller orientation.
  CMatrix a = input.rows() >= input.cols() ? input : input.adjoint();
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  constexpr double tol = 1e-15;
  constexpr int max_sweeps = 80;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0;
        double beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += std::norm(a(i, p));
          beta += std::norm(a(i, q));
          gamma += std::conj(a(i, p)) * a(i, q);
        }
        if (std::abs(gamma) <= tol * std::sqrt(alpha * beta) || std::abs(gamma) == 0.0) continue;
        rotated = true;
        const Rotation r = jacobi_rotation(alpha, beta, gamma);
        const Complex ph = r.phase;
        for (std::size_t i = 0; i < m; ++i) {
          const Complex ap = a(i, p);
          const Complex aq = a(i, q);
          a(i, p) = r.c * ap - r.s * std::conj(ph) * aq;
          a(i, q) = r.s * ph * ap + r.c * aq;
        }
      }
    }
    if (!rotated) break;
  }

  SingularSpectrum out;
  out.values.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    double s2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) s2 += std::norm(a(i, k));
    out.values.push_back(std::sqrt(s2));
  }
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  const double smax = out.max();
  out.condition_flag = (smax == 0.0 || out.min() < kSingularityRatio * smax) ? ConditionFlag::numerically_singular
                                                                               : ConditionFlag::nonsingular;
  return out;
}

SingularSpectrum singular_values(const NodeMatrix& gamma) { return singular_values(gamma.entries); }

std::vector<double> hermitian_eigenvalues(const CMatrix& input) {
  check_finite(input);
  if (input.rows() != input.cols()) throw Error("size_mismatch", "Hermitian eigenvalues need a square matrix");
  CMatrix a = input;
  const std::size_t n = a.rows();

  double fro2 = 0.0;
  for (const auto& z : a.data()) fro2 += std::norm(z);
  const double threshold = 1e-14 * std::sqrt(fro2);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 60 && off_norm() > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex gamma = a(p, q);
        if (std::abs(gamma) == 0.0) continue;
        const Rotation r = jacobi_rotation(a(p, p).real(), a(q, q).real(), gamma);
        const Complex ph = r.phase;
        // A <- A J
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = r.c * akp - r.s * std::conj(ph) * akq;
          a(k, q) = r.s * ph * akp + r.c * akq;
        }
        // A <- J^H A
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = r.c * apk - r.s * ph * aqk;
          a(q, k) = r.s * std::conj(ph) * apk + r.c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

FrameConstants optimal_frame_constants(const NodeMatrix& gamma) {
  const auto spec = singular_values(gamma);
  return {spec.min() * spec.min(), spec.max() * spec.max()};
}

bool is_singular(const NodeMatrix& gamma) {
  return singular_values(gamma).condition_flag == ConditionFlag::numerically_singular;
}

}  // namespace expobasis
