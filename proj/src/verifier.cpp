#include "expobasis/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "expobasis/error.hpp"
#include "expobasis/vandermonde.hpp"

namespace expobasis {

namespace {

constexpr double kPi = std::numbers::pi;

Complex unit_phase(double turns) {
  const double r = std::remainder(turns, 1.0);
  return std::polar(1.0, 2.0 * kPi * r);
}

Complex unit_phase(const Rational& turns) { return unit_phase(turns.frac().to_double()); }

// Standard complex normal by Box-Muller. Uniforms use the top 53 bits.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}
  Complex next() {
    const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;          // [0, 1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
  }

 private:
  std::mt19937_64 rng_;
};

std::vector<Complex> draw_nonzero(GaussianSource& src, std::size_t n) {
  std::vector<Complex> a(n);
  for (;;) {
    double norm = 0.0;
    for (auto& z : a) {
      z = src.next();
      norm += std::norm(z);
    }
    if (norm > 0.0) return a;
  }
}

}  // namespace

Complex gram_entry(double lambda, double mu, const RationalIntervalUnion& u) {
  const double d = lambda - mu;
  if (d == 0.0) return static_cast<double>(u.size());
  if (d == std::round(d)) return 0.0;
  const double sinc = std::sin(kPi * d) / (kPi * d);
  Complex sum = 0.0;
  for (const auto& e : u.left_endpoints()) {
    const double center = e.to_double() + 0.5;
    sum += unit_phase(d * center);
  }
  return sum * sinc;
}

GramForm build_gram(const ExponentSystem& sys, const RationalIntervalUnion& u, int n_max) {
  if (n_max < 0) throw Error("invalid_argument", "n_max must be nonnegative");
  GramForm out;
  out.frequencies = sys.frequencies(n_max);
  const std::size_t n = out.frequencies.size();
  out.gram = CMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out.gram(i, i) = static_cast<double>(u.size());
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = gram_entry(out.frequencies[j], out.frequencies[i], u);
      out.gram(i, j) = v;
      out.gram(j, i) = std::conj(v);
    }
  }
  return out;
}

RatioSample riesz_ratio_sample(const GramForm& form, int trials, std::uint64_t seed, int n_max) {
  if (trials < 1) throw Error("invalid_argument", "need at least one trial");
  const std::size_t n = form.frequencies.size();
  RatioSample out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), trials, seed,
                  n_max};
  for (int t = 0; t < trials; ++t) {
    GaussianSource src(seed + static_cast<std::uint64_t>(t));
    const auto a = draw_nonzero(src, n);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += form.gram(i, j) * a[j];
      num += std::real(std::conj(a[i]) * row);
      den += std::norm(a[i]);
    }
    const double r = num / den;
    out.min_ratio = std::min(out.min_ratio, r);
    out.max_ratio = std::max(out.max_ratio, r);
  }
  return out;
}

RatioSample riesz_ratio_sample(const ExponentSystem& sys, const RationalIntervalUnion& u, int n_max, int trials,
                               std::uint64_t seed) {
  if (n_max < 1) throw Error("invalid_argument", "n_max must be at least 1");
  return riesz_ratio_sample(build_gram(sys, u, n_max), trials, seed, n_max);
}

std::vector<Interval> intervals_of(const RationalIntervalUnion& u) {
  std::vector<Interval> out;
  for (const auto& e : u.left_endpoints()) out.push_back({e, e + Rational(1)});
  return out;
}

RestrictionResult bessel_check_restriction(const ExponentSystem& sys, const RationalIntervalUnion& superset,
                                           std::span<const Interval> support, double A, double B, int trials,
                                           std::uint64_t seed, double tol) {
  if (trials < 1) throw Error("invalid_argument", "need at least one trial");
  if (!superset.has_integer_endpoints()) throw Error("invalid_argument", "superset needs integer endpoints");
  const auto branches = lattice_branches(sys);
  const auto& ends = superset.left_endpoints();
  const std::size_t K = ends.size();

  // Containment, and a cell count per unit that aligns with every support endpoint.
  BigInt grid = 1;
  for (const auto& iv : support) {
    if (!(iv.lo < iv.hi)) throw Error("invalid_argument", "support intervals must be nonempty");
    Rational lo = iv.lo;
    for (const auto& e : ends)
      if (e <= lo && lo < e + Rational(1)) lo = e + Rational(1);
    if (lo < iv.hi) throw Error("not_contained", "support is not contained in the superset");
    for (const auto* x : {&iv.lo, &iv.hi}) grid = boost::multiprecision::lcm(grid, x->den());
  }
  grid *= 4;
  if (grid > 4096) throw Error("unsupported_support", "support endpoints need a grid finer than 4096 cells");
  const auto P = static_cast<std::int64_t>(grid);

  // H = conj(Gamma^H Gamma) over the superset's unit intervals.
  CMatrix gamma(branches.size(), K);
  for (std::size_t j = 0; j < branches.size(); ++j)
    for (std::size_t k = 0; k < K; ++k) gamma(j, k) = unit_phase(branches[j] * ends[k]);
  CMatrix H(K, K);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t l = 0; l < K; ++l) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j < branches.size(); ++j) acc += std::conj(gamma(j, k)) * gamma(j, l);
      H(k, l) = std::conj(acc);
    }

  // cell c of interval k is [e_k + c/P, e_k + (c+1)/P)
  std::vector<std::vector<bool>> active(K, std::vector<bool>(static_cast<std::size_t>(P), false));
  bool any = false;
  for (std::size_t k = 0; k < K; ++k)
    for (std::int64_t c = 0; c < P; ++c) {
      const Rational lo = ends[k] + Rational(BigInt(c), grid);
      const Rational hi = ends[k] + Rational(BigInt(c + 1), grid);
      for (const auto& iv : support)
        if (iv.lo <= lo && hi <= iv.hi) {
          active[k][static_cast<std::size_t>(c)] = true;
          any = true;
        }
    }
  if (!any) throw Error("empty_support", "support has no cells");

  RestrictionResult out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), trials,
                        false};
  for (int t = 0; t < trials; ++t) {
    GaussianSource src(seed + static_cast<std::uint64_t>(t));
    double num = 0.0;
    double den = 0.0;
    for (std::int64_t c = 0; c < P; ++c) {
      std::vector<Complex> F(K, 0.0);
      for (std::size_t k = 0; k < K; ++k)
        if (active[k][static_cast<std::size_t>(c)]) F[k] = src.next();
      for (std::size_t k = 0; k < K; ++k) {
        Complex row = 0.0;
        for (std::size_t l = 0; l < K; ++l) row += H(k, l) * F[l];
        num += std::real(std::conj(F[k]) * row);
        den += std::norm(F[k]);
      }
    }
    if (den == 0.0) {
      --t;
      continue;
    }
    out.min_ratio = std::min(out.min_ratio, num / den);
    out.max_ratio = std::max(out.max_ratio, num / den);
  }
  out.within = out.min_ratio >= A - tol && out.max_ratio <= B + tol;
  return out;
}

RegressionReport regression_examples() {
  RegressionReport rep;
  auto add = [&](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  {
    const std::vector<Rational> deltas{Rational(0), Rational(1) / Rational(2)};
    const std::vector<std::int64_t> nodes{0, 3};
    const auto c = optimal_frame_constants(build_gamma(std::span<const Rational>(deltas), nodes));
    const bool ok = std::abs(c.A - 2.0) <= 1e-10 && std::abs(c.B - 2.0) <= 1e-10;
    add("two_intervals_orthogonal", ok, "A_opt = " + std::to_string(c.A) + ", B_opt = " + std::to_string(c.B));
  }

  for (std::int64_t N = 2; N <= 8; ++N) {
    const RationalIntervalUnion dom({Rational(0), Rational(3) - Rational(1) / Rational(N)});
    const auto grid = normalize_to_integer_grid(dom);
    const auto nodes = nodes_of_union(grid);
    const std::int64_t L = 2 * N;
    const auto deltas = uniform_deltas(Rational(1) / Rational(L), static_cast<std::size_t>(L));
    const auto spec = singular_values(build_gamma(std::span<const Rational>(deltas), nodes));
    const bool coincide = wrap_distance(static_cast<double>(3 * N - 1) / static_cast<double>(L),
                                        static_cast<double>(N - 1) / static_cast<double>(L)) == 0.0;
    const bool ok = grid.scale == N && nodes.size() == static_cast<std::size_t>(L) &&
                    spec.condition_flag == ConditionFlag::numerically_singular && coincide;
    add("perturbed_two_intervals_N" + std::to_string(N), ok,
        "sigma_min / sigma_max = " + std::to_string(spec.min() / spec.max()));
  }

  {
    const std::vector<Rational> deltas{Rational(0), Rational(1) / Rational(2)};
    const std::vector<std::int64_t> nodes{0, 2};
    const auto spec = singular_values(build_gamma(std::span<const Rational>(deltas), nodes));
    const bool ok = spec.values.size() == 2 && std::abs(spec.values[0] - 2.0) <= 1e-10 &&
                    std::abs(spec.values[1]) <= 1e-10 && spec.condition_flag == ConditionFlag::numerically_singular;
    add("half_density_on_three", ok,
        "sigma = {" + std::to_string(spec.values[0]) + ", " + std::to_string(spec.values[1]) + "}");
  }
  return rep;
}

FrameCertificate oracle_certificate(std::span<const Rational> deltas, std::span<const std::int64_t> nodes) {
  const auto gamma = build_gamma(deltas, nodes);
  const auto c = optimal_frame_constants(gamma);
  FrameCertificate cert;
  cert.method = Method::oracle;
  cert.A = c.A;
  cert.B = c.B;
  cert.system = ExponentSystem(std::vector<Rational>(deltas.begin(), deltas.end()));
  cert.domain = RationalIntervalUnion::from_integers(gamma.nodes);
  cert.frame.nodes = gamma.nodes;
  cert.frame.deltas.assign(deltas.begin(), deltas.end());
  if (is_singular(gamma)) cert.flags.emplace_back("numerically_singular");
  return cert;
}

VerificationReport verify_certificate(const FrameCertificate& cert, int trials, std::uint64_t seed, int n_max) {
  if (cert.frame.empty()) throw Error("frame_unavailable", "certificate carries no node matrix to check");
  VerificationReport rep;
  rep.certificate = cert;
  rep.spectrum = singular_values(build_gamma(std::span<const Rational>(cert.frame.deltas), cert.frame.nodes));
  const double rho = cert.frame.scale.to_double();
  rep.oracle = {rep.spectrum.min() * rep.spectrum.min() / rho, rep.spectrum.max() * rep.spectrum.max() / rho};

  const double lo = cert.A * rho;
  const double hi = cert.B * rho;
  for (std::size_t j = 0; j < rep.spectrum.values.size(); ++j) {
    const double s2 = rep.spectrum.values[j] * rep.spectrum.values[j];
    if (s2 < lo - kContainmentTol) rep.violations.push_back({j, "lower", s2, lo});
    if (s2 > hi + kContainmentTol) rep.violations.push_back({j, "upper", s2, hi});
  }
  if (cert.A > 0.0 && rep.spectrum.condition_flag == ConditionFlag::numerically_singular)
    rep.notes.emplace_back("positive lower bound on a numerically singular matrix");

  if (trials > 0) {
    rep.sample = riesz_ratio_sample(cert.system, cert.domain, n_max, trials, seed);
    if (rep.sample->min_ratio < cert.A - kSampleTol)
      rep.violations.push_back({0, "sample_lower", rep.sample->min_ratio, cert.A});
    if (rep.sample->max_ratio > cert.B + kSampleTol)
      rep.violations.push_back({0, "sample_upper", rep.sample->max_ratio, cert.B});
  }
  rep.verdict = rep.violations.empty();
  return rep;
}

}  // namespace expobasis
