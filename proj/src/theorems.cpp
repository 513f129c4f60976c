#include "expobasis/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "expobasis/error.hpp"
#include "expobasis/spectral.hpp"
#include "expobasis/vandermonde.hpp"

namespace expobasis {

namespace {

constexpr double kPi = std::numbers::pi;

Rational ratio(std::int64_t p, std::int64_t q) { return Rational(BigInt(p), BigInt(q)); }

Rational torus_distance(const Rational& x) {
  const Rational f = x.frac();
  const Rational g = Rational(1) - f;
  return f < g ? f : g;
}

std::vector<std::int64_t> sorted_endpoints(std::span<const std::int64_t> a, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out(a.begin(), a.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw Error("duplicate_endpoints", "endpoints must be distinct");
  for (auto x : out)
    if (x < lo || x >= hi)
      throw Error("invalid_endpoints",
                  "endpoint " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
  return out;
}

void set_vacuity(FrameCertificate& c) {
  if (c.A <= 0.0) c.flags.emplace_back("vacuous_lower_bound");
}

}  // namespace

double g(std::int64_t M, double t) {
  const double k = std::round(t);
  if (t == k) {
    const auto ki = static_cast<std::int64_t>(k);
    return ((ki * (M - 1)) % 2 != 0) ? -static_cast<double>(M) : static_cast<double>(M);
  }
  return std::sin(kPi * static_cast<double>(M) * t) / std::sin(kPi * t);
}

BetaSolution solve_beta(std::int64_t M) {
  if (M < 2) throw Error("invalid_argument", "solve_beta needs M >= 2");
  const double md = static_cast<double>(M);
  const double target = md * std::sin(1.0 / md);
  double lo = 0.0;
  double hi = 1.0 / md;
  // g_M decreases from M at 0+ to 0 at 1/M and 0 < target < M.
  if (!(g(M, hi) < target && target < md)) throw Error("bracket_failure", "beta is not bracketed");
  BetaSolution out{M, 0.5 * (lo + hi), 0.0};
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = g(M, mid) - target;
    out.beta = mid;
    out.residual = std::abs(v);
    if (out.residual <= 1e-12) break;
    if (v > 0.0) lo = mid;
    else hi = mid;
    const double next = 0.5 * (lo + hi);
    if (next == lo || next == hi) break;
  }
  return out;
}

bool lemma_p_k_1_bound(std::int64_t M, double t) {
  if (M < 2) throw Error("invalid_argument", "M must be at least 2");
  const double md = static_cast<double>(M);
  if (!(t > 0.0 && t <= 1.0 / (2.0 * md * md))) throw Error("t_out_of_range", "need 0 < t <= 1/(2M^2)");
  const double lhs = std::abs(std::sin(kPi * md * t) / std::sin(kPi * (1.0 / md - t)));
  return lhs < md * std::sin(1.0 / md);
}

bool omega_increasing_check(std::int64_t N, double u, int grid_points) {
  const double nd = static_cast<double>(N);
  if (N < 2 || !(u > 0.0 && u < nd / 2.0)) throw Error("u_out_of_range", "need N >= 2 and 0 < u < N/2");
  if (grid_points < 2) throw Error("invalid_argument", "grid needs at least two points");
  auto omega = [&](double t) { return std::sin(kPi * (t - u) / nd) / std::sin(kPi * t / nd); };
  const double h = (nd / 2.0 - u) / grid_points;
  double prev = omega(u);
  for (int i = 1; i <= grid_points; ++i) {
    const double cur = omega(u + h * i);
    if (!(cur > prev)) return false;
    prev = cur;
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

RationalIntervalUnion perturbed_union(std::int64_t s, std::span<const std::int64_t> a, std::span<const Rational> eps) {
  if (s < 2) throw Error("s_too_small", "need at least two intervals (s = 1 gives m = 0)");
  if (a.size() != static_cast<std::size_t>(s) || eps.size() != static_cast<std::size_t>(s))
    throw Error("size_mismatch", "need s endpoints and s perturbations");
  if (a[0] != 0) throw Error("invalid_endpoints", "first endpoint must be 0");
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] <= a[i - 1]) throw Error("invalid_endpoints", "endpoints must be strictly increasing");
  if (eps[0] != Rational(0)) throw Error("epsilon0_nonzero", "the first interval keeps its position (eps_0 = 0)");
  for (const auto& e : eps)
    if (e.abs() >= ratio(1, 2)) throw Error("epsilon_too_large", "|eps| = " + e.abs().to_string() + " is not below 1/2");
  if (!residues_distinct(a, s)) throw Error("residue_clash", "endpoints are not distinct modulo s");
  std::vector<Rational> ends;
  for (std::size_t i = 0; i < a.size(); ++i) ends.push_back(Rational(static_cast<long long>(a[i])) + eps[i]);
  return RationalIntervalUnion(std::move(ends));
}

}  // namespace

DeltaRange delta_range_thm_main(std::int64_t s, std::span<const std::int64_t> a, std::span<const Rational> eps) {
  const auto domain = perturbed_union(s, a, eps);
  DeltaRange out;
  out.N = Rational(lcd(eps), BigInt(1)).to_int64();
  out.m = (Rational(out.N) * domain.left_endpoints().back()).to_int64();
  const std::int64_t L = s * out.N;
  out.beta = solve_beta(L);
  const double sd = static_cast<double>(s);
  const double nd = static_cast<double>(out.N);
  const double md = static_cast<double>(out.m);
  out.lo = Rational(1) / Rational(2 * s * s * out.N * out.N * out.N * out.m);
  out.hi = 1.0 / (sd * nd * nd * md) - out.beta.beta / (nd * md);
  if (out.lo.to_double() > out.hi)
    throw Error("empty_delta_range", "admissible |delta| window [" + std::to_string(out.lo.to_double()) + ", " +
                                         std::to_string(out.hi) + "] is empty");
  return out;
}

FrameCertificate construct_thm_main(std::int64_t s, std::span<const std::int64_t> a, std::span<const Rational> eps,
                                    const Rational& delta) {
  const auto domain = perturbed_union(s, a, eps);
  const DeltaRange range = delta_range_thm_main(s, a, eps);
  const Rational mag = delta.abs();
  if (mag < range.lo || mag.to_double() > range.hi)
    throw Error("delta_out_of_range", "|delta| = " + std::to_string(mag.to_double()) + " outside [" +
                                          std::to_string(range.lo.to_double()) + ", " + std::to_string(range.hi) +
                                          "]");

  const std::int64_t N = range.N;
  const std::int64_t L = s * N;
  const double ld = static_cast<double>(L);
  const double nd = static_cast<double>(N);
  const double md = static_cast<double>(range.m);
  const double r = std::sin(kPi / (2.0 * nd * md)) / std::sin(kPi / (2.0 * static_cast<double>(s) * nd * nd * md));
  const double q = ld * std::sin(1.0 / ld);

  std::vector<Rational> offsets;
  for (std::int64_t j = 0; j < s; ++j) offsets.push_back(ratio(j, s) + Rational(j) * delta);

  FrameCertificate c;
  c.method = Method::thm_main;
  c.A = (1.0 - q) * (ld - r) / nd;
  c.B = (1.0 + q) * (ld + r) / nd;
  c.system = ExponentSystem(std::move(offsets));
  c.domain = domain;
  c.params = {{"s", static_cast<double>(s)}, {"N", nd},          {"m", md},
              {"beta", range.beta.beta},     {"delta", delta.to_double()},
              {"delta_lo", range.lo.to_double()}, {"delta_hi", range.hi}};
  c.flags = {"m_statement_convention", "upper_bound_statement_form", "frame_scaled_progression"};
  set_vacuity(c);

  c.frame.nodes = nodes_of_union(normalize_to_integer_grid(domain));
  c.frame.deltas = uniform_deltas(ratio(1, L) + delta, static_cast<std::size_t>(L));
  c.frame.scale = Rational(N);
  return c;
}

// ---------------------------------------------------------------------------

double thm_main_3_u_threshold(std::int64_t N, std::int64_t M) {
  const double nd = static_cast<double>(N);
  const double md = static_cast<double>(M);
  const double q = md * std::sin(1.0 / md);
  if (N % 2 == 0) return nd / kPi * std::acos(q);
  return nd / kPi * std::acos(q * std::cos(kPi / (2.0 * nd))) - 0.5;
}

double thm_main_3_cos_factor(std::int64_t N, std::int64_t u) {
  const double nd = static_cast<double>(N);
  const double ud = static_cast<double>(u);
  if (N % 2 == 0) return std::abs(std::cos(kPi * ud / nd));
  const double h = kPi / (2.0 * nd);
  return std::abs(std::cos(h + kPi * ud / nd) / std::cos(h));
}

Rational separation_margin(std::int64_t d, std::int64_t N, std::int64_t M) {
  return torus_distance(ratio(d, N)) - torus_distance(ratio(d * M, N));
}

namespace {

void check_thm_main_3_inputs(std::int64_t N, std::int64_t M, std::span<const std::int64_t> a, std::int64_t u) {
  if (!(M > 2 && 2 * M <= N)) throw Error("M_out_of_range", "need 2 < M <= N/2");
  if (a.size() != static_cast<std::size_t>(M)) throw Error("size_mismatch", "need M endpoints");
  const double th = thm_main_3_u_threshold(N, M);
  if (u < 1 || !(static_cast<double>(u) > th))
    throw Error("u_below_threshold", "u = " + std::to_string(u) + " must be a positive integer above " +
                                         std::to_string(th));
}

void check_separation(std::int64_t x, std::int64_t y, std::int64_t N, std::int64_t M, std::int64_t u) {
  if (!(separation_margin(x - y, N, M) > ratio(u, N)))
    throw Error("separation_violated", "endpoints " + std::to_string(y) + " and " + std::to_string(x) +
                                           " violate the separation condition");
}

FrameCertificate thm_main_3_base(std::int64_t N, std::int64_t M, const std::vector<std::int64_t>& a, std::int64_t u) {
  FrameCertificate c;
  std::vector<Rational> offsets;
  for (std::int64_t j = 0; j < M; ++j) offsets.push_back(ratio(j, N));
  c.system = ExponentSystem(offsets);
  c.domain = RationalIntervalUnion::from_integers(a);
  c.frame.nodes = a;
  c.frame.deltas = offsets;
  c.params = {{"N", static_cast<double>(N)},
              {"M", static_cast<double>(M)},
              {"u", static_cast<double>(u)},
              {"u_threshold", thm_main_3_u_threshold(N, M)}};
  return c;
}

}  // namespace

FrameCertificate certify_thm_main_3(std::int64_t N, std::int64_t M, std::span<const std::int64_t> a, std::int64_t u) {
  check_thm_main_3_inputs(N, M, a, u);
  const auto ends = sorted_endpoints(a, 0, N);
  for (std::size_t i = 0; i < ends.size(); ++i)
    for (std::size_t j = i + 1; j < ends.size(); ++j) check_separation(ends[j], ends[i], N, M, u);

  FrameCertificate c = thm_main_3_base(N, M, ends, u);
  const double f = thm_main_3_cos_factor(N, u);
  const double md = static_cast<double>(M);
  c.method = Method::thm_main_3;
  c.A = md * (1.0 - f);
  c.B = md * (1.0 + f);
  set_vacuity(c);
  return c;
}

FrameCertificate certify_thm_main_3_corollary(std::int64_t N, std::int64_t M, std::span<const std::int64_t> a,
                                              std::int64_t u, const ClusterPartition& partition) {
  check_thm_main_3_inputs(N, M, a, u);
  sorted_endpoints(a, 0, N);
  if (partition.max_cluster_size > 2)
    throw Error("unsupported_cluster_size", "clusters may hold at most two endpoints");

  std::vector<std::size_t> cluster_of(a.size(), a.size());
  for (std::size_t c = 0; c < partition.clusters.size(); ++c)
    for (auto i : partition.clusters[c]) {
      if (i >= a.size()) throw Error("invalid_argument", "partition does not match the endpoints");
      cluster_of[i] = c;
    }
  if (std::find(cluster_of.begin(), cluster_of.end(), a.size()) != cluster_of.end())
    throw Error("invalid_argument", "partition does not cover every endpoint");

  const double spacing = 1.0 / static_cast<double>(N);
  double alpha = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (cluster_of[i] == cluster_of[j]) alpha = std::max(alpha, coherence(a[i], a[j], spacing, M));
      else check_separation(std::max(a[i], a[j]), std::min(a[i], a[j]), N, M, u);
    }

  auto ends = sorted_endpoints(a, 0, N);
  FrameCertificate c = thm_main_3_base(N, M, ends, u);
  const double f = thm_main_3_cos_factor(N, u);
  const double md = static_cast<double>(M);
  c.method = Method::thm_main_3_corollary;
  c.A = (md - alpha) * (1.0 - f);
  c.B = (md + alpha) * (1.0 + f);
  c.params["alpha"] = alpha;
  c.params["max_cluster_size"] = static_cast<double>(partition.max_cluster_size);
  c.flags.emplace_back("alpha_within_clusters");
  set_vacuity(c);
  return c;
}

FrameCertificate certify_thm_main_3_corollary(std::int64_t N, std::int64_t M, std::span<const std::int64_t> a,
                                              std::int64_t u) {
  if (!(M > 2 && 2 * M <= N)) throw Error("M_out_of_range", "need 2 < M <= N/2");
  const auto partition = partition_by_coherence(a, 1.0 / static_cast<double>(N), M);
  return certify_thm_main_3_corollary(N, M, a, u, partition);
}

// ---------------------------------------------------------------------------

OpenRange delta_range_thm_main_2(std::int64_t N) {
  if (N <= 2) throw Error("N_out_of_range", "need N > 2");
  const std::int64_t L = N - 1;
  OpenRange out;
  out.beta = solve_beta(L);
  out.lo = Rational(1) / Rational(2 * L * L);
  out.hi = 1.0 / static_cast<double>(L) - out.beta.beta;
  return out;
}

FrameCertificate construct_thm_main_2(std::int64_t N, std::int64_t m, const Rational& delta) {
  const OpenRange range = delta_range_thm_main_2(N);
  if (m < 1 || m >= N - 1) throw Error("m_out_of_range", "need 1 <= m < N-1");
  if (!(delta > range.lo && delta.to_double() < range.hi))
    throw Error("delta_out_of_range", "delta = " + std::to_string(delta.to_double()) + " outside (" +
                                          std::to_string(range.lo.to_double()) + ", " + std::to_string(range.hi) +
                                          ")");
  const std::int64_t L = N - 1;
  const double ld = static_cast<double>(L);

  std::vector<std::int64_t> ends;
  for (std::int64_t k = 0; k < N; ++k)
    if (k != m) ends.push_back(k);
  std::vector<Rational> offsets;
  for (std::int64_t j = 0; j < L; ++j) offsets.push_back(ratio(j, L) - Rational(j) * delta);

  const double q = ld * std::sin(1.0 / ld);
  const double r = 1.0 / std::sin(kPi / (2.0 * ld));
  FrameCertificate c;
  c.method = Method::thm_main_2;
  c.A = (1.0 - q) * (ld - r);
  c.B = (1.0 + q) * (ld + r);
  c.system = ExponentSystem(offsets);
  c.domain = RationalIntervalUnion::from_integers(ends);
  c.frame.nodes = ends;
  c.frame.deltas = offsets;
  c.params = {{"N", static_cast<double>(N)},
              {"m", static_cast<double>(m)},
              {"delta", delta.to_double()},
              {"beta", range.beta.beta},
              {"delta_lo", range.lo.to_double()},
              {"delta_hi", range.hi}};
  set_vacuity(c);
  return c;
}

// ---------------------------------------------------------------------------

ExponentSystem prop_basis(std::int64_t N, std::int64_t M, std::span<const std::int64_t> a) {
  if (M < 1 || M > N) throw Error("M_out_of_range", "need 1 <= M <= N");
  if (a.size() != static_cast<std::size_t>(M)) throw Error("size_mismatch", "need M endpoints");
  const auto ends = sorted_endpoints(a, 0, N);
  std::vector<Rational> offsets;
  for (std::int64_t j = 0; j < M; ++j) offsets.push_back(ratio(j, N));
  if (is_singular(build_gamma(std::span<const Rational>(offsets), ends)))
    throw Error("singular", "node matrix is numerically singular");
  return ExponentSystem(std::move(offsets));
}

FrameCertificate prop_basisMod(std::int64_t s, std::span<const std::int64_t> a) {
  if (s < 1) throw Error("invalid_argument", "need s >= 1");
  if (a.size() != static_cast<std::size_t>(s)) throw Error("size_mismatch", "need s endpoints");
  if (!residues_distinct(a, s)) throw Error("residue_clash", "endpoints are not distinct modulo s");
  std::vector<std::int64_t> ends(a.begin(), a.end());
  std::sort(ends.begin(), ends.end());
  std::vector<Rational> offsets;
  for (std::int64_t j = 0; j < s; ++j) offsets.push_back(ratio(j, s));

  FrameCertificate c;
  c.method = Method::prop_basisMod;
  c.A = c.B = static_cast<double>(s);
  c.system = ExponentSystem(offsets);
  c.domain = RationalIntervalUnion::from_integers(ends);
  c.frame.nodes = ends;
  c.frame.deltas = offsets;
  c.params = {{"s", static_cast<double>(s)}};
  return c;
}

// ---------------------------------------------------------------------------

FrameCertificate complement_certificate(std::int64_t Delta, const FrameCertificate& cert) {
  if (Delta <= 0) throw Error("invalid_argument", "Delta must be positive");
  const Rational rho = cert.system.domain_scale();
  const Rational qr = Rational(Delta) / rho;
  if (!qr.is_integer()) throw Error("not_on_lattice", "frequencies are not contained in (1/Delta)Z");
  const std::int64_t q = qr.to_int64();

  std::set<std::int64_t> used;
  for (const auto& phi : cert.system.branch_offsets()) {
    const Rational k = phi * qr;
    if (!k.is_integer())
      throw Error("not_on_lattice", "branch offset " + phi.to_string() + " is off the lattice (1/Delta)Z");
    used.insert(((k.to_int64() % q) + q) % q);
  }

  if (!cert.domain.has_integer_endpoints()) throw Error("domain_outside", "domain needs integer endpoints");
  std::set<std::int64_t> covered;
  for (const auto& e : cert.domain.left_endpoints()) {
    const std::int64_t v = e.to_int64();
    if (v < 0 || v + 1 > Delta) throw Error("domain_outside", "domain is not contained in [0, Delta)");
    covered.insert(v);
  }

  if (cert.B >= static_cast<double>(Delta))
    throw Error("complement_nonpositive", "B >= Delta leaves no positive complement constant");

  std::vector<Rational> offsets;
  for (std::int64_t r = 0; r < q; ++r)
    if (!used.contains(r)) offsets.push_back(ratio(r, q));
  std::vector<std::int64_t> ends;
  for (std::int64_t k = 0; k < Delta; ++k)
    if (!covered.contains(k)) ends.push_back(k);
  if (offsets.empty() || ends.empty()) throw Error("empty_complement", "complement is empty");

  FrameCertificate c;
  c.method = Method::complement;
  c.A = static_cast<double>(Delta) - cert.B;
  c.B = static_cast<double>(Delta) - cert.A;
  c.system = ExponentSystem(offsets, rho);
  c.domain = RationalIntervalUnion::from_integers(ends);
  c.params = {{"Delta", static_cast<double>(Delta)}};
  c.flags = {"upper_constant_corrected"};

  if (rho.is_integer()) {
    auto deltas = lattice_branches(c.system);
    if (deltas.size() == ends.size()) {
      c.frame.nodes = ends;
      c.frame.deltas = std::move(deltas);
    }
  }
  if (c.frame.empty()) c.flags.emplace_back("frame_unavailable");
  return c;
}

}  // namespace expobasis
