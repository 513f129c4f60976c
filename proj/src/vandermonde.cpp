#include "expobasis/vandermonde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "expobasis/error.hpp"

namespace expobasis {

namespace {

std::vector<std::int64_t> sorted_distinct(std::span<const std::int64_t> nodes) {
  std::vector<std::int64_t> out(nodes.begin(), nodes.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw Error("duplicate_nodes", "nodes must be pairwise distinct");
  return out;
}

Complex unit_phase(double turns) {
  const double angle = 2.0 * std::numbers::pi * turns;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

std::vector<std::int64_t> nodes_of_union(const IntegerIntervalUnion& u) {
  if (u.scale <= 0) throw Error("invalid_argument", "scale must be positive");
  std::vector<std::int64_t> out;
  out.reserve(u.left_endpoints.size() * static_cast<std::size_t>(u.scale));
  for (auto e : u.left_endpoints)
    for (std::int64_t r = 0; r < u.scale; ++r) out.push_back(e + r);
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw Error("overlapping_blocks", "overlapping blocks");
  return out;
}

NodeMatrix build_gamma(std::span<const Rational> deltas, std::span<const std::int64_t> nodes) {
  if (deltas.size() != nodes.size() || deltas.empty())
    throw Error("size_mismatch", "need equally many deltas and nodes (at least one)");
  NodeMatrix m;
  m.nodes = sorted_distinct(nodes);
  const std::size_t L = m.nodes.size();
  m.entries = CMatrix(L, L);
  m.deltas.reserve(L);
  for (std::size_t j = 0; j < L; ++j) {
    m.deltas.push_back(deltas[j].to_double());
    const BigInt& a = deltas[j].num();
    const BigInt& b = deltas[j].den();
    for (std::size_t k = 0; k < L; ++k) {
      BigInt r = (a * m.nodes[k]) % b;
      if (r < 0) r += b;
      m.entries(j, k) = unit_phase(Rational(r, b).to_double());
    }
  }
  if (L >= 2 && deltas[0] == Rational(0)) {
    const Rational& h = deltas[1];
    bool uniform = true;
    for (std::size_t j = 2; j < L && uniform; ++j) uniform = deltas[j] == h * Rational(static_cast<long long>(j));
    if (uniform) m.effective_spacing = h.to_double();
  }
  return m;
}

NodeMatrix build_gamma(std::span<const double> deltas, std::span<const std::int64_t> nodes) {
  if (deltas.size() != nodes.size() || deltas.empty())
    throw Error("size_mismatch", "need equally many deltas and nodes (at least one)");
  NodeMatrix m;
  m.nodes = sorted_distinct(nodes);
  const std::size_t L = m.nodes.size();
  m.entries = CMatrix(L, L);
  m.deltas.assign(deltas.begin(), deltas.end());
  for (std::size_t j = 0; j < L; ++j)
    for (std::size_t k = 0; k < L; ++k) {
      const double x = deltas[j] * static_cast<double>(m.nodes[k]);
      m.entries(j, k) = unit_phase(x - std::floor(x));
    }
  if (L >= 2 && deltas[0] == 0.0) {
    const double h = deltas[1];
    bool uniform = true;
    for (std::size_t j = 2; j < L && uniform; ++j)
      uniform = std::abs(deltas[j] - h * static_cast<double>(j)) <= 1e-15 * static_cast<double>(j);
    if (uniform) m.effective_spacing = h;
  }
  return m;
}

std::vector<Rational> uniform_deltas(const Rational& spacing, std::size_t count) {
  std::vector<Rational> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) out.push_back(spacing * Rational(static_cast<long long>(j)));
  return out;
}

double wrap_distance(double t, double s) {
  const double d = t - s;
  const double v = std::abs(d - std::round(d));
  return v < 1e-12 ? 0.0 : v;
}

double sin_ratio(std::int64_t m, double x) {
  if (m < 1) throw Error("invalid_argument", "sin_ratio needs m >= 1");
  const double r = x - std::round(x);
  const double md = static_cast<double>(m);
  if (r == 0.0) return md;
  const double v = std::abs(std::sin(std::numbers::pi * md * r) / std::sin(std::numbers::pi * r));
  return std::min(v, md);
}

double coherence(std::int64_t node_a, std::int64_t node_b, double spacing, std::int64_t L) {
  if (node_a == node_b) throw Error("equal_nodes", "coherence needs two distinct nodes");
  return sin_ratio(L, static_cast<double>(node_a - node_b) * spacing);
}

}  // namespace expobasis
