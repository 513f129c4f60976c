#include "expobasis/clusters.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include "expobasis/error.hpp"
#include "expobasis/spectral.hpp"
#include "expobasis/vandermonde.hpp"

namespace expobasis {

namespace {

double pair_coherence(std::int64_t a, std::int64_t b, double spacing, std::int64_t L) {
  return sin_ratio(L, static_cast<double>(a - b) * spacing);
}

std::vector<std::size_t> sorted_order(std::span<const std::int64_t> nodes) {
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return nodes[i] < nodes[j]; });
  return order;
}

}  // namespace

double default_threshold(std::int64_t L) {
  const double l = static_cast<double>(L);
  return l * std::sin(1.0 / l);
}

CMatrix vandermonde_columns(std::span<const std::int64_t> nodes, double spacing, std::int64_t L) {
  CMatrix out(static_cast<std::size_t>(L), nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double step = std::remainder(spacing * static_cast<double>(nodes[k]), 1.0);
    for (std::int64_t j = 0; j < L; ++j) {
      const double phase = std::remainder(step * static_cast<double>(j), 1.0);
      out(static_cast<std::size_t>(j), k) = std::polar(1.0, 2.0 * std::numbers::pi * phase);
    }
  }
  return out;
}

ClusterPartition partition_by_coherence(std::span<const std::int64_t> nodes, double spacing, std::int64_t L,
                                        std::optional<double> threshold) {
  if (L < 1) throw Error("invalid_argument", "column length must be positive");
  const double tau = threshold.value_or(default_threshold(L));
  if (!(tau > 0.0 && tau < static_cast<double>(L)))
    throw Error("invalid_argument", "threshold must lie in (0, L)");

  const std::size_t n = nodes.size();
  const auto order = sorted_order(nodes);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  std::vector<std::vector<double>> coh(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (nodes[order[i]] == nodes[order[j]]) throw Error("equal_nodes", "partition needs distinct nodes");
      const double c = pair_coherence(nodes[order[i]], nodes[order[j]], spacing, L);
      coh[i][j] = coh[j][i] = c;
      if (c >= tau) parent[find(i)] = find(j);
    }
  }

  ClusterPartition out;
  out.threshold = tau;
  std::vector<std::vector<std::size_t>> by_root(n);
  for (std::size_t i = 0; i < n; ++i) by_root[find(i)].push_back(i);
  // Sorted positions in ascending order keep the output canonical.
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& g = by_root[find(i)];
    if (!g.empty() && g.front() == i) groups.push_back(g);
  }

  std::vector<std::size_t> group_of(n);
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (auto i : groups[g]) group_of[i] = g;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (group_of[i] != group_of[j]) out.cross_coherence = std::max(out.cross_coherence, coh[i][j]);
      else if (coh[i][j] < tau) out.chained = true;
    }

  for (const auto& g : groups) {
    std::vector<std::size_t> members;
    for (auto i : g) members.push_back(order[i]);
    out.max_cluster_size = std::max(out.max_cluster_size, members.size());
    out.clusters.push_back(std::move(members));
  }
  out.alpha = std::asin(std::min(1.0, out.cross_coherence / static_cast<double>(L)));
  return out;
}

std::vector<double> cluster_spectrum(std::span<const std::size_t> cluster, std::span<const std::int64_t> nodes,
                                     double spacing, std::int64_t L) {
  const double l = static_cast<double>(L);
  if (cluster.size() == 1) return {std::sqrt(l)};
  if (cluster.size() == 2) {
    const double b = pair_coherence(nodes[cluster[0]], nodes[cluster[1]], spacing, L);
    return {std::sqrt(l + b), std::sqrt(std::max(0.0, l - b))};
  }
  throw Error("unsupported_cluster_size",
              "closed-form spectra exist only for clusters of size 1 or 2, got " + std::to_string(cluster.size()));
}

SpectrumSandwich sandwich(const ClusterPartition& partition, const std::vector<std::vector<double>>& cluster_spectra,
                          std::int64_t L) {
  if (partition.max_cluster_size > 2)
    throw Error("unsupported_cluster_size", "partition has a cluster of size " +
                                                std::to_string(partition.max_cluster_size));
  const double la = static_cast<double>(L) * partition.alpha;
  if (la >= 1.0)
    throw Error("angle_condition_violated", "L * alpha = " + std::to_string(la) + " is not below 1");

  SpectrumSandwich out;
  for (const auto& s : cluster_spectra) out.tilde_sigmas.insert(out.tilde_sigmas.end(), s.begin(), s.end());
  std::sort(out.tilde_sigmas.begin(), out.tilde_sigmas.end(), std::greater<>());
  const double lo = std::sqrt(1.0 - la);
  const double hi = std::sqrt(1.0 + la);
  for (double s : out.tilde_sigmas) {
    out.lower.push_back(lo * s);
    out.upper.push_back(hi * s);
  }
  return out;
}

namespace {

// Orthonormal basis of the column span by modified Gram-Schmidt.
std::vector<std::vector<Complex>> orthonormal_block(const CMatrix& cols) {
  std::vector<std::vector<Complex>> q;
  for (std::size_t k = 0; k < cols.cols(); ++k) {
    std::vector<Complex> v(cols.rows());
    for (std::size_t i = 0; i < cols.rows(); ++i) v[i] = cols(i, k);
    const double original = std::sqrt(std::real(inner(v, v)));
    for (const auto& e : q) {
      const Complex proj = inner(e, v);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * e[i];
    }
    const double norm = std::sqrt(std::real(inner(v, v)));
    if (norm <= 1e-10 * original)
      throw Error("rank_deficient_cluster", "cluster columns are linearly dependent");
    for (auto& z : v) z /= norm;
    q.push_back(std::move(v));
  }
  return q;
}

}  // namespace

double principal_angle_check(const ClusterPartition& partition, std::span<const std::int64_t> nodes, double spacing,
                             std::int64_t L) {
  const CMatrix all = vandermonde_columns(nodes, spacing, L);
  std::vector<std::vector<std::vector<Complex>>> bases;
  for (const auto& c : partition.clusters) bases.push_back(orthonormal_block(all.columns(c)));

  double max_cos = 0.0;
  for (std::size_t a = 0; a < bases.size(); ++a)
    for (std::size_t b = a + 1; b < bases.size(); ++b) {
      CMatrix cross(bases[a].size(), bases[b].size());
      for (std::size_t i = 0; i < bases[a].size(); ++i)
        for (std::size_t j = 0; j < bases[b].size(); ++j) cross(i, j) = inner(bases[a][i], bases[b][j]);
      max_cos = std::max(max_cos, singular_values(cross).max());
    }
  return std::acos(std::min(1.0, max_cos));
}

ClusterPartition refine_alpha(ClusterPartition partition, std::span<const std::int64_t> nodes, double spacing,
                              std::int64_t L) {
  partition.alpha = std::max(0.0, std::numbers::pi / 2 - principal_angle_check(partition, nodes, spacing, L));
  partition.alpha_source = AlphaSource::principal_angle;
  return partition;
}

ClusterBounds bound_spectrum(std::span<const std::int64_t> nodes, double spacing, std::int64_t L, AlphaPolicy policy) {
  ClusterBounds out{partition_by_coherence(nodes, spacing, L), {}};
  std::vector<std::vector<double>> spectra;
  for (const auto& c : out.partition.clusters) spectra.push_back(cluster_spectrum(c, nodes, spacing, L));
  const bool exact = policy == AlphaPolicy::principal_angle ||
                     (policy == AlphaPolicy::automatic && out.partition.max_cluster_size == 2);
  if (exact) out.partition = refine_alpha(out.partition, nodes, spacing, L);
  out.bounds = sandwich(out.partition, spectra, L);
  return out;
}

}  // namespace expobasis
