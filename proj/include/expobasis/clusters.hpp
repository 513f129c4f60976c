#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "expobasis/matrix.hpp"

namespace expobasis {

enum class AlphaSource { coherence, principal_angle };

/// Groups Vandermonde columns whose pairwise coherence reaches the threshold.
/// Columns are those of the L-row matrix with phases j * spacing * node.
struct ClusterPartition {
  /// Indices into the input node list. Members are sorted by node value and
  /// clusters by their smallest node, so the result does not depend on input order.
  std::vector<std::vector<std::size_t>> clusters;
  double threshold = 0.0;
  std::size_t max_cluster_size = 0;
  double cross_coherence = 0.0;
  double alpha = 0.0;
  AlphaSource alpha_source = AlphaSource::coherence;
  /// A component that is not a clique: some member pair sits below the threshold.
  bool chained = false;
};

/// L * sin(1/L)
double default_threshold(std::int64_t L);

ClusterPartition partition_by_coherence(std::span<const std::int64_t> nodes, double spacing, std::int64_t L,
                                        std::optional<double> threshold = std::nullopt);

/// Closed-form singular values of one cluster's column block, descending:
/// {sqrt(L)} for a singleton, {sqrt(L + |b|), sqrt(L - |b|)} for a pair.
std::vector<double> cluster_spectrum(std::span<const std::size_t> cluster, std::span<const std::int64_t> nodes,
                                     double spacing, std::int64_t L);

struct SpectrumSandwich {
  std::vector<double> tilde_sigmas;  // descending
  std::vector<double> lower;
  std::vector<double> upper;
};

/// sqrt(1 - L alpha) s_j <= sigma_j <= sqrt(1 + L alpha) s_j for the merged
/// cluster spectra s_j. L is the common column length.
SpectrumSandwich sandwich(const ClusterPartition& partition, const std::vector<std::vector<double>>& cluster_spectra,
                          std::int64_t L);

/// Smallest principal angle between the column spans of any two clusters.
double principal_angle_check(const ClusterPartition& partition, std::span<const std::int64_t> nodes, double spacing,
                             std::int64_t L);

/// Replaces alpha by pi/2 minus the exact smallest principal angle.
ClusterPartition refine_alpha(ClusterPartition partition, std::span<const std::int64_t> nodes, double spacing,
                              std::int64_t L);

enum class AlphaPolicy {
  coherence,
  principal_angle,
  /// principal angle as soon as any cluster holds two nodes
  automatic,
};

struct ClusterBounds {
  ClusterPartition partition;
  SpectrumSandwich bounds;
};

/// Partition, closed-form cluster spectra and sandwich in one call.
ClusterBounds bound_spectrum(std::span<const std::int64_t> nodes, double spacing, std::int64_t L,
                             AlphaPolicy policy = AlphaPolicy::automatic);

/// The L x (#nodes) matrix {exp(2 pi i j spacing p_k)}.
CMatrix vandermonde_columns(std::span<const std::int64_t> nodes, double spacing, std::int64_t L);

}  // namespace expobasis
