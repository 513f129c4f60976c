#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "expobasis/domain.hpp"
#include "expobasis/matrix.hpp"
#include "expobasis/rational.hpp"

namespace expobasis {

/// The square matrix {exp(2 pi i delta_j p_k)}: rows follow the delta order,
/// columns follow ascending node order.
struct NodeMatrix {
  CMatrix entries;
  std::vector<std::int64_t> nodes;
  std::vector<double> deltas;
  /// Set when the deltas form the progression j*h, j = 0..L-1.
  std::optional<double> effective_spacing;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Every integer covered by the dilated blocks, ascending; s*N values.
std::vector<std::int64_t> nodes_of_union(const IntegerIntervalUnion& u);

/// Phases delta_j * p_k are reduced modulo 1 in exact arithmetic before
/// exponentiation, so large nodes cost no accuracy.
NodeMatrix build_gamma(std::span<const Rational> deltas, std::span<const std::int64_t> nodes);
/// Floating fallback; phase reduction is done in double precision.
NodeMatrix build_gamma(std::span<const double> deltas, std::span<const std::int64_t> nodes);

/// {0, h, 2h, ..., (count-1)h}
std::vector<Rational> uniform_deltas(const Rational& spacing, std::size_t count);

/// Distance on R/Z. Values within 1e-12 of an integer difference are snapped to 0.
double wrap_distance(double t, double s);

/// |sin(pi m x) / sin(pi x)|, with the value m at integer x. Lies in [0, m].
double sin_ratio(std::int64_t m, double x);

/// |<column_a, column_b>| of the L-row Vandermonde matrix with step `spacing`.
double coherence(std::int64_t node_a, std::int64_t node_b, double spacing, std::int64_t L);

}  // namespace expobasis
