#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expobasis/rational.hpp"

namespace expobasis {

/// Finite union of half-open unit intervals [e, e+1) with exact rational
/// left endpoints. Endpoints are strictly increasing and at least one apart.
class RationalIntervalUnion {
 public:
  RationalIntervalUnion() = default;
  explicit RationalIntervalUnion(std::vector<Rational> left_endpoints,
                                 std::optional<std::string> label = std::nullopt);

  /// Unit intervals at the given integer positions.
  static RationalIntervalUnion from_integers(std::span<const std::int64_t> left_endpoints,
                                             std::optional<std::string> label = std::nullopt);

  const std::vector<Rational>& left_endpoints() const noexcept { return endpoints_; }
  const std::optional<std::string>& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return endpoints_.size(); }
  bool empty() const noexcept { return endpoints_.empty(); }

  Rational measure() const { return Rational(static_cast<long long>(endpoints_.size())); }
  bool is_canonical() const { return !endpoints_.empty() && endpoints_.front() == Rational(0); }
  bool has_integer_endpoints() const;
  /// Whether `inner` is a subset of this union (up to measure zero).
  bool contains(const RationalIntervalUnion& inner) const;

  friend bool operator==(const RationalIntervalUnion&, const RationalIntervalUnion&) = default;

 private:
  std::vector<Rational> endpoints_;
  std::optional<std::string> label_;
};

struct Canonicalized {
  RationalIntervalUnion domain;
  Rational shift;  // amount subtracted from every endpoint
};

/// Translates the union so that its first endpoint is 0.
Canonicalized canonicalize(const RationalIntervalUnion& u);

/// A union dilated onto the integer grid: blocks [e, e + scale) for each
/// stored endpoint e.
struct IntegerIntervalUnion {
  std::vector<std::int64_t> left_endpoints;
  std::int64_t scale = 1;
};

/// Dilates by N = lcd(endpoints) so every endpoint becomes an exact integer.
IntegerIntervalUnion normalize_to_integer_grid(const RationalIntervalUnion& u);

/// Unit intervals covering the dilated blocks, i.e. the union N*u written in
/// unit-interval form.
RationalIntervalUnion as_unit_union(const IntegerIntervalUnion& u);

bool residues_distinct(std::span<const std::int64_t> endpoints, std::int64_t s);

/// Frequencies {(n + phi_j) / rho : n in Z} for each branch offset phi_j.
class ExponentSystem {
 public:
  ExponentSystem() = default;
  explicit ExponentSystem(std::vector<Rational> branch_offsets, Rational domain_scale = Rational(1));

  const std::vector<Rational>& branch_offsets() const noexcept { return offsets_; }
  const Rational& domain_scale() const noexcept { return scale_; }
  std::size_t branch_count() const noexcept { return offsets_.size(); }

  /// Truncated frequency list, branch-major, n from -n_max to n_max.
  std::vector<double> frequencies(int n_max) const;

  friend bool operator==(const ExponentSystem&, const ExponentSystem&) = default;

 private:
  std::vector<Rational> offsets_;
  Rational scale_{1};
};

/// Frame/Riesz constants of a system; dilation by rho multiplies both by rho.
struct FrameConstants {
  double A = 0.0;
  double B = 0.0;
};

/// Frequencies divided by rho (the system for the domain v + rho*D).
/// Translation leaves the frequency set unchanged.
ExponentSystem rescale_system(const ExponentSystem& sys, const Rational& rho,
                              const Rational& shift = Rational(0));
FrameConstants rescale_constants(FrameConstants c, double rho);

/// For an integer domain scale rho, rewrites the frequency set as a union of
/// rho * branches of the form {n + psi}. This is the exact branch form used on
/// the dilated domain.
std::vector<Rational> lattice_branches(const ExponentSystem& sys);

}  // namespace expobasis
