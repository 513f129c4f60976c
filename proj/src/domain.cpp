#include "expobasis/domain.hpp"

#include <algorithm>
#include <set>

#include "expobasis/error.hpp"

namespace expobasis {

RationalIntervalUnion::RationalIntervalUnion(std::vector<Rational> left_endpoints,
                                             std::optional<std::string> label)
    : endpoints_(std::move(left_endpoints)), label_(std::move(label)) {
  for (std::size_t i = 1; i < endpoints_.size(); ++i) {
    if (endpoints_[i] <= endpoints_[i - 1])
      throw Error("invalid_domain", "endpoints must be strictly increasing (at " +
                                        endpoints_[i].to_string() + ")");
    if (endpoints_[i] - endpoints_[i - 1] < Rational(1))
      throw Error("overlapping_intervals", "intervals starting at " + endpoints_[i - 1].to_string() +
                                               " and " + endpoints_[i].to_string() + " overlap");
  }
}

RationalIntervalUnion RationalIntervalUnion::from_integers(std::span<const std::int64_t> left_endpoints,
                                                           std::optional<std::string> label) {
  std::vector<Rational> e;
  e.reserve(left_endpoints.size());
  for (auto v : left_endpoints) e.emplace_back(static_cast<long long>(v));
  return RationalIntervalUnion(std::move(e), std::move(label));
}

bool RationalIntervalUnion::has_integer_endpoints() const {
  return std::all_of(endpoints_.begin(), endpoints_.end(), [](const Rational& r) { return r.is_integer(); });
}

bool RationalIntervalUnion::contains(const RationalIntervalUnion& inner) const {
  // Each inner unit interval must be covered by at most two adjacent outer ones.
  for (const auto& e : inner.endpoints_) {
    Rational lo = e;
    const Rational hi = e + Rational(1);
    for (const auto& o : endpoints_) {
      if (o <= lo && lo < o + Rational(1)) lo = o + Rational(1);
      if (lo >= hi) break;
    }
    if (lo < hi) return false;
  }
  return true;
}

Canonicalized canonicalize(const RationalIntervalUnion& u) {
  if (u.empty()) throw Error("empty_input", "empty input");
  Rational shift = u.left_endpoints().front();
  std::vector<Rational> e;
  e.reserve(u.size());
  for (const auto& x : u.left_endpoints()) e.push_back(x - shift);
  return {RationalIntervalUnion(std::move(e), u.label()), shift};
}

IntegerIntervalUnion normalize_to_integer_grid(const RationalIntervalUnion& u) {
  if (u.empty()) throw Error("empty_input", "empty input");
  BigInt n = lcd(u.left_endpoints());
  Rational scale(n, BigInt(1));
  IntegerIntervalUnion out;
  try {
    out.scale = scale.to_int64();
  } catch (const Error&) {
    throw Error("overflow", "grid scale " + scale.to_string() + " overflows 64-bit integers");
  }
  for (const auto& e : u.left_endpoints()) {
    Rational scaled = e * scale;
    try {
      out.left_endpoints.push_back(scaled.to_int64());
    } catch (const Error&) {
      throw Error("overflow", "endpoint " + e.to_string() + " overflows after scaling by " + scale.to_string());
    }
  }
  return out;
}

RationalIntervalUnion as_unit_union(const IntegerIntervalUnion& u) {
  std::vector<std::int64_t> cells;
  for (auto e : u.left_endpoints)
    for (std::int64_t r = 0; r < u.scale; ++r) cells.push_back(e + r);
  std::sort(cells.begin(), cells.end());
  return RationalIntervalUnion::from_integers(cells);
}

bool residues_distinct(std::span<const std::int64_t> endpoints, std::int64_t s) {
  if (s <= 0) throw Error("invalid_argument", "modulus must be positive");
  std::set<std::int64_t> seen;
  for (auto e : endpoints) {
    std::int64_t r = ((e % s) + s) % s;
    if (!seen.insert(r).second) return false;
  }
  return true;
}

ExponentSystem::ExponentSystem(std::vector<Rational> branch_offsets, Rational domain_scale)
    : offsets_(std::move(branch_offsets)), scale_(std::move(domain_scale)) {
  if (scale_ <= Rational(0)) throw Error("invalid_argument", "domain scale must be positive");
  std::set<Rational> residues;
  for (const auto& phi : offsets_) {
    if (!residues.insert(phi.frac()).second)
      throw Error("duplicate_branch", "branch offset " + phi.to_string() + " coincides with another modulo 1");
  }
}

std::vector<double> ExponentSystem::frequencies(int n_max) const {
  std::vector<double> out;
  out.reserve(offsets_.size() * static_cast<std::size_t>(2 * n_max + 1));
  for (const auto& phi : offsets_) {
    for (int n = -n_max; n <= n_max; ++n) out.push_back(((Rational(n) + phi) / scale_).to_double());
  }
  return out;
}

ExponentSystem rescale_system(const ExponentSystem& sys, const Rational& rho, const Rational& /*shift*/) {
  if (rho <= Rational(0)) throw Error("invalid_argument", "rescale factor must be positive");
  return ExponentSystem(sys.branch_offsets(), sys.domain_scale() * rho);
}

FrameConstants rescale_constants(FrameConstants c, double rho) {
  if (!(rho > 0.0)) throw Error("invalid_argument", "rescale factor must be positive");
  return {c.A * rho, c.B * rho};
}

std::vector<Rational> lattice_branches(const ExponentSystem& sys) {
  const Rational& rho = sys.domain_scale();
  if (!rho.is_integer()) throw Error("invalid_argument", "branch form needs an integer domain scale");
  const std::int64_t n = rho.to_int64();
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(n) * sys.branch_count());
  for (std::int64_t r = 0; r < n; ++r)
    for (const auto& phi : sys.branch_offsets()) out.push_back((Rational(r) + phi) / rho);
  return out;
}

}  // namespace expobasis
