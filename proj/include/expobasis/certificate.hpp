#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expobasis/domain.hpp"
#include "expobasis/rational.hpp"

namespace expobasis {

enum class Method { thm_main, thm_main_3, thm_main_3_corollary, thm_main_2, prop_basisMod, oracle, complement };

std::string_view to_string(Method m);
/// Throws Error("unknown_method").
Method method_from_string(std::string_view name);

/// The node matrix a certificate is checked against. The oracle's squared
/// singular values must lie in [A * scale, B * scale].
struct VerificationFrame {
  std::vector<std::int64_t> nodes;
  std::vector<Rational> deltas;
  Rational scale{1};

  bool empty() const noexcept { return nodes.empty(); }
  friend bool operator==(const VerificationFrame&, const VerificationFrame&) = default;
};

struct FrameCertificate {
  double A = 0.0;
  double B = 0.0;
  Method method = Method::oracle;
  std::map<std::string, double> params;
  std::vector<std::string> flags;
  ExponentSystem system;
  RationalIntervalUnion domain;
  VerificationFrame frame;

  bool has_flag(std::string_view f) const {
    for (const auto& x : flags)
      if (x == f) return true;
    return false;
  }
  std::optional<double> param(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
  }
};

}  // namespace expobasis
