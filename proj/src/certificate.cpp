#include "expobasis/certificate.hpp"

#include <array>
#include <utility>

#include "expobasis/error.hpp"

namespace expobasis {

namespace {
constexpr std::array<std::pair<Method, std::string_view>, 7> kNames{{
    {Method::thm_main, "thm_main"},
    {Method::thm_main_3, "thm_main_3"},
    {Method::thm_main_3_corollary, "thm_main_3_corollary"},
    {Method::thm_main_2, "thm_main_2"},
    {Method::prop_basisMod, "prop_basisMod"},
    {Method::oracle, "oracle"},
    {Method::complement, "complement"},
}};
}  // namespace

std::string_view to_string(Method m) {
  for (const auto& [k, v] : kNames)
    if (k == m) return v;
  return "unknown";
}

Method method_from_string(std::string_view name) {
  for (const auto& [k, v] : kNames)
    if (v == name) return k;
  throw Error("unknown_method", "unknown certificate method '" + std::string(name) + "'");
}

}  // namespace expobasis
