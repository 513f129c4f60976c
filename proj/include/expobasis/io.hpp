#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "expobasis/certificate.hpp"
#include "expobasis/clusters.hpp"
#include "expobasis/domain.hpp"
#include "expobasis/error.hpp"
#include "expobasis/matrix.hpp"
#include "expobasis/spectral.hpp"
#include "expobasis/theorems.hpp"
#include "expobasis/verifier.hpp"

namespace expobasis {

using Json = nlohmann::json;

inline constexpr std::string_view kSchema = "v1";

/// Malformed JSON text, with 1-based line and column of the offending byte.
class JsonSyntaxError : public Error {
 public:
  JsonSyntaxError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

Json parse_json(std::string_view text);

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json domain_to_json(const RationalIntervalUnion& u);
/// Validates the schema tag when present and every domain invariant.
RationalIntervalUnion domain_from_json(const Json& j);

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);
/// Row-major interleaved re/im float64, little-endian, no header.
void write_matrix_binary(std::ostream& out, const CMatrix& m);
CMatrix read_matrix_binary(std::istream& in, std::size_t rows, std::size_t cols);

Json certificate_to_json(const FrameCertificate& c);
FrameCertificate certificate_from_json(const Json& j);

Json spectrum_to_json(const SingularSpectrum& s);
Json beta_to_json(const BetaSolution& b);
Json partition_to_json(const ClusterPartition& p);
Json sandwich_to_json(const SpectrumSandwich& s);
Json report_to_json(const VerificationReport& r);
Json regression_to_json(const RegressionReport& r);

}  // namespace expobasis
