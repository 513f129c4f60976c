#include "expobasis/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

namespace expobasis {

JsonSyntaxError::JsonSyntaxError(std::size_t line, std::size_t column, const std::string& what)
    : Error("malformed_json", "malformed JSON at line " + std::to_string(line) + ", column " +
                                  std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t pos = e.byte == 0 ? 0 : std::min(e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw JsonSyntaxError(line, col, e.what());
  }
}

namespace {

Json bigint_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw Error("invalid_json", "expected an integer, got " + j.dump());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error("invalid_json", std::string("missing field '") + key + "'");
  return j.at(key);
}

void check_schema(const Json& j) {
  if (j.is_object() && j.contains("schema") && j.at("schema") != kSchema)
    throw Error("invalid_json", "unsupported schema " + j.at("schema").dump());
}

double number(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) throw Error("invalid_json", std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

Json rationals_to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(rational_to_json(r));
  return out;
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw Error("invalid_json", "expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

}  // namespace

Json rational_to_json(const Rational& r) { return {{"num", bigint_to_json(r.num())}, {"den", bigint_to_json(r.den())}}; }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  const BigInt den = bigint_from_json(field(j, "den"));
  if (den <= 0) throw Error("invalid_json", "denominator must be positive");
  return Rational(bigint_from_json(field(j, "num")), den);
}

Json domain_to_json(const RationalIntervalUnion& u) {
  Json j{{"schema", kSchema}, {"endpoints", rationals_to_json(u.left_endpoints())}};
  if (u.label()) j["label"] = *u.label();
  return j;
}

RationalIntervalUnion domain_from_json(const Json& j) {
  check_schema(j);
  std::optional<std::string> label;
  if (j.contains("label") && !j.at("label").is_null()) {
    if (!j.at("label").is_string()) throw Error("invalid_json", "label must be a string");
    label = j.at("label").get<std::string>();
  }
  return RationalIntervalUnion(rationals_from_json(field(j, "endpoints")), label);
}

Json matrix_to_json(const CMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    Json c = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) {
      r.push_back(m(i, k).real());
      c.push_back(m(i, k).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

CMatrix matrix_from_json(const Json& j) {
  const auto rows = field(j, "rows").get<std::size_t>();
  const auto cols = field(j, "cols").get<std::size_t>();
  const Json& re = field(j, "re");
  const Json& im = field(j, "im");
  if (re.size() != rows || im.size() != rows) throw Error("invalid_json", "matrix row count mismatch");
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (re[i].size() != cols || im[i].size() != cols) throw Error("invalid_json", "matrix column count mismatch");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = {re[i][k].get<double>(), im[i][k].get<double>()};
  }
  return m;
}

namespace {

void put_f64(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  char buf[8];
  for (int b = 0; b < 8; ++b) buf[b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
  out.write(buf, 8);
}

double get_f64(std::istream& in) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), 8)) throw Error("invalid_binary", "truncated matrix data");
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(buf[b]) << (8 * b);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_matrix_binary(std::ostream& out, const CMatrix& m) {
  for (const auto& z : m.data()) {
    put_f64(out, z.real());
    put_f64(out, z.imag());
  }
}

CMatrix read_matrix_binary(std::istream& in, std::size_t rows, std::size_t cols) {
  CMatrix m(rows, cols);
  for (auto& z : m.data()) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    z = {re, im};
  }
  return m;
}

Json certificate_to_json(const FrameCertificate& c) {
  Json params = Json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  Json j{{"schema", kSchema},
         {"method", to_string(c.method)},
         {"A", c.A},
         {"B", c.B},
         {"params", std::move(params)},
         {"flags", c.flags},
         {"domain", domain_to_json(c.domain)},
         {"offsets", rationals_to_json(c.system.branch_offsets())},
         {"domain_scale", rational_to_json(c.system.domain_scale())}};
  if (!c.frame.empty())
    j["frame"] = {{"nodes", c.frame.nodes},
                  {"deltas", rationals_to_json(c.frame.deltas)},
                  {"scale", rational_to_json(c.frame.scale)}};
  return j;
}

FrameCertificate certificate_from_json(const Json& j) {
  check_schema(j);
  FrameCertificate c;
  c.method = method_from_string(field(j, "method").get<std::string>());
  c.A = number(j, "A");
  c.B = number(j, "B");
  if (j.contains("params")) {
    for (const auto& [k, v] : j.at("params").items()) {
      if (!v.is_number()) throw Error("invalid_json", "parameter '" + k + "' must be a number");
      c.params[k] = v.get<double>();
    }
  }
  if (j.contains("flags")) c.flags = j.at("flags").get<std::vector<std::string>>();
  c.domain = domain_from_json(field(j, "domain"));
  const Rational scale = j.contains("domain_scale") ? rational_from_json(j.at("domain_scale")) : Rational(1);
  c.system = ExponentSystem(rationals_from_json(field(j, "offsets")), scale);
  if (j.contains("frame")) {
    const Json& f = j.at("frame");
    c.frame.nodes = field(f, "nodes").get<std::vector<std::int64_t>>();
    c.frame.deltas = rationals_from_json(field(f, "deltas"));
    c.frame.scale = f.contains("scale") ? rational_from_json(f.at("scale")) : Rational(1);
    if (c.frame.nodes.size() != c.frame.deltas.size()) throw Error("invalid_json", "frame size mismatch");
  }
  return c;
}

Json spectrum_to_json(const SingularSpectrum& s) {
  return {{"values", s.values},
          {"condition_flag",
           s.condition_flag == ConditionFlag::nonsingular ? "nonsingular" : "numerically_singular"},
          {"singularity_ratio", kSingularityRatio}};
}

Json beta_to_json(const BetaSolution& b) { return {{"M", b.M}, {"beta", b.beta}, {"residual", b.residual}}; }

Json partition_to_json(const ClusterPartition& p) {
  return {{"clusters", p.clusters},
          {"threshold", p.threshold},
          {"max_cluster_size", p.max_cluster_size},
          {"cross_coherence", p.cross_coherence},
          {"alpha", p.alpha},
          {"alpha_source", p.alpha_source == AlphaSource::coherence ? "coherence" : "principal_angle"},
          {"chained", p.chained}};
}

Json sandwich_to_json(const SpectrumSandwich& s) {
  return {{"tilde_sigmas", s.tilde_sigmas}, {"lower", s.lower}, {"upper", s.upper}};
}

Json report_to_json(const VerificationReport& r) {
  Json j{{"schema", kSchema},
         {"certificate", certificate_to_json(r.certificate)},
         {"oracle", {{"A_opt", r.oracle.A}, {"B_opt", r.oracle.B}, {"spectrum", spectrum_to_json(r.spectrum)}}},
         {"verdict", r.verdict ? "pass" : "fail"}};
  if (r.sample)
    j["sample"] = {{"min_ratio", r.sample->min_ratio},
                   {"max_ratio", r.sample->max_ratio},
                   {"trials", r.sample->trials},
                   {"seed", r.sample->seed},
                   {"n_max", r.sample->n_max}};
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back({{"index", x.index}, {"side", x.side}, {"value", x.value}, {"bound", x.bound}});
  j["violations"] = std::move(v);
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

Json regression_to_json(const RegressionReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"schema", kSchema}, {"checks", std::move(checks)}, {"all_passed", r.all_passed()}};
}

}  // namespace expobasis
