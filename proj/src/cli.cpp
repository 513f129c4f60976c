#include "expobasis/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "expobasis/clusters.hpp"
#include "expobasis/io.hpp"
#include "expobasis/theorems.hpp"
#include "expobasis/vandermonde.hpp"
#include "expobasis/verifier.hpp"

namespace expobasis::cli {

namespace {

struct Options {
  std::string thm;
  std::int64_t s = 0;
  std::string a;
  std::string epsilons;
  std::string delta;
  std::int64_t N = 0;
  std::int64_t M = 0;
  std::int64_t u = 0;
  std::int64_t m = 0;
  std::int64_t Delta = 0;
  std::string nodes;
  std::string deltas;
  std::string offsets;
  std::string input;
  std::string output;
  std::string format = "json";
  std::uint64_t seed = 42;
  int trials = 100;
  int n_max = kDefaultNmax;
  std::int64_t M_min = 0;
  std::int64_t M_max = 0;
};

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',' || ch == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<Rational> parse_rationals(const std::string& text, const char* flag) {
  if (text.empty()) throw Error("missing_argument", std::string("--") + flag + " is required");
  std::vector<Rational> out;
  for (const auto& t : split(text)) out.push_back(Rational::parse(t));
  return out;
}

std::vector<std::int64_t> parse_integers(const std::string& text, const char* flag) {
  std::vector<std::int64_t> out;
  for (const auto& r : parse_rationals(text, flag)) {
    if (!r.is_integer()) throw Error("invalid_argument", std::string("--") + flag + " needs integers");
    out.push_back(r.to_int64());
  }
  return out;
}

Rational parse_rational(const std::string& text, const char* flag) {
  if (text.empty()) throw Error("missing_argument", std::string("--") + flag + " is required");
  return Rational::parse(text);
}

void require(std::int64_t v, const char* flag) {
  if (v == 0) throw Error("missing_argument", std::string("--") + flag + " is required");
}

std::string read_input(const std::string& input) {
  if (input.empty()) throw Error("missing_argument", "--input is required");
  const auto first = input.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (input[first] == '{' || input[first] == '[')) return input;
  std::ifstream f(input, std::ios::binary);
  if (!f) throw Error("io_error", "cannot read '" + input + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

FrameCertificate certificate_from_flags(const Options& o, std::ostream& err) {
  const std::string& t = o.thm;
  if (t == "main") {
    require(o.s, "s");
    const auto a = parse_integers(o.a, "a");
    const auto eps = parse_rationals(o.epsilons, "epsilons");
    return construct_thm_main(o.s, a, eps, parse_rational(o.delta, "delta"));
  }
  if (t == "main3" || t == "main3cor") {
    require(o.N, "N");
    require(o.M, "M");
    require(o.u, "u");
    const auto a = parse_integers(o.a, "a");
    return t == "main3" ? certify_thm_main_3(o.N, o.M, a, o.u) : certify_thm_main_3_corollary(o.N, o.M, a, o.u);
  }
  if (t == "main2") {
    require(o.N, "N");
    require(o.m, "m");
    return construct_thm_main_2(o.N, o.m, parse_rational(o.delta, "delta"));
  }
  if (t == "basisMod") {
    require(o.s, "s");
    return prop_basisMod(o.s, parse_integers(o.a, "a"));
  }
  if (t == "basis") {
    require(o.N, "N");
    require(o.M, "M");
    const auto a = parse_integers(o.a, "a");
    const auto sys = prop_basis(o.N, o.M, a);
    auto cert = oracle_certificate(sys.branch_offsets(), a);
    cert.params = {{"N", static_cast<double>(o.N)}, {"M", static_cast<double>(o.M)}};
    return cert;
  }
  if (t == "complement") {
    require(o.Delta, "Delta");
    const auto base = certificate_from_json(parse_json(read_input(o.input)));
    return complement_certificate(o.Delta, base);
  }
  (void)err;
  if (t.empty()) throw Error("missing_argument", "--thm is required");
  throw Error("invalid_argument", "unknown theorem '" + t + "'");
}

FrameCertificate certificate_from_options(const Options& o, std::ostream& err) {
  if (o.thm.empty() && !o.input.empty()) return certificate_from_json(parse_json(read_input(o.input)));
  return certificate_from_flags(o, err);
}

Json system_to_json(const ExponentSystem& sys) {
  Json offs = Json::array();
  for (const auto& r : sys.branch_offsets()) offs.push_back(rational_to_json(r));
  return {{"offsets", std::move(offs)}, {"domain_scale", rational_to_json(sys.domain_scale())}};
}

// -- text rendering --

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::string text_certificate(const FrameCertificate& c) {
  std::ostringstream s;
  s << "method " << to_string(c.method) << "\nA " << fmt(c.A) << "\nB " << fmt(c.B) << "\n";
  for (const auto& [k, v] : c.params) s << "param " << k << " " << fmt(v) << "\n";
  for (const auto& f : c.flags) s << "flag " << f << "\n";
  s << "offsets";
  for (const auto& r : c.system.branch_offsets()) s << " " << r.to_string();
  s << "\ndomain";
  for (const auto& e : c.domain.left_endpoints()) s << " [" << e.to_string() << ", " << (e + Rational(1)).to_string() << ")";
  s << "\n";
  return s.str();
}

std::string text_report(const VerificationReport& r) {
  std::ostringstream s;
  s << text_certificate(r.certificate);
  s << "A_opt " << fmt(r.oracle.A) << "\nB_opt " << fmt(r.oracle.B) << "\n";
  if (r.sample)
    s << "sample min " << fmt(r.sample->min_ratio) << " max " << fmt(r.sample->max_ratio) << " trials "
      << r.sample->trials << " seed " << r.sample->seed << " n_max " << r.sample->n_max << "\n";
  for (const auto& v : r.violations)
    s << "violation index " << v.index << " side " << v.side << " value " << fmt(v.value) << " bound "
      << fmt(v.bound) << "\n";
  s << "verdict " << (r.verdict ? "pass" : "fail") << "\n";
  return s.str();
}

struct Emitted {
  Json json;
  std::string text;
};

void emit(const Options& o, const Emitted& e, std::ostream& out) {
  const std::string body = o.format == "text" ? e.text : e.json.dump(2) + "\n";
  if (o.output.empty()) {
    out << body;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw Error("io_error", "cannot write '" + o.output + "'");
  f << body;
}

// Partition of a uniform frame, plus the sandwich when its hypotheses hold.
std::optional<Json> cluster_section(const FrameCertificate& c, std::string& text) {
  if (c.frame.deltas.size() < 2 || c.frame.deltas[0] != Rational(0)) return std::nullopt;
  const Rational h = c.frame.deltas[1];
  for (std::size_t j = 0; j < c.frame.deltas.size(); ++j)
    if (c.frame.deltas[j] != h * Rational(static_cast<long long>(j))) return std::nullopt;
  const auto L = static_cast<std::int64_t>(c.frame.nodes.size());
  try {
    const auto cb = bound_spectrum(c.frame.nodes, h.to_double(), L);
    text += "clusters " + std::to_string(cb.partition.clusters.size()) + " alpha " + fmt(cb.partition.alpha) + "\n";
    return Json{{"partition", partition_to_json(cb.partition)}, {"sandwich", sandwich_to_json(cb.bounds)}};
  } catch (const Error& e) {
    const auto p = partition_by_coherence(c.frame.nodes, h.to_double(), L);
    text += "clusters " + std::to_string(p.clusters.size()) + " sandwich unavailable: " + e.code() + "\n";
    return Json{{"partition", partition_to_json(p)}, {"sandwich_unavailable", e.code()}};
  }
}

int dispatch(const std::string& cmd, const Options& o, std::ostream& out, std::ostream& err) {
  if (cmd == "construct") {
    if (o.thm == "basis") {
      require(o.N, "N");
      require(o.M, "M");
      const auto sys = prop_basis(o.N, o.M, parse_integers(o.a, "a"));
      emit(o, {{{"schema", kSchema}, {"system", system_to_json(sys)}, {"nonsingular", true}}, "nonsingular\n"}, out);
      return ok;
    }
    const auto c = certificate_from_flags(o, err);
    emit(o, {{{"schema", kSchema}, {"system", system_to_json(c.system)}, {"certificate", certificate_to_json(c)}},
             text_certificate(c)},
         out);
    return ok;
  }
  if (cmd == "certify") {
    const auto c = certificate_from_flags(o, err);
    emit(o, {certificate_to_json(c), text_certificate(c)}, out);
    return ok;
  }
  if (cmd == "oracle") {
    std::vector<std::int64_t> nodes;
    std::vector<Rational> deltas;
    Rational scale(1);
    if (!o.input.empty()) {
      const Json j = parse_json(read_input(o.input));
      if (j.contains("method")) {
        const auto c = certificate_from_json(j);
        if (c.frame.empty()) throw Error("frame_unavailable", "certificate carries no node matrix");
        nodes = c.frame.nodes;
        deltas = c.frame.deltas;
        scale = c.frame.scale;
      } else {
        auto dom = domain_from_json(j);
        if (!dom.is_canonical()) {
          const auto canon = canonicalize(dom);
          err << "warning: domain translated by " << (-canon.shift).to_string() << " to start at 0\n";
          dom = canon.domain;
        }
        if (!dom.has_integer_endpoints()) throw Error("invalid_domain", "oracle needs integer endpoints");
        for (const auto& e : dom.left_endpoints()) nodes.push_back(e.to_int64());
        deltas = parse_rationals(o.offsets, "offsets");
      }
    } else {
      nodes = parse_integers(o.nodes, "nodes");
      deltas = parse_rationals(o.deltas, "deltas");
    }
    const auto gamma = build_gamma(std::span<const Rational>(deltas), nodes);
    const auto spec = singular_values(gamma);
    const auto c = optimal_frame_constants(gamma);
    const double rho = scale.to_double();
    Json j{{"schema", kSchema},
           {"nodes", gamma.nodes},
           {"spectrum", spectrum_to_json(spec)},
           {"A_opt", c.A / rho},
           {"B_opt", c.B / rho},
           {"scale", rational_to_json(scale)}};
    std::ostringstream t;
    t << "sigma";
    for (double v : spec.values) t << " " << fmt(v);
    t << "\nA_opt " << fmt(c.A / rho) << "\nB_opt " << fmt(c.B / rho) << "\n"
      << (spec.condition_flag == ConditionFlag::nonsingular ? "nonsingular" : "numerically_singular") << "\n";
    emit(o, {j, t.str()}, out);
    return ok;
  }
  if (cmd == "verify") {
    const auto c = certificate_from_options(o, err);
    const auto rep = verify_certificate(c, o.trials, o.seed, o.n_max);
    emit(o, {report_to_json(rep), text_report(rep)}, out);
    return rep.verdict ? ok : verification_failed;
  }
  if (cmd == "regress") {
    const auto rep = regression_examples();
    std::ostringstream t;
    for (const auto& ch : rep.checks) t << (ch.passed ? "pass " : "FAIL ") << ch.name << "  " << ch.detail << "\n";
    emit(o, {regression_to_json(rep), t.str()}, out);
    return rep.all_passed() ? ok : verification_failed;
  }
  if (cmd == "beta") {
    std::int64_t lo = o.M;
    std::int64_t hi = o.M;
    if (o.M == 0) {
      lo = o.M_min;
      hi = o.M_max;
    }
    if (lo < 2 || hi < lo) throw Error("invalid_argument", "give --M, or --M-min <= --M-max with --M-min >= 2");
    Json rows = Json::array();
    std::ostringstream t;
    for (std::int64_t M = lo; M <= hi; ++M) {
      const auto b = solve_beta(M);
      rows.push_back(beta_to_json(b));
      t << "M " << M << " beta " << fmt(b.beta) << " residual " << fmt(b.residual) << "\n";
    }
    emit(o, {{{"schema", kSchema}, {"solutions", std::move(rows)}}, t.str()}, out);
    return ok;
  }
  if (cmd == "report") {
    const auto c = certificate_from_options(o, err);
    const auto rep = verify_certificate(c, o.trials, o.seed, o.n_max);
    Json j = report_to_json(rep);
    std::string text = text_report(rep);
    if (auto cs = cluster_section(c, text)) j["clusters"] = std::move(*cs);
    if (auto beta = c.param("beta")) j["beta"] = *beta;
    emit(o, {j, text}, out);
    return rep.verdict ? ok : verification_failed;
  }
  throw Error("invalid_argument", "unknown subcommand '" + cmd + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exponential Riesz bases on unions of unit intervals"};
  app.require_subcommand(1);
  Options o;
  if (const char* env = std::getenv("EXPOBASIS_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: EXPOBASIS_SEED must be a nonnegative integer\n";
      return precondition;
    }
  }

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", o.input, "JSON file or inline JSON");
    sub->add_option("--output", o.output, "write the report here instead of stdout");
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", o.seed, "sampling seed (default 42, or EXPOBASIS_SEED)");
  };
  auto add_theorem = [&](CLI::App* sub) {
    sub->add_option("--thm", o.thm, "main, main3, main3cor, main2, basisMod, basis, complement")
        ->check(CLI::IsMember({"main", "main3", "main3cor", "main2", "basisMod", "basis", "complement"}));
    sub->add_option("--s", o.s);
    sub->add_option("--a", o.a, "comma-separated integer endpoints");
    sub->add_option("--epsilons", o.epsilons, "comma-separated rational perturbations");
    sub->add_option("--delta", o.delta, "exact rational or decimal");
    sub->add_option("--N", o.N);
    sub->add_option("--M", o.M);
    sub->add_option("--u", o.u);
    sub->add_option("--m", o.m);
    sub->add_option("--Delta", o.Delta);
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--trials", o.trials, "ratio-sample trials (0 disables)")->check(CLI::NonNegativeNumber);
    sub->add_option("--n-max", o.n_max, "frequency truncation")->check(CLI::PositiveNumber);
  };

  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (const char* name : {"construct", "certify", "oracle", "verify", "regress", "beta", "report"}) {
    auto* sub = app.add_subcommand(name);
    add_common(sub);
    subs.emplace_back(name, sub);
  }
  for (auto& [name, sub] : subs) {
    if (name == "construct" || name == "certify" || name == "verify" || name == "report") add_theorem(sub);
    if (name == "verify" || name == "report") add_sampling(sub);
    if (name == "oracle") {
      sub->add_option("--nodes", o.nodes, "comma-separated integer nodes");
      sub->add_option("--deltas", o.deltas, "comma-separated rational deltas");
      sub->add_option("--offsets", o.offsets, "branch offsets for a domain input");
    }
    if (name == "beta") {
      sub->add_option("--M", o.M);
      sub->add_option("--M-min", o.M_min);
      sub->add_option("--M-max", o.M_max);
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return precondition;
  }

  std::string cmd;
  for (auto& [name, sub] : subs)
    if (sub->parsed()) cmd = name;

  try {
    return dispatch(cmd, o, out, err);
  } catch (const JsonSyntaxError& e) {
    err << "error[malformed_json]: " << e.what() << "\n";
    return malformed_json;
  } catch (const Error& e) {
    err << "error[" << e.code() << "]: " << e.what() << "\n";
    return precondition;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return precondition;
  }
}

}  // namespace expobasis::cli
