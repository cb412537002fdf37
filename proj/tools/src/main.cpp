// covercrimp: discriminants, crimps, stability, and Hurwitz counts on JSON
// inputs with deterministic JSON or table output.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "covercrimp/json_io.hpp"

namespace cc = covercrimp;
using cc::json_io::json;

namespace {

struct CommonOpts {
  std::string input;
  std::string field;
  std::size_t precision = 0;  // 0 = not set
  std::string epsilon;
  unsigned long long budget = 0;  // 0 = not set
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_epsilon = false) {
  cmd->add_option("--input", o.input, "Path to a JSON file, or inline JSON starting with '{'")
      ->required();
  cmd->add_option("--field", o.field, "Coefficient field: 'rational' or a prime modulus");
  cmd->add_option("--precision", o.precision, "Series truncation order (>= 2)");
  if (with_epsilon) cmd->add_option("--epsilon", o.epsilon, "Stability parameter, e.g. '1/2'");
  cmd->add_option("--budget", o.budget, "Enumeration budget (>= 1)");
  cmd->add_option("--format", o.format, "Output format: json or table")
      ->check(CLI::IsMember({"json", "table"}));
}

json load_input(const std::string& spec) {
  std::string text;
  std::string trimmed = spec;
  std::size_t first = trimmed.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && trimmed[first] == '{') {
    text = trimmed;
  } else {
    std::ifstream in(spec);
    if (!in) throw cc::SchemaError("cannot read input file '" + spec + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw cc::SchemaError(std::string("input is not valid JSON: ") + e.what());
  }
}

cc::Field parse_field(const std::string& s) {
  if (s == "rational") return cc::Field::rationals();
  try {
    unsigned long q = std::stoul(s);
    if (q >= (1UL << 31)) throw cc::SchemaError("field modulus out of range");
    return cc::Field::prime(static_cast<std::uint32_t>(q));
  } catch (const std::invalid_argument&) {
    throw cc::SchemaError("field must be 'rational' or a prime modulus");
  } catch (const std::out_of_range&) {
    throw cc::SchemaError("field modulus out of range");
  }
}

// Effective field: flag > input JSON key > default (rationals).
cc::Field effective_field(const CommonOpts& o, const json& in, const char* key) {
  if (!o.field.empty()) return parse_field(o.field);
  if (in.contains(key)) return cc::json_io::field_from_json(in[key]);
  return cc::Field::rationals();
}

std::size_t effective_precision(const CommonOpts& o, const json& in, const char* key,
                                std::size_t fallback) {
  std::size_t n = fallback;
  if (in.is_object() && in.contains(key)) {
    if (!in[key].is_number_unsigned()) throw cc::SchemaError("precision must be an integer");
    n = in[key].get<std::size_t>();
  }
  if (o.precision != 0) n = o.precision;
  if (n < 2) throw cc::SchemaError("precision must be >= 2");
  return n;
}

unsigned long long effective_budget(const CommonOpts& o, const json& in) {
  unsigned long long b = 10'000'000ULL;
  if (in.is_object() && in.contains("budget")) {
    if (!in["budget"].is_number_unsigned()) throw cc::SchemaError("budget must be an integer");
    b = in["budget"].get<unsigned long long>();
  }
  if (o.budget != 0) b = o.budget;
  if (b == 0) throw cc::SchemaError("budget must be >= 1");
  return b;
}

void emit(const json& out, const std::string& format) {
  if (format == "table") {
    for (const auto& [key, value] : out.items()) {
      std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
                << "\n";
    }
  } else {
    std::cout << out.dump(2) << "\n";
  }
}

// ---- disc ------------------------------------------------------------------

// Longest coefficient array appearing in the presentation.
std::size_t max_coeff_len(const json& arr) {
  std::size_t L = 1;
  for (const json& v : arr) {
    if (v.is_array()) L = std::max(L, v.size());
  }
  return L;
}

int run_disc(const CommonOpts& o) {
  json in = load_input(o.input);
  if (!in.is_object()) throw cc::SchemaError("cover descriptor must be an object");
  json base = in.contains("base") && in["base"].is_object() ? in["base"] : json::object();

  cc::Field f = o.field.empty()
                    ? (base.contains("field") ? cc::json_io::field_from_json(base["field"])
                                              : cc::Field::rationals())
                    : parse_field(o.field);

  // Default precision: enough to certify the discriminant valuation from the
  // presentation's coefficient degrees, never below 16.
  std::size_t fallback = 16;
  if (in.contains("degree") && in["degree"].is_number_unsigned() && in.contains("presentation") &&
      in["presentation"].is_object()) {
    std::size_t d = in["degree"].get<std::size_t>();
    const json& pres = in["presentation"];
    if (pres.contains("polynomial") && pres["polynomial"].is_array()) {
      std::size_t L = max_coeff_len(pres["polynomial"]);
      fallback = std::max<std::size_t>(16, (2 * d - 1) * (L - 1) + 1);
    } else if (pres.contains("branches") && pres["branches"].is_array() && d >= 1) {
      std::size_t L = max_coeff_len(pres["branches"]);
      fallback = std::max<std::size_t>(16, d * (d - 1) * (L - 1) + 1);
    }
  }
  std::size_t n = effective_precision(o, base, "precision", fallback);

  in["base"] = json{{"field", cc::json_io::field_to_json(f)}, {"precision", n}};
  cc::DiskCover cover = cc::json_io::cover_from_json(in);

  cc::TruncatedSeries disc = cc::discriminant(cover);
  json out{{"branch_valuation", cc::branch_valuation(cover)},
           {"discriminant", cc::json_io::series_to_json(disc)},
           {"etale", cc::is_etale(cover)}};
  emit(out, o.format);
  return 0;
}

// ---- crimps ----------------------------------------------------------------

int run_crimps(const CommonOpts& o) {
  json in = load_input(o.input);
  if (!in.is_object() || !in.contains("normalization")) {
    throw cc::SchemaError("expected {\"normalization\": ..., \"b\": ...}");
  }
  if (!in.contains("b") || !in["b"].is_number_unsigned()) {
    throw cc::SchemaError("expected nonnegative integer field 'b'");
  }
  std::size_t b = in["b"].get<std::size_t>();
  cc::Field f = effective_field(o, in, "field");
  std::size_t n = effective_precision(o, in, "precision",
                                      std::max<std::size_t>(16, 2 * b + 1));
  unsigned long long budget = effective_budget(o, in);

  cc::NormalizationData nd = cc::json_io::normalization_from_json(in["normalization"], f, n);
  cc::CrimpProblem problem(std::move(nd), b, budget);
  std::vector<cc::CrimpSubalgebra> crimps = cc::enumerate_crimps(problem);
  std::vector<std::vector<std::size_t>> orbits = cc::aut_orbits(problem, crimps);

  json list = json::array();
  for (const cc::CrimpSubalgebra& c : crimps) {
    json basis = json::array();
    for (const auto& row : c.basis) {
      json r = json::array();
      for (const cc::Scalar& s : row) r.push_back(s.to_string());
      basis.push_back(r);
    }
    cc::DiskCover lift = cc::crimp_lift(problem, c.basis);
    list.push_back(json{{"basis", basis},
                        {"dimension", c.dimension()},
                        {"branch_valuation", cc::branch_valuation(lift)}});
  }
  json jorbits = json::array();
  for (const auto& orbit : orbits) jorbits.push_back(orbit);
  json out{{"a", problem.a()},   {"b", problem.b()},       {"delta", problem.delta()},
           {"count", crimps.size()}, {"crimps", list},     {"orbits", jorbits}};
  emit(out, o.format);
  return 0;
}

// ---- stable ----------------------------------------------------------------

int run_stable(const CommonOpts& o) {
  json in = load_input(o.input);
  std::string eps_str = "1";
  if (in.is_object() && in.contains("epsilon")) {
    if (!in["epsilon"].is_string()) throw cc::SchemaError("epsilon must be a fraction string");
    eps_str = in["epsilon"].get<std::string>();
  }
  if (!o.epsilon.empty()) eps_str = o.epsilon;
  cc::StabilityParams s = cc::StabilityParams::from_string(eps_str);

  json curve_json = in.is_object() && in.contains("curve") ? in["curve"] : in;
  cc::MarkedNodalCurve curve = cc::json_io::curve_from_json(curve_json);

  cc::StabilityVerdict verdict = cc::is_epsilon_stable(curve, s);
  json degrees = json::array();
  for (const mpq_class& d : cc::omega_epsilon_degrees(curve, s)) {
    degrees.push_back(cc::json_io::rational_to_string(d));
  }
  json thresholds = json::array();
  for (const mpq_class& t : cc::stability_thresholds(curve)) {
    thresholds.push_back(cc::json_io::rational_to_string(t));
  }
  json out{{"stable", verdict.stable},      {"reason", verdict.reason},
           {"genus", cc::arithmetic_genus(curve)}, {"degrees", degrees},
           {"epsilon", cc::json_io::rational_to_string(s.epsilon())},
           {"thresholds", thresholds}};
  emit(out, o.format);
  return 0;
}

// ---- hurwitz ---------------------------------------------------------------

int run_hurwitz(const CommonOpts& o) {
  json in = load_input(o.input);
  if (!in.is_object() || !in.contains("d") || !in["d"].is_number_unsigned()) {
    throw cc::SchemaError("expected nonnegative integer field 'd'");
  }
  std::size_t d = in["d"].get<std::size_t>();
  std::size_t h = 0;
  if (in.contains("h")) {
    if (!in["h"].is_number_unsigned()) throw cc::SchemaError("'h' must be an integer");
    h = in["h"].get<std::size_t>();
  }
  unsigned long long budget = effective_budget(o, in);

  if (in.contains("punctures")) {
    if (!in["punctures"].is_array()) throw cc::SchemaError("'punctures' must be a list of cycle types");
    std::vector<std::vector<std::size_t>> types;
    for (const json& t : in["punctures"]) {
      if (!t.is_array()) throw cc::SchemaError("each cycle type must be an array of parts");
      std::vector<std::size_t> parts;
      for (const json& p : t) {
        if (!p.is_number_unsigned()) throw cc::SchemaError("cycle type parts must be integers");
        parts.push_back(p.get<std::size_t>());
      }
      types.push_back(std::move(parts));
    }
    std::vector<cc::EtaleCoverClass> classes = cc::enumerate_etale_covers(d, h, types, budget);
    json jclasses = json::array();
    for (const cc::EtaleCoverClass& cls : classes) {
      json orders = json::array();
      for (unsigned long long v : cls.local_orders) orders.push_back(v);
      jclasses.push_back(json{{"monodromy", cc::json_io::monodromy_to_json(cls.representative)},
                              {"connected", cls.connected},
                              {"local_orders", orders}});
    }
    json out{{"classes", jclasses}, {"count", classes.size()}};
    emit(out, o.format);
    return 0;
  }

  if (!in.contains("b") || !in["b"].is_number_unsigned()) {
    throw cc::SchemaError("expected 'b' (branch points) or 'punctures' (cycle types)");
  }
  std::size_t b = in["b"].get<std::size_t>();
  cc::HurwitzCount count = cc::hurwitz_count(d, h, b, budget);
  json out{{"raw", count.raw},
           {"raw_all", count.raw_all},
           {"weighted", cc::json_io::rational_to_string(count.weighted)}};
  emit(out, o.format);
  return 0;
}

// ---- rh --------------------------------------------------------------------

int run_rh(const CommonOpts& o) {
  json in = load_input(o.input);
  auto need = [&](const char* key) {
    if (!in.contains(key) || !in[key].is_number_unsigned()) {
      throw cc::SchemaError(std::string("expected nonnegative integer field '") + key + "'");
    }
    return in[key].get<unsigned long>();
  };
  unsigned long d = need("d");
  unsigned long h = need("h");
  bool has_b = in.contains("b"), has_g = in.contains("g");
  if (has_b == has_g) throw cc::SchemaError("provide exactly one of 'b' or 'g'");
  json out;
  if (has_b) {
    out = json{{"g", cc::riemann_hurwitz_genus(d, h, need("b"))}};
  } else {
    out = json{{"b", cc::riemann_hurwitz_branch(d, h, need("g"))}};
  }
  emit(out, o.format);
  return 0;
}

// ---- iso -------------------------------------------------------------------

int run_iso(const CommonOpts& o) {
  json in = load_input(o.input);
  if (!in.is_object() || !in.contains("covers") || !in["covers"].is_array() ||
      in["covers"].size() != 2) {
    throw cc::SchemaError("expected {\"covers\": [cover, cover], \"b\": ...}");
  }
  if (!in.contains("b") || !in["b"].is_number_unsigned()) {
    throw cc::SchemaError("expected nonnegative integer field 'b'");
  }
  std::size_t b = in["b"].get<std::size_t>();
  cc::Field f = effective_field(o, in, "field");
  std::size_t n = effective_precision(o, in, "precision",
                                      std::max<std::size_t>(16, 2 * b + 1));
  unsigned long long budget = effective_budget(o, in);

  auto embedded = [&](const json& cj) {
    json patched = cj;
    patched["base"] = json{{"field", cc::json_io::field_to_json(f)}, {"precision", n}};
    return cc::json_io::cover_from_json(patched);
  };
  cc::DiskCover c1 = embedded(in["covers"][0]);
  cc::DiskCover c2 = embedded(in["covers"][1]);
  if (c1.degree() != c2.degree()) throw cc::SchemaError("covers must share one degree");

  cc::CrimpProblem problem(cc::NormalizationData::split(c1.degree(), f, n), b, budget);
  cc::CrimpSubalgebra s1 = cc::crimp_of(problem, c1);
  cc::CrimpSubalgebra s2 = cc::crimp_of(problem, c2);
  json out{{"isomorphic", cc::crimps_isomorphic(problem, s1, s2)}};
  if (c1.degree() == 3) {
    auto orbit_json = [&](const cc::CrimpSubalgebra& s) {
      json arr = json::array();
      for (const cc::Scalar& v : cc::tangent_cross_ratio(problem, s)) {
        arr.push_back(v.to_string());
      }
      return arr;
    };
    try {
      out["cross_ratio_orbits"] = json::array({orbit_json(s1), orbit_json(s2)});
    } catch (const cc::DomainError&) {
      // slopes not in general position: omit the orbits
    }
  }
  emit(out, o.format);
  return 0;
}

// ---- validate --------------------------------------------------------------

int run_validate(const CommonOpts& o) {
  json in = load_input(o.input);
  json base = in.is_object() && in.contains("base") && in["base"].is_object() ? in["base"]
                                                                              : json::object();
  cc::Field f = o.field.empty()
                    ? (base.contains("field") ? cc::json_io::field_from_json(base["field"])
                                              : cc::Field::rationals())
                    : parse_field(o.field);
  std::size_t n = effective_precision(o, base, "precision", 16);
  in["base"] = json{{"field", cc::json_io::field_to_json(f)}, {"precision", n}};
  cc::DiskCover cover = cc::json_io::cover_from_json(in);
  cc::ValidationReport report = cc::validate_algebra(cover.table());
  json violations = json::array();
  for (const cc::Violation& v : report.violations) violations.push_back(v.to_string());
  json out{{"valid", report.valid()}, {"violations", violations}};
  emit(out, o.format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic toolkit for covers of the formal disk: "
               "discriminants, crimps, stability, Hurwitz counts"};
  app.require_subcommand(1);

  CommonOpts disc_o, crimps_o, stable_o, hurwitz_o, rh_o, iso_o, validate_o;
  add_common(app.add_subcommand("disc", "Discriminant and branch valuation of a cover"), disc_o);
  add_common(app.add_subcommand("crimps", "Enumerate crimps of a normalization"), crimps_o);
  add_common(app.add_subcommand("stable", "Epsilon-stability of a marked nodal curve"), stable_o,
             true);
  add_common(app.add_subcommand("hurwitz", "Hurwitz counts / etale cover classes"), hurwitz_o);
  add_common(app.add_subcommand("rh", "Riemann-Hurwitz solver"), rh_o);
  add_common(app.add_subcommand("iso", "Isomorphism test for two embedded crimps"), iso_o);
  add_common(app.add_subcommand("validate", "Check the algebra laws of a table"), validate_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("disc")) return run_disc(disc_o);
    if (app.got_subcommand("crimps")) return run_crimps(crimps_o);
    if (app.got_subcommand("stable")) return run_stable(stable_o);
    if (app.got_subcommand("hurwitz")) return run_hurwitz(hurwitz_o);
    if (app.got_subcommand("rh")) return run_rh(rh_o);
    if (app.got_subcommand("iso")) return run_iso(iso_o);
    if (app.got_subcommand("validate")) return run_validate(validate_o);
  } catch (const cc::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const cc::PrecisionExhausted& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return 3;
  } catch (const cc::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 4;
  } catch (const cc::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
