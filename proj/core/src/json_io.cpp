#include "covercrimp/json_io.hpp"

namespace covercrimp::json_io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw SchemaError(what); }

// Hand-built json objects store small literals as signed integers, parsed
// documents as unsigned; accept both as long as the value is nonnegative.
bool is_nonneg_int(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
}

std::size_t get_size(const json& j, const char* key) {
  if (!j.contains(key) || !is_nonneg_int(j[key])) {
    bad(std::string("expected nonnegative integer field '") + key + "'");
  }
  return j[key].get<std::size_t>();
}

const json& get_array(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    bad(std::string("expected array field '") + key + "'");
  }
  return j[key];
}

Scalar scalar_from_json(const json& v, const Field& f) {
  if (v.is_string()) return Scalar::from_string(v.get<std::string>(), f);
  if (v.is_number_integer()) return Scalar::from_integer(v.get<long>(), f);
  bad("coefficients must be strings or integers");
}

}  // namespace

Field field_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "rational") return Field::rationals();
    bad("unknown field descriptor '" + j.get<std::string>() + "'");
  }
  if (j.is_object() && j.contains("Fq")) {
    if (!is_nonneg_int(j["Fq"])) bad("Fq must be a positive integer");
    unsigned long q = j["Fq"].get<unsigned long>();
    if (q == 0 || q >= (1UL << 31)) bad("Fq out of range");
    return Field::prime(static_cast<std::uint32_t>(q));
  }
  bad("field must be \"rational\" or {\"Fq\": q}");
}

json field_to_json(const Field& f) {
  if (f.is_rational()) return json("rational");
  return json{{"Fq", f.modulus()}};
}

TruncatedSeries series_from_json(const json& j) {
  if (!j.is_object()) bad("series must be an object");
  Field f = field_from_json(j.contains("field") ? j["field"] : json());
  std::size_t n = get_size(j, "precision");
  return series_from_coefficients(get_array(j, "coefficients"), f, n);
}

json series_to_json(const TruncatedSeries& s) {
  return json{{"coefficients", coefficients_to_json(s)},
              {"field", field_to_json(s.field())},
              {"precision", s.precision()}};
}

TruncatedSeries series_from_coefficients(const json& arr, const Field& f, std::size_t precision) {
  if (!arr.is_array()) bad("series coefficients must be an array");
  std::vector<Scalar> coeffs;
  coeffs.reserve(arr.size());
  for (const json& v : arr) coeffs.push_back(scalar_from_json(v, f));
  return TruncatedSeries::from_coefficients(coeffs, f, precision);
}

json coefficients_to_json(const TruncatedSeries& s) {
  json arr = json::array();
  for (std::size_t i = 0; i < s.precision(); ++i) arr.push_back(s.coeff(i).to_string());
  return arr;
}

namespace {

std::vector<TruncatedSeries> series_list(const json& arr, const Field& f, std::size_t n) {
  if (!arr.is_array()) bad("expected an array of coefficient arrays");
  std::vector<TruncatedSeries> out;
  out.reserve(arr.size());
  for (const json& v : arr) out.push_back(series_from_coefficients(v, f, n));
  return out;
}

json series_list_to_json(const std::vector<TruncatedSeries>& v) {
  json arr = json::array();
  for (const TruncatedSeries& s : v) arr.push_back(coefficients_to_json(s));
  return arr;
}

StructureConstants table_from_json(const json& j, std::size_t d, const Field& f, std::size_t n) {
  if (!j.is_object()) bad("table must be an object");
  StructureConstants sc(d, f, n);
  const json& c = get_array(j, "c");
  if (c.size() != d) bad("table 'c' must have degree-many rows");
  for (std::size_t i = 0; i < d; ++i) {
    if (!c[i].is_array() || c[i].size() != d) bad("table 'c' rows must be degree-length arrays");
    for (std::size_t jj = 0; jj < d; ++jj) {
      if (!c[i][jj].is_array() || c[i][jj].size() != d) {
        bad("table 'c' entries must be degree-length arrays of series");
      }
      for (std::size_t k = 0; k < d; ++k) {
        sc.set_c(i, jj, k, series_from_coefficients(c[i][jj][k], f, n));
      }
    }
  }
  std::vector<TruncatedSeries> unit = series_list(get_array(j, "unit"), f, n);
  if (unit.size() != d) bad("table 'unit' must have degree-many coordinates");
  sc.set_unit(unit);
  return sc;
}

json table_to_json(const StructureConstants& sc) {
  json c = json::array();
  for (std::size_t i = 0; i < sc.degree(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < sc.degree(); ++j) {
      json cell = json::array();
      for (std::size_t k = 0; k < sc.degree(); ++k) {
        cell.push_back(coefficients_to_json(sc.c(i, j, k)));
      }
      row.push_back(cell);
    }
    c.push_back(row);
  }
  return json{{"c", c}, {"unit", series_list_to_json(sc.unit())}};
}

}  // namespace

DiskCover cover_from_json(const json& j) {
  if (!j.is_object()) bad("cover descriptor must be an object");
  std::size_t d = get_size(j, "degree");
  if (d == 0) bad("degree must be >= 1");
  if (!j.contains("base") || !j["base"].is_object()) bad("expected object field 'base'");
  Field f = field_from_json(j["base"].contains("field") ? j["base"]["field"] : json());
  std::size_t n = get_size(j["base"], "precision");
  if (n < 2) bad("precision must be >= 2");
  if (!j.contains("presentation") || !j["presentation"].is_object()) {
    bad("expected object field 'presentation'");
  }
  const json& pres = j["presentation"];

  if (pres.contains("polynomial")) {
    std::vector<TruncatedSeries> coeffs = series_list(pres["polynomial"], f, n);
    if (coeffs.size() != d + 1) bad("polynomial needs degree+1 coefficients, constant first");
    return from_polynomial(coeffs);
  }
  if (pres.contains("branches")) {
    std::vector<TruncatedSeries> u = series_list(pres["branches"], f, n);
    if (u.size() != d) bad("branch count must equal the degree");
    return from_branches(u);
  }
  if (pres.contains("table")) {
    DiskCover cover(table_from_json(pres["table"], d, f, n));
    if (pres["table"].contains("tame_certified")) {
      if (!pres["table"]["tame_certified"].is_boolean()) bad("tame_certified must be a boolean");
      cover.set_tame_certified(pres["table"]["tame_certified"].get<bool>());
    }
    return cover;
  }
  bad("presentation must contain 'polynomial', 'branches', or 'table'");
}

json cover_to_json(const DiskCover& c) {
  json pres;
  if (c.defining_polynomial()) {
    pres["polynomial"] = series_list_to_json(*c.defining_polynomial());
  }
  if (c.split_embedding()) {
    pres["branches"] = series_list_to_json(c.split_embedding()->branches);
  }
  json table = table_to_json(c.table());
  table["tame_certified"] = c.tame_certified();
  pres["table"] = table;
  return json{{"degree", c.degree()},
              {"base", json{{"field", field_to_json(c.field())}, {"precision", c.precision()}}},
              {"presentation", pres}};
}

MarkedNodalCurve curve_from_json(const json& j) {
  if (!j.is_object()) bad("curve descriptor must be an object");
  std::vector<unsigned long> genera;
  for (const json& comp : get_array(j, "components")) {
    if (!comp.is_object()) bad("components must be objects with a 'genus'");
    genera.push_back(get_size(comp, "genus"));
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (j.contains("edges")) {
    for (const json& e : get_array(j, "edges")) {
      if (!e.is_array() || e.size() != 2 || !is_nonneg_int(e[0]) ||
          !is_nonneg_int(e[1])) {
        bad("edges must be [i, j] pairs of component indices");
      }
      edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
  }
  std::vector<Marking> markings;
  if (j.contains("markings")) {
    for (const json& m : get_array(j, "markings")) {
      if (!m.is_object()) bad("markings must be objects");
      markings.push_back({get_size(m, "component"), get_size(m, "mult")});
    }
  }
  std::vector<Section> points;
  if (j.contains("points")) {
    for (const json& p : get_array(j, "points")) {
      if (!p.is_object()) bad("points must be objects");
      points.push_back({get_size(p, "component")});
    }
  }
  return MarkedNodalCurve(std::move(genera), std::move(edges), std::move(markings),
                          std::move(points));
}

json curve_to_json(const MarkedNodalCurve& c) {
  json comps = json::array();
  for (unsigned long g : c.component_genera()) comps.push_back(json{{"genus", g}});
  json edges = json::array();
  for (const auto& [a, b] : c.edges()) edges.push_back(json::array({a, b}));
  json markings = json::array();
  for (const Marking& m : c.markings()) {
    markings.push_back(json{{"component", m.component}, {"mult", m.multiplicity}});
  }
  json points = json::array();
  for (const Section& p : c.points()) points.push_back(json{{"component", p.component}});
  return json{{"components", comps}, {"edges", edges}, {"markings", markings}, {"points", points}};
}

Perm perm_from_json(const json& j, std::size_t degree) {
  if (j.is_string()) return Perm::from_cycles(j.get<std::string>(), degree);
  const json* arr = nullptr;
  if (j.is_array()) arr = &j;
  else if (j.is_object() && j.contains("images") && j["images"].is_array()) arr = &j["images"];
  if (arr == nullptr) bad("permutation must be a cycle string or an images array");
  if (arr->size() != degree) bad("permutation image count differs from the degree");
  std::vector<std::size_t> img;
  for (const json& v : *arr) {
    if (!is_nonneg_int(v) || v.get<std::size_t>() < 1 || v.get<std::size_t>() > degree) {
      bad("permutation images must be 1-based integers in range");
    }
    img.push_back(v.get<std::size_t>() - 1);
  }
  return Perm::from_images(std::move(img));
}

json perm_to_json(const Perm& p) {
  json img = json::array();
  for (std::size_t i = 0; i < p.degree(); ++i) img.push_back(p.apply(i) + 1);
  return json{{"cycles", p.to_cycles()}, {"images", img}};
}

BranchedMonodromy monodromy_from_json(const json& j) {
  if (!j.is_object()) bad("monodromy datum must be an object");
  BranchedMonodromy m;
  m.degree = get_size(j, "degree");
  m.base_genus = j.contains("genus") ? get_size(j, "genus") : 0;
  if (j.contains("handles")) {
    for (const json& h : get_array(j, "handles")) {
      if (!h.is_array() || h.size() != 2) bad("handles must be [alpha, beta] pairs");
      m.handles.emplace_back(perm_from_json(h[0], m.degree), perm_from_json(h[1], m.degree));
    }
  }
  if (j.contains("branches")) {
    for (const json& s : get_array(j, "branches")) {
      m.branches.push_back(perm_from_json(s, m.degree));
    }
  }
  if (m.handles.size() != m.base_genus) bad("handle pair count differs from the genus");
  return m;
}

json monodromy_to_json(const BranchedMonodromy& m) {
  json handles = json::array();
  for (const auto& [a, b] : m.handles) {
    handles.push_back(json::array({perm_to_json(a), perm_to_json(b)}));
  }
  json branches = json::array();
  for (const Perm& s : m.branches) branches.push_back(perm_to_json(s));
  return json{{"branches", branches},
              {"degree", m.degree},
              {"genus", m.base_genus},
              {"handles", handles}};
}

NormalizationData normalization_from_json(const json& j, const Field& f, std::size_t precision) {
  if (!j.is_object()) bad("normalization must be an object");
  if (j.contains("split")) {
    if (!is_nonneg_int(j["split"])) bad("'split' must be the degree");
    return NormalizationData::split(j["split"].get<std::size_t>(), f, precision);
  }
  if (j.contains("ramified_index")) {
    if (!is_nonneg_int(j["ramified_index"])) bad("'ramified_index' must be an integer");
    return NormalizationData::ramified_disk(j["ramified_index"].get<std::size_t>(), f, precision);
  }
  if (j.contains("table")) {
    const json& t = j["table"];
    if (!t.is_object() || !t.contains("c")) bad("normalization table must contain 'c'");
    std::size_t d = get_array(t, "unit").size();
    DiskCover cover(table_from_json(t, d, f, precision));
    if (t.contains("tame_certified")) {
      if (!t["tame_certified"].is_boolean()) bad("tame_certified must be a boolean");
      cover.set_tame_certified(t["tame_certified"].get<bool>());
    }
    std::vector<SeriesMatrix> autos;
    if (j.contains("automorphisms")) {
      for (const json& mj : get_array(j, "automorphisms")) {
        if (!mj.is_array() || mj.size() != d) bad("automorphism matrices must be d x d");
        SeriesMatrix m(d, d, f, precision);
        for (std::size_t r = 0; r < d; ++r) {
          if (!mj[r].is_array() || mj[r].size() != d) bad("automorphism matrices must be d x d");
          for (std::size_t c = 0; c < d; ++c) {
            m.set(r, c, series_from_coefficients(mj[r][c], f, precision));
          }
        }
        autos.push_back(std::move(m));
      }
    }
    return NormalizationData::explicit_data(std::move(cover), std::move(autos));
  }
  bad("normalization must contain 'split', 'ramified_index', or 'table'");
}

std::string rational_to_string(const mpq_class& v) {
  mpq_class c = v;
  c.canonicalize();
  return c.get_str();
}

}  // namespace covercrimp::json_io
