#include "qdup/json_io.hpp"

#include <nlohmann/json.hpp>

namespace qdup {

namespace {

using json = nlohmann::ordered_json;

json parse_doc(const std::string& text, const std::string& schema) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("schema", std::string()) != schema)
    throw Error(Errc::ParseError, "expected a " + schema + " document");
  return j;
}

// Converts nlohmann lookup/type errors into ParseError.
template <class Fn>
auto guarded(const std::string& schema, Fn fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, schema + ": " + e.what());
  }
}

json vec_json(const Vec& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(s.to_string());
  return out;
}

Vec vec_from(const json& j, const Field& f) {
  Vec out;
  for (const auto& s : j) out.push_back(f.parse_scalar(s.get<std::string>()));
  return out;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vec_json(m.row(r)));
  return out;
}

Matrix matrix_from(const json& j, const Field& f) {
  std::vector<Vec> rows;
  for (const auto& r : j) rows.push_back(vec_from(r, f));
  if (rows.empty()) return Matrix(f, 0, 0);
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw Error(Errc::ParseError, "ragged matrix");
  return Matrix::from_rows(f, rows);
}

json two_dim_json(const TwoDim& b) { return json{{"alpha", b.alpha.to_string()}, {"beta", b.beta.to_string()}}; }

TwoDim two_dim_from(const json& j, const Field& f) {
  return TwoDim(f.parse_scalar(j.at("alpha").get<std::string>()), f.parse_scalar(j.at("beta").get<std::string>()));
}

json algebra_body(const Algebra& a) {
  json table = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.dim(); ++j) row.push_back(vec_json(a.product(i, j)));
    table.push_back(std::move(row));
  }
  return json{{"field", a.field().to_string()},
              {"dim", a.dim()},
              {"labels", a.labels()},
              {"unit", a.has_unit() ? vec_json(a.unit()) : json::array()},
              {"table", std::move(table)}};
}

Algebra algebra_from_body(const json& j) {
  Field f = Field::parse(j.at("field").get<std::string>());
  const std::size_t dim = j.at("dim").get<std::size_t>();
  const json& table = j.at("table");
  if (table.size() != dim) throw Error(Errc::ParseError, "table has the wrong number of rows");
  std::vector<Vec> entries;
  for (const auto& row : table) {
    if (row.size() != dim) throw Error(Errc::ParseError, "table row has the wrong length");
    for (const auto& cell : row) {
      Vec v = vec_from(cell, f);
      if (v.size() != dim) throw Error(Errc::ParseError, "product has the wrong number of coordinates");
      entries.push_back(std::move(v));
    }
  }
  Vec unit = vec_from(j.at("unit"), f);
  if (!unit.empty() && unit.size() != dim) throw Error(Errc::ParseError, "unit has the wrong length");
  return Algebra(f, dim, std::move(entries), std::move(unit), j.at("labels").get<std::vector<std::string>>());
}

json opt_json(const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); }

std::optional<std::uint64_t> opt_u64(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::uint64_t>();
}

json fingerprint_json(const Fingerprint& f) {
  return json{{"commutative", f.commutative},
              {"center_dim", f.center_dim},
              {"commutator_dim", f.commutator_dim},
              {"idempotents", opt_json(f.idempotents)},
              {"square_zero", opt_json(f.square_zero)},
              {"simple", f.simple ? json(*f.simple) : json(nullptr)},
              {"unit_group", opt_json(f.unit_group)}};
}

Fingerprint fingerprint_from(const json& j) {
  Fingerprint f;
  f.commutative = j.at("commutative").get<bool>();
  f.center_dim = j.at("center_dim").get<std::size_t>();
  f.commutator_dim = j.at("commutator_dim").get<std::size_t>();
  f.idempotents = opt_u64(j.at("idempotents"));
  f.square_zero = opt_u64(j.at("square_zero"));
  if (!j.at("simple").is_null()) f.simple = j.at("simple").get<bool>();
  f.unit_group = opt_u64(j.at("unit_group"));
  return f;
}

std::vector<int> one_based(const FunctionalQuiver& q) {
  std::vector<int> out;
  for (int t : q.targets()) out.push_back(t + 1);
  return out;
}

}  // namespace

std::string algebra_to_json(const Algebra& a) {
  json j{{"schema", "algebra/v1"}};
  j.update(algebra_body(a));
  return j.dump(2);
}

Algebra algebra_from_json(const std::string& text) {
  json j = parse_doc(text, "algebra/v1");
  return guarded("algebra/v1", [&] { return algebra_from_body(j); });
}

std::string quiver_to_json(const FunctionalQuiver& q) {
  json j{{"schema", "quiver/v1"}, {"kind", "functional"}, {"set_map", one_based(q)}};
  return j.dump(2);
}

std::string quiver_to_json(const GeneralQuiver& q) {
  json arrows = json::array();
  for (const auto& a : q.arrows()) arrows.push_back(json{{"label", a.label}, {"source", a.source}, {"target", a.target}});
  json j{{"schema", "quiver/v1"}, {"kind", "general"}, {"vertices", q.vertices()}, {"arrows", std::move(arrows)}};
  return j.dump(2);
}

FunctionalQuiver functional_quiver_from_json(const std::string& text) {
  json j = parse_doc(text, "quiver/v1");
  return guarded("quiver/v1", [&] {
    if (j.at("kind") != "functional") throw Error(Errc::ParseError, "not a functional quiver");
    return from_set_map(j.at("set_map").get<std::vector<int>>());
  });
}

GeneralQuiver general_quiver_from_json(const std::string& text) {
  json j = parse_doc(text, "quiver/v1");
  return guarded("quiver/v1", [&] {
    if (j.at("kind") != "general") throw Error(Errc::ParseError, "not a general quiver");
    std::vector<Arrow> arrows;
    for (const auto& a : j.at("arrows"))
      arrows.push_back(Arrow{a.at("label").get<std::string>(), a.at("source").get<int>(), a.at("target").get<int>()});
    return GeneralQuiver(j.at("vertices").get<std::vector<std::string>>(), arrows);
  });
}

std::string pair_to_json(const TwistingPair& p) {
  json j{{"schema", "twist/v1"},
         {"field", p.A.field().to_string()},
         {"A", algebra_body(p.A)},
         {"B", two_dim_json(p.B)},
         {"f", matrix_json(p.f)},
         {"delta", matrix_json(p.delta)}};
  return j.dump(2);
}

TwistingPair pair_from_json(const std::string& text) {
  json j = parse_doc(text, "twist/v1");
  return guarded("twist/v1", [&] {
    Field f = Field::parse(j.at("field").get<std::string>());
    Algebra a = algebra_from_body(j.at("A"));
    return make_pair(a, two_dim_from(j.at("B"), f), matrix_from(j.at("f"), f), matrix_from(j.at("delta"), f));
  });
}

std::string taus_to_json(const TauDocument& d) {
  json coeffs = json::array();
  for (const auto& t : d.taus) coeffs.push_back(vec_json({t.a, t.b, t.c, t.d}));
  json j{{"schema", "twist/v1"},
         {"field", d.a.field().to_string()},
         {"A", two_dim_json(d.a)},
         {"B", two_dim_json(d.b)},
         {"count", d.taus.size()},
         {"coeffs", std::move(coeffs)}};
  return j.dump(2);
}

TauDocument taus_from_json(const std::string& text) {
  json j = parse_doc(text, "twist/v1");
  return guarded("twist/v1", [&] {
    Field f = Field::parse(j.at("field").get<std::string>());
    TauDocument d{two_dim_from(j.at("A"), f), two_dim_from(j.at("B"), f), {}};
    for (const auto& c : j.at("coeffs")) {
      Vec v = vec_from(c, f);
      if (v.size() != 4) throw Error(Errc::ParseError, "tau needs four coefficients");
      d.taus.push_back(Tau2x2{v[0], v[1], v[2], v[3]});
    }
    return d;
  });
}

std::string duplicates_to_json(const DuplicatesDocument& d) {
  json entries = json::array();
  for (const auto& e : d.entries)
    entries.push_back(json{{"set_map", one_based(e.quiver)},
                           {"colors", e.colors},
                           {"label", e.label},
                           {"certified", e.certified},
                           {"symbolic", e.symbolic},
                           {"note", e.note}});
  json j{{"schema", "duplicates/v1"},
         {"field", d.field.to_string()},
         {"n", d.n},
         {"B", two_dim_json(d.b)},
         {"count", d.entries.size()},
         {"entries", std::move(entries)}};
  return j.dump(2);
}

DuplicatesDocument duplicates_from_json(const std::string& text) {
  json j = parse_doc(text, "duplicates/v1");
  return guarded("duplicates/v1", [&] {
    DuplicatesDocument d;
    d.field = Field::parse(j.at("field").get<std::string>());
    d.n = j.at("n").get<int>();
    d.b = two_dim_from(j.at("B"), d.field);
    for (const auto& e : j.at("entries")) {
      DuplicateEntry x;
      x.quiver = from_set_map(e.at("set_map").get<std::vector<int>>());
      x.colors = e.at("colors").get<std::vector<std::string>>();
      x.label = e.at("label").get<std::string>();
      x.certified = e.at("certified").get<bool>();
      x.symbolic = e.at("symbolic").get<bool>();
      x.note = e.at("note").get<std::string>();
      d.entries.push_back(std::move(x));
    }
    return d;
  });
}

std::string catalog_to_json(const Catalog4& c) {
  json rows = json::array();
  for (const auto& r : c.rows)
    rows.push_back(json{{"label", r.label},
                        {"representative", r.representative},
                        {"factor_pairs", r.factor_pairs},
                        {"tau_count", r.tau_count},
                        {"fingerprint", fingerprint_json(r.fingerprint)},
                        {"gabriel", r.gabriel},
                        {"gabriel_factorizable", r.gabriel_factorizable},
                        {"note", r.note},
                        {"algebra", algebra_body(r.algebra)}});
  json j{{"schema", "catalog4/v1"}, {"field", c.field.to_string()}, {"products", c.products}, {"rows", std::move(rows)}};
  return j.dump(2);
}

Catalog4 catalog_from_json(const std::string& text) {
  json j = parse_doc(text, "catalog4/v1");
  return guarded("catalog4/v1", [&] {
    Catalog4 c;
    c.field = Field::parse(j.at("field").get<std::string>());
    c.products = j.at("products").get<std::uint64_t>();
    for (const auto& r : j.at("rows")) {
      CatalogRow row;
      row.label = r.at("label").get<std::string>();
      row.representative = r.at("representative").get<std::string>();
      row.factor_pairs = r.at("factor_pairs").get<std::vector<std::string>>();
      row.tau_count = r.at("tau_count").get<std::uint64_t>();
      row.fingerprint = fingerprint_from(r.at("fingerprint"));
      row.gabriel = r.at("gabriel").get<std::string>();
      row.gabriel_factorizable = r.at("gabriel_factorizable").get<bool>();
      row.note = r.at("note").get<std::string>();
      row.algebra = algebra_from_body(r.at("algebra"));
      c.rows.push_back(std::move(row));
    }
    return c;
  });
}

}  // namespace qdup
