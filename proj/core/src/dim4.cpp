#include "qdup/dim4.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#ifndef QDUP_SOURCE_DATA_DIR
#define QDUP_SOURCE_DATA_DIR ""
#endif
#ifndef QDUP_INSTALL_DATA_DIR
#define QDUP_INSTALL_DATA_DIR ""
#endif

namespace qdup {

namespace {

void expect_params(const FamilyParam& p, std::size_t n) {
  if (p.params.size() != n)
    throw Error(Errc::DimensionMismatch, "family " + p.name + " takes " + std::to_string(n) + " parameters, got " +
                                             std::to_string(p.params.size()));
}

Scalar lift(const Scalar& s, const Field& field) {
  if (s.field() == field) return s;
  if (field.kind() == FieldKind::QuadExt && s.field() == field.base()) return field.embed(s);
  throw Error(Errc::FieldMismatch, "parameter " + s.to_string() + " does not live over " + field.to_string());
}

Vec v4(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) { return Vec{a, b, c, d}; }

LinearMap certified(const Algebra& source, const Algebra& target, const std::vector<Vec>& images,
                    const std::string& what) {
  LinearMap m = map_from_images(source, target, images);
  if (!check_morphism(m) || !is_bijective(m)) throw Error(Errc::CertificationFailed, what + " is not an isomorphism");
  return m;
}

void require_odd(const Field& k) {
  if (k.characteristic() == 2) throw Error(Errc::CharTwo, "characteristic 2");
}

}  // namespace

FamilyPresentation family_presentation(const FamilyParam& p, const Field& field) {
  std::vector<Scalar> v;
  for (const auto& s : p.params) v.push_back(lift(s, field));
  const Scalar z = field.zero(), one = field.one();
  auto dual = [&] { return TwoDim(z, z); };
  if (p.name == "A") {
    expect_params(p, 1);
    return {dual(), dual(), {z, z, z, v[0]}};
  }
  if (p.name == "X") {
    expect_params(p, 1);
    return {dual(), dual(), {v[0], z, z, -one}};
  }
  if (p.name == "B") {
    expect_params(p, 2);
    return {dual(), TwoDim(z, -v[0]), {v[1], z, z, -one}};
  }
  if (p.name == "C") {
    expect_params(p, 3);
    if (field.characteristic() == 2) throw Error(Errc::CharMismatch, "C_q needs characteristic != 2");
    return {TwoDim(z, -v[0]), TwoDim(z, -v[1]), {v[2], z, z, -one}};
  }
  if (p.name == "D") {
    expect_params(p, 5);
    if (field.characteristic() != 2) throw Error(Errc::CharMismatch, "D_q needs characteristic 2");
    // x^2 = alpha x + beta is x^2 - alpha x + beta in characteristic 2. The Galois twist forces
    // xy + yx = q + alpha' x + alpha y; the bare xy + yx = q is associative only for alpha = alpha' = 0.
    return {TwoDim(v[0], v[1]), TwoDim(v[2], v[3]), {v[4], v[2], v[0], one}};
  }
  throw Error(Errc::ParseError, "unknown family '" + p.name + "' (expected A, X, B, C or D)");
}

Algebra construct_family(const FamilyParam& p, const Field& field) {
  FamilyPresentation fp = family_presentation(p, field);
  Algebra a = build_tau_2x2(fp.a, fp.b, fp.tau);
  if (!check_algebra(a).ok())
    throw Error(Errc::CertificationFailed, "family " + p.name + " does not give an associative algebra");
  return a;
}

LinearMap xt_to_matrix(const Scalar& t) {
  if (t.is_zero()) throw Error(Errc::DegenerateParameter, "X_t needs t != 0");
  const Field k = t.field();
  const Scalar z = k.zero(), one = k.one();
  return certified(construct_family({"X", {t}}, k), matrix_2x2(k),
                   {v4(one, z, z, one), v4(z, one, z, z), v4(z, z, t, z), v4(t, z, z, z)}, "X_t -> M2");
}

LinearMap bq_to_matrix(const Scalar& gamma, const Scalar& q) {
  if (q.is_zero() || gamma.is_zero()) throw Error(Errc::DegenerateParameter, "B_q -> M2 needs q != 0, gamma != 0");
  const Field k = q.field();
  const Scalar z = k.zero(), one = k.one();
  Algebra m2 = matrix_2x2(k);
  Vec x = v4(z, z, q / gamma, z);
  Vec y = v4(z, gamma, one, z);
  return certified(construct_family({"B", {gamma, q}}, k), m2, {v4(one, z, z, one), x, y, m2.mul(x, y)}, "B_q -> M2");
}

QuaternionReduction quaternion_from_Cq(const Scalar& alpha, const Scalar& beta, const Scalar& q) {
  const Field k = alpha.field();
  require_odd(k);
  if (alpha.is_zero()) throw Error(Errc::AlphaZero, "C_q -> quaternions needs alpha != 0");
  const Scalar two = k.from_int(2), four = k.from_int(4);
  const Scalar t = (q * q - four * alpha * beta) / (four * alpha * alpha);
  Algebra quat = quaternion_algebra(alpha, t);
  const Scalar z = k.zero(), one = k.one();
  Vec x = v4(z, one, z, z);
  Vec y = v4(z, q / (two * alpha), z, one);
  LinearMap m = certified(construct_family({"C", {alpha, beta, q}}, k), quat,
                          {v4(one, z, z, z), x, y, quat.mul(x, y)}, "C_q -> quaternions");
  return {alpha, t, m};
}

const char* verdict_name(CqVerdict v) {
  switch (v) {
    case CqVerdict::Isomorphic: return "isomorphic";
    case CqVerdict::NotIsomorphic: return "not isomorphic";
    case CqVerdict::Unknown: return "unknown";
  }
  return "?";
}

CqPairResult classify_Cq_pair(const Scalar& alpha, const Scalar& beta, const Scalar& q, const Scalar& h, int bound) {
  const Field k = alpha.field();
  require_odd(k);
  if (alpha.is_zero()) throw Error(Errc::AlphaZero, "alpha = 0");
  const Scalar four_ab = k.from_int(4) * alpha * beta;
  const Scalar dq = q * q - four_ab, dh = h * h - four_ab;
  if (dq.is_zero() || dh.is_zero()) throw Error(Errc::DegenerateParameter, "q^2 = 4 alpha beta");
  CqPairResult r;
  r.ratio = dq / dh;
  if (is_square(alpha)) {
    // alpha = s^2: x^2 - alpha y^2 = (x - s y)(x + s y), solve x - s y = 1, x + s y = ratio
    Scalar s;
    for (const auto& root : quad_roots(k.zero(), -alpha)) s = root;
    const Scalar two = k.from_int(2);
    r.verdict = CqVerdict::Isomorphic;
    r.witness = std::make_pair((k.one() + r.ratio) / two, (r.ratio - k.one()) / (two * s));
    return r;
  }
  Field ext = Field::quad_ext(k, k.zero(), -alpha);
  NormResult nr = is_norm(ext, r.ratio, bound);
  switch (nr.verdict) {
    case NormVerdict::Yes:
      r.verdict = CqVerdict::Isomorphic;
      r.witness = std::make_pair(nr.witness->coord(0), nr.witness->coord(1));
      break;
    case NormVerdict::No: r.verdict = CqVerdict::NotIsomorphic; break;
    case NormVerdict::Unknown: r.verdict = CqVerdict::Unknown; break;
  }
  return r;
}

bool classify_Aq_pair(const Scalar& q, const Scalar& h) {
  if (q.is_zero() || h.is_zero()) throw Error(Errc::ZeroParameter, "A_q pair test needs q, h != 0");
  return q == h || q == h.inv();
}

// ------------------------------------------------------------------ invariant rings

std::string InvariantRingReport::to_string() const {
  std::ostringstream os;
  os << subject << ": fixed dim " << fixed_dim << ", morphism " << (morphism ? "yes" : "no") << ", onto fixed "
     << (onto_fixed ? "yes" : "no") << ", iso " << (iso_confirmed ? "confirmed" : "not confirmed");
  return os.str();
}

namespace {

// subject -> restrict_scalars(l Q<2) for the round trip, images given in coordinates u, v, R, S, tu, tv, tR, tS
InvariantRingReport invariant_ring(const std::string& subject, const Algebra& source, const Scalar& param,
                                   const std::vector<Vec>& gen_images) {
  const Field k = param.field();
  require_odd(k);
  if (k.kind() == FieldKind::QuadExt) throw Error(Errc::Unsupported, "invariant rings over extension fields");
  if (is_square(param)) throw Error(Errc::ParameterIsSquare, param.to_string() + " is a square");
  Field l = Field::quad_ext(k, k.zero(), -param);
  Algebra big = restrict_scalars(truncated_path(l, round_trip_quiver()));
  const std::size_t swap[4] = {1, 0, 3, 2};
  const Scalar tbar = l.generator().conj();
  Matrix g(k, 8, 8);
  for (std::size_t i = 0; i < 4; ++i) {
    g(swap[i], i) = k.one();
    g(swap[i], 4 + i) = tbar.coord(0);
    g(4 + swap[i], 4 + i) = tbar.coord(1);
  }
  FixedAlgebra fixed = fixed_subalgebra(big, g);

  InvariantRingReport rep;
  rep.subject = subject;
  rep.fixed_dim = fixed.algebra.dim();
  std::vector<Vec> images{big.unit(), gen_images[0], gen_images[1], big.mul(gen_images[0], gen_images[1])};
  LinearMap into = map_from_images(source, big, images);
  rep.morphism = check_morphism(into);

  std::vector<Vec> coords;
  bool all = true;
  for (const auto& im : images) {
    auto c = fixed.inclusion.matrix.solve(im);
    if (!c) {
      all = false;
      break;
    }
    coords.push_back(*c);
  }
  rep.onto_fixed = all && rep.fixed_dim == 4 && into.matrix.rank() == 4;
  if (rep.onto_fixed) {
    rep.map = map_from_images(source, fixed.algebra, coords);
    rep.iso_confirmed = check_morphism(rep.map) && is_bijective(rep.map);
  }
  return rep;
}

Vec coords8(const Field& k, std::initializer_list<int> v) {
  Vec out;
  for (int x : v) out.push_back(k.from_int(x));
  return out;
}

}  // namespace

InvariantRingReport verify_invariant_ring_B0(const Field& k, const Scalar& gamma) {
  require_odd(k);
  Algebra b0 = construct_family({"B", {gamma, k.zero()}}, k);
  // x -> R + S, y -> t(u - v)
  return invariant_ring("B_0", b0, gamma,
                        {coords8(k, {0, 0, 1, 1, 0, 0, 0, 0}), coords8(k, {0, 0, 0, 0, 1, -1, 0, 0})});
}

InvariantRingReport verify_invariant_ring_C2a(const Field& k, const Scalar& alpha) {
  require_odd(k);
  Algebra c = construct_family({"C", {alpha, alpha, k.from_int(2) * alpha}}, k);
  // x -> t(u - v) + R + S, y -> t(u - v)
  return invariant_ring("C_2a", c, alpha,
                        {coords8(k, {0, 0, 1, 1, 1, -1, 0, 0}), coords8(k, {0, 0, 0, 0, 1, -1, 0, 0})});
}

// ------------------------------------------------------------------ catalog

std::vector<NamedFactor> two_dim_factors(const Field& field) {
  if (!field.is_finite()) throw Error(Errc::Unsupported, "the dimension-4 catalog needs a finite field");
  std::vector<NamedFactor> out{{"k2", split_presentation(field)}, {"dual", dual_presentation(field)}};
  if (auto l = field_presentation(field)) out.push_back({"l", *l});
  return out;
}

std::vector<ReferenceCandidate> reference_candidates(const Field& field) {
  std::vector<ReferenceCandidate> out;
  auto add = [&](Label label, std::string id) {
    Algebra a = construct(label, field);
    out.push_back({std::move(label), std::move(a), std::move(id)});
  };
  const Scalar z = field.zero();
  const Label k = Label::matrix_ring(1);
  add(Label::product({k, k, k, k}), "k4");
  add(Label::matrix_ring(2), "M2");
  add(Label::truncated_path(round_trip_quiver()), "roundtrip");
  add(Label::path_algebra(GeneralQuiver({"a", "b", "c"}, {{"r", 1, 2}})), "Gamma");
  add(Label::product({Label::quotient_poly(z, z), Label::quotient_poly(z, z)}), "kxi2");
  add(Label::truncated_path(GeneralQuiver({"a", "b"}, {{"r", 0, 1}, {"l", 1, 1}})), "Delta2");
  add(Label::truncated_path(GeneralQuiver({"a", "b"}, {{"r", 0, 1}, {"l", 0, 0}})), "Delta1");
  auto l = field_presentation(field);
  if (l) {
    Label ql = Label::quotient_poly(l->alpha, l->beta);
    add(Label::product({ql, ql}), "");
    add(Label::tensor({ql, Label::quotient_poly(z, z)}), "");
  }
  const Scalar one = field.one();
  for (const auto& q : field.elements()) {
    std::string id = q.is_zero() ? "A0" : q == one ? "A1" : q == -one ? "wedge" : "Aq";
    add(Label::family("A", {q}), id);
  }
  if (l && field.characteristic() != 2 && l->alpha.is_zero()) {
    const Scalar a = -l->beta;  // x^2 = a
    add(Label::family("C", {a, a, field.from_int(2) * a}), "");
  }
  if (l && field.characteristic() == 2)
    for (const auto& q : field.elements()) add(Label::family("D", {l->alpha, l->beta, l->alpha, l->beta, q}), "");
  return out;
}

std::vector<std::string> Catalog4::labels_for(const std::string& factor_pair) const {
  std::vector<std::string> out;
  for (const auto& r : rows)
    if (std::find(r.factor_pairs.begin(), r.factor_pairs.end(), factor_pair) != r.factor_pairs.end())
      out.push_back(r.label);
  return out;
}

std::vector<GabrielEntry> load_gabriel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::vector<GabrielEntry> out;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    for (const auto& e : j.at("algebras")) {
      GabrielEntry g;
      g.name = e.at("name").get<std::string>();
      g.reference = e.value("reference", std::string());
      g.factorizable = e.at("factorizable").get<bool>();
      out.push_back(std::move(g));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::ParseError, path + ": " + ex.what());
  }
  return out;
}

std::string default_gabriel_path() {
  namespace fs = std::filesystem;
  for (const char* dir : {QDUP_SOURCE_DATA_DIR, QDUP_INSTALL_DATA_DIR}) {
    if (!*dir) continue;
    fs::path p = fs::path(dir) / "gabriel_dim4.json";
    if (fs::exists(p)) return p.string();
  }
  return "data/gabriel_dim4.json";
}

namespace {

struct Product {
  std::string pair;
  Tau2x2 tau;
  Algebra algebra;
  Fingerprint fp;
};

}  // namespace

Catalog4 catalog4(const Field& field, const std::vector<GabrielEntry>& gabriel, const Budgets& budgets, int jobs) {
  std::vector<NamedFactor> factors = two_dim_factors(field);
  std::vector<Product> products;
  for (const auto& a : factors)
    for (const auto& b : factors) {
      const std::string pair = a.name + " (x) " + b.name;
      for (const auto& t : brute_force_tau_2x2(a.presentation, b.presentation, budgets))
        products.push_back({pair, t, build_tau_2x2(a.presentation, b.presentation, t), {}});
    }

  // fingerprints are independent, split them across workers
  const std::size_t workers = static_cast<std::size_t>(std::max(1, jobs));
  std::vector<std::thread> pool;
  std::mutex err_mu;
  std::exception_ptr err;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < products.size(); i += workers)
          products[i].fp = fingerprint(products[i].algebra, budgets);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);

  Catalog4 cat;
  cat.field = field;
  cat.products = products.size();
  auto iso = [&](const Algebra& x, const Algebra& y) {
    if (x == y) return true;
    IsoResult r = iso_search(x, y, IsoStrategy::Generators, budgets);
    if (r.budget_exceeded) throw Error(Errc::BudgetExceeded, "isomorphism search exceeded the budget");
    return r.outcome == IsoOutcome::Iso;
  };
  for (const auto& p : products) {
    CatalogRow* hit = nullptr;
    for (auto& row : cat.rows)
      if (row.fingerprint == p.fp && iso(row.algebra, p.algebra)) {
        hit = &row;
        break;
      }
    if (!hit) {
      CatalogRow row;
      row.representative = p.pair + ", tau=" + p.tau.to_string();
      row.fingerprint = p.fp;
      row.algebra = p.algebra;
      cat.rows.push_back(std::move(row));
      hit = &cat.rows.back();
    }
    ++hit->tau_count;
    if (std::find(hit->factor_pairs.begin(), hit->factor_pairs.end(), p.pair) == hit->factor_pairs.end())
      hit->factor_pairs.push_back(p.pair);
  }

  std::vector<ReferenceCandidate> refs = reference_candidates(field);
  std::vector<Fingerprint> ref_fps;
  for (const auto& c : refs) ref_fps.push_back(fingerprint(c.algebra, budgets));
  for (auto& row : cat.rows) {
    row.label = "unidentified";
    for (std::size_t i = 0; i < refs.size(); ++i) {
      if (!(ref_fps[i] == row.fingerprint) || !iso(refs[i].algebra, row.algebra)) continue;
      row.reference = refs[i].label;
      row.label = refs[i].label.to_string();
      if (!refs[i].gabriel_id.empty())
        for (const auto& g : gabriel)
          if (g.reference == refs[i].gabriel_id) {
            row.gabriel = g.name;
            row.gabriel_factorizable = g.factorizable;
            if (!g.factorizable) row.note = "realized as a twisted product, unboxed in the diagram";
          }
      break;
    }
  }
  return cat;
}

ProbeResult conjecture_probe(const TwoDim& a, const Budgets& budgets) {
  ProbeResult r;
  for (const auto& t : brute_force_tau_2x2(a, a, budgets)) {
    ++r.scanned;
    if (is_simple(build_tau_2x2(a, a, t), budgets)) {
      r.found = true;
      r.witness = t;
      break;
    }
  }
  return r;
}

std::string OrbitReport::to_string() const {
  std::ostringstream os;
  os << "C_q over " << alpha.field().to_string() << " with alpha=" << alpha.to_string() << ", beta=" << beta.to_string()
     << "\n";
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    os << "  class " << i + 1 << ": q in {";
    for (std::size_t j = 0; j < orbits[i].size(); ++j) os << (j ? ", " : "") << orbits[i][j].to_string();
    os << "}\n";
  }
  os << "  q^2 = 4 alpha beta: {";
  for (std::size_t j = 0; j < exceptional.size(); ++j) os << (j ? ", " : "") << exceptional[j].to_string();
  os << "}\n";
  return os.str();
}

OrbitReport cq_orbit_report(const Scalar& alpha, const Scalar& beta) {
  const Field k = alpha.field();
  require_odd(k);
  if (!k.is_finite()) throw Error(Errc::Unsupported, "orbit report needs a finite field");
  if (alpha.is_zero()) throw Error(Errc::AlphaZero, "alpha = 0");
  OrbitReport rep;
  rep.alpha = alpha;
  rep.beta = beta;
  const Scalar four_ab = k.from_int(4) * alpha * beta;
  std::vector<Scalar> reps;  // first q of each class
  for (const auto& q : k.elements()) {
    if ((q * q - four_ab).is_zero()) {
      rep.exceptional.push_back(q);
      continue;
    }
    bool placed = false;
    for (std::size_t i = 0; i < reps.size() && !placed; ++i)
      if (classify_Cq_pair(alpha, beta, q, reps[i]).verdict == CqVerdict::Isomorphic) {
        rep.orbits[i].push_back(q);
        placed = true;
      }
    if (!placed) {
      reps.push_back(q);
      rep.orbits.push_back({q});
    }
  }
  return rep;
}

}  // namespace qdup
