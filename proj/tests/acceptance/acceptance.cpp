// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff every criterion passes.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qdup/verify.hpp"

using namespace qdup;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

std::vector<FunctionalQuiver> set_maps(int n) {
  std::vector<FunctionalQuiver> out;
  std::vector<int> t(static_cast<std::size_t>(n), 0);
  for (;;) {
    out.emplace_back(t);
    int pos = n - 1;
    while (pos >= 0 && ++t[static_cast<std::size_t>(pos)] == n) t[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) return out;
  }
}

std::vector<TwoDim> all_two_dims(const Field& f) {
  std::vector<TwoDim> out;
  for (const auto& a : f.elements())
    for (const auto& b : f.elements()) out.emplace_back(a, b);
  return out;
}

bool iso(const Algebra& a, const Algebra& b) {
  return iso_search(a, b, IsoStrategy::Generators).outcome == IsoOutcome::Iso;
}

std::string key_of(const std::optional<Label>& l) { return l ? l->key() : std::string("unidentified"); }

std::string join(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : ", ") + x;
  return "{" + out + "}";
}

// ------------------------------------------------------------------ 1

void oracle_equivalence(Outcome& out) {
  std::size_t rows = 0, pairs = 0;
  for (int p : {2, 3, 5}) {
    for (const auto& r : oracle_suite(3, Field::prime(p))) {
      ++rows;
      pairs += r.brute;
      out.expect(r.equal, "F" + std::to_string(p) + " " + r.b.to_string() + " n=" + std::to_string(r.n) + ": " +
                              std::to_string(r.enumerated) + " vs " + std::to_string(r.brute));
    }
  }
  Field f3 = Field::prime(3), f2 = Field::prime(2);
  const std::size_t c3 = brute_force_pairs(power_of_field(f3, 2), TwoDim(f3.one(), f3.zero())).size();
  const std::size_t c2 = brute_force_pairs(power_of_field(f2, 2), TwoDim(f2.one(), f2.zero())).size();
  out.expect(c3 == 8, "n=2 F3 (1,0) count " + std::to_string(c3));
  out.expect(c2 == 7, "n=2 F2 (1,0) count " + std::to_string(c2));
  out.expect(pairs_from_enumerator(2, TwoDim(f3.one(), f3.zero())).size() == 8, "enumerator count F3");
  out.expect(pairs_from_enumerator(2, TwoDim(f2.one(), f2.zero())).size() == 7, "enumerator count F2");
  out.detail << rows << " (p, alpha, beta, n) cases, " << pairs << " pairs; counts F3=" << c3 << " F2=" << c2;
}

// ------------------------------------------------------------------ 2

void dual_dual_system(Outcome& out) {
  for (int p : {2, 3, 5}) {
    Field f = Field::prime(p);
    TwoDim dual = dual_presentation(f);
    std::set<std::string> got, want;
    for (const auto& t : brute_force_tau_2x2(dual, dual)) got.insert(t.to_string());
    for (const auto& a : f.elements())
      for (const auto& d : f.elements())
        if ((a * (f.one() + d)).is_zero()) want.insert(Tau2x2{a, f.zero(), f.zero(), d}.to_string());
    out.expect(got == want, "F" + std::to_string(p) + " set mismatch");
    out.expect(got.size() == static_cast<std::size_t>(2 * p - 1), "F" + std::to_string(p) + " count");
    out.detail << "F" << p << ": " << got.size() << " ";
  }
}

// ------------------------------------------------------------------ 3

void explicit_isomorphisms(Outcome& out) {
  std::uint64_t instances = 0;
  auto checks = certify_explicit_isomorphisms();
  for (const auto& c : checks) {
    instances += c.instances;
    out.expect(c.ok(), c.name + ": " + c.first_failure);
  }
  out.detail << checks.size() << " maps, " << instances << " instances";
}

// ------------------------------------------------------------------ 4

std::set<std::string> catalog_keys(const Catalog4& cat, const std::string& pair) {
  std::set<std::string> out;
  for (const auto& r : cat.rows)
    for (const auto& fp : r.factor_pairs)
      if (fp == pair) out.insert(key_of(r.reference));
  return out;
}

// Realized classes of k2 (x) k2 found directly: every tau against every reference candidate.
std::set<std::string> direct_split_keys(const Field& f) {
  const TwoDim k2 = split_presentation(f);
  auto refs = reference_candidates(f);
  std::set<std::string> out;
  for (const auto& t : brute_force_tau_2x2(k2, k2)) {
    Algebra a = build_tau_2x2(k2, k2, t);
    std::string hit = "unidentified";
    for (const auto& r : refs)
      if (r.algebra.dim() == 4 && iso(a, r.algebra)) {
        hit = r.label.key();
        break;
      }
    out.insert(hit);
  }
  return out;
}

void split_list(Outcome& out) {
  const std::string k4 = Label::product({Label::matrix_ring(1), Label::matrix_ring(1), Label::matrix_ring(1),
                                         Label::matrix_ring(1)})
                             .key();
  const std::string m2 = Label::matrix_ring(2).key();
  const std::string rt = Label::truncated_path(round_trip_quiver()).key();
  const std::string gamma = Label::path_algebra(GeneralQuiver({"a", "b", "c"}, {{"r", 1, 2}})).key();

  Field f3 = Field::prime(3), f2 = Field::prime(2);
  Catalog4 c3 = catalog4(f3, load_gabriel(default_gabriel_path()));
  Catalog4 c2 = catalog4(f2, load_gabriel(default_gabriel_path()));
  const auto got3 = catalog_keys(c3, "k2 (x) k2");
  const auto got2 = catalog_keys(c2, "k2 (x) k2");
  out.expect(got3 == std::set<std::string>{k4, m2, rt, gamma}, "F3 classes " + join(got3));
  out.expect(got3 == direct_split_keys(f3), "F3 catalog disagrees with direct search");
  out.expect(got2 == std::set<std::string>{k4, rt, gamma}, "F2 classes " + join(got2));
  out.expect(got2 == direct_split_keys(f2), "F2 catalog disagrees with direct search");

  const LinearMap x1 = xt_to_matrix(f2.one());
  out.expect(check_morphism(x1) && is_bijective(x1), "X_1 -> M2(F2) not an isomorphism");
  out.expect(catalog_keys(c2, "dual (x) dual").count(m2) == 1, "M2(F2) not realized by dual (x) dual");
  out.detail << "F3 k2(x)k2: " << got3.size() << " classes; F2 k2(x)k2: " << got2.size()
             << " classes, M2(F2) via X_1 on dual (x) dual";
}

// ------------------------------------------------------------------ 5

void quaternion_criterion(Outcome& out) {
  std::size_t simple = 0, degenerate = 0;
  for (int p : {3, 5}) {
    Field f = Field::prime(p);
    for (const auto& alpha : f.elements()) {
      if (alpha.is_zero() || is_square(alpha)) continue;
      for (const auto& beta : f.elements()) {
        const Scalar disc = alpha * beta * f.from_int(4);
        std::optional<Scalar> q0;
        for (const auto& q : f.elements()) {
          const std::string inst = "F" + std::to_string(p) + " alpha=" + alpha.to_string() + " beta=" +
                                   beta.to_string() + " q=" + q.to_string();
          Algebra c = construct_family({"C", {alpha, beta, q}}, f);
          if (q * q == disc) {
            ++degenerate;
            out.expect(!is_simple(c), inst + " should not be simple");
            continue;
          }
          ++simple;
          out.expect(is_simple(c), inst + " not simple");
          if (!q0) q0 = q;
          out.expect(classify_Cq_pair(alpha, beta, q, *q0).verdict == CqVerdict::Isomorphic, inst + " vs q0");
          out.expect(iso(c, construct_family({"C", {alpha, beta, *q0}}, f)), inst + " iso search vs q0");
        }
      }
    }
  }
  out.detail << simple << " simple instances, " << degenerate << " degenerate";
}

// ------------------------------------------------------------------ 6

void a_family(Outcome& out) {
  Field f = Field::prime(5);
  std::size_t pairs = 0, isos = 0;
  for (int q = 1; q < 5; ++q)
    for (int h = 1; h < 5; ++h) {
      ++pairs;
      IsoResult r = iso_search(construct_family({"A", {f.from_int(q)}}, f), construct_family({"A", {f.from_int(h)}}, f),
                               IsoStrategy::Generators);
      const bool searched = r.outcome == IsoOutcome::Iso;
      isos += searched;
      out.expect(searched || r.complete, "incomplete search for q=" + std::to_string(q) + " h=" + std::to_string(h));
      out.expect(classify_Aq_pair(f.from_int(q), f.from_int(h)) == searched,
                 "q=" + std::to_string(q) + " h=" + std::to_string(h));
    }
  out.detail << pairs << " ordered pairs, " << isos << " isomorphic";
}

// ------------------------------------------------------------------ 7

void lifting(Outcome& out) {
  std::mt19937 rng(20240611);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const Field fields[] = {Field::prime(3), Field::prime(5)};
  std::size_t done = 0, lifts = 0, discrepancies = 0;
  while (done < 200) {
    const Field& f = fields[pick(2)];
    const int n = static_cast<int>(1 + pick(3));
    const auto bs = all_two_dims(f);
    const TwoDim& b = bs[pick(bs.size())];
    const auto maps = set_maps(n);
    const auto cols = enumerate_colorations(maps[pick(maps.size())], b).colorations;
    if (cols.empty()) continue;
    TwistingPair pair = pair_from_coloration(cols[pick(cols.size())], b);
    const auto endos = algebra_endomorphisms(pair.A);
    const Matrix& phi = endos[pick(endos.size())];
    const bool lhs = check_endo_lift(pair, phi);
    const bool rhs = check_morphism(lift_endo(pair, phi));
    ++done;
    lifts += lhs;
    if (lhs != rhs) {
      ++discrepancies;
      out.fail("instance " + std::to_string(done));
    }
  }
  out.expect(lifts > 0 && lifts < done, "sample does not exercise both sides");
  out.detail << done << " instances (seed 20240611), " << lifts << " liftable, " << discrepancies << " discrepancies";
}

// ------------------------------------------------------------------ 8

GeneralQuiver quiver(std::vector<std::string> v, std::vector<Arrow> a) { return GeneralQuiver(std::move(v), std::move(a)); }

// The k^3 example, named by its drawings: Q1..Q6 and T as set maps, and the hat forests.
struct K3Example {
  std::map<std::string, FunctionalQuiver> shapes{
      {"Q1", from_set_map({1, 2, 3})}, {"Q2", from_set_map({2, 2, 3})}, {"Q3", from_set_map({2, 3, 3})},
      {"Q4", from_set_map({2, 1, 2})}, {"Q5", from_set_map({2, 2, 2})}, {"Q6", from_set_map({2, 3, 1})},
      {"T", from_set_map({2, 1, 3})}};

  std::map<std::string, Algebra> outcomes(const Field& f) const {
    std::map<std::string, Algebra> out;
    for (const auto& [name, q] : shapes) out.emplace(name, truncated_path(f, q.to_general().opposite()));
    const std::map<std::string, GeneralQuiver> hats{
        {"Q1^", quiver({"1", "2", "3", "4", "5", "6"}, {})},
        {"Q2^", quiver({"a", "1", "2", "3", "4"}, {{"r", 0, 1}})},
        {"Q3^", quiver({"a", "b", "1", "2"}, {{"r", 0, 1}, {"s", 1, 2}})},
        {"Q5^", quiver({"a", "b", "1", "2"}, {{"r", 0, 2}, {"s", 1, 2}})},
        {"Q5~", quiver({"a", "b", "1", "2"}, {{"r", 0, 2}, {"s", 1, 3}})},
        {"T^", quiver({"u", "v", "1", "2"}, {{"R", 0, 1}, {"S", 1, 0}})}};
    for (const auto& [name, g] : hats) out.emplace(name, truncated_path(f, g.opposite()));
    const Algebra m2 = matrix_2x2(f);
    out.emplace("M2 x k^2", direct_product(m2, power_of_field(f, 2)));
    out.emplace("M2 x k[x]/(x^2)", direct_product(m2, quotient_poly(f.zero(), f.zero())));
    if (auto l = field_presentation(f)) {
      const Algebra ext = quotient_poly(l->alpha, l->beta);
      out.emplace("M2 x l", direct_product(m2, ext));
      out.emplace("l^3", direct_product(ext, direct_product(ext, ext)));
    }
    return out;
  }
};

void k3_example(Outcome& out) {
  const auto classes = shape_classes(3);
  out.expect(classes.size() == 7, "shape_classes(3) = " + std::to_string(classes.size()));

  K3Example ex;
  std::map<std::string, std::string> rep_name;  // canonical set map -> example name
  for (const auto& [name, q] : ex.shapes) rep_name[canonical_relabeling(q).set_map_string()] = name;
  std::set<std::string> covered;
  for (const auto& c : classes) {
    auto it = rep_name.find(canonical_relabeling(c.representative).set_map_string());
    out.expect(it != rep_name.end(), "shape " + c.representative.set_map_string() + " not in the example");
    if (it != rep_name.end()) covered.insert(it->second);
  }
  out.expect(covered.size() == 7, "example shapes not all produced");

  Field f = Field::prime(3);
  const auto models = ex.outcomes(f);
  using Expect = std::map<std::string, std::set<std::string>>;
  // distinct roots (k2), one root (dual), irreducible (the quadratic extension)
  const std::vector<std::pair<TwoDim, Expect>> cases{
      {split_presentation(f),
       {{"Q1", {"Q1^"}}, {"Q2", {"Q2^"}}, {"Q3", {"Q3^"}}, {"Q4", {"Q4"}}, {"Q5", {"Q5^", "Q5~"}}, {"Q6", {}},
        {"T", {"T^", "M2 x k^2"}}}},
      {dual_presentation(f),
       {{"Q1", {"Q1"}}, {"Q2", {"Q2"}}, {"Q3", {"Q3"}}, {"Q4", {"Q4"}}, {"Q5", {"Q5"}}, {"Q6", {"Q6"}},
        {"T", {"T", "M2 x k[x]/(x^2)"}}}},
      {*field_presentation(f),
       {{"Q1", {"l^3"}}, {"Q2", {}}, {"Q3", {}}, {"Q4", {}}, {"Q5", {}}, {"Q6", {}}, {"T", {"M2 x l"}}}}};

  std::size_t products = 0;
  for (const auto& [b, expect] : cases)
    for (const auto& [name, q] : ex.shapes) {
      std::set<std::string> got;
      for (const auto& col : enumerate_colorations(q, b).colorations) {
        ++products;
        const Algebra r = build_twisted_product(pair_from_coloration(col, b));
        std::string hit = "unmatched";
        for (const auto& [mname, m] : models)
          if (iso(r, m)) {
            hit = mname;
            break;
          }
        got.insert(hit);
      }
      out.expect(got == expect.at(name), b.to_string() + " " + name + ": " + join(got));
    }
  out.detail << classes.size() << " shapes, " << products << " products over F3 matched";
}

// ------------------------------------------------------------------ 9

void properties(Outcome& out) {
  std::size_t algebras = 0, certified = 0, forests = 0, colorations = 0;
  auto algebra_ok = [&](const Algebra& a, const std::string& what) {
    ++algebras;
    out.expect(check_algebra(a).ok(), what + " fails check_algebra");
  };

  for (int p : {2, 3, 5}) {
    Field f = Field::prime(p);
    const std::string fs = f.to_string();
    for (std::size_t n = 1; n <= 4; ++n) algebra_ok(power_of_field(f, n), "k^n " + fs);
    for (const auto& b : all_two_dims(f)) algebra_ok(quotient_poly(b.alpha, b.beta), b.to_string());
    algebra_ok(matrix_2x2(f), "M2 " + fs);
    for (const auto& r : reference_candidates(f)) {
      algebra_ok(r.algebra, r.label.to_string() + " " + fs);
      algebra_ok(construct(r.label, f), r.label.to_string() + " constructed " + fs);
      algebra_ok(opposite(r.algebra), r.label.to_string() + " op " + fs);
    }
    for (const auto& a : two_dim_factors(f))
      for (const auto& b : two_dim_factors(f)) {
        algebra_ok(tensor_product(quotient_poly(a.presentation.alpha, a.presentation.beta),
                                  quotient_poly(b.presentation.alpha, b.presentation.beta)),
                   a.name + " (x) " + b.name + " " + fs);
        for (const auto& t : brute_force_tau_2x2(a.presentation, b.presentation))
          algebra_ok(build_tau_2x2(a.presentation, b.presentation, t), a.name + " (x)_tau " + b.name);
      }
    for (const auto& x : f.elements()) {
      algebra_ok(construct_family({"A", {x}}, f), "A " + fs);
      algebra_ok(construct_family({"X", {x}}, f), "X " + fs);
      for (const auto& y : f.elements()) {
        algebra_ok(construct_family({"B", {x, y}}, f), "B " + fs);
        if (p == 2) {
          for (const auto& z : f.elements())
            for (const auto& w : f.elements())
              for (const auto& q : f.elements()) algebra_ok(construct_family({"D", {x, y, z, w, q}}, f), "D");
          continue;
        }
        if (!x.is_zero() && !y.is_zero()) algebra_ok(quaternion_algebra(x, y), "quaternion " + fs);
        for (const auto& q : f.elements()) algebra_ok(construct_family({"C", {x, y, q}}, f), "C " + fs);
      }
    }

    for (const auto& b : all_two_dims(f)) {
      const auto roots = b.distinct_q_roots();
      for (int n = 1; n <= 3; ++n)
        for (const auto& q : set_maps(n))
          for (const auto& col : enumerate_colorations(q, b).colorations) {
            ++colorations;
            const std::string inst = fs + " " + b.to_string() + " map " + q.set_map_string() + " " + to_string(col.colors);
            out.expect(verify_coloration(q, col.colors, b), inst + " fails the vertex equations");
            const Algebra twisted = build_twisted_product(pair_from_coloration(col, b));
            algebra_ok(twisted, inst);
            Certificate cert = certify(q, col.colors, b);
            algebra_ok(cert.model, inst + " model");
            ++certified;
            out.expect(fingerprint(cert.model) == fingerprint(twisted), inst + " fingerprint mismatch");
            if (roots.size() != 2) continue;
            for (const auto& c : components(q)) {
              if (!c.loop_vertex) continue;
              ++forests;
              out.expect(cibils_transform(q, c, col.colors, roots[0], roots[1]).is_forest(), inst + " hat not a forest");
            }
          }
    }
  }

  // colorations alone for n = 4 and F7
  for (int p : {2, 3, 5, 7}) {
    Field f = Field::prime(p);
    for (const auto& b : all_two_dims(f))
      for (int n = (p == 7 ? 1 : 4); n <= 4; ++n)
        for (const auto& q : set_maps(n))
          for (const auto& col : enumerate_colorations(q, b).colorations) {
            ++colorations;
            out.expect(verify_coloration(q, col.colors, b), f.to_string() + " map " + q.set_map_string());
          }
  }

  for (const char* name : {"F3", "F5"}) {
    Field f = Field::parse(name);
    for (const auto& t : f.elements()) {
      if (t.is_zero()) continue;
      const LinearMap x = xt_to_matrix(t);
      ++certified;
      out.expect(fingerprint(x.source) == fingerprint(x.target), "X_t fingerprint");
      const LinearMap bq = bq_to_matrix(f.one(), t);
      ++certified;
      out.expect(fingerprint(bq.source) == fingerprint(bq.target), "B_q fingerprint");
    }
  }

  out.detail << algebras << " constructor outputs, " << certified << " certified isomorphisms, " << forests
             << " hat forests, " << colorations << " colorations";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"dual (x) dual 2x2 system", dual_dual_system},
      {"explicit isomorphism certification", explicit_isomorphisms},
      {"k2 (x) k2 class list", split_list},
      {"quaternion criterion", quaternion_criterion},
      {"A-family classification", a_family},
      {"lifting biconditional", lifting},
      {"k^3 example", k3_example},
      {"property suites", properties}};

  bool all = true;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << index << " " << name << " (" << ms << " ms): " << o.detail.str()
              << std::endl;
  }
  return all ? 0 : 1;
}
