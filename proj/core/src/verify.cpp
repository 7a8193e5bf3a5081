#include "qdup/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace qdup {

namespace {

const char* const kFields[] = {"F3", "F5", "F7"};

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

class Tally {
 public:
  IsoCheck& at(const std::string& name) {
    auto it = index_.find(name);
    if (it == index_.end()) {
      it = index_.emplace(name, checks_.size()).first;
      checks_.push_back(IsoCheck{name, {}, 0, 0, {}});
    }
    return checks_[it->second];
  }

  void record(const std::string& name, const std::string& field, const std::function<bool()>& check,
              const std::string& instance) {
    IsoCheck& c = at(name);
    if (std::find(c.fields.begin(), c.fields.end(), field) == c.fields.end()) c.fields.push_back(field);
    ++c.instances;
    bool ok = false;
    std::string why;
    try {
      ok = check();
    } catch (const Error& e) {
      why = std::string(": ") + e.what();
    }
    if (!ok) {
      if (c.failures++ == 0) c.first_failure = field + " " + instance + why;
    }
  }

  std::vector<IsoCheck> take() { return std::move(checks_); }

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<IsoCheck> checks_;
};

bool certified_map(const LinearMap& m) { return check_morphism(m) && is_bijective(m); }

// Name of the explicit map a component of a colored quiver is certified by.
std::string route(const ComponentInfo& c, const Vec& a, const TwoDim& b) {
  if (c.strict && c.cycle_length() == 2) {
    const bool roots = b.q(a[static_cast<std::size_t>(c.cycle[0])]).is_zero() &&
                       b.q(a[static_cast<std::size_t>(c.cycle[1])]).is_zero();
    return roots ? "strict 2-cycle -> round-trip kQ<2" : "strict 2-cycle -> M2(k)";
  }
  if (c.loop_vertex) {
    switch (b.distinct_q_roots().size()) {
      case 0: return "loop, q irreducible -> k[x]/(p)";
      case 1: return "Phi (loop, one root)";
      default: return "Phi-hat (loop, two roots)";
    }
  }
  return "Phi (cycle of length >= 2)";
}

}  // namespace

std::vector<IsoCheck> certify_explicit_isomorphisms() {
  Tally tally;
  for (const char* name : kFields) {
    const Field f = Field::parse(name);
    const Scalar zero = f.zero();

    for (const auto& b : {split_presentation(f), dual_presentation(f), *field_presentation(f)})
      for (int n = 1; n <= 3; ++n)
        for (const auto& q : set_maps(n))
          for (const auto& col : enumerate_colorations(q, b).colorations) {
            std::set<std::string> routes;
            for (const auto& c : components(q)) routes.insert(route(c, col.colors, b));
            const std::string inst = "map " + q.set_map_string() + " colors " + to_string(col.colors) + " " + b.to_string();
            for (const auto& r : routes)
              tally.record(r, name, [&] {
                Certificate cert = certify(q, col.colors, b);
                return certified_map(cert.map);
              }, inst);
          }

    for (const auto& t : f.elements()) {
      if (t == zero) continue;
      tally.record("X_t -> M2(k)", name, [&] { return certified_map(xt_to_matrix(t)); }, "t=" + t.to_string());
      for (const auto& g : f.elements())
        if (!g.is_zero())
          tally.record("B_q -> M2(k)", name, [&] { return certified_map(bq_to_matrix(g, t)); },
                       "gamma=" + g.to_string() + " q=" + t.to_string());
    }
    for (const auto& a : f.elements()) {
      if (a.is_zero()) continue;
      for (const auto& b : f.elements())
        for (const auto& q : f.elements())
          tally.record("C_q -> quaternion algebra", name, [&] { return certified_map(quaternion_from_Cq(a, b, q).map); },
                       "alpha=" + a.to_string() + " beta=" + b.to_string() + " q=" + q.to_string());
      if (is_square(a)) continue;
      tally.record("B_0 -> (lQ<2)^G", name, [&] { return verify_invariant_ring_B0(f, a).ok(); }, "gamma=" + a.to_string());
      tally.record("C_2a -> (lQ<2)^G", name, [&] { return verify_invariant_ring_C2a(f, a).ok(); },
                   "alpha=" + a.to_string());
    }
  }
  return tally.take();
}

std::vector<TwistingPair> pairs_from_enumerator(int n, const TwoDim& b) {
  std::vector<TwistingPair> out;
  for (const auto& q : set_maps(n))
    for (const auto& c : enumerate_colorations(q, b).colorations) out.push_back(pair_from_coloration(c, b));
  return out;
}

std::vector<OracleRow> oracle_suite(int n_max, const Field& field, const Budgets& budgets) {
  if (!field.is_finite()) throw Error(Errc::Unsupported, "the oracle suite needs a finite field");
  if (n_max < 1 || n_max > 4) throw Error(Errc::OutOfRange, "oracle n must lie in 1..4");
  std::vector<OracleRow> rows;
  for (const auto& alpha : field.elements())
    for (const auto& beta : field.elements()) {
      TwoDim b(alpha, beta);
      for (int n = 1; n <= n_max; ++n) {
        std::set<std::string> fast, brute;
        for (const auto& p : pairs_from_enumerator(n, b)) fast.insert(pair_key(p.f, p.delta));
        for (const auto& p : brute_force_pairs(power_of_field(field, static_cast<std::size_t>(n)), b, budgets))
          brute.insert(pair_key(p.f, p.delta));
        rows.push_back(OracleRow{b, n, fast.size(), brute.size(), fast == brute});
      }
    }
  return rows;
}

}  // namespace qdup
