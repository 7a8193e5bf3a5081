#include "qdup/duplicates.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace qdup {

namespace {

GeneralQuiver component_quiver(const FunctionalQuiver& q, const ComponentInfo& c) {
  GeneralQuiver g;
  std::map<int, int> index;
  for (int v : c.vertices) index[v] = g.add_vertex(vertex_name(v));
  for (int v : c.vertices) g.add_arrow("a" + std::to_string(v + 1), index[v], index[q.phi(v)]);
  return g;
}

Vec unique_sorted(std::vector<Scalar> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

using Assignment = std::vector<std::pair<int, ColorTerm>>;

ColorTerm constant_term(const Scalar& s) { return ColorTerm{s, -1, false}; }

// Alternating colors along trees hanging off `roots`: a vertex at distance t from its
// attachment gets the attachment color for even t and -alpha - color for odd t.
void color_trees(const FunctionalQuiver& q, const ComponentInfo& c, const TwoDim& b, std::vector<Scalar>& colors,
                 std::vector<bool>& done) {
  // vertices sorted by depth so parents come first
  std::vector<int> order(c.vertices.begin(), c.vertices.end());
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return c.depth.at(x) < c.depth.at(y); });
  for (int v : order) {
    if (done[static_cast<std::size_t>(v)]) continue;
    const Scalar& parent = colors[static_cast<std::size_t>(q.phi(v))];
    colors[static_cast<std::size_t>(v)] = -b.alpha - parent;
    done[static_cast<std::size_t>(v)] = true;
  }
}

// Options for one component, each a full assignment of its vertices.
std::vector<Assignment> component_options(const FunctionalQuiver& q, const ComponentInfo& c, const TwoDim& b,
                                          int& next_param) {
  const Field fld = b.field();
  const std::size_t n = q.size();
  const Vec roots = unique_sorted(b.q_roots());
  std::vector<Assignment> out;

  if (c.strict && c.cycle_length() == 1) {
    out.push_back({{c.cycle[0], constant_term(fld.zero())}});
    return out;
  }
  if (c.strict && c.cycle_length() == 2) {
    if (fld.is_finite()) {
      for (const auto& a : fld.elements())
        out.push_back({{c.cycle[0], constant_term(a)}, {c.cycle[1], constant_term(-b.alpha - a)}});
    } else {
      int p = next_param++;
      out.push_back({{c.cycle[0], ColorTerm{fld.zero(), p, false}}, {c.cycle[1], ColorTerm{-b.alpha, p, true}}});
    }
    return out;
  }
  if (c.loop_vertex) {
    // each immediate predecessor of the loop picks a root independently
    const int loop = *c.loop_vertex;
    std::vector<int> preds;
    for (int v : c.vertices)
      if (v != loop && q.phi(v) == loop) preds.push_back(v);
    if (roots.empty()) return out;
    std::vector<std::size_t> pick(preds.size(), 0);
    while (true) {
      std::vector<Scalar> colors(n, fld.zero());
      std::vector<bool> done(n, false);
      done[static_cast<std::size_t>(loop)] = true;
      for (std::size_t i = 0; i < preds.size(); ++i) {
        colors[static_cast<std::size_t>(preds[i])] = roots[pick[i]];
        done[static_cast<std::size_t>(preds[i])] = true;
      }
      color_trees(q, c, b, colors, done);
      Assignment as;
      for (int v : c.vertices) as.push_back({v, constant_term(colors[static_cast<std::size_t>(v)])});
      out.push_back(std::move(as));
      std::size_t pos = preds.size();
      while (pos > 0) {
        --pos;
        if (++pick[pos] < roots.size()) break;
        pick[pos] = 0;
        if (pos == 0) return out;
      }
      if (preds.empty()) return out;
    }
  }
  // cycle of length >= 2 that is not a strict 2-cycle: alternate roots around the cycle
  for (const auto& r : roots) {
    std::vector<Scalar> colors(n, fld.zero());
    std::vector<bool> done(n, false);
    bool consistent = true;
    for (std::size_t i = 0; i < c.cycle.size(); ++i) {
      colors[static_cast<std::size_t>(c.cycle[i])] = i % 2 == 0 ? r : -b.alpha - r;
      done[static_cast<std::size_t>(c.cycle[i])] = true;
    }
    for (std::size_t i = 0; i < c.cycle.size(); ++i) {
      const Scalar& x = colors[static_cast<std::size_t>(c.cycle[i])];
      const Scalar& y = colors[static_cast<std::size_t>(c.cycle[(i + 1) % c.cycle.size()])];
      if (!(x + y + b.alpha).is_zero()) consistent = false;
    }
    if (!consistent) continue;
    color_trees(q, c, b, colors, done);
    Assignment as;
    for (int v : c.vertices) as.push_back({v, constant_term(colors[static_cast<std::size_t>(v)])});
    out.push_back(std::move(as));
  }
  return out;
}

Matrix coloration_pair_delta(const FunctionalQuiver& q, const Vec& a, const Field& field) {
  const std::size_t n = q.size();
  Matrix d(field, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    d(j, static_cast<std::size_t>(q.phi(static_cast<int>(j)))) += a[j];
    d(j, j) -= a[j];
  }
  return d;
}

struct ComponentModel {
  Label label;
  Algebra model;
  std::vector<Vec> images;  // images of the model basis in the twisted product
  std::string note;
};

Vec twisted_vec(std::size_t n, const Field& f, std::initializer_list<std::pair<std::size_t, Scalar>> entries) {
  Vec v = zero_vec(f, 2 * n);
  for (const auto& [i, s] : entries) v[i] += s;
  return v;
}

Label component_label(const FunctionalQuiver& q, const ComponentInfo& c, const Vec& a, const TwoDim& b) {
  if (c.strict && c.cycle_length() == 2) {
    const Scalar& x = a[static_cast<std::size_t>(c.cycle[0])];
    const Scalar& y = a[static_cast<std::size_t>(c.cycle[1])];
    if (b.q(x).is_zero() && b.q(y).is_zero()) return Label::truncated_path(round_trip_quiver());
    return Label::matrix_ring(2);
  }
  if (c.loop_vertex) {
    const auto roots = unique_sorted(b.q_roots());
    if (roots.empty()) return Label::quotient_poly(b.alpha, b.beta);
    if (roots.size() == 1) return Label::truncated_path(component_quiver(q, c).opposite());
    return Label::truncated_path(cibils_transform(q, c, a, roots[0], roots[1]).opposite());
  }
  return Label::truncated_path(component_quiver(q, c).opposite());
}

ComponentModel component_model(const FunctionalQuiver& q, const ComponentInfo& c, const Vec& a, const TwoDim& b,
                               const Algebra& twisted) {
  const Field fld = b.field();
  const std::size_t n = q.size();
  const Scalar one = fld.one();
  ComponentModel out;
  out.label = component_label(q, c, a, b);

  if (c.strict && c.cycle_length() == 2) {
    const std::size_t i = static_cast<std::size_t>(c.cycle[0]), j = static_cast<std::size_t>(c.cycle[1]);
    const Scalar& ai = a[i];
    const Scalar& aj = a[j];
    if (out.label.kind() == LabelKind::TruncatedPath) {
      out.model = truncated_path(fld, round_trip_quiver());
      out.images = {twisted_vec(n, fld, {{i, one}}), twisted_vec(n, fld, {{j, one}}),
                    twisted_vec(n, fld, {{n + j, one}, {j, aj}}), twisted_vec(n, fld, {{n + i, one}, {i, ai}})};
      out.note = "u->e" + std::to_string(i + 1) + ", v->e" + std::to_string(j + 1) + ", R->e" + std::to_string(j + 1) +
                 "(x+b), S->e" + std::to_string(i + 1) + "(x+a)";
      return out;
    }
    // forward map onto M2: e_i -> E11, e_j -> E22, x -> [[-a, 1], [-q(a), -b]]
    out.model = matrix_2x2(fld);
    const Algebra& m2 = out.model;
    Vec xm{-ai, one, -b.q(ai), -aj};
    Vec e11 = m2.basis(0), e22 = m2.basis(3);
    Matrix fwd = Matrix::from_columns(fld, 4, {e11, e22, m2.mul(e11, xm), m2.mul(e22, xm)});
    auto inv = fwd.inverse();
    if (!inv) throw Error(Errc::CertificationFailed, "matrix-case map is not bijective");
    const std::size_t slots[4] = {i, j, n + i, n + j};
    for (std::size_t col = 0; col < 4; ++col) {
      Vec v = zero_vec(fld, 2 * n);
      for (std::size_t r = 0; r < 4; ++r) v[slots[r]] = (*inv)(r, col);
      out.images.push_back(std::move(v));
    }
    out.note = "inverse of e" + std::to_string(i + 1) + "->E11, e" + std::to_string(j + 1) +
               "->E22, x->[[-a,1],[-q(a),-b]]";
    return out;
  }

  if (out.label.kind() == LabelKind::QuotientPoly) {
    const std::size_t v = static_cast<std::size_t>(c.cycle[0]);
    out.model = quotient_poly(b.alpha, b.beta);
    out.images = {twisted_vec(n, fld, {{v, one}}), twisted_vec(n, fld, {{n + v, one}})};
    out.note = "1->e" + std::to_string(v + 1) + ", x->e" + std::to_string(v + 1) + "x";
    return out;
  }

  const auto roots = unique_sorted(b.q_roots());
  if (c.loop_vertex && roots.size() == 2) {
    const std::size_t loop = static_cast<std::size_t>(*c.loop_vertex);
    const GeneralQuiver& hat = out.label.quiver();
    out.model = truncated_path(fld, hat);
    const Scalar r1 = roots[0], r2 = roots[1];
    // E1 is 1 at x = -r2 and 0 at x = -r1 (the roots of p are -r1, -r2)
    Scalar d = (r1 - r2).inv();
    Vec e1 = twisted_vec(n, fld, {{n + loop, d}, {loop, r1 * d}});
    Vec e2 = sub(twisted_vec(n, fld, {{loop, one}}), e1);
    std::vector<Vec> vimg;
    for (const auto& name : hat.vertices()) {
      if (name == "1") vimg.push_back(e1);
      else if (name == "2") vimg.push_back(e2);
      else {
        std::size_t v = static_cast<std::size_t>(std::stoi(name.substr(1)) - 1);
        vimg.push_back(twisted_vec(n, fld, {{v, one}}));
      }
    }
    out.images = vimg;
    for (const auto& arrow : hat.arrows()) {
      // in the opposite quiver every arrow ends at the tree vertex it came from
      std::size_t v = static_cast<std::size_t>(std::stoi(arrow.label.substr(1)) - 1);
      Vec img = twisted_vec(n, fld, {{n + v, one}, {v, a[v]}});
      const std::string& src = hat.vertices()[static_cast<std::size_t>(arrow.source)];
      if (src == "1" || src == "2") img = twisted.mul(img, src == "1" ? e1 : e2);
      out.images.push_back(std::move(img));
    }
    out.note = "hat: 1->e" + std::to_string(loop + 1) + "(x+r1)/(r1-r2), 2->e" + std::to_string(loop + 1) +
               "(x+r2)/(r2-r1), r1=" + r1.to_string() + ", r2=" + r2.to_string();
    return out;
  }

  // Phi: e_i -> e_i, alpha_i -> e_i x + eps_i e_i
  const GeneralQuiver& qop = out.label.quiver();
  out.model = truncated_path(fld, qop);
  for (const auto& name : qop.vertices()) {
    std::size_t v = static_cast<std::size_t>(std::stoi(name.substr(1)) - 1);
    out.images.push_back(twisted_vec(n, fld, {{v, one}}));
  }
  for (const auto& arrow : qop.arrows()) {
    std::size_t v = static_cast<std::size_t>(std::stoi(arrow.label.substr(1)) - 1);
    // the loop arrow needs the root of q, the normalized color 0 does not square to zero
    Scalar eps = c.loop_vertex && static_cast<std::size_t>(*c.loop_vertex) == v ? roots.at(0) : a[v];
    out.images.push_back(twisted_vec(n, fld, {{n + v, one}, {v, eps}}));
  }
  out.note = "Phi: e_i->e_i, alpha_i->e_i x + eps_i e_i";
  return out;
}

template <class Fn>
void parallel_indices(std::size_t count, int jobs, Fn fn) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
  for (int w = 0; w < jobs; ++w)
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = static_cast<std::size_t>(w); i < count; i += static_cast<std::size_t>(jobs)) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<FunctionalQuiver> all_set_maps(int n) {
  std::vector<FunctionalQuiver> out;
  std::vector<int> t(static_cast<std::size_t>(n), 0);
  while (true) {
    out.emplace_back(t);
    int pos = n - 1;
    while (pos >= 0 && ++t[static_cast<std::size_t>(pos)] == n) t[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) return out;
  }
}

}  // namespace

// ------------------------------------------------------------------ verification

bool verify_coloration(const FunctionalQuiver& q, const Vec& a, const TwoDim& b) {
  const std::size_t n = q.size();
  if (a.size() != n) throw Error(Errc::DimensionMismatch, "coloration length differs from vertex count");
  const Field fld = b.field();
  const Scalar& al = b.alpha;
  const Scalar& be = b.beta;
  for (std::size_t i = 0; i < n; ++i) {
    Vec eq3 = zero_vec(fld, n), eq4 = zero_vec(fld, n);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t pk = static_cast<std::size_t>(q.phi(static_cast<int>(k)));
      if (static_cast<std::size_t>(q.phi(static_cast<int>(pk))) == i) {
        eq3[k] += a[k] * a[pk] - be;
        eq4[k] += a[k] + a[pk] + al;
      }
      if (pk == i) {
        eq3[k] -= a[k] * (a[k] + a[i]) + al * a[k];
        eq4[k] -= a[k] + a[i] + al;
      }
    }
    eq3[i] += a[i] * a[i] + al * a[i] + be;
    if (!is_zero(eq3) || !is_zero(eq4)) return false;
  }
  return true;
}

// ------------------------------------------------------------------ enumeration

Scalar ColorTerm::eval(const Vec& values) const {
  if (param < 0) return constant;
  const Scalar& t = values.at(static_cast<std::size_t>(param));
  return negated ? constant - t : constant + t;
}

std::string ColorTerm::to_string() const {
  if (param < 0) return constant.to_string();
  std::string t = "t" + std::to_string(param + 1);
  if (constant.is_zero()) return negated ? "-" + t : t;
  return constant.to_string() + (negated ? "-" : "+") + t;
}

Vec SymbolicColoration::instantiate(const Vec& values) const {
  Vec out;
  for (const auto& c : colors) out.push_back(c.eval(values));
  return out;
}

std::string SymbolicColoration::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < colors.size(); ++i) s += (i ? "," : "") + colors[i].to_string();
  return s + ")";
}

ColorationSet enumerate_colorations(const FunctionalQuiver& q, const TwoDim& b) {
  const std::size_t n = q.size();
  const Field fld = b.field();
  int params = 0;
  std::vector<std::vector<Assignment>> options;
  for (const auto& c : components(q)) {
    options.push_back(component_options(q, c, b, params));
    if (options.back().empty()) return {};
  }
  ColorationSet out;
  out.infinite_family = params > 0;
  std::vector<std::size_t> pick(options.size(), 0);
  while (true) {
    std::vector<ColorTerm> terms(n, constant_term(fld.zero()));
    for (std::size_t ci = 0; ci < options.size(); ++ci)
      for (const auto& [v, t] : options[ci][pick[ci]]) terms[static_cast<std::size_t>(v)] = t;
    if (params == 0) {
      Vec colors;
      for (const auto& t : terms) colors.push_back(t.constant);
      if (!verify_coloration(q, colors, b))
        throw Error(Errc::CertificationFailed, "rule-generated coloration fails the vertex equations");
      out.colorations.push_back(Coloration{q, std::move(colors)});
    } else {
      out.families.push_back(SymbolicColoration{q, std::move(terms), params});
    }
    std::size_t pos = options.size();
    bool wrapped = true;
    while (pos > 0) {
      --pos;
      if (++pick[pos] < options[pos].size()) {
        wrapped = false;
        break;
      }
      pick[pos] = 0;
    }
    if (wrapped) break;
  }
  std::sort(out.colorations.begin(), out.colorations.end(),
            [](const Coloration& x, const Coloration& y) { return x.colors < y.colors; });
  return out;
}

// ------------------------------------------------------------------ dictionary

Matrix delta_from_coloration(const FunctionalQuiver& q, const Vec& a, const Field& field) {
  if (a.size() != q.size()) throw Error(Errc::DimensionMismatch, "coloration length differs from vertex count");
  return coloration_pair_delta(q, a, field);
}

TwistingPair pair_from_coloration(const Coloration& c, const TwoDim& b) {
  if (!verify_coloration(c.quiver, c.colors, b)) throw Error(Errc::InvalidColoration, "vertex equations fail");
  const Field fld = b.field();
  Algebra a = power_of_field(fld, c.quiver.size());
  Matrix f = endomorphism_matrix(c.quiver, fld);
  Matrix d = delta_from_coloration(c.quiver, c.colors, fld);
  auto rep = verify_pair(a, b, f, d);
  if (!rep.ok()) throw Error(Errc::InvalidColoration, "coloration gives an invalid pair: " + rep.failure);
  return TwistingPair{a, b, f, d, inner_witness(a, f, d)};
}

Coloration coloration_from_pair(const TwistingPair& p) {
  const std::size_t n = p.A.dim();
  const Field& fld = p.A.field();
  if (!(p.A == power_of_field(fld, n))) throw Error(Errc::InvalidPair, "pair is not on k^n");
  std::vector<int> target(n, -1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar& s = p.f(j, i);
      if (s.is_zero()) continue;
      if (!s.is_one() || target[j] != -1) throw Error(Errc::InvalidPair, "f is not induced by a set map");
      target[j] = static_cast<int>(i);
    }
  for (int t : target)
    if (t < 0) throw Error(Errc::InvalidPair, "f is not induced by a set map");
  FunctionalQuiver q(target);
  Vec a = zero_vec(fld, n);
  for (std::size_t j = 0; j < n; ++j)
    if (target[j] != static_cast<int>(j)) a[j] = p.delta(j, static_cast<std::size_t>(target[j]));
  return Coloration{q, a};
}

// ------------------------------------------------------------------ classification

Label classify(const FunctionalQuiver& q, const Vec& a, const TwoDim& b) {
  if (!verify_coloration(q, a, b)) throw Error(Errc::InvalidColoration, "vertex equations fail");
  std::vector<Label> parts;
  for (const auto& c : components(q)) parts.push_back(component_label(q, c, a, b));
  return Label::product(parts);
}

Certificate certify(const FunctionalQuiver& q, const Vec& a, const TwoDim& b) {
  Label label = classify(q, a, b);
  TwistingPair pair = pair_from_coloration(Coloration{q, a}, b);
  Algebra twisted = build_twisted_product(pair);
  std::optional<Algebra> model;
  std::vector<Vec> images;
  std::vector<std::string> notes;
  for (const auto& c : components(q)) {
    ComponentModel cm = component_model(q, c, a, b, twisted);
    model = model ? direct_product(*model, cm.model) : cm.model;
    images.insert(images.end(), cm.images.begin(), cm.images.end());
    notes.push_back(cm.note);
  }
  LinearMap map = map_from_images(*model, twisted, images);
  if (!check_morphism(map)) throw Error(Errc::CertificationFailed, "component map is not multiplicative for " + q.set_map_string());
  if (!is_bijective(map)) throw Error(Errc::CertificationFailed, "component map is not bijective for " + q.set_map_string());
  return Certificate{label, *model, map, notes};
}

// ------------------------------------------------------------------ counting

std::string DuplicateCount::to_string() const {
  return infinite ? "infinite (1-parameter)" : std::to_string(count);
}

DuplicateCount count_twisting_maps(int n, const TwoDim& b) {
  if (n < 1 || n > 6) throw Error(Errc::OutOfRange, "n must lie in 1..6");
  DuplicateCount out;
  for (const auto& q : all_set_maps(n)) {
    auto set = enumerate_colorations(q, b);
    if (set.infinite_family) out.infinite = true;
    out.count += set.colorations.size();
  }
  return out;
}

std::vector<DuplicateEntry> list_duplicates(int n, const TwoDim& b, int jobs) {
  if (n < 1 || n > 6) throw Error(Errc::OutOfRange, "n must lie in 1..6");
  auto maps = all_set_maps(n);
  std::vector<std::vector<DuplicateEntry>> per(maps.size());
  parallel_indices(maps.size(), jobs, [&](std::size_t idx) {
    const auto& q = maps[idx];
    auto set = enumerate_colorations(q, b);
    for (const auto& c : set.colorations) {
      DuplicateEntry e;
      e.quiver = q;
      for (const auto& s : c.colors) e.colors.push_back(s.to_string());
      e.label = classify(q, c.colors, b).to_string();
      try {
        certify(q, c.colors, b);
        e.certified = true;
      } catch (const Error& err) {
        e.note = err.what();
      }
      per[idx].push_back(std::move(e));
    }
    for (const auto& fam : set.families) {
      DuplicateEntry e;
      e.quiver = q;
      for (const auto& t : fam.colors) e.colors.push_back(t.to_string());
      e.symbolic = true;
      e.label = "parameter family";
      e.note = "strict 2-cycles colored (t, -alpha-t): M2(k) unless t is a root of q, then the round-trip kQ<2";
      per[idx].push_back(std::move(e));
    }
  });
  std::vector<DuplicateEntry> out;
  for (auto& v : per)
    for (auto& e : v) out.push_back(std::move(e));
  return out;
}

}  // namespace qdup
