#include "qdup/quiver.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace qdup {

std::string vertex_name(int i) { return "e" + std::to_string(i + 1); }

// ---------------------------------------------------------------- GeneralQuiver

GeneralQuiver::GeneralQuiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)) {
  for (auto& a : arrows) add_arrow(std::move(a.label), a.source, a.target);
}

int GeneralQuiver::add_vertex(std::string label) {
  vertices_.push_back(std::move(label));
  return static_cast<int>(vertices_.size()) - 1;
}

void GeneralQuiver::add_arrow(std::string label, int source, int target) {
  const int n = static_cast<int>(vertices_.size());
  if (source < 0 || source >= n || target < 0 || target >= n)
    throw Error(Errc::MalformedQuiver, "arrow '" + label + "' has a dangling endpoint");
  arrows_.push_back({std::move(label), source, target});
}

int GeneralQuiver::vertex_index(const std::string& label) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), label);
  if (it == vertices_.end()) throw Error(Errc::MalformedQuiver, "no vertex '" + label + "'");
  return static_cast<int>(it - vertices_.begin());
}

GeneralQuiver GeneralQuiver::opposite() const {
  GeneralQuiver q;
  q.vertices_ = vertices_;
  for (const auto& a : arrows_) q.arrows_.push_back({a.label, a.target, a.source});
  return q;
}

GeneralQuiver GeneralQuiver::disjoint_union(const GeneralQuiver& other) const {
  GeneralQuiver q = *this;
  const int shift = static_cast<int>(vertices_.size());
  for (const auto& v : other.vertices_) q.vertices_.push_back(v);
  for (const auto& a : other.arrows_) q.arrows_.push_back({a.label, a.source + shift, a.target + shift});
  return q;
}

std::string GeneralQuiver::canonical_form() const {
  const int n = static_cast<int>(vertices_.size());
  // vertex signature: (loops, out-degree, in-degree), invariant under isomorphism
  std::vector<std::tuple<int, int, int>> sig(static_cast<std::size_t>(n));
  for (const auto& a : arrows_) {
    if (a.source == a.target) {
      ++std::get<0>(sig[static_cast<std::size_t>(a.source)]);
    } else {
      ++std::get<1>(sig[static_cast<std::size_t>(a.source)]);
      ++std::get<2>(sig[static_cast<std::size_t>(a.target)]);
    }
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sig[static_cast<std::size_t>(a)] < sig[static_cast<std::size_t>(b)]; });
  // blocks of equal signature are permuted independently
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && sig[static_cast<std::size_t>(order[j])] == sig[static_cast<std::size_t>(order[i])]) ++j;
    blocks.push_back({i, j});
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(i), order.begin() + static_cast<std::ptrdiff_t>(j));
    i = j;
  }
  std::vector<std::pair<int, int>> best;
  bool have = false;
  std::vector<int> pos(static_cast<std::size_t>(n));
  while (true) {
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    std::vector<std::pair<int, int>> edges;
    edges.reserve(arrows_.size());
    for (const auto& a : arrows_)
      edges.push_back({pos[static_cast<std::size_t>(a.source)], pos[static_cast<std::size_t>(a.target)]});
    std::sort(edges.begin(), edges.end());
    if (!have || edges < best) {
      best = edges;
      have = true;
    }
    // odometer over per-block permutations
    std::size_t b = 0;
    for (; b < blocks.size(); ++b) {
      auto first = order.begin() + static_cast<std::ptrdiff_t>(blocks[b].first);
      auto last = order.begin() + static_cast<std::ptrdiff_t>(blocks[b].second);
      if (std::next_permutation(first, last)) break;
    }
    if (b == blocks.size()) break;
  }
  std::ostringstream os;
  os << n << "|";
  for (auto& [s, t] : best) os << s << ">" << t << ";";
  return os.str();
}

bool GeneralQuiver::is_forest() const {
  std::vector<int> parent(vertices_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& a : arrows_) {
    int x = find(a.source), y = find(a.target);
    if (x == y) return false;
    parent[static_cast<std::size_t>(x)] = y;
  }
  return true;
}

std::string GeneralQuiver::to_dot(const std::string& name) const {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (std::size_t i = 0; i < vertices_.size(); ++i) os << "  v" << i << " [label=\"" << vertices_[i] << "\"];\n";
  for (const auto& a : arrows_) os << "  v" << a.source << " -> v" << a.target << " [label=\"" << a.label << "\"];\n";
  os << "}\n";
  return os.str();
}

bool GeneralQuiver::operator==(const GeneralQuiver& o) const {
  if (vertices_ != o.vertices_ || arrows_.size() != o.arrows_.size()) return false;
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    const auto& a = arrows_[i];
    const auto& b = o.arrows_[i];
    if (a.label != b.label || a.source != b.source || a.target != b.target) return false;
  }
  return true;
}

// ---------------------------------------------------------------- FunctionalQuiver

FunctionalQuiver::FunctionalQuiver(std::vector<int> target) : target_(std::move(target)) {
  const int n = static_cast<int>(target_.size());
  for (int t : target_)
    if (t < 0 || t >= n) throw Error(Errc::OutOfRange, "set map value out of range");
}

std::vector<int> FunctionalQuiver::preimages(int i) const {
  std::vector<int> out;
  for (std::size_t j = 0; j < target_.size(); ++j)
    if (target_[j] == i) out.push_back(static_cast<int>(j));
  return out;
}

std::string FunctionalQuiver::set_map_string() const {
  std::string s;
  for (std::size_t i = 0; i < target_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(target_[i] + 1);
  }
  return s;
}

GeneralQuiver FunctionalQuiver::to_general() const {
  GeneralQuiver q;
  for (std::size_t i = 0; i < target_.size(); ++i) q.add_vertex(vertex_name(static_cast<int>(i)));
  for (std::size_t i = 0; i < target_.size(); ++i)
    q.add_arrow("a" + std::to_string(i + 1), static_cast<int>(i), target_[i]);
  return q;
}

std::string FunctionalQuiver::to_dot(const std::vector<std::string>& colors, const std::string& name) const {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (std::size_t i = 0; i < target_.size(); ++i) {
    os << "  " << vertex_name(static_cast<int>(i)) << " [label=\"" << vertex_name(static_cast<int>(i));
    if (i < colors.size()) os << "\\n" << colors[i];
    os << "\"];\n";
  }
  for (std::size_t i = 0; i < target_.size(); ++i)
    os << "  " << vertex_name(static_cast<int>(i)) << " -> " << vertex_name(target_[i]) << ";\n";
  os << "}\n";
  return os.str();
}

FunctionalQuiver from_set_map(const std::vector<int>& one_based) {
  std::vector<int> t;
  const int n = static_cast<int>(one_based.size());
  for (int v : one_based) {
    if (v < 1 || v > n) throw Error(Errc::OutOfRange, "set map value " + std::to_string(v) + " not in 1.." + std::to_string(n));
    t.push_back(v - 1);
  }
  return FunctionalQuiver(std::move(t));
}

FunctionalQuiver parse_set_map(const std::string& text) {
  std::vector<int> vals;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    for (char c : cur)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw Error(Errc::ParseError, "bad set map '" + text + "'");
    if (cur.size() > 6) throw Error(Errc::ParseError, "bad set map '" + text + "'");
    vals.push_back(std::stoi(cur));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '{' || c == '}' || c == '(' || c == ')' || c == '[' || c == ']') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  if (vals.empty()) throw Error(Errc::ParseError, "empty set map");
  return from_set_map(vals);
}

Matrix endomorphism_matrix(const FunctionalQuiver& q, const Field& field) {
  const std::size_t n = q.size();
  Matrix m(field, n, n);
  // column i holds f(e_i): entries 1 at rows j with phi(j) = i
  for (std::size_t j = 0; j < n; ++j) m(j, static_cast<std::size_t>(q.phi(static_cast<int>(j)))) = field.one();
  return m;
}

// ---------------------------------------------------------------- components

std::vector<ComponentInfo> components(const FunctionalQuiver& q) {
  const int n = static_cast<int>(q.size());
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<ComponentInfo> out;
  // mark cycle vertices
  std::vector<int> state(static_cast<std::size_t>(n), 0);  // 0 unseen, 1 on stack, 2 done
  std::vector<bool> on_cycle(static_cast<std::size_t>(n), false);
  for (int s = 0; s < n; ++s) {
    if (state[static_cast<std::size_t>(s)]) continue;
    std::vector<int> path;
    int v = s;
    while (state[static_cast<std::size_t>(v)] == 0) {
      state[static_cast<std::size_t>(v)] = 1;
      path.push_back(v);
      v = q.phi(v);
    }
    if (state[static_cast<std::size_t>(v)] == 1) {
      // new cycle through v
      auto it = std::find(path.begin(), path.end(), v);
      for (; it != path.end(); ++it) on_cycle[static_cast<std::size_t>(*it)] = true;
    }
    for (int w : path) state[static_cast<std::size_t>(w)] = 2;
  }
  for (int s = 0; s < n; ++s) {
    if (!on_cycle[static_cast<std::size_t>(s)] || comp[static_cast<std::size_t>(s)] != -1) continue;
    ComponentInfo c;
    int v = s;
    do {
      c.cycle.push_back(v);
      v = q.phi(v);
    } while (v != s);
    auto mn = std::min_element(c.cycle.begin(), c.cycle.end());
    std::rotate(c.cycle.begin(), mn, c.cycle.end());
    const int id = static_cast<int>(out.size());
    std::deque<int> bfs;
    for (int w : c.cycle) {
      c.depth[w] = 0;
      comp[static_cast<std::size_t>(w)] = id;
      bfs.push_back(w);
    }
    while (!bfs.empty()) {
      int w = bfs.front();
      bfs.pop_front();
      for (int u : q.preimages(w)) {
        if (comp[static_cast<std::size_t>(u)] != -1) continue;
        comp[static_cast<std::size_t>(u)] = id;
        c.depth[u] = c.depth[w] + 1;
        bfs.push_back(u);
      }
    }
    for (auto& [w, d] : c.depth) c.vertices.push_back(w);
    c.strict = c.vertices.size() == c.cycle.size();
    if (c.cycle.size() == 1) c.loop_vertex = c.cycle[0];
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const ComponentInfo& a, const ComponentInfo& b) { return a.vertices[0] < b.vertices[0]; });
  return out;
}

FunctionalQuiver restrict_to(const FunctionalQuiver& q, const ComponentInfo& c, std::vector<int>* old_to_new) {
  std::vector<int> map(q.size(), -1);
  for (std::size_t i = 0; i < c.vertices.size(); ++i) map[static_cast<std::size_t>(c.vertices[i])] = static_cast<int>(i);
  std::vector<int> t;
  for (int v : c.vertices) t.push_back(map[static_cast<std::size_t>(q.phi(v))]);
  if (old_to_new) *old_to_new = map;
  return FunctionalQuiver(std::move(t));
}

GeneralQuiver cibils_transform(const FunctionalQuiver& q, const ComponentInfo& c, const std::vector<Scalar>& colors,
                               const Scalar& r1, const Scalar& r2) {
  if (!c.loop_vertex) throw Error(Errc::NotOneCycle, "component has no loop vertex");
  if (r1 == r2) throw Error(Errc::RootsNotDistinct, "Cibils transform needs two distinct roots");
  const int loop = *c.loop_vertex;
  GeneralQuiver out;
  std::map<int, int> index;
  for (int v : c.vertices) {
    if (v == loop) continue;
    index[v] = out.add_vertex(vertex_name(v));
  }
  const int one = out.add_vertex("1");
  const int two = out.add_vertex("2");
  for (int v : c.vertices) {
    if (v == loop) continue;
    int t = q.phi(v);
    if (t != loop) {
      out.add_arrow("a" + std::to_string(v + 1), index[v], index[t]);
      continue;
    }
    const Scalar& col = colors.at(static_cast<std::size_t>(v));
    if (col == r1) {
      out.add_arrow("a" + std::to_string(v + 1), index[v], one);
    } else if (col == r2) {
      out.add_arrow("a" + std::to_string(v + 1), index[v], two);
    } else {
      throw Error(Errc::InvalidColoration, "tree root " + vertex_name(v) + " is not colored by a root");
    }
  }
  return out;
}

// ---------------------------------------------------------------- shape classes

FunctionalQuiver canonical_relabeling(const FunctionalQuiver& q) {
  const int n = static_cast<int>(q.size());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best, cur(static_cast<std::size_t>(n)), inv(static_cast<std::size_t>(n));
  do {
    // relabeled map: perm(phi(perm^-1(i)))
    for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
    for (int i = 0; i < n; ++i) cur[static_cast<std::size_t>(i)] = perm[static_cast<std::size_t>(q.phi(inv[static_cast<std::size_t>(i)]))];
    if (best.empty() || cur < best) best = cur;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return FunctionalQuiver(best);
}

std::vector<ShapeClass> shape_classes(int n) {
  if (n < 1 || n > 6) throw Error(Errc::OutOfRange, "shape_classes supports 1 <= n <= 6");
  std::map<std::vector<int>, ShapeClass> classes;
  std::vector<int> phi(static_cast<std::size_t>(n), 0);
  while (true) {
    FunctionalQuiver q(phi);
    FunctionalQuiver canon = canonical_relabeling(q);
    auto [it, fresh] = classes.try_emplace(canon.targets());
    if (fresh) it->second.representative = q;  // odometer order visits the least map first
    ++it->second.size;
    int k = n - 1;
    while (k >= 0 && phi[static_cast<std::size_t>(k)] == n - 1) phi[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
    ++phi[static_cast<std::size_t>(k)];
  }
  std::vector<ShapeClass> out;
  for (auto& [k, v] : classes) out.push_back(v);
  std::sort(out.begin(), out.end(), [](const ShapeClass& a, const ShapeClass& b) { return a.representative < b.representative; });
  return out;
}

}  // namespace qdup
