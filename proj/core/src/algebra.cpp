#include "qdup/algebra.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace qdup {

// ---------------------------------------------------------------- Algebra

Algebra::Algebra(Field f, std::size_t dim, std::vector<Vec> table, Vec unit, std::vector<std::string> labels) {
  if (dim == 0) throw Error(Errc::DimensionMismatch, "algebra of dimension 0");
  if (table.size() != dim * dim) throw Error(Errc::DimensionMismatch, "structure table must have dim^2 entries");
  for (const auto& v : table) {
    if (v.size() != dim) throw Error(Errc::DimensionMismatch, "structure constant vector length");
    for (const auto& s : v)
      if (!(s.field() == f)) throw Error(Errc::FieldMismatch, "structure constant outside the field");
  }
  if (!unit.empty() && unit.size() != dim) throw Error(Errc::DimensionMismatch, "unit length");
  if (labels.empty()) {
    for (std::size_t i = 0; i < dim; ++i) labels.push_back("b" + std::to_string(i + 1));
  }
  if (labels.size() != dim) throw Error(Errc::DimensionMismatch, "label count");
  auto d = std::make_shared<Data>();
  d->field = f;
  d->dim = dim;
  d->table = std::move(table);
  d->unit = std::move(unit);
  d->labels = std::move(labels);
  d_ = std::move(d);
}

const Vec& Algebra::unit() const {
  if (d_->unit.empty()) throw Error(Errc::Unsupported, "algebra has no stored unit");
  return d_->unit;
}

Vec Algebra::mul(const Vec& a, const Vec& b) const {
  const std::size_t n = dim();
  if (a.size() != n || b.size() != n) throw Error(Errc::DimensionMismatch, "element length");
  Vec out = zero();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j].is_zero()) continue;
      Scalar c = a[i] * b[j];
      const Vec& p = product(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (!p[k].is_zero()) out[k] += c * p[k];
    }
  }
  return out;
}

Matrix Algebra::left_mult(const Vec& a) const {
  Matrix m(field(), dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) m.set_column(j, mul(a, basis(j)));
  return m;
}

Matrix Algebra::right_mult(const Vec& a) const {
  Matrix m(field(), dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) m.set_column(j, mul(basis(j), a));
  return m;
}

std::string Algebra::element_to_string(const Vec& v) const {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    if (!v[i].is_one()) s += "(" + v[i].to_string() + ")*";
    s += labels()[i];
  }
  return s.empty() ? "0" : s;
}

Algebra Algebra::with_labels(std::vector<std::string> labels) const {
  return Algebra(field(), dim(), d_->table, d_->unit, std::move(labels));
}

bool Algebra::operator==(const Algebra& o) const {
  if (!(field() == o.field()) || dim() != o.dim()) return false;
  for (std::size_t i = 0; i < d_->table.size(); ++i)
    if (!equal(d_->table[i], o.d_->table[i])) return false;
  if (d_->unit.empty() != o.d_->unit.empty()) return false;
  return d_->unit.empty() || equal(d_->unit, o.d_->unit);
}

Vec element_at(const Field& f, std::size_t dim, std::uint64_t index) {
  const std::uint64_t q = f.order();
  Vec v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    v[i] = f.element(index % q);
    index /= q;
  }
  return v;
}

std::optional<std::uint64_t> element_count(const Field& f, std::size_t dim, std::uint64_t limit) {
  if (!f.is_finite()) return std::nullopt;
  const std::uint64_t q = f.order();
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (n > limit / q) return std::nullopt;
    n *= q;
  }
  if (n > limit) return std::nullopt;
  return n;
}

AlgebraReport check_algebra(const Algebra& a) {
  AlgebraReport r;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n && r.associative; ++i)
    for (std::size_t j = 0; j < n && r.associative; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec lhs = a.mul(a.product(i, j), a.basis(k));
        Vec rhs = a.mul(a.basis(i), a.product(j, k));
        if (!equal(lhs, rhs)) {
          r.associative = false;
          r.failing_triple = std::array<std::size_t, 3>{i, j, k};
          break;
        }
      }
  if (a.has_unit()) {
    for (std::size_t j = 0; j < n; ++j) {
      Vec b = a.basis(j);
      if (!equal(a.mul(a.unit(), b), b) || !equal(a.mul(b, a.unit()), b)) {
        r.unital = false;
        r.failing_unit = j;
        break;
      }
    }
    return r;
  }
  // solve u b_j = b_j = b_j u for u
  Matrix sys(a.field(), 2 * n * n, n);
  Vec rhs = zero_vec(a.field(), 2 * n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        sys(j * n + k, i) = a.product(i, j)[k];
        sys(n * n + j * n + k, i) = a.product(j, i)[k];
      }
      if (j == k) {
        rhs[j * n + k] = a.field().one();
        rhs[n * n + j * n + k] = a.field().one();
      }
    }
  auto u = sys.solve(rhs);
  r.unital = u.has_value();
  r.found_unit = u;
  return r;
}

// ---------------------------------------------------------------- constructors

namespace {

std::vector<Vec> zero_table(const Field& f, std::size_t n) { return std::vector<Vec>(n * n, zero_vec(f, n)); }

}  // namespace

Algebra power_of_field(const Field& f, std::size_t n) {
  auto t = zero_table(f, n);
  std::vector<std::string> labels;
  Vec unit(n, f.one());
  for (std::size_t i = 0; i < n; ++i) {
    t[i * n + i] = unit_vec(f, n, i);
    labels.push_back(vertex_name(static_cast<int>(i)));
  }
  return Algebra(f, n, std::move(t), std::move(unit), std::move(labels));
}

Algebra quotient_poly(const Scalar& alpha, const Scalar& beta) {
  alpha.require_same(beta);
  Field f = alpha.field();
  auto t = zero_table(f, 2);
  t[0] = unit_vec(f, 2, 0);
  t[1] = unit_vec(f, 2, 1);
  t[2] = unit_vec(f, 2, 1);
  t[3] = Vec{-beta, alpha};
  return Algebra(f, 2, std::move(t), unit_vec(f, 2, 0), {"1", "x"});
}

Algebra matrix_2x2(const Field& f) {
  auto t = zero_table(f, 4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t d = 0; d < 2; ++d) t[(2 * a + b) * 4 + 2 * b + d] = unit_vec(f, 4, 2 * a + d);
  Vec unit = zero_vec(f, 4);
  unit[0] = unit[3] = f.one();
  return Algebra(f, 4, std::move(t), std::move(unit), {"E11", "E12", "E21", "E22"});
}

Algebra truncated_path(const Field& f, const GeneralQuiver& q) {
  const std::size_t nv = q.vertex_count();
  const std::size_t n = nv + q.arrow_count();
  if (n == 0) throw Error(Errc::MalformedQuiver, "empty quiver");
  auto t = zero_table(f, n);
  std::vector<std::string> labels = q.vertices();
  Vec unit = zero_vec(f, n);
  for (std::size_t i = 0; i < nv; ++i) {
    t[i * n + i] = unit_vec(f, n, i);
    unit[i] = f.one();
  }
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const Arrow& a = q.arrows()[k];
    const std::size_t idx = nv + k;
    t[idx * n + static_cast<std::size_t>(a.source)] = unit_vec(f, n, idx);
    t[static_cast<std::size_t>(a.target) * n + idx] = unit_vec(f, n, idx);
    labels.push_back(a.label);
  }
  return Algebra(f, n, std::move(t), std::move(unit), std::move(labels));
}

Algebra path_algebra(const Field& f, const GeneralQuiver& q) {
  // paths as arrow sequences in traversal order; vertices are the trivial paths
  struct Path {
    int source, target;
    std::vector<std::size_t> arrows;
  };
  std::vector<Path> paths;
  for (std::size_t i = 0; i < q.vertex_count(); ++i) paths.push_back({static_cast<int>(i), static_cast<int>(i), {}});
  std::vector<Path> frontier;
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const Arrow& a = q.arrows()[k];
    frontier.push_back({a.source, a.target, {k}});
  }
  const std::size_t limit = q.arrow_count() + 1;
  while (!frontier.empty()) {
    std::vector<Path> next;
    for (const auto& p : frontier) {
      if (p.arrows.size() > limit) throw Error(Errc::MalformedQuiver, "path algebra of a quiver with an oriented cycle");
      paths.push_back(p);
      for (std::size_t k = 0; k < q.arrow_count(); ++k) {
        const Arrow& a = q.arrows()[k];
        if (a.source != p.target) continue;
        Path ext = p;
        ext.arrows.push_back(k);
        ext.target = a.target;
        next.push_back(std::move(ext));
      }
    }
    frontier = std::move(next);
  }
  const std::size_t n = paths.size();
  auto find = [&](const Path& p) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < n; ++i)
      if (paths[i].arrows == p.arrows && paths[i].source == p.source && paths[i].target == p.target) return i;
    return std::nullopt;
  };
  auto t = zero_table(f, n);
  Vec unit = zero_vec(f, n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    const Path& p = paths[i];
    if (p.arrows.empty()) {
      labels.push_back(q.vertices()[static_cast<std::size_t>(p.source)]);
      unit[i] = f.one();
    } else {
      std::string s;
      for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
        if (!s.empty()) s += "*";
        s += q.arrows()[*it].label;
      }
      labels.push_back(s);
    }
  }
  // P * Q means "Q then P"
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Path& P = paths[i];
      const Path& Q = paths[j];
      if (Q.target != P.source) continue;
      Path c{Q.source, P.target, Q.arrows};
      c.arrows.insert(c.arrows.end(), P.arrows.begin(), P.arrows.end());
      auto idx = find(c);
      if (idx) t[i * n + j] = unit_vec(f, n, *idx);
    }
  return Algebra(f, n, std::move(t), std::move(unit), std::move(labels));
}

Algebra direct_product(const Algebra& a, const Algebra& b) {
  if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "direct product over different fields");
  const std::size_t na = a.dim(), nb = b.dim(), n = na + nb;
  const Field& f = a.field();
  auto t = zero_table(f, n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < na; ++k) t[i * n + j][k] = a.product(i, j)[k];
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t k = 0; k < nb; ++k) t[(na + i) * n + na + j][na + k] = b.product(i, j)[k];
  Vec unit;
  if (a.has_unit() && b.has_unit()) {
    unit = a.unit();
    unit.insert(unit.end(), b.unit().begin(), b.unit().end());
  }
  std::vector<std::string> labels;
  for (const auto& l : a.labels()) labels.push_back("(" + l + ",0)");
  for (const auto& l : b.labels()) labels.push_back("(0," + l + ")");
  return Algebra(f, n, std::move(t), std::move(unit), std::move(labels));
}

Algebra opposite(const Algebra& a) {
  const std::size_t n = a.dim();
  std::vector<Vec> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = a.product(j, i);
  return Algebra(a.field(), n, std::move(t), a.has_unit() ? a.unit() : Vec{}, a.labels());
}

Algebra tensor_product(const Algebra& a, const Algebra& b) {
  if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "tensor product over different fields");
  const std::size_t na = a.dim(), nb = b.dim(), n = na * nb;
  const Field& f = a.field();
  auto t = zero_table(f, n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t k = 0; k < na; ++k)
        for (std::size_t l = 0; l < nb; ++l) {
          const Vec& pa = a.product(i, k);
          const Vec& pb = b.product(j, l);
          Vec& out = t[(i + na * j) * n + (k + na * l)];
          for (std::size_t r = 0; r < na; ++r) {
            if (pa[r].is_zero()) continue;
            for (std::size_t s = 0; s < nb; ++s)
              if (!pb[s].is_zero()) out[r + na * s] += pa[r] * pb[s];
          }
        }
  Vec unit = zero_vec(f, n);
  for (std::size_t r = 0; r < na; ++r)
    for (std::size_t s = 0; s < nb; ++s) unit[r + na * s] = a.unit()[r] * b.unit()[s];
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < nb; ++j)
    for (std::size_t i = 0; i < na; ++i) labels.push_back(a.labels()[i] + "*" + b.labels()[j]);
  return Algebra(f, n, std::move(t), std::move(unit), std::move(labels));
}

Algebra scalar_extension(const Algebra& a, const Field& ext) {
  if (ext.kind() != FieldKind::QuadExt || !(ext.base() == a.field()))
    throw Error(Errc::FieldMismatch, "scalar extension needs a quadratic extension of the algebra's field");
  const std::size_t n = a.dim();
  std::vector<Vec> t(n * n);
  auto lift = [&](const Vec& v) {
    Vec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = ext.embed(v[i]);
    return w;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = lift(a.product(i, j));
  return Algebra(ext, n, std::move(t), a.has_unit() ? lift(a.unit()) : Vec{}, a.labels());
}

Algebra restrict_scalars(const Algebra& a) {
  const Field& l = a.field();
  if (l.kind() != FieldKind::QuadExt) throw Error(Errc::Unsupported, "restriction of scalars needs an extension field");
  const Field k = l.base();
  const std::size_t n = a.dim(), m = 2 * n;
  Scalar tgen = l.generator();
  auto down = [&](const Vec& v) {
    Vec w = zero_vec(k, m);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = v[i].coord(0);
      w[n + i] = v[i].coord(1);
    }
    return w;
  };
  std::vector<Vec> t(m * m);
  for (std::size_t e = 0; e < 2; ++e)
    for (std::size_t g = 0; g < 2; ++g) {
      Scalar c = l.one();
      if (e) c = c * tgen;
      if (g) c = c * tgen;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[(e * n + i) * m + g * n + j] = down(scale(c, a.product(i, j)));
    }
  std::vector<std::string> labels = a.labels();
  for (const auto& s : a.labels()) labels.push_back("t*" + s);
  return Algebra(k, m, std::move(t), a.has_unit() ? down(a.unit()) : Vec{}, std::move(labels));
}

Algebra quaternion_algebra(const Scalar& a, const Scalar& t) {
  a.require_same(t);
  Field f = a.field();
  auto tab = zero_table(f, 4);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, const Scalar& c) { tab[i * 4 + j][k] = c; };
  const Scalar one = f.one();
  for (std::size_t j = 0; j < 4; ++j) {
    set(0, j, j, one);
    set(j, 0, j, one);
  }
  // 1, i, j, k = ij
  set(1, 1, 0, a);
  set(2, 2, 0, t);
  set(1, 2, 3, one);
  set(2, 1, 3, -one);
  set(1, 3, 2, a);
  set(3, 1, 2, -a);
  set(2, 3, 1, -t);
  set(3, 2, 1, t);
  set(3, 3, 0, -(a * t));
  return Algebra(f, 4, std::move(tab), unit_vec(f, 4, 0), {"1", "i", "j", "ij"});
}

// ---------------------------------------------------------------- maps

LinearMap identity_map(const Algebra& a) { return {a, a, Matrix::identity(a.field(), a.dim())}; }

LinearMap map_from_images(const Algebra& source, const Algebra& target, const std::vector<Vec>& images) {
  if (images.size() != source.dim()) throw Error(Errc::DimensionMismatch, "one image per basis element");
  if (!(source.field() == target.field())) throw Error(Errc::FieldMismatch, "map between algebras over different fields");
  return {source, target, Matrix::from_columns(target.field(), target.dim(), images)};
}

LinearMap compose(const LinearMap& second, const LinearMap& first) {
  if (first.target.dim() != second.source.dim()) throw Error(Errc::DimensionMismatch, "composition shapes");
  return {first.source, second.target, second.matrix * first.matrix};
}

bool check_morphism(const LinearMap& phi) {
  const Algebra& s = phi.source;
  const Algebra& t = phi.target;
  if (!(s.field() == t.field()) || !(phi.matrix.field() == s.field()))
    throw Error(Errc::FieldMismatch, "morphism check across fields");
  if (phi.matrix.rows() != t.dim() || phi.matrix.cols() != s.dim())
    throw Error(Errc::DimensionMismatch, "map matrix shape");
  if (s.has_unit() && t.has_unit() && !equal(phi(s.unit()), t.unit())) return false;
  std::vector<Vec> img(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) img[i] = phi.matrix.column(i);
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j)
      if (!equal(phi(s.product(i, j)), t.mul(img[i], img[j]))) return false;
  return true;
}

bool is_bijective(const LinearMap& phi) {
  return phi.matrix.rows() == phi.matrix.cols() && phi.matrix.rank() == phi.matrix.rows();
}

// ---------------------------------------------------------------- invariants

bool is_commutative(const Algebra& a) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      if (!equal(a.product(i, j), a.product(j, i))) return false;
  return true;
}

std::size_t center_dim(const Algebra& a) {
  const std::size_t n = a.dim();
  Matrix sys(a.field(), n * n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      Vec d = sub(a.product(i, j), a.product(j, i));
      for (std::size_t k = 0; k < n; ++k) sys(j * n + k, i) = d[k];
    }
  return n - sys.rank();
}

namespace {

std::size_t commutator_dim(const Algebra& a) {
  EchelonSpan span(a.field(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) span.insert(sub(a.product(i, j), a.product(j, i)));
  return span.dim();
}

bool normalized(const Vec& v) {
  for (const auto& c : v)
    if (!c.is_zero()) return c.is_one();
  return false;
}

}  // namespace

std::size_t ideal_dim(const Algebra& a, const Vec& v) {
  EchelonSpan span(a.field(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vec left = a.mul(a.basis(i), v);
    if (is_zero(left)) continue;
    for (std::size_t j = 0; j < a.dim(); ++j) {
      span.insert(a.mul(left, a.basis(j)));
      if (span.dim() == a.dim()) return span.dim();
    }
  }
  return span.dim();
}

bool is_simple(const Algebra& a, const Budgets& budgets) {
  if (!a.field().is_finite()) throw Error(Errc::Unsupported, "simplicity scan needs a finite field");
  auto count = element_count(a.field(), a.dim(), budgets.count);
  if (!count) throw Error(Errc::BudgetExceeded, "simplicity scan over " + a.field().to_string() + "^" + std::to_string(a.dim()));
  for (std::uint64_t idx = 1; idx < *count; ++idx) {
    Vec v = element_at(a.field(), a.dim(), idx);
    if (!normalized(v)) continue;  // ideals of v and c*v coincide
    if (ideal_dim(a, v) < a.dim()) return false;
  }
  return true;
}

namespace {

struct ElementCounts {
  std::uint64_t idempotents = 0, square_zero = 0, units = 0;
};

// Same counts as the generic scan, on machine residues.
ElementCounts count_elements_prime(const Algebra& a) {
  const std::int64_t p = a.field().characteristic();
  const std::size_t n = a.dim();
  std::vector<std::int64_t> c(n * n * n);  // c[(i*n + j)*n + k]: coordinate k of b_i b_j
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c[(i * n + j) * n + k] = a.product(i, j)[k].residue();

  std::vector<std::int64_t> inverse(static_cast<std::size_t>(p), 0);
  for (std::int64_t x = 1; x < p; ++x) inverse[static_cast<std::size_t>(x)] = a.field().from_int(x).inv().residue();

  auto rank = [&](std::vector<std::int64_t> m) {
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < n; ++col) {
      std::size_t piv = r;
      while (piv < n && m[piv * n + col] == 0) ++piv;
      if (piv == n) continue;
      for (std::size_t k = 0; k < n; ++k) std::swap(m[r * n + k], m[piv * n + k]);
      const std::int64_t inv = inverse[static_cast<std::size_t>(m[r * n + col])];
      for (std::size_t k = 0; k < n; ++k) m[r * n + k] = m[r * n + k] * inv % p;
      for (std::size_t row = 0; row < n; ++row) {
        if (row == r || m[row * n + col] == 0) continue;
        const std::int64_t factor = m[row * n + col];
        for (std::size_t k = 0; k < n; ++k) m[row * n + k] = ((m[row * n + k] - factor * m[r * n + k]) % p + p) % p;
      }
      ++r;
    }
    return r;
  };

  ElementCounts out;
  std::vector<std::int64_t> v(n, 0), sq(n), left(n * n);
  for (;;) {
    std::fill(sq.begin(), sq.end(), 0);
    std::fill(left.begin(), left.end(), 0);
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      zero = false;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) left[k * n + j] += v[i] * c[(i * n + j) * n + k];  // b -> v b
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        left[k * n + j] %= p;
        sq[k] += left[k * n + j] * v[j];
      }
      sq[k] %= p;
    }
    if (sq == v) ++out.idempotents;
    if (std::all_of(sq.begin(), sq.end(), [](std::int64_t x) { return x == 0; })) ++out.square_zero;
    if (!zero && rank(left) == n) ++out.units;
    std::size_t pos = 0;
    while (pos < n && ++v[pos] == p) v[pos++] = 0;
    if (pos == n) return out;
  }
}

ElementCounts count_elements(const Algebra& a, std::uint64_t count) {
  if (a.field().kind() == FieldKind::Prime) return count_elements_prime(a);
  ElementCounts out;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Vec v = element_at(a.field(), a.dim(), idx);
    Vec sq = a.mul(v, v);
    if (equal(sq, v)) ++out.idempotents;
    if (is_zero(sq)) ++out.square_zero;
    if (!is_zero(v) && a.left_mult(v).rank() == a.dim()) ++out.units;
  }
  return out;
}

}  // namespace

Fingerprint fingerprint(const Algebra& a, const Budgets& budgets) {
  Fingerprint fp;
  fp.commutative = is_commutative(a);
  fp.center_dim = center_dim(a);
  fp.commutator_dim = commutator_dim(a);
  auto count = element_count(a.field(), a.dim(), budgets.count);
  if (!count) return fp;
  const ElementCounts counts = count_elements(a, *count);
  const std::uint64_t idem = counts.idempotents, sqz = counts.square_zero, units = counts.units;
  fp.idempotents = idem;
  fp.square_zero = sqz;
  fp.unit_group = units;
  fp.simple = is_simple(a, budgets);
  return fp;
}

std::string Fingerprint::to_string() const {
  std::ostringstream os;
  auto opt = [&](const auto& o) {
    if (o) {
      os << *o;
    } else {
      os << "?";
    }
  };
  os << "{commutative=" << (commutative ? "yes" : "no") << ", center=" << center_dim << ", commutators=" << commutator_dim
     << ", idempotents=";
  opt(idempotents);
  os << ", square_zero=";
  opt(square_zero);
  os << ", simple=";
  if (simple) {
    os << (*simple ? "yes" : "no");
  } else {
    os << "?";
  }
  os << ", units=";
  opt(unit_group);
  os << "}";
  return os.str();
}

std::size_t generated_dim(const Algebra& a, const std::vector<Vec>& gens) {
  EchelonSpan span(a.field(), a.dim());
  std::vector<Vec> basis;
  auto add = [&](const Vec& v) {
    if (span.insert(v)) basis.push_back(v);
  };
  if (a.has_unit()) add(a.unit());
  for (const auto& g : gens) add(g);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      add(a.mul(basis[i], basis[j]));
      add(a.mul(basis[j], basis[i]));
      if (span.dim() == a.dim()) return span.dim();
    }
  }
  return span.dim();
}

FixedAlgebra subalgebra_on(const Algebra& a, const std::vector<Vec>& basis, std::vector<std::string> labels) {
  const std::size_t m = basis.size();
  if (m == 0) throw Error(Errc::DimensionMismatch, "empty subalgebra basis");
  Matrix cols = Matrix::from_columns(a.field(), a.dim(), basis);
  if (cols.rank() != m) throw Error(Errc::DimensionMismatch, "subalgebra basis is not independent");
  auto coords = [&](const Vec& v) {
    auto c = cols.solve(v);
    if (!c) throw Error(Errc::AxiomViolated, "subspace is not closed under multiplication");
    return *c;
  };
  std::vector<Vec> t(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) t[i * m + j] = coords(a.mul(basis[i], basis[j]));
  Vec unit = a.has_unit() ? coords(a.unit()) : Vec{};
  if (labels.empty())
    for (std::size_t i = 0; i < m; ++i) labels.push_back("f" + std::to_string(i + 1));
  Algebra sub(a.field(), m, std::move(t), std::move(unit), std::move(labels));
  return {sub, map_from_images(sub, a, basis)};
}

FixedAlgebra fixed_subalgebra(const Algebra& a, const Matrix& g) {
  const std::size_t n = a.dim();
  if (g.rows() != n || g.cols() != n) throw Error(Errc::DimensionMismatch, "automorphism shape");
  Matrix id = Matrix::identity(a.field(), n);
  if (!(g * g == id)) throw Error(Errc::NotInvolutive, "g o g != id");
  if (!check_morphism({a, a, g})) throw Error(Errc::NotMorphism, "g is not an algebra automorphism");
  return subalgebra_on(a, (g - id).kernel());
}

// ---------------------------------------------------------------- isomorphism search

std::vector<std::size_t> greedy_generators(const Algebra& a) {
  std::vector<std::size_t> chosen;
  std::vector<Vec> gens;
  std::size_t cur = generated_dim(a, gens);
  while (cur < a.dim()) {
    std::size_t best = a.dim(), best_dim = cur;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
      auto trial = gens;
      trial.push_back(a.basis(i));
      std::size_t d = generated_dim(a, trial);
      if (d > best_dim) {
        best_dim = d;
        best = i;
      }
    }
    if (best == a.dim()) throw Error(Errc::Unsupported, "basis does not generate the algebra");
    chosen.push_back(best);
    gens.push_back(a.basis(best));
    cur = best_dim;
  }
  return chosen;
}

const char* outcome_name(IsoOutcome o) {
  switch (o) {
    case IsoOutcome::Iso: return "Iso";
    case IsoOutcome::NoneFound: return "NoneFound";
    case IsoOutcome::ProvedDistinct: return "ProvedDistinct";
  }
  return "?";
}

namespace {

// Words in the first k generators, built breadth-first by right multiplication from 1,
// with the relations w*g = sum c_m W_m that determine a morphism on the subalgebra.
struct WordLevel {
  std::vector<std::pair<std::size_t, std::size_t>> words;  // (parent word, generator); word 0 is the unit
  struct Relation {
    std::size_t word, gen;
    Vec coeffs;
  };
  std::vector<Relation> relations;
  Matrix word_matrix;  // columns are the word vectors
};

WordLevel build_level(const Algebra& a, const std::vector<Vec>& gens) {
  WordLevel lvl;
  std::vector<Vec> vecs{a.unit()};
  lvl.words.push_back({0, 0});
  EchelonSpan span(a.field(), a.dim());
  span.insert(a.unit());
  std::vector<std::pair<std::size_t, std::size_t>> pending;  // (word, gen) products landing in the span
  for (std::size_t w = 0; w < vecs.size(); ++w) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Vec v = a.mul(vecs[w], gens[g]);
      if (span.insert(v)) {
        vecs.push_back(v);
        lvl.words.push_back({w, g});
      } else {
        pending.push_back({w, g});
      }
    }
  }
  lvl.word_matrix = Matrix::from_columns(a.field(), a.dim(), vecs);
  for (auto [w, g] : pending) {
    auto c = lvl.word_matrix.solve(a.mul(vecs[w], gens[g]));
    lvl.relations.push_back({w, g, *c});
  }
  // cheap relations first: those with short words and the newest generator
  std::stable_sort(lvl.relations.begin(), lvl.relations.end(), [&](const auto& x, const auto& y) {
    bool nx = x.gen + 1 == gens.size(), ny = y.gen + 1 == gens.size();
    if (nx != ny) return nx;
    return x.word < y.word;
  });
  return lvl;
}

// Minimal polynomial coefficients c_0..c_{d-1} with g^d = sum c_i g^i.
std::vector<Scalar> minimal_relation(const Algebra& a, const Vec& g) {
  std::vector<Vec> powers{a.unit()};
  while (true) {
    Vec next = a.mul(powers.back(), g);
    Matrix m = Matrix::from_columns(a.field(), a.dim(), powers);
    if (auto c = m.solve(next)) return *c;
    powers.push_back(next);
  }
}

bool satisfies(const Algebra& b, const Vec& y, const std::vector<Scalar>& rel) {
  Vec p = b.unit();
  Vec acc = b.zero();
  for (const auto& c : rel) {
    if (!c.is_zero()) acc = add(acc, scale(c, p));
    p = b.mul(p, y);
  }
  return equal(p, acc);
}

IsoResult generator_search(const Algebra& a, const Algebra& b, const Budgets& budgets) {
  IsoResult res;
  if (!a.field().is_finite()) throw Error(Errc::Unsupported, "generator search needs a finite field");
  auto count = element_count(b.field(), b.dim(), budgets.count);
  if (!count) {
    res.budget_exceeded = true;
    res.reason = "target too large to enumerate";
    return res;
  }
  auto gidx = greedy_generators(a);
  std::vector<Vec> gens;
  for (auto i : gidx) gens.push_back(a.basis(i));
  const std::size_t g = gens.size();
  std::vector<WordLevel> levels;
  for (std::size_t k = 1; k <= g; ++k) levels.push_back(build_level(a, std::vector<Vec>(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(k))));
  // candidate images per generator: roots of its minimal polynomial
  std::vector<std::vector<Vec>> cands(g);
  for (std::size_t k = 0; k < g; ++k) {
    auto rel = minimal_relation(a, gens[k]);
    for (std::uint64_t idx = 0; idx < *count; ++idx) {
      Vec y = element_at(b.field(), b.dim(), idx);
      if (satisfies(b, y, rel)) cands[k].push_back(std::move(y));
    }
  }
  std::vector<Vec> chosen(g);
  std::uint64_t checks = 0;
  bool exceeded = false;
  std::optional<LinearMap> found;

  std::function<void(std::size_t)> dfs = [&](std::size_t k) {
    if (found || exceeded) return;
    const WordLevel& lvl = levels[k];
    for (const Vec& y : cands[k]) {
      if (++checks > budgets.search) {
        exceeded = true;
        return;
      }
      chosen[k] = y;
      std::vector<Vec> img(lvl.words.size());
      img[0] = b.unit();
      for (std::size_t w = 1; w < lvl.words.size(); ++w) img[w] = b.mul(img[lvl.words[w].first], chosen[lvl.words[w].second]);
      // an isomorphism is injective on the word basis
      if (Matrix::from_columns(b.field(), b.dim(), img).rank() != img.size()) continue;
      bool ok = true;
      for (const auto& r : lvl.relations) {
        Vec lhs = b.mul(img[r.word], chosen[r.gen]);
        Vec rhs = b.zero();
        for (std::size_t m = 0; m < r.coeffs.size(); ++m)
          if (!r.coeffs[m].is_zero()) rhs = add(rhs, scale(r.coeffs[m], img[m]));
        if (!equal(lhs, rhs)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (k + 1 < g) {
        dfs(k + 1);
        if (found || exceeded) return;
        continue;
      }
      // phi = Img * W^{-1}
      auto winv = lvl.word_matrix.inverse();
      Matrix m = Matrix::from_columns(b.field(), b.dim(), img) * *winv;
      LinearMap phi{a, b, m};
      if (check_morphism(phi) && is_bijective(phi)) {
        found = phi;
        return;
      }
    }
  };
  dfs(0);
  if (found) {
    res.outcome = IsoOutcome::Iso;
    res.map = found;
    res.reason = "generator images found";
    return res;
  }
  res.budget_exceeded = exceeded;
  res.complete = !exceeded;
  res.reason = exceeded ? "search budget exceeded" : "complete generator search found no isomorphism";
  return res;
}

IsoResult exhaustive_search(const Algebra& a, const Algebra& b, const Budgets& budgets) {
  IsoResult res;
  const std::size_t n = a.dim();
  auto count = element_count(a.field(), n * n, budgets.search);
  if (!count) {
    res.budget_exceeded = true;
    res.reason = "matrix space exceeds the search budget";
    return res;
  }
  for (std::uint64_t idx = 0; idx < *count; ++idx) {
    Vec entries = element_at(a.field(), n * n, idx);
    Matrix m(a.field(), n, n);
    for (std::size_t i = 0; i < n * n; ++i) m(i % n, i / n) = entries[i];
    LinearMap phi{a, b, m};
    if (check_morphism(phi) && is_bijective(phi)) {
      res.outcome = IsoOutcome::Iso;
      res.map = phi;
      res.reason = "exhaustive matrix scan";
      return res;
    }
  }
  res.complete = true;
  res.reason = "exhaustive matrix scan found no isomorphism";
  return res;
}

std::string fingerprint_difference(const Fingerprint& x, const Fingerprint& y) {
  if (x.commutative != y.commutative) return "commutativity";
  if (x.center_dim != y.center_dim) return "center dimension";
  if (x.commutator_dim != y.commutator_dim) return "commutator span dimension";
  if (x.idempotents != y.idempotents) return "idempotent count";
  if (x.square_zero != y.square_zero) return "square-zero count";
  if (x.simple != y.simple) return "simplicity";
  if (x.unit_group != y.unit_group) return "unit group order";
  return "";
}

}  // namespace

IsoResult iso_search(const Algebra& a, const Algebra& b, IsoStrategy strategy, const Budgets& budgets) {
  if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "isomorphism search across fields");
  IsoResult res;
  if (a.dim() != b.dim()) {
    res.outcome = IsoOutcome::ProvedDistinct;
    res.reason = "dimension";
    return res;
  }
  if (!a.has_unit() || !b.has_unit()) throw Error(Errc::Unsupported, "isomorphism search needs unital algebras");
  if (a == b) {
    res.outcome = IsoOutcome::Iso;
    res.map = LinearMap{a, b, Matrix::identity(a.field(), a.dim())};
    res.reason = "identical tables";
    return res;
  }
  switch (strategy) {
    case IsoStrategy::FingerprintFirst: {
      std::string diff = fingerprint_difference(fingerprint(a, budgets), fingerprint(b, budgets));
      if (!diff.empty()) {
        res.outcome = IsoOutcome::ProvedDistinct;
        res.reason = diff;
        return res;
      }
      res = generator_search(a, b, budgets);
      break;
    }
    case IsoStrategy::Generators:
      res = generator_search(a, b, budgets);
      break;
    case IsoStrategy::Exhaustive:
      res = exhaustive_search(a, b, budgets);
      break;
  }
  if (res.map && !(check_morphism(*res.map) && is_bijective(*res.map)))
    throw Error(Errc::CertificationFailed, "isomorphism search produced an invalid map");
  return res;
}

}  // namespace qdup
