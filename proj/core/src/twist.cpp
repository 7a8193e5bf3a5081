#include "qdup/twist.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace qdup {

namespace {

std::string combine_label(const std::string& a, const std::string& b) {
  if (b == "1") return a;
  if (a == "1") return b;
  return a + "*" + b;
}

void require_finite(const Field& f, const char* what) {
  if (!f.is_finite()) throw Error(Errc::Unsupported, std::string(what) + " needs a finite field, got " + f.to_string());
}

std::uint64_t checked_count(const Field& f, std::size_t dim, std::uint64_t limit, const char* what) {
  auto c = element_count(f, dim, limit);
  if (!c) throw Error(Errc::BudgetExceeded, std::string(what) + ": " + f.to_string() + "^" + std::to_string(dim) +
                                                " candidates exceed the budget of " + std::to_string(limit));
  return *c;
}

Matrix matrix_from_entries(const Field& f, std::size_t n, const Vec& entries) {
  Matrix m(f, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = entries[r * n + c];
  return m;
}

std::strong_ordering compare_matrices(const Matrix& a, const Matrix& b) {
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (auto o = a(r, c) <=> b(r, c); o != 0) return o;
  return std::strong_ordering::equal;
}

void sort_pairs(std::vector<TwistingPair>& pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const TwistingPair& x, const TwistingPair& y) {
    if (auto o = compare_matrices(x.f, y.f); o != 0) return o < 0;
    return compare_matrices(x.delta, y.delta) < 0;
  });
}

Matrix stack_blocks(const Field& f, std::size_t n, const Matrix& tl, const Matrix& tr, const Matrix& bl,
                    const Matrix& br) {
  Matrix m(f, 2 * n, 2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      m(r, c) = tl(r, c);
      m(r, n + c) = tr(r, c);
      m(n + r, c) = bl(r, c);
      m(n + r, n + c) = br(r, c);
    }
  return m;
}

}  // namespace

// ------------------------------------------------------------------ TwoDim

TwoDim::TwoDim(Scalar a, Scalar b) : alpha(std::move(a)), beta(std::move(b)) { alpha.require_same(beta); }

std::vector<Scalar> TwoDim::p_roots() const { return quad_roots(alpha, beta); }

std::vector<Scalar> TwoDim::q_roots() const { return quad_roots(-alpha, beta); }

std::vector<Scalar> TwoDim::distinct_q_roots() const {
  auto r = q_roots();
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

std::optional<Scalar> TwoDim::gamma() const {
  if (field().characteristic() == 2) return std::nullopt;
  return reduce_char_not2(alpha, beta);
}

Algebra TwoDim::algebra(const std::string& var) const { return quotient_poly(alpha, beta).with_labels({"1", var}); }

std::string TwoDim::to_string() const {
  return "k[x]/(x^2 - (" + alpha.to_string() + ")x + (" + beta.to_string() + ")) over " + field().to_string();
}

TwoDim split_presentation(const Field& f) { return TwoDim(f.one(), f.zero()); }

TwoDim dual_presentation(const Field& f) { return TwoDim(f.zero(), f.zero()); }

std::optional<TwoDim> field_presentation(const Field& f) {
  if (!f.is_finite()) {
    if (f.kind() != FieldKind::Rationals) return std::nullopt;
    return TwoDim(f.zero(), f.one());
  }
  for (const auto& a : f.elements())
    for (const auto& b : f.elements())
      if (quad_roots(a, b).empty()) return TwoDim(a, b);
  return std::nullopt;
}

TwoDim parse_two_dim(const std::string& spec, const Field& f) {
  if (spec == "k2" || spec == "split") return split_presentation(f);
  if (spec == "dual") return dual_presentation(f);
  if (spec == "ext" || spec == "field") {
    auto p = field_presentation(f);
    if (!p) throw Error(Errc::Unsupported, "no quadratic field extension found over " + f.to_string());
    return *p;
  }
  auto comma = spec.find(',');
  if (comma == std::string::npos)
    throw Error(Errc::ParseError, "expected k2, dual, ext or alpha,beta; got '" + spec + "'");
  return TwoDim(f.parse_scalar(spec.substr(0, comma)), f.parse_scalar(spec.substr(comma + 1)));
}

// ------------------------------------------------------------------ pairs

PairReport verify_pair(const Algebra& a, const TwoDim& b, const Matrix& f, const Matrix& delta, LeibnizRule rule) {
  const std::size_t n = a.dim();
  if (!(a.field() == b.field()) || !(f.field() == a.field()) || !(delta.field() == a.field()))
    throw Error(Errc::FieldMismatch, "twisting pair over mixed fields");
  if (f.rows() != n || f.cols() != n || delta.rows() != n || delta.cols() != n)
    throw Error(Errc::DimensionMismatch, "f and delta must be " + std::to_string(n) + "x" + std::to_string(n));
  PairReport rep;
  auto fail = [&rep](bool& flag, const std::string& msg) {
    flag = false;
    if (rep.failure.empty()) rep.failure = msg;
  };
  if (!a.has_unit() || !equal(f.apply(a.unit()), a.unit())) fail(rep.f_unital, "f(1) != 1");
  for (std::size_t i = 0; i < n && rep.f_multiplicative; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec lhs = f.apply(a.product(i, j));
      if (!equal(lhs, a.mul(f.column(i), f.column(j)))) {
        fail(rep.f_multiplicative, "f(" + a.labels()[i] + "*" + a.labels()[j] + ") != f(" + a.labels()[i] + ")f(" +
                                       a.labels()[j] + ")");
        break;
      }
    }
  for (std::size_t i = 0; i < n && rep.leibniz; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec lhs = delta.apply(a.product(i, j));
      Vec rhs = rule == LeibnizRule::Left
                    ? add(a.mul(f.column(i), delta.column(j)), a.mul(delta.column(i), a.basis(j)))
                    : add(a.mul(delta.column(i), f.column(j)), a.mul(a.basis(i), delta.column(j)));
      if (!equal(lhs, rhs)) {
        fail(rep.leibniz, "Leibniz rule fails on (" + a.labels()[i] + ", " + a.labels()[j] + ")");
        break;
      }
    }
  Matrix id = Matrix::identity(a.field(), n);
  Matrix f2 = f * f;
  if (!(delta * delta - delta.scaled(b.alpha) + id.scaled(b.beta) == f2.scaled(b.beta)))
    fail(rep.p_relation, "delta^2 - alpha delta + beta != beta f^2");
  if (!(f * delta + delta * f == (f - f2).scaled(b.alpha)))
    fail(rep.anticommutation, "f delta + delta f != alpha (f - f^2)");
  return rep;
}

std::optional<Vec> inner_witness(const Algebra& a, const Matrix& f, const Matrix& delta) {
  const std::size_t n = a.dim();
  Matrix sys(a.field(), n * n, n);
  Vec rhs;
  rhs.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix l = a.left_mult(sub(f.column(i), a.basis(i)));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) sys(i * n + r, c) = l(r, c);
      rhs.push_back(delta(r, i));
    }
  }
  return sys.solve(rhs);
}

TwistingPair make_pair(const Algebra& a, const TwoDim& b, const Matrix& f, const Matrix& delta) {
  auto rep = verify_pair(a, b, f, delta);
  if (!rep.ok()) throw Error(Errc::InvalidPair, rep.failure);
  return TwistingPair{a, b, f, delta, inner_witness(a, f, delta)};
}

std::string pair_key(const Matrix& f, const Matrix& delta) {
  std::ostringstream os;
  os << "f";
  for (std::size_t r = 0; r < f.rows(); ++r)
    for (std::size_t c = 0; c < f.cols(); ++c) os << ' ' << f(r, c).to_string();
  os << " d";
  for (std::size_t r = 0; r < delta.rows(); ++r)
    for (std::size_t c = 0; c < delta.cols(); ++c) os << ' ' << delta(r, c).to_string();
  return os.str();
}

// ------------------------------------------------------------------ twisted products

Algebra build_twisted(const Algebra& a, const Algebra& b, const std::function<Vec(std::size_t, std::size_t)>& tau) {
  if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "twisted tensor product over mixed fields");
  const Field& fld = a.field();
  const std::size_t n = a.dim(), m = b.dim(), dim = n * m;
  std::vector<Vec> taus(m * n);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      taus[j * n + k] = tau(j, k);
      if (taus[j * n + k].size() != dim) throw Error(Errc::DimensionMismatch, "tau image has the wrong length");
    }
  std::vector<Vec> table(dim * dim, zero_vec(fld, dim));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          Vec& out = table[(i + n * j) * dim + (k + n * l)];
          const Vec& t = taus[j * n + k];
          for (std::size_t r = 0; r < n; ++r)
            for (std::size_t s = 0; s < m; ++s) {
              const Scalar& c = t[r + n * s];
              if (c.is_zero()) continue;
              const Vec& u = a.product(i, r);
              const Vec& w = b.product(s, l);
              for (std::size_t x = 0; x < n; ++x) {
                if (u[x].is_zero()) continue;
                Scalar cu = c * u[x];
                for (std::size_t y = 0; y < m; ++y)
                  if (!w[y].is_zero()) out[x + n * y] += cu * w[y];
              }
            }
        }
  Vec unit;
  if (a.has_unit() && b.has_unit()) {
    unit = zero_vec(fld, dim);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < m; ++s) unit[r + n * s] = a.unit()[r] * b.unit()[s];
  }
  std::vector<std::string> labels(dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) labels[i + n * j] = combine_label(a.labels()[i], b.labels()[j]);
  return Algebra(fld, dim, std::move(table), std::move(unit), std::move(labels));
}

Algebra build_twisted_product(const TwistingPair& pair) {
  const std::size_t n = pair.A.dim();
  const Field& fld = pair.A.field();
  return build_twisted(pair.A, pair.B.algebra(), [&](std::size_t j, std::size_t k) {
    if (j == 0) return unit_vec(fld, 2 * n, k);
    Vec v = pair.delta.column(k);
    Vec fk = pair.f.column(k);
    v.insert(v.end(), fk.begin(), fk.end());
    return v;
  });
}

LinearMap inclusion_left(const Algebra& twisted, const Algebra& a, const Algebra& b) {
  std::vector<Vec> imgs;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    Vec v = twisted.zero();
    for (std::size_t s = 0; s < b.dim(); ++s) v[i + n * s] = b.unit()[s];
    imgs.push_back(std::move(v));
  }
  return map_from_images(a, twisted, imgs);
}

LinearMap inclusion_right(const Algebra& twisted, const Algebra& a, const Algebra& b) {
  std::vector<Vec> imgs;
  const std::size_t n = a.dim();
  for (std::size_t j = 0; j < b.dim(); ++j) {
    Vec v = twisted.zero();
    for (std::size_t r = 0; r < n; ++r) v[r + n * j] = a.unit()[r];
    imgs.push_back(std::move(v));
  }
  return map_from_images(b, twisted, imgs);
}

// ------------------------------------------------------------------ enumeration

std::vector<Matrix> algebra_endomorphisms(const Algebra& a, const Budgets& budgets) {
  const std::size_t n = a.dim();
  const Field& fld = a.field();
  std::vector<Matrix> out;
  if (a == power_of_field(fld, n)) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
      total *= n;
      if (total > budgets.search) throw Error(Errc::BudgetExceeded, "too many set maps");
    }
    std::vector<int> tgt(n, 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      out.push_back(endomorphism_matrix(FunctionalQuiver(tgt), fld));
      for (std::size_t pos = n; pos-- > 0;) {
        if (++tgt[pos] < static_cast<int>(n)) break;
        tgt[pos] = 0;
      }
    }
    return out;
  }
  require_finite(fld, "endomorphism scan");
  const std::uint64_t total = checked_count(fld, n * n, budgets.search, "endomorphism scan");
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Matrix m = matrix_from_entries(fld, n, element_at(fld, n * n, idx));
    if (check_morphism(LinearMap{a, a, m})) out.push_back(std::move(m));
  }
  return out;
}

std::vector<Matrix> derivation_basis(const Algebra& a, const Matrix& f, LeibnizRule rule) {
  const std::size_t n = a.dim();
  const Field& fld = a.field();
  // unknown delta(r, c) sits at column r*n + c
  Matrix sys(fld, n * n * n, n * n);
  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec& prod = a.product(i, j);
      Matrix lhs_j = rule == LeibnizRule::Left ? a.left_mult(f.column(i)) : a.left_mult(a.basis(i));
      Matrix lhs_i = rule == LeibnizRule::Left ? a.right_mult(a.basis(j)) : a.right_mult(f.column(j));
      for (std::size_t r = 0; r < n; ++r, ++row) {
        for (std::size_t c = 0; c < n; ++c) sys(row, r * n + c) += prod[c];
        for (std::size_t s = 0; s < n; ++s) {
          sys(row, s * n + j) -= lhs_j(r, s);
          sys(row, s * n + i) -= lhs_i(r, s);
        }
      }
    }
  std::vector<Matrix> out;
  for (const auto& v : sys.kernel()) out.push_back(matrix_from_entries(fld, n, v));
  return out;
}

std::vector<TwistingPair> brute_force_pairs(const Algebra& a, const TwoDim& b, const Budgets& budgets) {
  const Field& fld = a.field();
  require_finite(fld, "pair enumeration");
  const std::size_t n = a.dim();
  std::vector<TwistingPair> out;
  std::uint64_t spent = 0;
  for (const auto& f : algebra_endomorphisms(a, budgets)) {
    auto basis = derivation_basis(a, f);
    const std::uint64_t total = checked_count(fld, basis.size(), budgets.search, "derivation space");
    spent += total;
    if (spent > budgets.search) throw Error(Errc::BudgetExceeded, "pair enumeration exceeds the search budget");
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Vec c = element_at(fld, basis.size(), idx);
      Matrix delta(fld, n, n);
      for (std::size_t t = 0; t < basis.size(); ++t)
        if (!c[t].is_zero()) delta = delta + basis[t].scaled(c[t]);
      if (verify_pair(a, b, f, delta).ok()) out.push_back(TwistingPair{a, b, f, delta, inner_witness(a, f, delta)});
    }
  }
  sort_pairs(out);
  return out;
}

std::vector<TwistingPair> brute_force_pairs_naive(const Algebra& a, const TwoDim& b, const Budgets& budgets) {
  const Field& fld = a.field();
  require_finite(fld, "pair enumeration");
  const std::size_t n = a.dim();
  const std::uint64_t total = checked_count(fld, n * n, budgets.search, "delta scan");
  std::vector<TwistingPair> out;
  std::uint64_t spent = 0;
  for (const auto& f : algebra_endomorphisms(a, budgets)) {
    spent += total;
    if (spent > budgets.search) throw Error(Errc::BudgetExceeded, "delta scan exceeds the search budget");
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Matrix delta = matrix_from_entries(fld, n, element_at(fld, n * n, idx));
      if (verify_pair(a, b, f, delta).ok()) out.push_back(TwistingPair{a, b, f, delta, inner_witness(a, f, delta)});
    }
  }
  sort_pairs(out);
  return out;
}

// ------------------------------------------------------------------ 2 x 2

std::string Tau2x2::to_string() const {
  return "(" + a.to_string() + ", " + b.to_string() + ", " + c.to_string() + ", " + d.to_string() + ")";
}

Algebra build_tau_2x2(const TwoDim& a, const TwoDim& b, const Tau2x2& t) {
  const Field fld = a.field();
  return build_twisted(a.algebra("x"), b.algebra("y"), [&](std::size_t j, std::size_t k) {
    if (j == 0) return unit_vec(fld, 4, k);
    if (k == 0) return unit_vec(fld, 4, 2 * j);
    return Vec{t.a, t.b, t.c, t.d};
  });
}

bool tau_2x2_valid(const TwoDim& a, const TwoDim& b, const Tau2x2& t) {
  return check_algebra(build_tau_2x2(a, b, t)).ok();
}

std::vector<Tau2x2> brute_force_tau_2x2(const TwoDim& a, const TwoDim& b, const Budgets& budgets) {
  const Field fld = a.field();
  require_finite(fld, "tau enumeration");
  const std::uint64_t total = checked_count(fld, 4, budgets.search, "tau enumeration");
  std::vector<Tau2x2> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Vec v = element_at(fld, 4, idx);
    Tau2x2 t{v[0], v[1], v[2], v[3]};
    if (tau_2x2_valid(a, b, t)) out.push_back(t);
  }
  std::sort(out.begin(), out.end(), [](const Tau2x2& x, const Tau2x2& y) {
    return std::tie(x.a, x.b, x.c, x.d) < std::tie(y.a, y.b, y.c, y.d);
  });
  return out;
}

// ------------------------------------------------------------------ lifts

bool check_endo_lift(const TwistingPair& pair, const Matrix& phi) {
  if (!check_morphism(LinearMap{pair.A, pair.A, phi}))
    throw Error(Errc::NotMorphism, "phi is not an algebra endomorphism of A");
  return pair.f * phi == phi * pair.f && pair.delta * phi == phi * pair.delta;
}

LinearMap lift_endo(const TwistingPair& pair, const Matrix& phi) {
  Algebra tw = build_twisted_product(pair);
  const std::size_t n = pair.A.dim();
  Matrix zero(pair.A.field(), n, n);
  return LinearMap{tw, tw, stack_blocks(pair.A.field(), n, phi, zero, zero, phi)};
}

Matrix conjugate_map(const Matrix& phi, const Matrix& star) { return star * phi * star; }

bool check_involution_lift(const TwistingPair& pair, const Matrix& star) {
  const std::size_t n = pair.A.dim();
  Matrix id = Matrix::identity(pair.A.field(), n);
  if (!(star * star == id)) throw Error(Errc::NotInvolutive, "star is not an involution");
  Matrix fbar = conjugate_map(pair.f, star);
  Matrix dbar = conjugate_map(pair.delta, star);
  return pair.f * fbar == id && pair.delta * fbar == dbar + (fbar - id).scaled(pair.B.alpha);
}

Matrix involution_lift(const TwistingPair& pair, const Matrix& star) {
  const std::size_t n = pair.A.dim();
  const Field& fld = pair.A.field();
  Matrix zero(fld, n, n);
  Matrix top = star.scaled(pair.B.alpha) - pair.delta * star;
  Matrix bottom = (pair.f * star).scaled(-fld.one());
  return stack_blocks(fld, n, star, top, zero, bottom);
}

// ------------------------------------------------------------------ factorization

Factorization factorize_by_conjugation(const Algebra& b, const TwoDim& l, const Vec& iota, const Matrix& sigma) {
  const Field& fld = b.field();
  if (!(l.field() == fld)) throw Error(Errc::FieldMismatch, "l and B live over different fields");
  if (fld.characteristic() == 2) throw Error(Errc::CharTwo, "conjugation factorization needs char != 2");
  const std::size_t dim = b.dim();
  if (sigma.rows() != dim || sigma.cols() != dim || iota.size() != dim)
    throw Error(Errc::DimensionMismatch, "sigma and iota must match dim B");
  const Vec& one = b.unit();
  if (!equal(b.mul(iota, iota), sub(scale(l.alpha, iota), scale(l.beta, one))))
    throw Error(Errc::AxiomViolated, "axiom 0: iota^2 != alpha iota - beta");
  if (!(sigma * sigma == Matrix::identity(fld, dim))) throw Error(Errc::AxiomViolated, "axiom 1: sigma^2 != id");
  if (!check_morphism(LinearMap{b, b, sigma})) throw Error(Errc::AxiomViolated, "axiom 2: sigma is not multiplicative");
  for (std::size_t i = 0; i < dim; ++i) {
    Vec lhs = sigma.apply(b.mul(b.basis(i), iota));
    Vec s = sigma.column(i);
    Vec rhs = sub(scale(l.alpha, s), b.mul(s, iota));
    if (!equal(lhs, rhs))
      throw Error(Errc::AxiomViolated, "axiom 3: sigma(b . eta) != sigma(b) . eta-bar at " + b.labels()[i]);
  }
  FixedAlgebra fixed = fixed_subalgebra(b, sigma);
  const Algebra& a = fixed.algebra;
  const std::size_t n = a.dim();
  if (2 * n != dim) throw Error(Errc::CertificationFailed, "dim B^sigma is not half of dim B");
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < n; ++i) cols.push_back(fixed.inclusion.matrix.column(i));
  for (std::size_t i = 0; i < n; ++i) cols.push_back(b.mul(fixed.inclusion.matrix.column(i), iota));
  Matrix phi = Matrix::from_columns(fld, dim, cols);
  auto inv = phi.inverse();
  if (!inv) throw Error(Errc::CertificationFailed, "B^sigma (x) l -> B is not bijective");
  Matrix f(fld, n, n), delta(fld, n, n);
  for (std::size_t k = 0; k < n; ++k) {
    Vec v = inv->apply(b.mul(iota, fixed.inclusion.matrix.column(k)));
    for (std::size_t r = 0; r < n; ++r) {
      delta(r, k) = v[r];
      f(r, k) = v[n + r];
    }
  }
  TwistingPair pair = make_pair(a, l, f, delta);
  LinearMap map{build_twisted_product(pair), b, phi};
  if (!check_morphism(map)) throw Error(Errc::CertificationFailed, "a (x) z -> a . z is not multiplicative");
  return Factorization{a, fixed.inclusion, pair, map};
}

}  // namespace qdup
