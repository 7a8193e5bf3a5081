#include "qdup/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

namespace qdup {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::NotPrime: return "NotPrime";
    case Errc::Reducible: return "Reducible";
    case Errc::CharTwo: return "CharTwo";
    case Errc::CharMismatch: return "CharMismatch";
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::ParseError: return "ParseError";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::MalformedQuiver: return "MalformedQuiver";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NotOneCycle: return "NotOneCycle";
    case Errc::RootsNotDistinct: return "RootsNotDistinct";
    case Errc::NotInvolutive: return "NotInvolutive";
    case Errc::NotMorphism: return "NotMorphism";
    case Errc::InvalidPair: return "InvalidPair";
    case Errc::InvalidColoration: return "InvalidColoration";
    case Errc::CertificationFailed: return "CertificationFailed";
    case Errc::AxiomViolated: return "AxiomViolated";
    case Errc::DegenerateParameter: return "DegenerateParameter";
    case Errc::ZeroParameter: return "ZeroParameter";
    case Errc::AlphaZero: return "AlphaZero";
    case Errc::ParameterIsSquare: return "ParameterIsSquare";
    case Errc::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

namespace detail {

struct FieldData {
  FieldKind kind = FieldKind::Rationals;
  std::int64_t p = 0;  // characteristic for finite fields
  const FieldData* base = nullptr;
  // generator satisfies t^2 = a*t - b
  std::int64_t a_fin = 0, b_fin = 0;
  Rational a_rat = 0, b_rat = 0;
  std::string name;
};

}  // namespace detail

namespace {

using detail::FieldData;
using RatPair = std::array<Rational, 2>;

std::int64_t mod(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = mod(a, p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  return mod(t, p);
}

std::int64_t mod_of_rational(const Rational& v, std::int64_t p) {
  BigInt num = boost::multiprecision::numerator(v);
  BigInt den = boost::multiprecision::denominator(v);
  auto n = static_cast<std::int64_t>(BigInt(((num % p) + p) % p));
  auto d = static_cast<std::int64_t>(BigInt(((den % p) + p) % p));
  if (d == 0) throw Error(Errc::DivisionByZero, "denominator divisible by characteristic");
  return mod(n * mod_inv(d, p), p);
}

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) os << "/" << boost::multiprecision::denominator(r);
  return os.str();
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, std::unique_ptr<FieldData>>& registry() {
  static std::map<std::string, std::unique_ptr<FieldData>> r;
  return r;
}

const FieldData* intern(FieldData d) {
  std::lock_guard lock(registry_mutex());
  auto& reg = registry();
  auto it = reg.find(d.name);
  if (it != reg.end()) return it->second.get();
  auto owned = std::make_unique<FieldData>(std::move(d));
  const FieldData* raw = owned.get();
  reg.emplace(raw->name, std::move(owned));
  return raw;
}

// Parse a rational literal "a", "-a", "a/b".
Rational parse_rational(std::string_view s) {
  std::string t(s);
  if (t.empty()) throw Error(Errc::ParseError, "empty number");
  auto slash = t.find('/');
  auto parse_int = [](const std::string& x) {
    if (x.empty() || x == "-" || x == "+") throw Error(Errc::ParseError, "bad integer '" + x + "'");
    std::size_t start = (x[0] == '-' || x[0] == '+') ? 1 : 0;
    for (std::size_t i = start; i < x.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(x[i]))) throw Error(Errc::ParseError, "bad integer '" + x + "'");
    return BigInt(x[0] == '+' ? x.substr(1) : x);
  };
  if (slash == std::string::npos) return Rational(parse_int(t));
  BigInt den = parse_int(t.substr(slash + 1));
  if (den == 0) throw Error(Errc::DivisionByZero, "zero denominator in '" + t + "'");
  return Rational(parse_int(t.substr(0, slash)), den);
}

// Splits "c0+c1*t" style text into a constant and a t-coefficient string.
std::pair<std::string, std::string> split_linear_in_t(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  std::vector<std::string> terms;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if ((c == '+' || c == '-') && i > 0 && s[i - 1] != '+' && s[i - 1] != '-' && s[i - 1] != '/' &&
        s[i - 1] != '*') {
      terms.push_back(cur);
      cur.clear();
      if (c == '-') cur += '-';
      continue;
    }
    cur += c;
  }
  terms.push_back(cur);
  std::string constant, coeff;
  for (auto& term : terms) {
    if (term.empty()) throw Error(Errc::ParseError, "empty term in '" + std::string(text) + "'");
    if (term.back() == 't') {
      std::string c = term.substr(0, term.size() - 1);
      if (!c.empty() && c.back() == '*') c.pop_back();
      if (c.empty() || c == "+") c = "1";
      if (c == "-") c = "-1";
      if (!coeff.empty()) throw Error(Errc::ParseError, "repeated t term in '" + std::string(text) + "'");
      coeff = c;
    } else {
      if (!constant.empty()) throw Error(Errc::ParseError, "repeated constant in '" + std::string(text) + "'");
      constant = term;
    }
  }
  if (constant.empty()) constant = "0";
  if (coeff.empty()) coeff = "0";
  return {constant, coeff};
}

}  // namespace

// ---------------------------------------------------------------- Field

Field::Field() : Field(rationals()) {}

Field Field::rationals() {
  FieldData d;
  d.kind = FieldKind::Rationals;
  d.name = "Q";
  return Field(intern(std::move(d)));
}

Field Field::prime(std::int64_t p) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (p >= (std::int64_t{1} << 31)) throw Error(Errc::Unsupported, "prime too large");
  FieldData d;
  d.kind = FieldKind::Prime;
  d.p = p;
  d.name = "F" + std::to_string(p);
  return Field(intern(std::move(d)));
}

Field Field::quad_ext(const Field& base, const Scalar& alpha_min, const Scalar& beta_min) {
  if (base.kind() == FieldKind::QuadExt) throw Error(Errc::Unsupported, "towers of extensions");
  if (!(alpha_min.field() == base) || !(beta_min.field() == base))
    throw Error(Errc::FieldMismatch, "minimal polynomial coefficients must lie in the base");
  if (!quad_roots(alpha_min, beta_min).empty())
    throw Error(Errc::Reducible, "x^2 - (" + alpha_min.to_string() + ")x + (" + beta_min.to_string() +
                                     ") has a root in " + base.to_string());
  FieldData d;
  d.kind = FieldKind::QuadExt;
  d.base = base.d_;
  d.p = base.d_->p;
  if (base.is_finite()) {
    d.a_fin = alpha_min.residue();
    d.b_fin = beta_min.residue();
  } else {
    d.a_rat = alpha_min.rational();
    d.b_rat = beta_min.rational();
  }
  // t^2 = a t - b
  Scalar a = alpha_min, mb = -beta_min;
  std::string rhs;
  if (!a.is_zero()) {
    rhs = a.is_one() ? "t" : a.to_string() + "*t";
    if (!mb.is_zero()) rhs += "+" + mb.to_string();
  } else {
    rhs = mb.to_string();
  }
  d.name = base.to_string() + "[t^2=" + rhs + "]";
  return Field(intern(std::move(d)));
}

Field Field::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto bracket = s.find('[');
  std::string head = s.substr(0, bracket);
  Field base;
  if (head == "Q") {
    base = rationals();
  } else if (head.size() > 1 && head[0] == 'F') {
    for (std::size_t i = 1; i < head.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(head[i]))) throw Error(Errc::ParseError, "bad field '" + s + "'");
    if (head.size() > 11) throw Error(Errc::ParseError, "bad field '" + s + "'");
    base = prime(std::stoll(head.substr(1)));
  } else {
    throw Error(Errc::ParseError, "bad field '" + s + "'");
  }
  if (bracket == std::string::npos) return base;
  if (s.back() != ']' || s.compare(bracket, 5, "[t^2=") != 0) throw Error(Errc::ParseError, "bad extension in '" + s + "'");
  std::string rhs = s.substr(bracket + 5, s.size() - bracket - 6);
  auto [c, a] = split_linear_in_t(rhs);
  // t^2 = a t + c  <=>  t^2 - a t - c = 0
  Scalar alpha = base.parse_scalar(a);
  Scalar beta = -base.parse_scalar(c);
  return quad_ext(base, alpha, beta);
}

FieldKind Field::kind() const { return d_->kind; }

bool Field::is_finite() const { return d_->p != 0; }

std::int64_t Field::characteristic() const { return d_->p; }

std::uint64_t Field::order() const {
  if (!is_finite()) throw Error(Errc::Unsupported, "infinite field " + d_->name);
  auto p = static_cast<std::uint64_t>(d_->p);
  return d_->kind == FieldKind::QuadExt ? p * p : p;
}

Field Field::base() const { return d_->kind == FieldKind::QuadExt ? Field(d_->base) : *this; }

Scalar Field::alpha_min() const {
  if (d_->kind != FieldKind::QuadExt) throw Error(Errc::Unsupported, "not an extension");
  Field b = base();
  return b.is_finite() ? b.from_int(d_->a_fin) : b.from_rational(d_->a_rat);
}

Scalar Field::beta_min() const {
  if (d_->kind != FieldKind::QuadExt) throw Error(Errc::Unsupported, "not an extension");
  Field b = base();
  return b.is_finite() ? b.from_int(d_->b_fin) : b.from_rational(d_->b_rat);
}

Scalar Field::zero() const {
  Scalar s;
  s.f_ = d_;
  return s;
}

Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(std::int64_t v) const {
  Scalar s;
  s.f_ = d_;
  if (is_finite()) {
    s.c0_ = mod(v, d_->p);
  } else if (v != 0) {
    s.r_ = std::make_shared<const RatPair>(RatPair{Rational(v), Rational(0)});
  }
  return s;
}

Scalar Field::from_rational(const Rational& v) const {
  Scalar s;
  s.f_ = d_;
  if (is_finite()) {
    s.c0_ = mod_of_rational(v, d_->p);
  } else if (v != 0) {
    s.r_ = std::make_shared<const RatPair>(RatPair{v, Rational(0)});
  }
  return s;
}

Scalar Field::generator() const {
  if (d_->kind != FieldKind::QuadExt) throw Error(Errc::Unsupported, "not an extension");
  Field b = base();
  return make(b.zero(), b.one());
}

Scalar Field::make(const Scalar& c0, const Scalar& c1) const {
  if (d_->kind != FieldKind::QuadExt) throw Error(Errc::Unsupported, "not an extension");
  if (c0.f_ != d_->base || c1.f_ != d_->base) throw Error(Errc::FieldMismatch, "coordinates must lie in the base");
  Scalar s;
  s.f_ = d_;
  if (is_finite()) {
    s.c0_ = c0.c0_;
    s.c1_ = c1.c0_;
  } else if (!c0.is_zero() || !c1.is_zero()) {
    s.r_ = std::make_shared<const RatPair>(RatPair{c0.rational(), c1.rational()});
  }
  return s;
}

Scalar Field::embed(const Scalar& base_elem) const {
  if (base_elem.f_ == d_) return base_elem;
  return make(base_elem, base().zero());
}

Scalar Field::element(std::uint64_t index) const {
  if (index >= order()) throw Error(Errc::OutOfRange, "element index");
  Scalar s;
  s.f_ = d_;
  auto p = static_cast<std::uint64_t>(d_->p);
  s.c0_ = static_cast<std::int64_t>(index % p);
  s.c1_ = static_cast<std::int64_t>(index / p);
  return s;
}

std::vector<Scalar> Field::elements() const {
  std::vector<Scalar> out;
  std::uint64_t n = order();
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(element(i));
  return out;
}

Scalar Field::parse_scalar(std::string_view text) const {
  if (d_->kind != FieldKind::QuadExt) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.find('t') != std::string::npos) throw Error(Errc::ParseError, "'" + s + "' is not in " + d_->name);
    return from_rational(parse_rational(s));
  }
  auto [c0, c1] = split_linear_in_t(text);
  Field b = base();
  return make(b.parse_scalar(c0), b.parse_scalar(c1));
}

std::string Field::to_string() const { return d_->name; }

// ---------------------------------------------------------------- Scalar

Field Scalar::field() const {
  if (!f_) throw Error(Errc::FieldMismatch, "unbound scalar");
  return Field(f_);
}

void Scalar::require_same(const Scalar& o) const {
  if (f_ != o.f_ || !f_) throw Error(Errc::FieldMismatch, "operands from different fields");
}

bool Scalar::is_zero() const {
  if (f_ && f_->p != 0) return c0_ == 0 && c1_ == 0;
  return !r_ || ((*r_)[0] == 0 && (*r_)[1] == 0);
}

bool Scalar::is_one() const {
  if (f_ && f_->p != 0) return c0_ == 1 && c1_ == 0;
  return r_ && (*r_)[0] == 1 && (*r_)[1] == 0;
}

namespace {

const RatPair& rat_zero() {
  static const RatPair z{Rational(0), Rational(0)};
  return z;
}

}  // namespace

Scalar Scalar::operator+(const Scalar& o) const {
  require_same(o);
  Scalar s;
  s.f_ = f_;
  if (f_->p != 0) {
    s.c0_ = c0_ + o.c0_;
    if (s.c0_ >= f_->p) s.c0_ -= f_->p;
    s.c1_ = c1_ + o.c1_;
    if (s.c1_ >= f_->p) s.c1_ -= f_->p;
    return s;
  }
  if (!r_) return o;
  if (!o.r_) return *this;
  RatPair v{(*r_)[0] + (*o.r_)[0], (*r_)[1] + (*o.r_)[1]};
  if (v[0] != 0 || v[1] != 0) s.r_ = std::make_shared<const RatPair>(std::move(v));
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s;
  s.f_ = f_;
  if (f_ && f_->p != 0) {
    s.c0_ = c0_ == 0 ? 0 : f_->p - c0_;
    s.c1_ = c1_ == 0 ? 0 : f_->p - c1_;
    return s;
  }
  if (r_) s.r_ = std::make_shared<const RatPair>(RatPair{-(*r_)[0], -(*r_)[1]});
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  require_same(o);
  Scalar s;
  s.f_ = f_;
  if (f_->p != 0) {
    const std::int64_t p = f_->p;
    if (f_->kind != FieldKind::QuadExt) {
      s.c0_ = (c0_ * o.c0_) % p;
      return s;
    }
    std::int64_t hh = (c1_ * o.c1_) % p;
    s.c0_ = mod(c0_ * o.c0_ - f_->b_fin * hh, p);
    s.c1_ = mod(c0_ * o.c1_ + c1_ * o.c0_ + f_->a_fin * hh, p);
    return s;
  }
  if (!r_ || !o.r_) return s;
  const RatPair& x = *r_;
  const RatPair& y = *o.r_;
  RatPair v;
  if (f_->kind != FieldKind::QuadExt) {
    v = {x[0] * y[0], Rational(0)};
  } else {
    Rational hh = x[1] * y[1];
    v = {x[0] * y[0] - f_->b_rat * hh, x[0] * y[1] + x[1] * y[0] + f_->a_rat * hh};
  }
  if (v[0] != 0 || v[1] != 0) s.r_ = std::make_shared<const RatPair>(std::move(v));
  return s;
}

Scalar Scalar::conj() const {
  if (!f_ || f_->kind != FieldKind::QuadExt) return *this;
  // sigma(c0 + c1 t) = (c0 + a c1) - c1 t
  Scalar s;
  s.f_ = f_;
  if (f_->p != 0) {
    s.c0_ = mod(c0_ + f_->a_fin * c1_, f_->p);
    s.c1_ = mod(-c1_, f_->p);
    return s;
  }
  if (r_) s.r_ = std::make_shared<const RatPair>(RatPair{(*r_)[0] + f_->a_rat * (*r_)[1], -(*r_)[1]});
  return s;
}

Scalar Scalar::inv() const {
  if (!f_) throw Error(Errc::FieldMismatch, "unbound scalar");
  if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
  if (f_->kind == FieldKind::QuadExt) {
    Scalar n = norm(*this);  // base element
    Scalar ninv = n.inv();
    Scalar c = conj();
    Field ext(f_);
    return c * ext.embed(ninv);
  }
  Scalar s;
  s.f_ = f_;
  if (f_->p != 0) {
    s.c0_ = mod_inv(c0_, f_->p);
    return s;
  }
  s.r_ = std::make_shared<const RatPair>(RatPair{Rational(1) / (*r_)[0], Rational(0)});
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const {
  require_same(o);
  return *this * o.inv();
}

Scalar Scalar::pow(std::int64_t e) const {
  if (e < 0) return inv().pow(-e);
  Scalar result = field().one();
  Scalar b = *this;
  while (e > 0) {
    if (e & 1) result = result * b;
    b = b * b;
    e >>= 1;
  }
  return result;
}

bool Scalar::operator==(const Scalar& o) const {
  require_same(o);
  if (f_->p != 0) return c0_ == o.c0_ && c1_ == o.c1_;
  const RatPair& x = r_ ? *r_ : rat_zero();
  const RatPair& y = o.r_ ? *o.r_ : rat_zero();
  return x[0] == y[0] && x[1] == y[1];
}

std::strong_ordering Scalar::operator<=>(const Scalar& o) const {
  require_same(o);
  if (f_->p != 0) return index() <=> o.index();
  const RatPair& x = r_ ? *r_ : rat_zero();
  const RatPair& y = o.r_ ? *o.r_ : rat_zero();
  if (x[0] != y[0]) return x[0] < y[0] ? std::strong_ordering::less : std::strong_ordering::greater;
  if (x[1] != y[1]) return x[1] < y[1] ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Scalar Scalar::coord(int i) const {
  if (!f_) throw Error(Errc::FieldMismatch, "unbound scalar");
  if (f_->kind != FieldKind::QuadExt) {
    if (i == 0) return *this;
    return field().zero();
  }
  Field b(f_->base);
  if (f_->p != 0) return b.from_int(i == 0 ? c0_ : c1_);
  return b.from_rational(r_ ? (*r_)[i] : Rational(0));
}

std::uint64_t Scalar::index() const {
  if (!f_ || f_->p == 0) throw Error(Errc::Unsupported, "index of an element of an infinite field");
  return static_cast<std::uint64_t>(c0_) + static_cast<std::uint64_t>(f_->p) * static_cast<std::uint64_t>(c1_);
}

Rational Scalar::rational() const {
  if (!f_ || f_->kind != FieldKind::Rationals) throw Error(Errc::FieldMismatch, "not a rational scalar");
  return r_ ? (*r_)[0] : Rational(0);
}

std::int64_t Scalar::residue() const {
  if (!f_ || f_->kind != FieldKind::Prime) throw Error(Errc::FieldMismatch, "not a prime-field scalar");
  return c0_;
}

std::string Scalar::to_string() const {
  if (!f_) return "<unbound>";
  if (f_->kind == FieldKind::QuadExt) {
    Scalar a = coord(0), b = coord(1);
    if (b.is_zero()) return a.to_string();
    return a.to_string() + "+" + b.to_string() + "*t";
  }
  if (f_->p != 0) return std::to_string(c0_);
  return rational_str(r_ ? (*r_)[0] : Rational(0));
}

// ---------------------------------------------------------------- algorithms

namespace {

// Integer square root test for non-negative big integers.
std::optional<BigInt> exact_sqrt(const BigInt& v) {
  if (v < 0) return std::nullopt;
  BigInt r = boost::multiprecision::sqrt(v);
  if (r * r == v) return r;
  return std::nullopt;
}

std::optional<Rational> rational_sqrt(const Rational& v) {
  if (v < 0) return std::nullopt;
  auto n = exact_sqrt(boost::multiprecision::numerator(v));
  auto d = exact_sqrt(boost::multiprecision::denominator(v));
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

// Square roots of an element of a quadratic extension of Q.
std::vector<Scalar> ext_rational_sqrt(const Scalar& z) {
  Field ext = z.field();
  Field base = ext.base();
  if (z.is_zero()) return {z};
  // shift t = s + a/2 with s^2 = c := a^2/4 - b
  Rational a = ext.alpha_min().rational(), b = ext.beta_min().rational();
  Rational c = a * a / 4 - b;
  Rational z0 = z.coord(0).rational(), z1 = z.coord(1).rational();
  // z = d0 + d1 s with d0 = z0 + z1 a/2, d1 = z1
  Rational d0 = z0 + z1 * a / 2, d1 = z1;
  std::vector<std::pair<Rational, Rational>> cands;  // (x, y) with (x + y s)^2 = d0 + d1 s
  if (d1 == 0) {
    if (auto x = rational_sqrt(d0)) cands.push_back({*x, 0});
    if (auto y = rational_sqrt(d0 / c)) cands.push_back({0, *y});
  } else {
    auto sq = rational_sqrt(d0 * d0 - c * d1 * d1);
    if (sq) {
      for (const Rational& sgn : {Rational(1), Rational(-1)}) {
        if (auto x = rational_sqrt((d0 + sgn * *sq) / 2); x && *x != 0) cands.push_back({*x, d1 / (2 * *x)});
      }
    }
  }
  for (auto& [x, y] : cands) {
    // x + y s = (x - y a/2) + y t
    Scalar r = ext.make(base.from_rational(x - y * a / 2), base.from_rational(y));
    if (r * r == z) return {r, -r};
  }
  return {};
}

}  // namespace

std::vector<Scalar> quad_roots(const Scalar& alpha, const Scalar& beta) {
  alpha.require_same(beta);
  Field f = alpha.field();
  std::vector<Scalar> roots;
  if (f.is_finite()) {
    for (const Scalar& x : f.elements()) {
      if ((x * x - alpha * x + beta).is_zero()) roots.push_back(x);
    }
    // a single root is double exactly when the discriminant polynomial has one root
    if (roots.size() == 1) roots.push_back(roots[0]);
    return roots;
  }
  Scalar two = f.from_int(2);
  Scalar disc = alpha * alpha - f.from_int(4) * beta;
  std::vector<Scalar> sq;
  if (f.kind() == FieldKind::Rationals) {
    if (auto r = rational_sqrt(disc.rational())) {
      sq.push_back(f.from_rational(*r));
      sq.push_back(f.from_rational(-*r));
    }
  } else {
    sq = ext_rational_sqrt(disc);
  }
  for (const Scalar& s : sq) roots.push_back((alpha + s) / two);
  std::sort(roots.begin(), roots.end());
  return roots;
}

Scalar norm(const Scalar& z) {
  Field f = z.field();
  if (f.kind() != FieldKind::QuadExt) return z * z;
  return (z * z.conj()).coord(0);
}

bool is_square(const Scalar& s) {
  Field f = s.field();
  if (s.is_zero()) return true;
  if (f.is_finite()) {
    if (f.characteristic() == 2) return true;
    if (f.kind() == FieldKind::Prime) {
      std::int64_t p = f.characteristic();
      // Euler's criterion
      return s.pow((p - 1) / 2).is_one();
    }
    return !quad_roots(f.zero(), -s).empty();
  }
  if (f.kind() == FieldKind::Rationals) return rational_sqrt(s.rational()).has_value();
  return !ext_rational_sqrt(s).empty();
}

NormResult is_norm(const Field& ext, const Scalar& c, int bound) {
  if (ext.kind() != FieldKind::QuadExt) throw Error(Errc::Unsupported, "is_norm needs a quadratic extension");
  Field base = ext.base();
  if (!(c.field() == base)) throw Error(Errc::FieldMismatch, "norm target must lie in the base");
  if (c.is_zero()) throw Error(Errc::ZeroInput, "is_norm(0)");
  NormResult res;
  if (ext.is_finite()) {
    for (const Scalar& z : ext.elements()) {
      if (norm(z) == c) {
        res.verdict = NormVerdict::Yes;
        res.witness = z;
        return res;
      }
    }
    res.verdict = NormVerdict::No;
    return res;
  }
  // norm(x + y t) = x^2 + a x y + b y^2, positive definite iff a^2 - 4b < 0
  Rational a = ext.alpha_min().rational(), b = ext.beta_min().rational();
  if (a * a - 4 * b < 0 && c.rational() < 0) {
    res.verdict = NormVerdict::No;
    return res;
  }
  auto nth = [](int i) { return (i % 2 == 1) ? (i + 1) / 2 : -(i / 2); };  // 0, 1, -1, 2, -2, ...
  for (int z = 1; z <= bound; ++z) {
    for (int h = 0; h <= bound; ++h) {
      for (int i = 0; i <= 2 * h; ++i) {
        for (int j = 0; j <= 2 * h; ++j) {
          int x = nth(i), y = nth(j);
          if (std::max(std::abs(x), std::abs(y)) != h) continue;
          Scalar w = ext.make(base.from_rational(Rational(x, z)), base.from_rational(Rational(y, z)));
          if (norm(w) == c) {
            res.verdict = NormVerdict::Yes;
            res.witness = w;
            return res;
          }
        }
      }
    }
  }
  res.verdict = NormVerdict::Unknown;
  return res;
}

Scalar reduce_char_not2(const Scalar& alpha, const Scalar& beta) {
  alpha.require_same(beta);
  Field f = alpha.field();
  if (f.characteristic() == 2) throw Error(Errc::CharTwo, "completing the square needs char != 2");
  // x = y + alpha/2 turns x^2 - alpha x + beta into y^2 + (beta - alpha^2/4)
  return beta - alpha * alpha / f.from_int(4);
}

}  // namespace qdup
