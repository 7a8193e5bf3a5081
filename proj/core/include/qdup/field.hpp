#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qdup/errors.hpp"

namespace qdup {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class FieldKind { Rationals, Prime, QuadExt };

namespace detail {
struct FieldData;
}

class Scalar;

/// Handle to an exact field: Q, F_p, or a quadratic extension base[t]/(t^2 - a t + b).
///
/// Field descriptors are interned, so handles compare by identity and copies are free.
/// Text forms: "Q", "F5", "F3[t^2=2]", "Q[t^2=-1]", "F2[t^2=t+1]".
class Field {
 public:
  Field();  // the rationals

  static Field rationals();
  static Field prime(std::int64_t p);
  /// Quadratic extension by a root of x^2 - alpha_min*x + beta_min; rejects reducible polynomials.
  static Field quad_ext(const Field& base, const Scalar& alpha_min, const Scalar& beta_min);
  static Field parse(std::string_view text);

  FieldKind kind() const;
  bool is_finite() const;
  std::int64_t characteristic() const;
  /// Number of elements; throws Unsupported for Q and its extensions.
  std::uint64_t order() const;
  /// Base field of a QuadExt; the field itself otherwise.
  Field base() const;
  /// Minimal polynomial coefficients of the generator (base scalars).
  Scalar alpha_min() const;
  Scalar beta_min() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t v) const;
  Scalar from_rational(const Rational& v) const;
  Scalar generator() const;
  /// c0 + c1*t from base-field coordinates (QuadExt only).
  Scalar make(const Scalar& c0, const Scalar& c1) const;
  /// Image of a base-field scalar.
  Scalar embed(const Scalar& base_elem) const;
  /// The index-th element in the canonical enumeration of a finite field.
  Scalar element(std::uint64_t index) const;
  std::vector<Scalar> elements() const;
  Scalar parse_scalar(std::string_view text) const;

  std::string to_string() const;

  bool operator==(const Field& other) const { return d_ == other.d_; }

  const detail::FieldData* data() const { return d_; }

 private:
  explicit Field(const detail::FieldData* d) : d_(d) {}
  const detail::FieldData* d_;

  friend class Scalar;
};

/// Element of a Field. Finite-field coordinates are machine integers; rational
/// coordinates are arbitrary precision and kept in lowest terms.
class Scalar {
 public:
  Scalar() = default;

  Field field() const;
  bool bound() const { return f_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inv() const;
  Scalar pow(std::int64_t e) const;

  /// Exact equality; throws FieldMismatch across fields.
  bool operator==(const Scalar& o) const;
  /// Canonical total order (finite: enumeration index; Q: by value of coordinates).
  std::strong_ordering operator<=>(const Scalar& o) const;

  /// Base-field coordinate i (0 or 1) of a QuadExt element; coordinate 0 is the element itself otherwise.
  Scalar coord(int i) const;
  /// Nontrivial automorphism fixing the base (identity outside QuadExt).
  Scalar conj() const;

  std::uint64_t index() const;
  /// Value of a rational scalar.
  Rational rational() const;
  /// Residue 0..p-1 of a prime-field scalar.
  std::int64_t residue() const;

  std::string to_string() const;

  /// Throws FieldMismatch unless both scalars live in the same field.
  void require_same(const Scalar& o) const;

 private:
  friend class Field;
  const detail::FieldData* f_ = nullptr;
  std::int64_t c0_ = 0;
  std::int64_t c1_ = 0;
  std::shared_ptr<const std::array<Rational, 2>> r_;  // rational coordinates; null means zero
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const Field& f) { return os << f.to_string(); }

/// Roots of x^2 - alpha x + beta in the field, with multiplicity, in canonical order.
std::vector<Scalar> quad_roots(const Scalar& alpha, const Scalar& beta);

/// z * conj(z), an element of the base field.
Scalar norm(const Scalar& z);

enum class NormVerdict { Yes, No, Unknown };

struct NormResult {
  NormVerdict verdict = NormVerdict::Unknown;
  std::optional<Scalar> witness;  // element of the extension with norm(witness) == c
};

/// Decides whether c (base scalar, nonzero) is a norm from ext. Exhaustive over finite
/// fields; over Q a bounded search with a definite-form sign obstruction.
NormResult is_norm(const Field& ext, const Scalar& c, int bound = 24);

/// gamma with k[x]/(x^2 - alpha x + beta) isomorphic to k[x]/(x^2 + gamma); char != 2.
Scalar reduce_char_not2(const Scalar& alpha, const Scalar& beta);

bool is_square(const Scalar& s);

}  // namespace qdup
