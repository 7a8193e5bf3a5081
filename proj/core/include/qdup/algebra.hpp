#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qdup/config.hpp"
#include "qdup/linalg.hpp"
#include "qdup/quiver.hpp"

namespace qdup {

/// Finite-dimensional algebra given by structure constants: product(i, j) holds the
/// coordinates of b_i * b_j. Cheap to copy (shared immutable table).
class Algebra {
 public:
  Algebra() = default;
  /// `table` has dim*dim entries in row-major order; `unit` may be empty when the table has no identity.
  Algebra(Field f, std::size_t dim, std::vector<Vec> table, Vec unit, std::vector<std::string> labels = {});

  const Field& field() const { return d_->field; }
  std::size_t dim() const { return d_ ? d_->dim : 0; }
  const Vec& product(std::size_t i, std::size_t j) const { return d_->table[i * d_->dim + j]; }
  bool has_unit() const { return !d_->unit.empty(); }
  const Vec& unit() const;
  const std::vector<std::string>& labels() const { return d_->labels; }

  Vec basis(std::size_t i) const { return unit_vec(field(), dim(), i); }
  Vec zero() const { return zero_vec(field(), dim()); }
  Vec mul(const Vec& a, const Vec& b) const;
  /// Matrix of b -> a*b, and of b -> b*a.
  Matrix left_mult(const Vec& a) const;
  Matrix right_mult(const Vec& a) const;

  std::string element_to_string(const Vec& v) const;
  Algebra with_labels(std::vector<std::string> labels) const;

  /// Same field, same table and unit (labels ignored).
  bool operator==(const Algebra& o) const;

 private:
  struct Data {
    Field field;
    std::size_t dim = 0;
    std::vector<Vec> table;
    Vec unit;
    std::vector<std::string> labels;
  };
  std::shared_ptr<const Data> d_;
};

/// Coordinates of the index-th element of k^dim in the canonical enumeration (finite k).
Vec element_at(const Field& f, std::size_t dim, std::uint64_t index);
/// p^dim, or nullopt when it exceeds `limit`.
std::optional<std::uint64_t> element_count(const Field& f, std::size_t dim, std::uint64_t limit);

struct AlgebraReport {
  bool associative = true;
  bool unital = true;
  std::optional<std::array<std::size_t, 3>> failing_triple;  // (b_i b_j) b_k != b_i (b_j b_k)
  std::optional<std::size_t> failing_unit;                   // basis index where the stored unit fails
  std::optional<Vec> found_unit;                             // solved for when none is stored

  bool ok() const { return associative && unital; }
};

AlgebraReport check_algebra(const Algebra& a);

// ------------------------------------------------------------------ constructors

Algebra power_of_field(const Field& f, std::size_t n);
/// k[x]/(x^2 - alpha x + beta), basis 1, x.
Algebra quotient_poly(const Scalar& alpha, const Scalar& beta);
/// Basis E11, E12, E21, E22.
Algebra matrix_2x2(const Field& f);
/// kQ/(paths of length >= 2): basis vertices then arrows; an arrow a: s -> t has a*v_s = a = v_t*a.
Algebra truncated_path(const Field& f, const GeneralQuiver& q);
/// Full path algebra of an acyclic quiver, same composition convention.
Algebra path_algebra(const Field& f, const GeneralQuiver& q);
Algebra direct_product(const Algebra& a, const Algebra& b);
Algebra opposite(const Algebra& a);
/// A (x) B with basis a_i (x) b_j at index i + dim(A)*j.
Algebra tensor_product(const Algebra& a, const Algebra& b);
/// The same table read over a quadratic extension of the field of `a`.
Algebra scalar_extension(const Algebra& a, const Field& ext);
/// An algebra over l = k(t) viewed over k: basis b_i then t*b_i.
Algebra restrict_scalars(const Algebra& a);
/// k<i, j | i^2 = a, j^2 = t, ij + ji = 0>, basis 1, i, j, ij.
Algebra quaternion_algebra(const Scalar& a, const Scalar& t);

// ------------------------------------------------------------------ maps

struct LinearMap {
  Algebra source;
  Algebra target;
  Matrix matrix;  // target dim x source dim

  Vec operator()(const Vec& v) const { return matrix.apply(v); }
};

LinearMap identity_map(const Algebra& a);
/// Map sending basis element i of `source` to images[i].
LinearMap map_from_images(const Algebra& source, const Algebra& target, const std::vector<Vec>& images);
LinearMap compose(const LinearMap& second, const LinearMap& first);

/// phi(1) = 1 and phi(b_i b_j) = phi(b_i) phi(b_j) for all basis pairs.
bool check_morphism(const LinearMap& phi);
bool is_bijective(const LinearMap& phi);

// ------------------------------------------------------------------ invariants

struct Fingerprint {
  bool commutative = false;
  std::size_t center_dim = 0;
  std::size_t commutator_dim = 0;  // dim span{uv - vu}
  std::optional<std::uint64_t> idempotents;
  std::optional<std::uint64_t> square_zero;
  std::optional<bool> simple;
  std::optional<std::uint64_t> unit_group;

  bool operator==(const Fingerprint& o) const = default;
  std::string to_string() const;
};

/// Counting entries are left empty over infinite fields or when p^dim exceeds the budget.
Fingerprint fingerprint(const Algebra& a, const Budgets& budgets = default_budgets());

std::size_t center_dim(const Algebra& a);
bool is_commutative(const Algebra& a);

/// Two-sided ideal generated by v.
std::size_t ideal_dim(const Algebra& a, const Vec& v);
/// Every nonzero element generates the whole algebra. Finite fields only; throws BudgetExceeded.
bool is_simple(const Algebra& a, const Budgets& budgets = default_budgets());

/// Dimension of the subalgebra generated by the unit and the given elements.
std::size_t generated_dim(const Algebra& a, const std::vector<Vec>& gens);

struct FixedAlgebra {
  Algebra algebra;
  LinearMap inclusion;
};

/// Fixed points of an involutive automorphism g. Throws NotInvolutive / NotMorphism.
FixedAlgebra fixed_subalgebra(const Algebra& a, const Matrix& g);

/// Subalgebra spanned by `basis` (closed under products and containing 1), with its inclusion.
FixedAlgebra subalgebra_on(const Algebra& a, const std::vector<Vec>& basis, std::vector<std::string> labels = {});

// ------------------------------------------------------------------ isomorphism search

enum class IsoStrategy { FingerprintFirst, Generators, Exhaustive };
enum class IsoOutcome { Iso, NoneFound, ProvedDistinct };

struct IsoResult {
  IsoOutcome outcome = IsoOutcome::NoneFound;
  std::optional<LinearMap> map;
  std::string reason;
  bool budget_exceeded = false;
  bool complete = false;  // the candidate space was exhausted
};

/// Greedy generating set: repeatedly add the basis element that most enlarges the
/// generated subalgebra, ties to the lowest index.
std::vector<std::size_t> greedy_generators(const Algebra& a);

/// Isomorphism A -> B. Generator and exhaustive strategies need a finite field. The first
/// hit in enumeration order is returned, and every hit is re-verified.
IsoResult iso_search(const Algebra& a, const Algebra& b, IsoStrategy strategy = IsoStrategy::FingerprintFirst,
                     const Budgets& budgets = default_budgets());

const char* outcome_name(IsoOutcome o);

}  // namespace qdup
