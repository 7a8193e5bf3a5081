#pragma once

#include <string>
#include <vector>

#include "qdup/algebra.hpp"

namespace qdup {

enum class LabelKind { MatrixRing, TruncatedPath, PathAlgebra, QuotientPoly, Quaternion, Family, Tensor, Product };

/// Symbolic isomorphism-class descriptor. Products are flattened and sorted, and all
/// truncated-path factors of a product are merged into one quiver (kQ<2 x kQ'<2 = k(Q u Q')<2),
/// so equal keys mean equal labels.
class Label {
 public:
  static Label matrix_ring(int size);
  static Label truncated_path(GeneralQuiver q);
  static Label path_algebra(GeneralQuiver q);
  static Label quotient_poly(const Scalar& alpha, const Scalar& beta);
  static Label quaternion(const Scalar& a, const Scalar& t);
  /// name in {A, X, B, C, D}; parameters as in construct_family.
  static Label family(const std::string& name, std::vector<Scalar> params);
  static Label tensor(std::vector<Label> parts);
  static Label product(std::vector<Label> parts);

  LabelKind kind() const { return kind_; }
  int size() const { return size_; }
  const GeneralQuiver& quiver() const { return quiver_; }
  const std::vector<Scalar>& params() const { return params_; }
  const std::string& family_name() const { return name_; }
  const std::vector<Label>& parts() const { return parts_; }

  std::string to_string() const;
  /// Canonical encoding (quivers up to isomorphism).
  std::string key() const;

  bool operator==(const Label& o) const { return key() == o.key(); }
  bool operator<(const Label& o) const { return key() < o.key(); }

 private:
  LabelKind kind_ = LabelKind::MatrixRing;
  int size_ = 0;
  GeneralQuiver quiver_;
  std::vector<Scalar> params_;
  std::string name_;
  std::vector<Label> parts_;
};

/// Round-trip quiver u <-> v with arrows R: u -> v and S: v -> u.
GeneralQuiver round_trip_quiver();

/// Algebra realizing the label over `field`. Throws FieldMismatch, Unsupported (matrix rings beyond 2).
Algebra construct(const Label& label, const Field& field);

}  // namespace qdup
