#include "qdup/label.hpp"

#include <algorithm>
#include <optional>

#include "qdup/dim4.hpp"

namespace qdup {

namespace {

std::string scalars(const std::vector<Scalar>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].to_string();
  return s;
}

std::string quiver_text(const GeneralQuiver& q) {
  std::string s;
  for (std::size_t i = 0; i < q.vertex_count(); ++i) s += (i ? "," : "") + q.vertices()[i];
  s += ";";
  for (std::size_t i = 0; i < q.arrow_count(); ++i) {
    const Arrow& a = q.arrows()[i];
    s += (i ? "," : "") + a.label + ":" + q.vertices()[static_cast<std::size_t>(a.source)] + "->" +
         q.vertices()[static_cast<std::size_t>(a.target)];
  }
  return s;
}

}  // namespace

Label Label::matrix_ring(int size) {
  Label l;
  l.kind_ = LabelKind::MatrixRing;
  l.size_ = size;
  return l;
}

Label Label::truncated_path(GeneralQuiver q) {
  Label l;
  l.kind_ = LabelKind::TruncatedPath;
  l.quiver_ = std::move(q);
  return l;
}

Label Label::path_algebra(GeneralQuiver q) {
  Label l;
  l.kind_ = LabelKind::PathAlgebra;
  l.quiver_ = std::move(q);
  return l;
}

Label Label::quotient_poly(const Scalar& alpha, const Scalar& beta) {
  Label l;
  l.kind_ = LabelKind::QuotientPoly;
  l.params_ = {alpha, beta};
  return l;
}

Label Label::quaternion(const Scalar& a, const Scalar& t) {
  Label l;
  l.kind_ = LabelKind::Quaternion;
  l.params_ = {a, t};
  return l;
}

Label Label::family(const std::string& name, std::vector<Scalar> params) {
  Label l;
  l.kind_ = LabelKind::Family;
  l.name_ = name;
  l.params_ = std::move(params);
  return l;
}

Label Label::tensor(std::vector<Label> parts) {
  Label l;
  l.kind_ = LabelKind::Tensor;
  l.parts_ = std::move(parts);
  return l;
}

Label Label::product(std::vector<Label> parts) {
  std::vector<Label> flat;
  std::optional<GeneralQuiver> merged;
  auto absorb = [&](const Label& p, auto&& self) -> void {
    if (p.kind_ == LabelKind::Product) {
      for (const auto& q : p.parts_) self(q, self);
    } else if (p.kind_ == LabelKind::TruncatedPath) {
      merged = merged ? merged->disjoint_union(p.quiver_) : p.quiver_;
    } else {
      flat.push_back(p);
    }
  };
  for (const auto& p : parts) absorb(p, absorb);
  if (merged) flat.push_back(truncated_path(*merged));
  if (flat.size() == 1) return flat.front();
  std::sort(flat.begin(), flat.end());
  Label l;
  l.kind_ = LabelKind::Product;
  l.parts_ = std::move(flat);
  return l;
}

std::string Label::to_string() const {
  switch (kind_) {
    case LabelKind::MatrixRing:
      return size_ == 1 ? "k" : "M" + std::to_string(size_) + "(k)";
    case LabelKind::TruncatedPath:
      return "kQ<2[" + quiver_text(quiver_) + "]";
    case LabelKind::PathAlgebra:
      return "kQ[" + quiver_text(quiver_) + "]";
    case LabelKind::QuotientPoly:
      return "k[x]/(x^2-(" + params_[0].to_string() + ")x+(" + params_[1].to_string() + "))";
    case LabelKind::Quaternion:
      return "Quat(" + scalars(params_) + ")";
    case LabelKind::Family:
      return name_ + "(" + scalars(params_) + ")";
    case LabelKind::Tensor: {
      std::string s;
      for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? " (x) " : "") + parts_[i].to_string();
      return s;
    }
    case LabelKind::Product: {
      // equal factors collapse to a power: k x k x k -> k^3
      std::string s;
      for (std::size_t i = 0; i < parts_.size();) {
        std::size_t j = i;
        while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
        std::string part = parts_[i].to_string();
        if (part.find(' ') != std::string::npos && j - i > 1) part = "(" + part + ")";
        s += (i ? " x " : "") + part + (j - i > 1 ? "^" + std::to_string(j - i) : "");
        i = j;
      }
      return s;
    }
  }
  return "?";
}

std::string Label::key() const {
  switch (kind_) {
    case LabelKind::MatrixRing:
      return "M" + std::to_string(size_);
    case LabelKind::TruncatedPath:
      return "TP[" + quiver_.canonical_form() + "]";
    case LabelKind::PathAlgebra:
      return "PA[" + quiver_.canonical_form() + "]";
    case LabelKind::QuotientPoly:
      return "QP(" + scalars(params_) + ")";
    case LabelKind::Quaternion:
      return "QU(" + scalars(params_) + ")";
    case LabelKind::Family:
      return "F" + name_ + "(" + scalars(params_) + ")";
    case LabelKind::Tensor:
    case LabelKind::Product: {
      std::string s = kind_ == LabelKind::Tensor ? "T(" : "P(";
      for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "|" : "") + parts_[i].key();
      return s + ")";
    }
  }
  return "?";
}

GeneralQuiver round_trip_quiver() { return GeneralQuiver({"u", "v"}, {{"R", 0, 1}, {"S", 1, 0}}); }

Algebra construct(const Label& label, const Field& field) {
  for (const auto& s : label.params())
    if (!(s.field() == field)) throw Error(Errc::FieldMismatch, "label parameters live over " + s.field().to_string());
  switch (label.kind()) {
    case LabelKind::MatrixRing:
      if (label.size() == 1) return power_of_field(field, 1);
      if (label.size() == 2) return matrix_2x2(field);
      throw Error(Errc::Unsupported, "matrix rings beyond M2");
    case LabelKind::TruncatedPath:
      return truncated_path(field, label.quiver());
    case LabelKind::PathAlgebra:
      return path_algebra(field, label.quiver());
    case LabelKind::QuotientPoly:
      return quotient_poly(label.params()[0], label.params()[1]);
    case LabelKind::Quaternion:
      return quaternion_algebra(label.params()[0], label.params()[1]);
    case LabelKind::Family:
      return construct_family(FamilyParam{label.family_name(), label.params()}, field);
    case LabelKind::Tensor:
    case LabelKind::Product: {
      if (label.parts().empty()) throw Error(Errc::DimensionMismatch, "empty composite label");
      Algebra acc = construct(label.parts().front(), field);
      for (std::size_t i = 1; i < label.parts().size(); ++i) {
        Algebra next = construct(label.parts()[i], field);
        acc = label.kind() == LabelKind::Tensor ? tensor_product(acc, next) : direct_product(acc, next);
      }
      return acc;
    }
  }
  throw Error(Errc::Unsupported, "unknown label kind");
}

}  // namespace qdup
