#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdup/label.hpp"
#include "qdup/twist.hpp"

namespace qdup {

/// Normalized color vector a of a functional quiver: delta(e_i) = sum_{phi(j)=i} a_j e_j - a_i e_i.
struct Coloration {
  FunctionalQuiver quiver;
  Vec colors;
};

/// Both vertex equations evaluated literally at every vertex; true iff all vanish.
bool verify_coloration(const FunctionalQuiver& q, const Vec& a, const TwoDim& b);

/// c + s * t_param, s = +1 or -1; a plain constant when param < 0.
struct ColorTerm {
  Scalar constant;
  int param = -1;
  bool negated = false;

  Scalar eval(const Vec& values) const;
  std::string to_string() const;
};

/// One-parameter-per-strict-2-cycle family over an infinite field.
struct SymbolicColoration {
  FunctionalQuiver quiver;
  std::vector<ColorTerm> colors;
  int parameters = 0;

  Vec instantiate(const Vec& values) const;
  std::string to_string() const;
};

struct ColorationSet {
  std::vector<Coloration> colorations;       // sorted by color vector
  std::vector<SymbolicColoration> families;  // nonempty only over infinite fields
  bool infinite_family = false;
};

/// Colorations produced by the component rules (loop trees, strict 2-cycles, longer cycles).
/// Every concrete output is re-checked with verify_coloration (CertificationFailed otherwise).
ColorationSet enumerate_colorations(const FunctionalQuiver& q, const TwoDim& b);

Matrix delta_from_coloration(const FunctionalQuiver& q, const Vec& a, const Field& field);
/// Throws InvalidColoration when the coloration fails verification.
TwistingPair pair_from_coloration(const Coloration& c, const TwoDim& b);
/// Inverse dictionary for pairs on k^n. Throws InvalidPair if f is not a set-map matrix.
Coloration coloration_from_pair(const TwistingPair& p);

/// Throws InvalidColoration.
Label classify(const FunctionalQuiver& q, const Vec& a, const TwoDim& b);

struct Certificate {
  Label label;
  Algebra model;               // direct product of the component models, in component order
  LinearMap map;               // model -> k^n (x)_(f,delta) B, multiplicative and bijective
  std::vector<std::string> notes;
};

/// Explicit isomorphism from the classification, verified. Throws CertificationFailed.
Certificate certify(const FunctionalQuiver& q, const Vec& a, const TwoDim& b);

struct DuplicateCount {
  std::uint64_t count = 0;
  bool infinite = false;  // some set map carries a strict 2-cycle over an infinite field

  std::string to_string() const;
};

DuplicateCount count_twisting_maps(int n, const TwoDim& b);

struct DuplicateEntry {
  FunctionalQuiver quiver;
  std::vector<std::string> colors;
  std::string label;
  bool certified = false;
  bool symbolic = false;
  std::string note;
};

/// All colored quivers on n vertices with labels and certification status, in canonical
/// order (set map, then colors). `jobs` worker threads split the set maps.
std::vector<DuplicateEntry> list_duplicates(int n, const TwoDim& b, int jobs = 1);

}  // namespace qdup
