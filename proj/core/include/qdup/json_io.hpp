#pragma once

#include <string>
#include <vector>

#include "qdup/dim4.hpp"
#include "qdup/duplicates.hpp"

namespace qdup {

// Versioned JSON documents. Emitters are deterministic (fixed key order, two-space indent);
// every parser throws ParseError on malformed input and accepts exactly what the emitter writes.

/// "algebra/v1": {field, dim, labels, unit, table}; table[i][j] holds the coordinates of b_i b_j.
std::string algebra_to_json(const Algebra& a);
Algebra algebra_from_json(const std::string& text);

/// "quiver/v1" with kind "functional" (1-based set map) or "general" (vertices and arrows).
std::string quiver_to_json(const FunctionalQuiver& q);
std::string quiver_to_json(const GeneralQuiver& q);
FunctionalQuiver functional_quiver_from_json(const std::string& text);
GeneralQuiver general_quiver_from_json(const std::string& text);

/// "twist/v1", pair variant: {field, A: algebra, B: {alpha, beta}, f, delta}.
std::string pair_to_json(const TwistingPair& p);
TwistingPair pair_from_json(const std::string& text);

struct TauDocument {
  TwoDim a;
  TwoDim b;
  std::vector<Tau2x2> taus;
};

/// "twist/v1", coefficient variant: {field, A: {alpha, beta}, B: {alpha, beta}, coeffs: [[a,b,c,d], ...]}.
std::string taus_to_json(const TauDocument& d);
TauDocument taus_from_json(const std::string& text);

struct DuplicatesDocument {
  Field field;
  int n = 0;
  TwoDim b;
  std::vector<DuplicateEntry> entries;
};

/// "duplicates/v1": {field, n, B, count, entries: [{set_map, colors, label, certified, symbolic, note}]}.
std::string duplicates_to_json(const DuplicatesDocument& d);
DuplicatesDocument duplicates_from_json(const std::string& text);

/// "catalog4/v1": {field, products, rows: [{label, representative, factor_pairs, tau_count, fingerprint,
/// gabriel, gabriel_factorizable, note, algebra}]}. The parsed rows carry no reference Label.
std::string catalog_to_json(const Catalog4& c);
Catalog4 catalog_from_json(const std::string& text);

}  // namespace qdup
