#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdup/dim4.hpp"
#include "qdup/duplicates.hpp"

namespace qdup {

/// One family of explicit isomorphisms checked (multiplicative and bijective) on every instance.
struct IsoCheck {
  std::string name;
  std::vector<std::string> fields;
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  std::string first_failure;

  bool ok() const { return instances > 0 && failures == 0 && fields.size() >= 2; }
};

/// Strict 2-cycle maps (round trip and matrix), Phi, Phi-hat, the quotient case, X_t, B_q, C_q and
/// the two invariant-ring maps, each over F3, F5 and F7.
std::vector<IsoCheck> certify_explicit_isomorphisms();

/// Pairs on k^n recovered from every coloration of every set map.
std::vector<TwistingPair> pairs_from_enumerator(int n, const TwoDim& b);

struct OracleRow {
  TwoDim b;
  int n = 0;
  std::size_t enumerated = 0;
  std::size_t brute = 0;
  bool equal = false;
};

/// Enumerator against brute_force_pairs for every (alpha, beta) over a finite field and n = 1..n_max.
std::vector<OracleRow> oracle_suite(int n_max, const Field& field, const Budgets& budgets = default_budgets());

}  // namespace qdup
