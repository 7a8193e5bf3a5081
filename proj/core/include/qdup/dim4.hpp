#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdup/label.hpp"
#include "qdup/twist.hpp"

namespace qdup {

/// A: {q}, X: {t}, B: {gamma, q}, C: {alpha, beta, q}, D: {alpha, beta, alpha', beta', q}.
struct FamilyParam {
  std::string name;
  std::vector<Scalar> params;
};

/// The factors and the twisting tuple realizing a family member.
struct FamilyPresentation {
  TwoDim a;
  TwoDim b;
  Tau2x2 tau;
};

/// A_q: x^2 = y^2 = 0, yx = q xy.  X_t: x^2 = y^2 = 0, xy + yx = t.
/// B_q: x^2 = 0, y^2 = gamma, xy + yx = q.  C_q: x^2 = alpha, y^2 = beta, xy + yx = q (char != 2).
/// D_q: x^2 = alpha x + beta, y^2 = alpha' y + beta', xy + yx = q + alpha' x + alpha y (char 2).
/// Throws CharMismatch, DimensionMismatch (wrong parameter count), ParseError (unknown name).
FamilyPresentation family_presentation(const FamilyParam& p, const Field& field);
/// Basis 1, x, y, xy.
Algebra construct_family(const FamilyParam& p, const Field& field);

/// x -> E12, y -> t E21. Throws DegenerateParameter for t = 0.
LinearMap xt_to_matrix(const Scalar& t);
/// x -> [[0,0],[q/gamma,0]], y -> [[0,gamma],[1,0]]. Throws DegenerateParameter for q = 0 or gamma = 0.
LinearMap bq_to_matrix(const Scalar& gamma, const Scalar& q);

struct QuaternionReduction {
  Scalar a;
  Scalar t;  // (q^2 - 4 alpha beta) / (4 alpha^2)
  LinearMap map;  // C_q -> (a, t), x -> i, y -> (q / 2 alpha) i + ij
};

/// Throws CharTwo, AlphaZero, CertificationFailed.
QuaternionReduction quaternion_from_Cq(const Scalar& alpha, const Scalar& beta, const Scalar& q);

enum class CqVerdict { Isomorphic, NotIsomorphic, Unknown };

struct CqPairResult {
  CqVerdict verdict = CqVerdict::Unknown;
  Scalar ratio;                      // (q^2 - 4 alpha beta) / (h^2 - 4 alpha beta)
  std::optional<std::pair<Scalar, Scalar>> witness;  // x^2 - alpha y^2 = ratio
};

/// C_q ~ C_h iff the ratio is a norm from k(sqrt alpha). Throws DegenerateParameter, AlphaZero, CharTwo.
CqPairResult classify_Cq_pair(const Scalar& alpha, const Scalar& beta, const Scalar& q, const Scalar& h,
                              int bound = 24);
const char* verdict_name(CqVerdict v);

/// q = h or q = 1/h. Throws ZeroParameter.
bool classify_Aq_pair(const Scalar& q, const Scalar& h);

struct InvariantRingReport {
  std::string subject;       // "B_0" or "C_2a"
  std::size_t fixed_dim = 0;
  bool morphism = false;     // explicit map into the restricted l Q<2 is multiplicative
  bool onto_fixed = false;   // its image is exactly the fixed algebra
  bool iso_confirmed = false;
  LinearMap map;             // subject -> fixed algebra

  bool ok() const { return fixed_dim == 4 && morphism && onto_fixed && iso_confirmed; }
  std::string to_string() const;
};

/// B_0 (y^2 = gamma) and C_{2 alpha} (x^2 = y^2 = alpha) against (l Q<2)^G with l = k(sqrt param),
/// G swapping u, v and R, S while conjugating scalars. Throws ParameterIsSquare, CharTwo, Unsupported.
InvariantRingReport verify_invariant_ring_B0(const Field& k, const Scalar& gamma);
InvariantRingReport verify_invariant_ring_C2a(const Field& k, const Scalar& alpha);

/// Named two-dimensional factors over a finite field: k2, dual, and the quadratic extension.
struct NamedFactor {
  std::string name;
  TwoDim presentation;
};
std::vector<NamedFactor> two_dim_factors(const Field& field);

struct CatalogRow {
  std::string label;                 // reference label, or "unidentified"
  std::optional<Label> reference;
  std::string representative;        // "A (x) B, tau=(a,b,c,d)"
  std::vector<std::string> factor_pairs;
  std::uint64_t tau_count = 0;
  Fingerprint fingerprint;
  std::string gabriel;               // matching entry of the static diagram, if any
  bool gabriel_factorizable = false;
  std::string note;
  Algebra algebra;
};

struct Catalog4 {
  Field field;
  std::vector<CatalogRow> rows;
  std::uint64_t products = 0;        // twisted products built

  /// Rows realized by the ordered factor pair "A (x) B".
  std::vector<std::string> labels_for(const std::string& factor_pair) const;
};

struct GabrielEntry {
  std::string name;
  std::string reference;  // id of the reference candidate realizing it; empty if none
  bool factorizable = false;
};

/// Reads the static Gabriel diagram file (JSON). Throws ParseError.
std::vector<GabrielEntry> load_gabriel(const std::string& path);
/// Default location of the data file (build tree or install prefix).
std::string default_gabriel_path();

/// Every twisting map on every ordered pair of factors, bucketed by fingerprint and
/// confirmed by isomorphism search. Throws BudgetExceeded, Unsupported (infinite field).
Catalog4 catalog4(const Field& field, const std::vector<GabrielEntry>& gabriel = {},
                  const Budgets& budgets = default_budgets(), int jobs = 1);

struct ReferenceCandidate {
  Label label;
  Algebra algebra;
  std::string gabriel_id;  // matches GabrielEntry::reference; empty when the diagram has no such entry
};

/// Reference candidates used to name catalog rows, in matching order.
std::vector<ReferenceCandidate> reference_candidates(const Field& field);

struct ProbeResult {
  bool found = false;
  std::optional<Tau2x2> witness;
  std::uint64_t scanned = 0;  // twisting maps examined
};

/// Searches all twisting maps on A (x) A for a simple product; NoneExists is a complete verdict.
ProbeResult conjecture_probe(const TwoDim& a, const Budgets& budgets = default_budgets());

struct OrbitReport {
  Scalar alpha, beta;
  std::vector<std::vector<Scalar>> orbits;  // q values grouped by the norm class of q^2 - 4 alpha beta
  std::vector<Scalar> exceptional;          // q with q^2 = 4 alpha beta
  std::string to_string() const;
};

/// Isomorphism classes of the C_q over a finite field of odd characteristic, by direct enumeration.
OrbitReport cq_orbit_report(const Scalar& alpha, const Scalar& beta);

}  // namespace qdup
