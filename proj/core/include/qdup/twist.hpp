#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qdup/algebra.hpp"

namespace qdup {

/// B = k[x]/(p), p = x^2 - alpha x + beta. The companion q(x) = x^2 + alpha x + beta = p(-x)
/// carries the vertex colors.
struct TwoDim {
  Scalar alpha;
  Scalar beta;

  TwoDim() = default;
  TwoDim(Scalar a, Scalar b);

  Field field() const { return alpha.field(); }
  std::vector<Scalar> p_roots() const;
  std::vector<Scalar> q_roots() const;
  /// Distinct roots of q in canonical order.
  std::vector<Scalar> distinct_q_roots() const;
  Scalar q(const Scalar& v) const { return v * v + alpha * v + beta; }
  /// Reduced form x^2 + gamma (char != 2 only).
  std::optional<Scalar> gamma() const;
  Algebra algebra(const std::string& var = "x") const;
  std::string to_string() const;
};

/// Parses "k2", "dual", "ext" or "alpha,beta" into a presentation over f.
TwoDim parse_two_dim(const std::string& spec, const Field& f);
/// k^2 (x^2 = x), dual numbers (x^2 = 0), and the least quadratic field extension.
TwoDim split_presentation(const Field& f);
TwoDim dual_presentation(const Field& f);
std::optional<TwoDim> field_presentation(const Field& f);

enum class LeibnizRule {
  Left,   // delta(ab) = f(a) delta(b) + delta(a) b
  Right,  // delta(ab) = delta(a) f(b) + a delta(b)
};

struct PairReport {
  bool f_unital = true;
  bool f_multiplicative = true;
  bool leibniz = true;
  bool p_relation = true;      // delta^2 - alpha delta + beta = beta f^2
  bool anticommutation = true; // f delta + delta f = alpha (f - f^2)
  std::string failure;

  bool ok() const { return f_unital && f_multiplicative && leibniz && p_relation && anticommutation; }
};

PairReport verify_pair(const Algebra& a, const TwoDim& b, const Matrix& f, const Matrix& delta,
                       LeibnizRule rule = LeibnizRule::Left);

struct TwistingPair {
  Algebra A;
  TwoDim B;
  Matrix f;
  Matrix delta;
  std::optional<Vec> theta;  // delta(a) = (f(a) - a) theta when such an element exists
};

/// Validated pair (throws InvalidPair), with the inner witness filled in when one exists.
TwistingPair make_pair(const Algebra& a, const TwoDim& b, const Matrix& f, const Matrix& delta);
std::optional<Vec> inner_witness(const Algebra& a, const Matrix& f, const Matrix& delta);

/// A (x)_tau B where tau(b_j (x) a_k) has coordinates tau(j, k) in the basis a_r (x) b_s
/// (index r + dim(A)*s). Product (a_i b_j)(a_k b_l) = sum tau(j,k)_{rs} a_i a_r (x) b_s b_l.
Algebra build_twisted(const Algebra& a, const Algebra& b, const std::function<Vec(std::size_t, std::size_t)>& tau);

/// Basis e_i (x) 1 then e_i (x) x, from x a = delta(a) + f(a) x.
Algebra build_twisted_product(const TwistingPair& pair);
/// a -> a (x) 1 and b -> 1 (x) b.
LinearMap inclusion_left(const Algebra& twisted, const Algebra& a, const Algebra& b);
LinearMap inclusion_right(const Algebra& twisted, const Algebra& a, const Algebra& b);

/// Unital endomorphisms: set maps for k^n, a matrix scan otherwise.
std::vector<Matrix> algebra_endomorphisms(const Algebra& a, const Budgets& budgets = default_budgets());
/// Left f-derivations: basis of the solution space of the linear Leibniz system.
std::vector<Matrix> derivation_basis(const Algebra& a, const Matrix& f, LeibnizRule rule = LeibnizRule::Left);

/// Every valid pair, with delta running over the f-derivation space. Sorted canonically.
std::vector<TwistingPair> brute_force_pairs(const Algebra& a, const TwoDim& b, const Budgets& budgets = default_budgets());
/// Same set, with delta running over all n x n matrices.
std::vector<TwistingPair> brute_force_pairs_naive(const Algebra& a, const TwoDim& b, const Budgets& budgets = default_budgets());
/// Canonical text key of (f, delta) for set comparisons.
std::string pair_key(const Matrix& f, const Matrix& delta);

/// y x = a + b x + c y + d x y for A = k[x]/(pA), B = k[y]/(pB).
struct Tau2x2 {
  Scalar a, b, c, d;
  std::string to_string() const;
};

/// Basis 1, x, y, xy.
Algebra build_tau_2x2(const TwoDim& a, const TwoDim& b, const Tau2x2& t);
bool tau_2x2_valid(const TwoDim& a, const TwoDim& b, const Tau2x2& t);
std::vector<Tau2x2> brute_force_tau_2x2(const TwoDim& a, const TwoDim& b, const Budgets& budgets = default_budgets());

/// f phi = phi f and delta phi = phi delta. Throws NotMorphism unless phi is an algebra endomorphism.
bool check_endo_lift(const TwistingPair& pair, const Matrix& phi);
/// phi (x) id on the twisted product.
LinearMap lift_endo(const TwistingPair& pair, const Matrix& phi);

/// phi-bar = star o phi o star.
Matrix conjugate_map(const Matrix& phi, const Matrix& star);
/// f o f-bar = id and delta o f-bar = delta-bar + alpha (f-bar - id); for alpha = 0 this is
/// the pair of conditions f f-bar = id, delta f-bar = delta-bar. Throws NotInvolutive.
bool check_involution_lift(const TwistingPair& pair, const Matrix& star);
/// j(a (x) 1) = a* (x) 1, j(a (x) x) = (1 (x) x-bar)(a* (x) 1) on the twisted product.
Matrix involution_lift(const TwistingPair& pair, const Matrix& star);

struct Factorization {
  Algebra A;             // fixed subalgebra B^sigma
  LinearMap inclusion;   // A -> B
  TwistingPair pair;     // induced twisting pair on A (x) l
  LinearMap phi;         // A (x)_tau l -> B, a (x) z -> a . z
};

/// B over k with a right l-action b . eta = b * iota and a semilinear involution sigma.
/// Throws AxiomViolated naming the failing axiom (1: sigma^2 = id, 2: multiplicative,
/// 3: sigma(b . eta) = sigma(b) . eta-bar, 0: iota does not satisfy p).
Factorization factorize_by_conjugation(const Algebra& b, const TwoDim& l, const Vec& iota, const Matrix& sigma);

}  // namespace qdup
