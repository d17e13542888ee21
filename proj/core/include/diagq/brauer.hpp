#pragma once

#include "diagq/local.hpp"

namespace diagq {

// Rational point on the auxiliary quadric a0 Y0^2 + .. + a3 Y3^2 = 0.
struct QuadricPoint {
  std::array<i64, 4> y{};
  std::string str() const {
    return "[" + std::to_string(y[0]) + ":" + std::to_string(y[1]) + ":" + std::to_string(y[2]) +
           ":" + std::to_string(y[3]) + "]";
  }
};

// Deterministic search for a primitive quadric point. Search order: pair
// supports (i,j) ascending with -a_i a_j a perfect square, then ternary
// supports by ascending height, then the full form by ascending height with
// the last coordinate solved by exact square root.
std::optional<QuadricPoint> find_quadric_point(const SurfaceTuple& t, i64 height_budget = 4000);

// The tangent-plane data of the algebra: f = sum y_i a_i Y_i cleared to
// coprime integers, first nonzero coefficient positive.
struct NormalizedAlgebra {
  std::array<i64, 4> f{};
  QuadricPoint point;
};
NormalizedAlgebra normalized_algebra(const SurfaceTuple& t, const QuadricPoint& q);

enum class LocalKind {
  empty,          // no local point
  constant,       // invariant constant; value may or may not be pinned
  non_constant,   // both values attained (prolific direction)
  inconclusive,   // real sampling or p-adic budget could not resolve
  skipped,        // not evaluated: an earlier place already settled the verdict
};

struct LocalStatus {
  LocalKind kind = LocalKind::inconclusive;
  bool value_known = false;
  int value = 0;  // in halves: 0 or 1, for the fixed global representative
  std::string rule;
};

struct BrauerOptions {
  LocalOptions local{};
  i64 quadric_budget = 4000;
  int real_samples = 10000;
  int real_refine_rounds = 3;
  bool force_exhaustive = false;  // ignore the closed-form invariant rules
  bool early_stop = false;        // stop evaluating places once one is prolific
  bool assume_everywhere_soluble = false;  // caller has already checked
};

// Closed-form local invariant rules at an odd prime (the "at most one
// coefficient" and "two coefficients" lemmas). Returns nullopt when no rule
// applies; a committed constant may still delegate its value.
std::optional<LocalStatus> fast_invariant(const SurfaceTuple& t, const NormalizedAlgebra& alg,
                                          i64 p);

// The classification half of the rules (no tangent-plane data needed); the
// input must be reduced at p.
std::optional<LocalStatus> fast_classify(const SurfaceTuple& reduced, i64 p);

// Residue-class evaluator: the attained values of inv_v(A(x)) over X(Q_v).
// the sole authority at v = 2 and the fallback everywhere else.
LocalStatus exhaustive_invariant(const SurfaceTuple& t, const NormalizedAlgebra& alg, Place v,
                                 const BrauerOptions& opt = {}, bool first_value_only = false);

struct PlaceStatus {
  Place place;
  LocalStatus status;
  bool shiftable = false;  // theta is a local nonsquare: (c,theta) can move the value
};

struct PlaceInvariantProfile {
  bool everywhere_soluble = false;
  Place failing_place;                  // set when not everywhere soluble
  std::vector<PlaceStatus> places;      // the relevant places: oo, 2, odd p | theta
  bool all_constant = false;
  bool has_inconclusive = false;
  int sum_halves = 0;                   // defined when all constant with known values
  bool theta_square_shortcut = false;
  std::optional<QuadricPoint> point;

  // Display values of the constant places, canonicalized modulo constant
  // algebras (c, theta): zero-sum shifts supported where theta is a local
  // nonsquare. Lexicographically minimal over the place order.
  std::vector<int> canonical_values() const;
};

PlaceInvariantProfile invariant_profile(const SurfaceTuple& t, const BrauerOptions& opt = {});

enum class Verdict { obstruction, no_obstruction, not_everywhere_soluble, inconclusive };

struct ObstructionResult {
  Verdict verdict = Verdict::inconclusive;
  std::string reason;
  bool nowhere_prolific = false;
  bool generator_caveat = false;  // theta square or some a_i a_j in {1,-1,2,-2} mod squares
  PlaceInvariantProfile profile;
};

ObstructionResult decide_A_obstruction(const SurfaceTuple& t, const BrauerOptions& opt = {});

bool has_generator_caveat(const SurfaceTuple& t);

// Local data of theta at v, assembled coefficient-wise.
LocalValue theta_local(const SurfaceTuple& t, i64 p);
bool theta_is_local_square(const SurfaceTuple& t, Place v);

// Hasse-Minkowski isotropy of the auxiliary quadric (discriminant and Hasse
// invariant test at every relevant place).
bool quadric_isotropic(const SurfaceTuple& t);
bool quadric_isotropic_at(const SurfaceTuple& t, Place v);

// Property harness for the invariant twist rule at a prime p = 3 (mod 4)
// dividing exactly two coefficients with theta a local nonsquare:
//   inv_p(A_u(.)) = inv_p(A(.)) + ((u_k u_l / p) - 1) / 4
// with (k, l) the coefficient pair prime to p.
struct TwistReport {
  bool ok = false;
  int lhs = 0, rhs = 0;  // halves
  std::string detail;
};
TwistReport twist_invariant_check(const SurfaceTuple& t, i64 p, const std::array<i64, 4>& u,
                                  const BrauerOptions& opt = {});

}  // namespace diagq
