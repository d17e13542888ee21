#pragma once

#include "diagq/padic.hpp"
#include "diagq/residue.hpp"

namespace diagq {

enum class ThetaClass { square, minus_square, neither };

inline const char* theta_class_name(ThetaClass c) {
  switch (c) {
    case ThetaClass::square: return "square";
    case ThetaClass::minus_square: return "minus-square";
    default: return "neither";
  }
}

// A diagonal quartic surface a0 X0^4 + a1 X1^4 + a2 X2^4 + a3 X3^4 = 0.
struct SurfaceTuple {
  std::array<i64, 4> a{};

  SurfaceTuple() = default;
  explicit SurfaceTuple(std::array<i64, 4> c) : a(c) {
    for (i64 v : a)
      if (v == 0) throw std::invalid_argument("SurfaceTuple: zero coefficient");
  }
  SurfaceTuple(i64 a0, i64 a1, i64 a2, i64 a3) : SurfaceTuple(std::array<i64, 4>{a0, a1, a2, a3}) {}

  i128 theta() const { return (i128)a[0] * a[1] * (i128)((i128)a[2] * a[3]); }

  // Square class of theta, combined from the coefficients (theta itself can
  // exceed 64 bits).
  SquareClass theta_square_class() const;
  ThetaClass theta_class() const {
    SquareClass c = theta_square_class();
    if (c.kernel == 1) return c.sign > 0 ? ThetaClass::square : ThetaClass::minus_square;
    return ThetaClass::neither;
  }

  // Odd primes dividing theta, ascending.
  std::vector<i64> odd_theta_primes() const;

  std::string str() const {
    return "(" + std::to_string(a[0]) + "," + std::to_string(a[1]) + "," + std::to_string(a[2]) +
           "," + std::to_string(a[3]) + ")";
  }
};

// Equivalent tuple with p-adic valuations in {0,..,3} and minimum 0:
// valuations reduced mod 4 (fourth-power scalings), then the common p-power
// removed. All local predicates are invariant under this.
SurfaceTuple equivalent_reduce(const SurfaceTuple& t, i64 p);

struct SolubilityCertificate {
  Place place;
  bool soluble = false;
  std::string rule;                       // which criterion fired
  std::optional<std::array<i64, 4>> witness;  // mod p^level when finite
  int level = 0;
};

// The valuation-class unit-subset criterion at an odd prime, on a p-reduced
// tuple. Exposed for the census fast path.
struct UnitSubsetResult {
  bool soluble = false;
  int size = 0;  // 2: fourth-power pair, 3/4: equal-valuation subsets
  std::array<i64, 4> witness{};
};
UnitSubsetResult unit_subset_soluble(const SurfaceTuple& reduced, i64 p);

struct LocalOptions {
  PadicOptions padic{};
  bool force_generic = false;  // bypass the closed-form/unit-subset fast paths
};

// Decide X(Q_v) != empty. Odd p uses the valuation-class unit-subset
// criterion (the two conditions of the local-solubility lemma, made exact at
// every odd prime); p = 2 and the generic-oracle mode run the residue-class
// search with Hensel lifting.
SolubilityCertificate local_soluble(const SurfaceTuple& t, Place v, const LocalOptions& opt = {});

struct EverywhereSolubility {
  bool soluble = false;
  std::vector<SolubilityCertificate> certificates;
};

// Conjunction over the decisive places: the real place, 2, odd p <= 33 and
// odd p | theta. Remaining places are soluble by the lemma (p > 33, good
// reduction patterns).
EverywhereSolubility everywhere_soluble(const SurfaceTuple& t, const LocalOptions& opt = {});

// Places that can carry a nonzero invariant of the normalized algebra:
// real, 2, and odd p | theta.
std::vector<Place> relevant_places(const SurfaceTuple& t);

// Places that must be tested for solubility (adds odd p <= 33).
std::vector<Place> solubility_places(const SurfaceTuple& t);

}  // namespace diagq
