#pragma once

#include "diagq/brauer.hpp"

namespace diagq {

// The prime bound of the coefficient set S: only primes beyond it can enter
// the u/v/w parts of the decomposition.
inline constexpr i64 kSmallPrimeBound = 16897;

// index order for the six coordinate pairs {k,l}
inline constexpr std::array<std::pair<int, int>, 6> kPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline int pair_index(int k, int l) {
  for (int i = 0; i < 6; ++i)
    if ((kPairs[i].first == k && kPairs[i].second == l) ||
        (kPairs[i].first == l && kPairs[i].second == k))
      return i;
  throw std::logic_error("pair_index");
}

// The unique factorization a_k = A_k u_k^2 prod_{l != k} v_{kl} w_{kl}:
// per prime p beyond the small-prime bound, a square pattern routes to u, a
// cross-pair squarefree pattern to v or w by the square class of theta at p,
// and everything else (including all small primes) stays in A.
struct FamilyDecomposition {
  std::array<i64, 4> A{};
  std::array<i64, 4> M{};  // residue data u_k^2 prod v w: a representative of
                           // the coset mod fourth powers at the bad modulus
  std::array<i64, 4> u{};
  std::array<i64, 6> v{}, w{}, wL{}, wR{};
  bool A_in_Phi = true;                       // every A-prime small or cubed into theta_A
  std::vector<i64> insoluble_w_primes;        // wL/wR split flagged at these p
};

FamilyDecomposition decompose(const SurfaceTuple& t);
SurfaceTuple reconstruct(const FamilyDecomposition& d);

enum class RowMode { all, soluble, obstructed };

struct CensusOptions {
  i64 tmax = 10;
  int workers = 1;
  RowMode rows = RowMode::all;
  bool fast_paths = true;   // disable for the pure-exhaustive oracle run
  bool coprime_only = false;  // count only gcd(a0..a3) = 1 tuples
  std::string csv_path;     // empty: no CSV
  std::string json_path;    // empty: no JSON
  u64 seed = 0;             // echoed into the report; the census itself is exact
  BrauerOptions brauer{};
};

struct ClassCounts {
  i64 tuples = 0;
  i64 soluble = 0;
  i64 nowhere_prolific = 0;
  i64 obstructed = 0;
  i64 generator_caveat = 0;
  i64 inconclusive = 0;

  ClassCounts& operator+=(const ClassCounts& o) {
    tuples += o.tuples;
    soluble += o.soluble;
    nowhere_prolific += o.nowhere_prolific;
    obstructed += o.obstructed;
    generator_caveat += o.generator_caveat;
    inconclusive += o.inconclusive;
    return *this;
  }
};

struct CensusReport {
  i64 tmax = 0;
  std::array<ClassCounts, 3> by_class{};  // indexed by ThetaClass
  std::vector<std::array<ClassCounts, 3>> series;  // cumulative by height 1..T
  i64 inconclusive_real = 0;
  double seconds = 0;

  ClassCounts totals() const {
    ClassCounts c;
    for (auto& x : by_class) c += x;
    return c;
  }
};

CensusReport census_run(const CensusOptions& opt);

// The 50% law harness: a family with A, v, w fixed (w split into wL/wR) and
// u ranging over an admissible box. Every member's obstruction verdict must
// match the Jacobi-product criterion calibrated on the first member.
struct FamilySpec {
  std::array<i64, 4> A{};
  std::array<i64, 6> v{}, wL{}, wR{};
  std::array<i64, 6> w() const {
    std::array<i64, 6> out{};
    for (int i = 0; i < 6; ++i) out[i] = wL[i] * wR[i];
    return out;
  }
  SurfaceTuple member(const std::array<i64, 4>& u) const;
};

struct FamilyCheckResult {
  i64 members = 0;
  i64 matches = 0;
  i64 obstructed = 0;
  int delta = 0;  // criterion calibration: +-1 encoded as 0/1 (jacobi value -1 -> 1)
  double match_fraction() const { return members ? (double)matches / members : 0.0; }
  double obstructed_fraction() const { return members ? (double)obstructed / members : 0.0; }
};

FamilyCheckResult family_fifty_percent_check(const FamilySpec& fam, i64 u_box, i64 min_members,
                                             const BrauerOptions& opt = {});

// Least squares of log(count / T^2) against log log T.
struct ExponentFit {
  double slope = 0;
  double intercept = 0;
  double max_residual = 0;
};
ExponentFit fit_log_exponent(const std::vector<std::pair<double, double>>& series);

}  // namespace diagq
