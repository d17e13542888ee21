#pragma once

#include "diagq/residue.hpp"
#include "diagq/util.hpp"

namespace diagq {

struct PadicOptions {
  int max_digits = 24;        // refinement depth cap
  i64 max_nodes = 2'000'000;  // total class-expansion budget
};

// Local data of a nonzero rational at p: valuation and unit part
// (unit stored mod p for odd p, mod 8 for p = 2).
struct LocalValue {
  int val = 0;
  i64 unit = 1;
};
LocalValue local_value_at(i64 num, i64 den, i64 p);

// Hilbert symbol (g, theta)_p from local data of both arguments; returns 0 or 1 (= 1/2).
int hilbert_from_local(i64 p, int vg, i64 ug, const LocalValue& theta);

// Zero search and invariant evaluation for a diagonal quartic
//   F(x) = a0 x0^4 + a1 x1^4 + a2 x2^4 + a3 x3^4
// over Z_p, on primitive vectors, by residue-class refinement with Hensel
// acceptance. Classes are normalized projectively: the first unit coordinate
// is pinned to 1, so each class tower follows one projective point family.
class PadicEngine {
 public:
  PadicEngine(const std::array<i64, 4>& a, i64 p, PadicOptions opt = {});

  struct Solubility {
    bool soluble = false;
    bool exhausted = false;
    std::array<i64, 4> witness{};  // class representative mod p^level
    int level = 0;
  };
  Solubility solve();

  struct ValueSet {
    bool no_points = false;  // queue dried with no certified class
    bool exhausted = false;  // caps hit before full resolution
    bool attained[2] = {false, false};  // invariant values 0 and 1/2

    bool non_constant() const { return attained[0] && attained[1]; }
    bool constant() const { return attained[0] != attained[1]; }
    int constant_value() const { return attained[1] ? 1 : 0; }
  };
  // Attained values of inv = (G(x), theta)_p over primitive zeros of F,
  // where G(x) = sum f_i x_i^2. Assumes theta not a square in Q_p^x
  // (callers short-circuit that case: the symbol is identically 0).
  // stop_after_first: return as soon as one value is certified (valid when
  // the caller already knows the invariant is constant).
  ValueSet invariant_values(const std::array<i64, 4>& f, const LocalValue& theta,
                            bool stop_after_first = false);

  // Same, with a fallback form f2 whose zero locus is disjoint from that of f,
  // offset by a known constant: (G(x),theta) = (G2(x),theta) + shift on zeros
  // of F. Resolves class towers shrinking onto {G = 0}.
  ValueSet invariant_values_dual(const std::array<i64, 4>& f, const std::array<i64, 4>& f2,
                                 int shift, const LocalValue& theta,
                                 bool stop_after_first = false);

  // The constant offset between the two symbol representations, read off any
  // local point where both forms are nonzero.
  std::optional<int> symbol_shift(const std::array<i64, 4>& f, const std::array<i64, 4>& f2,
                                  const LocalValue& theta);

 private:
  // Rectangular residue class: coordinate i known mod p^(m[i]); the leading
  // unit coordinate j is scaled to x[j] == 1 and never refined.
  struct Node {
    std::array<u64, 4> x;
    std::array<int, 4> m;
    int j;
  };

  std::array<i64, 4> a_;
  i64 p_;
  PadicOptions opt_;
  int kmax_;            // largest k with p^k < 2^62
  std::array<int, 4> va_;
  int v4_, v6_;
  std::vector<u64> pw_;  // p^0 .. p^kmax

  u64 mod_pk(i128 v, int k) const;
  int val_of(u64 r, int k) const;  // v_p of r (< p^k), returns k when r == 0
  u64 eval_form_mod(const std::array<i64, 4>& coef, const std::array<u64, 4>& x, int deg,
                    int k) const;
  int order_of_coord(int i, const Node& n) const;

  struct Analysis {
    bool dead = false;
    int K = 0;            // F known mod p^K on the class
    u64 Fv = 0;           // F mod p^K
    bool liftable = false;        // contains a Z_p zero (Hensel somewhere)
    bool liftable_in_class = false;  // contains a zero inside the class
  };
  Analysis analyze(const Node& n) const;
  int binding_coord(const Node& n) const;
  void extend(const Node& n, int pick, std::vector<Node>& out) const;
  std::vector<Node> level_one() const;
  std::optional<std::pair<int, i64>> pinned_square_data(const Node& n,
                                                        const std::array<i64, 4>& f,
                                                        const std::array<int, 4>& vf,
                                                        int* gorder = nullptr) const;
  ValueSet invariant_values_impl(const std::array<i64, 4>& f, const std::array<i64, 4>* f2,
                                 int shift, const LocalValue& theta, bool stop_after_first);
};

}  // namespace diagq
