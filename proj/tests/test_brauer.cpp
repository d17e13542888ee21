#include "diagq/brauer.hpp"

#include "doctest.h"

using namespace diagq;

namespace {

SurfaceTuple random_tuple(SplitMix64& rng, i64 bound) {
  std::array<i64, 4> a{};
  for (auto& c : a) {
    do {
      c = (i64)(rng.next() % (2 * (u64)bound + 1)) - bound;
    } while (c == 0);
  }
  return SurfaceTuple(a);
}

// brute search for a projective rational point of height <= h
bool has_rational_point(const SurfaceTuple& t, i64 h) {
  for (i64 x0 = 0; x0 <= h; ++x0)
    for (i64 x1 = -h; x1 <= h; ++x1)
      for (i64 x2 = -h; x2 <= h; ++x2)
        for (i64 x3 = -h; x3 <= h; ++x3) {
          if ((x0 | x1 | x2 | x3) == 0) continue;
          i128 s = (i128)t.a[0] * x0 * x0 * x0 * x0 + (i128)t.a[1] * x1 * x1 * x1 * x1 +
                   (i128)t.a[2] * x2 * x2 * x2 * x2 + (i128)t.a[3] * x3 * x3 * x3 * x3;
          if (s == 0) return true;
        }
  return false;
}

}  // namespace

TEST_CASE("quadric point: worked example and determinism") {
  SurfaceTuple t(1, -16, 7, 7);
  auto q = find_quadric_point(t);
  REQUIRE(q.has_value());
  CHECK(q->y == std::array<i64, 4>{4, 1, 0, 0});

  auto q2 = find_quadric_point(SurfaceTuple(1, -1, 5, 11));
  REQUIRE(q2.has_value());
  CHECK(q2->y == std::array<i64, 4>{1, 1, 0, 0});

  // exhaustive-search oracle: any found point has small height here
  auto q3 = find_quadric_point(SurfaceTuple(1, -2, -7, 14));
  REQUIRE(q3.has_value());
  i64 h = 0;
  i128 s = 0;
  for (int i = 0; i < 4; ++i) {
    h = std::max(h, std::abs(q3->y[i]));
    s += (i128)q3->y[i] * q3->y[i] * std::array<i64, 4>{1, -2, -7, 14}[i];
  }
  CHECK(s == 0);
  CHECK(h <= 10);
}

TEST_CASE("normalized algebra: worked example, gcd clearing") {
  SurfaceTuple t(1, -16, 7, 7);
  auto alg = normalized_algebra(t, QuadricPoint{{4, 1, 0, 0}});
  CHECK(alg.f == std::array<i64, 4>{1, -4, 0, 0});

  auto alg2 = normalized_algebra(SurfaceTuple(1, -1, 3, 5), QuadricPoint{{1, 1, 0, 0}});
  CHECK(alg2.f == std::array<i64, 4>{1, -1, 0, 0});

  // scaling the point does not change f
  auto alg3 = normalized_algebra(t, QuadricPoint{{12, 3, 0, 0}});
  CHECK(alg3.f == alg.f);
}

TEST_CASE("worked example: profile is constant everywhere, no obstruction") {
  SurfaceTuple t(1, -16, 7, 7);
  auto res = decide_A_obstruction(t);
  CHECK(res.verdict == Verdict::no_obstruction);
  CHECK(res.nowhere_prolific);
  CHECK(res.profile.everywhere_soluble);
  CHECK(res.profile.all_constant);
  CHECK(res.profile.sum_halves == 0);
  auto canon = res.profile.canonical_values();
  for (int v : canon) CHECK(v == 0);
  // theta = -784: a0 a1 = -16 is -1 times a square
  CHECK(res.generator_caveat);
}

TEST_CASE("pinned fast-invariant cases for (1,-16,7,7)") {
  SurfaceTuple t(1, -16, 7, 7);
  auto q = find_quadric_point(t);
  auto alg = normalized_algebra(t, *q);
  auto st3 = fast_invariant(t, alg, 3);
  REQUIRE(st3.has_value());
  CHECK(st3->kind == LocalKind::constant);
  CHECK(st3->value == 0);
  auto st7 = fast_invariant(t, alg, 7);
  REQUIRE(st7.has_value());
  CHECK(st7->kind == LocalKind::constant);
}

TEST_CASE("prolific detection at p = 1 mod 4") {
  SurfaceTuple t(1, -2, 5, 20);
  auto q = find_quadric_point(t);
  REQUIRE(q.has_value());
  auto alg = normalized_algebra(t, *q);
  auto st = fast_invariant(t, alg, 5);
  REQUIRE(st.has_value());
  CHECK(st->kind == LocalKind::non_constant);
  auto ex = exhaustive_invariant(t, alg, Place::finite(5));
  CHECK(ex.kind == LocalKind::non_constant);
}

TEST_CASE("theta square shortcut") {
  SurfaceTuple t(1, -1, 1, -1);
  auto res = decide_A_obstruction(t);
  CHECK(res.verdict == Verdict::no_obstruction);
  CHECK(res.profile.theta_square_shortcut);
  CHECK(res.profile.all_constant);
  CHECK(res.profile.sum_halves == 0);
}

TEST_CASE("rational point forces invariant sum zero") {
  // tuples with an obvious rational point: sum of constant raw invariants
  // must vanish (product formula sanity)
  for (auto a : std::vector<std::array<i64, 4>>{{1, -16, 7, 7},
                                                {1, 1, 1, -3},
                                                {2, 3, -5, 7},
                                                {1, -2, 1, 5},
                                                {3, -3, 11, -11}}) {
    SurfaceTuple t(a);
    if (!has_rational_point(t, 4)) continue;
    auto res = decide_A_obstruction(t);
    CHECK(res.verdict != Verdict::obstruction);
  }
}

TEST_CASE("choice independence: distinct quadric points give one verdict") {
  SplitMix64 rng(20240817);
  int done = 0;
  while (done < 20) {
    SurfaceTuple t = random_tuple(rng, 20);
    if (!everywhere_soluble(t).soluble) continue;
    if (t.theta_class() == ThetaClass::square) continue;
    auto q1 = find_quadric_point(t, 400);
    if (!q1) continue;
    BrauerOptions opt;
    auto base = decide_A_obstruction(t, opt);
    if (base.verdict == Verdict::inconclusive) continue;
    ++done;
    // two more points: sign flip and a fresh search excluding the first
    NormalizedAlgebra alg1 = normalized_algebra(t, *q1);
    std::vector<QuadricPoint> others;
    QuadricPoint flip = *q1;
    for (int i = 0; i < 4; ++i)
      if (flip.y[i] != 0) {
        flip.y[i] = -flip.y[i];
        break;
      }
    others.push_back(flip);
    for (i64 h = 1; h <= 40 && others.size() < 3; ++h)
      for (i64 y0 = -h; y0 <= h && others.size() < 3; ++y0)
        for (i64 y1 = -h; y1 <= h && others.size() < 3; ++y1)
          for (i64 y2 = -h; y2 <= h && others.size() < 3; ++y2) {
            i128 rest = (i128)t.a[0] * y0 * y0 + (i128)t.a[1] * y1 * y1 + (i128)t.a[2] * y2 * y2;
            if (rest % t.a[3] != 0) continue;
            auto y3 = exact_sqrt(-rest / t.a[3]);
            if (!y3) continue;
            QuadricPoint q{{y0, y1, y2, *y3}};
            if (q.y == std::array<i64, 4>{0, 0, 0, 0} || q.y == q1->y) continue;
            others.push_back(q);
          }
    for (const auto& q : others) {
      // evaluate the full profile with this specific point
      NormalizedAlgebra alg = normalized_algebra(t, q);
      int sum = 0;
      bool allc = true, bad = false;
      for (Place v : relevant_places(t)) {
        LocalStatus st = exhaustive_invariant(t, alg, v, opt);
        if (st.kind == LocalKind::inconclusive) {
          bad = true;
          break;
        }
        if (st.kind != LocalKind::constant) {
          allc = false;
          break;
        }
        sum ^= st.value;
      }
      if (bad) continue;
      bool obstructed = allc && (sum & 1);
      CHECK(obstructed == (base.verdict == Verdict::obstruction));
      CHECK(allc == base.nowhere_prolific);
    }
  }
}

TEST_CASE("fast and exhaustive invariants agree where committed") {
  SplitMix64 rng(424242);
  BrauerOptions opt;
  int done = 0;
  while (done < 120) {
    // random reduced tuple with a designated small odd prime dividing theta
    i64 p = std::array<i64, 6>{3, 5, 7, 11, 13, 17}[rng.next() % 6];
    std::array<i64, 4> a{};
    for (int i = 0; i < 4; ++i) {
      i64 u = (i64)(rng.next() % 15) + 1;
      if (rng.next() & 1) u = -u;
      while (u % p == 0) ++u;
      int e = (int)(rng.next() % 4) * (int)(rng.next() % 2);
      a[i] = u * ipow(p, e);
    }
    SurfaceTuple t(a);
    if (!local_soluble(t, Place::finite(p)).soluble) continue;
    if (!everywhere_soluble(t).soluble) continue;
    auto q = find_quadric_point(t, 600);
    if (!q) continue;
    auto alg = normalized_algebra(t, *q);
    auto fast = fast_invariant(t, alg, p);
    if (!fast) continue;
    ++done;
    auto ex = exhaustive_invariant(t, alg, Place::finite(p), opt);
    if (ex.kind == LocalKind::inconclusive) continue;
    CHECK(fast->kind == ex.kind);
    if (fast->kind == LocalKind::constant && fast->value_known) {
      REQUIRE(ex.value_known);
      CHECK(fast->value == ex.value);
    }
  }
}

TEST_CASE("twist rule: the invariant moves by the Jacobi symbol") {
  SurfaceTuple t(1, -16, 7, 7);
  // u = (1,1,1,1): unchanged
  auto r1 = twist_invariant_check(t, 7, {1, 1, 1, 1});
  CHECK(r1.ok);
  CHECK(r1.lhs == r1.rhs);
  // 3 is a quadratic nonresidue mod 7: the invariant flips
  auto r2 = twist_invariant_check(t, 7, {3, 1, 1, 1});
  CHECK(r2.ok);
  // 2 is a residue mod 7: unchanged
  auto r3 = twist_invariant_check(t, 7, {2, 1, 1, 1});
  CHECK(r3.ok);

  SplitMix64 rng(777);
  int done = 0;
  while (done < 25) {
    i64 p = std::array<i64, 3>{7, 11, 19}[rng.next() % 3];
    std::array<i64, 4> a{};
    for (int i = 0; i < 4; ++i) {
      i64 u = (i64)(rng.next() % 12) + 1;
      while (u % p == 0) ++u;
      if (rng.next() & 1) u = -u;
      a[i] = i < 2 ? u : u * p;
    }
    SurfaceTuple s(a);
    if (theta_is_local_square(s, Place::finite(p))) continue;
    if (!local_soluble(s, Place::finite(p)).soluble) continue;
    if (!find_quadric_point(s, 600)) continue;
    std::array<i64, 4> u{};
    for (auto& x : u) {
      x = (i64)(rng.next() % (u64)(p - 1)) + 1;
    }
    ++done;
    auto r = twist_invariant_check(s, p, u);
    CHECK(r.ok);
  }
}

TEST_CASE("p-normalization stays under unit scalings") {
  // scaling one coefficient by the square of a p-unit keeps the recomputed
  // algebra p-normalized (some f coefficient stays a p-unit)
  SplitMix64 rng(31337);
  int done = 0;
  while (done < 40) {
    SurfaceTuple t = random_tuple(rng, 15);
    i64 p = std::array<i64, 3>{3, 7, 11}[rng.next() % 3];
    if (!everywhere_soluble(t).soluble) continue;
    auto q = find_quadric_point(t, 400);
    if (!q) continue;
    auto alg = normalized_algebra(t, *q);
    bool norm1 = false;
    for (i64 c : alg.f) norm1 |= (c % p != 0);
    i64 un = (i64)(rng.next() % 8) + 2;
    while (un % p == 0) ++un;
    int slot = (int)(rng.next() % 4);
    std::array<i64, 4> b = t.a;
    b[slot] *= un * un;
    std::array<i64, 4> y2 = q->y;
    // the scaled quadric has the point y / u at the scaled slot: clear denominators
    for (int i = 0; i < 4; ++i) y2[i] *= (i == slot ? 1 : un);
    SurfaceTuple t2(b);
    auto alg2 = normalized_algebra(t2, QuadricPoint{y2});
    bool norm2 = false;
    for (i64 c : alg2.f) norm2 |= (c % p != 0);
    ++done;
    CHECK(norm1);
    CHECK(norm2);
  }
}
