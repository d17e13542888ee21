#include "diagq/local.hpp"

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

}  // namespace

TEST_CASE("theta class partitions") {
  CHECK(SurfaceTuple(1, 1, 1, 1).theta_class() == ThetaClass::square);
  CHECK(SurfaceTuple(1, -16, 7, 7).theta_class() == ThetaClass::minus_square);
  CHECK(SurfaceTuple(1, -2, 5, 20).theta_class() == ThetaClass::neither);
  CHECK(SurfaceTuple(2, -32, 14, 14).theta_class() == ThetaClass::minus_square);
}

TEST_CASE("equivalent_reduce: pinned examples") {
  i64 p = 3;
  SurfaceTuple t1(81, 1, 1, 1);  // p^4 absorbed
  auto r1 = equivalent_reduce(t1, p);
  CHECK(r1.a == std::array<i64, 4>{1, 1, 1, 1});

  SurfaceTuple t2(5, 5, 5, 5);
  auto r2 = equivalent_reduce(t2, 5);
  CHECK(r2.a == std::array<i64, 4>{1, 1, 1, 1});

  SurfaceTuple t3(ipow(3, 5), ipow(3, 2), 1, 1);
  auto r3 = equivalent_reduce(t3, 3);
  std::array<int, 4> v{};
  for (int i = 0; i < 4; ++i) v[i] = r3.a[i] == 1 ? 0 : vp(r3.a[i], 3);
  CHECK(v == std::array<int, 4>{1, 2, 0, 0});
}

TEST_CASE("local_soluble: pinned examples") {
  SurfaceTuple ex(1, -16, 7, 7);  // has the rational point [2:1:0:0]
  for (Place v : solubility_places(ex)) CHECK(local_soluble(ex, v).soluble);

  CHECK_FALSE(local_soluble(SurfaceTuple(1, 1, 1, 1), Place::real()).soluble);
  CHECK(local_soluble(SurfaceTuple(1, -2, 5, 20), Place::finite(5)).soluble);
  CHECK(local_soluble(SurfaceTuple(1, -2, 5, 20), Place::finite(5)).rule == "fourth-power-pair");
}

TEST_CASE("everywhere_soluble: pinned examples") {
  CHECK(everywhere_soluble(SurfaceTuple(1, -16, 7, 7)).soluble);
  CHECK_FALSE(everywhere_soluble(SurfaceTuple(1, 1, 1, 1)).soluble);
  CHECK(everywhere_soluble(SurfaceTuple(1, -1, 1, -1)).soluble);
  // insoluble at 5 although 5 does not divide theta
  CHECK_FALSE(everywhere_soluble(SurfaceTuple(1, 1, 1, -4)).soluble);
}

TEST_CASE("unit-subset criterion agrees with the generic Hensel search") {
  SplitMix64 rng(4242);
  LocalOptions generic;
  generic.force_generic = true;
  int done = 0;
  while (done < 400) {
    SurfaceTuple t = random_tuple(rng, 40);
    i64 p = std::array<i64, 6>{3, 5, 7, 11, 13, 17}[rng.next() % 6];
    ++done;
    auto fast = local_soluble(t, Place::finite(p));
    auto slow = local_soluble(t, Place::finite(p), generic);
    CHECK(fast.soluble == slow.soluble);
  }
}

TEST_CASE("closed-form criterion vs exhaustive search for 33 < p <= 200") {
  SplitMix64 rng(1001);
  LocalOptions generic;
  generic.force_generic = true;
  auto ps = primes_up_to(200);
  int done = 0;
  while (done < 500) {
    i64 p = ps[rng.next() % ps.size()];
    if (p <= 33) continue;
    // random reduced tuple with p | theta
    std::array<i64, 4> a{};
    int k = (int)(rng.next() % 4);
    for (int i = 0; i < 4; ++i) {
      i64 u = (i64)(rng.next() % 60) + 1;
      if (rng.next() & 1) u = -u;
      int e = i == k ? 1 + (int)(rng.next() % 3) : (int)(rng.next() % 2);
      a[i] = u * ipow(p, e);
    }
    SurfaceTuple t(a);
    ++done;
    auto fast = local_soluble(t, Place::finite(p));
    auto slow = local_soluble(t, Place::finite(p), generic);
    CHECK(fast.soluble == slow.soluble);
  }
}

TEST_CASE("equivalence invariance of local solubility") {
  SplitMix64 rng(90210);
  int done = 0;
  while (done < 300) {
    SurfaceTuple t = random_tuple(rng, 30);
    i64 p = std::array<i64, 5>{2, 3, 5, 7, 11}[rng.next() % 5];
    // random permutation and fourth-power / common-factor scaling
    std::array<i64, 4> b = t.a;
    std::swap(b[rng.next() % 4], b[rng.next() % 4]);
    int which = (int)(rng.next() % 4);
    i128 scaled = (i128)b[which] * ipow(p, 4);
    if (scaled > INT64_MAX || scaled < INT64_MIN) continue;
    b[which] = (i64)scaled;
    ++done;
    SurfaceTuple t2(b);
    for (Place v : {Place::finite(p), Place::real(), Place::finite(2)}) {
      CHECK(local_soluble(t, v).soluble == local_soluble(t2, v).soluble);
      CHECK(local_soluble(equivalent_reduce(t, p), v).soluble ==
            local_soluble(equivalent_reduce(t2, p), v).soluble);
    }
  }
}

TEST_CASE("tuples with a small rational point are everywhere soluble") {
  SplitMix64 rng(31415);
  int done = 0;
  while (done < 60) {
    // build a tuple with a forced rational point of height <= 4
    std::array<i64, 4> x{};
    for (auto& c : x) c = (i64)(rng.next() % 5);
    if (x == std::array<i64, 4>{0, 0, 0, 0}) continue;
    std::array<i64, 4> a{};
    i128 acc = 0;
    for (int i = 0; i < 3; ++i) {
      do {
        a[i] = (i64)(rng.next() % 21) - 10;
      } while (a[i] == 0);
      acc += (i128)a[i] * x[i] * x[i] * x[i] * x[i];
    }
    i128 x34 = (i128)x[3] * x[3] * x[3] * x[3];
    if (x34 == 0 || acc % x34 != 0) continue;
    i128 a3 = -acc / x34;
    if (a3 == 0 || a3 > 100 || a3 < -100) continue;
    a[3] = (i64)a3;
    ++done;
    CHECK(everywhere_soluble(SurfaceTuple(a)).soluble);
  }
}
