#include "diagq/residue.hpp"

#include "doctest.h"

using namespace diagq;

namespace {

// Independent Jacobi oracle: Euler criterion per prime factor of n.
int slow_jacobi(i64 a, i64 n) {
  int r = 1;
  for (auto [p, e] : factorize(n)) {
    i64 am = ((a % p) + p) % p;
    int leg;
    if (am == 0)
      leg = 0;
    else {
      u64 t = pow_mod((u64)am, (u64)(p - 1) / 2, (u64)p);
      leg = t == 1 ? 1 : -1;
    }
    for (int i = 0; i < e; ++i) r *= leg;
  }
  return r;
}

// Brute 2-adic conic oracle: a x^2 + b y^2 = z^2 has a nontrivial Q_2 point
// iff a primitive Hensel-liftable solution exists mod 2^8.
bool conic_soluble_2adic(i64 a, i64 b) {
  const int M = 8;
  const i64 mod = 1 << M;
  for (i64 x = 0; x < mod; ++x)
    for (i64 y = 0; y < mod; ++y)
      for (i64 z = 0; z < mod; ++z) {
        if ((x | y | z) == 0) continue;
        if (((x & 1) | (y & 1) | (z & 1)) == 0) continue;  // primitive only
        i64 f = ((a % mod) * ((x * x) % mod) + (b % mod) * ((y * y) % mod) - (z * z) % mod) % mod;
        f = ((f % mod) + mod) % mod;
        if (f != 0) continue;
        auto v2 = [](i64 t) {
          if (t == 0) return 62;
          int v = 0;
          while ((t & 1) == 0) {
            t >>= 1;
            ++v;
          }
          return v;
        };
        int t = std::min({v2(2 * a * x), v2(2 * b * y), v2(2 * z)});
        if (M > 2 * t) return true;
      }
  return false;
}

}  // namespace

TEST_CASE("jacobi: pinned examples") {
  CHECK(jacobi(1, 21) == 1);
  CHECK(jacobi(2, 15) == slow_jacobi(2, 15));
  CHECK(jacobi(2, 15) == 1);
  CHECK(jacobi(6, 15) == 0);
  CHECK_THROWS_AS(jacobi(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(jacobi(3, -5), std::invalid_argument);
}

TEST_CASE("jacobi: agrees with Euler-criterion oracle and is multiplicative") {
  SplitMix64 rng(12345);
  for (int it = 0; it < 2000; ++it) {
    i64 a = (i64)(rng.next() % 4001) - 2000;
    i64 n = 2 * (i64)(rng.next() % 500) + 1;
    CHECK(jacobi(a, n) == slow_jacobi(a, n));
  }
  for (int it = 0; it < 1000; ++it) {
    i64 a = (i64)(rng.next() % 2001) - 1000;
    i64 b = (i64)(rng.next() % 2001) - 1000;
    i64 n = 2 * (i64)(rng.next() % 200) + 1;
    i64 m = 2 * (i64)(rng.next() % 200) + 1;
    CHECK(jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n));
    CHECK(jacobi(a, n * m) == jacobi(a, n) * jacobi(a, m));
  }
}

TEST_CASE("gaussian: canonical associate is unique and idempotent") {
  SplitMix64 rng(7);
  for (int it = 0; it < 500; ++it) {
    GaussianInt g{(i64)(rng.next() % 41) - 20, (i64)(rng.next() % 41) - 20};
    if (g.is_zero()) continue;
    GaussianInt c = g.canonical();
    CHECK(c.re > 0);
    CHECK(c.im >= 0);
    CHECK(c.canonical() == c);
    CHECK(c.norm() == g.norm());
    // exactly one of the four associates is canonical
    int count = 0;
    GaussianInt h = g;
    for (int t = 0; t < 4; ++t) {
      if (h.re > 0 && h.im >= 0) ++count;
      h = GaussianInt{-h.im, h.re};
    }
    CHECK(count == 1);
  }
}

TEST_CASE("gaussian: norm is multiplicative") {
  SplitMix64 rng(8);
  for (int it = 0; it < 200; ++it) {
    GaussianInt g{(i64)(rng.next() % 201) - 100, (i64)(rng.next() % 201) - 100};
    GaussianInt h{(i64)(rng.next() % 201) - 100, (i64)(rng.next() % 201) - 100};
    CHECK((g * h).norm() == g.norm() * h.norm());
  }
}

TEST_CASE("quartic_symbol: pinned examples") {
  // (1 / m) = 1 for any odd m
  CHECK(quartic_symbol(1, {3, 2}).is_one());
  CHECK(quartic_symbol(1, {7, 0}).is_one());
  // in Z[i]/(2+i) = F_5 with i = 3: 2 = i^3, so (2 / 2+i) = -i
  CHECK(quartic_symbol(2, {2, 1}) == QuarticValue::root(3));
  // 5 = norm(2+i)
  CHECK(quartic_symbol(5, {2, 1}).zero);
  CHECK_THROWS_AS(quartic_symbol(3, GaussianInt{1, 1}), std::invalid_argument);
}

TEST_CASE("quartic_symbol: multiplicative in both arguments") {
  SplitMix64 rng(99);
  std::vector<GaussianInt> odd;
  for (i64 re = -9; re <= 9; ++re)
    for (i64 im = -9; im <= 9; ++im) {
      GaussianInt g{re, im};
      if (!g.is_zero() && g.is_odd()) odd.push_back(g);
    }
  for (int it = 0; it < 500; ++it) {
    i64 a = (i64)(rng.next() % 201) - 100;
    i64 b = (i64)(rng.next() % 201) - 100;
    GaussianInt m = odd[rng.next() % odd.size()];
    GaussianInt m2 = odd[rng.next() % odd.size()];
    CHECK(quartic_symbol(a * b, m) == quartic_symbol(a, m) * quartic_symbol(b, m));
    CHECK(quartic_symbol(a, m * m2) == quartic_symbol(a, m) * quartic_symbol(a, m2));
  }
}

TEST_CASE("quartic_symbol: reciprocity consistency jacobi(n, N(m)) = (n^2/m)_4") {
  SplitMix64 rng(2024);
  int done = 0;
  while (done < 1000) {
    i64 n = (i64)(rng.next() % 400) + 1;
    GaussianInt m{(i64)(rng.next() % 61) - 30, (i64)(rng.next() % 61) - 30};
    if (m.is_zero() || !m.is_odd()) continue;
    ++done;
    i64 nm = (i64)m.norm();
    QuarticValue q = quartic_symbol(n * n, m);
    int j = jacobi(n, nm);
    if (j == 0)
      CHECK(q.zero);
    else
      CHECK(q == QuarticValue::root(j == 1 ? 0 : 2));
  }
}

TEST_CASE("hilbert: pinned examples") {
  CHECK(hilbert(1, -7, Place::finite(3)) == 0);  // left slot a square
  CHECK(hilbert(-1, -1, Place::real()) == 1);
  CHECK(hilbert(-1, -1, Place::finite(2)) == 1);
  CHECK(hilbert(-1, -1, Place::finite(5)) == 0);
}

TEST_CASE("hilbert at 2: matches the brute conic oracle") {
  // representatives of all square classes of Q_2
  std::vector<i64> reps{1, -1, 2, -2, 5, -5, 10, -10};
  for (i64 a : reps)
    for (i64 b : reps) {
      bool sol = conic_soluble_2adic(a, b);
      CHECK(hilbert(a, b, Place::finite(2)) == (sol ? 0 : 1));
    }
}

TEST_CASE("hilbert: symmetry, bilinearity, product formula") {
  SplitMix64 rng(31337);
  int done = 0;
  while (done < 1000) {
    i64 a = (i64)(rng.next() % 601) - 300;
    i64 b = (i64)(rng.next() % 601) - 300;
    i64 c = (i64)(rng.next() % 601) - 300;
    if (a == 0 || b == 0 || c == 0) continue;
    ++done;
    for (Place v : {Place::real(), Place::finite(2), Place::finite(3), Place::finite(5),
                    Place::finite(7), Place::finite(13)}) {
      CHECK(hilbert(a, b, v) == hilbert(b, a, v));
      CHECK(hilbert(a * c, b, v) == ((hilbert(a, b, v) + hilbert(c, b, v)) & 1));
    }
    int sum = 0;
    for (Place v : hilbert_support(a, b)) sum ^= hilbert(a, b, v);
    CHECK(sum == 0);
  }
}

TEST_CASE("power_class: pinned examples") {
  CHECK(power_class({Rat(16), Place::finite(5), 4}));
  CHECK(power_class({Rat(-1, 4), Place::finite(5), 4}));
  CHECK(power_class({Rat(2), Place::finite(7), 2}));
  CHECK_FALSE(power_class({Rat(5), Place::finite(5), 2}));
  CHECK_FALSE(power_class({Rat(-3), Place::real(), 2}));
}

TEST_CASE("power_class: fourth power implies square") {
  SplitMix64 rng(555);
  for (int it = 0; it < 2000; ++it) {
    i64 n = (i64)(rng.next() % 2000) - 1000;
    i64 d = (i64)(rng.next() % 100) + 1;
    if (n == 0) continue;
    Place v = it % 3 == 0 ? Place::real() : Place::finite(std::array<i64, 4>{2, 3, 5, 13}[rng.next() % 4]);
    if (is_kth_power_local(Rat(n, d), v, 4)) CHECK(is_kth_power_local(Rat(n, d), v, 2));
  }
}

TEST_CASE("power_class: agrees with explicit k-th powers") {
  SplitMix64 rng(777);
  for (i64 p : {2, 3, 5, 7, 11}) {
    for (int it = 0; it < 300; ++it) {
      i64 x = (i64)(rng.next() % 500) + 1;
      CHECK(is_kth_power_local(Rat(x * x), Place::finite(p), 2));
      CHECK(is_kth_power_local(Rat(x * x * x * x), Place::finite(p), 4));
    }
  }
}
