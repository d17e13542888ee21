#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace diagq {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

std::string to_string_i128(i128 v);

inline i64 ipow(i64 b, int e) {
  i64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline u64 mul_mod(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

inline u64 pow_mod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Exact integer square root; no floating point rounding traps.
u64 isqrt(u64 n);
bool is_square(i128 n);
// Returns sqrt if n is a perfect square.
std::optional<i64> exact_sqrt(i128 n);

bool is_prime(u64 n);  // deterministic Miller-Rabin for u64
// Full factorization of |n| as (prime, exponent), primes ascending.
std::vector<std::pair<i64, int>> factorize(i64 n);

// Primes up to n inclusive.
std::vector<i64> primes_up_to(i64 n);
// Smallest prime factor table, spf[0]=spf[1]=0.
std::vector<int32_t> spf_table(i64 n);

inline int vp(i64 n, i64 p) {
  assert(n != 0);
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline i64 mod_inverse(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
  while (a1) {
    i64 q = g / a1;
    g -= q * a1;
    std::swap(g, a1);
    x -= q * x1;
    std::swap(x, x1);
  }
  assert(g == 1);
  return ((x % m) + m) % m;
}

// Exact rational on 64-bit numerator/denominator, always normalized with den > 0.
struct Rat {
  i64 num = 0, den = 1;

  Rat() = default;
  Rat(i64 n) : num(n), den(1) {}
  Rat(i64 n, i64 d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i64 g = std::gcd(std::abs(num), den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static Rat from_i128(i128 n, i128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 a = n < 0 ? -n : n, b = d;
    while (b) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    if (a == 0) a = 1;
    n /= a;
    d /= a;
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) throw std::overflow_error("Rat overflow");
    Rat r;
    r.num = (i64)n;
    r.den = (i64)d;
    return r;
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return from_i128((i128)a.num * b.den + (i128)b.num * a.den, (i128)a.den * b.den);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return from_i128((i128)a.num * b.den - (i128)b.num * a.den, (i128)a.den * b.den);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return from_i128((i128)a.num * b.num, (i128)a.den * b.den);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) throw std::domain_error("Rat: divide by zero");
    return from_i128((i128)a.num * b.den, (i128)a.den * b.num);
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return (i128)a.num * b.den < (i128)b.num * a.den;
  }
  double to_double() const { return double(num) / double(den); }
  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

// Square class of a nonzero rational r = num/den in Q^x / Q^x2:
// sign plus squarefree kernel of |num*den|.
struct SquareClass {
  int sign = 1;       // +1 or -1
  i64 kernel = 1;     // squarefree, positive
  bool is_one() const { return sign == 1 && kernel == 1; }
  friend bool operator==(const SquareClass& a, const SquareClass& b) {
    return a.sign == b.sign && a.kernel == b.kernel;
  }
};
SquareClass square_class(i64 num, i64 den = 1);

// SplitMix64: tiny deterministic RNG for seeded experiments.
struct SplitMix64 {
  u64 s;
  explicit SplitMix64(u64 seed) : s(seed) {}
  u64 next() {
    u64 z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  u64 below(u64 n) { return next() % n; }
  double uniform01() { return (next() >> 11) * 0x1.0p-53; }
};

// Runs fn(shard_index) for shard_index in [0, nshards) on up to nworkers threads.
void parallel_shards(int nshards, int nworkers, const std::function<void(int)>& fn);

}  // namespace diagq
