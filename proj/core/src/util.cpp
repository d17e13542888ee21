#include "diagq/util.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace diagq {

std::string to_string_i128(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 u = neg ? (u128)(-v) : (u128)v;
  std::string s;
  while (u) {
    s += char('0' + (int)(u % 10));
    u /= 10;
  }
  if (neg) s += '-';
  std::reverse(s.begin(), s.end());
  return s;
}

u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = (u64)std::sqrt((double)n);
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n && (r + 1) != 0) ++r;
  return r;
}

bool is_square(i128 n) { return exact_sqrt(n).has_value(); }

std::optional<i64> exact_sqrt(i128 n) {
  if (n < 0) return std::nullopt;
  if (n == 0) return 0;
  // quadratic residue sieve mod 64 cuts most non-squares early
  static const bool qr64[64] = {1, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0,
                                1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0,
                                0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0,
                                0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0};
  if (!qr64[(int)((u128)n & 63)]) return std::nullopt;
  u128 u = (u128)n;
  u64 hi = (u64)(u >> 64);
  u64 r;
  if (hi == 0) {
    r = isqrt((u64)u);
  } else {
    long double d = (long double)u;
    r = (u64)sqrtl(d);
    while ((u128)r * r > u) --r;
    while ((u128)(r + 1) * (r + 1) <= u) ++r;
  }
  if ((u128)r * r == u) return (i64)r;
  return std::nullopt;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic witness set for 64-bit inputs
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    u64 x = pow_mod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {
u64 pollard_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  SplitMix64 rng(n ^ 0xdeadbeefULL);
  while (true) {
    u64 x = rng.below(n - 2) + 2, y = x, c = rng.below(n - 1) + 1, d = 1;
    while (d == 1) {
      x = (mul_mod(x, x, n) + c) % n;
      y = (mul_mod(y, y, n) + c) % n;
      y = (mul_mod(y, y, n) + c) % n;
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}
}  // namespace

std::vector<std::pair<i64, int>> factorize(i64 n) {
  if (n == 0) throw std::domain_error("factorize(0)");
  u64 m = n < 0 ? (u64)(-(i128)n) : (u64)n;
  std::vector<u64> ps;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    while (m % p == 0) {
      ps.push_back(p);
      m /= p;
    }
  }
  factor_rec(m, ps);
  std::sort(ps.begin(), ps.end());
  std::vector<std::pair<i64, int>> out;
  for (u64 p : ps) {
    if (!out.empty() && out.back().first == (i64)p)
      out.back().second++;
    else
      out.push_back({(i64)p, 1});
  }
  return out;
}

std::vector<i64> primes_up_to(i64 n) {
  std::vector<i64> ps;
  if (n < 2) return ps;
  std::vector<bool> comp(n + 1, false);
  for (i64 i = 2; i <= n; ++i) {
    if (!comp[i]) {
      ps.push_back(i);
      for (i64 j = i * i; j <= n; j += i) comp[j] = true;
    }
  }
  return ps;
}

std::vector<int32_t> spf_table(i64 n) {
  std::vector<int32_t> spf(n + 1, 0);
  for (i64 i = 2; i <= n; ++i) {
    if (spf[i] == 0) {
      for (i64 j = i; j <= n; j += i)
        if (spf[j] == 0) spf[j] = (int32_t)i;
    }
  }
  return spf;
}

SquareClass square_class(i64 num, i64 den) {
  if (num == 0 || den == 0) throw std::domain_error("square_class of zero");
  SquareClass c;
  c.sign = ((num < 0) != (den < 0)) ? -1 : 1;
  i64 a = std::abs(num), b = std::abs(den);
  i64 g = std::gcd(a, b);
  a /= g;
  b /= g;
  // num/den ~ (a/g)*(b/g) mod squares once the shared part is cancelled
  i64 k = 1;
  for (i64 v : {a, b})
    for (auto [p, e] : factorize(v))
      if (e & 1) k *= p;
  c.kernel = k;
  return c;
}

void parallel_shards(int nshards, int nworkers, const std::function<void(int)>& fn) {
  if (nworkers <= 1 || nshards <= 1) {
    for (int i = 0; i < nshards; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    while (true) {
      int i = next.fetch_add(1);
      if (i >= nshards) break;
      fn(i);
    }
  };
  std::vector<std::thread> threads;
  int nt = std::min(nworkers, nshards);
  threads.reserve(nt);
  for (int i = 0; i < nt; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
}

}  // namespace diagq
