#include "diagq/residue.hpp"

namespace diagq {

int jacobi(i64 a, i64 n) {
  if (n <= 0 || (n & 1) == 0) throw std::invalid_argument("jacobi: n must be odd and positive");
  a %= n;
  if (a < 0) a += n;
  int t = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      i64 r = n & 7;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

std::optional<GaussianInt> gaussian_exact_div(const GaussianInt& a, const GaussianInt& b) {
  assert(!b.is_zero());
  i128 nb = b.norm();
  GaussianInt num = a * b.conj();
  if (num.re % (i64)nb != 0 || num.im % (i64)nb != 0) return std::nullopt;
  return GaussianInt{num.re / (i64)nb, num.im / (i64)nb};
}

GaussianInt gaussian_gcd(GaussianInt a, GaussianInt b) {
  while (!b.is_zero()) {
    // rounded division keeps norm(r) <= norm(b)/2
    i128 nb = b.norm();
    GaussianInt num = a * b.conj();
    auto round_div = [](i64 x, i128 d) -> i64 {
      i128 q = ((i128)2 * x + (x >= 0 ? d : -d)) / (2 * d);
      return (i64)q;
    };
    GaussianInt q{round_div(num.re, nb), round_div(num.im, nb)};
    GaussianInt r = a - b * q;
    a = b;
    b = r;
  }
  return a.canonical();
}

namespace {

// r with r^2 = -1 mod q, q prime = 1 mod 4
i64 sqrt_minus_one_mod(i64 q) {
  for (i64 g = 2;; ++g) {
    if (legendre(g, q) == -1) return (i64)pow_mod((u64)g, (u64)(q - 1) / 4, (u64)q);
  }
}

// chi_p(a) for the split Gaussian prime p=(c,d) over q: the unique i^k with
// a^((q-1)/4) = i^k mod p, via the embedding i = -c/d mod q.
QuarticValue quartic_char_split(i64 a, const GaussianInt& pr, i64 q) {
  i64 am = a % q;
  if (am < 0) am += q;
  if (am == 0) return QuarticValue::zero_value();
  i64 t = (i64)pow_mod((u64)am, (u64)(q - 1) / 4, (u64)q);
  i64 d = pr.im % q;
  if (d < 0) d += q;
  i64 r = (i64)mul_mod((u64)((q - pr.re % q) % q), (u64)mod_inverse(d, q), (u64)q);
  if (t == 1) return QuarticValue::root(0);
  if (t == r) return QuarticValue::root(1);
  if (t == q - 1) return QuarticValue::root(2);
  if (t == (q - r) % q) return QuarticValue::root(3);
  throw std::logic_error("quartic_char_split: value not a 4th root of unity");
}

}  // namespace

QuarticValue quartic_symbol(i64 a, const GaussianInt& m) {
  if (!m.is_odd()) throw std::invalid_argument("quartic_symbol: m must have odd norm");
  GaussianInt g = m.canonical();
  i128 nm = g.norm();
  if (nm == 1) return QuarticValue::root(0);
  if (nm > (i128)1 << 62) throw std::overflow_error("quartic_symbol: norm too large");
  QuarticValue result = QuarticValue::root(0);
  for (auto [q, e] : factorize((i64)nm)) {
    if (q % 4 == 3) {
      // inert prime: residue field F_{q^2}; the quartic character is trivial
      // on rational integers prime to q since (q^2-1)/4 = 0 mod q-1
      assert(e % 2 == 0);
      if (a % q == 0 && e > 0) return QuarticValue::zero_value();
      continue;
    }
    // split prime: find the prime above q dividing g and its conjugate exponent
    i64 r = sqrt_minus_one_mod(q);
    GaussianInt pr = gaussian_gcd(GaussianInt{q, 0}, GaussianInt{r, 1});
    int ep = 0;
    GaussianInt rest = g;
    while (true) {
      auto d = gaussian_exact_div(rest, pr);
      if (!d) break;
      rest = *d;
      ++ep;
    }
    int ec = e - ep;
    assert(ec >= 0);
    if (ep > 0) {
      QuarticValue c = quartic_char_split(a, pr, q);
      for (int i = 0; i < ep; ++i) result = result * c;
    }
    if (ec > 0) {
      QuarticValue c = quartic_char_split(a, pr.conj().canonical(), q);
      for (int i = 0; i < ec; ++i) result = result * c;
    }
    if (result.zero) return result;
  }
  return result;
}

namespace {

// valuation and unit part of a nonzero rational at p, unit returned mod p^prec
struct LocalUnit {
  int val;
  i64 unit;  // in [1, p^prec), prime to p
};

LocalUnit local_unit(i64 num, i64 den, i64 p, int prec) {
  assert(num != 0 && den != 0);
  i64 mod = 1;
  for (int i = 0; i < prec; ++i) mod *= p;
  int v = 0;
  i64 n = std::abs(num), d = std::abs(den);
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  while (d % p == 0) {
    d /= p;
    --v;
  }
  int sign = ((num < 0) != (den < 0)) ? -1 : 1;
  i64 u = mul_mod((u64)(n % mod), (u64)mod_inverse(d % mod, mod), (u64)mod);
  if (sign < 0) u = (mod - u) % mod;
  if (u == 0) u = mod;  // cannot happen: u is a unit
  return {v, u};
}

inline int eps2(i64 u) { return (int)(((u - 1) / 2) & 1); }          // (u-1)/2 mod 2
inline int omega2(i64 u) { return (int)(((u * u - 1) / 8) & 1); }    // (u^2-1)/8 mod 2

}  // namespace

int hilbert(i64 a, i64 b, Place v) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert: zero argument");
  if (v.is_real()) return (a < 0 && b < 0) ? 1 : 0;
  i64 p = v.p;
  if (p == 2) {
    LocalUnit la = local_unit(a, 1, 2, 4), lb = local_unit(b, 1, 2, 4);
    i64 u = la.unit & 7, w = lb.unit & 7;
    int r = eps2(u) * eps2(w) + la.val * omega2(w) + lb.val * omega2(u);
    return r & 1;
  }
  LocalUnit la = local_unit(a, 1, p, 1), lb = local_unit(b, 1, p, 1);
  int al = la.val & 1, be = lb.val & 1;
  // (a,b)_p = legendre((-1)^{ab} u^b w^a, p); even valuations drop out
  i64 s = 1;
  if (al && be) s = mul_mod((u64)s, (u64)(p - 1), (u64)p);
  if (be) s = mul_mod((u64)s, (u64)la.unit, (u64)p);
  if (al) s = mul_mod((u64)s, (u64)lb.unit, (u64)p);
  return legendre(s, p) == -1 ? 1 : 0;
}

int hilbert(const Rat& a, const Rat& b, Place v) {
  // (a,b) depends only on square classes: num/den ~ num*den
  i128 an = (i128)a.num * a.den, bn = (i128)b.num * b.den;
  if (an > INT64_MAX || an < INT64_MIN || bn > INT64_MAX || bn < INT64_MIN)
    throw std::overflow_error("hilbert: rational too large");
  return hilbert((i64)an, (i64)bn, v);
}

std::vector<Place> hilbert_support(i64 a, i64 b) {
  std::vector<Place> out{Place::real(), Place::finite(2)};
  std::vector<i64> ps;
  for (i64 x : {a, b})
    for (auto [p, e] : factorize(x)) {
      (void)e;
      if (p > 2) ps.push_back(p);
    }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  for (i64 p : ps) out.push_back(Place::finite(p));
  return out;
}

bool is_kth_power_local(const Rat& x, Place v, int k) {
  assert(k == 2 || k == 4);
  if (x.num == 0) throw std::domain_error("is_kth_power_local: zero");
  if (v.is_real()) return x.num > 0;
  i64 p = v.p;
  if (p == 2) {
    LocalUnit l = local_unit(x.num, x.den, 2, 5);
    if (l.val % k != 0) return false;
    return k == 2 ? (l.unit & 7) == 1 : (l.unit & 15) == 1;
  }
  LocalUnit l = local_unit(x.num, x.den, p, 1);
  if (l.val % k != 0) return false;
  // a p-adic unit is a k-th power iff its residue is one in F_p^x
  u64 e = (u64)(p - 1) / std::gcd((i64)k, p - 1);
  return pow_mod((u64)l.unit, e, (u64)p) == 1;
}

}  // namespace diagq
