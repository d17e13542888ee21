#pragma once

#include <complex>

#include "diagq/util.hpp"

namespace diagq {

// A place of Q: the real place or a finite prime.
struct Place {
  i64 p = 0;  // 0 encodes the real place
  static Place real() { return Place{0}; }
  static Place finite(i64 prime) {
    assert(prime >= 2);
    return Place{prime};
  }
  bool is_real() const { return p == 0; }
  bool is_finite() const { return p != 0; }
  friend bool operator==(const Place& a, const Place& b) { return a.p == b.p; }
  friend bool operator<(const Place& a, const Place& b) {
    // order: real, 2, then odd primes ascending
    auto key = [](const Place& v) { return v.is_real() ? (i64)-1 : v.p; };
    return key(a) < key(b);
  }
  std::string str() const { return is_real() ? "oo" : std::to_string(p); }
};

// Jacobi symbol (a/n), n odd positive. Throws on even or nonpositive n.
int jacobi(i64 a, i64 n);

inline int legendre(i64 a, i64 p) { return jacobi(a, p); }

struct GaussianInt {
  i64 re = 0, im = 0;

  i128 norm() const { return (i128)re * re + (i128)im * im; }
  bool is_zero() const { return re == 0 && im == 0; }
  bool is_odd() const { return (norm() & 1) == 1; }
  GaussianInt conj() const { return {re, -im}; }

  friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianInt operator-(const GaussianInt& a, const GaussianInt& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend bool operator==(const GaussianInt& a, const GaussianInt& b) {
    return a.re == b.re && a.im == b.im;
  }

  // The canonical associate: the unique unit multiple with re > 0, im >= 0.
  // Idempotent; 0 maps to 0. This fixes one generator per nonzero ideal.
  GaussianInt canonical() const {
    GaussianInt g = *this;
    if (g.is_zero()) return g;
    for (int t = 0; t < 4 && !(g.re > 0 && g.im >= 0); ++t) g = {-g.im, g.re};
    assert(g.re > 0 && g.im >= 0);
    return g;
  }
  std::string str() const { return "(" + std::to_string(re) + "," + std::to_string(im) + ")"; }
};

// Exact quotient a/b in Z[i], or nullopt when b does not divide a.
std::optional<GaussianInt> gaussian_exact_div(const GaussianInt& a, const GaussianInt& b);
GaussianInt gaussian_gcd(GaussianInt a, GaussianInt b);

// Value of the 4-th power residue symbol: 0 or i^k.
struct QuarticValue {
  bool zero = false;
  int k = 0;  // value = i^k when !zero

  static QuarticValue zero_value() { return {true, 0}; }
  static QuarticValue root(int k) { return {false, ((k % 4) + 4) % 4}; }
  bool is_one() const { return !zero && k == 0; }
  QuarticValue inverse() const { return zero ? *this : root(4 - k); }
  friend QuarticValue operator*(const QuarticValue& a, const QuarticValue& b) {
    if (a.zero || b.zero) return zero_value();
    return root(a.k + b.k);
  }
  friend bool operator==(const QuarticValue& a, const QuarticValue& b) {
    return a.zero == b.zero && (a.zero || a.k == b.k);
  }
  std::complex<double> to_complex() const {
    if (zero) return {0, 0};
    static const std::complex<double> tbl[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return tbl[k];
  }
  std::string str() const {
    if (zero) return "0";
    static const char* tbl[4] = {"1", "i", "-1", "-i"};
    return tbl[k];
  }
};

// 4-th power residue symbol (a / m)_4 over Q(i), m of odd norm.
// Factors norm(m); multiplicative over the Gaussian prime factorization of m.
QuarticValue quartic_symbol(i64 a, const GaussianInt& m);

// Quadratic Hilbert symbol (a,b)_v as an element of Z/2: returns 0 or 1,
// where 1 stands for the invariant 1/2.
int hilbert(i64 a, i64 b, Place v);
int hilbert(const Rat& a, const Rat& b, Place v);

// Places where (a,b)_v can be nonzero: real, 2, odd primes dividing a or b.
std::vector<Place> hilbert_support(i64 a, i64 b);

struct QpClass {
  Rat x;
  Place p;
  int exponent = 2;  // 2 or 4
};

// Membership x in (Q_v^x)^k. Valuation divisible by k plus a unit-part test
// (Hensel at odd p, congruences mod 8/16 at p = 2, positivity at the real place).
bool is_kth_power_local(const Rat& x, Place v, int k);
inline bool power_class(const QpClass& q) {
  if (q.x.num == 0) throw std::domain_error("power_class: zero");
  return is_kth_power_local(q.x, q.p, q.exponent);
}

}  // namespace diagq
