#include "diagq/local.hpp"

namespace diagq {

SquareClass SurfaceTuple::theta_square_class() const {
  SquareClass acc = square_class(a[0]);
  for (int i = 1; i < 4; ++i) {
    SquareClass c = square_class(a[i]);
    acc.sign *= c.sign;
    i64 g = std::gcd(acc.kernel, c.kernel);
    acc.kernel = (acc.kernel / g) * (c.kernel / g);
  }
  return acc;
}

std::vector<i64> SurfaceTuple::odd_theta_primes() const {
  std::vector<i64> ps;
  for (i64 v : a)
    for (auto [p, e] : factorize(v)) {
      (void)e;
      if (p > 2) ps.push_back(p);
    }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

SurfaceTuple equivalent_reduce(const SurfaceTuple& t, i64 p) {
  std::array<i64, 4> b = t.a;
  std::array<int, 4> v{};
  for (int i = 0; i < 4; ++i) {
    while (b[i] % (p * p * p * p) == 0) b[i] /= p * p * p * p;
    v[i] = vp(b[i], p);
  }
  int mn = *std::min_element(v.begin(), v.end());
  if (mn > 0) {
    i64 q = ipow(p, mn);
    for (auto& x : b) x /= q;
  }
  return SurfaceTuple(b);
}

// Unit-subset criterion at an odd prime for a p-reduced tuple: X(Q_p) is
// nonempty iff some subset J of a single valuation class, |J| >= 2, gives an
// all-unit solution of sum_{i in J} u_i y_i^4 = 0 mod p. Pairs recover the
// "-a_k/a_l is a fourth power" condition, triples and quadruples the
// "three equal valuations" condition (guaranteed nonempty only for p > 33).
UnitSubsetResult unit_subset_soluble(const SurfaceTuple& red, i64 p) {
  UnitSubsetResult res;
  std::array<int, 4> v{};
  std::array<i64, 4> u{};
  for (int i = 0; i < 4; ++i) {
    v[i] = vp(red.a[i], p);
    i64 w = red.a[i] / ipow(p, v[i]);
    u[i] = ((w % p) + p) % p;
  }
  u64 e4 = (u64)(p - 1) / std::gcd((i64)4, p - 1);
  auto is_q4 = [&](i64 x) { return x % p != 0 && pow_mod((u64)(((x % p) + p) % p), e4, (u64)p) == 1; };

  // pairs
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (v[i] != v[j]) continue;
      i64 r = mul_mod((u64)(p - u[i]), (u64)mod_inverse(u[j], p), (u64)p);
      if (is_q4(r)) {
        // y_i = 1, y_j = fourth root of r
        res.soluble = true;
        res.size = 2;
        res.witness = {};
        res.witness[i] = 1;
        for (i64 y = 1; y < p; ++y)
          if (pow_mod((u64)y, 4, (u64)p) == (u64)r) {
            res.witness[j] = y;
            break;
          }
        return res;
      }
    }
  // triples and the full quadruple, by direct search over units
  std::vector<std::vector<int>> subsets;
  for (int t = 0; t < 4; ++t) {
    std::vector<int> s;
    for (int i = 0; i < 4; ++i)
      if (i != t) s.push_back(i);
    if (v[s[0]] == v[s[1]] && v[s[1]] == v[s[2]]) subsets.push_back(s);
  }
  if (v[0] == v[1] && v[1] == v[2] && v[2] == v[3]) subsets.push_back({0, 1, 2, 3});
  std::vector<u64> q4(p, 0);
  for (i64 y = 1; y < p; ++y) q4[(size_t)pow_mod((u64)y, 4, (u64)p)] = (u64)y;
  for (const auto& s : subsets) {
    if (s.size() == 3) {
      for (i64 y0 = 1; y0 < p; ++y0) {
        u64 t0 = mul_mod((u64)u[s[0]], pow_mod((u64)y0, 4, (u64)p), (u64)p);
        for (i64 y1 = 1; y1 < p; ++y1) {
          u64 t1 = (t0 + mul_mod((u64)u[s[1]], pow_mod((u64)y1, 4, (u64)p), (u64)p)) % (u64)p;
          if (t1 == 0) continue;
          u64 need = mul_mod((u64)(p - (i64)t1), (u64)mod_inverse(u[s[2]], p), (u64)p);
          if (need != 0 && q4[(size_t)need] != 0) {
            res.soluble = true;
            res.size = 3;
            res.witness = {};
            res.witness[s[0]] = y0;
            res.witness[s[1]] = y1;
            res.witness[s[2]] = (i64)q4[(size_t)need];
            return res;
          }
        }
      }
    } else {
      for (i64 y0 = 1; y0 < p; ++y0) {
        u64 t0 = mul_mod((u64)u[0], pow_mod((u64)y0, 4, (u64)p), (u64)p);
        for (i64 y1 = 1; y1 < p; ++y1) {
          u64 t1 = (t0 + mul_mod((u64)u[1], pow_mod((u64)y1, 4, (u64)p), (u64)p)) % (u64)p;
          for (i64 y2 = 1; y2 < p; ++y2) {
            u64 t2 = (t1 + mul_mod((u64)u[2], pow_mod((u64)y2, 4, (u64)p), (u64)p)) % (u64)p;
            if (t2 == 0) continue;
            u64 need = mul_mod((u64)(p - (i64)t2), (u64)mod_inverse(u[3], p), (u64)p);
            if (need != 0 && q4[(size_t)need] != 0) {
              res.soluble = true;
              res.size = 4;
              res.witness = {y0, y1, y2, (i64)q4[(size_t)need]};
              return res;
            }
          }
        }
      }
    }
  }
  return res;
}

SolubilityCertificate local_soluble(const SurfaceTuple& t, Place v, const LocalOptions& opt) {
  SolubilityCertificate cert;
  cert.place = v;
  if (v.is_real()) {
    bool pos = false, neg = false;
    for (i64 c : t.a) (c > 0 ? pos : neg) = true;
    cert.soluble = pos && neg;
    cert.rule = "sign-pattern";
    return cert;
  }
  i64 p = v.p;
  SurfaceTuple red = equivalent_reduce(t, p);
  if (p != 2 && !opt.force_generic) {
    UnitSubsetResult sr = unit_subset_soluble(red, p);
    cert.soluble = sr.soluble;
    if (sr.soluble) {
      cert.rule = sr.size == 2 ? "fourth-power-pair" : "equal-valuation-subset";
      cert.witness = sr.witness;
      cert.level = 1;
    } else {
      cert.rule = "unit-subset-exhausted";
    }
    return cert;
  }
  PadicEngine engine(red.a, p, opt.padic);
  auto sol = engine.solve();
  if (sol.exhausted)
    throw std::runtime_error("local_soluble: p-adic precision exhausted at p=" + std::to_string(p));
  cert.soluble = sol.soluble;
  cert.rule = "hensel-search";
  if (sol.soluble) {
    cert.witness = sol.witness;
    cert.level = sol.level;
  }
  return cert;
}

std::vector<Place> relevant_places(const SurfaceTuple& t) {
  std::vector<Place> out{Place::real(), Place::finite(2)};
  for (i64 p : t.odd_theta_primes()) out.push_back(Place::finite(p));
  return out;
}

std::vector<Place> solubility_places(const SurfaceTuple& t) {
  std::vector<i64> ps;
  for (i64 p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) ps.push_back(p);
  for (i64 p : t.odd_theta_primes())
    if (p > 33) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  std::vector<Place> out{Place::real(), Place::finite(2)};
  for (i64 p : ps) out.push_back(Place::finite(p));
  return out;
}

EverywhereSolubility everywhere_soluble(const SurfaceTuple& t, const LocalOptions& opt) {
  EverywhereSolubility res;
  res.soluble = true;
  for (Place v : solubility_places(t)) {
    SolubilityCertificate c = local_soluble(t, v, opt);
    bool ok = c.soluble;
    res.certificates.push_back(std::move(c));
    if (!ok) {
      res.soluble = false;
      break;
    }
  }
  return res;
}

}  // namespace diagq
