#include "diagq/brauer.hpp"

#include <cmath>

namespace diagq {

namespace {

std::array<i64, 4> primitive(std::array<i64, 4> y) {
  i64 g = 0;
  for (i64 v : y) g = std::gcd(g, std::abs(v));
  if (g > 1)
    for (auto& v : y) v /= g;
  return y;
}

bool on_quadric(const SurfaceTuple& t, const std::array<i64, 4>& y) {
  i128 s = 0;
  for (int i = 0; i < 4; ++i) s += (i128)t.a[i] * y[i] * y[i];
  return s == 0;
}

}  // namespace

bool quadric_isotropic_at(const SurfaceTuple& t, Place v) {
  if (v.is_real()) {
    bool pos = false, neg = false;
    for (i64 c : t.a) (c > 0 ? pos : neg) = true;
    return pos && neg;
  }
  // a quaternary quadratic form over Q_p is anisotropic iff its discriminant
  // is a square and the Hasse invariant equals -(-1,-1)_p
  if (!theta_is_local_square(t, v)) return true;
  int eps = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) eps ^= hilbert(t.a[i], t.a[j], v);
  return eps != (1 ^ hilbert(-1, -1, v));
}

bool quadric_isotropic(const SurfaceTuple& t) {
  if (!quadric_isotropic_at(t, Place::real())) return false;
  if (!quadric_isotropic_at(t, Place::finite(2))) return false;
  for (i64 p : t.odd_theta_primes())
    if (!quadric_isotropic_at(t, Place::finite(p))) return false;
  return true;
}

std::optional<QuadricPoint> find_quadric_point(const SurfaceTuple& t, i64 height_budget) {
  if (!quadric_isotropic(t)) return std::nullopt;
  // pass 1: two-coordinate points, which exist iff -a_i a_j is a square
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      auto s = exact_sqrt(-(i128)t.a[i] * t.a[j]);
      if (!s || *s == 0) continue;
      std::array<i64, 4> y{};
      i64 g = std::gcd(*s, std::abs(t.a[i]));
      y[i] = *s / g;
      y[j] = std::abs(t.a[i]) / g;
      assert(on_quadric(t, y));
      return QuadricPoint{primitive(y)};
    }
  // pass 2: ternary supports by ascending height
  for (i64 h = 1; h <= std::min<i64>(height_budget, 64); ++h) {
    for (int z = 0; z < 4; ++z) {
      std::array<int, 3> s{};
      int ns = 0;
      for (int i = 0; i < 4; ++i)
        if (i != z) s[ns++] = i;
      for (i64 y0 = -h; y0 <= h; ++y0)
        for (i64 y1 = -h; y1 <= h; ++y1)
          for (i64 y2 = -h; y2 <= h; ++y2) {
            if (std::max({std::abs(y0), std::abs(y1), std::abs(y2)}) != h) continue;
            std::array<i64, 4> y{};
            y[s[0]] = y0;
            y[s[1]] = y1;
            y[s[2]] = y2;
            if (on_quadric(t, y)) return QuadricPoint{primitive(y)};
          }
    }
  }
  // pass 3: full form, last coordinate solved exactly
  for (i64 h = 1; h <= height_budget; ++h) {
    for (i64 y0 = -h; y0 <= h; ++y0)
      for (i64 y1 = -h; y1 <= h; ++y1)
        for (i64 y2 = -h; y2 <= h; ++y2) {
          if (std::max({std::abs(y0), std::abs(y1), std::abs(y2)}) != h) continue;
          i128 rest = (i128)t.a[0] * y0 * y0 + (i128)t.a[1] * y1 * y1 + (i128)t.a[2] * y2 * y2;
          if (rest % t.a[3] != 0) continue;
          i128 y3sq = -rest / t.a[3];
          auto y3 = exact_sqrt(y3sq);
          if (!y3) continue;
          std::array<i64, 4> y{y0, y1, y2, *y3};
          if (y == std::array<i64, 4>{0, 0, 0, 0}) continue;
          if (on_quadric(t, y)) return QuadricPoint{primitive(y)};
        }
  }
  return std::nullopt;
}

NormalizedAlgebra normalized_algebra(const SurfaceTuple& t, const QuadricPoint& q) {
  if (!on_quadric(t, q.y)) throw std::invalid_argument("normalized_algebra: point not on quadric");
  std::array<i64, 4> f{};
  for (int i = 0; i < 4; ++i) {
    i128 v = (i128)q.y[i] * t.a[i];
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("normalized_algebra: overflow");
    f[i] = (i64)v;
  }
  f = primitive(f);
  for (i64 v : f)
    if (v != 0) {
      if (v < 0)
        for (auto& w : f) w = -w;
      break;
    }
  return NormalizedAlgebra{f, q};
}

namespace {

// local data of theta at p, assembled coefficient-wise (theta exceeds 64 bits)
LocalValue theta_local_impl(const SurfaceTuple& t, i64 p) {
  LocalValue acc{0, 1};
  i64 mod = p == 2 ? 8 : p;
  for (i64 c : t.a) {
    LocalValue lv = local_value_at(c, 1, p);
    acc.val += lv.val;
    acc.unit = mul_mod((u64)acc.unit, (u64)lv.unit, (u64)mod);
  }
  return acc;
}


// Real-place evaluation of the sign set of G = sum f_i x_i^2 on X(R).
LocalStatus real_invariant(const SurfaceTuple& t, const NormalizedAlgebra& alg,
                           const BrauerOptions& opt) {
  LocalStatus st;
  if (t.theta() > 0) {
    // (g, theta) vanishes for positive theta regardless of the sign of g
    st.kind = LocalKind::constant;
    st.value_known = true;
    st.value = 0;
    st.rule = "theta-positive";
    return st;
  }
  bool all_nonneg = true, all_nonpos = true;
  for (i64 v : alg.f) {
    if (v > 0) all_nonpos = false;
    if (v < 0) all_nonneg = false;
  }
  if (all_nonneg || all_nonpos) {
    // g has a fixed sign on all of X(R); the zero locus has measure zero
    st.kind = LocalKind::constant;
    st.value_known = true;
    st.value = all_nonneg ? 0 : 1;
    st.rule = "one-signed-plane";
    return st;
  }
  // stratified sampling: solve each coordinate in turn over a sign-covering
  // grid, then refine around sign boundaries of g
  int per_axis = std::max(4, (int)std::cbrt((double)opt.real_samples / 8.0));
  bool pos = false, neg = false;
  struct Cell {
    int j;
    double c[3];
    double rad;
  };
  std::vector<Cell> boundary;
  auto probe = [&](int j, double u0, double u1, double u2, double rad) {
    double x[4];
    int oi = 0;
    double other[3] = {u0, u1, u2};
    double rest = 0;
    for (int i = 0; i < 4; ++i) {
      if (i == j) continue;
      x[i] = other[oi++];
      rest += (double)t.a[i] * x[i] * x[i] * x[i] * x[i];
    }
    double R = -rest / (double)t.a[j];
    if (R < 0) return;
    for (double sgn : {1.0, -1.0}) {
      x[j] = sgn * std::pow(R, 0.25);
      double g = 0, scale = 0;
      for (int i = 0; i < 4; ++i) {
        g += (double)alg.f[i] * x[i] * x[i];
        scale += std::abs((double)alg.f[i]) * x[i] * x[i];
      }
      if (scale == 0) continue;
      if (g > 1e-9 * scale)
        pos = true;
      else if (g < -1e-9 * scale)
        neg = true;
      else
        boundary.push_back({j, {u0, u1, u2}, rad});
      if (sgn > 0 && x[j] < 1e-12) break;  // avoid the duplicate x_j = 0 probe
    }
  };
  double step = 2.0 / per_axis;
  for (int j = 0; j < 4; ++j)
    for (int i0 = 0; i0 <= per_axis && !(pos && neg); ++i0)
      for (int i1 = 0; i1 <= per_axis; ++i1)
        for (int i2 = 0; i2 <= per_axis; ++i2)
          probe(j, -1 + i0 * step, -1 + i1 * step, -1 + i2 * step, step);
  for (int round = 0; round < opt.real_refine_rounds && !(pos && neg); ++round) {
    std::vector<Cell> cells = std::move(boundary);
    boundary.clear();
    if (cells.size() > 2000) cells.resize(2000);
    for (const Cell& c : cells) {
      double r = c.rad / 2;
      for (int d0 = -1; d0 <= 1; ++d0)
        for (int d1 = -1; d1 <= 1; ++d1)
          for (int d2 = -1; d2 <= 1; ++d2)
            probe(c.j, c.c[0] + d0 * r, c.c[1] + d1 * r, c.c[2] + d2 * r, r);
    }
  }
  if (pos && neg) {
    st.kind = LocalKind::non_constant;
    st.rule = "real-sampling";
    return st;
  }
  if (pos || neg) {
    st.kind = LocalKind::constant;
    st.value_known = true;
    st.value = neg ? 1 : 0;  // theta < 0 here
    st.rule = "real-sampling";
    return st;
  }
  st.kind = LocalKind::inconclusive;
  st.rule = "real-sampling-inconclusive";
  return st;
}

// Flip the sign of one coordinate of the quadric point: a second tangent
// plane whose pullback has a zero locus disjoint from the first.
std::optional<NormalizedAlgebra> conjugate_algebra(const SurfaceTuple& t,
                                                   const NormalizedAlgebra& alg) {
  int nz = 0;
  for (i64 v : alg.point.y)
    if (v != 0) ++nz;
  if (nz < 2) return std::nullopt;
  QuadricPoint q = alg.point;
  for (int i = 0; i < 4; ++i)
    if (q.y[i] != 0) {
      q.y[i] = -q.y[i];
      break;
    }
  return normalized_algebra(t, q);
}

}  // namespace

LocalValue theta_local(const SurfaceTuple& t, i64 p) { return theta_local_impl(t, p); }

bool theta_is_local_square(const SurfaceTuple& t, Place v) {
  if (v.is_real()) return t.theta() > 0;
  LocalValue th = theta_local_impl(t, v.p);
  if (th.val % 2 != 0) return false;
  if (v.p == 2) return th.unit == 1;
  return legendre(th.unit, v.p) == 1;
}

// Classification without the tangent-plane data: the lemma shapes determine
// constancy/prolificness from the valuation pattern, p mod 4 and the local
// square class of theta alone.
std::optional<LocalStatus> fast_classify(const SurfaceTuple& red, i64 p) {
  std::array<int, 4> v{};
  for (int i = 0; i < 4; ++i) v[i] = vp(red.a[i], p);
  int nz = 0, odd = 0;
  for (int i = 0; i < 4; ++i) {
    if (v[i] > 0) ++nz;
    if (v[i] & 1) ++odd;
  }
  LocalStatus st;
  if (odd == 0 && nz <= 1) {
    st.kind = LocalKind::constant;
    st.rule = "p-normalized-zero";
    return st;
  }
  if (odd == 2) {
    if (theta_is_local_square(red, Place::finite(p))) {
      st.kind = LocalKind::constant;
      st.value_known = true;
      st.value = 0;
      st.rule = "theta-local-square";
      return st;
    }
    if (p % 4 == 1) {
      st.kind = LocalKind::non_constant;
      st.rule = "prolific";
      return st;
    }
    st.kind = LocalKind::constant;
    st.rule = "constant-3mod4";
    return st;
  }
  return std::nullopt;
}

std::optional<LocalStatus> fast_invariant(const SurfaceTuple& t, const NormalizedAlgebra& alg,
                                          i64 p) {
  if (p == 2) return std::nullopt;
  SurfaceTuple red = equivalent_reduce(t, p);
  std::array<int, 4> v{};
  for (int i = 0; i < 4; ++i) v[i] = vp(red.a[i], p);
  int nz = 0, odd = 0;
  for (int i = 0; i < 4; ++i) {
    if (v[i] > 0) ++nz;
    if (v[i] & 1) ++odd;
  }
  std::array<int, 4> vg{};
  for (int i = 0; i < 4; ++i) vg[i] = vp(t.a[i], p);
  LocalStatus st;
  if (odd == 0 && nz <= 1) {
    // at most one coefficient, with valuation 0 or 2: inv = 0 for the
    // p-normalized representative. The value transfers to the input tuple
    // only when it is already in that shape; otherwise the equivalence can
    // move the representative by (p, theta).
    st.kind = LocalKind::constant;
    if (vg == v) {
      st.value_known = true;
      st.value = 0;
      st.rule = "p-normalized-zero";
    } else {
      st.rule = "constant-equivalent-shape";
    }
    return st;
  }
  if (odd == 2) {
    // two odd / two even parities
    if (theta_is_local_square(t, Place::finite(p))) {
      st.kind = LocalKind::constant;
      st.value_known = true;
      st.value = 0;
      st.rule = "theta-local-square";
      return st;
    }
    if (p % 4 == 1) {
      st.kind = LocalKind::non_constant;
      st.rule = "prolific";
      return st;
    }
    // p = 3 (mod 4): constant. The value is in closed form when the global
    // tuple has the lemma shape: a pair (k,l) of equal valuations carrying
    // the local fourth-power condition, the complementary pair of the other
    // parity, and f a p-unit on slots k,l. All local points reduce onto the
    // component X_k^2 = s X_l^2 with s the square fourth root of -a_l/a_k;
    // the invariant is 1/2 exactly when {f = 0} cuts out that component.
    // When the fourth-power pair carries the odd valuations the same
    // computation applies to the equivalent surface with the roles swapped.
    st.kind = LocalKind::constant;
    st.rule = "constant-3mod4";
    if (vg == v) {
      std::array<int, 2> ev{-1, -1}, od{-1, -1};
      int ne = 0, no = 0;
      for (int i = 0; i < 4; ++i) {
        if (v[i] & 1)
          od[(no++) & 1] = i;
        else
          ev[(ne++) & 1] = i;
      }
      int k = -1, l = -1;
      if (ne == 2 && v[ev[0]] == v[ev[1]] &&
          is_kth_power_local(Rat(-t.a[ev[0]], t.a[ev[1]]), Place::finite(p), 4)) {
        k = ev[0];
        l = ev[1];
      } else if (no == 2 && v[od[0]] == v[od[1]] &&
                 is_kth_power_local(Rat(-t.a[od[0]], t.a[od[1]]), Place::finite(p), 4)) {
        k = od[0];
        l = od[1];
      }
      if (k >= 0 && alg.f[k] % p != 0 && alg.f[l] % p != 0) {
        i64 uk = t.a[k] / ipow(p, v[k]), ul = t.a[l] / ipow(p, v[l]);
        i64 tau = (i64)mul_mod((u64)((((-(i128)ul) % p) + p) % p),
                               (u64)mod_inverse(((uk % p) + p) % p, p), (u64)p);
        // sigma: the quadratic-residue square root of tau (p = 3 mod 4)
        i64 sigma = (i64)pow_mod((u64)tau, (u64)(p + 1) / 4, (u64)p);
        if (legendre(sigma, p) == -1) sigma = p - sigma;
        assert(mul_mod((u64)sigma, (u64)sigma, (u64)p) == (u64)tau);
        i64 slope = (i64)mul_mod((u64)((((-(i128)alg.f[l]) % p) + p) % p),
                                 (u64)mod_inverse(((alg.f[k] % p) + p) % p, p), (u64)p);
        st.value_known = true;
        st.value = slope == sigma ? 1 : 0;
        st.rule = "tangent-component";
      }
    }
    return st;
  }
  return std::nullopt;
}

LocalStatus exhaustive_invariant(const SurfaceTuple& t, const NormalizedAlgebra& alg, Place v,
                                 const BrauerOptions& opt, bool first_value_only) {
  if (v.is_real()) return real_invariant(t, alg, opt);
  i64 p = v.p;
  LocalStatus st;
  if (theta_is_local_square(t, v)) {
    st.kind = LocalKind::constant;
    st.value_known = true;
    st.value = 0;
    st.rule = "theta-local-square";
    return st;
  }
  LocalValue th = theta_local(t, p);
  PadicOptions popt = opt.local.padic;
  PadicEngine engine(t.a, p, popt);
  auto vs = engine.invariant_values(alg.f, th, first_value_only);
  if (vs.exhausted && !vs.non_constant()) {
    // towers onto the zero locus of g: retry against a second tangent plane
    auto alg2 = conjugate_algebra(t, alg);
    if (alg2) {
      PadicEngine e3(t.a, p, popt);
      auto shift = e3.symbol_shift(alg.f, alg2->f, th);
      if (shift) {
        PadicEngine e4(t.a, p, popt);
        vs = e4.invariant_values_dual(alg.f, alg2->f, *shift, th, first_value_only);
      }
    }
  }
  if (vs.no_points) {
    st.kind = LocalKind::empty;
    st.rule = "no-local-points";
    return st;
  }
  if (vs.non_constant()) {
    st.kind = LocalKind::non_constant;
    st.rule = "exhaustive";
    return st;
  }
  if (vs.constant() && (!vs.exhausted || first_value_only)) {
    // with first_value_only the caller has certified constancy separately
    st.kind = LocalKind::constant;
    st.value_known = true;
    st.value = vs.constant_value();
    st.rule = first_value_only ? "exhaustive-first-value" : "exhaustive";
    return st;
  }
  st.kind = LocalKind::inconclusive;
  st.rule = "precision-exhausted";
  return st;
}

bool has_generator_caveat(const SurfaceTuple& t) {
  if (t.theta_class() == ThetaClass::square) return true;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      SquareClass c1 = square_class(t.a[i]);
      SquareClass c2 = square_class(t.a[j]);
      i64 g = std::gcd(c1.kernel, c2.kernel);
      i64 k = (c1.kernel / g) * (c2.kernel / g);
      if (k == 1 || k == 2) return true;  // a_i a_j in {1,-1,2,-2} modulo squares
    }
  return false;
}

std::vector<int> PlaceInvariantProfile::canonical_values() const {
  // values are canonical only modulo zero-sum shifts of constant algebras
  // (c, theta), supported on the places where theta is a local nonsquare;
  // report the lexicographically minimal representative: zeros everywhere,
  // the total (if odd) carried by the last shiftable place.
  std::vector<int> out(places.size(), 0);
  if (!all_constant) return out;
  int sum = 0;
  int last_shiftable = -1;
  for (size_t i = 0; i < places.size(); ++i) {
    if (places[i].status.value_known) sum ^= places[i].status.value;
    if (places[i].shiftable) last_shiftable = (int)i;
  }
  if (sum && last_shiftable >= 0) out[(size_t)last_shiftable] = 1;
  return out;
}

PlaceInvariantProfile invariant_profile(const SurfaceTuple& t, const BrauerOptions& opt) {
  PlaceInvariantProfile prof;
  if (opt.assume_everywhere_soluble) {
    prof.everywhere_soluble = true;
  } else {
    auto sol = everywhere_soluble(t, opt.local);
    if (!sol.soluble) {
      prof.everywhere_soluble = false;
      prof.failing_place = sol.certificates.back().place;
      return prof;
    }
    prof.everywhere_soluble = true;
  }

  std::vector<Place> places = relevant_places(t);
  if (t.theta_class() == ThetaClass::square && !opt.force_exhaustive) {
    // (g, theta) with theta a rational square is everywhere trivial
    prof.theta_square_shortcut = true;
    prof.all_constant = true;
    prof.sum_halves = 0;
    for (Place v : places) {
      LocalStatus st;
      st.kind = LocalKind::constant;
      st.value_known = true;
      st.value = 0;
      st.rule = "theta-square";
      prof.places.push_back({v, st, false});
    }
    return prof;
  }

  std::optional<NormalizedAlgebra> alg;
  auto ensure_alg = [&]() -> NormalizedAlgebra& {
    if (!alg) {
      auto q = find_quadric_point(t, opt.quadric_budget);
      if (!q)
        throw std::runtime_error("invariant_profile: quadric point budget exhausted for " +
                                 t.str());
      prof.point = *q;
      alg = normalized_algebra(t, *q);
    }
    return *alg;
  };

  // evaluation order: odd primes ascending, then 2, then the real place, so a
  // prolific place settles the verdict before the heavier evaluators run
  std::vector<Place> order;
  for (Place v : places)
    if (v.is_finite() && v.p != 2) order.push_back(v);
  order.push_back(Place::finite(2));
  order.push_back(Place::real());

  bool stopped = false;
  for (Place v : order) {
    LocalStatus st;
    if (stopped) {
      st.kind = LocalKind::skipped;
      st.rule = "not-evaluated";
      prof.places.push_back({v, st, !theta_is_local_square(t, v)});
      continue;
    }
    std::optional<LocalStatus> got;
    if (!opt.force_exhaustive && v.is_finite() && v.p != 2)
      got = fast_classify(equivalent_reduce(t, v.p), v.p);
    if (!got) got = exhaustive_invariant(t, ensure_alg(), v, opt);
    prof.places.push_back({v, *got, !theta_is_local_square(t, v)});
    if (opt.early_stop && got->kind == LocalKind::non_constant) stopped = true;
  }
  std::sort(prof.places.begin(), prof.places.end(),
            [](const PlaceStatus& a, const PlaceStatus& b) { return a.place < b.place; });

  prof.all_constant = true;
  for (auto& ps : prof.places) {
    if (ps.status.kind == LocalKind::inconclusive) prof.has_inconclusive = true;
    if (ps.status.kind != LocalKind::constant) prof.all_constant = false;
  }
  if (prof.all_constant && !prof.has_inconclusive) {
    // fill the delegated constant values against the fixed global
    // representative: closed form first, the evaluator otherwise
    int sum = 0;
    for (auto& ps : prof.places) {
      if (!ps.status.value_known) {
        NormalizedAlgebra& a = ensure_alg();
        std::optional<LocalStatus> fv;
        if (!opt.force_exhaustive && ps.place.is_finite() && ps.place.p != 2)
          fv = fast_invariant(t, a, ps.place.p);
        if (fv && fv->value_known) {
          ps.status.value_known = true;
          ps.status.value = fv->value;
          ps.status.rule = fv->rule;
        } else {
          LocalStatus ex = exhaustive_invariant(t, a, ps.place, opt, true);
          if (ex.kind == LocalKind::constant && ex.value_known) {
            ps.status.value_known = true;
            ps.status.value = ex.value;
            ps.status.rule += "+exhaustive-value";
          } else {
            prof.has_inconclusive = true;
          }
        }
      }
      if (ps.status.value_known) sum ^= ps.status.value;
    }
    prof.sum_halves = sum;
  }
  return prof;
}


ObstructionResult decide_A_obstruction(const SurfaceTuple& t, const BrauerOptions& opt) {
  ObstructionResult res;
  res.generator_caveat = has_generator_caveat(t);
  res.profile = invariant_profile(t, opt);
  if (!res.profile.everywhere_soluble) {
    res.verdict = Verdict::not_everywhere_soluble;
    res.reason = "insoluble at " + res.profile.failing_place.str();
    return res;
  }
  if (res.profile.has_inconclusive) {
    res.verdict = Verdict::inconclusive;
    res.reason = "local evaluation inconclusive";
    return res;
  }
  if (!res.profile.all_constant) {
    res.verdict = Verdict::no_obstruction;
    for (auto& ps : res.profile.places)
      if (ps.status.kind == LocalKind::non_constant) {
        res.reason = "prolific at " + ps.place.str();
        break;
      }
    return res;
  }
  res.nowhere_prolific = true;
  if (res.profile.sum_halves & 1) {
    res.verdict = Verdict::obstruction;
    res.reason = "all places constant, invariant sum 1/2";
  } else {
    res.verdict = Verdict::no_obstruction;
    res.reason = "all places constant, invariant sum 0";
  }
  return res;
}

TwistReport twist_invariant_check(const SurfaceTuple& t, i64 p, const std::array<i64, 4>& u,
                                  const BrauerOptions& opt) {
  TwistReport rep;
  if (p % 4 != 3) throw std::invalid_argument("twist_invariant_check: p must be 3 mod 4");
  SurfaceTuple red = equivalent_reduce(t, p);
  int odd = 0;
  std::array<int, 2> ev{-1, -1}, od{-1, -1};
  for (int i = 0; i < 4; ++i) {
    if (vp(red.a[i], p) & 1)
      od[odd++ & 1] = i;
    else
      (ev[0] < 0 ? ev[0] : ev[1]) = i;
  }
  if (odd != 2) throw std::invalid_argument("twist_invariant_check: need two odd-parity valuations");
  if (theta_is_local_square(t, Place::finite(p)))
    throw std::invalid_argument("twist_invariant_check: theta is a local square");
  for (i64 ui : u)
    if (ui % p == 0) throw std::invalid_argument("twist_invariant_check: u must be p-units");
  // (k, l) is whichever pair satisfies the local fourth-power condition;
  // theta a nonsquare makes it unique, solubility makes it exist
  int k, l;
  if (is_kth_power_local(Rat(-red.a[ev[0]], red.a[ev[1]]), Place::finite(p), 4)) {
    k = ev[0];
    l = ev[1];
  } else if (is_kth_power_local(Rat(-red.a[od[0]], red.a[od[1]]), Place::finite(p), 4)) {
    k = od[0];
    l = od[1];
  } else {
    throw std::invalid_argument("twist_invariant_check: X(Q_p) is empty");
  }

  auto q = find_quadric_point(t, opt.quadric_budget);
  if (!q) throw std::runtime_error("twist_invariant_check: no quadric point");
  NormalizedAlgebra alg = normalized_algebra(t, *q);

  std::array<i64, 4> au{}, fu{};
  for (int i = 0; i < 4; ++i) {
    i128 c = (i128)t.a[i] * u[i] * u[i];
    i128 g = (i128)alg.f[i] * u[i];
    if (c > INT64_MAX || c < INT64_MIN || g > INT64_MAX || g < INT64_MIN)
      throw std::overflow_error("twist_invariant_check: overflow");
    au[i] = (i64)c;
    fu[i] = (i64)g;
  }
  SurfaceTuple tu(au);

  LocalValue th = theta_local(t, p);
  LocalValue thu = theta_local(tu, p);
  PadicEngine e1(t.a, p, opt.local.padic);
  auto v1 = e1.invariant_values(alg.f, th);
  PadicEngine e2(tu.a, p, opt.local.padic);
  auto v2 = e2.invariant_values(fu, thu);
  if (!v1.constant() || !v2.constant()) {
    rep.ok = false;
    rep.detail = "expected constant invariants at p";
    return rep;
  }
  int base = v1.constant_value();
  int twisted = v2.constant_value();
  int jac = legendre(u[k] * u[l], p);
  rep.lhs = twisted;
  rep.rhs = (base + (jac == -1 ? 1 : 0)) & 1;
  rep.ok = rep.lhs == rep.rhs;
  rep.detail = "inv_p(A)=" + std::to_string(base) + "/2, inv_p(A_u)=" + std::to_string(twisted) +
               "/2, (u_k u_l/p)=" + std::to_string(jac);
  return rep;
}

}  // namespace diagq
