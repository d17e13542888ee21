#include "diagq/padic.hpp"

namespace diagq {

LocalValue local_value_at(i64 num, i64 den, i64 p) {
  assert(num != 0 && den != 0);
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
  i64 mod = p == 2 ? 8 : p;
  i64 u = mul_mod((u64)(n % mod), (u64)mod_inverse(d % mod, mod), (u64)mod);
  if ((num < 0) != (den < 0)) u = (mod - u) % mod;
  return {v, u};
}

int hilbert_from_local(i64 p, int vg, i64 ug, const LocalValue& th) {
  if (p == 2) {
    auto eps = [](i64 u) { return (int)(((u - 1) / 2) & 1); };
    auto omg = [](i64 u) { return (int)(((u * u - 1) / 8) & 1); };
    int r = eps(ug) * eps(th.unit) + vg * omg(th.unit) + th.val * omg(ug);
    return r & 1;
  }
  i64 s = 1;
  if ((vg & 1) && (th.val & 1)) s = p - 1;
  if (th.val & 1) s = mul_mod((u64)s, (u64)(((ug % p) + p) % p), (u64)p);
  if (vg & 1) s = mul_mod((u64)s, (u64)(((th.unit % p) + p) % p), (u64)p);
  return legendre(s, p) == -1 ? 1 : 0;
}

PadicEngine::PadicEngine(const std::array<i64, 4>& a, i64 p, PadicOptions opt)
    : a_(a), p_(p), opt_(opt) {
  kmax_ = 0;
  u64 q = 1;
  while (q <= (u64(1) << 62) / (u64)p_) {
    q *= (u64)p_;
    ++kmax_;
  }
  pw_.resize(kmax_ + 1);
  pw_[0] = 1;
  for (int i = 1; i <= kmax_; ++i) pw_[i] = pw_[i - 1] * (u64)p_;
  for (int i = 0; i < 4; ++i) {
    assert(a_[i] != 0);
    va_[i] = 0;
    i64 v = std::abs(a_[i]);
    while (v % p_ == 0 && va_[i] < kmax_) {
      v /= p_;
      ++va_[i];
    }
  }
  v4_ = p_ == 2 ? 2 : 0;
  v6_ = (p_ == 2 || p_ == 3) ? 1 : 0;
}

u64 PadicEngine::mod_pk(i128 v, int k) const {
  i128 m = (i128)pw_[k];
  i128 r = v % m;
  if (r < 0) r += m;
  return (u64)r;
}

int PadicEngine::val_of(u64 r, int k) const {
  if (r == 0) return k;
  int v = 0;
  while (r % (u64)p_ == 0) {
    r /= (u64)p_;
    ++v;
  }
  return v;
}

u64 PadicEngine::eval_form_mod(const std::array<i64, 4>& coef, const std::array<u64, 4>& x,
                               int deg, int k) const {
  u64 m = pw_[k];
  u64 acc = 0;
  for (int i = 0; i < 4; ++i) {
    u64 xi = x[i] % m;
    u64 t = mul_mod(xi, xi, m);
    if (deg == 4) t = mul_mod(t, t, m);
    acc = (acc + mul_mod(mod_pk(coef[i], k), t, m)) % m;
  }
  return acc;
}

// The form is diagonal: a class where coordinate i is known mod p^(m_i) pins
// the term a_i x_i^4 mod p^(order_i), with
//   order_i = v(a_i) + min(v4 + 3 vc + m, v6 + 2 vc + 2m, v4 + vc + 3m, 4m),
// vc = min(v(x_i), m_i). F is then pinned mod p^K, K = min_i order_i.
int PadicEngine::order_of_coord(int i, const Node& n) const {
  if (i == n.j) return kmax_;
  int m = n.m[i];
  int vc = n.x[i] == 0 ? m : std::min(val_of(n.x[i], m), m);
  int o = std::min(std::min(v4_ + 3 * vc + m, v6_ + 2 * vc + 2 * m),
                   std::min(v4_ + vc + 3 * m, 4 * m));
  return std::min(va_[i] + o, kmax_);
}

std::vector<PadicEngine::Node> PadicEngine::level_one() const {
  std::vector<Node> out;
  auto mk = [&](int j) {
    Node n;
    n.j = j;
    n.x = {0, 0, 0, 0};
    n.x[j] = 1;
    n.m = {1, 1, 1, 1};
    return n;
  };
  if (p_ == 2) {
    for (int j = 0; j < 4; ++j) {
      Node base = mk(j);
      int nf = 3 - j;
      for (int b = 0; b < (1 << nf); ++b) {
        Node n = base;
        for (int t = 0; t < nf; ++t) n.x[j + 1 + t] = (u64)((b >> t) & 1);
        out.push_back(n);
      }
    }
    return out;
  }
  // odd p: enumerate level-1 solutions, solving the last free coordinate from
  // a table of quartic values
  std::array<std::vector<std::vector<u64>>, 4> roots;
  for (int i = 0; i < 4; ++i) {
    roots[i].assign((size_t)p_, {});
    for (u64 x = 0; x < (u64)p_; ++x) {
      u64 t = mul_mod(mul_mod(x, x, (u64)p_), mul_mod(x, x, (u64)p_), (u64)p_);
      t = mul_mod(mod_pk(a_[i], 1), t, (u64)p_);
      roots[i][(size_t)t].push_back(x);
    }
  }
  for (int j = 0; j < 4; ++j) {
    Node base = mk(j);
    u64 cj = mod_pk(a_[j], 1);
    if (j == 3) {
      if (cj == 0) out.push_back(base);
      continue;
    }
    std::vector<int> free;
    for (int i = j + 1; i < 4; ++i) free.push_back(i);
    int solve = free.back();
    free.pop_back();
    i64 count = 1;
    for (size_t t = 0; t < free.size(); ++t) count *= p_;
    for (i64 c = 0; c < count; ++c) {
      Node n = base;
      i64 t = c;
      u64 partial = cj;
      for (int idx : free) {
        n.x[idx] = (u64)(t % p_);
        t /= p_;
        u64 xi = n.x[idx];
        u64 q = mul_mod(mul_mod(xi, xi, (u64)p_), mul_mod(xi, xi, (u64)p_), (u64)p_);
        partial = (partial + mul_mod(mod_pk(a_[idx], 1), q, (u64)p_)) % (u64)p_;
      }
      for (u64 xs : roots[solve][(size_t)(((u64)p_ - partial) % (u64)p_)]) {
        Node s = n;
        s.x[solve] = xs;
        out.push_back(s);
      }
    }
  }
  return out;
}

PadicEngine::Analysis PadicEngine::analyze(const Node& n) const {
  Analysis an;
  int K = kmax_;
  for (int i = 0; i < 4; ++i) K = std::min(K, order_of_coord(i, n));
  an.K = K;
  an.Fv = eval_form_mod(a_, n.x, 4, K);
  if (an.Fv != 0) {
    an.dead = true;
    return an;
  }
  // Hensel: v(F) >= K on the class; a pinned coordinate with 2 t_i < K yields
  // a zero. Newton through coordinate i != j stays inside the class when
  // t_i <= K - m_i. Newton through the lead j moves off the chart x_j = 1;
  // renormalizing scales every coordinate by 1/x_j = 1 + O(p^(K - t_j)), so
  // staying in class needs K - t_j >= m_i - v(x_i) for all i.
  int renorm = 0;
  for (int i = 0; i < 4; ++i) {
    if (i == n.j) continue;
    int vc = n.x[i] == 0 ? n.m[i] : val_of(n.x[i], n.m[i]);
    renorm = std::max(renorm, n.m[i] - vc);
  }
  for (int i = 0; i < 4; ++i) {
    int vx;
    if (i == n.j)
      vx = 0;
    else if (n.x[i] == 0)
      continue;
    else {
      vx = val_of(n.x[i], n.m[i]);
      if (vx >= n.m[i]) continue;
    }
    int ti = v4_ + va_[i] + 3 * vx;
    if (K >= 2 * ti + 1) {
      an.liftable = true;
      if (i == n.j ? (ti <= K - renorm) : (ti <= K - n.m[i])) an.liftable_in_class = true;
    }
  }
  return an;
}

// Refine the class by one digit of the coordinate currently limiting the
// knowledge order `pick`.
void PadicEngine::extend(const Node& n, int pick, std::vector<Node>& out) const {
  int mb = n.m[pick];
  if (mb >= opt_.max_digits || mb + 1 > kmax_) return;
  for (i64 e = 0; e < p_; ++e) {
    Node c = n;
    c.x[pick] = n.x[pick] + pw_[mb] * (u64)e;
    c.m[pick] = mb + 1;
    out.push_back(c);
  }
}

int PadicEngine::binding_coord(const Node& n) const {
  int best = -1, bo = kmax_ + 1;
  for (int i = 0; i < 4; ++i) {
    if (i == n.j) continue;
    if (n.m[i] >= opt_.max_digits || n.m[i] + 1 > kmax_) continue;
    int o = order_of_coord(i, n);
    if (o < bo) {
      bo = o;
      best = i;
    }
  }
  return best;
}

PadicEngine::Solubility PadicEngine::solve() {
  Solubility res;
  std::vector<Node> cur = level_one();
  i64 nodes = 0;
  while (!cur.empty()) {
    std::vector<Node> next;
    for (const Node& n : cur) {
      if (++nodes > opt_.max_nodes) {
        res.exhausted = true;
        return res;
      }
      Analysis an = analyze(n);
      if (an.dead) continue;
      if (an.liftable) {
        res.soluble = true;
        res.level = *std::min_element(n.m.begin(), n.m.end());
        for (int i = 0; i < 4; ++i) res.witness[i] = (i64)n.x[i];
        return res;
      }
      int b = binding_coord(n);
      if (b < 0) {
        res.exhausted = true;
        continue;
      }
      extend(n, b, next);
    }
    cur = std::move(next);
  }
  return res;
}

// Square-class data of the degree-2 form g on the class, when pinned.
// G is diagonal too: term f_i x_i^2 pinned mod p^(vf_i + min(v2 + vc + m, 2m)).
std::optional<std::pair<int, i64>> PadicEngine::pinned_square_data(
    const Node& n, const std::array<i64, 4>& f, const std::array<int, 4>& vf,
    int* gorder) const {
  int v2g = p_ == 2 ? 1 : 0;
  int KG = kmax_;
  for (int i = 0; i < 4; ++i) {
    if (i == n.j) continue;
    int m = n.m[i];
    int vc = n.x[i] == 0 ? m : std::min(val_of(n.x[i], m), m);
    KG = std::min(KG, vf[i] + std::min(v2g + vc + m, 2 * m));
  }
  if (gorder) *gorder = KG;
  u64 Gv = eval_form_mod(f, n.x, 2, KG);
  int vg = val_of(Gv, KG);
  int pin_extra = p_ == 2 ? 3 : 1;
  if (vg + pin_extra > KG) return std::nullopt;
  i64 ug = p_ == 2 ? (i64)((Gv >> vg) & 7) : (i64)((Gv / pw_[vg]) % (u64)p_);
  return std::make_pair(vg, ug);
}

PadicEngine::ValueSet PadicEngine::invariant_values_impl(const std::array<i64, 4>& f,
                                                         const std::array<i64, 4>* f2, int shift,
                                                         const LocalValue& theta,
                                                         bool stop_after_first) {
  ValueSet res;
  auto vf_of = [&](const std::array<i64, 4>& c) {
    std::array<int, 4> vf;
    for (int i = 0; i < 4; ++i) {
      vf[i] = kmax_;
      if (c[i] != 0) {
        i64 v = std::abs(c[i]);
        vf[i] = 0;
        while (v % p_ == 0 && vf[i] < kmax_) {
          v /= p_;
          ++vf[i];
        }
      }
    }
    return vf;
  };
  std::array<int, 4> vf = vf_of(f);
  std::array<int, 4> vf2{};
  if (f2) vf2 = vf_of(*f2);

  std::vector<Node> cur = level_one();
  i64 nodes = 0;
  bool any_emitted = false;
  while (!cur.empty()) {
    std::vector<Node> next;
    for (const Node& n : cur) {
      if (++nodes > opt_.max_nodes) {
        res.exhausted = true;
        return res;
      }
      Analysis an = analyze(n);
      if (an.dead) continue;
      if (an.liftable_in_class) {
        if (auto d = pinned_square_data(n, f, vf)) {
#ifdef DIAGQ_PADIC_TRACE
          fprintf(stderr, "emit p=%lld j=%d x=(%llu,%llu,%llu,%llu) m=(%d,%d,%d,%d) vg=%d ug=%lld val=%d\n",
                  (long long)p_, n.j, (unsigned long long)n.x[0], (unsigned long long)n.x[1],
                  (unsigned long long)n.x[2], (unsigned long long)n.x[3], n.m[0], n.m[1], n.m[2],
                  n.m[3], d->first, (long long)d->second,
                  hilbert_from_local(p_, d->first, d->second, theta));
#endif
          res.attained[hilbert_from_local(p_, d->first, d->second, theta)] = true;
          any_emitted = true;
          if (res.non_constant() || stop_after_first) return res;
          continue;
        }
        if (f2) {
          if (auto d = pinned_square_data(n, *f2, vf2)) {
            res.attained[hilbert_from_local(p_, d->first, d->second, theta) ^ shift] = true;
            any_emitted = true;
            if (res.non_constant() || stop_after_first) return res;
            continue;
          }
        }
      }
      // refine the coordinate limiting F first; once the class certainly
      // contains points, refine toward pinning G instead
      int b = -1;
      if (!an.liftable_in_class)
        b = binding_coord(n);
      else {
        int bo = kmax_ + 1;
        for (int i = 0; i < 4; ++i) {
          if (i == n.j || n.m[i] >= opt_.max_digits || n.m[i] + 1 > kmax_) continue;
          int m = n.m[i];
          int vc = n.x[i] == 0 ? m : std::min(val_of(n.x[i], m), m);
          int o = vf[i] + std::min((p_ == 2 ? 1 : 0) + vc + m, 2 * m);
          if (o < bo) {
            bo = o;
            b = i;
          }
        }
      }
      if (b < 0) {
        res.exhausted = true;
        continue;
      }
      extend(n, b, next);
    }
    cur = std::move(next);
  }
  if (!any_emitted && !res.exhausted) res.no_points = true;
  return res;
}

PadicEngine::ValueSet PadicEngine::invariant_values(const std::array<i64, 4>& f,
                                                    const LocalValue& theta,
                                                    bool stop_after_first) {
  return invariant_values_impl(f, nullptr, 0, theta, stop_after_first);
}

PadicEngine::ValueSet PadicEngine::invariant_values_dual(const std::array<i64, 4>& f,
                                                         const std::array<i64, 4>& f2, int shift,
                                                         const LocalValue& theta,
                                                         bool stop_after_first) {
  return invariant_values_impl(f, &f2, shift, theta, stop_after_first);
}

std::optional<int> PadicEngine::symbol_shift(const std::array<i64, 4>& f,
                                             const std::array<i64, 4>& f2,
                                             const LocalValue& theta) {
  auto vf_of = [&](const std::array<i64, 4>& c) {
    std::array<int, 4> vf;
    for (int i = 0; i < 4; ++i) {
      vf[i] = kmax_;
      if (c[i] != 0) {
        i64 v = std::abs(c[i]);
        vf[i] = 0;
        while (v % p_ == 0 && vf[i] < kmax_) {
          v /= p_;
          ++vf[i];
        }
      }
    }
    return vf;
  };
  std::array<int, 4> vf = vf_of(f), vf2 = vf_of(f2);
  std::vector<Node> cur = level_one();
  i64 nodes = 0;
  while (!cur.empty()) {
    std::vector<Node> next;
    for (const Node& n : cur) {
      if (++nodes > opt_.max_nodes) return std::nullopt;
      Analysis an = analyze(n);
      if (an.dead) continue;
      if (an.liftable_in_class) {
        auto d1 = pinned_square_data(n, f, vf);
        auto d2 = pinned_square_data(n, f2, vf2);
        if (d1 && d2) {
          return hilbert_from_local(p_, d1->first, d1->second, theta) ^
                 hilbert_from_local(p_, d2->first, d2->second, theta);
        }
      }
      int b = binding_coord(n);
      if (b < 0) continue;
      extend(n, b, next);
    }
    cur = std::move(next);
  }
  return std::nullopt;
}

}  // namespace diagq
