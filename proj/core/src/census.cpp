#include "diagq/census.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <mutex>
#include <unordered_map>

#include "json.hpp"

namespace diagq {

FamilyDecomposition decompose(const SurfaceTuple& t) {
  FamilyDecomposition d;
  d.A = t.a;
  d.u = {1, 1, 1, 1};
  d.v = d.w = d.wL = d.wR = {1, 1, 1, 1, 1, 1};

  // collect the large primes of theta with their per-coefficient exponents
  std::unordered_map<i64, std::array<int, 4>> big;
  for (int i = 0; i < 4; ++i)
    for (auto [p, e] : factorize(t.a[i]))
      if (p > kSmallPrimeBound) big[p][i] = e;

  SquareClass th = t.theta_square_class();
  for (auto& [p, e] : big) {
    int nz = 0, total = 0, last = -1;
    for (int i = 0; i < 4; ++i) {
      if (e[i] > 0) {
        ++nz;
        last = i;
      }
      total += e[i];
    }
    if (nz == 1 && e[last] == 2) {
      d.u[last] *= p;
      d.A[last] /= p * p;
      continue;
    }
    if (nz == 2 && total == 2) {
      int k = -1, l = -1;
      for (int i = 0; i < 4; ++i)
        if (e[i] == 1) (k < 0 ? k : l) = i;
      // route by the square class of theta at p; v_p(theta) = 2 keeps p out
      // of the kernel, so the Legendre symbol of the kernel decides
      i64 kk = th.kernel % p;
      if (th.sign < 0) kk = (p - kk) % p;
      bool square_at_p = legendre(kk, p) == 1;
      int pi = pair_index(k, l);
      (square_at_p ? d.v : d.w)[pi] *= p;
      d.A[k] /= p;
      d.A[l] /= p;
      continue;
    }
    // stays in A; Phi membership needs p cubed into theta_A
    if (total < 3) d.A_in_Phi = false;
  }

  // split w into wL/wR: p | wL iff -a_k/a_l is a p-adic unit square; theta a
  // local nonsquare makes the two pair conditions mutually exclusive
  for (int pi = 0; pi < 6; ++pi) {
    if (d.w[pi] == 1) continue;
    auto [k, l] = kPairs[pi];
    int m = -1, n = -1;
    for (int i = 0; i < 4; ++i)
      if (i != k && i != l) (m < 0 ? m : n) = i;
    for (auto [p, e] : factorize(d.w[pi])) {
      (void)e;
      bool left = is_kth_power_local(Rat(-t.a[k], t.a[l]), Place::finite(p), 2);
      bool right = is_kth_power_local(Rat(-t.a[m], t.a[n]), Place::finite(p), 2);
      if (left == right) throw std::logic_error("decompose: wL/wR split not exclusive");
      (left ? d.wL : d.wR)[pi] *= p;
      // the paper's split uses fourth powers; when neither ratio is one the
      // surface has no Q_p-point and the split is flagged
      bool l4 = is_kth_power_local(Rat(-t.a[k], t.a[l]), Place::finite(p), 4);
      bool r4 = is_kth_power_local(Rat(-t.a[m], t.a[n]), Place::finite(p), 4);
      if (!l4 && !r4) d.insoluble_w_primes.push_back(p);
    }
  }
  for (int i = 0; i < 4; ++i) {
    i128 m = (i128)d.u[i] * d.u[i];
    for (int l = 0; l < 4; ++l)
      if (l != i) m *= (i128)d.v[pair_index(i, l)] * d.w[pair_index(i, l)];
    if (m > INT64_MAX) throw std::overflow_error("decompose: M overflow");
    d.M[i] = (i64)m;
  }
  return d;
}

SurfaceTuple reconstruct(const FamilyDecomposition& d) {
  std::array<i64, 4> a{};
  for (int i = 0; i < 4; ++i) {
    i128 x = (i128)d.A[i] * d.M[i];
    if (x > INT64_MAX || x < INT64_MIN) throw std::overflow_error("reconstruct");
    a[i] = (i64)x;
  }
  return SurfaceTuple(a);
}

SurfaceTuple FamilySpec::member(const std::array<i64, 4>& u) const {
  std::array<i64, 4> a{};
  for (int k = 0; k < 4; ++k) {
    i128 x = (i128)A[k] * u[k] * u[k];
    for (int l = 0; l < 4; ++l)
      if (l != k) {
        int pi = pair_index(k, l);
        x *= (i128)v[pi] * wL[pi] * wR[pi];
      }
    if (x > INT64_MAX || x < INT64_MIN) throw std::overflow_error("family member overflow");
    a[k] = (i64)x;
  }
  return SurfaceTuple(a);
}

namespace {

// ---------------------------------------------------------------------------
// census internals
// ---------------------------------------------------------------------------

struct ValueInfo {
  SquareClass sq;
  uint32_t odd_prime_mask = 0;  // bit i: kOddPrimes[i] divides the value
};

constexpr std::array<i64, 17> kOddPrimes{3,  5,  7,  11, 13, 17, 19, 23, 29,
                                         31, 37, 41, 43, 47, 53, 59, 61};

struct OddPrimeTable {
  i64 p;
  std::vector<uint8_t> cosetid;  // index by residue 1..p-1: class in F_p^x / (F_p^x)^4
  std::vector<uint8_t> memo;     // 65536 entries: 0 unknown, 1 insoluble, 2 soluble
};

struct CensusContext {
  i64 T;
  std::vector<i64> vals;                    // the 2T coefficient values, ascending
  std::vector<ValueInfo> vinfo;             // per value
  std::array<OddPrimeTable, 17> ptab;
  std::vector<i64> spf;                     // unused placeholder
};

uint8_t coset_of(const OddPrimeTable& tab, i64 p, i64 unit) {
  i64 r = ((unit % p) + p) % p;
  return tab.cosetid[(size_t)r];
}

bool odd_prime_soluble(CensusContext& ctx, int pidx, const SurfaceTuple& t) {
  OddPrimeTable& tab = ctx.ptab[pidx];
  i64 p = tab.p;
  SurfaceTuple red = equivalent_reduce(t, p);
  // canonical 16-bit key: sorted (valuation, coset) nibbles
  std::array<uint8_t, 4> nib{};
  for (int i = 0; i < 4; ++i) {
    int e = vp(red.a[i], p);
    i64 unit = red.a[i] / ipow(p, e);
    nib[i] = (uint8_t)((e << 2) | coset_of(tab, p, unit));
  }
  std::sort(nib.begin(), nib.end());
  uint32_t key = (uint32_t)nib[0] | ((uint32_t)nib[1] << 4) | ((uint32_t)nib[2] << 8) |
                 ((uint32_t)nib[3] << 12);
  uint8_t& slot = tab.memo[key];
  if (slot == 0) slot = unit_subset_soluble(red, p).soluble ? 2 : 1;
  return slot == 2;
}

struct RepVerdict {
  uint8_t theta_class = 0;
  bool soluble = false;
  bool nowhere_prolific = false;
  bool obstructed = false;
  bool caveat = false;
  bool inconclusive = false;
};

std::string profile_string(const PlaceInvariantProfile& prof) {
  if (!prof.everywhere_soluble) return "insoluble@" + prof.failing_place.str();
  std::string out;
  auto canon = prof.canonical_values();
  for (size_t i = 0; i < prof.places.size(); ++i) {
    if (!out.empty()) out += '|';
    out += prof.places[i].place.str() + ":";
    switch (prof.places[i].status.kind) {
      case LocalKind::constant: out += "c" + std::to_string(canon[i]); break;
      case LocalKind::non_constant: out += "n"; break;
      case LocalKind::skipped: out += "-"; break;
      case LocalKind::empty: out += "e"; break;
      default: out += "?"; break;
    }
  }
  return out;
}

std::string flags_string(const RepVerdict& v) {
  std::string f;
  if (v.nowhere_prolific) f += 'P';
  if (v.caveat) f += 'G';
  if (v.inconclusive) f += 'I';
  return f;
}

// rank of a non-decreasing index 4-tuple among all such (colex order)
struct MultisetRanker {
  std::vector<std::array<u64, 5>> binom;
  explicit MultisetRanker(int V) {
    binom.resize(V + 4);
    for (int n = 0; n < V + 4; ++n) {
      binom[n][0] = 1;
      for (int k = 1; k <= 4; ++k)
        binom[n][k] = n == 0 ? 0 : binom[n - 1][k - 1] + binom[n - 1][k];
    }
  }
  u64 total(int V) const { return binom[V + 3][4]; }
  u64 rank(const std::array<int, 4>& idx) const {
    // idx non-decreasing; strictly increasing after the +k shift
    u64 r = 0;
    for (int k = 0; k < 4; ++k) r += binom[idx[k] + k][k + 1];
    return r;
  }
};

int multiplicity(const std::array<int, 4>& idx) {
  int perms = 24;
  int run = 1;
  for (int i = 1; i < 4; ++i) {
    if (idx[i] == idx[i - 1])
      ++run;
    else
      run = 1;
    if (run == 2) perms /= 2;
    if (run == 3) perms /= 3;
    if (run == 4) perms /= 4;
  }
  return perms;
}

}  // namespace

CensusReport census_run(const CensusOptions& opt) {
  auto t_start = std::chrono::steady_clock::now();
  CensusReport report;
  report.tmax = opt.tmax;
  const i64 T = opt.tmax;
  if (T < 1) throw std::invalid_argument("census_run: tmax must be >= 1");

  CensusContext ctx;
  ctx.T = T;
  for (i64 v = -T; v <= T; ++v)
    if (v != 0) ctx.vals.push_back(v);
  const int V = (int)ctx.vals.size();
  ctx.vinfo.resize(V);
  for (int i = 0; i < V; ++i) {
    ctx.vinfo[i].sq = square_class(ctx.vals[i]);
    for (size_t j = 0; j < kOddPrimes.size(); ++j)
      if (std::abs(ctx.vals[i]) % kOddPrimes[j] == 0) ctx.vinfo[i].odd_prime_mask |= 1u << j;
  }
  for (size_t j = 0; j < kOddPrimes.size(); ++j) {
    i64 p = kOddPrimes[j];
    ctx.ptab[j].p = p;
    ctx.ptab[j].memo.assign(65536, 0);
    ctx.ptab[j].cosetid.assign((size_t)p, 0);
    // discrete-log classes mod fourth powers via a generator
    i64 g = 2;
    while (true) {
      bool gen = true;
      for (auto [q, e] : factorize(p - 1)) {
        (void)e;
        if (pow_mod((u64)g, (u64)(p - 1) / q, (u64)p) == 1) gen = false;
      }
      if (gen) break;
      ++g;
    }
    i64 x = 1;
    for (i64 d = 0; d < p - 1; ++d) {
      ctx.ptab[j].cosetid[(size_t)x] = (uint8_t)(d % 4);
      x = (i64)mul_mod((u64)x, (u64)g, (u64)p);
    }
  }

  // enumerate the sorted coefficient representatives
  MultisetRanker ranker(V);
  u64 nreps = ranker.total(V);
  std::vector<std::array<uint8_t, 4>> reps;
  reps.reserve(nreps);
  for (int i0 = 0; i0 < V; ++i0)
    for (int i1 = i0; i1 < V; ++i1)
      for (int i2 = i1; i2 < V; ++i2)
        for (int i3 = i2; i3 < V; ++i3)
          reps.push_back({(uint8_t)i0, (uint8_t)i1, (uint8_t)i2, (uint8_t)i3});
  assert(reps.size() == nreps);

  std::vector<RepVerdict> verdicts(nreps);
  std::unordered_map<u64, std::string> profiles;
  std::mutex profiles_mu;
  bool keep_all_profiles = opt.rows == RowMode::all || opt.rows == RowMode::soluble;

  BrauerOptions bopt = opt.brauer;
  bopt.assume_everywhere_soluble = true;
  bopt.early_stop = true;
  bopt.force_exhaustive = !opt.fast_paths;
  LocalOptions lopt = opt.brauer.local;
  lopt.force_generic = !opt.fast_paths;

  const int nshards = std::max(opt.workers * 8, 1);
  const u64 chunk = (nreps + nshards - 1) / nshards;
  // per-shard odd-prime memo copies would race; share via per-worker context copies
  std::vector<CensusContext> wctx((size_t)std::max(opt.workers, 1));
  for (auto& c : wctx) c = ctx;

  std::atomic<int> worker_ids{0};
  thread_local int tl_worker = -1;
  auto shard_fn = [&](int shard) {
    static thread_local int wid = -1;
    if (wid < 0) wid = worker_ids.fetch_add(1) % std::max(opt.workers, 1);
    CensusContext& c = wctx[(size_t)wid];
    u64 lo = (u64)shard * chunk, hi = std::min(nreps, lo + chunk);
    for (u64 r = lo; r < hi; ++r) {
      const auto& idx = reps[r];
      std::array<i64, 4> a{c.vals[idx[0]], c.vals[idx[1]], c.vals[idx[2]], c.vals[idx[3]]};
      SurfaceTuple t(a);
      RepVerdict v;
      // theta class from the per-value square classes
      SquareClass sq = c.vinfo[idx[0]].sq;
      for (int i = 1; i < 4; ++i) {
        const SquareClass& o = c.vinfo[idx[i]].sq;
        sq.sign *= o.sign;
        i64 g = std::gcd(sq.kernel, o.kernel);
        sq.kernel = (sq.kernel / g) * (o.kernel / g);
      }
      ThetaClass tc = sq.kernel == 1 ? (sq.sign > 0 ? ThetaClass::square : ThetaClass::minus_square)
                                     : ThetaClass::neither;
      v.theta_class = (uint8_t)tc;
      v.caveat = has_generator_caveat(t);

      // everywhere-soluble: real, odd primes <= 33 or dividing theta, then 2
      bool pos = false, neg = false;
      for (i64 x : a) (x > 0 ? pos : neg) = true;
      bool soluble = pos && neg;
      Place failing = Place::real();
      if (soluble) {
        uint32_t mask = 0;
        for (int i = 0; i < 4; ++i) mask |= c.vinfo[idx[i]].odd_prime_mask;
        for (size_t j = 0; j < kOddPrimes.size() && soluble; ++j) {
          bool relevant = kOddPrimes[j] <= 33 || (mask >> j) & 1;
          if (!relevant) continue;
          if (opt.fast_paths) {
            if (!odd_prime_soluble(c, (int)j, t)) {
              soluble = false;
              failing = Place::finite(kOddPrimes[j]);
            }
          } else {
            if (!local_soluble(t, Place::finite(kOddPrimes[j]), lopt).soluble) {
              soluble = false;
              failing = Place::finite(kOddPrimes[j]);
            }
          }
        }
      }
      if (soluble) {
        if (!local_soluble(t, Place::finite(2), lopt).soluble) {
          soluble = false;
          failing = Place::finite(2);
        }
      }
      v.soluble = soluble;

      std::string prof_str;
      if (!soluble) {
        if (keep_all_profiles) prof_str = "insoluble@" + failing.str();
      } else {
        auto res = decide_A_obstruction(t, bopt);
        v.nowhere_prolific = res.nowhere_prolific;
        v.obstructed = res.verdict == Verdict::obstruction;
        v.inconclusive = res.verdict == Verdict::inconclusive;
        if (keep_all_profiles || v.obstructed) prof_str = profile_string(res.profile);
      }
      verdicts[r] = v;
      if (!prof_str.empty()) {
        std::lock_guard<std::mutex> lk(profiles_mu);
        profiles[r] = std::move(prof_str);
      }
    }
  };
  parallel_shards(nshards, std::max(opt.workers, 1), shard_fn);
  (void)tl_worker;

  // aggregate: each representative counts with its permutation multiplicity
  std::vector<std::array<ClassCounts, 3>> by_height((size_t)T + 1);
  for (u64 r = 0; r < nreps; ++r) {
    const auto& idx = reps[r];
    if (opt.coprime_only) {
      i64 g = 0;
      for (int i = 0; i < 4; ++i) g = std::gcd(g, std::abs(ctx.vals[idx[i]]));
      if (g != 1) continue;
    }
    const RepVerdict& v = verdicts[r];
    i64 h = 0;
    for (int i = 0; i < 4; ++i) h = std::max(h, std::abs(ctx.vals[idx[i]]));
    int mult = multiplicity({idx[0], idx[1], idx[2], idx[3]});
    ClassCounts& cc = by_height[(size_t)h][v.theta_class];
    cc.tuples += mult;
    if (v.soluble) cc.soluble += mult;
    if (v.soluble && v.nowhere_prolific) cc.nowhere_prolific += mult;
    if (v.obstructed) cc.obstructed += mult;
    if (v.caveat) cc.generator_caveat += mult;
    if (v.inconclusive) {
      cc.inconclusive += mult;
      report.inconclusive_real += mult;
    }
  }
  report.series.resize((size_t)T);
  std::array<ClassCounts, 3> acc{};
  for (i64 h = 1; h <= T; ++h) {
    for (int c = 0; c < 3; ++c) acc[c] += by_height[(size_t)h][c];
    report.series[(size_t)(h - 1)] = acc;
  }
  report.by_class = acc;

  // rows, in lexicographic tuple order
  if (!opt.csv_path.empty()) {
    std::ofstream out(opt.csv_path);
    if (!out) throw std::runtime_error("census_run: cannot open " + opt.csv_path);
    out << "a0,a1,a2,a3,theta_class,soluble,profile,obstructed,flags\n";
    std::array<int, 4> iv{};
    for (iv[0] = 0; iv[0] < V; ++iv[0])
      for (iv[1] = 0; iv[1] < V; ++iv[1])
        for (iv[2] = 0; iv[2] < V; ++iv[2])
          for (iv[3] = 0; iv[3] < V; ++iv[3]) {
            std::array<int, 4> s = iv;
            std::sort(s.begin(), s.end());
            u64 r = ranker.rank(s);
            const RepVerdict& v = verdicts[r];
            if (opt.rows == RowMode::soluble && !v.soluble) continue;
            if (opt.rows == RowMode::obstructed && !v.obstructed) continue;
            if (opt.coprime_only) {
              i64 g = 0;
              for (int i = 0; i < 4; ++i) g = std::gcd(g, std::abs(ctx.vals[iv[i]]));
              if (g != 1) continue;
            }
            auto it = profiles.find(r);
            out << ctx.vals[iv[0]] << ',' << ctx.vals[iv[1]] << ',' << ctx.vals[iv[2]] << ','
                << ctx.vals[iv[3]] << ',' << theta_class_name((ThetaClass)v.theta_class) << ','
                << (v.soluble ? 1 : 0) << ',' << (it == profiles.end() ? "" : it->second) << ','
                << (v.obstructed ? 1 : 0) << ',' << flags_string(v) << '\n';
          }
  }

  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

  if (!opt.json_path.empty()) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["config"] = {{"tmax", opt.tmax},
                   {"workers", opt.workers},
                   {"rows", opt.rows == RowMode::all        ? "all"
                            : opt.rows == RowMode::soluble ? "soluble"
                                                           : "obstructed"},
                   {"fast_paths", opt.fast_paths},
                   {"coprime_only", opt.coprime_only},
                   {"seed", opt.seed}};
    auto cc_json = [](const ClassCounts& c) {
      return nlohmann::json{{"tuples", c.tuples},
                            {"soluble", c.soluble},
                            {"nowhere_prolific", c.nowhere_prolific},
                            {"obstructed", c.obstructed},
                            {"generator_caveat", c.generator_caveat},
                            {"inconclusive", c.inconclusive}};
    };
    nlohmann::json results;
    const char* names[3] = {"square", "minus_square", "neither"};
    for (int c = 0; c < 3; ++c) results["by_class"][names[c]] = cc_json(report.by_class[c]);
    results["totals"] = cc_json(report.totals());
    results["inconclusive_real"] = report.inconclusive_real;
    nlohmann::json series = nlohmann::json::array();
    for (i64 h = 1; h <= T; ++h) {
      nlohmann::json row{{"height", h}};
      for (int c = 0; c < 3; ++c)
        row[names[c]] = {{"soluble", report.series[(size_t)(h - 1)][c].soluble},
                         {"obstructed", report.series[(size_t)(h - 1)][c].obstructed}};
      series.push_back(row);
    }
    results["series"] = series;
    j["results"] = results;
    j["timing_seconds"] = report.seconds;
    std::ofstream out(opt.json_path);
    if (!out) throw std::runtime_error("census_run: cannot open " + opt.json_path);
    out << j.dump(2) << "\n";
  }
  return report;
}

FamilyCheckResult family_fifty_percent_check(const FamilySpec& fam, i64 u_box, i64 min_members,
                                             const BrauerOptions& opt) {
  // preconditions: theta_A not a square, some w != 1, all w-primes = 3 mod 4
  // with theta_A a local nonsquare (the locally-not-prolific family shape)
  SurfaceTuple base = fam.member({1, 1, 1, 1});
  if (base.theta_class() == ThetaClass::square)
    throw std::invalid_argument("family check: theta_A must not be a rational square");
  bool some_w = false;
  for (int pi = 0; pi < 6; ++pi)
    if (fam.wL[pi] * fam.wR[pi] != 1) some_w = true;
  if (!some_w) throw std::invalid_argument("family check: need some w != 1");
  for (int pi = 0; pi < 6; ++pi)
    for (i64 wpart : {fam.wL[pi], fam.wR[pi]})
      for (auto [p, e] : factorize(wpart)) {
        (void)e;
        if (p % 4 != 3 || theta_is_local_square(base, Place::finite(p)))
          throw std::invalid_argument("family check: w-primes must be 3 mod 4 nonsquare places");
      }

  // eta: the reference member is everywhere soluble with constant invariants
  BrauerOptions full = opt;
  full.early_stop = false;
  auto ref = decide_A_obstruction(base, full);
  if (ref.verdict == Verdict::not_everywhere_soluble || !ref.nowhere_prolific)
    throw std::invalid_argument("family check: eta-condition fails for the reference member");

  // admissible u: squarefree, coprime to 2 theta_A and the fixed v/w parts,
  // a local square at every place of the base surface (members then agree
  // with the reference at those places), varying in the first slot
  std::vector<i64> bad;
  for (i64 c : base.a)
    for (auto [p, e] : factorize(c)) {
      (void)e;
      bad.push_back(p);
    }
  std::sort(bad.begin(), bad.end());
  bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
  auto admissible = [&](i64 cand) {
    if (cand % 8 != 1) return false;  // square in Z_2
    for (i64 p : bad) {
      if (p == 2) continue;
      if (cand % p == 0) return false;
      if (legendre(cand, p) == -1) return false;
    }
    auto fac = factorize(cand);
    for (auto [p, e] : fac)
      if (e > 1) return false;
    return true;
  };

  auto criterion = [&](const std::array<i64, 4>& u) {
    int prod = 1;
    for (int pi = 0; pi < 6; ++pi) {
      auto [k, l] = kPairs[pi];
      int m = -1, n = -1;
      for (int i = 0; i < 4; ++i)
        if (i != k && i != l) (m < 0 ? m : n) = i;
      if (fam.wL[pi] != 1) prod *= jacobi(u[k] * u[l], fam.wL[pi]);
      if (fam.wR[pi] != 1) prod *= jacobi(u[m] * u[n], fam.wR[pi]);
    }
    return prod;
  };

  FamilyCheckResult res;
  int ref_crit = criterion({1, 1, 1, 1});
  int delta = ref.verdict == Verdict::obstruction ? ref_crit : -ref_crit;
  res.delta = delta == -1 ? 1 : 0;

  res.members = 1;
  res.matches = 1;
  if (ref.verdict == Verdict::obstruction) res.obstructed = 1;
  for (i64 cand = 3; cand <= u_box && res.members < min_members; cand += 2) {
    if (!admissible(cand)) continue;
    std::array<i64, 4> u{cand, 1, 1, 1};
    SurfaceTuple t = fam.member(u);
    auto got = decide_A_obstruction(t, opt);
    if (got.verdict == Verdict::inconclusive) continue;
    bool obstructed = got.verdict == Verdict::obstruction;
    bool predicted = criterion(u) == delta;
    ++res.members;
    if (obstructed) ++res.obstructed;
    if (obstructed == predicted) ++res.matches;
  }
  return res;
}

ExponentFit fit_log_exponent(const std::vector<std::pair<double, double>>& series) {
  if (series.size() < 4) throw std::invalid_argument("fit_log_exponent: need >= 4 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<std::pair<double, double>> pts;
  for (auto [T, count] : series) {
    if (count <= 0 || T <= 1) throw std::invalid_argument("fit_log_exponent: degenerate series");
    double x = std::log(std::log(T));
    double y = std::log(count / (T * T));
    pts.push_back({x, y});
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = (double)pts.size();
  double den = n * sxx - sx * sx;
  if (std::abs(den) < 1e-12) throw std::invalid_argument("fit_log_exponent: degenerate abscissae");
  ExponentFit fit;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (auto [x, y] : pts)
    fit.max_residual = std::max(fit.max_residual, std::abs(y - fit.slope * x - fit.intercept));
  return fit;
}

}  // namespace diagq
