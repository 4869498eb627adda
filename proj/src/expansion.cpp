#include "tripack/expansion.hpp"

#include "tripack/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

namespace tripack {

void ExpansionParams::validate() const {
  if (!(nu > 0) || !(nu <= tau) || !(tau < 0.5))
    throw InvariantError("expansion_params", "need 0 < nu <= tau < 1/2");
}

int robust_threshold(double nu, int n) {
  return static_cast<int>(std::ceil(nu * n - 1e-9));
}

std::vector<int> robust_outneighbourhood(const Digraph& g,
                                         std::span<const int> s, double nu) {
  int n = g.vertex_count();
  int thr = robust_threshold(nu, n);
  std::vector<char> in_s(n, 0);
  for (int v : s) in_s[v] = 1;
  std::vector<int> rn;
  for (int v = 0; v < n; ++v) {
    int d = 0;
    for (int u : g.in(v)) d += in_s[u];
    if (d >= thr) rn.push_back(v);
  }
  return rn;
}

bool verify_witness(const Digraph& g, const ExpansionParams& p,
                    const ExpansionWitness& w, std::string* why) {
  int n = g.vertex_count();
  int lo = static_cast<int>(std::ceil(p.tau * n - 1e-9));
  int hi = static_cast<int>(std::floor((1 - p.tau) * n + 1e-9));
  int sz = static_cast<int>(w.set.size());
  if (sz < lo || sz > hi) {
    if (why) *why = "witness size outside window";
    return false;
  }
  auto rn = robust_outneighbourhood(g, w.set, p.nu);
  int deficiency = sz + robust_threshold(p.nu, n) - static_cast<int>(rn.size());
  if (deficiency < 1) {
    if (why) *why = "set expands";
    return false;
  }
  if (static_cast<int>(rn.size()) != w.rn_size || deficiency != w.deficiency) {
    if (why) *why = "stated sizes disagree with recomputation";
    return false;
  }
  return true;
}

namespace {

std::vector<int> mask_to_set(uint32_t mask, int n) {
  std::vector<int> s;
  for (int v = 0; v < n; ++v)
    if (mask >> v & 1) s.push_back(v);
  return s;
}

}  // namespace

namespace {

struct ChunkBest {
  int def = 0;  // 0: none found
  uint32_t mask = 0;
  int rn = 0;
};

// Gray-code walk over the low `low_bits` with the high bits fixed: each step
// toggles one vertex and updates d^-(v, S) incrementally.
ChunkBest scan_chunk(const Digraph& g, uint32_t high_mask, int low_bits, int thr,
                     int lo, int hi) {
  int n = g.vertex_count();
  std::vector<int> cnt(n, 0);
  int size = 0, rn = 0;
  auto consider = [&](ChunkBest& best, uint32_t mask) {
    if (size < lo || size > hi) return;
    int deficiency = size + thr - rn;
    if (deficiency >= 1 && (best.def == 0 || deficiency < best.def))
      best = {deficiency, mask, rn};
  };
  for (int v = 0; v < n; ++v)
    if (high_mask >> v & 1) {
      ++size;
      for (int w : g.out(v))
        if (++cnt[w] == thr) ++rn;
    }
  ChunkBest best;
  consider(best, high_mask);
  uint64_t total = 1ULL << low_bits;
  for (uint64_t i = 1; i < total; ++i) {
    int v = std::countr_zero(i);
    uint64_t gray = i ^ (i >> 1);
    if ((gray >> v) & 1) {
      ++size;
      for (int w : g.out(v))
        if (++cnt[w] == thr) ++rn;
    } else {
      --size;
      for (int w : g.out(v))
        if (cnt[w]-- == thr) --rn;
    }
    consider(best, high_mask | static_cast<uint32_t>(gray));
  }
  return best;
}

}  // namespace

ExactExpansionResult is_robust_outexpander_exact(const Digraph& g,
                                                 const ExpansionParams& p,
                                                 int cutoff, int threads) {
  p.validate();
  int n = g.vertex_count();
  if (n > cutoff)
    throw InvariantError("exhaustive_cutoff",
                         "graph too large for exact decision; use the heuristic");
  int thr = robust_threshold(p.nu, n);
  int lo = static_cast<int>(std::ceil(p.tau * n - 1e-9));
  int hi = static_cast<int>(std::floor((1 - p.tau) * n + 1e-9));

  int high_bits = n >= 10 ? 4 : 0;  // fixed chunking keeps witnesses canonical
  int low_bits = n - high_bits;
  int chunks = 1 << high_bits;
  std::vector<ChunkBest> per_chunk(chunks);
  auto work = [&](int from, int to) {
    for (int c = from; c < to; ++c)
      per_chunk[c] = scan_chunk(g, static_cast<uint32_t>(c) << low_bits, low_bits,
                                thr, lo, hi);
  };
  int nthreads = std::max(1, std::min(threads, chunks));
  if (nthreads == 1) {
    work(0, chunks);
  } else {
    std::vector<std::thread> pool;
    int per = (chunks + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back(work, t * per, std::min(chunks, (t + 1) * per));
    for (auto& th : pool) th.join();
  }
  ChunkBest min_best;
  for (const auto& cb : per_chunk)
    if (cb.def >= 1 && (min_best.def == 0 || cb.def < min_best.def)) min_best = cb;

  ExactExpansionResult res;
  if (min_best.def == 0) {
    res.is_expander = true;
    return res;
  }
  ExpansionWitness w;
  w.set = mask_to_set(min_best.mask, n);
  w.rn_size = min_best.rn;
  w.deficiency = min_best.def;
  std::string why;
  if (!verify_witness(g, p, w, &why))
    throw InvariantError("witness_revalidation", why);
  res.is_expander = false;
  res.witness = std::move(w);
  return res;
}

std::optional<ExpansionWitness> find_non_expansion_witness(
    const Digraph& g, const ExpansionParams& p, long long budget,
    std::span<const std::vector<int>> hints, uint64_t seed) {
  p.validate();
  int n = g.vertex_count();
  int thr = robust_threshold(p.nu, n);
  int lo = static_cast<int>(std::ceil(p.tau * n - 1e-9));
  int hi = static_cast<int>(std::floor((1 - p.tau) * n + 1e-9));
  if (lo > hi) return std::nullopt;

  std::vector<char> in_s(n, 0);
  std::vector<int> cnt(n, 0);
  int size = 0, rn = 0;
  auto reset_state = [&](const std::vector<int>& s) {
    std::fill(in_s.begin(), in_s.end(), 0);
    std::fill(cnt.begin(), cnt.end(), 0);
    size = rn = 0;
    for (int v : s)
      if (!in_s[v]) {
        in_s[v] = 1;
        ++size;
        for (int w : g.out(v))
          if (++cnt[w] == thr) ++rn;
      }
  };
  auto toggle = [&](int v) {
    if (in_s[v]) {
      in_s[v] = 0;
      --size;
      for (int w : g.out(v))
        if (cnt[w]-- == thr) --rn;
    } else {
      in_s[v] = 1;
      ++size;
      for (int w : g.out(v))
        if (++cnt[w] == thr) ++rn;
    }
  };
  long long spent = 0;
  auto objective = [&]() { return rn - size; };  // witness iff <= thr-1, in window

  auto make_witness = [&]() -> std::optional<ExpansionWitness> {
    if (size < lo || size > hi) return std::nullopt;
    int deficiency = size + thr - rn;
    if (deficiency < 1) return std::nullopt;
    ExpansionWitness w;
    for (int v = 0; v < n; ++v)
      if (in_s[v]) w.set.push_back(v);
    w.rn_size = rn;
    w.deficiency = deficiency;
    if (!verify_witness(g, p, w)) return std::nullopt;  // never a false positive
    return w;
  };

  auto local_search = [&]() -> std::optional<ExpansionWitness> {
    while (spent < budget) {
      if (auto w = make_witness()) return w;
      // lexicographically smallest improving toggle (ties to determinism)
      int best_v = -1, best_obj = objective();
      for (int v = 0; v < n; ++v) {
        int new_size = size + (in_s[v] ? -1 : 1);
        if (new_size < lo || new_size > hi) continue;
        toggle(v);
        ++spent;
        int obj = objective();
        if (obj < best_obj) {
          best_obj = obj;
          best_v = v;
        }
        toggle(v);
      }
      if (best_v == -1) return std::nullopt;  // local minimum, no witness
      toggle(best_v);
    }
    return std::nullopt;
  };

  for (const auto& h : hints) {
    if (h.empty()) continue;
    reset_state(h);
    // clamp into the window by greedy removal/addition
    while (size > hi)
      for (int v = n - 1; v >= 0 && size > hi; --v)
        if (in_s[v]) toggle(v);
    while (size < lo)
      for (int v = 0; v < n && size < lo; ++v)
        if (!in_s[v]) toggle(v);
    if (auto w = local_search()) return w;
    if (spent >= budget) return std::nullopt;
  }

  Rng rng(seed);
  long long restarts = std::max<long long>(1, budget / 1000);
  for (long long r = 0; r < restarts && spent < budget; ++r) {
    int target = lo + (hi > lo ? rng.uniform_int(0, hi - lo) : 0);
    std::vector<int> all(n);
    for (int v = 0; v < n; ++v) all[v] = v;
    rng.shuffle(all);
    all.resize(target);
    reset_state(all);
    if (auto w = local_search()) return w;
  }
  return std::nullopt;
}

std::vector<int> Partition4::v1s() const {
  auto r = v11;
  r.insert(r.end(), v12.begin(), v12.end());
  return r;
}
std::vector<int> Partition4::v2s() const {
  auto r = v21;
  r.insert(r.end(), v22.begin(), v22.end());
  return r;
}
std::vector<int> Partition4::vs1() const {
  auto r = v11;
  r.insert(r.end(), v21.begin(), v21.end());
  return r;
}
std::vector<int> Partition4::vs2() const {
  auto r = v12;
  r.insert(r.end(), v22.begin(), v22.end());
  return r;
}

Partition4 extract_partition4(const Digraph& g, const ExpansionWitness& w,
                              const ExpansionParams& p) {
  std::string why;
  if (!verify_witness(g, p, w, &why))
    throw InvariantError("witness_invalid", why);
  int n = g.vertex_count();
  std::vector<char> in_s(n, 0), in_rn(n, 0);
  for (int v : w.set) in_s[v] = 1;
  for (int v : robust_outneighbourhood(g, w.set, p.nu)) in_rn[v] = 1;
  Partition4 part;
  for (int v = 0; v < n; ++v) {
    if (in_s[v] && in_rn[v])
      part.v11.push_back(v);
    else if (in_s[v])
      part.v12.push_back(v);
    else if (in_rn[v])
      part.v21.push_back(v);
    else
      part.v22.push_back(v);
  }
  if (part.v1s().empty() || part.v2s().empty() || part.vs1().empty() ||
      part.vs2().empty())
    throw InvariantError("degenerate_witness", "empty row or column union");
  return part;
}

Partition4Report verify_partition4(const Digraph& g, const Partition4& p,
                                   double nu, double alpha) {
  Partition4Report rep;
  int n = g.vertex_count();
  rep.d = g.regular_degree();
  rep.regular = rep.d >= 0;
  if (!rep.regular) throw InvariantError("regular", "graph is not regular");

  auto v1s = p.v1s(), v2s = p.v2s(), vs1 = p.vs1(), vs2 = p.vs2();
  rep.min_union_size = static_cast<int>(
      std::min({v1s.size(), v2s.size(), vs1.size(), vs2.size()}));
  rep.threshold_i_lemma = rep.d - std::sqrt(nu) * n;
  rep.threshold_i_strict = rep.d - std::sqrt(nu) * n / 3.0;
  rep.i_pass_lemma = rep.min_union_size >= rep.threshold_i_lemma;
  rep.i_pass_strict = rep.min_union_size >= rep.threshold_i_strict;

  std::vector<char> in_vs2(n, 0), in_vs1(n, 0), in_v1s(n, 0), in_v2s(n, 0);
  for (int v : vs2) in_vs2[v] = 1;
  for (int v : vs1) in_vs1[v] = 1;
  for (int v : v1s) in_v1s[v] = 1;
  for (int v : v2s) in_v2s[v] = 1;
  long long cross = 0;
  for (auto [u, v] : g.edges()) {
    if (in_v1s[u] && in_vs2[v]) ++cross;
    if (in_v2s[u] && in_vs1[v]) ++cross;
  }
  rep.cross_mass = cross;
  rep.bound_ii = 4.0 * nu * n * static_cast<double>(n);
  rep.ii_pass = cross <= rep.bound_ii;

  rep.size_gap = std::llabs(static_cast<long long>(p.v12.size()) -
                            static_cast<long long>(p.v21.size()));
  rep.bound_iii = 4.0 * nu / alpha * n;
  rep.iii_pass = rep.size_gap <= rep.bound_iii;
  return rep;
}

}  // namespace tripack
