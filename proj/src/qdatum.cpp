#include "qgr/qdatum.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace qgr {

namespace {

struct Unfolding {
  CartanData unfolded;
  std::vector<int> sigma;
  std::vector<int> fold;
};

Unfolding unfolding_of(const CartanData& g) {
  Unfolding u;
  int n = g.rank;
  switch (g.series) {
    case Series::A:
    case Series::D:
    case Series::E: {
      u.unfolded = g;
      u.sigma.resize(size_t(n));
      u.fold.resize(size_t(n));
      for (int i = 1; i <= n; ++i) {
        u.sigma[size_t(i - 1)] = i;
        u.fold[size_t(i - 1)] = i;
      }
      break;
    }
    case Series::B: {
      int m = 2 * n - 1;
      u.unfolded = build_cartan(Series::A, m);
      u.sigma.resize(size_t(m));
      u.fold.resize(size_t(m));
      for (int k = 1; k <= m; ++k) {
        u.sigma[size_t(k - 1)] = m + 1 - k;
        u.fold[size_t(k - 1)] = std::min(k, m + 1 - k);
      }
      break;
    }
    case Series::C: {
      int m = n + 1;
      u.unfolded = build_cartan(Series::D, m);
      u.sigma.resize(size_t(m));
      u.fold.resize(size_t(m));
      for (int k = 1; k <= m; ++k) {
        u.sigma[size_t(k - 1)] = k;
        u.fold[size_t(k - 1)] = std::min(k, n);
      }
      u.sigma[size_t(m - 2)] = m;
      u.sigma[size_t(m - 1)] = m - 1;
      break;
    }
    case Series::F: {
      u.unfolded = build_cartan(Series::E, 6);
      u.sigma = {6, 2, 5, 4, 3, 1};
      u.fold = {1, 4, 2, 3, 2, 1};
      break;
    }
    case Series::G: {
      u.unfolded = build_cartan(Series::D, 4);
      u.sigma = {3, 2, 4, 1};
      u.fold = {1, 2, 1, 1};
      break;
    }
  }
  return u;
}

}  // namespace

bool QDatum::is_source(int iv) const {
  for (int jv = 1; jv <= rank_unfolded(); ++jv)
    if (unfolded.adjacent(iv, jv) && height(iv) <= height(jv)) return false;
  return true;
}

bool QDatum::is_sink(int iv) const {
  for (int jv = 1; jv <= rank_unfolded(); ++jv)
    if (unfolded.adjacent(iv, jv) && height(iv) >= height(jv)) return false;
  return true;
}

int QDatum::parity(int i_folded) const {
  for (int iv = 1; iv <= rank_unfolded(); ++iv)
    if (bar(iv) == i_folded) return ((height(iv) % 2) + 2) % 2;
  fail("parity: bad folded index");
}

bool QDatum::in_hat_delta(int iv, int p) const {
  int step = 2 * dbar(iv);
  int diff = height(iv) - p;
  return ((diff % step) + step) % step == 0;
}

bool QDatum::in_hat_delta_le(int iv, int p) const {
  return p <= height(iv) && in_hat_delta(iv, p);
}

std::optional<int> QDatum::lift(int i, int p) const {
  for (int iv = 1; iv <= rank_unfolded(); ++iv)
    if (bar(iv) == i && in_hat_delta(iv, p)) return iv;
  return std::nullopt;
}

bool QDatum::in_hat_I(int i, int p) const { return lift(i, p).has_value(); }

bool QDatum::in_hat_I_le(int i, int p) const {
  auto iv = lift(i, p);
  return iv.has_value() && p <= height(*iv);
}

std::string QDatum::describe() const {
  std::ostringstream os;
  os << folded.type_name() << " (unfolded " << unfolded.type_name() << "), xi = (";
  for (int iv = 1; iv <= rank_unfolded(); ++iv) os << (iv > 1 ? "," : "") << height(iv);
  os << ")";
  return os.str();
}

std::vector<ValidationIssue> validate_qdatum(const QDatum& q) {
  std::vector<ValidationIssue> issues;
  const auto& gu = q.unfolded;
  // clause (1): equal-orbit-size neighbours differ by exactly d
  for (int iv = 1; iv <= gu.rank; ++iv) {
    for (int jv = iv + 1; jv <= gu.rank; ++jv) {
      if (!gu.adjacent(iv, jv)) continue;
      int di = q.dbar(iv), dj = q.dbar(jv);
      if (di != dj) continue;
      if (std::abs(q.height(iv) - q.height(jv)) != di) {
        std::ostringstream os;
        os << "|xi_" << iv << " - xi_" << jv << "| = " << std::abs(q.height(iv) - q.height(jv))
           << ", expected " << di;
        issues.push_back({"height-step", os.str()});
      }
    }
  }
  // clause (2): mixed pairs, unique descent anchor in the long orbit
  int r = q.folded.lacing;
  for (int i = 1; i <= q.rank_folded(); ++i) {
    if (q.folded.d(i) != 1) continue;
    for (int j = 1; j <= q.rank_folded(); ++j) {
      if (r == 1 || q.folded.d(j) != r || !q.folded.adjacent(i, j)) continue;
      // the orbit i is a single vertex
      int iv = 0;
      for (int v = 1; v <= gu.rank; ++v)
        if (q.bar(v) == i) iv = v;
      int anchors = 0;
      for (int jv = 1; jv <= gu.rank; ++jv) {
        if (q.bar(jv) != j || !gu.adjacent(iv, jv)) continue;
        if (std::abs(q.height(iv) - q.height(jv)) != 1) continue;
        bool descent = true;
        int v = jv;
        for (int k = 1; k < r; ++k) {
          int w = q.sig(v);
          if (q.height(w) != q.height(v) - 2) descent = false;
          v = w;
        }
        if (descent) ++anchors;
      }
      if (anchors != 1) {
        std::ostringstream os;
        os << "orbit pair (" << i << "," << j << "): found " << anchors
           << " descent anchors, expected exactly 1";
        issues.push_back({"orbit-descent", os.str()});
      }
    }
  }
  return issues;
}

QDatum make_qdatum(Series s, int rank, std::vector<int> xi) {
  CartanData folded = build_cartan(s, rank);
  Unfolding u = unfolding_of(folded);
  QDatum q;
  q.unfolded = u.unfolded;
  q.folded = std::move(folded);
  q.sigma = u.sigma;
  q.fold = u.fold;
  check(int(xi.size()) == q.unfolded.rank,
        "make_qdatum: xi must have one entry per unfolded vertex (" +
            std::to_string(q.unfolded.rank) + ")");
  q.xi = std::move(xi);
  auto issues = validate_qdatum(q);
  if (!issues.empty()) {
    std::ostringstream os;
    os << "invalid Q-datum " << q.describe() << ":";
    for (auto& is : issues) os << " [" << is.clause << "] " << is.detail << ";";
    fail(os.str());
  }
  return q;
}

QDatum make_qdatum(const std::string& type, std::vector<int> xi) {
  auto g = build_cartan(type);
  return make_qdatum(g.series, g.rank, std::move(xi));
}

std::vector<int> default_xi(Series s, int rank) {
  CartanData folded = build_cartan(s, rank);
  Unfolding u = unfolding_of(folded);
  int m = u.unfolded.rank;
  std::vector<int> xi(size_t(m), 0);
  switch (s) {
    case Series::A:
    case Series::D:
    case Series::E: {
      // bipartite heights from vertex 1
      std::vector<int> dist(size_t(m), -1);
      std::deque<int> bfs{1};
      dist[0] = 0;
      while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop_front();
        for (int w = 1; w <= m; ++w)
          if (u.unfolded.adjacent(v, w) && dist[size_t(w - 1)] < 0) {
            dist[size_t(w - 1)] = dist[size_t(v - 1)] + 1;
            bfs.push_back(w);
          }
      }
      for (int v = 1; v <= m; ++v) xi[size_t(v - 1)] = -(dist[size_t(v - 1)] % 2);
      break;
    }
    case Series::B: {
      // A_{2n-1}: short vertex n at 0, anchor n+1, sigma-descent below
      int n = rank;
      xi[size_t(n - 1)] = 0;
      for (int k = 1; k <= n - 1; ++k) {
        xi[size_t(n + k - 1)] = 1 - 2 * k;
        xi[size_t(n - k - 1)] = -1 - 2 * k;
      }
      break;
    }
    case Series::C: {
      // D_{n+1}: xi_n = 0, xi_{n+1} = -2, chain decreasing to the left
      int n = rank;
      xi[size_t(n - 1)] = 0;
      xi[size_t(n)] = -2;
      for (int k = 1; k <= n - 1; ++k) xi[size_t(n - 1 - k)] = -k;
      break;
    }
    case Series::F: {
      xi = {-5, -1, -3, 0, -1, -3};
      break;
    }
    case Series::G: {
      xi = {-1, 0, -3, -5};
      break;
    }
  }
  // throws when the built-in pattern is invalid for the requested type
  make_qdatum(s, rank, xi);
  return xi;
}

QDatum source_reflect(const QDatum& q, int iv) {
  check(iv >= 1 && iv <= q.rank_unfolded(), "source_reflect: vertex out of range");
  check(q.is_source(iv), "source_reflect: vertex " + std::to_string(iv) + " is not a source");
  QDatum r = q;
  r.xi[size_t(iv - 1)] -= 2 * q.dbar(iv);
  return r;
}

QDatum sink_unreflect(const QDatum& q, int iv) {
  check(iv >= 1 && iv <= q.rank_unfolded(), "sink_unreflect: vertex out of range");
  check(q.is_sink(iv), "sink_unreflect: vertex " + std::to_string(iv) + " is not a sink");
  QDatum r = q;
  r.xi[size_t(iv - 1)] += 2 * q.dbar(iv);
  return r;
}

QDatum shift_dual(const QDatum& q, int sign) {
  check(sign == 1 || sign == -1, "shift_dual: sign must be +-1");
  QDatum r = q;
  int shift = sign * q.period();
  for (int iv = 1; iv <= q.rank_unfolded(); ++iv)
    r.xi[size_t(iv - 1)] = q.height(q.unfolded.star(iv)) + shift;
  return r;
}

bool rep_order_leq(const QDatum& q, RepPoint a, RepPoint b) {
  check(q.in_hat_delta(a.vertex, a.p) && q.in_hat_delta(b.vertex, b.p),
        "rep_order_leq: points must lie in the repetition lattice");
  if (a == b) return true;
  // Covering steps run downward in spectral parameter: (iv,p) covers
  // (jv, p - min(d,d)) for jv adjacent to iv.
  if (b.p >= a.p) return false;
  std::set<RepPoint> seen{a};
  std::deque<RepPoint> bfs{a};
  while (!bfs.empty()) {
    RepPoint cur = bfs.front();
    bfs.pop_front();
    for (int jv = 1; jv <= q.rank_unfolded(); ++jv) {
      if (!q.unfolded.adjacent(cur.vertex, jv)) continue;
      int step = std::min(q.dbar(cur.vertex), q.dbar(jv));
      RepPoint nxt{jv, cur.p - step};
      if (!q.in_hat_delta(jv, nxt.p)) continue;
      if (nxt == b) return true;
      if (nxt.p <= b.p) continue;
      if (seen.insert(nxt).second) bfs.push_back(nxt);
    }
  }
  return false;
}

AdaptedSeq::AdaptedSeq(QDatum q, std::vector<int> prefix, SeqRule rule)
    : q_(std::move(q)), prefix_(std::move(prefix)), rule_(rule) {
  check(!prefix_.empty(), "AdaptedSeq: empty prefix");
  int k = adapted_violation(q_, prefix_);
  check(k == 0, "AdaptedSeq: prefix not adapted at position " + std::to_string(k));
}

void AdaptedSeq::extend_to(int u) const {
  if (rule_ == SeqRule::PeriodicStar) return;
  if (int(cache_.size()) >= u) return;
  int need = u + q_.rank_unfolded();
  std::vector<std::pair<int, int>> pts;  // (p, vertex)
  int pmax = *std::max_element(q_.xi.begin(), q_.xi.end());
  int pmin = pmax - 2 * q_.period() * (need / std::max(1, q_.rank_unfolded()) + 2);
  for (int p = pmax; p >= pmin; --p)
    for (int iv = 1; iv <= q_.rank_unfolded(); ++iv)
      if (q_.in_hat_delta_le(iv, p)) pts.push_back({p, iv});
  cache_.clear();
  for (auto& [p, iv] : pts) {
    cache_.push_back(iv);
    if (int(cache_.size()) >= need) break;
  }
  check(int(cache_.size()) >= need, "AdaptedSeq: enumeration window underfilled");
}

int AdaptedSeq::at(int u) const {
  check(u >= 1, "AdaptedSeq::at: index must be positive");
  if (rule_ == SeqRule::PeriodicStar) {
    int ell = int(prefix_.size());
    int base = (u - 1) % ell;
    int reps = (u - 1) / ell;
    int v = prefix_[size_t(base)];
    for (int k = 0; k < reps; ++k) v = q_.unfolded.star(v);
    return v;
  }
  if (u <= int(prefix_.size())) return prefix_[size_t(u - 1)];
  extend_to(u);
  return cache_[size_t(u - 1)];
}

RepPoint AdaptedSeq::rho(int u) const {
  int iv = at(u);
  int count = 0;
  for (int v = 1; v < u; ++v)
    if (at(v) == iv) ++count;
  return RepPoint{iv, q_.height(iv) - 2 * q_.dbar(iv) * count};
}

int AdaptedSeq::rho_inv(RepPoint pt, int window) const {
  check(q_.in_hat_delta_le(pt.vertex, pt.p), "rho_inv: point outside the lattice window");
  for (int u = 1; u <= window; ++u)
    if (rho(u) == pt) return u;
  fail("rho_inv: point not found within window " + std::to_string(window));
}

std::vector<int> AdaptedSeq::prefix_vec(int n) const {
  std::vector<int> v;
  v.reserve(size_t(n));
  for (int u = 1; u <= n; ++u) v.push_back(at(u));
  return v;
}

int adapted_violation(const QDatum& q, const std::vector<int>& prefix) {
  QDatum cur = q;
  for (size_t k = 0; k < prefix.size(); ++k) {
    int iv = prefix[k];
    if (iv < 1 || iv > q.rank_unfolded() || !cur.is_source(iv)) return int(k) + 1;
    cur = source_reflect(cur, iv);
  }
  return 0;
}

namespace {

bool build_longest_word(const QDatum& cur, std::vector<int>& owed, std::vector<int>& prefix,
                        int remaining) {
  if (remaining == 0) return true;
  // candidate sources still owing occurrences, highest first, index tiebreak
  std::vector<std::pair<int, int>> cand;  // (-height, vertex)
  for (int iv = 1; iv <= cur.rank_unfolded(); ++iv)
    if (owed[size_t(iv - 1)] > 0 && cur.is_source(iv)) cand.push_back({-cur.height(iv), iv});
  std::sort(cand.begin(), cand.end());
  for (auto& [negh, iv] : cand) {
    prefix.push_back(iv);
    --owed[size_t(iv - 1)];
    if (build_longest_word(source_reflect(cur, iv), owed, prefix, remaining - 1)) return true;
    ++owed[size_t(iv - 1)];
    prefix.pop_back();
  }
  return false;
}

}  // namespace

AdaptedSeq generate_adapted(const QDatum& q, SeqRule rule) {
  // Canonical adapted reduced word for the longest element: sources popped in
  // decreasing height order, subject to the per-vertex occurrence counts
  // forced by the dual shift (backtracking covers the rare stalls).
  int ell = q.unfolded.longest_length;
  std::vector<int> owed(size_t(q.rank_unfolded()), 0);
  int total = 0;
  for (int iv = 1; iv <= q.rank_unfolded(); ++iv) {
    int drop = q.height(iv) - q.height(q.unfolded.star(iv)) + q.period();
    check(drop > 0 && drop % (2 * q.dbar(iv)) == 0, "generate_adapted: bad occurrence count");
    owed[size_t(iv - 1)] = drop / (2 * q.dbar(iv));
    total += owed[size_t(iv - 1)];
  }
  check(total == ell, "generate_adapted: occurrence counts do not sum to the longest length");
  std::vector<int> prefix;
  prefix.reserve(size_t(ell));
  check(build_longest_word(q, owed, prefix, ell), "generate_adapted: no adapted word found");
  // reflecting along the full prefix lands on the dual-shifted datum
  QDatum cur = q;
  for (int iv : prefix) cur = source_reflect(cur, iv);
  check(cur.xi == shift_dual(q, -1).xi,
        "generate_adapted: prefix does not realize the longest element");
  return AdaptedSeq(q, std::move(prefix), rule);
}

namespace {

bool cond_orbit_aligned(const QDatum& q) {
  // heights along each sigma-orbit descend by 2 from the orbit maximum
  for (int i = 1; i <= q.rank_folded(); ++i) {
    int icirc = 0;
    for (int iv = 1; iv <= q.rank_unfolded(); ++iv) {
      if (q.bar(iv) != i) continue;
      if (icirc == 0 || q.height(iv) > q.height(icirc)) icirc = iv;
    }
    int v = icirc;
    for (int k = 1; k < q.folded.d(i); ++k) {
      int w = q.sig(v);
      if (q.height(w) != q.height(v) - 2) return false;
      v = w;
    }
  }
  return true;
}

CoxeterElt coxeter_aligned(const QDatum& q) {
  // order folded indices by heights of orbit maxima, descending
  std::vector<std::pair<int, int>> order;  // (-height(i_circ), i)
  std::vector<int> icirc(size_t(q.rank_folded() + 1), 0);
  for (int i = 1; i <= q.rank_folded(); ++i) {
    int best = 0;
    for (int iv = 1; iv <= q.rank_unfolded(); ++iv)
      if (q.bar(iv) == i && (best == 0 || q.height(iv) > q.height(best))) best = iv;
    icirc[size_t(i)] = best;
    order.push_back({-q.height(best), i});
  }
  std::sort(order.begin(), order.end());
  CoxeterElt tau;
  for (auto& [negh, i] : order) tau.word.push_back(icirc[size_t(i)]);
  tau.sigma_power = 1;
  return tau;
}

int sigma_inverse(const QDatum& q, int iv) {
  for (int v = 1; v <= q.rank_unfolded(); ++v)
    if (q.sig(v) == iv) return v;
  fail("sigma_inverse: not a permutation");
}

}  // namespace

CoxeterElt generalized_coxeter(const QDatum& q) {
  if (cond_orbit_aligned(q)) return coxeter_aligned(q);
  for (int iv = 1; iv <= q.rank_unfolded(); ++iv) {
    if (!q.is_sink(iv)) continue;
    QDatum up = sink_unreflect(q, iv);
    // q = s_iv(up), hence tau_q = s_iv tau_up s_iv
    CoxeterElt inner = generalized_coxeter(up);
    CoxeterElt tau;
    tau.word.push_back(iv);
    for (int w : inner.word) tau.word.push_back(w);
    // the trailing s_iv must cross sigma^k: s_iv sigma^k = sigma^k s_{sigma^{-k}(iv)}
    int pre = iv;
    for (int k = 0; k < inner.sigma_power; ++k) pre = sigma_inverse(q, pre);
    tau.word.push_back(pre);
    tau.sigma_power = inner.sigma_power;
    return tau;
  }
  fail("generalized_coxeter: no sink found");
}

Weight coxeter_apply(const QDatum& q, const CoxeterElt& tau, int power, Weight lam) {
  check(power >= 0, "coxeter_apply: nonnegative powers only");
  for (int k = 0; k < power; ++k) {
    // apply sigma^{sigma_power} first, then the Weyl word
    for (int j = 0; j < tau.sigma_power; ++j) {
      Weight s(q.rank_unfolded());
      for (int iv = 1; iv <= q.rank_unfolded(); ++iv) s.coord(q.sig(iv)) = lam.coord(iv);
      lam = s;
    }
    lam = weyl_apply(q.unfolded, tau.word, lam);
  }
  return lam;
}

std::string qdatum_to_json(const QDatum& q) {
  std::ostringstream os;
  os << "{\"series\":\"" << char(q.folded.series) << "\",\"rank\":" << q.folded.rank
     << ",\"sigma\":[";
  for (int iv = 1; iv <= q.rank_unfolded(); ++iv) os << (iv > 1 ? "," : "") << q.sig(iv);
  os << "],\"xi\":[";
  for (int iv = 1; iv <= q.rank_unfolded(); ++iv) os << (iv > 1 ? "," : "") << q.height(iv);
  os << "]}";
  return os.str();
}

}  // namespace qgr
