#include "qgr/qcluster.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qgr {

SeqFn seq_from_vector(std::vector<int> letters, int alphabet) {
  check(!letters.empty(), "seq_from_vector: empty sequence");
  // extend so that every letter recurs forever (the windowed data does not
  // depend on the choice of extension)
  return [letters = std::move(letters), alphabet](int u) -> int {
    check(u >= 1, "sequence index must be positive");
    if (u <= int(letters.size())) return letters[size_t(u - 1)];
    return (u - int(letters.size()) - 1) % alphabet + 1;
  };
}

SeqFn seq_from_adapted(const AdaptedSeq& seq) {
  // AdaptedSeq is cheap to copy (datum + prefix); capture by value
  return [seq](int u) { return seq.at(u); };
}

int next_occurrence(const SeqFn& seq, int u) {
  int letter = seq(u);
  for (int k = u + 1;; ++k)
    if (seq(k) == letter) return k;
}

int prev_occurrence(const SeqFn& seq, int u) {
  int letter = seq(u);
  for (int k = u - 1; k >= 1; --k)
    if (seq(k) == letter) return k;
  return 0;
}

int prev_occurrence_of(const SeqFn& seq, int u, int letter) {
  for (int k = u - 1; k >= 1; --k)
    if (seq(k) == letter) return k;
  return 0;
}

CompatiblePair build_pair(const CartanData& g, const SeqFn& seq, int n) {
  check(n >= 1, "build_pair: window must be positive");
  CompatiblePair p;
  p.n = n;
  p.cartan = g;
  p.letters.resize(size_t(n));
  for (int u = 1; u <= n; ++u) {
    p.letters[size_t(u - 1)] = seq(u);
    check(seq(u) >= 1 && seq(u) <= g.rank, "build_pair: letter out of range");
  }
  std::vector<int> plus(size_t(n + 1), 0);
  for (int u = 1; u <= n; ++u) plus[size_t(u)] = next_occurrence(seq, u);
  p.frozen.assign(size_t(n), 0);
  for (int u = 1; u <= n; ++u)
    if (plus[size_t(u)] > n) p.frozen[size_t(u - 1)] = 1;
  p.dcol.resize(size_t(n));
  for (int u = 1; u <= n; ++u) p.dcol[size_t(u - 1)] = g.d(seq(u));

  // All columns are filled from the total sequence; only exchangeable columns
  // take part in mutation, but frozen-column entries are still well-defined
  // window data (they depend on the canonical extension of a raw sequence).
  p.btilde.assign(size_t(n), std::vector<i64>(size_t(n), 0));
  for (int v = 1; v <= n; ++v) {
    for (int u = 1; u <= n; ++u) {
      if (u == v) continue;
      i64 val = 0;
      int up = plus[size_t(u)], vp = plus[size_t(v)];
      if (v == up) val = 1;
      else if (u == vp) val = -1;
      else if (g.adjacent(seq(u), seq(v))) {
        if (u < v && v < up && up < vp) val = g.c(seq(u), seq(v));
        else if (v < u && u < vp && vp < up) val = -g.c(seq(u), seq(v));
      }
      p.btilde[size_t(u - 1)][size_t(v - 1)] = val;
    }
  }

  // w_u varpi_{i_u} for u in [0, n]
  std::vector<Weight> act(size_t(n + 1), Weight(g.rank));
  std::vector<int> word;
  word.reserve(size_t(n));
  for (int u = 1; u <= n; ++u) {
    word.push_back(seq(u));
    act[size_t(u)] = weyl_apply(g, word, fundamental_weight(g, seq(u)));
  }
  p.lambda.assign(size_t(n), std::vector<i64>(size_t(n), 0));
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      Weight left = fundamental_weight(g, seq(u)) - act[size_t(u)];
      Weight right = fundamental_weight(g, seq(v)) + act[size_t(v)];
      i64 val = pairing_int(g, left, right);
      p.lambda[size_t(u - 1)][size_t(v - 1)] = val;
      p.lambda[size_t(v - 1)][size_t(u - 1)] = -val;
    }
  }
  verify_compatibility(p);
  return p;
}

void verify_compatibility(const CompatiblePair& p) {
  for (int u = 1; u <= p.n; ++u) {
    if (p.is_frozen(u)) continue;
    for (int v = 1; v <= p.n; ++v) {
      i64 acc = 0;
      for (int k = 1; k <= p.n; ++k) acc += p.b(k, u) * p.lam(k, v);
      i64 expect = (u == v) ? 2 * i64(p.dcol[size_t(u - 1)]) : 0;
      if (acc != expect) {
        std::ostringstream os;
        os << "compatibility failed at (u,v)=(" << u << "," << v << "): got " << acc
           << ", expected " << expect;
        fail(os.str());
      }
    }
  }
}

namespace {

std::vector<std::vector<i64>> e_matrix(const CompatiblePair& p, int k) {
  int n = p.n;
  std::vector<std::vector<i64>> e(size_t(n), std::vector<i64>(size_t(n), 0));
  for (int i = 1; i <= n; ++i) e[size_t(i - 1)][size_t(i - 1)] = 1;
  for (int i = 1; i <= n; ++i)
    e[size_t(i - 1)][size_t(k - 1)] = (i == k) ? -1 : std::max<i64>(0, -p.b(i, k));
  return e;
}

std::vector<std::vector<i64>> f_matrix(const CompatiblePair& p, int k) {
  int n = p.n;
  std::vector<std::vector<i64>> f(size_t(n), std::vector<i64>(size_t(n), 0));
  for (int i = 1; i <= n; ++i) f[size_t(i - 1)][size_t(i - 1)] = 1;
  for (int j = 1; j <= n; ++j)
    f[size_t(k - 1)][size_t(j - 1)] = (j == k) ? -1 : std::max<i64>(0, p.b(k, j));
  return f;
}

std::vector<std::vector<i64>> mat_mul(const std::vector<std::vector<i64>>& a,
                                      const std::vector<std::vector<i64>>& b) {
  size_t n = a.size();
  std::vector<std::vector<i64>> r(n, std::vector<i64>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

std::vector<std::vector<i64>> mat_transpose(const std::vector<std::vector<i64>>& a) {
  size_t n = a.size();
  std::vector<std::vector<i64>> r(n, std::vector<i64>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r[j][i] = a[i][j];
  return r;
}

}  // namespace

CompatiblePair mutate_pair(const CompatiblePair& p, int k, bool verify) {
  check(k >= 1 && k <= p.n, "mutate_pair: slot out of range");
  check(!p.is_frozen(k), "mutate_pair: cannot mutate a frozen slot");
  auto e = e_matrix(p, k);
  auto f = f_matrix(p, k);
  CompatiblePair r = p;
  r.btilde = mat_mul(mat_mul(e, p.btilde), f);
  r.lambda = mat_mul(mat_mul(mat_transpose(e), p.lambda), e);
  // window-boundary slots can carry truncated data, so seeds skip the global
  // identity check and rely on their trusted-window bookkeeping instead
  if (verify) verify_compatibility(r);
  return r;
}

CompatiblePair permute_pair(const CompatiblePair& p, const std::vector<int>& pi_inv) {
  check(int(pi_inv.size()) == p.n, "permute_pair: permutation size mismatch");
  CompatiblePair r = p;
  for (int u = 1; u <= p.n; ++u) {
    int src = pi_inv[size_t(u - 1)];
    r.letters[size_t(u - 1)] = p.letters[size_t(src - 1)];
    r.frozen[size_t(u - 1)] = p.frozen[size_t(src - 1)];
    r.dcol[size_t(u - 1)] = p.dcol[size_t(src - 1)];
    for (int v = 1; v <= p.n; ++v) {
      int sv = pi_inv[size_t(v - 1)];
      r.lambda[size_t(u - 1)][size_t(v - 1)] = p.lam(src, sv);
      r.btilde[size_t(u - 1)][size_t(v - 1)] = p.b(src, sv);
    }
  }
  return r;
}

Quiver build_quiver(const CartanData& g, const SeqFn& seq, int n) {
  check(g.simply_laced(), "build_quiver: simply-laced input required");
  Quiver quiver;
  std::vector<int> plus(size_t(n + 1), 0);
  for (int u = 1; u <= n; ++u) plus[size_t(u)] = next_occurrence(seq, u);
  for (int u = 1; u <= n; ++u) {
    for (int v = 1; v <= n; ++v) {
      if (u == v) continue;
      int iu = seq(u), iv = seq(v);
      bool arrow = false;
      if (iu == iv && u == plus[size_t(v)]) arrow = true;
      if (g.adjacent(iu, iv) && u < v && v < plus[size_t(u)] && plus[size_t(u)] < plus[size_t(v)])
        arrow = true;
      if (arrow) quiver[{u, v}] += 1;
    }
  }
  return quiver;
}

LabeledQuiver affine_quiver(const QDatum& q, const std::vector<std::pair<int, int>>& points) {
  const CartanData& g = q.folded;
  std::set<std::pair<int, int>> vertex_set(points.begin(), points.end());
  LabeledQuiver quiver;
  for (auto& [i, p] : points) {
    for (int j = 1; j <= g.rank; ++j) {
      if (g.c(i, j) == 0) continue;
      int s = p - g.d(i) + g.d(i) * g.c(i, j) + g.d(j);
      if (vertex_set.count({j, s})) quiver[{{i, p}, {j, s}}] += 1;
    }
  }
  return quiver;
}

LabeledQuiver relabel_quiver(const Quiver& quiver, const AdaptedSeq& seq) {
  LabeledQuiver out;
  for (auto& [arrow, mult] : quiver) {
    RepPoint a = seq.rho(arrow.first);
    RepPoint b = seq.rho(arrow.second);
    out[{{seq.datum().bar(a.vertex), a.p}, {seq.datum().bar(b.vertex), b.p}}] += mult;
  }
  return out;
}

Seed initial_seed(CompatiblePair pair, bool classical, const std::vector<RepPoint>& labels) {
  Seed s;
  s.ambient = std::make_shared<ClusterTorus>(pair.lambda, classical);
  if (!labels.empty()) s.ambient->set_labels(labels);
  s.vars.reserve(size_t(pair.n));
  for (int u = 1; u <= pair.n; ++u)
    s.vars.push_back(TorusElement::monomial(s.ambient, ExpVec::unit(u)));
  s.safe_n = pair.n;
  s.pair = std::move(pair);
  return s;
}

namespace {

// image in the ambient torus of the commutative monomial with nonnegative
// exponents c over the current cluster variables
TorusElement cluster_monomial_image(const Seed& s, const std::vector<i64>& c) {
  i64 norm = 0;
  if (!s.ambient->classical())
    for (int u = 1; u <= s.pair.n; ++u)
      for (int v = u + 1; v <= s.pair.n; ++v)
        norm += c[size_t(u - 1)] * c[size_t(v - 1)] * s.pair.lam(u, v);
  TorusElement acc = TorusElement::one(s.ambient).scale(1, int(-norm));
  for (int u = 1; u <= s.pair.n; ++u) {
    for (i64 rep = 0; rep < c[size_t(u - 1)]; ++rep) acc = acc * s.var(u);
  }
  return acc;
}

}  // namespace

void seed_mutate(Seed& s, int k) {
  check(k >= 1 && k <= s.pair.n, "seed_mutate: slot out of range");
  check(k <= s.safe_n, "seed_mutate: slot outside the trusted window");
  check(!s.pair.is_frozen(k), "seed_mutate: frozen slot");
  std::vector<i64> cpos(size_t(s.pair.n), 0), cneg(size_t(s.pair.n), 0);
  for (int u = 1; u <= s.pair.n; ++u) {
    if (u == k) continue;
    i64 b = s.pair.b(u, k);
    if (b > 0) cpos[size_t(u - 1)] = b;
    if (b < 0) cneg[size_t(u - 1)] = -b;
  }
  auto lam_with = [&](const std::vector<i64>& c) {
    if (s.ambient->classical()) return i64(0);
    i64 acc = 0;
    for (int u = 1; u <= s.pair.n; ++u) acc += c[size_t(u - 1)] * s.pair.lam(u, k);
    return acc;
  };
  TorusElement num = cluster_monomial_image(s, cpos).scale(1, int(lam_with(cpos))) +
                     cluster_monomial_image(s, cneg).scale(1, int(lam_with(cneg)));
  TorusElement fresh = num.divide_right(s.var(k));
  s.vars[size_t(k - 1)] = std::move(fresh);
  s.pair = mutate_pair(s.pair, k, /*verify=*/false);
  s.history.push_back("mu " + std::to_string(k));
}

void seed_swap_adjacent(Seed& s, int k) {
  check(k >= 1 && k + 1 <= s.pair.n, "seed_swap_adjacent: slot out of range");
  std::vector<int> pi_inv(static_cast<size_t>(s.pair.n));
  for (int u = 1; u <= s.pair.n; ++u) pi_inv[size_t(u - 1)] = u;
  std::swap(pi_inv[size_t(k - 1)], pi_inv[size_t(k)]);
  s.pair = permute_pair(s.pair, pi_inv);
  std::swap(s.vars[size_t(k - 1)], s.vars[size_t(k)]);
}

void seed_gamma(Seed& s, int k) {
  check(k + 1 <= s.safe_n, "seed_gamma: slot outside the trusted window");
  int a = s.pair.letter(k), b = s.pair.letter(k + 1);
  check(a != b && !s.pair.cartan.adjacent(a, b),
        "seed_gamma: letters must be distinct and non-adjacent");
  s.history.push_back("gamma " + std::to_string(k));
  seed_swap_adjacent(s, k);
}

void seed_beta(Seed& s, int k) {
  check(k + 2 <= s.safe_n, "seed_beta: slot outside the trusted window");
  int a = s.pair.letter(k), b = s.pair.letter(k + 1), c = s.pair.letter(k + 2);
  check(a == c && a != b && s.pair.cartan.adjacent(a, b),
        "seed_beta: letters must form (i, j, i) with i adjacent to j");
  s.history.push_back("beta " + std::to_string(k));
  seed_mutate(s, k);
  seed_swap_adjacent(s, k + 1);
  // letters become (j, i, j)
  s.pair.letters[size_t(k - 1)] = b;
  s.pair.letters[size_t(k)] = a;
  s.pair.letters[size_t(k + 1)] = b;
  s.pair.dcol[size_t(k - 1)] = s.pair.cartan.d(b);
  s.pair.dcol[size_t(k)] = s.pair.cartan.d(a);
  s.pair.dcol[size_t(k + 1)] = s.pair.cartan.d(b);
}

void seed_forward_shift(Seed& s) {
  int n = s.pair.n;
  int letter = s.pair.letter(1);
  // occurrences of the leading letter inside the trusted window; the last one
  // is kept unmutated as a guard
  std::vector<int> xs;
  for (int u = 1; u <= s.safe_n; ++u)
    if (s.pair.letter(u) == letter && !s.pair.is_frozen(u)) xs.push_back(u);
  check(xs.size() >= 2, "seed_forward_shift: window too small");
  xs.pop_back();
  auto next_occ = [&](int x) {
    for (int u = x + 1; u <= n; ++u)
      if (s.pair.letter(u) == letter) return u;
    return n + 1;
  };
  for (size_t idx = 0; idx < xs.size(); ++idx) {
    int x = xs[idx];
    // locality: incoming arrows of x come from its row neighbours only
    int nxt = next_occ(x);
    for (int u = 1; u <= n; ++u) {
      if (s.pair.b(x, u) > 0) {
        bool expected = (idx > 0 && u == xs[idx - 1]) || u == nxt;
        check(expected, "seed_forward_shift: unexpected incoming arrow at slot " +
                            std::to_string(x) + " from " + std::to_string(u));
      }
    }
    seed_mutate(s, x);
  }
  // relabel: new slot u holds old slot sigma_+^{-1}(u)
  std::vector<int> pi_inv(static_cast<size_t>(n));
  for (int u = 1; u <= n; ++u) {
    int src = u;  // identity filler past the window edge
    if (u < n) {
      if (s.pair.letter(u + 1) == letter) {
        for (int w = u; w >= 1; --w)
          if (s.pair.letter(w) == letter) { src = w; break; }
      } else {
        src = u + 1;
      }
    }
    pi_inv[size_t(u - 1)] = src;
  }
  s.pair = permute_pair(s.pair, pi_inv);
  std::vector<TorusElement> nv = s.vars;
  for (int u = 1; u <= n; ++u) nv[size_t(u - 1)] = s.vars[size_t(pi_inv[size_t(u - 1)] - 1)];
  s.vars = std::move(nv);
  s.safe_n = xs.back() - 2;
  s.history.push_back("shift");
}

std::optional<ExpVec> degree_of(const TorusElement& x, const CompatiblePair& p) {
  if (x.is_zero()) return std::nullopt;
  // candidates: coefficient exactly 1 at t^0
  for (auto& [term, coeff] : x.terms()) {
    if (coeff != 1 || term.first != 0) continue;
    const ExpVec& g = term.second;
    bool ok = true;
    for (auto& [other, c2] : x.terms()) {
      ExpVec diff = other.second - g;
      // solve btilde * nvec = diff with nvec >= 0 supported on exchangeable slots
      std::vector<Rat> rhs(size_t(p.n), Rat(0));
      for (auto& [v, e] : diff.e) {
        if (v < 1 || v > p.n) { ok = false; break; }
        rhs[size_t(v - 1)] = Rat(e);
      }
      if (!ok) break;
      // gaussian elimination on the exchangeable columns
      std::vector<int> cols;
      for (int v = 1; v <= p.n; ++v)
        if (!p.is_frozen(v)) cols.push_back(v);
      std::vector<std::vector<Rat>> m(size_t(p.n), std::vector<Rat>(cols.size() + 1, Rat(0)));
      for (int u = 1; u <= p.n; ++u) {
        for (size_t cidx = 0; cidx < cols.size(); ++cidx)
          m[size_t(u - 1)][cidx] = Rat(p.b(u, cols[cidx]));
        m[size_t(u - 1)][cols.size()] = rhs[size_t(u - 1)];
      }
      // eliminate
      size_t row = 0;
      std::vector<int> pivot_of_col(cols.size(), -1);
      for (size_t c = 0; c < cols.size() && row < m.size(); ++c) {
        size_t piv = row;
        while (piv < m.size() && m[piv][c].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[row], m[piv]);
        Rat d = m[row][c];
        for (size_t j = c; j <= cols.size(); ++j) m[row][j] = m[row][j] / d;
        for (size_t r2 = 0; r2 < m.size(); ++r2) {
          if (r2 == row || m[r2][c].is_zero()) continue;
          Rat f = m[r2][c];
          for (size_t j = c; j <= cols.size(); ++j) m[r2][j] = m[r2][j] - f * m[row][j];
        }
        pivot_of_col[c] = int(row);
        ++row;
      }
      // consistency: zero rows must have zero rhs
      for (size_t r2 = row; r2 < m.size(); ++r2)
        if (!m[r2][cols.size()].is_zero()) { ok = false; break; }
      if (!ok) break;
      // read solution (free columns = 0) and demand nonnegative integers
      for (size_t c = 0; c < cols.size(); ++c) {
        Rat val = pivot_of_col[c] < 0 ? Rat(0) : m[size_t(pivot_of_col[c])][cols.size()];
        if (!val.is_integer() || val.num < 0) { ok = false; break; }
      }
      if (!ok) break;
    }
    if (ok) return g;
  }
  return std::nullopt;
}

ExpVec trop_transport(const ExpVec& gprime, const CompatiblePair& mutated, int k) {
  i64 gk = gprime.exp_of(k);
  ExpVec g;
  for (int j = 1; j <= mutated.n; ++j) {
    i64 val;
    if (j == k) {
      val = -gk;
    } else {
      i64 bjk = mutated.b(j, k);
      if (gk >= 0) val = gprime.exp_of(j) + std::max<i64>(bjk, 0) * gk;
      else val = gprime.exp_of(j) - std::min<i64>(bjk, 0) * gk;
    }
    if (val != 0) g = g + ExpVec::unit(j, int(val));
  }
  return g;
}

ExpVec gamma_degree(const ExpVec& gprime, int k) {
  // g_u = g'_{sigma_k(u)}: exchange the entries at k and k+1
  ExpVec g;
  for (auto& [v, e] : gprime.e) {
    int target = v;
    if (v == k) target = k + 1;
    else if (v == k + 1) target = k;
    g = g + ExpVec::unit(target, e);
  }
  return g;
}

ExpVec beta_degree(const ExpVec& gprime, const CompatiblePair& before, int k) {
  // letters of `before` at k..k+2 are (i, j, i)
  int km_i = 0, km1_i = 0;  // k^-, (k+1)^-
  for (int w = k - 1; w >= 1; --w)
    if (before.letter(w) == before.letter(k)) { km_i = w; break; }
  for (int w = k; w >= 1; --w)
    if (before.letter(w) == before.letter(k + 1)) { km1_i = w; break; }
  i64 gk = gprime.exp_of(k);
  ExpVec g;
  for (int u = 1; u <= before.n; ++u) {
    i64 val;
    int su = u;
    if (u == k + 1) su = k + 2;
    else if (u == k + 2) su = k + 1;
    if (u == k) val = -gk;
    else if (u == k + 2 || (km1_i != 0 && u == km1_i)) val = gprime.exp_of(su) + std::max<i64>(gk, 0);
    else if (u == k + 1 || (km_i != 0 && u == km_i)) val = gprime.exp_of(su) + std::min<i64>(gk, 0);
    else val = gprime.exp_of(u);
    if (val != 0) g = g + ExpVec::unit(u, int(val));
  }
  return g;
}

std::optional<ExpVec> shift_degree(const ExpVec& gprime, const SeqFn& seq_before, int window) {
  // the rule applies only on the nonnegative cone of the shifted sequence
  SeqFn shifted = [&seq_before](int u) { return seq_before(u + 1); };
  if (!cone_member(gprime, shifted, window)) return std::nullopt;
  int letter = seq_before(1);
  i64 total = 0;
  ExpVec out;
  for (auto& [v, e] : gprime.e) {
    if (seq_before(v + 1) == letter) total += e;
    out = out + ExpVec::unit(v + 1, e);
  }
  if (total != 0) out = out + ExpVec::unit(1, int(-total));
  return out;
}

bool cone_member(const ExpVec& g, const SeqFn& seq, int window) {
  for (int u = 1; u <= window; ++u) {
    i64 tail = 0;
    for (int v = u; v <= window; ++v)
      if (seq(v) == seq(u)) tail += g.exp_of(v);
    if (tail < 0) return false;
  }
  return true;
}

i64 p_sum(const ExpVec& g, const SeqFn& seq, int letter, int window) {
  i64 total = 0;
  for (int u = 1; u <= window; ++u)
    if (seq(u) == letter) total += g.exp_of(u);
  return total;
}

std::vector<i64> lusztig_gamma(const std::vector<i64>& c, int k) {
  check(k >= 1 && k + 1 <= int(c.size()), "lusztig_gamma: index out of range");
  auto r = c;
  std::swap(r[size_t(k - 1)], r[size_t(k)]);
  return r;
}

std::vector<i64> lusztig_beta(const std::vector<i64>& c, int k) {
  check(k >= 1 && k + 2 <= int(c.size()), "lusztig_beta: index out of range");
  auto r = c;
  i64 mn = std::min(c[size_t(k - 1)], c[size_t(k + 1)]);
  r[size_t(k - 1)] = c[size_t(k)] + c[size_t(k + 1)] - mn;
  r[size_t(k)] = mn;
  r[size_t(k + 1)] = c[size_t(k)] + c[size_t(k - 1)] - mn;
  return r;
}

}  // namespace qgr
