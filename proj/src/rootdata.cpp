#include "qgr/rootdata.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace qgr {

Series series_from_char(char c) {
  switch (c) {
    case 'A': return Series::A;
    case 'B': return Series::B;
    case 'C': return Series::C;
    case 'D': return Series::D;
    case 'E': return Series::E;
    case 'F': return Series::F;
    case 'G': return Series::G;
    default: fail(std::string("unknown series '") + c + "'");
  }
}

std::string CartanData::type_name() const {
  std::ostringstream os;
  os << char(series) << rank;
  return os.str();
}

namespace {

std::vector<std::pair<int, int>> diagram_edges(Series s, int n) {
  std::vector<std::pair<int, int>> e;
  switch (s) {
    case Series::A:
    case Series::B:
    case Series::C:
    case Series::G:
      for (int i = 1; i < n; ++i) e.push_back({i, i + 1});
      break;
    case Series::D:
      for (int i = 1; i < n - 1; ++i) e.push_back({i, i + 1});
      e.push_back({n - 2, n});
      break;
    case Series::E:
      // Bourbaki: chain 1-3-4-5-...-n, with 2 attached to 4.
      e.push_back({1, 3});
      for (int i = 3; i < n; ++i) e.push_back({i, i + 1});
      e.push_back({2, 4});
      break;
    case Series::F:
      e = {{1, 2}, {2, 3}, {3, 4}};
      break;
  }
  return e;
}

}  // namespace

CartanData build_cartan(Series s, int n) {
  auto bad = [&](const std::string& why) {
    fail("build_cartan: invalid type " + std::string(1, char(s)) + std::to_string(n) + ": " + why);
  };
  switch (s) {
    case Series::A: if (n < 1) bad("rank >= 1 required"); break;
    case Series::B: if (n < 2) bad("rank >= 2 required"); break;
    case Series::C: if (n < 2) bad("rank >= 2 required"); break;
    case Series::D: if (n < 4) bad("rank >= 4 required"); break;
    case Series::E: if (n < 6 || n > 8) bad("rank must be 6, 7 or 8"); break;
    case Series::F: if (n != 4) bad("rank must be 4"); break;
    case Series::G: if (n != 2) bad("rank must be 2"); break;
  }

  CartanData g;
  g.series = s;
  g.rank = n;
  g.a.assign(size_t(n), std::vector<int>(size_t(n), 0));
  for (int i = 1; i <= n; ++i) g.a[size_t(i - 1)][size_t(i - 1)] = 2;
  for (auto [i, j] : diagram_edges(s, n)) {
    g.a[size_t(i - 1)][size_t(j - 1)] = -1;
    g.a[size_t(j - 1)][size_t(i - 1)] = -1;
  }

  g.sym.assign(size_t(n), 1);
  switch (s) {
    case Series::B:
      // alpha_n short; double edge n-1 => n
      for (int i = 1; i < n; ++i) g.sym[size_t(i - 1)] = 2;
      g.a[size_t(n - 1)][size_t(n - 2)] = -2;
      g.lacing = 2;
      break;
    case Series::C:
      // alpha_n long
      g.sym[size_t(n - 1)] = 2;
      g.a[size_t(n - 2)][size_t(n - 1)] = -2;
      g.lacing = 2;
      break;
    case Series::F:
      g.sym = {2, 2, 1, 1};
      g.a[2][1] = -2;  // c_32 = -2, arrow 2 => 3
      g.lacing = 2;
      break;
    case Series::G:
      g.sym = {3, 1};
      g.a[1][0] = -3;  // c_21 = -3, arrow 1 => 2
      g.lacing = 3;
      break;
    default:
      g.lacing = 1;
      break;
  }

  // symmetrizability sanity
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      check(i64(g.d(i)) * g.c(i, j) == i64(g.d(j)) * g.c(j, i), "cartan symmetrizer mismatch");

  g.star_map.assign(size_t(n), 0);
  for (int i = 1; i <= n; ++i) g.star_map[size_t(i - 1)] = i;
  switch (s) {
    case Series::A:
      for (int i = 1; i <= n; ++i) g.star_map[size_t(i - 1)] = n + 1 - i;
      break;
    case Series::D:
      if (n % 2 == 1) std::swap(g.star_map[size_t(n - 2)], g.star_map[size_t(n - 1)]);
      break;
    case Series::E:
      if (n == 6) {
        g.star_map = {6, 2, 5, 4, 3, 1};
      }
      break;
    default:
      break;
  }

  switch (s) {
    case Series::A: g.dual_coxeter = n + 1; g.longest_length = n * (n + 1) / 2; break;
    case Series::B: g.dual_coxeter = 2 * n - 1; g.longest_length = n * (2 * n - 1); break;
    case Series::C: g.dual_coxeter = n + 1; g.longest_length = n * (n + 1); break;
    case Series::D: g.dual_coxeter = 2 * n - 2; g.longest_length = n * (n - 1); break;
    case Series::E:
      g.dual_coxeter = (n == 6) ? 12 : (n == 7) ? 18 : 30;
      g.longest_length = (n == 6) ? 36 : (n == 7) ? 63 : 120;
      break;
    case Series::F: g.dual_coxeter = 9; g.longest_length = 36; break;
    case Series::G: g.dual_coxeter = 4; g.longest_length = 12; break;
  }
  return g;
}

CartanData build_cartan(const std::string& type) {
  check(type.size() >= 2, "type string too short: " + type);
  Series s = series_from_char(type[0]);
  int n = 0;
  try {
    n = std::stoi(type.substr(1));
  } catch (...) {
    fail("cannot parse rank in type string: " + type);
  }
  return build_cartan(s, n);
}

Weight fundamental_weight(const CartanData& g, int i) {
  check(i >= 1 && i <= g.rank, "vertex out of range");
  Weight w(g.rank);
  w.coord(i) = 1;
  return w;
}

Weight simple_root(const CartanData& g, int i) {
  check(i >= 1 && i <= g.rank, "vertex out of range");
  Weight w(g.rank);
  for (int j = 1; j <= g.rank; ++j) w.coord(j) = g.c(j, i);
  return w;
}

Weight simple_reflection(const CartanData& g, int i, Weight lam) {
  check(i >= 1 && i <= g.rank, "vertex out of range");
  i64 ci = lam.coord(i);
  if (ci == 0) return lam;
  Weight alpha = simple_root(g, i);
  return lam - alpha * ci;
}

Weight weyl_apply(const CartanData& g, std::span<const int> word, Weight lam) {
  for (size_t k = word.size(); k-- > 0;) lam = simple_reflection(g, word[k], lam);
  return lam;
}

Weight weyl_apply(const CartanData& g, const std::vector<int>& word, Weight lam) {
  return weyl_apply(g, std::span<const int>(word.data(), word.size()), lam);
}

namespace {

// (varpi_i, varpi_j) = d_j * (C^{-1})_{ji}; cache the inverse per call site.
std::vector<std::vector<Rat>> invert_cartan(const CartanData& g) {
  int n = g.rank;
  std::vector<std::vector<Rat>> m(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(2 * n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[size_t(i)][size_t(j)] = Rat(g.a[size_t(i)][size_t(j)]);
    m[size_t(i)][size_t(n + i)] = Rat(1);
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!m[size_t(r)][size_t(col)].is_zero()) { piv = r; break; }
    check(piv >= 0, "cartan matrix singular");
    std::swap(m[size_t(col)], m[size_t(piv)]);
    Rat p = m[size_t(col)][size_t(col)];
    for (int j = 0; j < 2 * n; ++j) m[size_t(col)][size_t(j)] = m[size_t(col)][size_t(j)] / p;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Rat f = m[size_t(r)][size_t(col)];
      if (f.is_zero()) continue;
      for (int j = 0; j < 2 * n; ++j)
        m[size_t(r)][size_t(j)] = m[size_t(r)][size_t(j)] - f * m[size_t(col)][size_t(j)];
    }
  }
  std::vector<std::vector<Rat>> inv(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[size_t(i)][size_t(j)] = m[size_t(i)][size_t(n + j)];
  return inv;
}

}  // namespace

Rat pairing(const CartanData& g, const Weight& lam, const Weight& mu) {
  static std::mutex cache_mu;
  static std::map<std::string, std::vector<std::vector<Rat>>> cache;
  const std::vector<std::vector<Rat>>* inv = nullptr;
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto key = g.type_name();
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, invert_cartan(g)).first;
    inv = &it->second;
  }
  // (varpi_i, varpi_j) = d_j (C^{-1})_{ji}
  Rat acc(0);
  for (int i = 1; i <= g.rank; ++i) {
    if (lam.coord(i) == 0) continue;
    for (int j = 1; j <= g.rank; ++j) {
      if (mu.coord(j) == 0) continue;
      Rat gij = Rat(g.d(j)) * (*inv)[size_t(j - 1)][size_t(i - 1)];
      acc = acc + Rat(lam.coord(i)) * Rat(mu.coord(j)) * gij;
    }
  }
  return acc;
}

i64 pairing_int(const CartanData& g, const Weight& lam, const Weight& mu) {
  Rat r = pairing(g, lam, mu);
  check(r.is_integer(), "pairing expected to be integral");
  return r.num;
}

std::map<int, i64> series_quotient(const LaurentZ& num, const LaurentZ& den, int order) {
  check(!den.is_zero(), "series_quotient: zero denominator");
  std::map<int, i64> out;
  if (num.is_zero()) return out;
  i64 lead = den.c.front();
  check(lead == 1 || lead == -1, "series_quotient: denominator lowest coefficient must be a unit");
  // Solve num = den * q as power series, coefficients of q from valuation up.
  int qlo = num.lo - den.lo;
  std::vector<i64> q;
  LaurentZ rem = num;
  for (int k = qlo; k <= order; ++k) {
    i64 ck = rem.at(k + den.lo);
    i64 coeff = ck / lead;
    q.push_back(coeff);
    if (coeff != 0) rem = rem - den * LaurentZ::term(coeff, k);
    check(rem.is_zero() || rem.lo > k + den.lo, "series_quotient: cancellation failed");
  }
  for (size_t k = 0; k < q.size(); ++k)
    if (q[k] != 0) out[qlo + int(k)] = q[k];
  return out;
}

QCartanSeries::QCartanSeries(CartanData g) : g_(std::move(g)) {
  table_.assign(size_t(g_.rank), std::vector<std::map<int, i64>>(size_t(g_.rank)));
}

namespace {

LaurentZ q_integer(int k) {
  // [k]_q = (q^k - q^-k)/(q - q^-1); for k <= 0 use antisymmetry.
  LaurentZ r;
  if (k == 0) return r;
  int s = 1;
  if (k < 0) { k = -k; s = -1; }
  for (int m = -(k - 1); m <= k - 1; m += 2) r = r + LaurentZ::term(s, m);
  return r;
}

LaurentZ quantum_cartan_entry(const CartanData& g, int i, int j) {
  if (i == j) return LaurentZ::term(1, g.d(i)) + LaurentZ::term(1, -g.d(i));
  return q_integer(g.c(i, j));
}

LaurentZ det_laurent(const std::vector<std::vector<LaurentZ>>& m) {
  // Cofactor expansion with memoization over column subsets.
  int n = int(m.size());
  std::map<uint32_t, LaurentZ> memo;
  // det over rows [n - popcount(mask), n) and columns in mask
  std::function<LaurentZ(uint32_t)> go = [&](uint32_t mask) -> LaurentZ {
    if (mask == 0) return LaurentZ::term(1, 0);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    int k = __builtin_popcount(mask);
    int row = n - k;
    LaurentZ acc;
    int sign = 1;
    for (int col = 0; col < n; ++col) {
      if (!(mask & (1u << col))) continue;
      const LaurentZ& e = m[size_t(row)][size_t(col)];
      if (!e.is_zero()) {
        LaurentZ sub = go(mask & ~(1u << col));
        acc = acc + (e * sub) * i64(sign);
      }
      sign = -sign;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return go((n >= 32) ? 0u : ((1u << n) - 1u));
}

}  // namespace

void QCartanSeries::ensure_order(int order) const {
  if (order <= order_) return;
  int n = g_.rank;
  std::vector<std::vector<LaurentZ>> m(static_cast<size_t>(n), std::vector<LaurentZ>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[size_t(i)][size_t(j)] = quantum_cartan_entry(g_, i + 1, j + 1);
  LaurentZ det = det_laurent(m);
  check(!det.is_zero(), "quantum cartan determinant vanished");
  // adjugate via minors
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<std::vector<LaurentZ>> minor;
      minor.reserve(size_t(n - 1));
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;  // adj_{ij} = (-1)^{i+j} det(minor with row j, col i removed)
        std::vector<LaurentZ> row;
        row.reserve(size_t(n - 1));
        for (int cidx = 0; cidx < n; ++cidx) {
          if (cidx == i) continue;
          row.push_back(m[size_t(r)][size_t(cidx)]);
        }
        minor.push_back(std::move(row));
      }
      LaurentZ adj = minor.empty() ? LaurentZ::term(1, 0) : det_laurent(minor);
      if ((i + j) % 2 == 1) adj = adj * i64(-1);
      table_[size_t(i)][size_t(j)] = series_quotient(adj, det, order);
    }
  }
  order_ = order;
}

i64 QCartanSeries::ctilde(int i, int j, int u) const {
  check(i >= 1 && i <= g_.rank && j >= 1 && j <= g_.rank, "ctilde: index out of range");
  std::lock_guard<std::mutex> lock(mu_);
  int want = std::max(u, 4 * g_.lacing * g_.dual_coxeter);
  ensure_order(want);
  auto& tab = table_[size_t(i - 1)][size_t(j - 1)];
  auto it = tab.find(u);
  return it == tab.end() ? 0 : it->second;
}

i64 QCartanSeries::npair(int i, int p, int j, int s) const {
  int di = g_.d(i);
  return ctilde(i, j, p - s - di) - ctilde(i, j, p - s + di) - ctilde(i, j, s - p - di) +
         ctilde(i, j, s - p + di);
}

std::string tpoly_to_string(const THalfPoly& p) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : p) {
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    i64 ab = c > 0 ? c : -c;
    bool unit = (ab == 1) && k != 0;
    if (!unit) os << ab;
    if (k != 0) {
      if (!unit) os << "*";
      os << "t^{" << k << "/2}";
    }
    first = false;
  }
  if (first) return "0";
  return os.str();
}

}  // namespace qgr
