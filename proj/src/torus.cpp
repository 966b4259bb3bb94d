#include "qgr/torus.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace qgr {

ExpVec ExpVec::operator+(const ExpVec& o) const {
  ExpVec r;
  size_t i = 0, j = 0;
  while (i < e.size() || j < o.e.size()) {
    if (j == o.e.size() || (i < e.size() && e[i].first < o.e[j].first)) {
      r.e.push_back(e[i]);
      ++i;
    } else if (i == e.size() || o.e[j].first < e[i].first) {
      r.e.push_back(o.e[j]);
      ++j;
    } else {
      int s = e[i].second + o.e[j].second;
      if (s != 0) r.e.push_back({e[i].first, s});
      ++i;
      ++j;
    }
  }
  return r;
}

ExpVec ExpVec::operator-() const {
  ExpVec r = *this;
  for (auto& [v, x] : r.e) x = -x;
  return r;
}

ExpVec ExpVec::operator*(int k) const {
  if (k == 0) return ExpVec{};
  ExpVec r = *this;
  for (auto& [v, x] : r.e) x *= k;
  return r;
}

i64 TorusContext::skew_form(const ExpVec& a, const ExpVec& b) const {
  i64 acc = 0;
  for (auto& [u, xu] : a.e)
    for (auto& [v, xv] : b.e) acc += i64(xu) * i64(xv) * skew(u, v);
  return acc;
}

// ---------------- YTorus ----------------

struct YTorus::Registry {
  std::mutex mu;
  std::map<std::pair<int, int>, VarId> ids;
  std::vector<std::pair<int, int>> ips;
};

YTorus::YTorus(CartanData g, bool classical, std::shared_ptr<Registry> reg,
               std::shared_ptr<QCartanSeries> series)
    : g_(std::move(g)), classical_(classical), reg_(std::move(reg)), series_(std::move(series)) {}

std::shared_ptr<YTorus> YTorus::make(CartanData g, bool classical) {
  auto reg = std::make_shared<Registry>();
  auto series = std::make_shared<QCartanSeries>(g);
  return std::shared_ptr<YTorus>(new YTorus(std::move(g), classical, reg, series));
}

std::shared_ptr<YTorus> YTorus::classical_twin() const {
  if (classical_) fail("classical_twin: already classical");
  if (!twin_) twin_ = std::shared_ptr<YTorus>(new YTorus(g_, true, reg_, series_));
  return twin_;
}

VarId YTorus::var(int i, int p) const {
  check(i >= 1 && i <= g_.rank, "YTorus::var: index out of range");
  std::lock_guard<std::mutex> lock(reg_->mu);
  auto key = std::make_pair(i, p);
  auto it = reg_->ids.find(key);
  if (it != reg_->ids.end()) return it->second;
  VarId v = VarId(reg_->ips.size());
  reg_->ips.push_back(key);
  reg_->ids.emplace(key, v);
  return v;
}

std::pair<int, int> YTorus::ip_of(VarId v) const {
  std::lock_guard<std::mutex> lock(reg_->mu);
  check(v >= 0 && v < VarId(reg_->ips.size()), "YTorus::ip_of: unknown variable");
  return reg_->ips[size_t(v)];
}

i64 YTorus::skew(VarId a, VarId b) const {
  if (classical_) return 0;
  auto [i, p] = ip_of(a);
  auto [j, s] = ip_of(b);
  return series_->npair(i, p, j, s);
}

std::string YTorus::var_name(VarId v) const {
  auto [i, p] = ip_of(v);
  std::ostringstream os;
  os << "Y(" << i << "," << p << ")";
  return os.str();
}

std::pair<int, int> YTorus::print_key(VarId v) const {
  auto [i, p] = ip_of(v);
  return {i, -p};
}

// ---------------- ClusterTorus ----------------

ClusterTorus::ClusterTorus(std::vector<std::vector<i64>> lambda, bool classical)
    : lambda_(std::move(lambda)), classical_(classical) {
  for (auto& row : lambda_)
    check(row.size() == lambda_.size(), "ClusterTorus: square matrix required");
}

i64 ClusterTorus::skew(VarId a, VarId b) const {
  if (classical_) return 0;
  check(a >= 1 && a <= size() && b >= 1 && b <= size(), "ClusterTorus::skew: slot out of range");
  return lambda(a, b);
}

std::string ClusterTorus::var_name(VarId v) const {
  std::ostringstream os;
  if (!labels_.empty() && v >= 1 && v <= int(labels_.size())) {
    auto& l = labels_[size_t(v - 1)];
    os << "X(" << l.vertex << "," << l.p << ")";
  } else {
    os << "X" << v;
  }
  return os.str();
}

std::pair<int, int> ClusterTorus::print_key(VarId v) const {
  if (!labels_.empty() && v >= 1 && v <= int(labels_.size())) {
    auto& l = labels_[size_t(v - 1)];
    return {l.vertex, -l.p};
  }
  return {v, 0};
}

// ---------------- TorusElement ----------------

void TorusElement::add_term(int t_half, ExpVec a, i64 coeff) {
  if (coeff == 0) return;
  Term key{t_half, std::move(a)};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const auto& lhs, const Term& k) { return lhs.first < k; });
  if (it != terms_.end() && it->first == key) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, {std::move(key), coeff});
  }
}

TorusElement TorusElement::monomial(std::shared_ptr<const TorusContext> ctx, ExpVec a, int t_half,
                                    i64 coeff) {
  TorusElement r(std::move(ctx));
  r.add_term(t_half, std::move(a), coeff);
  return r;
}

TorusElement TorusElement::operator+(const TorusElement& o) const {
  check(ctx_ == o.ctx_ || is_zero() || o.is_zero(), "TorusElement: context mismatch in +");
  TorusElement r = *this;
  if (!r.ctx_) r.ctx_ = o.ctx_;
  for (auto& [t, c] : o.terms_) r.add_term(t.first, t.second, c);
  return r;
}

TorusElement TorusElement::operator-(const TorusElement& o) const { return *this + o.scale(-1); }

TorusElement TorusElement::scale(i64 c, int t_half) const {
  TorusElement r(ctx_);
  if (c == 0) return r;
  for (auto& [t, cc] : terms_) r.add_term(t.first + t_half, t.second, cc * c);
  return r;
}

TorusElement TorusElement::operator*(const TorusElement& o) const {
  check(ctx_ == o.ctx_ || is_zero() || o.is_zero(), "TorusElement: context mismatch in *");
  TorusElement r(ctx_ ? ctx_ : o.ctx_);
  if (is_zero() || o.is_zero()) return r;
  for (auto& [ta, ca] : terms_) {
    for (auto& [tb, cb] : o.terms_) {
      i64 shift = ctx_->skew_form(ta.second, tb.second);
      r.add_term(ta.first + tb.first + int(shift), ta.second + tb.second, ca * cb);
    }
  }
  return r;
}

TorusElement TorusElement::bar() const {
  TorusElement r(ctx_);
  for (auto& [t, c] : terms_) r.add_term(-t.first, t.second, c);
  return r;
}

bool TorusElement::bar_invariant() const { return *this == bar(); }

TorusElement TorusElement::eval_t1(std::shared_ptr<const TorusContext> classical_ctx) const {
  TorusElement r(std::move(classical_ctx));
  for (auto& [t, c] : terms_) r.add_term(0, t.second, c);
  return r;
}

TorusElement TorusElement::inverse_monomial() const {
  auto single = as_single();
  check(single.has_value(), "inverse_monomial: not a single term");
  auto& [t, c] = *single;
  check(c == 1 || c == -1, "inverse_monomial: coefficient must be a unit");
  // (t^{k/2} X^a)^{-1} = t^{-k/2} X^{-a}
  return monomial(ctx_, -t.second, -t.first, c);
}

namespace {

// translation-invariant total order on exponent vectors
int cmp_exp(const ExpVec& a, const ExpVec& b) {
  size_t i = 0, j = 0;
  while (i < a.e.size() || j < b.e.size()) {
    VarId va = i < a.e.size() ? a.e[i].first : std::numeric_limits<VarId>::max();
    VarId vb = j < b.e.size() ? b.e[j].first : std::numeric_limits<VarId>::max();
    if (va == vb) {
      if (a.e[i].second != b.e[j].second) return a.e[i].second < b.e[j].second ? -1 : 1;
      ++i;
      ++j;
    } else if (va < vb) {
      if (a.e[i].second != 0) return a.e[i].second < 0 ? -1 : 1;
      ++i;
    } else {
      if (b.e[j].second != 0) return 0 < b.e[j].second ? -1 : 1;
      ++j;
    }
  }
  return 0;
}

using TP = THalfPoly;

TP tp_shift(const TP& p, int half) {
  TP r;
  for (auto& [k, c] : p) r[k + half] = c;
  return r;
}

TP tp_sub(TP a, const TP& b) {
  for (auto& [k, c] : b) {
    a[k] -= c;
    if (a[k] == 0) a.erase(k);
  }
  return a;
}

TP tp_mul(const TP& a, const TP& b) {
  TP r;
  for (auto& [ka, ca] : a)
    for (auto& [kb, cb] : b) {
      r[ka + kb] += ca * cb;
      if (r[ka + kb] == 0) r.erase(ka + kb);
    }
  return r;
}

std::optional<TP> tp_div_exact(TP num, const TP& den) {
  if (den.empty()) return std::nullopt;
  TP q;
  auto dh = den.rbegin();
  int guard = 0;
  while (!num.empty()) {
    if (++guard > 4096) return std::nullopt;
    auto nh = num.rbegin();
    int k = nh->first - dh->first;
    if (nh->second % dh->second != 0) return std::nullopt;
    i64 c = nh->second / dh->second;
    q[k] += c;
    if (q[k] == 0) q.erase(k);
    TP piece;
    piece[k] = c;
    num = tp_sub(num, tp_mul(piece, den));
  }
  return q;
}

std::map<ExpVec, TP> grouped(const TorusElement& x) {
  std::map<ExpVec, TP> g;
  for (auto& [t, c] : x.terms()) g[t.second][t.first] += c;
  return g;
}

const ExpVec* leading_exp(const std::map<ExpVec, TP>& g) {
  const ExpVec* best = nullptr;
  for (auto& [e, p] : g) {
    if (p.empty()) continue;
    if (!best || cmp_exp(*best, e) < 0) best = &e;
  }
  return best;
}

void prune(std::map<ExpVec, TP>& g) {
  for (auto it = g.begin(); it != g.end();) {
    if (it->second.empty()) it = g.erase(it);
    else ++it;
  }
}

}  // namespace

std::optional<TorusElement> TorusElement::try_divide_right(const TorusElement& divisor,
                                                           int max_steps) const {
  // find q with q * divisor == *this
  if (divisor.is_zero()) return std::nullopt;
  if (is_zero()) return TorusElement::zero(ctx_);
  auto num = grouped(*this);
  auto den = grouped(divisor);
  const ExpVec de = *leading_exp(den);
  const TP dc = den.at(de);
  TorusElement q(ctx_);
  int budget = max_steps;
  while (true) {
    prune(num);
    if (num.empty()) break;
    if (--budget <= 0) return std::nullopt;
    const ExpVec ne = *leading_exp(num);
    ExpVec qe = ne - de;
    i64 shift = ctx_->skew_form(qe, de);
    auto qc = tp_div_exact(num.at(ne), tp_shift(dc, int(shift)));
    if (!qc || qc->empty()) return std::nullopt;
    for (auto& [k, c] : *qc) q.add_term(k, qe, c);
    for (auto& [ee, pp] : den) {
      i64 sh = ctx_->skew_form(qe, ee);
      TP prod = tp_mul(tp_shift(*qc, int(sh)), pp);
      num[qe + ee] = tp_sub(num[qe + ee], prod);
    }
  }
  return q;
}

std::optional<TorusElement> TorusElement::try_divide_left(const TorusElement& divisor,
                                                          int max_steps) const {
  // find q with divisor * q == *this
  if (divisor.is_zero()) return std::nullopt;
  if (is_zero()) return TorusElement::zero(ctx_);
  auto num = grouped(*this);
  auto den = grouped(divisor);
  const ExpVec de = *leading_exp(den);
  const TP dc = den.at(de);
  TorusElement q(ctx_);
  int budget = max_steps;
  while (true) {
    prune(num);
    if (num.empty()) break;
    if (--budget <= 0) return std::nullopt;
    const ExpVec ne = *leading_exp(num);
    ExpVec qe = ne - de;
    i64 shift = ctx_->skew_form(de, qe);
    auto qc = tp_div_exact(num.at(ne), tp_shift(dc, int(shift)));
    if (!qc || qc->empty()) return std::nullopt;
    for (auto& [k, c] : *qc) q.add_term(k, qe, c);
    for (auto& [ee, pp] : den) {
      i64 sh = ctx_->skew_form(ee, qe);
      TP prod = tp_mul(pp, tp_shift(*qc, int(sh)));
      num[ee + qe] = tp_sub(num[ee + qe], prod);
    }
  }
  return q;
}

TorusElement TorusElement::divide_right(const TorusElement& divisor) const {
  auto q = try_divide_right(divisor);
  check(q.has_value(), "divide_right: not exactly divisible");
  return *q;
}

TorusElement TorusElement::divide_left(const TorusElement& divisor) const {
  auto q = try_divide_left(divisor);
  check(q.has_value(), "divide_left: not exactly divisible");
  return *q;
}

TorusElement TorusElement::map_terms(std::shared_ptr<const TorusContext> new_ctx,
                                     const std::function<ExpVec(const ExpVec&)>& f) const {
  TorusElement r(std::move(new_ctx));
  for (auto& [t, c] : terms_) r.add_term(t.first, f(t.second), c);
  return r;
}

TorusElement TorusElement::filter_vars(const std::function<bool(VarId)>& keep) const {
  TorusElement r(ctx_);
  for (auto& [t, c] : terms_) {
    bool ok = true;
    for (auto& [v, x] : t.second.e)
      if (!keep(v)) {
        ok = false;
        break;
      }
    if (ok) r.add_term(t.first, t.second, c);
  }
  return r;
}

// ---------------- Y-side helpers ----------------

ExpVec y_monomial(const std::shared_ptr<YTorus>& yt,
                  std::vector<std::pair<std::pair<int, int>, int>> factors) {
  ExpVec m;
  for (auto& [ip, e] : factors) m = m + ExpVec::unit(yt->var(ip.first, ip.second), e);
  return m;
}

TorusElement y_commutative_monomial(const std::shared_ptr<YTorus>& yt, const ExpVec& m, int t_half,
                                    i64 coeff) {
  return TorusElement::monomial(yt, m, t_half, coeff);
}

bool is_dominant(const ExpVec& m) { return m.is_nonnegative(); }

ExpVec a_monomial(const std::shared_ptr<YTorus>& yt, const QDatum& q, int i, int p) {
  const CartanData& g = yt->cartan();
  int di = g.d(i);
  check(q.in_hat_I(i, p - di), "a_monomial: (i, p - d_i) must lie in the lattice");
  ExpVec m = ExpVec::unit(yt->var(i, p - di)) + ExpVec::unit(yt->var(i, p + di));
  for (int j = 1; j <= g.rank; ++j) {
    if (!g.adjacent(i, j)) continue;
    for (int s = p - di + 1; s <= p + di - 1; ++s)
      if (q.in_hat_I(j, s)) m = m + ExpVec::unit(yt->var(j, s), -1);
  }
  return m;
}

namespace {

struct NakTrace {
  NakajimaResult result;
  i64 steps;
};

NakTrace nakajima_greedy(const std::shared_ptr<YTorus>& yt, const QDatum& q, const ExpVec& lo,
                         const ExpVec& hi);

}  // namespace

NakajimaResult nakajima_leq(const std::shared_ptr<YTorus>& yt, const QDatum& q, const ExpVec& lo,
                            const ExpVec& hi) {
  return nakajima_greedy(yt, q, lo, hi).result;
}

std::optional<i64> nakajima_height(const std::shared_ptr<YTorus>& yt, const QDatum& q,
                                   const ExpVec& lo, const ExpVec& hi) {
  auto tr = nakajima_greedy(yt, q, lo, hi);
  if (tr.result != NakajimaResult::Less) return std::nullopt;
  return tr.steps;
}

namespace {

NakTrace nakajima_greedy(const std::shared_ptr<YTorus>& yt, const QDatum& q, const ExpVec& lo,
                         const ExpVec& hi) {
  ExpVec ratio = hi - lo;
  if (ratio.empty()) return {NakajimaResult::Less, 0};
  int floor_p = 0;
  bool have_floor = false;
  auto see = [&](const ExpVec& m) {
    for (auto& [v, x] : m.e) {
      int p = yt->ip_of(v).second;
      if (!have_floor || p < floor_p) {
        floor_p = p;
        have_floor = true;
      }
    }
  };
  see(hi);
  see(lo);
  floor_p -= 2 * q.period();
  int guard = 4096;
  i64 steps = 0;
  while (!ratio.empty()) {
    if (--guard <= 0) return {NakajimaResult::WindowExhausted, 0};
    VarId top = -1;
    int top_p = 0, top_i = 0;
    for (auto& [v, x] : ratio.e) {
      auto [i, p] = yt->ip_of(v);
      if (top < 0 || p > top_p || (p == top_p && i < top_i)) {
        top = v;
        top_p = p;
        top_i = i;
      }
    }
    int e = ratio.exp_of(top);
    if (e < 0) return {NakajimaResult::NotLess, 0};
    if (top_p - 2 * yt->cartan().d(top_i) < floor_p) return {NakajimaResult::WindowExhausted, 0};
    ExpVec am = a_monomial(yt, q, top_i, top_p - yt->cartan().d(top_i));
    ratio = ratio - am * e;
    steps += e;
  }
  return {NakajimaResult::Less, steps};
}

}  // namespace

i64 y_commutation(const std::shared_ptr<YTorus>& yt, const ExpVec& m1, const ExpVec& m2) {
  i64 acc = 0;
  for (auto& [u, xu] : m1.e) {
    auto [i, p] = yt->ip_of(u);
    for (auto& [v, xv] : m2.e) {
      auto [j, s] = yt->ip_of(v);
      acc += i64(xu) * i64(xv) * yt->npair(i, p, j, s);
    }
  }
  return acc;
}

TorusElement truncate_below(const TorusElement& x, const std::shared_ptr<YTorus>& yt,
                            const QDatum& q) {
  return x.filter_vars([&](VarId v) {
    auto [i, p] = yt->ip_of(v);
    return q.in_hat_I_le(i, p);
  });
}

ExpVec dual_shift_exp(const ExpVec& m, const std::shared_ptr<YTorus>& yt, const QDatum& q,
                      int sign) {
  ExpVec r;
  for (auto& [v, x] : m.e) {
    auto [i, p] = yt->ip_of(v);
    r = r + ExpVec::unit(yt->var(yt->cartan().star(i), p + sign * q.period()), x);
  }
  return r;
}

TorusElement dual_shift(const TorusElement& x, const std::shared_ptr<YTorus>& yt, const QDatum& q,
                        int sign) {
  check(sign == 1 || sign == -1, "dual_shift: sign must be +-1");
  return x.map_terms(x.context(), [&](const ExpVec& m) { return dual_shift_exp(m, yt, q, sign); });
}

}  // namespace qgr
