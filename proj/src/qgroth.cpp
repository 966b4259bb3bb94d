#include "qgr/qgroth.hpp"

#include <algorithm>
#include <sstream>

#include "qgr/printing.hpp"

namespace qgr {

ExpVec kr_exponents(const std::shared_ptr<YTorus>& yt, const QDatum& q, int iv, int a, int b) {
  ExpVec m;
  if (a > b) return m;
  int d = q.dbar(iv);
  int i = q.bar(iv);
  // lowest lattice point >= a on the row of iv
  int start = a;
  while (!q.in_hat_delta(iv, start)) ++start;
  for (int p = start; p <= b; p += 2 * d) m = m + ExpVec::unit(yt->var(i, p));
  return m;
}

EtaMap::EtaMap(AdaptedSeq seq, int window, bool classical)
    : seq_(std::move(seq)), window_(window), classical_(classical) {
  const QDatum& q = seq_.datum();
  yt_ = YTorus::make(q.folded, classical);
  pair_ = build_pair(q.unfolded, seq_from_adapted(seq_), window_);
  images_.reserve(size_t(window_));
  labels_.reserve(size_t(window_));
  for (int u = 1; u <= window_; ++u) {
    RepPoint r = seq_.rho(u);
    labels_.push_back(r);
    slot_of_[{r.vertex, r.p}] = u;
    images_.push_back(kr_exponents(yt_, q, r.vertex, r.p, q.height(r.vertex)));
  }
  // well-definedness: the window skew matrix equals the Y-side pairing of the
  // slot images
  for (int u = 1; u <= window_; ++u)
    for (int v = u + 1; v <= window_; ++v)
      check(pair_.lam(u, v) ==
                y_commutation(yt_, images_[size_t(u - 1)], images_[size_t(v - 1)]),
            "EtaMap: skew matrix does not match the Y-side pairing at (" + std::to_string(u) +
                "," + std::to_string(v) + ")");
}

const ExpVec& EtaMap::slot_image(int u) const {
  check(u >= 1 && u <= window_, "EtaMap::slot_image: slot out of range");
  return images_[size_t(u - 1)];
}

TorusElement EtaMap::apply(const TorusElement& x) const {
  return x.map_terms(yt_, [this](const ExpVec& a) {
    ExpVec m;
    for (auto& [u, e] : a.e) {
      check(u >= 1 && u <= window_, "EtaMap::apply: slot outside the registered window");
      m = m + images_[size_t(u - 1)] * e;
    }
    return m;
  });
}

ExpVec EtaMap::inverse_exp(const ExpVec& m) const {
  const QDatum& q = seq_.datum();
  ExpVec a;
  for (auto& [v, e] : m.e) {
    auto [i, p] = yt_->ip_of(v);
    auto iv = q.lift(i, p);
    check(iv.has_value(), "EtaMap::inverse: variable outside the lattice");
    auto it = slot_of_.find({*iv, p});
    check(it != slot_of_.end(), "EtaMap::inverse: point outside the window");
    a = a + ExpVec::unit(it->second, e);
    int above = p + 2 * q.dbar(*iv);
    if (above <= q.height(*iv)) {
      auto it2 = slot_of_.find({*iv, above});
      check(it2 != slot_of_.end(), "EtaMap::inverse: previous occurrence outside the window");
      a = a + ExpVec::unit(it2->second, -e);
    }
  }
  return a;
}

TorusElement EtaMap::inverse(const TorusElement& y) const {
  auto ambient = fresh_seed().ambient;
  return y.map_terms(ambient, [this](const ExpVec& m) { return inverse_exp(m); });
}

Seed EtaMap::fresh_seed() const { return initial_seed(pair_, classical_, labels_); }

TorusElement trunc_ft_kr(const EtaMap& eta, int iv, int p, int k) {
  const QDatum& q = eta.datum();
  check(k >= 0, "trunc_ft_kr: nonnegative shift count required");
  // the height function after reflecting the first k letters
  QDatum qk = q;
  for (int j = 1; j <= k; ++j) qk = source_reflect(qk, eta.seq().at(j));
  check(qk.in_hat_delta(iv, p) && p <= qk.height(iv),
        "trunc_ft_kr: point outside the shifted window");
  int n_occ = (qk.height(iv) - p) / (2 * q.dbar(iv));
  Seed s = eta.fresh_seed();
  for (int j = 0; j < k; ++j) seed_forward_shift(s);
  // slot with the n_occ-th occurrence of iv in the current letters
  int u = 0, seen = 0;
  for (int w = 1; w <= s.safe_n; ++w) {
    if (s.pair.letter(w) == iv) {
      if (seen == n_occ) {
        u = w;
        break;
      }
      ++seen;
    }
  }
  check(u != 0 && u <= s.safe_n, "trunc_ft_kr: window exhausted");
  return eta.apply(s.var(u));
}

namespace {

// coefficient polynomial (in half powers of t) of a classical monomial
THalfPoly coeff_of(const TorusElement& x, const ExpVec& m) {
  THalfPoly p;
  for (auto& [t, c] : x.terms())
    if (t.second == m) p[t.first] += c;
  return p;
}

std::optional<int> single_power_ratio(const THalfPoly& num, const THalfPoly& den) {
  // num == t^{r/2} den as Laurent polynomials in t^{1/2}
  if (num.empty() || den.empty() || num.size() != den.size()) return std::nullopt;
  int r = num.begin()->first - den.begin()->first;
  auto itn = num.begin();
  auto itd = den.begin();
  for (; itn != num.end(); ++itn, ++itd)
    if (itn->first - itd->first != r || itn->second != itd->second) return std::nullopt;
  return r;
}

}  // namespace

TsysReport t_system_check(const QDatum& q, int iv, int p, int s, const KrClassFn& kr_class) {
  TsysReport rep;
  int d2 = 2 * q.dbar(iv);
  check(q.in_hat_delta(iv, p) && q.in_hat_delta(iv, s) && p < s,
        "t_system_check: endpoints must be comparable lattice points on one row");
  TorusElement lhs = kr_class(iv, p, s - d2) * kr_class(iv, p + d2, s);
  TorusElement main = kr_class(iv, p + d2, s - d2) * kr_class(iv, p, s);
  // neighbour classes on the interior lattice points strictly between p and s
  std::vector<TorusElement> factors;
  for (int jv = 1; jv <= q.rank_unfolded(); ++jv)
    if (q.unfolded.adjacent(iv, jv)) factors.push_back(kr_class(jv, p + 1, s - 1));
  // the factors must commute up to a power of t before the product is ordered
  for (size_t a = 0; a < factors.size(); ++a)
    for (size_t b = a + 1; b < factors.size(); ++b) {
      TorusElement ab = factors[a] * factors[b];
      TorusElement ba = factors[b] * factors[a];
      bool commuted = false;
      if (!ab.is_zero() && !ba.is_zero()) {
        int shift = ab.terms().front().first.first - ba.terms().front().first.first;
        commuted = ab == ba.scale(1, shift);
      }
      if (!commuted) {
        rep.ok = false;
        rep.detail = "neighbour classes do not commute up to a power of t";
        return rep;
      }
    }
  // ordered product, ascending vertex label
  TorusElement prod;
  bool first = true;
  for (auto& f : factors) {
    prod = first ? f : prod * f;
    first = false;
  }
  if (first) prod = TorusElement::one(lhs.context());
  rep.lhs = lhs;
  rep.rhs_main = main;
  rep.rhs_prod = prod;

  // find the exponents through monomials exclusive to one side
  std::optional<int> a_half, b_half;
  for (auto& [t, c] : main.terms()) {
    THalfPoly in_prod = coeff_of(prod, t.second);
    if (!in_prod.empty()) continue;
    auto r = single_power_ratio(coeff_of(lhs, t.second), coeff_of(main, t.second));
    if (r) {
      a_half = r;
      break;
    }
  }
  if (a_half) {
    TorusElement rest = lhs - main.scale(1, *a_half);
    if (rest.is_zero() && prod.is_zero()) {
      b_half = 0;
    } else if (!rest.is_zero() && !prod.is_zero()) {
      auto& t0 = rest.terms().front().first;
      auto r = single_power_ratio(coeff_of(rest, t0.second), coeff_of(prod, t0.second));
      if (r && rest == prod.scale(1, *r)) b_half = r;
    }
  }
  if (a_half && b_half) {
    TorusElement recon = main.scale(1, *a_half) + prod.scale(1, *b_half);
    if (recon == lhs) {
      rep.ok = true;
      rep.a_half = *a_half;
      rep.b_half = *b_half;
      return rep;
    }
  }
  rep.ok = false;
  rep.detail = "no exact power pair reproduces the identity";
  return rep;
}

std::string tsys_report_json(const TsysReport& r) {
  std::ostringstream os;
  os << "{\"ok\":" << (r.ok ? "true" : "false") << ",\"a_half\":" << r.a_half
     << ",\"b_half\":" << r.b_half << ",\"lhs\":" << to_json(r.lhs)
     << ",\"rhs_terms\":[" << to_json(r.rhs_main) << "," << to_json(r.rhs_prod)
     << "],\"residual\":\"" << r.detail << "\"}";
  return os.str();
}

}  // namespace qgr
