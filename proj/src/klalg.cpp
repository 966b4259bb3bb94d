#include "qgr/klalg.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace qgr {

namespace {

// positions (with multiplicity) of the i-th row variables of a monomial
std::map<int, int> row_profile(const std::shared_ptr<YTorus>& yt, const ExpVec& m, int i) {
  std::map<int, int> prof;
  for (auto& [v, e] : m.e) {
    auto [vi, p] = yt->ip_of(v);
    if (vi == i && e != 0) prof[p] = e;
  }
  return prof;
}

bool row_nonnegative(const std::map<int, int>& prof) {
  for (auto& [p, e] : prof)
    if (e < 0) return false;
  return true;
}

// Decompose a nonnegative row profile into maximal strings with step 2d and
// return, for each string, the list of flip positions "from the top": the
// j-th expansion step of string [a, b] multiplies by the inverse of
// A_{i, b + d - 2 d l} for l = 0 .. j-1.
std::vector<std::vector<int>> max_strings(std::map<int, int> prof, int step) {
  std::vector<std::vector<int>> strings;
  while (true) {
    // find lowest position with multiplicity
    int start = 0;
    bool found = false;
    for (auto& [p, e] : prof)
      if (e > 0) {
        start = p;
        found = true;
        break;
      }
    if (!found) break;
    std::vector<int> str{start};
    prof[start] -= 1;
    int cur = start;
    while (prof.count(cur + step) && prof[cur + step] > 0) {
      cur += step;
      prof[cur] -= 1;
      str.push_back(cur);
    }
    strings.push_back(std::move(str));
  }
  return strings;
}

}  // namespace

CharResult classical_character(const std::shared_ptr<YTorus>& classical_yt, const QDatum& q,
                               const ExpVec& m, const Budget& budget) {
  check(classical_yt->classical(), "classical_character: classical torus required");
  check(is_dominant(m), "classical_character: dominant monomial required");
  const CartanData& g = classical_yt->cartan();
  std::map<ExpVec, i64> chi{{m, 1}};
  std::deque<ExpVec> work{m};
  i64 step_guard = 64 * i64(budget.max_monomials);
  while (!work.empty()) {
    check(--step_guard > 0, "classical_character: step budget exceeded");
    ExpVec cur = work.front();
    work.pop_front();
    i64 mult = chi.at(cur);
    for (int i = 1; i <= g.rank; ++i) {
      auto prof = row_profile(classical_yt, cur, i);
      if (prof.empty() || !row_nonnegative(prof)) continue;
      auto strings = max_strings(prof, 2 * g.d(i));
      // expand each string independently; enumerate flip counts per string
      std::vector<int> lens;
      for (auto& s : strings) lens.push_back(int(s.size()));
      std::vector<int> flips(lens.size(), 0);
      while (true) {
        // advance odometer
        size_t pos = 0;
        while (pos < flips.size()) {
          if (flips[pos] < lens[pos]) {
            ++flips[pos];
            break;
          }
          flips[pos] = 0;
          ++pos;
        }
        if (pos == flips.size()) break;
        // monomial with the chosen flips
        ExpVec nm = cur;
        i64 factor_mult = mult;
        for (size_t sidx = 0; sidx < strings.size(); ++sidx) {
          for (int l = 0; l < flips[sidx]; ++l) {
            int top = strings[sidx][size_t(lens[sidx] - 1 - l)];
            nm = nm - a_monomial(classical_yt, q, i, top + g.d(i));
          }
        }
        auto it = chi.find(nm);
        if (it == chi.end() || it->second < factor_mult) {
          chi[nm] = factor_mult;
          work.push_back(nm);
          check(int(chi.size()) <= budget.max_monomials,
                "classical_character: monomial budget exceeded");
        }
      }
    }
  }
  CharResult res;
  res.element = TorusElement::zero(classical_yt);
  int dominant_count = 0;
  res.thin = true;
  for (auto& [mm, c] : chi) {
    res.element.add_term(0, mm, c);
    if (is_dominant(mm)) ++dominant_count;
    if (c != 1) res.thin = false;
  }
  check(dominant_count == 1, "classical_character: closure produced extra dominant monomials");
  res.dominant = m;
  res.term_count = i64(chi.size());
  return res;
}

ScreenResult screening_check(const std::shared_ptr<YTorus>& yt, const QDatum& q,
                             const TorusElement& x, int i) {
  const CartanData& g = yt->cartan();
  int d = g.d(i);
  TorusElement rem = x;
  int guard = 100000;
  while (true) {
    check(--guard > 0, "screening_check: peeling budget exceeded");
    // find a term with a positive exponent on row i at minimal spectral p
    bool found = false;
    int best_p = 0;
    TorusElement::Term best_term;
    i64 best_coeff = 0;
    for (auto& [t, c] : rem.terms()) {
      for (auto& [v, e] : t.second.e) {
        auto [vi, p] = yt->ip_of(v);
        if (vi == i && e > 0 && (!found || p < best_p)) {
          found = true;
          best_p = p;
          best_term = t;
          best_coeff = c;
        }
      }
    }
    if (!found) break;
    // peel coeff * t^{k/2} * B(i, best_p) * rest, where the block is
    // Y(i,p) (1 + t^{-1} A(i,p+d)^{-1})
    ExpVec rest = best_term.second - ExpVec::unit(yt->var(i, best_p));
    i64 comm = yt->classical() ? 0 : y_commutation(yt, ExpVec::unit(yt->var(i, best_p)), rest);
    TorusElement block = TorusElement::monomial(yt, ExpVec::unit(yt->var(i, best_p)));
    ExpVec am = a_monomial(yt, q, i, best_p + d);
    // Y(i,p) * A^{-1} = t^{N(Y, A^{-1})/2} (Y A^{-1})_
    i64 cm2 = yt->classical() ? 0 : y_commutation(yt, ExpVec::unit(yt->var(i, best_p)), -am);
    block.add_term(int(cm2) - 2, ExpVec::unit(yt->var(i, best_p)) - am, 1);
    TorusElement restm = TorusElement::monomial(yt, rest, best_term.first - int(comm), best_coeff);
    rem = rem - block * restm;
  }
  ScreenResult res;
  // any residual still involving row-i variables refutes membership
  bool clean = true;
  for (auto& [t, c] : rem.terms())
    for (auto& [v, e] : t.second.e)
      if (yt->ip_of(v).first == i) clean = false;
  res.ok = clean;
  res.residual = clean ? TorusElement::zero(yt) : rem;
  return res;
}

CharResult thin_class(const std::shared_ptr<YTorus>& yt, const QDatum& q, const ExpVec& m,
                      const Budget& budget) {
  check(!yt->classical(), "thin_class: quantum torus required");
  auto cls = classical_character(yt->classical_twin(), q, m, budget);
  check(cls.thin, "thin_class: classical closure is not multiplicity-free");
  CharResult res;
  res.element = TorusElement::zero(yt);
  for (auto& [t, c] : cls.element.terms()) res.element.add_term(0, t.second, c);
  res.dominant = m;
  res.thin = true;
  res.term_count = cls.term_count;
  for (int i = 1; i <= yt->cartan().rank; ++i) {
    auto sc = screening_check(yt, q, res.element, i);
    check(sc.ok, "thin_class: flat deformation refuted by the kernel check at i = " +
                     std::to_string(i));
  }
  return res;
}

TorusElement standard_class(const std::shared_ptr<YTorus>& yt, const QDatum& q, const ExpVec& m,
                            const Budget& budget) {
  check(is_dominant(m), "standard_class: dominant monomial required");
  // collect factors ordered by spectral parameter ascending, then by index
  std::vector<std::pair<std::pair<int, int>, int>> factors;  // ((p, i), mult)
  for (auto& [v, e] : m.e) {
    auto [i, p] = yt->ip_of(v);
    factors.push_back({{p, i}, e});
  }
  std::sort(factors.begin(), factors.end());
  TorusElement acc = TorusElement::one(yt);
  // fundamental classes at equal spectral parameter must commute exactly
  for (size_t a = 0; a < factors.size(); ++a)
    for (size_t b = a + 1; b < factors.size() && factors[b].first.first == factors[a].first.first;
         ++b) {
      auto fa = thin_class(yt, q, ExpVec::unit(yt->var(factors[a].first.second, factors[a].first.first)), budget);
      auto fb = thin_class(yt, q, ExpVec::unit(yt->var(factors[b].first.second, factors[b].first.first)), budget);
      check(fa.element * fb.element == fb.element * fa.element,
            "standard_class: equal-parameter fundamental classes failed to commute");
    }
  for (auto& [pi, e] : factors) {
    auto f = thin_class(yt, q, ExpVec::unit(yt->var(pi.second, pi.first)), budget);
    for (int rep = 0; rep < e; ++rep) acc = acc * f.element;
  }
  // normalization: leading coefficient of the dominant monomial becomes 1
  i64 norm = 0;
  for (size_t a = 0; a < factors.size(); ++a)
    for (size_t b = a + 1; b < factors.size(); ++b)
      norm += i64(factors[a].second) * i64(factors[b].second) *
              yt->npair(factors[a].first.second, factors[a].first.first, factors[b].first.second,
                        factors[b].first.first);
  return acc.scale(1, int(-norm));
}

std::map<ExpVec, THalfPoly> coefficient_table(const TorusElement& x) {
  std::map<ExpVec, THalfPoly> table;
  for (auto& [t, c] : x.terms()) table[t.second][t.first] += c;
  return table;
}

KlResult kl_canonical(const std::shared_ptr<YTorus>& yt, const QDatum& q, const ExpVec& m,
                      const Budget& budget) {
  TorusElement et = standard_class(yt, q, m, budget);
  // dominant monomials strictly below m inside the support, processed from
  // the top down (fewer A-steps from m first)
  std::vector<std::pair<i64, ExpVec>> doms;
  for (auto& [mm, poly] : coefficient_table(et)) {
    if (mm == m || !is_dominant(mm)) continue;
    auto h = nakajima_height(yt, q, mm, m);
    check(h.has_value(), "kl_canonical: support contains a dominant monomial not below m");
    doms.push_back({*h, mm});
  }
  std::sort(doms.begin(), doms.end());
  KlResult res;
  TorusElement rem = et;
  for (auto& [height, mm] : doms) {
    THalfPoly c = coefficient_table(rem).count(mm) ? coefficient_table(rem).at(mm) : THalfPoly{};
    // strictly positive part, matched against the bar-image of the rest
    THalfPoly corr;
    for (auto& [k, v] : c) {
      if (k > 0) {
        i64 neg = c.count(-k) ? c.at(-k) : 0;
        if (v - neg != 0) corr[k] = v - neg;
      }
    }
    if (corr.empty()) continue;
    auto lower = kl_canonical(yt, q, mm, budget);
    for (auto& [k, v] : corr) rem = rem - lower.element.scale(v, k);
    res.corrections[mm] = corr;
  }
  check(rem.bar_invariant(), "kl_canonical: triangularization failed to reach a bar-invariant element");
  res.element = rem;
  return res;
}

}  // namespace qgr
