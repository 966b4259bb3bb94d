#include "qgr/subst.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <set>
#include <sstream>

#include "qgr/printing.hpp"

namespace qgr {

namespace {

std::vector<int> apply_gamma_word(const std::vector<int>& w, int k) {
  auto r = w;
  std::swap(r[size_t(k - 1)], r[size_t(k)]);
  return r;
}

std::vector<int> apply_beta_word(const std::vector<int>& w, int k) {
  auto r = w;
  r[size_t(k - 1)] = w[size_t(k)];
  r[size_t(k)] = w[size_t(k - 1)];
  r[size_t(k + 1)] = w[size_t(k)];
  return r;
}

}  // namespace

MoveScript derive_move_script(const CartanData& delta, const std::vector<int>& tgt_prefix,
                              const std::vector<int>& src_prefix) {
  check(tgt_prefix.size() == src_prefix.size(), "derive_move_script: length mismatch");
  MoveScript script;
  script.ell = int(tgt_prefix.size());
  if (tgt_prefix == src_prefix) return script;
  // Dijkstra over words, cost = (braid count, move count); braid moves are
  // minimized greedily
  using Cost = std::pair<int, int>;
  std::map<std::vector<int>, Cost> best;
  std::map<std::vector<int>, std::pair<std::vector<int>, Move>> parent;
  std::priority_queue<std::pair<Cost, std::vector<int>>,
                      std::vector<std::pair<Cost, std::vector<int>>>, std::greater<>>
      heap;
  best[tgt_prefix] = {0, 0};
  heap.push({{0, 0}, tgt_prefix});
  const size_t state_cap = 2000000;
  while (!heap.empty()) {
    auto [cost, w] = heap.top();
    heap.pop();
    if (best.at(w) < cost) continue;
    if (w == src_prefix) break;
    auto push = [&](std::vector<int> nw, Move mv, Cost ncost) {
      auto it = best.find(nw);
      if (it == best.end() || ncost < it->second) {
        best[nw] = ncost;
        parent[nw] = {w, mv};
        heap.push({ncost, std::move(nw)});
      }
    };
    for (int k = 1; k + 1 <= script.ell; ++k) {
      int a = w[size_t(k - 1)], b = w[size_t(k)];
      if (a != b && !delta.adjacent(a, b))
        push(apply_gamma_word(w, k), Move{'g', k}, {cost.first, cost.second + 1});
    }
    for (int k = 1; k + 2 <= script.ell; ++k) {
      int a = w[size_t(k - 1)], b = w[size_t(k)], c = w[size_t(k + 1)];
      if (a == c && a != b && delta.adjacent(a, b))
        push(apply_beta_word(w, k), Move{'b', k}, {cost.first + 1, cost.second + 1});
    }
    check(best.size() < state_cap, "derive_move_script: state budget exceeded");
  }
  check(best.count(src_prefix), "derive_move_script: prefixes are not connected by moves");
  // walk parents back from src_prefix
  std::vector<Move> rev;
  auto cur = src_prefix;
  while (cur != tgt_prefix) {
    auto& [prev, mv] = parent.at(cur);
    rev.push_back(mv);
    cur = prev;
  }
  script.moves.assign(rev.rbegin(), rev.rend());
  return script;
}

void apply_script_periodic(const MoveScript& script, Seed& seed, int periods) {
  // moves run in derivation order; replicas at distinct periods commute
  for (const Move& mv : script.moves) {
    for (int m = periods - 1; m >= 0; --m) {
      int k = mv.k + m * script.ell;
      if (mv.kind == 'g') seed_gamma(seed, k);
      else seed_beta(seed, k);
    }
  }
}

bool entries_equal(const SubstEntry& a, const SubstEntry& b) {
  if (!a.is_quotient && !b.is_quotient) return a.num == b.num;
  // cross multiplication in the (possibly noncommutative) torus:
  // a = da^{-1} na, b = db^{-1} nb; equal iff db * da^{-1} * na == nb,
  // i.e. the left quotients agree:  da^{-1} na == db^{-1} nb
  // test via: db * (da^{-1} na) == nb  using exact division
  const TorusElement& na = a.num;
  const TorusElement& nb = b.num;
  TorusElement da = a.is_quotient ? a.den : TorusElement::one(a.num.context());
  TorusElement db = b.is_quotient ? b.den : TorusElement::one(b.num.context());
  // da^{-1} na == db^{-1} nb  <=>  exists q: na = da q and nb = db q
  auto qa = na.try_divide_left(da);
  if (qa) {
    auto qb = nb.try_divide_left(db);
    if (qb) return *qa == *qb;
  }
  // fall back to the cross product comparison; valid when denominators are
  // central enough (always in the classical case)
  return db * na == da * nb;
}

namespace {

SubstEntry normal_form(SubstEntry e) {
  if (!e.is_quotient) return e;
  // single-term denominator: fold it into the numerator
  if (e.den.as_single()) {
    e.num = e.den.inverse_monomial() * e.num;
    e.den = TorusElement::one(e.num.context());
    e.is_quotient = false;
    return e;
  }
  // exact cancellation
  if (auto q = e.num.try_divide_left(e.den)) {
    e.num = *q;
    e.den = TorusElement::one(e.num.context());
    e.is_quotient = false;
    return e;
  }
  // single-term numerator: move it into the denominator, num becomes 1
  if (auto n = e.num.as_single()) {
    e.den = e.num.inverse_monomial() * e.den;
    e.num = TorusElement::one(e.num.context());
    return e;
  }
  return e;
}

}  // namespace

SubstTable build_subst_table(const QDatum& src, const QDatum& tgt, int mmax, bool classical) {
  check(src.unfolded.type_name() == tgt.unfolded.type_name(),
        "build_subst_table: the two data must share the unfolded diagram");
  SubstTable table;
  table.src = src;
  table.tgt = tgt;
  table.classical = classical;
  table.mmax = mmax;

  auto seq_tgt = generate_adapted(tgt);
  auto seq_src = generate_adapted(src);
  int ell = seq_tgt.ell();
  check(ell == seq_src.ell(), "build_subst_table: period mismatch");

  table.script = derive_move_script(tgt.unfolded, seq_tgt.prefix_vec(ell), seq_src.prefix_vec(ell));

  // one table index m spans two source periods; keep spare replicated
  // periods beyond the last requested row
  int reps = 2 * (mmax + 1) + 3;
  int window = (reps + 2) * ell;
  EtaMap eta(seq_tgt, window, classical);
  table.yt = eta.ytorus();
  table.yt_src = YTorus::make(src.folded, classical);

  Seed seed = eta.fresh_seed();
  apply_script_periodic(table.script, seed, reps);

  // pair-level replay: the transformed window pair must equal the pair built
  // directly from the source word
  auto pair_src = build_pair(src.unfolded, seq_from_adapted(seq_src), window);
  // the last replicated period has no successor, so its tail data is not
  // source-shaped yet; compare strictly below it
  int margin = (reps - 1) * ell;
  for (int u = 1; u <= margin; ++u) {
    check(seed.pair.letter(u) == seq_src.at(u), "build_subst_table: letter replay mismatch");
    for (int v = 1; v <= margin; ++v) {
      check(seed.pair.lam(u, v) == pair_src.lam(u, v),
            "build_subst_table: skew replay mismatch at (" + std::to_string(u) + "," +
                std::to_string(v) + ")");
      if (!pair_src.is_frozen(v) && !seed.pair.is_frozen(v))
        check(seed.pair.b(u, v) == pair_src.b(u, v),
              "build_subst_table: exchange replay mismatch at (" + std::to_string(u) + "," +
                  std::to_string(v) + ")");
    }
  }

  // rows: source lattice points covering table indices 0 .. mmax
  int row_span = 2 * (mmax + 1) * ell;
  check(row_span <= margin, "build_subst_table: window too small for the requested rows");
  for (int u = 1; u <= row_span; ++u) {
    RepPoint pt = seq_src.rho(u);
    std::pair<int, int> key{src.bar(pt.vertex), pt.p};
    int um = 0;
    for (int w = u - 1; w >= 1; --w)
      if (seq_src.at(w) == pt.vertex) {
        um = w;
        break;
      }
    SubstEntry entry;
    if (um == 0) {
      entry.num = eta.apply(seed.var(u));
      entry.den = TorusElement::one(table.yt);
      entry.is_quotient = false;
    } else {
      int tshift = classical ? 0 : int(pair_src.lam(um, u));
      entry.num = eta.apply(seed.var(u)).scale(1, tshift);
      entry.den = eta.apply(seed.var(um));
      entry.is_quotient = true;
    }
    table.rows[key] = normal_form(std::move(entry));
  }
  return table;
}

const SubstEntry& psi_on_generator(const SubstTable& table, int i, int p) {
  auto it = table.rows.find({i, p});
  check(it != table.rows.end(), "psi_on_generator: no row for (" + std::to_string(i) + "," +
                                    std::to_string(p) + ")");
  return it->second;
}

SubstEntry shifted_entry(const SubstTable& table, int i, int p, int k) {
  check(k >= 0, "shifted_entry: nonnegative shifts only");
  // source key moves k periods up: the base row sits at D'^k (i, p)
  int ik = i, pk = p;
  for (int j = 0; j < k; ++j) {
    ik = table.src.folded.star(ik);
    pk += table.src.period();
  }
  const SubstEntry& base = psi_on_generator(table, ik, pk);
  SubstEntry out = base;
  for (int j = 0; j < k; ++j) {
    out.num = dual_shift(out.num, table.yt, table.tgt, -1);
    out.den = dual_shift(out.den, table.yt, table.tgt, -1);
  }
  return out;
}

namespace {

struct Frac {
  TorusElement num, den;

  static Frac from_entry(const SubstEntry& e) {
    Frac f;
    f.num = e.num;
    f.den = e.is_quotient ? e.den : TorusElement::one(e.num.context());
    return f;
  }

  void simplify() {
    // speculative cancellation with a small search budget
    int budget = 64 + 8 * int(num.term_count());
    if (auto q = num.try_divide_left(den, budget)) {
      num = *q;
      den = TorusElement::one(num.context());
      return;
    }
    if (den.as_single()) {
      num = den.inverse_monomial() * num;
      den = TorusElement::one(num.context());
    }
  }
};

Frac frac_mul(const Frac& a, const Frac& b) {
  Frac r;
  r.num = a.num * b.num;
  r.den = a.den * b.den;
  r.simplify();
  return r;
}

Frac frac_add(const Frac& a, const Frac& b) {
  Frac r;
  r.num = a.num * b.den + b.num * a.den;
  r.den = a.den * b.den;
  r.simplify();
  return r;
}

Frac frac_inv(const Frac& a) {
  check(!a.num.is_zero(), "transport: division by zero");
  Frac r;
  r.num = a.den;
  r.den = a.num;
  r.simplify();
  return r;
}

}  // namespace

TransportResult transport_character(const SubstTable& table, const TorusElement& chi_src) {
  check(table.classical, "transport_character: classical tables only");
  // the character may live over any torus of the source type; read labels
  // from its own registry
  auto src_torus = std::dynamic_pointer_cast<const YTorus>(chi_src.context());
  check(src_torus != nullptr, "transport_character: source must live over a Y torus");
  TorusElement one = TorusElement::one(table.yt);
  Frac acc{TorusElement::zero(table.yt), one};
  for (auto& [t, c] : chi_src.terms()) {
    check(t.first == 0, "transport_character: classical character expected");
    Frac term{one.scale(c), one};
    for (auto& [v, e] : t.second.e) {
      auto [i, p] = src_torus->ip_of(v);
      Frac row = Frac::from_entry(psi_on_generator(table, i, p));
      Frac powed{one, one};
      for (int rep = 0; rep < std::abs(e); ++rep) powed = frac_mul(powed, row);
      if (e < 0) powed = frac_inv(powed);
      term = frac_mul(term, powed);
    }
    acc = frac_add(acc, term);
  }
  acc.simplify();
  TransportResult res;
  if (auto d = acc.den.as_single()) {
    res.poly = true;
    res.value = acc.den.inverse_monomial() * acc.num;
    return res;
  }
  if (auto q = acc.num.try_divide_left(acc.den)) {
    res.poly = true;
    res.value = *q;
    return res;
  }
  res.poly = false;
  res.residual_num = acc.num;
  res.residual_den = acc.den;
  return res;
}


std::string subst_entry_text(const SubstEntry& e) {
  if (!e.is_quotient) return to_string(e.num);
  std::ostringstream os;
  if (auto n = e.num.as_single()) {
    auto& [t, c] = *n;
    if (t.second.empty() && t.first == 0 && c == 1) {
      os << "1/(" << to_string(e.den) << ")";
      return os.str();
    }
  }
  os << "(" << to_string(e.den) << ")^-1 * (" << to_string(e.num) << ")";
  return os.str();
}

std::string subst_table_text(const SubstTable& table) {
  std::ostringstream os;
  os << "# substitution " << table.src.folded.type_name() << " -> "
     << table.tgt.folded.type_name() << (table.classical ? " (t=1)" : " (quantum)") << "\n";
  for (auto& [key, entry] : table.rows) {
    os << "Y(" << key.first << "," << key.second << ") -> " << subst_entry_text(entry) << "\n";
  }
  return os.str();
}

std::string subst_table_json(const SubstTable& table) {
  std::ostringstream os;
  os << "{\"src\":\"" << table.src.folded.type_name() << "\",\"tgt\":\""
     << table.tgt.folded.type_name() << "\",\"rows\":[";
  bool first = true;
  for (auto& [key, entry] : table.rows) {
    if (!first) os << ",";
    first = false;
    os << "{\"src\":\"Y(" << key.first << "," << key.second << ")\",\"num\":" << to_json(entry.num)
       << ",\"den\":" << to_json(entry.is_quotient ? entry.den : TorusElement::one(table.yt))
       << "}";
  }
  os << "]}";
  return os.str();
}

}  // namespace qgr
