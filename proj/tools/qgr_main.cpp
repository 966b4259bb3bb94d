#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qgr/klalg.hpp"
#include "qgr/printing.hpp"
#include "qgr/subst.hpp"
#include "qgr/verify.hpp"

using namespace qgr;

namespace {

QDatum datum_from(const std::string& type, std::vector<int> xi) {
  auto g = build_cartan(type);
  if (xi.empty()) xi = default_xi(g.series, g.rank);
  return make_qdatum(type, std::move(xi));
}

Budget budget_from_env(int fallback) {
  Budget b;
  b.max_monomials = fallback;
  if (const char* env = std::getenv("QGR_BUDGET_OVERRIDE")) b.max_monomials = std::atoi(env);
  return b;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  check(bool(os), "cannot open output file " + out_path);
  os << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qgr: exact engine for quantum cluster algebras and (q,t)-characters"};
  app.require_subcommand(1);

  std::string type = "A2", format = "text", out_path, m_text, src_type = "B2", tgt_type = "A3";
  std::string script_json;
  std::vector<int> xi, src_xi, tgt_xi, seq_letters;
  int window = 12, mwindow = 0, budget = 10000, row = 1, from_p = 0, to_p = 2;
  bool quantum = false, dot = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "text|json")->capture_default_str();
    cmd->add_option("--out", out_path, "write output to a file instead of stdout");
  };

  auto* pair_cmd = app.add_subcommand("pair", "windowed exchange data of a letter sequence");
  pair_cmd->add_option("--type", type, "Cartan type, e.g. A2")->capture_default_str();
  pair_cmd->add_option("--seq", seq_letters, "letters of the sequence")->delimiter(',');
  pair_cmd->add_option("--n", window, "window size")->capture_default_str();
  add_common(pair_cmd);

  auto* quiver_cmd = app.add_subcommand("quiver", "window quiver of an adapted sequence");
  quiver_cmd->add_option("--type", type, "folded Cartan type")->capture_default_str();
  quiver_cmd->add_option("--xi", xi, "height function on the unfolded diagram")->delimiter(',');
  quiver_cmd->add_option("--window", window, "number of slots")->capture_default_str();
  quiver_cmd->add_flag("--dot", dot, "emit DOT");
  add_common(quiver_cmd);

  auto* mutate_cmd = app.add_subcommand("mutate", "apply a move script to the initial seed");
  mutate_cmd->add_option("--type", type)->capture_default_str();
  mutate_cmd->add_option("--xi", xi)->delimiter(',');
  mutate_cmd->add_option("--window", window)->capture_default_str();
  mutate_cmd
      ->add_option("--script", script_json,
                   "JSON array of {\"op\":\"mu\"|\"gamma\"|\"beta\"|\"shift\",\"k\":slot}")
      ->required();
  mutate_cmd->add_flag("--quantum", quantum, "work in the deformed torus");
  add_common(mutate_cmd);

  auto* datum_cmd = app.add_subcommand("datum", "validate a height datum and print it");
  datum_cmd->add_option("--type", type)->capture_default_str();
  datum_cmd->add_option("--xi", xi)->delimiter(',');
  add_common(datum_cmd);

  auto* tsys_cmd = app.add_subcommand("tsys", "quadratic identity between interval classes");
  tsys_cmd->add_option("--type", type)->capture_default_str();
  tsys_cmd->add_option("--xi", xi)->delimiter(',');
  tsys_cmd->add_option("--row", row, "unfolded row vertex")->capture_default_str();
  tsys_cmd->add_option("--from", from_p, "lower spectral endpoint")->capture_default_str();
  tsys_cmd->add_option("--to", to_p, "upper spectral endpoint")->capture_default_str();
  add_common(tsys_cmd);

  auto* qchar_cmd = app.add_subcommand("qchar", "classical character of a dominant monomial");
  qchar_cmd->add_option("--type", type)->capture_default_str();
  qchar_cmd->add_option("--xi", xi)->delimiter(',');
  qchar_cmd->add_option("--m", m_text, "dominant monomial, e.g. \"Y(1,-7)\"")->required();
  qchar_cmd->add_option("--budget", budget)->capture_default_str();
  add_common(qchar_cmd);

  auto* ft_cmd = app.add_subcommand("ft", "thin deformed class of a dominant monomial");
  ft_cmd->add_option("--type", type)->capture_default_str();
  ft_cmd->add_option("--xi", xi)->delimiter(',');
  ft_cmd->add_option("--m", m_text)->required();
  ft_cmd->add_option("--budget", budget)->capture_default_str();
  add_common(ft_cmd);

  auto* lt_cmd = app.add_subcommand("lt", "canonical-basis element of a dominant monomial");
  lt_cmd->add_option("--type", type)->capture_default_str();
  lt_cmd->add_option("--xi", xi)->delimiter(',');
  lt_cmd->add_option("--m", m_text)->required();
  lt_cmd->add_option("--budget", budget)->capture_default_str();
  add_common(lt_cmd);

  auto* subst_cmd = app.add_subcommand("subst", "substitution table between two height data");
  subst_cmd->add_option("--src", src_type)->capture_default_str();
  subst_cmd->add_option("--src-xi", src_xi)->delimiter(',');
  subst_cmd->add_option("--tgt", tgt_type)->capture_default_str();
  subst_cmd->add_option("--tgt-xi", tgt_xi)->delimiter(',');
  subst_cmd->add_option("--window", mwindow, "table index range 0..window")->capture_default_str();
  subst_cmd->add_flag("--quantum", quantum);
  add_common(subst_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "run the verification suite");
  add_common(verify_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (pair_cmd->parsed()) {
      auto g = build_cartan(type);
      check(!seq_letters.empty(), "pair: --seq required");
      auto p = build_pair(g, seq_from_vector(seq_letters, g.rank), window);
      std::ostringstream os;
      if (format == "json") {
        os << "{\"n\":" << p.n << ",\"frozen\":[";
        for (int u = 1; u <= p.n; ++u) os << (u > 1 ? "," : "") << int(p.is_frozen(u));
        os << "],\"lambda\":[";
        for (int u = 1; u <= p.n; ++u) {
          os << (u > 1 ? "," : "") << "[";
          for (int v = 1; v <= p.n; ++v) os << (v > 1 ? "," : "") << p.lam(u, v);
          os << "]";
        }
        os << "],\"btilde\":[";
        for (int u = 1; u <= p.n; ++u) {
          os << (u > 1 ? "," : "") << "[";
          for (int v = 1; v <= p.n; ++v) os << (v > 1 ? "," : "") << p.b(u, v);
          os << "]";
        }
        os << "],\"compatible\":true}\n";
      } else {
        os << "window " << p.n << ", letters:";
        for (int u = 1; u <= p.n; ++u) os << " " << p.letter(u);
        os << "\ncompatibility: all exchangeable columns verified exactly\n";
        os << "frozen slots:";
        for (int u = 1; u <= p.n; ++u)
          if (p.is_frozen(u)) os << " " << u;
        os << "\n";
      }
      emit(os.str(), out_path);
    } else if (quiver_cmd->parsed()) {
      auto q = datum_from(type, xi);
      auto seq = generate_adapted(q);
      auto p = build_pair(q.unfolded, seq_from_adapted(seq), window);
      auto quiver = build_quiver(q.unfolded, seq_from_adapted(seq), window);
      if (dot) {
        emit(quiver_dot(quiver, p, seq), out_path);
      } else {
        std::ostringstream os;
        for (auto& [arrow, mult] : quiver) {
          RepPoint a = seq.rho(arrow.first), b = seq.rho(arrow.second);
          for (int rep = 0; rep < mult; ++rep)
            os << "(" << q.bar(a.vertex) << "," << a.p << ") -> (" << q.bar(b.vertex) << ","
               << b.p << ")\n";
        }
        emit(os.str(), out_path);
      }
    } else if (mutate_cmd->parsed()) {
      auto q = datum_from(type, xi);
      EtaMap eta(generate_adapted(q), window, !quantum);
      Seed s = eta.fresh_seed();
      for (auto& step : nlohmann::json::parse(script_json)) {
        std::string op = step.at("op").get<std::string>();
        if (op == "mu") seed_mutate(s, step.at("k").get<int>());
        else if (op == "gamma") seed_gamma(s, step.at("k").get<int>());
        else if (op == "beta") seed_beta(s, step.at("k").get<int>());
        else if (op == "shift") seed_forward_shift(s);
        else fail("mutate: unknown op " + op);
      }
      std::ostringstream os;
      for (int u = 1; u <= s.safe_n; ++u)
        os << "X" << u << " = " << to_string(s.var(u)) << "\n";
      emit(os.str(), out_path);
    } else if (datum_cmd->parsed()) {
      auto g = build_cartan(type);
      auto heights = xi.empty() ? default_xi(g.series, g.rank) : xi;
      std::ostringstream os;
      // report-style validation before construction
      QDatum probe;
      {
        auto u = make_qdatum(type, default_xi(g.series, g.rank));
        probe = u;
        probe.xi = heights;
      }
      auto issues = validate_qdatum(probe);
      if (issues.empty()) {
        auto q = make_qdatum(type, heights);
        auto seq = generate_adapted(q);
        os << "valid\n" << qdatum_to_json(q) << "\n{\"prefix\":[";
        for (int u = 1; u <= seq.ell(); ++u) os << (u > 1 ? "," : "") << seq.at(u);
        os << "],\"rule\":\"periodic-star\"}\n";
      } else {
        os << "invalid\n";
        for (auto& is : issues) os << "[" << is.clause << "] " << is.detail << "\n";
      }
      emit(os.str(), out_path);
    } else if (tsys_cmd->parsed()) {
      auto q = datum_from(type, xi);
      auto yt = YTorus::make(q.folded);
      Budget b = budget_from_env(budget);
      KrClassFn kr = [&](int iv, int a, int bb) {
        ExpVec m = kr_exponents(yt, q, iv, a, bb);
        return m.empty() ? TorusElement::one(yt) : thin_class(yt, q, m, b).element;
      };
      auto rep = t_system_check(q, row, from_p, to_p, kr);
      std::ostringstream os;
      if (format == "json") {
        os << tsys_report_json(rep) << "\n";
      } else {
        os << (rep.ok ? "exact" : "failed") << ": a = " << rep.a_half << "/2, b = " << rep.b_half
           << "/2\nlhs  = " << to_string(rep.lhs) << "\nmain = " << to_string(rep.rhs_main)
           << "\nprod = " << to_string(rep.rhs_prod) << "\n";
      }
      emit(os.str(), out_path);
    } else if (qchar_cmd->parsed()) {
      auto q = datum_from(type, xi);
      auto yt = YTorus::make(q.folded)->classical_twin();
      auto m = parse_element(m_text, yt);
      check(m.term_count() == 1, "qchar: --m must be a single monomial");
      auto chi = classical_character(yt, q, m.terms().front().first.second, budget_from_env(budget));
      std::ostringstream os;
      if (format == "json")
        os << "{\"dominant\":\"" << to_string(TorusElement::monomial(yt, chi.dominant))
           << "\",\"thin\":" << (chi.thin ? "true" : "false")
           << ",\"element\":" << to_json(chi.element) << "}\n";
      else os << to_string(chi.element) << "\n";
      emit(os.str(), out_path);
    } else if (ft_cmd->parsed()) {
      auto q = datum_from(type, xi);
      auto yt = YTorus::make(q.folded);
      auto m = parse_element(m_text, yt);
      check(m.term_count() == 1, "ft: --m must be a single monomial");
      auto f = thin_class(yt, q, m.terms().front().first.second, budget_from_env(budget));
      std::ostringstream os;
      if (format == "json")
        os << "{\"dominant\":\"" << to_string(TorusElement::monomial(yt, f.dominant))
           << "\",\"thin\":" << (f.thin ? "true" : "false")
           << ",\"element\":" << to_json(f.element) << "}\n";
      else os << to_string(f.element) << "\n";
      emit(os.str(), out_path);
    } else if (lt_cmd->parsed()) {
      auto q = datum_from(type, xi);
      auto yt = YTorus::make(q.folded);
      auto m = parse_element(m_text, yt);
      check(m.term_count() == 1, "lt: --m must be a single monomial");
      auto kl = kl_canonical(yt, q, m.terms().front().first.second, budget_from_env(budget));
      std::ostringstream os;
      if (format == "json") {
        os << to_json(kl.element) << "\n";
      } else {
        os << to_string(kl.element) << "\n";
        for (auto& [mm, poly] : kl.corrections)
          os << "correction at " << to_string(TorusElement::monomial(yt, mm)) << ": "
             << tpoly_to_string(poly) << "\n";
      }
      emit(os.str(), out_path);
    } else if (subst_cmd->parsed()) {
      auto src = datum_from(src_type, src_xi);
      auto tgt = datum_from(tgt_type, tgt_xi);
      auto table = build_subst_table(src, tgt, mwindow, !quantum);
      emit(format == "json" ? subst_table_json(table) + "\n" : subst_table_text(table), out_path);
    } else if (verify_cmd->parsed()) {
      auto results = run_verification();
      emit(format == "json" ? scoreboard_json(results) + "\n" : scoreboard_text(results),
           out_path);
      return all_passed(results) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
