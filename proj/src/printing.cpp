#include "qgr/printing.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace qgr {

namespace {

using OrderedTerm = std::pair<std::vector<std::pair<std::pair<int, int>, std::pair<std::string, int>>>,
                              std::pair<int, i64>>;
// ((print_key, (name, exp)) sorted, (t_half, coeff))

OrderedTerm order_term(const TorusContext& ctx, const TorusElement::Term& t, i64 coeff) {
  OrderedTerm ot;
  for (auto& [v, e] : t.second.e)
    ot.first.push_back({ctx.print_key(v), {ctx.var_name(v), e}});
  std::sort(ot.first.begin(), ot.first.end());
  ot.second = {t.first, coeff};
  return ot;
}

bool term_before(const OrderedTerm& a, const OrderedTerm& b) {
  // scan variables in print order; the term with the larger exponent at the
  // first difference prints first
  size_t i = 0, j = 0;
  while (i < a.first.size() || j < b.first.size()) {
    if (i < a.first.size() && j < b.first.size()) {
      if (a.first[i].first == b.first[j].first) {
        int ea = a.first[i].second.second, eb = b.first[j].second.second;
        if (ea != eb) return ea > eb;
        ++i;
        ++j;
        continue;
      }
      if (a.first[i].first < b.first[j].first) return a.first[i].second.second > 0;
      return b.first[j].second.second < 0;
    }
    if (i < a.first.size()) return a.first[i].second.second > 0;
    return b.first[j].second.second < 0;
  }
  return a.second < b.second;
}

std::vector<OrderedTerm> ordered_terms(const TorusElement& x) {
  std::vector<OrderedTerm> ts;
  for (auto& [t, c] : x.terms()) ts.push_back(order_term(*x.context(), t, c));
  std::sort(ts.begin(), ts.end(), term_before);
  return ts;
}

void print_term(std::ostringstream& os, const OrderedTerm& t, bool leading) {
  auto [t_half, coeff] = t.second;
  i64 c = coeff;
  if (!leading) {
    os << (c < 0 ? " - " : " + ");
    if (c < 0) c = -c;
  } else if (c < 0) {
    os << "-";
    c = -c;
  }
  bool wrote = false;
  if (c != 1 || (t.first.empty() && t_half == 0)) {
    os << c;
    wrote = true;
  }
  if (t_half != 0) {
    if (wrote) os << "*";
    os << "t^{" << t_half << "/2}";
    wrote = true;
  }
  for (auto& [key, ne] : t.first) {
    if (wrote) os << "*";
    os << ne.first;
    if (ne.second != 1) os << "^" << ne.second;
    wrote = true;
  }
  if (!wrote) os << "1";
}

}  // namespace

std::string to_string(const TorusElement& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool leading = true;
  for (auto& t : ordered_terms(x)) {
    print_term(os, t, leading);
    leading = false;
  }
  return os.str();
}

std::string to_json(const TorusElement& x) {
  nlohmann::ordered_json root;
  root["terms"] = nlohmann::ordered_json::array();
  for (auto& t : ordered_terms(x)) {
    nlohmann::ordered_json jt;
    jt["t_half"] = t.second.first;
    auto exps = nlohmann::ordered_json::object();
    for (auto& [key, ne] : t.first) exps[ne.first] = ne.second;
    jt["exps"] = std::move(exps);
    jt["coeff"] = t.second.second;
    root["terms"].push_back(std::move(jt));
  }
  return root.dump();
}

namespace {

std::pair<int, int> parse_ip(const std::string& name) {
  // accepted shape: Y(i,p)
  auto l = name.find('(');
  auto comma = name.find(',', l);
  auto r = name.find(')', comma);
  check(l != std::string::npos && comma != std::string::npos && r != std::string::npos,
        "parse: bad variable name " + name);
  return {std::stoi(name.substr(l + 1, comma - l - 1)), std::stoi(name.substr(comma + 1, r - comma - 1))};
}

}  // namespace

TorusElement parse_element_json(const std::string& text, const std::shared_ptr<YTorus>& yt) {
  auto root = nlohmann::json::parse(text);
  TorusElement x(yt);
  for (auto& jt : root.at("terms")) {
    ExpVec m;
    for (auto& [name, e] : jt.at("exps").items()) {
      auto [i, p] = parse_ip(name);
      m = m + ExpVec::unit(yt->var(i, p), e.get<int>());
    }
    x.add_term(jt.at("t_half").get<int>(), m, jt.at("coeff").get<i64>());
  }
  return x;
}

TorusElement parse_element(const std::string& text, const std::shared_ptr<YTorus>& yt) {
  TorusElement x(yt);
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  int sign = 1;
  skip_ws();
  while (pos < text.size()) {
    skip_ws();
    if (pos >= text.size()) break;
    if (text[pos] == '+') {
      sign = 1;
      ++pos;
      continue;
    }
    if (text[pos] == '-') {
      sign = -1;
      ++pos;
      continue;
    }
    // one term: factors separated by '*'
    i64 coeff = sign;
    int t_half = 0;
    ExpVec m;
    bool done_term = false;
    while (!done_term) {
      skip_ws();
      if (pos < text.size() && (std::isdigit(text[pos]))) {
        size_t end = pos;
        while (end < text.size() && std::isdigit(text[end])) ++end;
        coeff *= std::stoll(text.substr(pos, end - pos));
        pos = end;
      } else if (pos + 1 < text.size() && text[pos] == 't' && text[pos + 1] == '^') {
        auto l = text.find('{', pos);
        auto slash = text.find('/', l);
        check(l != std::string::npos && slash != std::string::npos, "parse: bad t power");
        t_half += std::stoi(text.substr(l + 1, slash - l - 1));
        pos = text.find('}', slash);
        check(pos != std::string::npos, "parse: bad t power");
        ++pos;
      } else if (pos < text.size() && text[pos] == 'Y') {
        auto r = text.find(')', pos);
        check(r != std::string::npos, "parse: bad variable");
        auto [i, p] = parse_ip(text.substr(pos, r - pos + 1));
        pos = r + 1;
        int e = 1;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          size_t end = pos;
          if (end < text.size() && text[end] == '-') ++end;
          while (end < text.size() && std::isdigit(text[end])) ++end;
          e = std::stoi(text.substr(pos, end - pos));
          pos = end;
        }
        m = m + ExpVec::unit(yt->var(i, p), e);
      } else if (pos < text.size() && text[pos] == '1') {
        ++pos;
      } else {
        fail("parse: unexpected character at position " + std::to_string(pos) + " in " + text);
      }
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
      } else {
        done_term = true;
      }
    }
    x.add_term(t_half, m, coeff);
    sign = 1;
    skip_ws();
    if (pos < text.size()) {
      check(text[pos] == '+' || text[pos] == '-', "parse: expected + or - in " + text);
    }
  }
  return x;
}

std::string quiver_dot(const Quiver& quiver, const CompatiblePair& pair, const AdaptedSeq& seq) {
  std::ostringstream os;
  os << "digraph window {\n";
  os << "  rankdir=RL;\n";
  for (int u = 1; u <= pair.n; ++u) {
    RepPoint r = seq.rho(u);
    os << "  v" << u << " [label=\"(" << seq.datum().bar(r.vertex) << "," << r.p << ")\""
       << (pair.is_frozen(u) ? ", shape=box" : ", shape=ellipse") << "];\n";
  }
  for (auto& [arrow, mult] : quiver)
    for (int rep = 0; rep < mult; ++rep)
      os << "  v" << arrow.first << " -> v" << arrow.second << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace qgr
